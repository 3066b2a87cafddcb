use rbmsum_core::preprocess::porter_stem;

const VOCABULARY: &str = include_str!("fixtures/porter_vocabulary.txt");

fn pairs() -> Vec<(&'static str, &'static str)> {
    VOCABULARY
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next().unwrap(), parts.next().unwrap())
        })
        .collect()
}

#[test]
fn matches_reference_vocabulary() {
    let pairs = pairs();
    assert!(pairs.len() >= 100);
    let wrong: Vec<String> = pairs
        .iter()
        .filter(|(w, s)| porter_stem(w) != *s)
        .map(|(w, s)| format!("{w}: expected {s}, got {}", porter_stem(w)))
        .collect();
    assert!(wrong.is_empty(), "{wrong:#?}");
}

#[test]
fn stems_are_lowercase() {
    for (w, _) in pairs() {
        let s = porter_stem(w);
        assert_eq!(s, s.to_lowercase());
    }
}
