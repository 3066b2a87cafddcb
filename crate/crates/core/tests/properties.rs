use std::collections::{BTreeMap, BTreeSet, HashMap};

use ndarray::Array2;
use proptest::prelude::*;
use rbmsum_core::eval::{f_measure, precision, recall, EvalScores};
use rbmsum_core::features::{
    build_feature_matrix, centroid_index, f_position, normalize_columns, FeatureConfig,
};
use rbmsum_core::preprocess::{
    porter_stem, preprocess, Lexicon, PosTag, ProcessedDocument, RawDocument,
};
use rbmsum_core::rbm::EnhancedMatrix;
use rbmsum_core::summarizer::{
    rank, score_sentences, select, SimilarityAnchor, SummaryConfig, SummaryLimit,
};

const VOCABULARY: &str = include_str!("fixtures/porter_vocabulary.txt");

/// Fixture words whose stem is stemmed further, with the reference result.
const NOT_IDEMPOTENT: [(&str, &str); 16] = [
    ("agreed", "agr"),
    ("decisiveness", "deci"),
    ("callousness", "callou"),
    ("defensible", "defen"),
    ("cease", "cea"),
    ("agree", "agr"),
    ("agrees", "agr"),
    ("university", "univ"),
    ("universities", "univ"),
    ("universal", "univ"),
    ("universe", "univ"),
    ("analyses", "anali"),
    ("responsible", "respon"),
    ("responsibility", "respon"),
    ("governmental", "govern"),
    ("dimension", "dimen"),
];

#[test]
fn restemming_fixture_words() {
    let exceptions: HashMap<&str, &str> = NOT_IDEMPOTENT.into_iter().collect();
    for line in VOCABULARY.lines() {
        let word = line.split_whitespace().next().unwrap();
        let once = porter_stem(word);
        let twice = porter_stem(&once);
        match exceptions.get(word) {
            Some(expected) => assert_eq!(twice, *expected, "{word}"),
            None => assert_eq!(twice, once, "{word}"),
        }
    }
}

const WORDS: [&str; 24] = [
    "market", "prices", "rose", "the", "of", "Lakeview", "Moreno", "bank", "2016", "12", "3.5",
    "and", "report", "growth", "trade", "in", "analysts", "expected", "quickly", "banks",
    "markets", "Paris", "new", "rates",
];

fn render(paragraphs: &[Vec<Vec<usize>>]) -> String {
    paragraphs
        .iter()
        .map(|sentences| {
            sentences
                .iter()
                .map(|words| {
                    let mut s: Vec<String> = words.iter().map(|&w| WORDS[w].to_string()).collect();
                    let first = &mut s[0];
                    *first = first[..1].to_uppercase() + &first[1..];
                    s.join(" ") + "."
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n\n")
}

fn document(max_sentences: usize) -> impl Strategy<Value = Vec<Vec<Vec<usize>>>> {
    let sentence = prop::collection::vec(0..WORDS.len(), 1..9);
    prop::collection::vec(prop::collection::vec(sentence, 1..4), 1..4).prop_map(move |mut paras| {
        let mut total = 0;
        paras.retain_mut(|p| {
            p.truncate(max_sentences.saturating_sub(total));
            total += p.len();
            !p.is_empty()
        });
        paras
    })
}

fn process(text: &str) -> ProcessedDocument {
    preprocess(&RawDocument::new("p", text), &Lexicon::default()).unwrap()
}

/// Straight-from-definition recomputation of the nine raw features.
fn recompute(doc: &ProcessedDocument) -> Vec<[f64; 9]> {
    let n = doc.sentences.len();
    let content = |i: usize| -> Vec<&str> {
        doc.sentences[i]
            .tokens
            .iter()
            .filter(|t| !t.is_stopword)
            .map(|t| t.stem.as_str())
            .collect()
    };
    let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
    for i in 0..n {
        for s in content(i) {
            *freq.entry(s).or_default() += 1;
        }
    }
    let mut by_freq: Vec<(&str, usize)> = freq.iter().map(|(k, v)| (*k, *v)).collect();
    by_freq.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let thematic: BTreeSet<&str> = by_freq.iter().take(10).map(|p| p.0).collect();
    let tf = |i: usize| {
        let mut m: BTreeMap<&str, f64> = BTreeMap::new();
        for s in content(i) {
            *m.entry(s).or_default() += 1.0;
        }
        m
    };
    let isf: Vec<f64> = (0..n)
        .map(|i| {
            let mut sum = 0.0;
            for (stem, count) in tf(i) {
                let others: usize = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| content(k).iter().filter(|s| **s == stem).count())
                    .sum();
                sum += count * others as f64;
            }
            (1.0 + sum).ln() / doc.sentences[i].tokens.len() as f64
        })
        .collect();
    let mut centroid = 0;
    for i in 1..n {
        if isf[i] > isf[centroid] {
            centroid = i;
        }
    }
    let ctf = tf(centroid);
    (0..n)
        .map(|i| {
            let s = &doc.sentences[i];
            let len = s.tokens.len() as f64;
            let position = if i == 0 || i == n - 1 {
                1.0
            } else {
                let (lo, hi) = (0.2 * n as f64, 0.4 * n as f64);
                (((i + 1) as f64 - lo) * (1.0 / hi - lo)).cos()
            };
            let proper: Vec<bool> = s
                .tokens
                .iter()
                .map(|t| t.tag == PosTag::ProperNoun && !t.is_stopword)
                .collect();
            let runs = (0..proper.len())
                .filter(|&k| proper[k] && (k == 0 || !proper[k - 1]))
                .count();
            let v = tf(i);
            let dot: f64 = v.iter().map(|(k, x)| x * ctf.get(k).unwrap_or(&0.0)).sum();
            let norm = |m: &BTreeMap<&str, f64>| m.values().map(|x| x * x).sum::<f64>().sqrt();
            let cos = if norm(&v) == 0.0 || norm(&ctf) == 0.0 {
                0.0
            } else {
                dot / (norm(&v) * norm(&ctf))
            };
            [
                content(i).iter().filter(|w| thematic.contains(*w)).count() as f64 / len,
                position,
                if len < 3.0 { 0.0 } else { len },
                if s.pos_in_para == 0 || s.is_para_last {
                    1.0
                } else {
                    0.0
                },
                proper.iter().filter(|p| **p).count() as f64,
                s.tokens.iter().filter(|t| t.is_numeral).count() as f64 / len,
                runs as f64,
                isf[i],
                cos,
            ]
        })
        .collect()
}

proptest! {
    #[test]
    fn preprocessing_structure(paras in document(12)) {
        let text = render(&paras);
        let doc = process(&text);
        prop_assert_eq!(doc.n_sentences(), paras.iter().map(Vec::len).sum::<usize>());
        prop_assert_eq!(doc.paragraph_count, paras.len());
        for (i, s) in doc.sentences.iter().enumerate() {
            prop_assert_eq!(s.doc_index, i);
            prop_assert_eq!(s.is_para_first, s.pos_in_para == 0);
            prop_assert!(s.para_index < doc.paragraph_count);
            prop_assert!(s.tokens.iter().all(|t| t.stem == t.stem.to_lowercase()));
        }
        for p in 0..doc.paragraph_count {
            let lasts = doc.sentences.iter().filter(|s| s.para_index == p && s.is_para_last).count();
            prop_assert_eq!(lasts, 1);
        }
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let joined: String = doc.sentences.iter().map(|s| s.original_text.as_str()).collect();
        prop_assert_eq!(squash(&joined), squash(&text));
        prop_assert_eq!(process(&text), doc);
    }

    #[test]
    fn features_match_recomputation(paras in document(10)) {
        let doc = process(&render(&paras));
        let m = build_feature_matrix(&doc, &FeatureConfig::default());
        for (row, want) in m.rows.iter().zip(recompute(&doc)) {
            for (got, want) in row.to_array().iter().zip(want) {
                prop_assert!((got - want).abs() <= 1e-9, "{} vs {}", got, want);
            }
        }
    }

    #[test]
    fn feature_ranges(paras in document(15)) {
        let doc = process(&render(&paras));
        let raw = build_feature_matrix(&doc, &FeatureConfig::default());
        for r in &raw.rows {
            prop_assert!((0.0..=1.0).contains(&r.thematic));
            prop_assert!((0.0..=1.0).contains(&r.numerals));
            prop_assert!((0.0..=1.0).contains(&r.centroid_sim));
            prop_assert!((-1.0..=1.0).contains(&r.position));
            prop_assert!(r.tf_isf >= 0.0);
        }
        let norm = normalize_columns(&raw);
        prop_assert!(norm.rows.iter().flat_map(|r| r.to_array()).all(|x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn position_endpoints(n in 1usize..200) {
        let c = FeatureConfig::default();
        prop_assert_eq!(f_position(0, n, &c), 1.0);
        prop_assert_eq!(f_position(n - 1, n, &c), 1.0);
    }

    #[test]
    fn identical_sentences_share_tf_isf(words in prop::collection::vec(0..WORDS.len(), 1..8), k in 1usize..6) {
        let text = render(&[vec![words; k]]);
        let doc = process(&text);
        let m = build_feature_matrix(&doc, &FeatureConfig::default());
        prop_assert!(m.rows.iter().all(|r| r.tf_isf == m.rows[0].tf_isf));
        prop_assert_eq!(centroid_index(&doc), 0);
    }

    #[test]
    fn f_measure_identities(p in 1e-6f64..=1.0, r in 1e-6f64..=1.0) {
        let f = f_measure(p, r);
        prop_assert!((f - 2.0 * p * r / (p + r)).abs() <= 1e-12);
        prop_assert!(p.min(r) - 1e-12 <= f && f <= p.max(r) + 1e-12);
        prop_assert_eq!(f, f_measure(r, p));
    }

    #[test]
    fn precision_recall_duality(
        s in prop::collection::btree_set(0usize..20, 1..10),
        r in prop::collection::btree_set(0usize..20, 1..10),
    ) {
        prop_assert_eq!(precision(&s, &r).unwrap(), recall(&r, &s).unwrap());
    }

    #[test]
    fn means_within_bounds(ps in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..10)) {
        let scores: Vec<EvalScores> = ps.iter().map(|&(p, r)| EvalScores::new(p, r)).collect();
        let mean = EvalScores::mean(&scores);
        let within = |get: fn(&EvalScores) -> f64| {
            let lo = scores.iter().map(get).fold(f64::INFINITY, f64::min);
            let hi = scores.iter().map(get).fold(f64::NEG_INFINITY, f64::max);
            lo - 1e-12 <= get(&mean) && get(&mean) <= hi + 1e-12
        };
        prop_assert!(within(|s| s.precision));
        prop_assert!(within(|s| s.recall));
        prop_assert!(within(|s| s.f_measure));
    }
}

fn enhanced(scores: &[Vec<f64>]) -> EnhancedMatrix {
    let n = scores.len();
    EnhancedMatrix {
        rows: Array2::from_shape_fn((n, 9), |(i, j)| scores[i][j]),
        normalized: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn selection_invariants(
        paras in document(20),
        seed_scores in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 9), 20),
        limit in 1usize..25,
        first in any::<bool>(),
    ) {
        let doc = process(&render(&paras));
        let n = doc.n_sentences();
        let ranked = rank(score_sentences(&enhanced(&seed_scores[..n])));
        let config = SummaryConfig {
            limit: SummaryLimit::Sentences(limit),
            anchor: if first { SimilarityAnchor::First } else { SimilarityAnchor::Latest },
        };
        let picks = select(&ranked, &doc, &config);
        prop_assert_eq!(picks[0].doc_index, ranked[0].doc_index);
        prop_assert_eq!(picks.len(), limit.min(n));
        let distinct: BTreeSet<usize> = picks.iter().map(|p| p.doc_index).collect();
        prop_assert_eq!(distinct.len(), picks.len());
        for p in picks.iter().filter(|p| !p.fallback) {
            prop_assert!(p.rank_position < n.div_ceil(2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn ranking_is_scale_invariant(
        rows in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 9), 1..30),
        c in 1e-3f64..1e3,
    ) {
        let base = rank(score_sentences(&enhanced(&rows)));
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        let other = rank(score_sentences(&enhanced(&scaled)));
        let order = |r: &[rbmsum_core::summarizer::RankedSentence]| r.iter().map(|s| s.doc_index).collect::<Vec<_>>();
        prop_assert_eq!(order(&base), order(&other));
    }
}
