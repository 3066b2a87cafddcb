/// Split a sentence into word surfaces.
///
/// Tokens are whitespace-delimited with surrounding punctuation and symbols
/// stripped (`"12%,"` becomes `12`); hyphens, apostrophes, commas and periods
/// inside a token are kept.
pub fn tokenize(sentence: &str) -> Vec<&str> {
    sentence
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|w| !w.is_empty())
        .collect()
}

/// Digits with optional thousands commas and at most one decimal point, or an
/// integer with an ordinal suffix (`1st`, `22nd`, `3rd`, `4th`).
pub fn is_numeral(token: &str) -> bool {
    let lower = token.to_ascii_lowercase();
    let (body, ordinal) = match ["st", "nd", "rd", "th"]
        .iter()
        .find(|s| lower.ends_with(*s))
    {
        Some(s) => (&lower[..lower.len() - s.len()], true),
        None => (lower.as_str(), false),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_digit() || !bytes[bytes.len() - 1].is_ascii_digit() {
        return false;
    }
    let mut seen_point = false;
    for &b in bytes {
        match b {
            b'0'..=b'9' => {}
            b',' if !seen_point => {}
            b'.' if !seen_point && !ordinal => seen_point = true,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_surrounding_punctuation() {
        assert_eq!(
            tokenize("rose 12% in 2016."),
            vec!["rose", "12", "in", "2016"]
        );
        assert_eq!(
            tokenize("(\"Hello,\" she said.)"),
            vec!["Hello", "she", "said"]
        );
        assert_eq!(
            tokenize("cost $4.50, not $5"),
            vec!["cost", "4.50", "not", "5"]
        );
    }

    #[test]
    fn keeps_internal_marks() {
        assert_eq!(tokenize("state-of-the-art"), vec!["state-of-the-art"]);
        assert_eq!(
            tokenize("don't sell 1,200 units"),
            vec!["don't", "sell", "1,200", "units"]
        );
    }

    #[test]
    fn whitespace_and_punctuation_only() {
        assert!(tokenize("   ").is_empty());
        assert!(tokenize("-- ... !").is_empty());
    }

    #[test]
    fn numeral_rule() {
        for yes in [
            "120", "2016", "3.5", "1,000", "1,000.25", "1st", "22nd", "3rd", "4th", "11TH",
        ] {
            assert!(is_numeral(yes), "{yes}");
        }
        for no in [
            "", "abc", "1.2.3", "12-15", "1990s", "st", "3.5th", "x1", "1.", "1,",
        ] {
            assert!(!is_numeral(no), "{no}");
        }
    }
}
