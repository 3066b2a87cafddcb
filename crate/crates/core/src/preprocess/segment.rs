use std::collections::HashSet;

use crate::error::{Error, Result};

/// Split text into paragraphs at runs of one or more blank lines.
///
/// Returned slices borrow from `text` and are trimmed; a paragraph keeps its
/// internal single line breaks.
pub fn segment_paragraphs(text: &str) -> Result<Vec<&str>> {
    let mut paragraphs = Vec::new();
    let mut current: Option<(usize, usize)> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        if line.trim().is_empty() {
            if let Some((s, e)) = current.take() {
                paragraphs.push(text[s..e].trim());
            }
        } else {
            current = Some(match current {
                Some((s, _)) => (s, offset),
                None => (start, offset),
            });
        }
    }
    if let Some((s, e)) = current {
        paragraphs.push(text[s..e].trim());
    }
    if paragraphs.is_empty() {
        return Err(Error::EmptyDocument);
    }
    Ok(paragraphs)
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}')
}

/// The whitespace-delimited word ending at byte `end`, without leading
/// opening punctuation.
fn word_before(text: &str, end: usize) -> &str {
    let start = text[..end]
        .rfind(char::is_whitespace)
        .map(|i| i + text[i..].chars().next().map_or(1, char::len_utf8))
        .unwrap_or(0);
    text[start..end].trim_start_matches(['(', '[', '"', '\'', '\u{201c}', '\u{2018}'])
}

/// Split a paragraph into sentences.
///
/// A sentence ends at a run of `.`, `!` or `?` (plus any closing quotes or
/// brackets) that is followed by whitespace and then an uppercase letter or a
/// non-letter. A run starting with a period does not end a sentence when the
/// word it terminates is in `abbreviations`. Text without a terminator is a
/// single sentence.
pub fn segment_sentences<'a>(paragraph: &'a str, abbreviations: &HashSet<String>) -> Vec<&'a str> {
    let chars: Vec<(usize, char)> = paragraph.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminal(c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (is_terminal(chars[j].1) || is_closing(chars[j].1)) {
            j += 1;
        }
        let end = chars.get(j).map_or(paragraph.len(), |&(p, _)| p);
        let mut k = j;
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        let boundary = if k == chars.len() {
            false
        } else if k == j {
            // No whitespace after the run ("3.5", "e.g").
            false
        } else {
            let next = chars[k].1;
            let opens_sentence = next.is_uppercase() || !next.is_alphabetic();
            let abbreviated = c == '.' && abbreviations.contains(word_before(paragraph, pos + 1));
            opens_sentence && !abbreviated
        };
        if boundary {
            let sentence = paragraph[start..end].trim();
            if !sentence.is_empty() {
                sentences.push(sentence);
            }
            start = chars[k].0;
            i = k;
        } else {
            i = j;
        }
    }
    let tail = paragraph[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail);
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::Lexicon;

    fn split(p: &str) -> Vec<&str> {
        segment_sentences(p, &Lexicon::default().abbreviations)
    }

    #[test]
    fn paragraphs_split_on_blank_lines() {
        assert_eq!(segment_paragraphs("A.\n\nB.").unwrap(), vec!["A.", "B."]);
        assert_eq!(segment_paragraphs("A.").unwrap(), vec!["A."]);
        assert_eq!(
            segment_paragraphs("  A.\nstill A.\n \n\n\t\nB.\n").unwrap(),
            vec!["A.\nstill A.", "B."]
        );
        assert_eq!(
            segment_paragraphs("A.\r\n\r\nB.\r\n").unwrap(),
            vec!["A.", "B."]
        );
    }

    #[test]
    fn whitespace_only_is_empty_document() {
        assert_eq!(segment_paragraphs("\n\n  \n"), Err(Error::EmptyDocument));
        assert_eq!(segment_paragraphs(""), Err(Error::EmptyDocument));
    }

    #[test]
    fn plain_split() {
        assert_eq!(split("It runs. It works."), vec!["It runs.", "It works."]);
        assert_eq!(split("No terminator here"), vec!["No terminator here"]);
    }

    #[test]
    fn abbreviations_do_not_split() {
        assert_eq!(split("Dr. Smith arrived."), vec!["Dr. Smith arrived."]);
        assert_eq!(
            split("Fruit, e.g. Apples, sold well. Prices rose."),
            vec!["Fruit, e.g. Apples, sold well.", "Prices rose."]
        );
        assert_eq!(
            split("See (Fig. 3) for details."),
            vec!["See (Fig. 3) for details."]
        );
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(
            split("The value was 3.5 in the end. then more."),
            vec!["The value was 3.5 in the end. then more."]
        );
    }

    #[test]
    fn quotes_and_mixed_terminators() {
        assert_eq!(
            split("He said \"Stop!\" Then he left?! 2016 was odd."),
            vec!["He said \"Stop!\"", "Then he left?!", "2016 was odd."]
        );
    }
}
