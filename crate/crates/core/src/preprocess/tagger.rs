use serde::{Deserialize, Serialize};

use super::lexicon::Lexicon;
use super::tokenize::is_numeral;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosTag {
    Noun,
    ProperNoun,
    Verb,
    Adjective,
    Adverb,
    Determiner,
    Pronoun,
    Preposition,
    Conjunction,
    Numeral,
    Other,
}

/// Tag one token. The rules are tried in order:
///
/// 1. numerals;
/// 2. closed-class lookup (determiners, pronouns, prepositions,
///    conjunctions, listed verb forms);
/// 3. capitalized words are proper nouns, except at the start of a sentence
///    where the word must also be absent from every lexicon list;
/// 4. suffixes: `-ly` adverbs, `-ed`/`-ing` on a known verb stem, and
///    `-ous`/`-ful`/`-able` adjectives;
/// 5. everything else is a noun.
pub fn tag_token(surface: &str, sentence_start: bool, lexicon: &Lexicon) -> PosTag {
    if is_numeral(surface) {
        return PosTag::Numeral;
    }
    let lower = surface.to_lowercase();
    if lexicon.determiners.contains(&lower) {
        return PosTag::Determiner;
    }
    if lexicon.pronouns.contains(&lower) {
        return PosTag::Pronoun;
    }
    if lexicon.prepositions.contains(&lower) {
        return PosTag::Preposition;
    }
    if lexicon.conjunctions.contains(&lower) {
        return PosTag::Conjunction;
    }
    if lexicon.verbs.contains(&lower) {
        return PosTag::Verb;
    }
    if surface.chars().next().is_some_and(char::is_uppercase)
        && (!sentence_start || !lexicon.is_common(&lower))
    {
        return PosTag::ProperNoun;
    }
    if !lower.chars().all(char::is_alphabetic) {
        return if lower.chars().any(char::is_alphabetic) {
            PosTag::Noun
        } else {
            PosTag::Other
        };
    }
    if lower.len() > 3 && lower.ends_with("ly") {
        return PosTag::Adverb;
    }
    if has_known_verb_stem(&lower, lexicon) {
        return PosTag::Verb;
    }
    if ["ous", "ful", "able"]
        .iter()
        .any(|s| lower.len() > s.len() + 1 && lower.ends_with(s))
    {
        return PosTag::Adjective;
    }
    PosTag::Noun
}

fn has_known_verb_stem(lower: &str, lexicon: &Lexicon) -> bool {
    let base = if let Some(b) = lower.strip_suffix("ing") {
        b
    } else if let Some(b) = lower.strip_suffix("ed") {
        b
    } else {
        return false;
    };
    if base.is_empty() {
        return false;
    }
    let known = |w: &str| lexicon.verb_stems.contains(w);
    if known(base) || known(&format!("{base}e")) {
        return true;
    }
    // stopped -> stop, studied -> study
    let b = base.as_bytes();
    if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] && known(&base[..base.len() - 1]) {
        return true;
    }
    base.strip_suffix('i')
        .is_some_and(|stem| known(&format!("{stem}y")))
}

/// Tag every token of a sentence; only the first token is sentence-initial.
pub fn pos_tag<S: AsRef<str>>(surfaces: &[S], lexicon: &Lexicon) -> Vec<PosTag> {
    surfaces
        .iter()
        .enumerate()
        .map(|(i, s)| tag_token(s.as_ref(), i == 0, lexicon))
        .collect()
}
