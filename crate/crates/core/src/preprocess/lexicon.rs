use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

const STOPWORDS: &str = include_str!("../../assets/stopwords.txt");
const ABBREVIATIONS: &str = include_str!("../../assets/abbreviations.txt");
const DETERMINERS: &str = include_str!("../../assets/determiners.txt");
const PREPOSITIONS: &str = include_str!("../../assets/prepositions.txt");
const PRONOUNS: &str = include_str!("../../assets/pronouns.txt");
const CONJUNCTIONS: &str = include_str!("../../assets/conjunctions.txt");
const VERBS: &str = include_str!("../../assets/verbs.txt");
const VERB_STEMS: &str = include_str!("../../assets/verb_stems.txt");
const COMMON_WORDS: &str = include_str!("../../assets/common_words.txt");

/// Word lists used by segmentation, stop-word filtering and tagging.
///
/// Every list is a plain-text file with one entry per line; blank lines and
/// lines starting with `#` are ignored. All entries except abbreviations are
/// lowercased on load.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub stopwords: HashSet<String>,
    /// Tokens such as `Dr.` after which a period does not end a sentence.
    pub abbreviations: HashSet<String>,
    pub determiners: HashSet<String>,
    pub prepositions: HashSet<String>,
    pub pronouns: HashSet<String>,
    pub conjunctions: HashSet<String>,
    /// Verb forms tagged directly (auxiliaries, modals, irregular forms).
    pub verbs: HashSet<String>,
    /// Base forms used to recognise regular `-ed`/`-ing` verbs.
    pub verb_stems: HashSet<String>,
    /// Extra words that are not proper nouns when capitalized at the start of
    /// a sentence.
    pub common_words: HashSet<String>,
}

/// File names looked up by [`Lexicon::with_overrides_from_dir`].
pub const LEXICON_FILES: [&str; 9] = [
    "stopwords.txt",
    "abbreviations.txt",
    "determiners.txt",
    "prepositions.txt",
    "pronouns.txt",
    "conjunctions.txt",
    "verbs.txt",
    "verb_stems.txt",
    "common_words.txt",
];

pub fn parse_word_list(text: &str, lowercase: bool) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            if lowercase {
                l.to_lowercase()
            } else {
                l.to_string()
            }
        })
        .collect()
}

fn read_list(path: &Path, lowercase: bool) -> Result<HashSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_word_list(&text, lowercase))
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon {
            stopwords: parse_word_list(STOPWORDS, true),
            abbreviations: parse_word_list(ABBREVIATIONS, false),
            determiners: parse_word_list(DETERMINERS, true),
            prepositions: parse_word_list(PREPOSITIONS, true),
            pronouns: parse_word_list(PRONOUNS, true),
            conjunctions: parse_word_list(CONJUNCTIONS, true),
            verbs: parse_word_list(VERBS, true),
            verb_stems: parse_word_list(VERB_STEMS, true),
            common_words: parse_word_list(COMMON_WORDS, true),
        }
    }
}

impl Lexicon {
    pub fn with_stopwords_file(mut self, path: &Path) -> Result<Self> {
        self.stopwords = read_list(path, true)?;
        Ok(self)
    }

    pub fn with_abbreviations_file(mut self, path: &Path) -> Result<Self> {
        self.abbreviations = read_list(path, false)?;
        Ok(self)
    }

    /// Replace every list for which `dir` contains a file named as in
    /// [`LEXICON_FILES`]; the others keep their current contents.
    pub fn with_overrides_from_dir(mut self, dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::Io {
                path: dir.display().to_string(),
                message: "not a directory".into(),
            });
        }
        for name in LEXICON_FILES {
            let path = dir.join(name);
            if !path.is_file() {
                continue;
            }
            let lowercase = name != "abbreviations.txt";
            let list = read_list(&path, lowercase)?;
            let slot = match name {
                "stopwords.txt" => &mut self.stopwords,
                "abbreviations.txt" => &mut self.abbreviations,
                "determiners.txt" => &mut self.determiners,
                "prepositions.txt" => &mut self.prepositions,
                "pronouns.txt" => &mut self.pronouns,
                "conjunctions.txt" => &mut self.conjunctions,
                "verbs.txt" => &mut self.verbs,
                "verb_stems.txt" => &mut self.verb_stems,
                _ => &mut self.common_words,
            };
            *slot = list;
        }
        Ok(self)
    }

    pub fn is_stopword(&self, lower: &str) -> bool {
        self.stopwords.contains(lower)
    }

    /// Whether a lowercased word appears in any list; such words are not
    /// taken for proper nouns at the start of a sentence.
    pub fn is_common(&self, lower: &str) -> bool {
        self.stopwords.contains(lower)
            || self.determiners.contains(lower)
            || self.prepositions.contains(lower)
            || self.pronouns.contains(lower)
            || self.conjunctions.contains(lower)
            || self.verbs.contains(lower)
            || self.verb_stems.contains(lower)
            || self.common_words.contains(lower)
    }
}
