//! Text preprocessing: paragraph and sentence segmentation, tokenization,
//! Porter stemming, stop-word flagging, rule-based PoS tagging and
//! named-entity chunking.

mod lexicon;
mod porter;
mod segment;
mod tagger;
mod tokenize;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lexicon::{parse_word_list, Lexicon, LEXICON_FILES};
pub use porter::porter_stem;
pub use segment::{segment_paragraphs, segment_sentences};
pub use tagger::{pos_tag, tag_token, PosTag};
pub use tokenize::{is_numeral, tokenize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub source_id: String,
    pub text: String,
}

impl RawDocument {
    pub fn new(source_id: impl Into<String>, text: impl Into<String>) -> Self {
        RawDocument {
            source_id: source_id.into(),
            text: text.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Lowercased Porter stem; non-alphabetic tokens are only lowercased.
    pub stem: String,
    pub tag: PosTag,
    pub is_stopword: bool,
    pub is_numeral: bool,
}

/// A maximal run of proper-noun tokens, as `(start, len)` token offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySpan {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub doc_index: usize,
    pub para_index: usize,
    pub pos_in_para: usize,
    pub is_para_first: bool,
    pub is_para_last: bool,
    pub tokens: Vec<Token>,
    pub entities: Vec<EntitySpan>,
    pub original_text: String,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn content_stems(&self) -> impl Iterator<Item = &str> {
        self.tokens
            .iter()
            .filter(|t| !t.is_stopword)
            .map(|t| t.stem.as_str())
    }

    /// Distinct non-stopword stems.
    pub fn stem_set(&self) -> BTreeSet<&str> {
        self.content_stems().collect()
    }

    /// Non-stopword stem counts.
    pub fn term_counts(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        for stem in self.content_stems() {
            *counts.entry(stem).or_insert(0) += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessedDocument {
    pub source_id: String,
    pub sentences: Vec<Sentence>,
    pub paragraph_count: usize,
    /// Occurrence count of every non-stopword stem in the document.
    pub vocabulary: BTreeMap<String, usize>,
}

impl ProcessedDocument {
    pub fn n_sentences(&self) -> usize {
        self.sentences.len()
    }
}

/// Flag stop words in place by their lowercased surface.
pub fn filter_stopwords(tokens: &mut [Token], lexicon: &Lexicon) {
    for token in tokens {
        token.is_stopword = lexicon.is_stopword(&token.surface.to_lowercase());
    }
}

/// Maximal runs of consecutive proper-noun tokens; stop words break a run.
pub fn chunk_named_entities(tokens: &[Token]) -> Vec<EntitySpan> {
    let mut spans = Vec::new();
    let mut run: Option<usize> = None;
    for (i, token) in tokens.iter().enumerate() {
        let proper = token.tag == PosTag::ProperNoun && !token.is_stopword;
        match (proper, run) {
            (true, None) => run = Some(i),
            (false, Some(start)) => {
                spans.push(EntitySpan {
                    start,
                    len: i - start,
                });
                run = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run {
        spans.push(EntitySpan {
            start,
            len: tokens.len() - start,
        });
    }
    spans
}

fn stem_of(surface: &str) -> String {
    let lower = surface.to_lowercase();
    if lower.bytes().all(|b| b.is_ascii_lowercase()) {
        porter_stem(&lower)
    } else {
        lower
    }
}

/// Build the tokens of one sentence: tokenize, stem, flag stop words, tag.
pub fn analyze_sentence(text: &str, lexicon: &Lexicon) -> Vec<Token> {
    let surfaces = tokenize(text);
    let tags = pos_tag(&surfaces, lexicon);
    let mut tokens: Vec<Token> = surfaces
        .iter()
        .zip(tags)
        .map(|(s, tag)| Token {
            surface: s.to_string(),
            stem: stem_of(s),
            tag,
            is_stopword: false,
            is_numeral: is_numeral(s),
        })
        .collect();
    filter_stopwords(&mut tokens, lexicon);
    tokens
}

/// Run the whole preprocessing chain.
///
/// Sentences without any token are dropped, as are paragraphs left without
/// sentences; sentence and paragraph indices are contiguous afterwards.
pub fn preprocess(raw: &RawDocument, lexicon: &Lexicon) -> Result<ProcessedDocument> {
    let paragraphs = segment_paragraphs(&raw.text)?;
    let mut sentences = Vec::new();
    let mut para_index = 0;
    for paragraph in paragraphs {
        let analyzed: Vec<(&str, Vec<Token>)> =
            segment_sentences(paragraph, &lexicon.abbreviations)
                .into_iter()
                .map(|s| (s, analyze_sentence(s, lexicon)))
                .filter(|(_, tokens)| !tokens.is_empty())
                .collect();
        let count = analyzed.len();
        for (pos, (text, tokens)) in analyzed.into_iter().enumerate() {
            sentences.push(Sentence {
                doc_index: sentences.len(),
                para_index,
                pos_in_para: pos,
                is_para_first: pos == 0,
                is_para_last: pos + 1 == count,
                entities: chunk_named_entities(&tokens),
                tokens,
                original_text: text.to_string(),
            });
        }
        if count > 0 {
            para_index += 1;
        }
    }
    if sentences.is_empty() {
        return Err(Error::DegenerateDocument);
    }
    let mut vocabulary = BTreeMap::new();
    for stem in sentences.iter().flat_map(Sentence::content_stems) {
        *vocabulary.entry(stem.to_string()).or_insert(0) += 1;
    }
    Ok(ProcessedDocument {
        source_id: raw.source_id.clone(),
        sentences,
        paragraph_count: para_index,
        vocabulary,
    })
}
