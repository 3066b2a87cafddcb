//! The nine per-sentence features and the sentence-feature matrix.

use std::collections::BTreeSet;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{PosTag, ProcessedDocument, Sentence};

pub const N_FEATURES: usize = 9;

/// Column names in matrix order.
pub const FEATURE_NAMES: [&str; N_FEATURES] = [
    "thematic",
    "position",
    "length",
    "pos_in_para",
    "proper_nouns",
    "numerals",
    "named_entities",
    "tf_isf",
    "centroid_sim",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    /// How many of the most frequent stems count as thematic words.
    pub thematic_count: usize,
    /// Fraction of N used for the `min`/`max` terms of the position feature.
    pub th_fraction: f64,
    /// Sentences with fewer tokens get a length feature of zero.
    pub short_sentence_min_words: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            thematic_count: 10,
            th_fraction: 0.2,
            short_sentence_min_words: 3,
        }
    }
}

impl FeatureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.thematic_count < 1 {
            return Err(Error::InvalidConfig(
                "thematic_count must be at least 1".into(),
            ));
        }
        if !(self.th_fraction > 0.0 && self.th_fraction < 0.5) {
            return Err(Error::InvalidConfig(
                "th_fraction must lie in (0, 0.5)".into(),
            ));
        }
        if self.short_sentence_min_words < 1 {
            return Err(Error::InvalidConfig(
                "short_sentence_min_words must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FeatureVector {
    pub thematic: f64,
    pub position: f64,
    pub length: f64,
    pub pos_in_para: f64,
    pub proper_nouns: f64,
    pub numerals: f64,
    pub named_entities: f64,
    pub tf_isf: f64,
    pub centroid_sim: f64,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; N_FEATURES] {
        [
            self.thematic,
            self.position,
            self.length,
            self.pos_in_para,
            self.proper_nouns,
            self.numerals,
            self.named_entities,
            self.tf_isf,
            self.centroid_sim,
        ]
    }

    pub fn from_array(a: [f64; N_FEATURES]) -> Self {
        FeatureVector {
            thematic: a[0],
            position: a[1],
            length: a[2],
            pos_in_para: a[3],
            proper_nouns: a[4],
            numerals: a[5],
            named_entities: a[6],
            tf_isf: a[7],
            centroid_sim: a[8],
        }
    }

    pub fn sum(&self) -> f64 {
        self.to_array().iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceFeatureMatrix {
    pub rows: Vec<FeatureVector>,
    pub normalized: bool,
}

impl SentenceFeatureMatrix {
    pub fn n_sentences(&self) -> usize {
        self.rows.len()
    }

    pub fn to_array2(&self) -> Array2<f64> {
        let mut out = Array2::zeros((self.rows.len(), N_FEATURES));
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.to_array().into_iter().enumerate() {
                out[[i, j]] = v;
            }
        }
        out
    }
}

/// The `thematic_count` most frequent non-stopword stems; ties go to the
/// lexicographically smaller stem.
pub fn thematic_words(doc: &ProcessedDocument, config: &FeatureConfig) -> BTreeSet<String> {
    let mut by_count: Vec<(&String, &usize)> = doc.vocabulary.iter().collect();
    by_count.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    by_count
        .into_iter()
        .take(config.thematic_count)
        .map(|(stem, _)| stem.clone())
        .collect()
}

fn ratio(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        count as f64 / total as f64
    }
}

pub fn f_thematic(sentence: &Sentence, thematic: &BTreeSet<String>) -> f64 {
    let hits = sentence
        .tokens
        .iter()
        .filter(|t| !t.is_stopword && thematic.contains(&t.stem))
        .count();
    ratio(hits, sentence.len())
}

/// 1 for the first and last sentence, otherwise
/// `cos((pos - min) * (1/max - min))` with the 1-based position,
/// `min = th * N` and `max = 2 * th * N`.
pub fn f_position(doc_index: usize, n: usize, config: &FeatureConfig) -> f64 {
    if doc_index == 0 || doc_index + 1 == n {
        return 1.0;
    }
    let n = n as f64;
    let sen_pos = (doc_index + 1) as f64;
    let min = config.th_fraction * n;
    let max = 2.0 * config.th_fraction * n;
    ((sen_pos - min) * (1.0 / max - min)).cos()
}

pub fn f_length(sentence: &Sentence, config: &FeatureConfig) -> f64 {
    if sentence.len() < config.short_sentence_min_words {
        0.0
    } else {
        sentence.len() as f64
    }
}

pub fn f_pos_in_para(sentence: &Sentence) -> f64 {
    if sentence.is_para_first || sentence.is_para_last {
        1.0
    } else {
        0.0
    }
}

pub fn f_proper_nouns(sentence: &Sentence) -> f64 {
    sentence
        .tokens
        .iter()
        .filter(|t| t.tag == PosTag::ProperNoun && !t.is_stopword)
        .count() as f64
}

pub fn f_numerals(sentence: &Sentence) -> f64 {
    ratio(
        sentence.tokens.iter().filter(|t| t.is_numeral).count(),
        sentence.len(),
    )
}

pub fn f_named_entities(sentence: &Sentence) -> f64 {
    sentence.entities.len() as f64
}

/// `ln(1 + sum_w tf(w) * occ(w)) / len`, summed over the distinct
/// non-stopword stems `w` of the sentence, where `occ` counts occurrences in
/// every other sentence of the document.
pub fn f_tf_isf(sentence: &Sentence, doc: &ProcessedDocument) -> f64 {
    if sentence.is_empty() {
        return 0.0;
    }
    let total: f64 = sentence
        .term_counts()
        .into_iter()
        .map(|(stem, tf)| {
            let everywhere = doc.vocabulary.get(stem).copied().unwrap_or(0);
            (tf * everywhere.saturating_sub(tf)) as f64
        })
        .sum();
    (1.0 + total).ln() / sentence.len() as f64
}

/// Index of the first maximum.
fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// The sentence with the highest TF-ISF, lowest index on ties.
pub fn centroid_index(doc: &ProcessedDocument) -> usize {
    let scores: Vec<f64> = doc.sentences.iter().map(|s| f_tf_isf(s, doc)).collect();
    argmax(&scores)
}

/// Cosine similarity of the non-stopword stem count vectors.
pub fn f_centroid_sim(sentence: &Sentence, centroid: &Sentence) -> f64 {
    let a = sentence.term_counts();
    let b = centroid.term_counts();
    let dot: f64 = a
        .iter()
        .filter_map(|(stem, &x)| b.get(stem).map(|&y| (x * y) as f64))
        .sum();
    let norm = |m: &std::collections::BTreeMap<&str, usize>| {
        m.values().map(|&c| (c * c) as f64).sum::<f64>().sqrt()
    };
    let (na, nb) = (norm(&a), norm(&b));
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na * nb)).min(1.0)
}

pub fn build_feature_matrix(
    doc: &ProcessedDocument,
    config: &FeatureConfig,
) -> SentenceFeatureMatrix {
    let n = doc.n_sentences();
    let thematic = thematic_words(doc, config);
    let tf_isf: Vec<f64> = doc.sentences.iter().map(|s| f_tf_isf(s, doc)).collect();
    let centroid = doc.sentences.get(argmax(&tf_isf));
    let rows = doc
        .sentences
        .iter()
        .zip(&tf_isf)
        .map(|(s, &tf_isf)| FeatureVector {
            thematic: f_thematic(s, &thematic),
            position: f_position(s.doc_index, n, config),
            length: f_length(s, config),
            pos_in_para: f_pos_in_para(s),
            proper_nouns: f_proper_nouns(s),
            numerals: f_numerals(s),
            named_entities: f_named_entities(s),
            tf_isf,
            centroid_sim: centroid.map_or(0.0, |c| f_centroid_sim(s, c)),
        })
        .collect();
    SentenceFeatureMatrix {
        rows,
        normalized: false,
    }
}

/// Min-max scale every column to [0, 1]; a constant column becomes 0.5.
pub fn normalize_columns(matrix: &SentenceFeatureMatrix) -> SentenceFeatureMatrix {
    let arrays: Vec<[f64; N_FEATURES]> = matrix.rows.iter().map(FeatureVector::to_array).collect();
    let mut out = arrays.clone();
    for j in 0..N_FEATURES {
        let (lo, hi) = arrays
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r[j]), hi.max(r[j]))
            });
        let span = hi - lo;
        for row in out.iter_mut() {
            row[j] = if span > 0.0 {
                ((row[j] - lo) / span).clamp(0.0, 1.0)
            } else {
                0.5
            };
        }
    }
    SentenceFeatureMatrix {
        rows: out.into_iter().map(FeatureVector::from_array).collect(),
        normalized: true,
    }
}
