//! Sentence scoring, ranking, Jaccard-driven selection and the end-to-end
//! pipeline.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{
    build_feature_matrix, normalize_columns, FeatureConfig, SentenceFeatureMatrix,
};
use crate::preprocess::{preprocess, Lexicon, ProcessedDocument, RawDocument, Sentence};
use crate::rbm::{train_stack, EnhancedMatrix, Stack, TrainConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedSentence {
    pub doc_index: usize,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummaryLimit {
    Sentences(usize),
    /// Fraction of the document's sentences, rounded up.
    Ratio(f64),
}

/// Which selected sentence the next pick is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityAnchor {
    First,
    #[default]
    Latest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryConfig {
    pub limit: SummaryLimit,
    pub anchor: SimilarityAnchor,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        SummaryConfig {
            limit: SummaryLimit::Ratio(0.33),
            anchor: SimilarityAnchor::Latest,
        }
    }
}

impl SummaryConfig {
    pub fn validate(&self) -> Result<()> {
        match self.limit {
            SummaryLimit::Sentences(0) => Err(Error::InvalidConfig(
                "sentence limit must be at least 1".into(),
            )),
            SummaryLimit::Ratio(r) if !(r > 0.0 && r <= 1.0) => Err(Error::InvalidConfig(format!(
                "ratio must lie in (0, 1], got {r}"
            ))),
            _ => Ok(()),
        }
    }

    /// Number of sentences to select from a document of `n` sentences.
    pub fn effective_limit(&self, n: usize) -> usize {
        let k = match self.limit {
            SummaryLimit::Sentences(k) => k,
            // the epsilon keeps 0.33 * 100 at 33
            SummaryLimit::Ratio(r) => (r * n as f64 - 1e-9).ceil().max(1.0) as usize,
        };
        k.clamp(1, n.max(1)).min(n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Selected sentence indices in document order.
    #[serde(rename = "selected_indices")]
    pub selected: Vec<usize>,
    /// The full ranking the selection was made from.
    pub scores: Vec<RankedSentence>,
    pub text: String,
}

pub fn score_sentences(enhanced: &EnhancedMatrix) -> Vec<RankedSentence> {
    enhanced
        .rows
        .rows()
        .into_iter()
        .enumerate()
        .map(|(doc_index, row)| RankedSentence {
            doc_index,
            score: row.sum(),
        })
        .collect()
}

/// Descending score, ascending index on ties.
pub fn rank(mut scores: Vec<RankedSentence>) -> Vec<RankedSentence> {
    scores.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then(a.doc_index.cmp(&b.doc_index))
    });
    scores
}

/// Jaccard similarity of the non-stopword stem sets; 0 when both are empty.
pub fn jaccard(a: &Sentence, b: &Sentence) -> f64 {
    let (sa, sb) = (a.stem_set(), b.stem_set());
    let union = sa.union(&sb).count();
    if union == 0 {
        return 0.0;
    }
    sa.intersection(&sb).count() as f64 / union as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pick {
    pub doc_index: usize,
    /// Position in the ranking.
    pub rank_position: usize,
    /// Taken in rank order after the top half ran out.
    pub fallback: bool,
}

/// Pick sentences in selection order.
///
/// The best-ranked sentence is taken first. Each further pick is the
/// unselected sentence among the first `ceil(N/2)` ranked positions with the
/// highest Jaccard similarity to the anchor (the first or the latest pick),
/// earlier rank winning ties. Once that top half is used up, the remaining
/// picks follow rank order.
pub fn select(
    ranked: &[RankedSentence],
    doc: &ProcessedDocument,
    config: &SummaryConfig,
) -> Vec<Pick> {
    let n = ranked.len();
    if n == 0 {
        return Vec::new();
    }
    let limit = config.effective_limit(n);
    let top_half = n.div_ceil(2);
    let mut taken = vec![false; n];
    let mut picks = vec![Pick {
        doc_index: ranked[0].doc_index,
        rank_position: 0,
        fallback: false,
    }];
    taken[0] = true;
    while picks.len() < limit {
        let anchor = match config.anchor {
            SimilarityAnchor::First => picks[0].doc_index,
            SimilarityAnchor::Latest => picks[picks.len() - 1].doc_index,
        };
        let anchor = &doc.sentences[anchor];
        let mut best: Option<(usize, f64)> = None;
        for pos in (0..top_half).filter(|&p| !taken[p]) {
            let sim = jaccard(anchor, &doc.sentences[ranked[pos].doc_index]);
            if best.is_none_or(|(_, b)| sim > b) {
                best = Some((pos, sim));
            }
        }
        let (pos, fallback) = match best {
            Some((pos, _)) => (pos, false),
            None => ((0..n).find(|&p| !taken[p]).expect("limit <= n"), true),
        };
        taken[pos] = true;
        picks.push(Pick {
            doc_index: ranked[pos].doc_index,
            rank_position: pos,
            fallback,
        });
    }
    picks
}

/// Put the picks back in document order and join their text.
pub fn assemble(picks: &[Pick], doc: &ProcessedDocument, ranked: &[RankedSentence]) -> Summary {
    let mut selected: Vec<usize> = picks.iter().map(|p| p.doc_index).collect();
    selected.sort_unstable();
    selected.dedup();
    let text = selected
        .iter()
        .map(|&i| doc.sentences[i].original_text.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    Summary {
        selected,
        scores: ranked.to_vec(),
        text,
    }
}

/// Every intermediate product of one pipeline run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub doc: ProcessedDocument,
    pub raw: SentenceFeatureMatrix,
    pub normalized: SentenceFeatureMatrix,
    pub stack: Stack,
}

/// Configuration of the full summarization pipeline.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub lexicon: Lexicon,
    pub features: FeatureConfig,
    pub train: TrainConfig,
    pub summary: SummaryConfig,
    /// Number of stacked RBMs, 1 or 2.
    pub layers: usize,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            lexicon: Lexicon::default(),
            features: FeatureConfig::default(),
            train: TrainConfig::default(),
            summary: SummaryConfig::default(),
            layers: 1,
        }
    }
}

impl Pipeline {
    pub fn validate(&self) -> Result<()> {
        self.features.validate()?;
        self.train.validate()?;
        self.summary.validate()?;
        if !(1..=2).contains(&self.layers) {
            return Err(Error::InvalidConfig(format!(
                "layers must be 1 or 2, got {}",
                self.layers
            )));
        }
        Ok(())
    }

    pub fn preprocess(&self, raw: &RawDocument) -> Result<ProcessedDocument> {
        preprocess(raw, &self.lexicon)
    }

    pub fn analyze(&self, raw: &RawDocument) -> Result<Analysis> {
        self.validate()?;
        let doc = self.preprocess(raw)?;
        let raw_matrix = build_feature_matrix(&doc, &self.features);
        let normalized = normalize_columns(&raw_matrix);
        let stack = train_stack(&normalized, &self.train, self.layers)?;
        Ok(Analysis {
            doc,
            raw: raw_matrix,
            normalized,
            stack,
        })
    }

    pub fn summarize(&self, raw: &RawDocument) -> Result<Summary> {
        let analysis = self.analyze(raw)?;
        Ok(self.summarize_analysis(&analysis))
    }

    pub fn summarize_analysis(&self, analysis: &Analysis) -> Summary {
        let ranked = rank(score_sentences(&analysis.stack.enhanced));
        let picks = select(&ranked, &analysis.doc, &self.summary);
        assemble(&picks, &analysis.doc, &ranked)
    }
}

/// One-layer pipeline with the default lexicon.
pub fn summarize(
    raw: &RawDocument,
    feature_config: &FeatureConfig,
    train_config: &TrainConfig,
    summary_config: &SummaryConfig,
) -> Result<Summary> {
    Pipeline {
        features: *feature_config,
        train: *train_config,
        summary: *summary_config,
        ..Pipeline::default()
    }
    .summarize(raw)
}
