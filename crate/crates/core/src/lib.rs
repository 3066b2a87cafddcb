//! Extractive single-document summarization.
//!
//! The pipeline turns raw text into a per-sentence feature matrix, trains a
//! small Bernoulli RBM on that matrix with persistent contrastive divergence,
//! scores every sentence by the sum of its hidden-unit activations and then
//! picks sentences by rank and Jaccard similarity. The [`eval`] module scores
//! summaries against reference extracts.
//!
//! ```no_run
//! use rbmsum_core::{RawDocument, Pipeline};
//!
//! let doc = RawDocument::new("article", std::fs::read_to_string("article.txt").unwrap());
//! let summary = Pipeline::default().summarize(&doc).unwrap();
//! println!("{}", summary.text);
//! ```

pub mod error;
pub mod eval;
pub mod features;
pub mod preprocess;
pub mod rbm;
pub mod summarizer;

pub use error::{Error, Result};
pub use eval::{EvalScores, ReferenceSummary};
pub use features::{FeatureConfig, FeatureVector, SentenceFeatureMatrix};
pub use preprocess::{Lexicon, PosTag, ProcessedDocument, RawDocument, Sentence, Token};
pub use rbm::{EnhancedMatrix, Rbm, TrainConfig};
pub use summarizer::{Pipeline, SimilarityAnchor, Summary, SummaryConfig, SummaryLimit};
