//! Flag and config-file settings, merged as defaults < file < flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rbmsum_core::preprocess::Lexicon;
use rbmsum_core::{
    FeatureConfig, Pipeline, SimilarityAnchor, SummaryConfig, SummaryLimit, TrainConfig,
};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    First,
    Latest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Every tunable setting. Each field is optional so that a config file and
/// the command line can be layered; the JSON keys are the flag names.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Select exactly N sentences
    #[arg(long, value_name = "N", conflicts_with = "ratio")]
    pub limit: Option<usize>,
    /// Select ceil(R * N) sentences [default: 0.33]
    #[arg(long, value_name = "R")]
    pub ratio: Option<f64>,
    /// RNG seed [default: 42]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of stacked RBMs [default: 1]
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub layers: Option<u8>,
    /// Sentence the next pick is compared with [default: latest]
    #[arg(long, value_enum)]
    pub similarity_anchor: Option<Anchor>,
    /// Stop-word list, one word per line
    #[arg(long, value_name = "PATH")]
    pub stopwords: Option<PathBuf>,
    /// Abbreviation list, one entry per line
    #[arg(long, value_name = "PATH")]
    pub abbreviations: Option<PathBuf>,
    /// Directory with replacement lexicon files
    #[arg(long, value_name = "DIR")]
    pub lexicon_dir: Option<PathBuf>,
    /// Output format for summaries [default: text]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Training epochs [default: 5]
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Learning rate [default: 0.1]
    #[arg(long)]
    pub learning_rate: Option<f64>,
    /// Rows per PCD update [default: 4]
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Persistent Gibbs chains [default: 4]
    #[arg(long)]
    pub chains: Option<usize>,
    /// Gibbs sweeps per parameter update [default: 1]
    #[arg(long)]
    pub gibbs_steps: Option<usize>,
    /// Hidden units per RBM [default: 9]
    #[arg(long)]
    pub hidden: Option<usize>,
    /// Most frequent stems treated as thematic [default: 10]
    #[arg(long)]
    pub thematic_count: Option<usize>,
    /// Position-feature threshold as a fraction of N [default: 0.2]
    #[arg(long)]
    pub th_fraction: Option<f64>,
    /// Sentences shorter than this get length 0 [default: 3]
    #[arg(long)]
    pub min_words: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Settings, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }

    /// `top` wins wherever it has a value. A limit or ratio in `top`
    /// replaces both of those in `self`.
    pub fn overlay(mut self, top: &Settings) -> Settings {
        if top.limit.is_some() || top.ratio.is_some() {
            self.limit = top.limit;
            self.ratio = top.ratio;
        }
        overlay!(self, top; seed, layers, similarity_anchor, stopwords, abbreviations, lexicon_dir,
            format, epochs, learning_rate, batch_size, chains, gibbs_steps, hidden,
            thematic_count, th_fraction, min_words);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(42)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    fn lexicon(&self) -> Result<Lexicon, Failure> {
        let mut lexicon = Lexicon::default();
        if let Some(dir) = &self.lexicon_dir {
            lexicon = lexicon
                .with_overrides_from_dir(dir)
                .map_err(Failure::input)?;
        }
        if let Some(path) = &self.stopwords {
            lexicon = lexicon.with_stopwords_file(path).map_err(Failure::input)?;
        }
        if let Some(path) = &self.abbreviations {
            lexicon = lexicon
                .with_abbreviations_file(path)
                .map_err(Failure::input)?;
        }
        Ok(lexicon)
    }

    pub fn pipeline(&self) -> Result<Pipeline, Failure> {
        if self.limit.is_some() && self.ratio.is_some() {
            return Err(Failure::usage(
                "limit and ratio are mutually exclusive".into(),
            ));
        }
        let features = FeatureConfig::default();
        let train = TrainConfig::default();
        let pipeline = Pipeline {
            lexicon: self.lexicon()?,
            features: FeatureConfig {
                thematic_count: self.thematic_count.unwrap_or(features.thematic_count),
                th_fraction: self.th_fraction.unwrap_or(features.th_fraction),
                short_sentence_min_words: self
                    .min_words
                    .unwrap_or(features.short_sentence_min_words),
            },
            train: TrainConfig {
                learning_rate: self.learning_rate.unwrap_or(train.learning_rate),
                epochs: self.epochs.unwrap_or(train.epochs),
                batch_size: self.batch_size.unwrap_or(train.batch_size),
                n_chains: self.chains.unwrap_or(train.n_chains),
                gibbs_steps_per_update: self.gibbs_steps.unwrap_or(train.gibbs_steps_per_update),
                n_hidden: self.hidden.unwrap_or(train.n_hidden),
                init_std: train.init_std,
                seed: self.seed(),
            },
            summary: SummaryConfig {
                limit: match (self.limit, self.ratio) {
                    (Some(n), _) => SummaryLimit::Sentences(n),
                    (None, Some(r)) => SummaryLimit::Ratio(r),
                    (None, None) => SummaryConfig::default().limit,
                },
                anchor: match self.similarity_anchor {
                    Some(Anchor::First) => SimilarityAnchor::First,
                    Some(Anchor::Latest) | None => SimilarityAnchor::Latest,
                },
            },
            layers: self.layers.unwrap_or(1) as usize,
        };
        pipeline
            .validate()
            .map_err(|e| Failure::usage(e.to_string()))?;
        Ok(pipeline)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file: Settings =
            serde_json::from_str(r#"{"seed": 7, "limit": 3, "layers": 2, "epochs": 9}"#).unwrap();
        let flags = Settings {
            seed: Some(11),
            ratio: Some(0.5),
            ..Settings::default()
        };
        let merged = Settings::default().overlay(&file).overlay(&flags);
        let p = merged.pipeline().unwrap();
        assert_eq!(p.train.seed, 11);
        assert_eq!(p.summary.limit, SummaryLimit::Ratio(0.5));
        assert_eq!(p.layers, 2);
        assert_eq!(p.train.epochs, 9);
        assert_eq!(p.train.batch_size, 4);
    }

    #[test]
    fn defaults() {
        let p = Settings::default().pipeline().unwrap();
        assert_eq!(p.train, TrainConfig::default());
        assert_eq!(p.summary, SummaryConfig::default());
        assert_eq!(p.layers, 1);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(serde_json::from_str::<Settings>(r#"{"sed": 1}"#).is_err());
        let bad = Settings {
            ratio: Some(1.5),
            ..Settings::default()
        };
        assert!(bad.pipeline().is_err());
        let both: Settings = serde_json::from_str(r#"{"limit": 2, "ratio": 0.2}"#).unwrap();
        assert!(both.pipeline().is_err());
    }
}
