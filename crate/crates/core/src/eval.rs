//! Sentence-level precision, recall and F-measure against reference
//! extracts, per document and averaged over a corpus.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{analyze_sentence, Lexicon, ProcessedDocument, RawDocument};
use crate::rbm::seeded_rng;
use crate::summarizer::Pipeline;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EvalScores {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl EvalScores {
    pub fn new(precision: f64, recall: f64) -> Self {
        EvalScores {
            precision,
            recall,
            f_measure: f_measure(precision, recall),
        }
    }

    /// Component-wise arithmetic mean; all zeros for an empty slice.
    pub fn mean(scores: &[EvalScores]) -> EvalScores {
        if scores.is_empty() {
            return EvalScores::default();
        }
        let n = scores.len() as f64;
        EvalScores {
            precision: scores.iter().map(|s| s.precision).sum::<f64>() / n,
            recall: scores.iter().map(|s| s.recall).sum::<f64>() / n,
            f_measure: scores.iter().map(|s| s.f_measure).sum::<f64>() / n,
        }
    }
}

pub fn precision(system: &BTreeSet<usize>, reference: &BTreeSet<usize>) -> Result<f64> {
    if system.is_empty() {
        return Err(Error::EmptySystemSummary);
    }
    Ok(system.intersection(reference).count() as f64 / system.len() as f64)
}

pub fn recall(system: &BTreeSet<usize>, reference: &BTreeSet<usize>) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    Ok(system.intersection(reference).count() as f64 / reference.len() as f64)
}

/// Harmonic mean of precision and recall, 0 when both are 0.
pub fn f_measure(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ReferenceSelection {
    /// 0-based sentence indices.
    Indices(BTreeSet<usize>),
    /// Literal sentences, matched to the document by their stems.
    Sentences(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSummary {
    pub source_id: String,
    pub selection: ReferenceSelection,
}

/// A reference mapped onto document sentence indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResolvedReference {
    pub indices: BTreeSet<usize>,
    /// Reference sentences with no counterpart in the document; they still
    /// count towards recall.
    pub unmatched: usize,
}

impl ResolvedReference {
    pub fn len(&self) -> usize {
        self.indices.len() + self.unmatched
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn stem_multiset(text: &str, lexicon: &Lexicon) -> Vec<String> {
    let mut stems: Vec<String> = analyze_sentence(text, lexicon)
        .into_iter()
        .filter(|t| !t.is_stopword)
        .map(|t| t.stem)
        .collect();
    stems.sort();
    stems
}

impl ReferenceSummary {
    /// Parse a `.ref` file: one 0-based index per line, or, if any line is
    /// not an integer, one literal sentence per line. Blank lines and `#`
    /// comments are skipped.
    pub fn parse(source_id: impl Into<String>, text: &str) -> Result<Self> {
        let source_id = source_id.into();
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.is_empty() {
            return Err(Error::EmptyReference);
        }
        let indices: Option<BTreeSet<usize>> = lines.iter().map(|l| l.parse().ok()).collect();
        let selection = match indices {
            Some(indices) => ReferenceSelection::Indices(indices),
            None => ReferenceSelection::Sentences(lines.iter().map(|l| l.to_string()).collect()),
        };
        Ok(ReferenceSummary {
            source_id,
            selection,
        })
    }

    /// Map the reference onto `doc`. Literal sentences match the first not
    /// yet matched document sentence with the same multiset of non-stopword
    /// stems.
    pub fn resolve(&self, doc: &ProcessedDocument, lexicon: &Lexicon) -> Result<ResolvedReference> {
        let n = doc.n_sentences();
        match &self.selection {
            ReferenceSelection::Indices(indices) => {
                if let Some(&index) = indices.iter().find(|&&i| i >= n) {
                    return Err(Error::InvalidReference {
                        id: self.source_id.clone(),
                        index,
                        n,
                    });
                }
                Ok(ResolvedReference {
                    indices: indices.clone(),
                    unmatched: 0,
                })
            }
            ReferenceSelection::Sentences(sentences) => {
                let doc_stems: Vec<Vec<String>> = doc
                    .sentences
                    .iter()
                    .map(|s| {
                        let mut v: Vec<String> = s.content_stems().map(str::to_string).collect();
                        v.sort();
                        v
                    })
                    .collect();
                let mut resolved = ResolvedReference::default();
                for sentence in sentences {
                    let target = stem_multiset(sentence, lexicon);
                    let hit =
                        (0..n).find(|i| !resolved.indices.contains(i) && doc_stems[*i] == target);
                    match hit {
                        Some(i) => {
                            resolved.indices.insert(i);
                        }
                        None => resolved.unmatched += 1,
                    }
                }
                Ok(resolved)
            }
        }
    }
}

/// Score a system selection against a resolved reference.
pub fn score_selection(
    system: &BTreeSet<usize>,
    reference: &ResolvedReference,
) -> Result<EvalScores> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let p = precision(system, &reference.indices)?;
    let hits = system.intersection(&reference.indices).count();
    let r = hits as f64 / reference.len() as f64;
    Ok(EvalScores::new(p, r))
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub doc: RawDocument,
    pub reference: ReferenceSummary,
}

/// Read `<id>.txt` / `<id>.ref` pairs from a directory, sorted by id.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut ids = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "txt") {
            if let Some(stem) = path.file_stem() {
                ids.push(stem.to_string_lossy().into_owned());
            }
        }
    }
    ids.sort();
    ids.into_iter()
        .map(|id| {
            let txt = dir.join(format!("{id}.txt"));
            let reference = dir.join(format!("{id}.ref"));
            if !reference.is_file() {
                return Err(Error::MissingReference(id));
            }
            let text = std::fs::read_to_string(&txt).map_err(|e| Error::io(&txt, e))?;
            let ref_text =
                std::fs::read_to_string(&reference).map_err(|e| Error::io(&reference, e))?;
            Ok(CorpusEntry {
                reference: ReferenceSummary::parse(id.clone(), &ref_text)?,
                doc: RawDocument::new(id, text),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentResult {
    pub source_id: String,
    pub selected: Vec<usize>,
    pub scores: EvalScores,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub documents: Vec<DocumentResult>,
    pub mean: EvalScores,
}

fn csv_row(out: &mut String, label: &str, s: &EvalScores) {
    let _ = writeln!(
        out,
        "{label},{:.6},{:.6},{:.6}",
        s.precision, s.recall, s.f_measure
    );
}

impl CorpusReport {
    /// `source_id,precision,recall,f_measure`, one row per document and a
    /// final `MEAN` row, six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source_id,precision,recall,f_measure\n");
        for d in &self.documents {
            csv_row(&mut out, &d.source_id, &d.scores);
        }
        csv_row(&mut out, "MEAN", &self.mean);
        out
    }
}

fn check_references(corpus: &[CorpusEntry]) -> Result<()> {
    match corpus
        .iter()
        .find(|e| e.reference.source_id != e.doc.source_id)
    {
        Some(e) => Err(Error::MissingReference(e.doc.source_id.clone())),
        None => Ok(()),
    }
}

/// Summarize every document with `pipeline` (using `layers` stacked RBMs)
/// and score it against its reference.
pub fn evaluate_corpus(
    corpus: &[CorpusEntry],
    pipeline: &Pipeline,
    layers: usize,
) -> Result<CorpusReport> {
    check_references(corpus)?;
    let pipeline = Pipeline {
        layers,
        ..pipeline.clone()
    };
    let mut documents = Vec::with_capacity(corpus.len());
    for entry in corpus {
        let analysis = pipeline.analyze(&entry.doc)?;
        let summary = pipeline.summarize_analysis(&analysis);
        let reference = entry.reference.resolve(&analysis.doc, &pipeline.lexicon)?;
        let system: BTreeSet<usize> = summary.selected.iter().copied().collect();
        documents.push(DocumentResult {
            source_id: entry.doc.source_id.clone(),
            selected: summary.selected,
            scores: score_selection(&system, &reference)?,
        });
    }
    let mean = EvalScores::mean(&documents.iter().map(|d| d.scores).collect::<Vec<_>>());
    Ok(CorpusReport { documents, mean })
}

/// One-layer versus two-layer results on the same corpus and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeComparison {
    pub one_layer: CorpusReport,
    pub two_layer: CorpusReport,
}

impl ModeComparison {
    /// `metric,proposed_1layer,existing_2layer` with precision, recall and
    /// f_measure rows.
    pub fn to_csv(&self) -> String {
        let (a, b) = (&self.one_layer.mean, &self.two_layer.mean);
        let mut out = String::from("metric,proposed_1layer,existing_2layer\n");
        for (name, x, y) in [
            ("precision", a.precision, b.precision),
            ("recall", a.recall, b.recall),
            ("f_measure", a.f_measure, b.f_measure),
        ] {
            let _ = writeln!(out, "{name},{x:.6},{y:.6}");
        }
        out
    }
}

pub fn compare_modes(corpus: &[CorpusEntry], pipeline: &Pipeline) -> Result<ModeComparison> {
    Ok(ModeComparison {
        one_layer: evaluate_corpus(corpus, pipeline, 1)?,
        two_layer: evaluate_corpus(corpus, pipeline, 2)?,
    })
}

/// Mean scores of a selector that picks as many sentences as the pipeline
/// would, uniformly at random, averaged over `seeds`.
pub fn random_baseline(
    corpus: &[CorpusEntry],
    pipeline: &Pipeline,
    seeds: &[u64],
) -> Result<EvalScores> {
    check_references(corpus)?;
    let mut per_seed = Vec::with_capacity(seeds.len());
    let mut prepared = Vec::with_capacity(corpus.len());
    for entry in corpus {
        let doc = pipeline.preprocess(&entry.doc)?;
        let reference = entry.reference.resolve(&doc, &pipeline.lexicon)?;
        let n = doc.n_sentences();
        prepared.push((n, pipeline.summary.effective_limit(n), reference));
    }
    for &seed in seeds {
        let mut rng = seeded_rng(seed);
        let mut scores = Vec::with_capacity(prepared.len());
        for (n, k, reference) in &prepared {
            let system: BTreeSet<usize> = sample(&mut rng, *n, *k).into_iter().collect();
            scores.push(score_selection(&system, reference)?);
        }
        per_seed.push(EvalScores::mean(&scores));
    }
    Ok(EvalScores::mean(&per_seed))
}
