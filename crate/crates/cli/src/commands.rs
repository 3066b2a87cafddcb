use std::io::{Read, Write};
use std::path::Path;

use rbmsum_core::eval::{compare_modes, evaluate_corpus, load_corpus};
use rbmsum_core::features::FEATURE_NAMES;
use rbmsum_core::features::{build_feature_matrix, normalize_columns};
use rbmsum_core::rbm::{train_stack, Stack};
use rbmsum_core::{RawDocument, TrainConfig};
use serde_json::{json, Map, Value};

use crate::settings::{Format, Settings};
use crate::Failure;

fn read_input(input: Option<&Path>) -> Result<RawDocument, Failure> {
    let (id, text) = match input {
        Some(path) if path != Path::new("-") => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let id = path
                .file_stem()
                .map_or("input".into(), |s| s.to_string_lossy().into_owned());
            (id, text)
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::usage(format!("standard input: {e}")))?;
            ("stdin".to_string(), text)
        }
    };
    Ok(RawDocument::new(id, text))
}

fn emit(output: Option<&Path>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Failure {
                code: 1,
                message: format!("standard output: {e}"),
            }),
    }
}

fn dump_rbm(path: &Path, stack: &Stack, config: &TrainConfig) -> Result<(), Failure> {
    let layers: Vec<Value> = stack
        .layers
        .iter()
        .map(|t| {
            json!({
                "n_visible": t.rbm.n_visible(),
                "n_hidden": t.rbm.n_hidden(),
                "weights": t.rbm.weights_row_major(),
                "visible_bias": t.rbm.visible_bias.to_vec(),
                "hidden_bias": t.rbm.hidden_bias.to_vec(),
                "epoch_losses": t.epoch_losses,
            })
        })
        .collect();
    let dump = json!({ "seed": config.seed, "config": config, "layers": layers });
    emit(
        Some(path),
        &(serde_json::to_string_pretty(&dump).expect("serializable") + "\n"),
    )
}

pub fn summarize(
    input: Option<&Path>,
    settings: &Settings,
    output: Option<&Path>,
    dump: Option<&Path>,
) -> Result<(), Failure> {
    let pipeline = settings.pipeline()?;
    let raw = read_input(input)?;
    let analysis = pipeline.analyze(&raw)?;
    let summary = pipeline.summarize_analysis(&analysis);
    if let Some(path) = dump {
        dump_rbm(path, &analysis.stack, &pipeline.train)?;
    }
    let n = analysis.doc.n_sentences();
    eprintln!(
        "seed={} n={} limit={} layers={}",
        settings.seed(),
        n,
        pipeline.summary.effective_limit(n),
        pipeline.layers
    );
    let content = match settings.format() {
        Format::Text => format!("{}\n", summary.text),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&summary).expect("serializable")
        ),
    };
    emit(output, &content)
}

fn round_trip(values: impl IntoIterator<Item = f64>) -> Value {
    Value::Array(values.into_iter().map(|v| json!(v)).collect())
}

pub fn features(
    input: Option<&Path>,
    settings: &Settings,
    enhance: bool,
    output: Option<&Path>,
    dump: Option<&Path>,
) -> Result<(), Failure> {
    let pipeline = settings.pipeline()?;
    let doc = pipeline.preprocess(&read_input(input)?)?;
    let raw = build_feature_matrix(&doc, &pipeline.features);
    let normalized = normalize_columns(&raw);
    let enhanced = if enhance {
        let stack = train_stack(&normalized, &pipeline.train, pipeline.layers)?;
        if let Some(path) = dump {
            dump_rbm(path, &stack, &pipeline.train)?;
        }
        Some(stack.enhanced)
    } else {
        None
    };
    let records: Vec<Value> = raw
        .rows
        .iter()
        .zip(&normalized.rows)
        .enumerate()
        .map(|(i, (r, norm))| {
            let mut obj = Map::new();
            obj.insert("doc_index".into(), json!(i));
            for (name, value) in FEATURE_NAMES.iter().zip(r.to_array()) {
                obj.insert(name.to_string(), json!(value));
            }
            obj.insert("normalized".into(), round_trip(norm.to_array()));
            obj.insert("feature_sum".into(), json!(norm.sum()));
            if let Some(e) = &enhanced {
                let row = e.rows.row(i);
                obj.insert("enhanced".into(), round_trip(row.iter().copied()));
                obj.insert("enhanced_sum".into(), json!(row.sum()));
            }
            Value::Object(obj)
        })
        .collect();
    eprintln!(
        "seed={} n={} layers={}",
        settings.seed(),
        doc.n_sentences(),
        pipeline.layers
    );
    let content = serde_json::to_string_pretty(&records).expect("serializable") + "\n";
    emit(output, &content)
}

pub fn evaluate(
    corpus_dir: &Path,
    settings: &Settings,
    compare: Option<Option<&Path>>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let pipeline = settings.pipeline()?;
    if !corpus_dir.is_dir() {
        return Err(Failure::usage(format!(
            "{}: not a directory",
            corpus_dir.display()
        )));
    }
    let corpus = load_corpus(corpus_dir)?;
    eprintln!(
        "seed={} documents={} layers={}",
        settings.seed(),
        corpus.len(),
        pipeline.layers
    );
    let report = evaluate_corpus(&corpus, &pipeline, pipeline.layers)?;
    let mut main = report.to_csv();
    if let Some(compare_output) = compare {
        let comparison = compare_modes(&corpus, &pipeline)?;
        match compare_output {
            Some(path) => emit(Some(path), &comparison.to_csv())?,
            None => {
                main.push('\n');
                main.push_str(&comparison.to_csv());
            }
        }
    }
    emit(output, &main)
}
