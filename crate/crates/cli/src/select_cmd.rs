//! The `select` subcommand: CSV in, selection report out.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::Args;
use socc_core::dataset::{self, CsvOptions, DiscretizeScheme};
use socc_core::selector::{select_by_method, SelectMethod, SelectOptions};
use socc_core::{Error, Result};

use crate::report::{file_fingerprint, RunManifest, SelectionReportJson};

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Input CSV file with a header row
    #[arg(long)]
    pub input: PathBuf,

    /// Name of the label column
    #[arg(long)]
    pub label: String,

    /// How many features to select
    #[arg(long = "num-features")]
    pub num_features: usize,

    /// Selection method: ols, olsd, or definition
    #[arg(long, default_value = "ols")]
    pub method: String,

    /// Treat this column as categorical (repeatable)
    #[arg(long = "categorical")]
    pub categorical: Vec<String>,

    /// Binning scheme for the olsd path: mean-std-3 or mean-std-4
    #[arg(long, default_value = "mean-std-4")]
    pub discretize: String,

    /// Write the JSON report to this path
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// CSV field delimiter
    #[arg(long, default_value = ",")]
    pub delimiter: char,
}

pub fn run(args: &SelectArgs) -> Result<i32> {
    let total_start = Instant::now();
    let method = SelectMethod::from_str(&args.method)?;
    let scheme = DiscretizeScheme::from_str(&args.discretize)?;
    if !args.delimiter.is_ascii() {
        return Err(Error::InvalidArgument(format!(
            "delimiter '{}' is not a single ASCII character",
            args.delimiter
        )));
    }

    let load_start = Instant::now();
    let options = CsvOptions {
        delimiter: args.delimiter as u8,
        categorical: args.categorical.clone(),
    };
    let (x, labels) = dataset::load_csv::<f64>(&args.input, &args.label, &options)?;
    let load_ms = load_start.elapsed().as_secs_f64() * 1e3;

    let constant = x.constant_columns();
    if !constant.is_empty() {
        let names: Vec<&str> = constant.iter().map(|&j| x.names[j].as_str()).collect();
        eprintln!(
            "warning: constant feature column(s) retained as zero-criterion candidates: {}",
            names.join(", ")
        );
    }

    let encode_start = Instant::now();
    let distinct = labels
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let y = if distinct == 2 {
        dataset::encode_response_binomial::<f64>(&labels)?
    } else {
        dataset::encode_response_multinomial::<f64>(&labels)?
    };
    let encode_ms = encode_start.elapsed().as_secs_f64() * 1e3;

    let select_start = Instant::now();
    let report = select_by_method(
        &x,
        &y,
        args.num_features,
        method,
        scheme,
        &SelectOptions::default(),
    )?;
    let select_ms = select_start.elapsed().as_secs_f64() * 1e3;

    let mut manifest = RunManifest::new(
        "select",
        serde_json::json!({
            "input": args.input.display().to_string(),
            "label": args.label,
            "num_features": args.num_features,
            "method": method,
            "categorical": args.categorical,
            "discretize": args.discretize,
            "delimiter": args.delimiter.to_string(),
            "classes": y.classes,
        }),
    );
    manifest.input_fingerprint = Some(file_fingerprint(&args.input)?);
    manifest.record_timing("load", load_ms);
    manifest.record_timing("encode", encode_ms);
    manifest.record_timing("select", select_ms);
    manifest.record_timing("total", total_start.elapsed().as_secs_f64() * 1e3);

    // Human-readable summary on stdout (1-based step numbering, names).
    println!(
        "selected {} of {} features from {} ({} instances, {} classes, method {})",
        report.steps.len(),
        x.n_features(),
        args.input.display(),
        x.n_instances(),
        y.classes.len(),
        method
    );
    println!("{:<6}{:<24}{:>12}{:>14}", "step", "feature", "gain", "cumulative");
    for (k, step) in report.steps.iter().enumerate() {
        println!(
            "{:<6}{:<24}{:>12.4}{:>14.4}",
            k + 1,
            format!("{} (#{})", step.name, step.index + 1),
            step.gain,
            step.cumulative
        );
    }
    if report.truncated {
        println!(
            "note: stopped after {} feature(s); every remaining candidate was fully explained by the selection",
            report.steps.len()
        );
    }
    if !report.dropped.is_empty() {
        let names: Vec<&str> = report
            .dropped
            .iter()
            .filter_map(|&j| x.names.get(j).map(|s| s.as_str()))
            .collect();
        println!("rank-deficient candidates: {}", names.join(", "));
    }
    println!("elapsed: {:.1} ms", report.total_elapsed_ms);

    if let Some(path) = &args.output {
        let json = SelectionReportJson {
            manifest: &manifest,
            method: report.method,
            steps: &report.steps,
            dropped: &report.dropped,
            elapsed_ms: report.total_elapsed_ms,
        };
        let body = serde_json::to_string_pretty(&json)
            .map_err(|e| Error::Data(format!("report serialization: {e}")))?;
        std::fs::write(path, body)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        println!("report written to {}", path.display());
    }
    Ok(0)
}
