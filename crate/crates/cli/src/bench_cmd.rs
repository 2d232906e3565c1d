//! The `bench` subcommand: wall-clock comparison of the selection methods
//! on synthetic Gaussian data with a fixed seed. Medians over repeated
//! runs resist scheduler noise; the selections themselves are
//! deterministic, only the timings vary.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::Args;
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use socc_core::dataset::{DiscretizeScheme, EncodingScheme};
use socc_core::selector::{select_by_method, SelectMethod, SelectOptions};
use socc_core::{EncodedResponse, Error, FeatureMatrix, Result};

const BENCH_SEED: u64 = 0x5eed_50cc;

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance count of the synthetic matrix
    #[arg(long = "N", default_value_t = 300)]
    pub n_instances: usize,

    /// Feature count of the synthetic matrix
    #[arg(long = "n", default_value_t = 5000)]
    pub n_features: usize,

    /// Selection sizes to time, comma separated
    #[arg(long = "t-list", value_delimiter = ',', default_value = "10,20")]
    pub t_list: Vec<usize>,

    /// Methods to time, comma separated (ols, olsd, definition)
    #[arg(long = "method-list", value_delimiter = ',', default_value = "ols,definition")]
    pub method_list: Vec<String>,

    /// Repetitions per cell; the median is reported
    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    /// Write the timing table to this CSV file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Fixed-seed Gaussian bench instance: standard-normal features, a
/// two-class response from a logistic model on three spread-out features.
fn bench_instance(n_instances: usize, n_features: usize) -> Result<(FeatureMatrix, EncodedResponse)> {
    let mut rng = ChaCha12Rng::seed_from_u64(BENCH_SEED);
    let values = Array2::from_shape_fn((n_instances, n_features), |_| {
        rng.sample::<f64, _>(StandardNormal)
    });
    let mut drivers: Vec<usize> = [4usize, 9, 14]
        .iter()
        .map(|&j| j.min(n_features - 1))
        .collect();
    drivers.dedup();
    let coeffs = [2.0, -3.0, 4.0];
    let column: Vec<f64> = (0..n_instances)
        .map(|i| {
            let lin: f64 = drivers
                .iter()
                .zip(coeffs)
                .map(|(&j, c)| c * values[[i, j]])
                .sum();
            let p = 1.0 / (1.0 + (-lin).exp());
            if rng.random::<f64>() < p {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let x = FeatureMatrix::from_numeric(values)?;
    let y = EncodedResponse {
        matrix: Array2::from_shape_vec((n_instances, 1), column).expect("shape"),
        classes: vec!["1".to_string(), "0".to_string()],
        scheme: EncodingScheme::BinomialDummy,
    };
    Ok((x, y))
}

struct BenchRow {
    method: SelectMethod,
    n_instances: usize,
    n_features: usize,
    t: usize,
    median_ms: f64,
    min_ms: f64,
}

pub fn run(args: &BenchArgs) -> Result<i32> {
    if args.reps < 3 {
        return Err(Error::InvalidArgument(
            "--reps must be at least 3 for a meaningful median".into(),
        ));
    }
    if args.t_list.is_empty() || args.method_list.is_empty() {
        return Err(Error::InvalidArgument(
            "--t-list and --method-list must be non-empty".into(),
        ));
    }
    let methods: Vec<SelectMethod> = args
        .method_list
        .iter()
        .map(|m| SelectMethod::from_str(m))
        .collect::<Result<_>>()?;
    for &t in &args.t_list {
        if t < 1 || t > args.n_features {
            return Err(Error::InvalidArgument(format!(
                "t = {t} outside 1..={}",
                args.n_features
            )));
        }
    }

    eprintln!(
        "building synthetic instance N = {}, n = {}",
        args.n_instances, args.n_features
    );
    let (x, y) = bench_instance(args.n_instances, args.n_features)?;

    let mut rows = Vec::new();
    for &method in &methods {
        for &t in &args.t_list {
            let mut times_ms: Vec<f64> = Vec::with_capacity(args.reps);
            for _ in 0..args.reps {
                let start = Instant::now();
                let report = select_by_method(
                    &x,
                    &y,
                    t,
                    method,
                    DiscretizeScheme::MeanStd4,
                    &SelectOptions::default(),
                )?;
                times_ms.push(start.elapsed().as_secs_f64() * 1e3);
                // Keep the selection alive so the work cannot be elided.
                std::hint::black_box(report.cumulative());
            }
            times_ms.sort_by(|a, b| a.partial_cmp(b).expect("finite timings"));
            let median_ms = times_ms[times_ms.len() / 2];
            let row = BenchRow {
                method,
                n_instances: args.n_instances,
                n_features: args.n_features,
                t,
                median_ms,
                min_ms: times_ms[0],
            };
            eprintln!(
                "{} t={}: median {:.1} ms, min {:.1} ms",
                method, t, row.median_ms, row.min_ms
            );
            rows.push(row);
        }
    }

    let mut csv = String::from("method,N,n,t,median_ms,min_ms\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{:.3},{:.3}\n",
            r.method, r.n_instances, r.n_features, r.t, r.median_ms, r.min_ms
        ));
    }
    match &args.output {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            eprintln!("timing table written to {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(0)
}
