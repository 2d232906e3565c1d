//! The `verify` subcommand: randomized numerical certification of the
//! identities the selection criterion rests on. Each identity battery
//! reports its worst observed discrepancy; any identity out of tolerance
//! fails the run (exit code 3).

use clap::Args;
use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use socc_core::dataset::encode_response_multinomial;
use socc_core::linalg::{center_columns, center_vector};
use socc_core::{oracle, socc, Error, Result};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random instances per identity
    #[arg(long, default_value_t = 200)]
    pub trials: usize,

    /// Seed for the instance generator
    #[arg(long, default_value_t = 20260810)]
    pub seed: u64,

    /// Largest feature count n in random instances
    #[arg(long = "max-n", default_value_t = 10)]
    pub max_n: usize,

    /// Largest response width m in random instances
    #[arg(long = "max-m", default_value_t = 4)]
    pub max_m: usize,
}

struct IdentityOutcome {
    name: &'static str,
    worst: f64,
    tolerance: f64,
}

impl IdentityOutcome {
    fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

fn random_matrix(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| rng.random_range(-2.0..2.0))
}

fn random_vector(rng: &mut ChaCha12Rng, rows: usize) -> Array1<f64> {
    Array1::from_iter((0..rows).map(|_| rng.random_range(-2.0..2.0)))
}

fn multiple_correlation_battery(rng: &mut ChaCha12Rng, trials: usize, max_n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let n_rows = rng.random_range(8..=50);
        let n_cols = rng.random_range(1..=max_n.min(n_rows - 2));
        let mut x = random_matrix(rng, n_rows, n_cols);
        // The first instance gets a duplicated column so the rank-handling
        // (pseudo-solve) path is exercised on every run.
        let degenerate = trial == 0 && n_cols >= 2;
        if degenerate {
            let first = x.column(0).to_owned();
            x.column_mut(n_cols - 1).assign(&first);
        }
        let y = random_vector(rng, n_rows);
        let xc = center_columns(&x);
        let (y_c, _) = center_vector(&y);
        let via_socc = socc::multiple_correlation_sq_via_socc(&xc, &y_c);
        let via_def = oracle::multiple_correlation_definition(&xc, &y_c, degenerate)?;
        worst = worst.max((via_socc - via_def).abs());
    }
    Ok(worst)
}

fn canonical_sum_battery(
    rng: &mut ChaCha12Rng,
    trials: usize,
    max_n: usize,
    max_m: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n_rows = rng.random_range(12..=40);
        let n_cols = rng.random_range(1..=max_n.min(6));
        let m_cols = rng.random_range(1..=max_m);
        let x = random_matrix(rng, n_rows, n_cols);
        let y = random_matrix(rng, n_rows, m_cols);
        let xc = center_columns(&x);
        let yc = center_columns(&y);
        let via_socc = socc::canonical_sq_sum_via_socc(&xc, &yc);
        let cca = oracle::cca_eigen(&xc, &yc)?;
        worst = worst
            .max((via_socc - cca.sum()).abs())
            .max(cca.max_eigen_residual());
    }
    Ok(worst)
}

fn fisher_map_battery(rng: &mut ChaCha12Rng, trials: usize, max_n: usize) -> Result<f64> {
    let class_names = ["a", "b", "c", "d"];
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < trials {
        let n_rows = rng.random_range(18..=40);
        let n_cols = rng.random_range(1..=max_n.min(5));
        let c = rng.random_range(2..=4);
        let labels: Vec<String> = (0..n_rows)
            .map(|_| class_names[rng.random_range(0..c)].to_string())
            .collect();
        let mut counts = std::collections::HashMap::new();
        for l in &labels {
            *counts.entry(l.clone()).or_insert(0usize) += 1;
        }
        if counts.len() != c || counts.values().any(|&k| k < 2) {
            continue;
        }
        let values = random_matrix(rng, n_rows, n_cols);
        let lda = oracle::lda_fisher(&values, &labels)?;
        let y = encode_response_multinomial::<f64>(&labels)?;
        let cca = oracle::cca_eigen(&center_columns(&values), &center_columns(&y.matrix))?;
        for (k, &r2) in cca.eigenvalues.iter().enumerate() {
            let mapped = r2 / (1.0 - r2);
            let j = lda.fisher_criteria[k];
            worst = worst.max((j - mapped).abs() / j.abs().max(1.0));
        }
        done += 1;
    }
    Ok(worst)
}

fn intercept_battery(rng: &mut ChaCha12Rng, trials: usize, max_n: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n_rows = rng.random_range(10..=40);
        let n_cols = rng.random_range(1..=max_n.min(n_rows - 3));
        let x = random_matrix(rng, n_rows, n_cols);
        let y = random_vector(rng, n_rows);
        let check = oracle::ols_intercept_check(&x, &y)?;
        worst = worst.max(check.max_discrepancy);
    }
    Ok(worst)
}

pub fn run(args: &VerifyArgs) -> Result<i32> {
    if args.trials < 1 {
        return Err(Error::InvalidArgument("--trials must be at least 1".into()));
    }
    if args.max_n < 1 || args.max_m < 1 {
        return Err(Error::InvalidArgument(
            "--max-n and --max-m must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let outcomes = vec![
        IdentityOutcome {
            name: "multiple correlation: criterion sum vs normal equations",
            worst: multiple_correlation_battery(&mut rng, args.trials, args.max_n)?,
            tolerance: 1e-8,
        },
        IdentityOutcome {
            name: "canonical sum: criterion double sum vs eigenvalue sum",
            worst: canonical_sum_battery(&mut rng, args.trials, args.max_n, args.max_m)?,
            tolerance: 1e-8,
        },
        IdentityOutcome {
            name: "fisher map: discriminant criteria vs r2/(1-r2)",
            worst: fisher_map_battery(&mut rng, args.trials, args.max_n)?,
            tolerance: 1e-6,
        },
        IdentityOutcome {
            name: "intercept elimination: direct vs centred solve",
            worst: intercept_battery(&mut rng, args.trials, args.max_n)?,
            tolerance: 1e-9,
        },
    ];

    let mut all_passed = true;
    println!("{} randomized instances per identity (seed {})", args.trials, args.seed);
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status}  {:<58} max discrepancy {:>10.3e} (tolerance {:.0e})",
            o.name, o.worst, o.tolerance
        );
        all_passed &= o.passed();
    }
    Ok(if all_passed { 0 } else { 3 })
}
