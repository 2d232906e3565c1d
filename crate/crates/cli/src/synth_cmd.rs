//! The `synth` subcommand: recovery-rate trials on the synthetic logistic
//! models. Prints the success count and each failed trial's selection.

use std::str::FromStr;

use clap::Args;
use socc_core::selector::SelectMethod;
use socc_core::synth::{run_recovery_trials, SyntheticConfig};
use socc_core::{Error, Result};

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Experiment family: binomial or multinomial
    #[arg(long, default_value = "binomial")]
    pub mode: String,

    /// Number of independent trials
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Base seed; each trial runs on its own derived stream
    #[arg(long, default_value_t = 20260810)]
    pub seed: u64,

    /// Selection method: ols, olsd, or definition
    #[arg(long, default_value = "ols")]
    pub method: String,
}

pub fn run(args: &SynthArgs) -> Result<i32> {
    if args.trials < 1 {
        return Err(Error::InvalidArgument("--trials must be at least 1".into()));
    }
    let method = SelectMethod::from_str(&args.method)?;
    let mut cfg = match args.mode.as_str() {
        "binomial" => SyntheticConfig::binomial_default(args.seed),
        "multinomial" => SyntheticConfig::multinomial_default(args.seed),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown mode '{other}' (expected binomial or multinomial)"
            )))
        }
    };
    cfg.trials = args.trials;

    println!("mode: {}", args.mode);
    println!("method: {method}");
    println!(
        "instances: {}, features: {}, active: {:?}, seed: {}",
        cfg.n_instances, cfg.n_features, cfg.active, cfg.seed
    );
    let outcome = run_recovery_trials(&cfg, method)?;
    println!("successes: {}/{}", outcome.successes, outcome.trials);
    for trial in outcome.failed_trials(&cfg) {
        let picked: Vec<String> = outcome.selections[trial]
            .iter()
            .map(|&j| format!("{}", j + 1))
            .collect();
        println!(
            "trial {trial} failed: selected features {}",
            if picked.is_empty() {
                "none (selection degenerate)".to_string()
            } else {
                picked.join(", ")
            }
        );
    }
    Ok(0)
}
