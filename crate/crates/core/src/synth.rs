//! Synthetic recovery experiments: multivariate-normal features with a
//! Wishart-sampled covariance and logistic responses driven by a few
//! active features.
//!
//! All randomness flows through ChaCha12, a portable counter-based
//! generator: one seed, with the trial index selecting the stream, so
//! trials are independent, reproducible, and safe to run in parallel.

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{ChiSquared, Distribution, Normal, Open01};
use rayon::prelude::*;

use crate::dataset::{DiscretizeScheme, EncodedResponse, EncodingScheme, FeatureMatrix};
use crate::error::{Error, Result};
use crate::selector::{select_by_method, SelectMethod, SelectOptions};

/// Parameters of a synthetic recovery experiment.
#[derive(Debug, Clone)]
pub struct SyntheticConfig {
    pub n_instances: usize,
    pub n_features: usize,
    /// 1-based indices of the features that drive the response.
    pub active: Vec<usize>,
    /// One row of logistic coefficients for the two-class model; two rows
    /// (the against-reference log-ratios) for the three-class model.
    pub coefficients: Vec<Vec<f64>>,
    pub seed: u64,
    pub trials: usize,
}

impl SyntheticConfig {
    /// Two-class defaults: 600 instances, 100 features, coefficients
    /// (-2, -3, 4) on features 5, 10, 15.
    pub fn binomial_default(seed: u64) -> Self {
        SyntheticConfig {
            n_instances: 600,
            n_features: 100,
            active: vec![5, 10, 15],
            coefficients: vec![vec![-2.0, -3.0, 4.0]],
            seed,
            trials: 100,
        }
    }

    /// Three-class defaults: 900 instances, 100 features, log-ratio rows
    /// (-1, -1, 1) and (1, -1, -1) on features 5, 10, 15.
    pub fn multinomial_default(seed: u64) -> Self {
        SyntheticConfig {
            n_instances: 900,
            n_features: 100,
            active: vec![5, 10, 15],
            coefficients: vec![vec![-1.0, -1.0, 1.0], vec![1.0, -1.0, -1.0]],
            seed,
            trials: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.active.is_empty() {
            return Err(Error::InvalidArgument("no active features".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &a in &self.active {
            if a < 1 || a > self.n_features {
                return Err(Error::InvalidArgument(format!(
                    "active feature {a} outside 1..={}",
                    self.n_features
                )));
            }
            if !seen.insert(a) {
                return Err(Error::InvalidArgument(format!(
                    "active feature {a} listed twice"
                )));
            }
        }
        if self.coefficients.is_empty() || self.coefficients.len() > 2 {
            return Err(Error::InvalidArgument(
                "expected one coefficient row (two classes) or two rows (three classes)".into(),
            ));
        }
        for row in &self.coefficients {
            if row.len() != self.active.len() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient row length {} does not match {} active features",
                    row.len(),
                    self.active.len()
                )));
            }
        }
        Ok(())
    }

    fn active_zero_based(&self) -> Vec<usize> {
        self.active.iter().map(|&a| a - 1).collect()
    }
}

/// The random stream for one trial: shared seed, trial index as stream id.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One sampled feature distribution: mean vector and a lower-triangular
/// factor of the covariance (`cov = factor * factor'`).
pub(crate) struct FeatureModel {
    mean: Vec<f64>,
    factor: Array2<f64>,
}

#[cfg(test)]
impl FeatureModel {
    fn covariance(&self) -> Array2<f64> {
        self.factor.dot(&self.factor.t())
    }
}

/// Draw the per-trial feature distribution: mean entries from N(0, 0.1),
/// covariance from a Wishart draw with `n_instances` degrees of freedom
/// around a diagonal scale with U(0, 1) entries, divided by the degree
/// count. The Wishart draw uses the Bartlett factorisation, so the
/// covariance factor comes out directly.
pub(crate) fn sample_feature_model<R: Rng>(cfg: &SyntheticConfig, rng: &mut R) -> FeatureModel {
    let n = cfg.n_features;
    let df = cfg.n_instances;
    let mean_dist = Normal::new(0.0f64, 0.1).expect("valid normal");
    let mean: Vec<f64> = (0..n).map(|_| mean_dist.sample(rng)).collect();
    let scale_sqrt: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = Open01.sample(rng);
            u.sqrt()
        })
        .collect();
    let mut bartlett = Array2::<f64>::zeros((n, n));
    let std_normal = Normal::new(0.0f64, 1.0).expect("valid normal");
    for j in 0..n {
        let chi = ChiSquared::new((df - j) as f64).expect("positive dof");
        bartlett[[j, j]] = chi.sample(rng).sqrt();
        for i in (j + 1)..n {
            bartlett[[i, j]] = std_normal.sample(rng);
        }
    }
    let inv_sqrt_df = 1.0 / (df as f64).sqrt();
    let mut factor = bartlett;
    for i in 0..n {
        for j in 0..=i {
            factor[[i, j]] *= scale_sqrt[i] * inv_sqrt_df;
        }
    }
    FeatureModel { mean, factor }
}

pub(crate) fn draw_features<R: Rng>(
    model: &FeatureModel,
    n_instances: usize,
    rng: &mut R,
) -> Array2<f64> {
    let n = model.mean.len();
    let std_normal = Normal::new(0.0f64, 1.0).expect("valid normal");
    let mut x = Array2::<f64>::zeros((n_instances, n));
    let mut z = vec![0.0f64; n];
    for i in 0..n_instances {
        for zj in z.iter_mut() {
            *zj = std_normal.sample(rng);
        }
        for k in 0..n {
            let mut v = model.mean[k];
            for (j, &zj) in z.iter().enumerate().take(k + 1) {
                v += model.factor[[k, j]] * zj;
            }
            x[[i, k]] = v;
        }
    }
    x
}

/// Sample one feature matrix for the given configuration. Deterministic
/// for a given generator state.
pub fn gen_features<R: Rng>(cfg: &SyntheticConfig, rng: &mut R) -> Result<FeatureMatrix<f64>> {
    cfg.validate()?;
    if cfg.n_instances <= cfg.n_features {
        return Err(Error::InvalidArgument(format!(
            "need more instances than features for the covariance draw ({} <= {})",
            cfg.n_instances, cfg.n_features
        )));
    }
    let model = sample_feature_model(cfg, rng);
    let x = draw_features(&model, cfg.n_instances, rng);
    FeatureMatrix::from_numeric(x)
}

/// Success probabilities of the two-class logistic model, one per instance.
pub fn binomial_probabilities(
    x: &FeatureMatrix<f64>,
    cfg: &SyntheticConfig,
) -> Result<Array1<f64>> {
    cfg.validate()?;
    if cfg.coefficients.len() != 1 {
        return Err(Error::InvalidArgument(
            "two-class model expects exactly one coefficient row".into(),
        ));
    }
    let active = cfg.active_zero_based();
    let coeffs = &cfg.coefficients[0];
    Ok(Array1::from_iter((0..x.n_instances()).map(|i| {
        let lin: f64 = active
            .iter()
            .zip(coeffs)
            .map(|(&j, &c)| c * x.values[[i, j]])
            .sum();
        1.0 / (1.0 + (-lin).exp())
    })))
}

/// Class probabilities of the three-class log-ratio model, one row
/// `(p1, p2, p3)` per instance; class 3 is the reference.
pub fn multinomial_probabilities(
    x: &FeatureMatrix<f64>,
    cfg: &SyntheticConfig,
) -> Result<Array2<f64>> {
    cfg.validate()?;
    if cfg.coefficients.len() != 2 {
        return Err(Error::InvalidArgument(
            "three-class model expects exactly two coefficient rows".into(),
        ));
    }
    let active = cfg.active_zero_based();
    let mut probs = Array2::<f64>::zeros((x.n_instances(), 3));
    for i in 0..x.n_instances() {
        let ratio = |row: &[f64]| -> f64 {
            let lin: f64 = active
                .iter()
                .zip(row)
                .map(|(&j, &c)| c * x.values[[i, j]])
                .sum();
            lin.exp()
        };
        let r1 = ratio(&cfg.coefficients[0]);
        let r2 = ratio(&cfg.coefficients[1]);
        let p3 = 1.0 / (1.0 + r1 + r2);
        probs[[i, 0]] = r1 * p3;
        probs[[i, 1]] = r2 * p3;
        probs[[i, 2]] = p3;
    }
    Ok(probs)
}

/// Bernoulli draw of the two-class dummy response.
pub fn gen_binomial_response<R: Rng>(
    x: &FeatureMatrix<f64>,
    cfg: &SyntheticConfig,
    rng: &mut R,
) -> Result<EncodedResponse<f64>> {
    let probs = binomial_probabilities(x, cfg)?;
    let column: Vec<f64> = probs
        .iter()
        .map(|&p| if rng.random::<f64>() < p { 1.0 } else { 0.0 })
        .collect();
    let n = column.len();
    Ok(EncodedResponse {
        matrix: Array2::from_shape_vec((n, 1), column).expect("shape"),
        classes: vec!["1".to_string(), "0".to_string()],
        scheme: EncodingScheme::BinomialDummy,
    })
}

/// Categorical draw of the three-class response, dummy-encoded with the
/// first class as the all-zero reference (its indicator column is the one
/// removed from the full three-column encoding).
pub fn gen_multinomial_response<R: Rng>(
    x: &FeatureMatrix<f64>,
    cfg: &SyntheticConfig,
    rng: &mut R,
) -> Result<EncodedResponse<f64>> {
    let probs = multinomial_probabilities(x, cfg)?;
    let n = x.n_instances();
    let mut matrix = Array2::<f64>::zeros((n, 2));
    for i in 0..n {
        let u: f64 = rng.random();
        if u < probs[[i, 0]] {
            // class 1: reference, all-zero row
        } else if u < probs[[i, 0]] + probs[[i, 1]] {
            matrix[[i, 0]] = 1.0; // class 2
        } else {
            matrix[[i, 1]] = 1.0; // class 3
        }
    }
    Ok(EncodedResponse {
        matrix,
        classes: vec!["2".to_string(), "3".to_string(), "1".to_string()],
        scheme: EncodingScheme::CMinusOneDummy,
    })
}

/// Outcome of a batch of recovery trials.
#[derive(Debug, Clone)]
pub struct RecoveryOutcome {
    pub successes: usize,
    pub trials: usize,
    /// Selected 0-based feature sets per trial, in trial order (empty when
    /// a trial's selection failed outright).
    pub selections: Vec<Vec<usize>>,
}

impl RecoveryOutcome {
    /// Trial indices that did not recover the active set.
    pub fn failed_trials(&self, cfg: &SyntheticConfig) -> Vec<usize> {
        let target = target_set(cfg);
        self.selections
            .iter()
            .enumerate()
            .filter(|(_, sel)| !selection_matches(sel, &target))
            .map(|(i, _)| i)
            .collect()
    }
}

fn target_set(cfg: &SyntheticConfig) -> Vec<usize> {
    let mut t = cfg.active_zero_based();
    t.sort_unstable();
    t
}

fn selection_matches(selection: &[usize], target: &[usize]) -> bool {
    let mut s = selection.to_vec();
    s.sort_unstable();
    s == target
}

/// Run the full batch of recovery trials: per trial, draw features and a
/// response on its own random stream, select `|active|` features with the
/// given method, and count a success when the selected set equals the
/// active set regardless of order. The discretizing method bins features
/// at the mean and one standard deviation (four bins).
pub fn run_recovery_trials(cfg: &SyntheticConfig, method: SelectMethod) -> Result<RecoveryOutcome> {
    cfg.validate()?;
    let t = cfg.active.len();
    let target = target_set(cfg);
    let selections: Vec<Vec<usize>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let x = match gen_features(cfg, &mut rng) {
                Ok(x) => x,
                Err(_) => return Vec::new(),
            };
            let response = match cfg.coefficients.len() {
                1 => gen_binomial_response(&x, cfg, &mut rng),
                _ => gen_multinomial_response(&x, cfg, &mut rng),
            };
            let Ok(y) = response else {
                return Vec::new();
            };
            select_by_method(
                &x,
                &y,
                t,
                method,
                DiscretizeScheme::MeanStd4,
                &SelectOptions::default(),
            )
            .map(|r| r.selected_indices())
            .unwrap_or_default()
        })
        .collect();
    let successes = selections
        .iter()
        .filter(|sel| selection_matches(sel, &target))
        .count();
    Ok(RecoveryOutcome {
        successes,
        trials: cfg.trials,
        selections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn small_cfg() -> SyntheticConfig {
        SyntheticConfig {
            n_instances: 80,
            n_features: 12,
            active: vec![2, 5, 9],
            coefficients: vec![vec![-2.0, -3.0, 4.0]],
            seed: 99,
            trials: 4,
        }
    }

    #[test]
    fn feature_draw_has_requested_shape() {
        let cfg = SyntheticConfig::binomial_default(7);
        let mut rng = trial_rng(cfg.seed, 0);
        let x = gen_features(&cfg, &mut rng).unwrap();
        assert_eq!(x.n_instances(), 600);
        assert_eq!(x.n_features(), 100);
    }

    #[test]
    fn same_stream_gives_identical_draws() {
        let cfg = small_cfg();
        let a = gen_features(&cfg, &mut trial_rng(cfg.seed, 3)).unwrap();
        let b = gen_features(&cfg, &mut trial_rng(cfg.seed, 3)).unwrap();
        assert_eq!(a.values, b.values);
        let c = gen_features(&cfg, &mut trial_rng(cfg.seed, 4)).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn rejects_more_features_than_instances() {
        let mut cfg = small_cfg();
        cfg.n_instances = 10;
        assert!(gen_features(&cfg, &mut trial_rng(1, 0)).is_err());
    }

    #[test]
    fn sampled_covariance_is_positive_definite() {
        let cfg = small_cfg();
        for trial in 0..4 {
            let model = sample_feature_model(&cfg, &mut trial_rng(cfg.seed, trial));
            let cov = model.covariance();
            assert!(crate::oracle::solve::cholesky(&cov).is_ok());
        }
    }

    #[test]
    fn sample_covariance_tracks_model_covariance() {
        // Large draw, few features: the empirical covariance must sit
        // within three standard errors of the model covariance entrywise.
        let cfg = SyntheticConfig {
            n_instances: 5000,
            n_features: 5,
            active: vec![1],
            coefficients: vec![vec![1.0]],
            seed: 2024,
            trials: 1,
        };
        let mut rng = trial_rng(cfg.seed, 0);
        let model = sample_feature_model(&cfg, &mut rng);
        let x = draw_features(&model, cfg.n_instances, &mut rng);
        let cov = model.covariance();
        let n = cfg.n_instances as f64;
        let means: Vec<f64> = (0..5).map(|j| x.column(j).mean().unwrap()).collect();
        for a in 0..5 {
            for b in 0..5 {
                let mut s = 0.0;
                for i in 0..cfg.n_instances {
                    s += (x[[i, a]] - means[a]) * (x[[i, b]] - means[b]);
                }
                let sample = s / (n - 1.0);
                let se = ((cov[[a, a]] * cov[[b, b]] + cov[[a, b]] * cov[[a, b]]) / n).sqrt();
                assert!(
                    (sample - cov[[a, b]]).abs() <= 3.0 * se,
                    "entry ({a},{b}): sample {sample} vs model {} (se {se})",
                    cov[[a, b]]
                );
            }
        }
    }

    #[test]
    fn logistic_probability_values() {
        // Hand-checkable points of the printed logistic model.
        let cfg = SyntheticConfig {
            n_instances: 3,
            n_features: 16,
            active: vec![5, 10, 15],
            coefficients: vec![vec![-2.0, -3.0, 4.0]],
            seed: 0,
            trials: 1,
        };
        let mut values = Array2::<f64>::zeros((3, 16));
        values[[1, 4]] = 1.0; // x5 = 1 on the second instance
        values[[2, 4]] = 9.0;
        values[[2, 14]] = 9.0; // strong positive drive on the third
        let x = FeatureMatrix::from_numeric(values).unwrap();
        let p = binomial_probabilities(&x, &cfg).unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 1.0 / (1.0 + 2.0f64.exp()), epsilon = 1e-12);
        assert!(p[2] > 0.9999999);
    }

    #[test]
    fn three_class_probability_values() {
        let cfg = SyntheticConfig {
            n_instances: 2,
            n_features: 16,
            active: vec![5, 10, 15],
            coefficients: vec![vec![-1.0, -1.0, 1.0], vec![1.0, -1.0, -1.0]],
            seed: 0,
            trials: 1,
        };
        let mut values = Array2::<f64>::zeros((2, 16));
        values[[1, 4]] = 1.0; // x5 = 1
        let x = FeatureMatrix::from_numeric(values).unwrap();
        let p = multinomial_probabilities(&x, &cfg).unwrap();
        assert_abs_diff_eq!(p[[0, 0]], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[[0, 1]], 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[[0, 2]], 1.0 / 3.0, epsilon = 1e-12);
        let p3 = 1.0 / (1.0 + (-1.0f64).exp() + 1.0f64.exp());
        assert_abs_diff_eq!(p[[1, 2]], p3, epsilon = 1e-12);
        for i in 0..2 {
            let row_sum: f64 = (0..3).map(|j| p[[i, j]]).sum();
            assert_abs_diff_eq!(row_sum, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn reference_class_rows_are_zero() {
        let cfg = SyntheticConfig {
            n_instances: 40,
            n_features: 16,
            active: vec![5, 10, 15],
            coefficients: vec![vec![-1.0, -1.0, 1.0], vec![1.0, -1.0, -1.0]],
            seed: 5,
            trials: 1,
        };
        let mut rng = trial_rng(cfg.seed, 0);
        let x = gen_features(
            &SyntheticConfig {
                n_instances: 40,
                ..cfg.clone()
            },
            &mut rng,
        )
        .unwrap();
        let y = gen_multinomial_response(&x, &cfg, &mut rng).unwrap();
        // Every row has at most one 1.
        for i in 0..40 {
            let ones = (0..2).filter(|&j| y.matrix[[i, j]] == 1.0).count();
            assert!(ones <= 1);
        }
        assert_eq!(y.classes.len(), 3);
    }

    #[test]
    fn zero_coefficients_rarely_recover_by_chance() {
        let cfg = SyntheticConfig {
            n_instances: 120,
            n_features: 30,
            active: vec![5, 10, 15],
            coefficients: vec![vec![0.0, 0.0, 0.0]],
            seed: 31,
            trials: 100,
        };
        let outcome = run_recovery_trials(&cfg, SelectMethod::Ols).unwrap();
        assert_eq!(outcome.trials, 100);
        assert!(
            outcome.successes < 20,
            "null model recovered {} times",
            outcome.successes
        );
    }

    #[test]
    fn recovery_trials_are_deterministic() {
        let cfg = SyntheticConfig {
            n_instances: 60,
            n_features: 10,
            active: vec![2, 7],
            coefficients: vec![vec![3.0, -3.0]],
            seed: 77,
            trials: 6,
        };
        let a = run_recovery_trials(&cfg, SelectMethod::Ols).unwrap();
        let b = run_recovery_trials(&cfg, SelectMethod::Ols).unwrap();
        assert_eq!(a.selections, b.selections);
        assert_eq!(a.successes, b.successes);
    }
}
