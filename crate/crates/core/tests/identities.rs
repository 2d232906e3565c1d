//! Randomized certification of the criterion identities: the
//! orthogonalised fast path and the definition-based reference
//! implementations must agree to tight tolerances on arbitrary instances.

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use socc_core::dataset::encode_response_multinomial;
use socc_core::linalg::{center_columns, center_vector, gram_schmidt_self};
use socc_core::{oracle, socc};

fn random_matrix(rng: &mut ChaCha12Rng, rows: usize, cols: usize) -> Array2<f64> {
    Array2::from_shape_fn((rows, cols), |_| rng.random_range(-2.0..2.0))
}

fn random_vector(rng: &mut ChaCha12Rng, rows: usize) -> Array1<f64> {
    Array1::from_iter((0..rows).map(|_| rng.random_range(-2.0..2.0)))
}

#[test]
fn socc_sum_equals_normal_equation_multiple_correlation() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n_rows = rng.random_range(8..=50);
        let n_cols = rng.random_range(1..=10.min(n_rows - 2));
        let x = random_matrix(&mut rng, n_rows, n_cols);
        let y = random_vector(&mut rng, n_rows);
        let xc = center_columns(&x);
        let (y_c, _) = center_vector(&y);
        let via_socc = socc::multiple_correlation_sq_via_socc(&xc, &y_c);
        let via_def = oracle::multiple_correlation_definition(&xc, &y_c, false).unwrap();
        worst = worst.max((via_socc - via_def).abs());
        assert!(
            (via_socc - via_def).abs() <= 1e-8,
            "trial {trial}: {via_socc} vs {via_def}"
        );
        assert!((0.0..=1.0 + 1e-10).contains(&via_socc));
    }
    println!("multiple-correlation identity, worst discrepancy {worst:.3e}");
}

#[test]
fn socc_sum_survives_duplicate_columns_with_pseudo_solve() {
    let mut rng = ChaCha12Rng::seed_from_u64(102);
    for _ in 0..20 {
        let n_rows = rng.random_range(10..=30);
        let base = random_matrix(&mut rng, n_rows, 3);
        let mut x = Array2::<f64>::zeros((n_rows, 4));
        for j in 0..3 {
            x.column_mut(j).assign(&base.column(j));
        }
        // Fourth column duplicates the first: the Gram matrix is singular.
        x.column_mut(3).assign(&base.column(0));
        let y = random_vector(&mut rng, n_rows);
        let xc = center_columns(&x);
        let (y_c, _) = center_vector(&y);
        let via_socc = socc::multiple_correlation_sq_via_socc(&xc, &y_c);
        assert!(oracle::multiple_correlation_definition(&xc, &y_c, false).is_err());
        let via_pseudo = oracle::multiple_correlation_definition(&xc, &y_c, true).unwrap();
        assert!((via_socc - via_pseudo).abs() <= 1e-8);
    }
}

#[test]
fn socc_double_sum_equals_cca_eigenvalue_sum() {
    let mut rng = ChaCha12Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n_rows = rng.random_range(12..=40);
        let n_cols = rng.random_range(1..=6);
        let m_cols = rng.random_range(1..=4);
        let x = random_matrix(&mut rng, n_rows, n_cols);
        let y = random_matrix(&mut rng, n_rows, m_cols);
        let xc = center_columns(&x);
        let yc = center_columns(&y);
        let via_socc = socc::canonical_sq_sum_via_socc(&xc, &yc);
        let cca = oracle::cca_eigen(&xc, &yc).unwrap();
        let via_eigen = cca.sum();
        worst = worst.max((via_socc - via_eigen).abs());
        assert!(
            (via_socc - via_eigen).abs() <= 1e-8,
            "trial {trial}: {via_socc} vs {via_eigen}"
        );
        assert!(via_socc <= n_cols.min(m_cols) as f64 + 1e-9);
        assert!(cca.max_eigen_residual() <= 1e-8);
    }
    println!("canonical-sum identity, worst discrepancy {worst:.3e}");
}

#[test]
fn fisher_criteria_match_transformed_canonical_correlations() {
    let mut rng = ChaCha12Rng::seed_from_u64(104);
    let class_names = ["a", "b", "c", "d"];
    let mut checked = 0;
    for _ in 0..60 {
        let n_rows = rng.random_range(18..=40);
        let n_cols = rng.random_range(1..=5);
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
        let values = random_matrix(&mut rng, n_rows, n_cols);
        let lda = oracle::lda_fisher(&values, &labels).unwrap();
        let y = encode_response_multinomial::<f64>(&labels).unwrap();
        let cca = oracle::cca_eigen(&center_columns(&values), &center_columns(&y.matrix)).unwrap();
        // Multiset check: both lists sorted descending, compared pairwise.
        for (k, &r2) in cca.eigenvalues.iter().enumerate() {
            let mapped = r2 / (1.0 - r2);
            let j = lda.fisher_criteria[k];
            assert!(
                (j - mapped).abs() <= 1e-6 * j.abs().max(1.0),
                "position {k}: {j} vs {mapped}"
            );
        }
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} usable grouped instances");
}

#[test]
fn intercept_elimination_two_routes_agree() {
    let mut rng = ChaCha12Rng::seed_from_u64(105);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n_rows = rng.random_range(10..=40);
        let n_cols = rng.random_range(1..=6.min(n_rows - 3));
        let x = random_matrix(&mut rng, n_rows, n_cols);
        let y = random_vector(&mut rng, n_rows);
        let check = oracle::ols_intercept_check(&x, &y).unwrap();
        worst = worst.max(check.max_discrepancy);
        assert!(check.max_discrepancy <= 1e-9);
    }
    println!("intercept elimination, worst discrepancy {worst:.3e}");
}

#[test]
fn traditional_err_sums_to_explained_variance_ratio() {
    let mut rng = ChaCha12Rng::seed_from_u64(106);
    for _ in 0..50 {
        let n_rows = rng.random_range(8..=30);
        let n_cols = rng.random_range(1..=5.min(n_rows - 3));
        let x = random_matrix(&mut rng, n_rows, n_cols);
        let y = random_vector(&mut rng, n_rows);
        let errs = socc::err_traditional(&x, &y).unwrap();
        let total: f64 = errs.iter().map(|e| e.value).sum();
        // Residual route through the intercept check's coefficients.
        let fit = oracle::ols_intercept_check(&x, &y).unwrap();
        let mut resid = y.clone();
        for i in 0..n_rows {
            let mut pred = fit.intercept;
            for j in 0..n_cols {
                pred += fit.coefficients[j] * x[[i, j]];
            }
            resid[i] -= pred;
        }
        let expected = 1.0 - resid.dot(&resid) / y.dot(&y);
        assert!(
            (total - expected).abs() <= 1e-10,
            "err sum {total} vs regression ratio {expected}"
        );
    }
}

#[test]
fn criterion_bounds_hold_on_random_inputs() {
    let mut rng = ChaCha12Rng::seed_from_u64(107);
    for _ in 0..100 {
        let n_rows = rng.random_range(6..=30);
        let m_cols = rng.random_range(1..=4);
        let y = random_matrix(&mut rng, n_rows, m_cols);
        let vc = gram_schmidt_self(&center_columns(&y));
        if vc.is_empty() {
            continue;
        }
        let w = {
            let (c, _) = center_vector(&random_vector(&mut rng, n_rows));
            c
        };
        let single = socc::socc_vector(&w, &vc.vectors()[0].clone());
        assert!((0.0..=1.0 + 1e-12).contains(&single.value));
        let summed = socc::socc_matrix(&w, &vc);
        assert!(summed.value >= 0.0 && summed.value <= m_cols as f64 + 1e-12);
    }
}
