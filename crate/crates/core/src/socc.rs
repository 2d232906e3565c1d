//! The squared-orthogonal-correlation criteria and the historical
//! error-reduction ratio.
//!
//! For a zero-mean orthogonalised candidate `w` and a zero-mean response
//! vector `y`, the criterion is `(y'w)^2 / (w'w * y'y)`, the squared
//! Pearson correlation between the two. Against an orthogonal response
//! basis it is summed per basis vector, which equals the squared multiple
//! correlation of `w` with the response; for a column-orthogonal candidate
//! block the double sum equals the gain in the sum of squared canonical
//! correlations.

use ndarray::{Array1, Array2};
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{self, CenteredMatrix, OrthoBasis};
use crate::Scalar;

/// Which criterion produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionKind {
    /// Single orthogonalised vector against a single response vector.
    SoccScalar,
    /// Sum over an orthogonal response basis (and, for blocks, over the
    /// block's own columns).
    SoccSum,
    /// Historical error-reduction ratio on the uncentred design matrix.
    Err,
}

/// A criterion value with its provenance and a degeneracy marker.
///
/// Degenerate inputs (zero-norm orthogonalised candidates) score zero
/// rather than erroring: a feature fully explained by the already-selected
/// features carries no additional criterion value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionValue<T> {
    pub value: T,
    pub kind: CriterionKind,
    pub degenerate: bool,
}

impl<T: Scalar> CriterionValue<T> {
    fn degenerate(kind: CriterionKind) -> Self {
        CriterionValue {
            value: T::zero(),
            kind,
            degenerate: true,
        }
    }
}

/// Criterion between a zero-mean orthogonalised vector `w` and a zero-mean
/// response vector: `(y'w)^2 / (w'w * y'y)`.
pub fn socc_vector<T: Scalar>(w: &Array1<T>, y_c: &Array1<T>) -> CriterionValue<T> {
    let ww = w.dot(w);
    let yy = y_c.dot(y_c);
    if ww == T::zero() || yy == T::zero() {
        return CriterionValue::degenerate(CriterionKind::SoccScalar);
    }
    let cross = y_c.dot(w);
    CriterionValue {
        value: (cross * cross) / (ww * yy),
        kind: CriterionKind::SoccScalar,
        degenerate: false,
    }
}

/// Criterion between a zero-mean orthogonalised vector and an orthogonal
/// response basis: the per-basis-vector sum, equal to the squared multiple
/// correlation of `w` with the span of the basis.
pub fn socc_matrix<T: Scalar>(w: &Array1<T>, response_basis: &OrthoBasis<T>) -> CriterionValue<T> {
    let ww = w.dot(w);
    if ww == T::zero() {
        return CriterionValue::degenerate(CriterionKind::SoccSum);
    }
    let mut total = T::zero();
    for (v, &vv) in response_basis
        .vectors()
        .iter()
        .zip(response_basis.sq_norms())
    {
        let cross = v.dot(w);
        total = total + (cross * cross) / (ww * vv);
    }
    CriterionValue {
        value: total,
        kind: CriterionKind::SoccSum,
        degenerate: false,
    }
}

/// Criterion for a column-orthogonal block: the double sum over block
/// columns and response basis vectors. Zero-norm block columns are skipped.
pub fn socc_block<T: Scalar>(
    columns: &[Array1<T>],
    response_basis: &OrthoBasis<T>,
) -> CriterionValue<T> {
    let mut total = T::zero();
    let mut live = false;
    for col in columns {
        let c = socc_matrix(col, response_basis);
        if !c.degenerate {
            live = true;
            total = total + c.value;
        }
    }
    CriterionValue {
        value: total,
        kind: CriterionKind::SoccSum,
        degenerate: !live,
    }
}

/// Historical error-reduction ratios over the uncentred design matrix
/// `(1, X)`, one value per column including the leading constant term.
///
/// Each value is `(y'w_i)^2 / (w_i'w_i * y'y)` where the `w_i` come from the
/// unnormalised reduced QR of `(1, X)`. Rank-deficient columns contribute a
/// zero, flagged degenerate.
pub fn err_traditional<T: Scalar>(x: &Array2<T>, y: &Array1<T>) -> Result<Vec<CriterionValue<T>>> {
    let n_rows = x.nrows();
    if y.len() != n_rows {
        return Err(crate::Error::InvalidArgument(format!(
            "response length {} does not match {} rows",
            y.len(),
            n_rows
        )));
    }
    let ones = Array1::from_elem(n_rows, T::one());
    let columns = std::iter::once(ones).chain(x.columns().into_iter().map(|c| c.to_owned()));
    let basis = linalg::gram_schmidt_columns(columns);
    let yy = y.dot(y);
    let mut values = vec![CriterionValue::degenerate(CriterionKind::Err); x.ncols() + 1];
    let mut basis_iter = basis.vectors().iter().zip(basis.sq_norms());
    for (idx, slot) in values.iter_mut().enumerate() {
        if basis.dropped.contains(&idx) {
            continue;
        }
        let (w, &ww) = basis_iter.next().expect("basis aligned with columns");
        let cross = y.dot(w);
        *slot = CriterionValue {
            value: if yy > T::zero() {
                (cross * cross) / (ww * yy)
            } else {
                T::zero()
            },
            kind: CriterionKind::Err,
            degenerate: false,
        };
    }
    Ok(values)
}

/// Squared multiple correlation of a centred matrix with a zero-mean
/// response vector, computed as the sum of the per-basis-vector criteria
/// after orthogonalising the matrix. Dropped columns contribute zero.
pub fn multiple_correlation_sq_via_socc<T: Scalar>(x_c: &CenteredMatrix<T>, y_c: &Array1<T>) -> T {
    let basis = linalg::gram_schmidt_self(x_c);
    basis
        .vectors()
        .iter()
        .map(|w| socc_vector(w, y_c).value)
        .sum()
}

/// Sum of squared canonical correlations between two matrices, computed as
/// the double sum of criteria over both orthogonal bases.
pub fn canonical_sq_sum_via_socc<T: Scalar>(x_c: &CenteredMatrix<T>, y_c: &CenteredMatrix<T>) -> T {
    let wx = linalg::gram_schmidt_self(x_c);
    let vy = linalg::gram_schmidt_self(y_c);
    wx.vectors()
        .iter()
        .map(|w| socc_matrix(w, &vy).value)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{center_columns, center_vector, gram_schmidt_self, pearson};
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_centered(rng: &mut ChaCha12Rng, n: usize) -> Array1<f64> {
        let v = Array1::from_iter((0..n).map(|_| rng.random_range(-1.0..1.0)));
        center_vector(&v).0
    }

    #[test]
    fn self_correlation_is_one() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let w = random_centered(&mut rng, 9);
        let c = socc_vector(&w, &w);
        assert!(!c.degenerate);
        assert_abs_diff_eq!(c.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn orthogonal_pair_scores_zero() {
        let w = array![1.0, -1.0, 0.0, 0.0];
        let y = array![0.0, 0.0, 1.0, -1.0];
        assert_abs_diff_eq!(socc_vector(&w, &y).value, 0.0, epsilon = 1e-30);
    }

    #[test]
    fn zero_norm_candidate_is_degenerate_zero() {
        let w = Array1::<f64>::zeros(5);
        let y = array![1.0, -1.0, 0.0, 0.0, 0.0];
        let c = socc_vector(&w, &y);
        assert!(c.degenerate);
        assert_eq!(c.value, 0.0);
    }

    #[test]
    fn matches_squared_pearson_on_random_vectors() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..50 {
            let w = random_centered(&mut rng, 10);
            let y = random_centered(&mut rng, 10);
            let r = pearson(&w, &y).unwrap();
            assert_abs_diff_eq!(socc_vector(&w, &y).value, r * r, epsilon = 1e-12);
        }
    }

    #[test]
    fn scale_invariance() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let w = random_centered(&mut rng, 8);
        let y = random_centered(&mut rng, 8);
        let base = socc_vector(&w, &y).value;
        let ws = w.mapv(|v| v * -37.5);
        let ys = y.mapv(|v| v * 0.004);
        assert_abs_diff_eq!(socc_vector(&ws, &ys).value, base, epsilon = 1e-12);
    }

    #[test]
    fn basis_member_scores_one_against_its_basis() {
        let m = array![
            [1.0, 0.4],
            [0.0, 2.2],
            [-1.0, 0.9],
            [2.0, -1.5],
            [-2.0, -2.0],
        ];
        let basis = gram_schmidt_self(&center_columns(&m));
        let c = socc_matrix(&basis.vectors()[0].clone(), &basis);
        assert_abs_diff_eq!(c.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn iris_first_step_values() {
        let x = array![
            [5.1, 3.5, 1.4, 0.2],
            [4.9, 3.0, 1.4, 0.2],
            [7.0, 3.2, 4.7, 1.4],
            [6.4, 3.2, 4.5, 1.5],
            [6.3, 3.3, 6.0, 2.5],
            [5.8, 2.7, 5.1, 1.9],
            [7.1, 3.0, 5.9, 2.1],
        ];
        let y = array![
            [1.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [0.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
            [0.0, 0.0],
        ];
        let xc = center_columns(&x);
        let vc = gram_schmidt_self(&center_columns(&y));
        let expected = [0.7628, 0.2264, 0.9779, 0.9604];
        for (j, &e) in expected.iter().enumerate() {
            let c = socc_matrix(&xc.column(j), &vc);
            assert_abs_diff_eq!(c.value, e, epsilon = 5e-5);
        }
    }

    #[test]
    fn width_one_block_reduces_to_socc_matrix() {
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let y = center_columns(&Array2::from_shape_fn((8, 2), |_| rng.random_range(-1.0..1.0)));
        let vc = gram_schmidt_self(&y);
        let w = random_centered(&mut rng, 8);
        let via_block = socc_block(std::slice::from_ref(&w), &vc);
        let via_matrix = socc_matrix(&w, &vc);
        assert_abs_diff_eq!(via_block.value, via_matrix.value, epsilon = 1e-15);
    }

    #[test]
    fn block_spanning_response_scores_response_width() {
        let y = array![
            [1.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [0.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
        ];
        let yc = center_columns(&y);
        let vc = gram_schmidt_self(&yc);
        let cols: Vec<Array1<f64>> = vc.vectors().to_vec();
        let c = socc_block(&cols, &vc);
        assert_abs_diff_eq!(c.value, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn err_with_intercept_only() {
        let x = Array2::<f64>::zeros((5, 0));
        let y = array![1.0, 2.0, 0.5, -1.0, 3.0];
        let errs = err_traditional(&x, &y).unwrap();
        assert_eq!(errs.len(), 1);
        let s: f64 = y.sum();
        let expected = s * s / (5.0 * y.dot(&y));
        assert_abs_diff_eq!(errs[0].value, expected, epsilon = 1e-12);
    }

    #[test]
    fn err_zero_when_response_orthogonal_to_design() {
        // Columns of (1, X) span constant and linear trends; y alternating
        // around a pattern orthogonal to both.
        let x: Array2<f64> = array![[1.0], [2.0], [3.0], [4.0]];
        // y orthogonal to 1 and to x: solve by construction.
        let y = array![1.0, -1.0, -1.0, 1.0];
        let errs = err_traditional(&x, &y).unwrap();
        for e in &errs {
            assert!(e.value.abs() <= 1e-20);
        }
    }

    #[test]
    fn err_values_sum_to_explained_ratio() {
        // Independent check via explicit least squares on (1, X).
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let x = Array2::from_shape_fn((6, 2), |_| rng.random_range(-1.0..1.0));
        let y = Array1::from_iter((0..6).map(|_| rng.random_range(-1.0..1.0)));
        let errs = err_traditional(&x, &y).unwrap();
        let total: f64 = errs.iter().map(|e| e.value).sum();

        // Full least-squares residual through the oracle solver.
        let mut design = Array2::<f64>::ones((6, 3));
        design.slice_mut(ndarray::s![.., 1..]).assign(&x);
        let gram = design.t().dot(&design);
        let rhs = design.t().dot(&y);
        let beta = crate::oracle::solve::cholesky_solve(&gram, &rhs).unwrap();
        let resid = &y - &design.dot(&beta);
        let expected = 1.0 - resid.dot(&resid) / y.dot(&y);
        assert_abs_diff_eq!(total, expected, epsilon = 1e-10);
    }

    #[test]
    fn single_feature_multiple_correlation_is_squared_pearson() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let x = Array2::from_shape_fn((12, 1), |_| rng.random_range(-1.0..1.0));
        let y = Array1::from_iter((0..12).map(|_| rng.random_range(-1.0..1.0)));
        let xc = center_columns(&x);
        let (y_c, _) = center_vector(&y);
        let r = pearson(&x.column(0).to_owned(), &y).unwrap();
        assert_abs_diff_eq!(
            multiple_correlation_sq_via_socc(&xc, &y_c),
            r * r,
            epsilon = 1e-12
        );
    }

    #[test]
    fn response_in_span_gives_one() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let x = Array2::from_shape_fn((10, 3), |_| rng.random_range(-1.0..1.0));
        let xc = center_columns(&x);
        let y_c = xc.column(0) + xc.column(2).mapv(|v| 2.0 * v);
        assert_abs_diff_eq!(
            multiple_correlation_sq_via_socc(&xc, &y_c),
            1.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn iris_selected_triple_canonical_sum() {
        // Petal length, petal width, sepal width against the dummy response.
        let x: Array2<f64> = array![
            [1.4, 0.2, 3.5],
            [1.4, 0.2, 3.0],
            [4.7, 1.4, 3.2],
            [4.5, 1.5, 3.2],
            [6.0, 2.5, 3.3],
            [5.1, 1.9, 2.7],
            [5.9, 2.1, 3.0],
        ];
        let y: Array2<f64> = array![
            [1.0, 0.0],
            [1.0, 0.0],
            [0.0, 1.0],
            [0.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
            [0.0, 0.0],
        ];
        let total = canonical_sq_sum_via_socc(&center_columns(&x), &center_columns(&y));
        assert_abs_diff_eq!(total, 1.5531, epsilon = 1e-4);
    }

    #[test]
    fn canonical_sum_with_single_column_reduces_to_multiple_correlation() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let x = Array2::from_shape_fn((11, 3), |_| rng.random_range(-1.0..1.0));
        let y = Array2::from_shape_fn((11, 1), |_| rng.random_range(-1.0..1.0));
        let xc = center_columns(&x);
        let yc = center_columns(&y);
        let via_mcc = multiple_correlation_sq_via_socc(&xc, &yc.column(0));
        assert_abs_diff_eq!(canonical_sq_sum_via_socc(&xc, &yc), via_mcc, epsilon = 1e-12);
    }
}
