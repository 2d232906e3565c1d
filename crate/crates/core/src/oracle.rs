//! Definition-based reference implementations.
//!
//! Everything here computes the selection criteria from their textbook
//! definitions (normal equations, the correlation-matrix eigenproblem,
//! scatter matrices) rather than through the orthogonalised fast path.
//! The two routes certify each other in the test suites, and the greedy
//! variant doubles as the timing baseline for the fast path.

use ndarray::{Array1, Array2, ShapeBuilder};
use rayon::prelude::*;
use std::time::Instant;

use crate::dataset::{EncodedResponse, FeatureMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, CenteredMatrix};
use crate::selector::{SelectMethod, SelectionReport, SelectionStep};
use crate::Scalar;

/// Small dense solvers the reference implementations are built on.
pub(crate) mod solve {
    use super::*;

    /// Relative pivot floor for declaring a symmetric matrix singular.
    const PIVOT_TOL: f64 = 1e-12;

    /// Lower-triangular Cholesky factor of a symmetric positive-definite
    /// matrix. On failure returns the pivot (column) index at which the
    /// factorization broke down.
    pub(crate) fn cholesky<T: Scalar>(a: &Array2<T>) -> std::result::Result<Array2<T>, usize> {
        let n = a.nrows();
        let tol = T::from_f64(PIVOT_TOL).unwrap();
        let mut l = Array2::<T>::zeros((n, n));
        for j in 0..n {
            let mut d = a[[j, j]];
            for k in 0..j {
                d = d - l[[j, k]] * l[[j, k]];
            }
            // Pivot floor relative to the original diagonal keeps the test
            // scale-free; NaN pivots also land in the Err arm.
            let floor = tol * a[[j, j]].abs();
            if d.partial_cmp(&floor) != Some(std::cmp::Ordering::Greater) {
                return Err(j);
            }
            let dj = d.sqrt();
            l[[j, j]] = dj;
            for i in (j + 1)..n {
                let mut s = a[[i, j]];
                for k in 0..j {
                    s = s - l[[i, k]] * l[[j, k]];
                }
                l[[i, j]] = s / dj;
            }
        }
        Ok(l)
    }

    /// Solve `L x = b` for lower-triangular `L`.
    pub(crate) fn forward_subst<T: Scalar>(l: &Array2<T>, b: &Array1<T>) -> Array1<T> {
        let n = b.len();
        let mut x = Array1::<T>::zeros(n);
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s = s - l[[i, k]] * x[k];
            }
            x[i] = s / l[[i, i]];
        }
        x
    }

    /// Solve `L' x = b` for lower-triangular `L`.
    pub(crate) fn back_subst_transposed<T: Scalar>(l: &Array2<T>, b: &Array1<T>) -> Array1<T> {
        let n = b.len();
        let mut x = Array1::<T>::zeros(n);
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in (i + 1)..n {
                s = s - l[[k, i]] * x[k];
            }
            x[i] = s / l[[i, i]];
        }
        x
    }

    /// Solve the SPD system `a x = b` through a Cholesky factorization.
    pub(crate) fn cholesky_solve<T: Scalar>(a: &Array2<T>, b: &Array1<T>) -> Result<Array1<T>> {
        let l = cholesky(a).map_err(|j| {
            Error::Numerical(format!("matrix is singular (pivot {j} collapsed)"))
        })?;
        Ok(back_subst_transposed(&l, &forward_subst(&l, b)))
    }

    /// Column-wise `L^-1 B` for lower-triangular `L`.
    pub(crate) fn forward_subst_matrix<T: Scalar>(l: &Array2<T>, b: &Array2<T>) -> Array2<T> {
        let mut out = Array2::<T>::zeros(b.dim());
        for (j, col) in b.columns().into_iter().enumerate() {
            out.column_mut(j).assign(&forward_subst(l, &col.to_owned()));
        }
        out
    }

    /// Eigendecomposition of a symmetric matrix by the cyclic Jacobi
    /// rotation method: returns the eigenvalues and the matching
    /// eigenvector columns (unsorted).
    pub(crate) fn jacobi_eigen<T: Scalar>(a: &Array2<T>) -> (Vec<T>, Array2<T>) {
        let n = a.nrows();
        let mut m = a.clone();
        let mut v = Array2::<T>::eye(n);
        if n <= 1 {
            return ((0..n).map(|i| m[[i, i]]).collect(), v);
        }
        let frob = a.iter().map(|&x| x * x).sum::<T>().sqrt();
        let stop = T::from_f64(1e-15).unwrap() * frob.max(T::one());
        for _sweep in 0..100 {
            let mut off = T::zero();
            for i in 0..n {
                for j in (i + 1)..n {
                    off = off.max(m[[i, j]].abs());
                }
            }
            if off <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[[p, q]];
                    if apq.abs() <= stop {
                        continue;
                    }
                    let theta = (m[[q, q]] - m[[p, p]]) / (apq + apq);
                    let t = {
                        let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                    };
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[[k, p]];
                        let mkq = m[[k, q]];
                        m[[k, p]] = c * mkp - s * mkq;
                        m[[k, q]] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[[p, k]];
                        let mqk = m[[q, k]];
                        m[[p, k]] = c * mpk - s * mqk;
                        m[[q, k]] = s * mpk + c * mqk;
                    }
                    for k in 0..n {
                        let vkp = v[[k, p]];
                        let vkq = v[[k, q]];
                        v[[k, p]] = c * vkp - s * vkq;
                        v[[k, q]] = s * vkp + c * vkq;
                    }
                }
            }
        }
        ((0..n).map(|i| m[[i, i]]).collect(), v)
    }

    /// Minimum-norm solution of a symmetric (possibly singular) system via
    /// the eigendecomposition, discarding relatively tiny eigenvalues.
    pub(crate) fn pseudo_solve_sym<T: Scalar>(a: &Array2<T>, b: &Array1<T>) -> Array1<T> {
        let (vals, vecs) = jacobi_eigen(a);
        let scale = vals.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        let cut = T::from_f64(1e-12).unwrap() * scale.max(T::one());
        let mut x = Array1::<T>::zeros(b.len());
        for (k, &lambda) in vals.iter().enumerate() {
            if lambda.abs() <= cut {
                continue;
            }
            let u = vecs.column(k);
            let coef = u.dot(b) / lambda;
            x.scaled_add(coef, &u);
        }
        x
    }
}

/// Squared multiple correlation from the normal equations: solve
/// `(X'X) b = X'y` on the centred data and correlate the fitted values
/// with the response.
///
/// With `allow_pseudo` a singular Gram matrix falls back to the
/// minimum-norm solution; otherwise it is an error.
pub fn multiple_correlation_definition<T: Scalar>(
    x_c: &CenteredMatrix<T>,
    y_c: &Array1<T>,
    allow_pseudo: bool,
) -> Result<T> {
    if y_c.dot(y_c) == T::zero() {
        return Err(Error::Numerical(
            "response has zero variance; multiple correlation undefined".into(),
        ));
    }
    let k = x_c.n_cols();
    let mut gram = Array2::<T>::zeros((k, k));
    let mut rhs = Array1::<T>::zeros(k);
    for i in 0..k {
        let ci = x_c.values.column(i);
        rhs[i] = ci.dot(y_c);
        for j in i..k {
            let d = ci.dot(&x_c.values.column(j));
            gram[[i, j]] = d;
            gram[[j, i]] = d;
        }
    }
    let beta = match solve::cholesky(&gram) {
        Ok(l) => solve::back_subst_transposed(&l, &solve::forward_subst(&l, &rhs)),
        Err(pivot) if allow_pseudo => {
            let _ = pivot;
            solve::pseudo_solve_sym(&gram, &rhs)
        }
        Err(pivot) => {
            return Err(Error::Numerical(format!(
                "Gram matrix singular at column {pivot}; rerun with the pseudo-solve fallback"
            )))
        }
    };
    let fitted = x_c.values.dot(&beta);
    if fitted.dot(&fitted) == T::zero() {
        return Ok(T::zero());
    }
    let r = linalg::pearson(&fitted, y_c)?;
    Ok(r * r)
}

/// Canonical correlation analysis through the correlation-matrix
/// eigenproblem.
#[derive(Debug, Clone)]
pub struct CcaResult<T> {
    /// Squared canonical correlations, sorted descending and clipped to
    /// `[0, 1]`; at most `min(n, m)` entries.
    pub eigenvalues: Vec<T>,
    /// Number of retained eigenvalues.
    pub count: usize,
    directions: Vec<Array1<T>>,
    product: Array2<T>,
}

impl<T: Scalar> CcaResult<T> {
    /// Sum of the squared canonical correlations.
    pub fn sum(&self) -> T {
        self.eigenvalues.iter().copied().sum()
    }

    /// Largest relative eigen-residual `|M a - lambda a| / |a|` over the
    /// retained pairs, where `M` is the correlation product matrix.
    pub fn max_eigen_residual(&self) -> T {
        let mut worst = T::zero();
        for (a, &lambda) in self.directions.iter().zip(&self.eigenvalues) {
            let mut r = self.product.dot(a);
            r.scaled_add(-lambda, a);
            let norm_a = a.dot(a).sqrt();
            if norm_a > T::zero() {
                worst = worst.max(r.dot(&r).sqrt() / norm_a);
            }
        }
        worst
    }
}

fn correlation_matrix<T: Scalar>(
    a: &Array2<T>,
    b: &Array2<T>,
    label_a: &str,
    label_b: &str,
) -> Result<Array2<T>> {
    let mut out = Array2::<T>::zeros((a.ncols(), b.ncols()));
    for i in 0..a.ncols() {
        for j in 0..b.ncols() {
            let r = linalg::pearson(&a.column(i).to_owned(), &b.column(j).to_owned()).map_err(
                |_| {
                    Error::Numerical(format!(
                        "correlation undefined between {label_a} column {i} and {label_b} column {j} (zero variance)"
                    ))
                },
            )?;
            out[[i, j]] = r;
        }
    }
    Ok(out)
}

/// Solve the canonical-correlation eigenproblem for two centred matrices.
///
/// The correlation matrices are assembled from pairwise sample Pearson
/// coefficients. The non-symmetric product matrix shares its spectrum with
/// a Cholesky-symmetrized form, which is what gets diagonalised; the
/// returned pairs are genuine eigenpairs of the product matrix, which
/// [`CcaResult::max_eigen_residual`] verifies directly.
pub fn cca_eigen<T: Scalar>(
    x_c: &CenteredMatrix<T>,
    y_c: &CenteredMatrix<T>,
) -> Result<CcaResult<T>> {
    let n = x_c.n_cols();
    let m = y_c.n_cols();
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "canonical correlation needs at least one column on each side".into(),
        ));
    }
    let rxx = correlation_matrix(&x_c.values, &x_c.values, "X", "X")?;
    let ryy = correlation_matrix(&y_c.values, &y_c.values, "Y", "Y")?;
    let rxy = correlation_matrix(&x_c.values, &y_c.values, "X", "Y")?;

    let ly = solve::cholesky(&ryy)
        .map_err(|j| Error::Numerical(format!("response correlation matrix singular at column {j}")))?;
    // K = Rxy Ryy^-1 Ryx, symmetric positive semidefinite.
    let ryx = rxy.t().to_owned();
    let z = {
        let p = solve::forward_subst_matrix(&ly, &ryx);
        let mut z = Array2::<T>::zeros((m, n));
        for j in 0..n {
            z.column_mut(j)
                .assign(&solve::back_subst_transposed(&ly, &p.column(j).to_owned()));
        }
        z
    };
    let k = rxy.dot(&z);

    let lx = solve::cholesky(&rxx)
        .map_err(|j| Error::Numerical(format!("feature correlation matrix singular at column {j}")))?;
    // S = Lx^-1 K Lx^-T has the same eigenvalues as Rxx^-1 K.
    let p = solve::forward_subst_matrix(&lx, &k);
    let q = solve::forward_subst_matrix(&lx, &p.t().to_owned());
    let s = (&q + &q.t()).mapv(|v| v / (T::one() + T::one()));

    let (vals, vecs) = solve::jacobi_eigen(&s);
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).expect("real eigenvalues"));
    let count = n.min(m);

    // Product matrix Rxx^-1 K, kept for the residual check.
    let product = {
        let mut out = Array2::<T>::zeros((n, n));
        for j in 0..n {
            out.column_mut(j)
                .assign(&solve::back_subst_transposed(&lx, &p.column(j).to_owned()));
        }
        out
    };

    let mut eigenvalues = Vec::with_capacity(count);
    let mut directions = Vec::with_capacity(count);
    for &idx in order.iter().take(count) {
        eigenvalues.push(vals[idx].max(T::zero()).min(T::one()));
        directions.push(solve::back_subst_transposed(
            &lx,
            &vecs.column(idx).to_owned(),
        ));
    }
    Ok(CcaResult {
        eigenvalues,
        count,
        directions,
        product,
    })
}

/// Linear discriminant analysis summary for one feature subset.
#[derive(Debug, Clone)]
pub struct LdaResult<T> {
    /// Fisher criteria (generalized eigenvalues of the scatter pencil),
    /// sorted descending; at most `c - 1` are nonzero.
    pub fisher_criteria: Vec<T>,
    pub s_w: Array2<T>,
    pub s_b: Array2<T>,
}

/// Within/between-class scatter matrices and Fisher's criteria for the
/// given class labels.
pub fn lda_fisher<T: Scalar>(values: &Array2<T>, labels: &[String]) -> Result<LdaResult<T>> {
    let (n_rows, n_cols) = values.dim();
    if labels.len() != n_rows {
        return Err(Error::InvalidArgument(format!(
            "{} labels for {} rows",
            labels.len(),
            n_rows
        )));
    }
    let mut classes: Vec<&String> = Vec::new();
    for l in labels {
        if !classes.contains(&l) {
            classes.push(l);
        }
    }

    let overall_mean: Vec<T> = (0..n_cols)
        .map(|j| values.column(j).mean().unwrap())
        .collect();
    let mut s_w = Array2::<T>::zeros((n_cols, n_cols));
    let mut s_b = Array2::<T>::zeros((n_cols, n_cols));
    for class in &classes {
        let rows: Vec<usize> = (0..n_rows).filter(|&i| &labels[i] == *class).collect();
        let count = T::from_usize(rows.len()).unwrap();
        let mean: Vec<T> = (0..n_cols)
            .map(|j| rows.iter().map(|&i| values[[i, j]]).sum::<T>() / count)
            .collect();
        for &i in &rows {
            for a in 0..n_cols {
                let da = values[[i, a]] - mean[a];
                for b in a..n_cols {
                    let v = da * (values[[i, b]] - mean[b]);
                    s_w[[a, b]] = s_w[[a, b]] + v;
                    if a != b {
                        s_w[[b, a]] = s_w[[b, a]] + v;
                    }
                }
            }
        }
        for a in 0..n_cols {
            let da = mean[a] - overall_mean[a];
            for b in a..n_cols {
                let v = count * da * (mean[b] - overall_mean[b]);
                s_b[[a, b]] = s_b[[a, b]] + v;
                if a != b {
                    s_b[[b, a]] = s_b[[b, a]] + v;
                }
            }
        }
    }

    let lw = solve::cholesky(&s_w).map_err(|j| {
        Error::Numerical(format!("within-class scatter singular at column {j}"))
    })?;
    let p = solve::forward_subst_matrix(&lw, &s_b);
    let q = solve::forward_subst_matrix(&lw, &p.t().to_owned());
    let s = (&q + &q.t()).mapv(|v| v / (T::one() + T::one()));
    let (mut vals, _) = solve::jacobi_eigen(&s);
    vals.sort_by(|a, b| b.partial_cmp(a).expect("real eigenvalues"));
    let fisher_criteria = vals.into_iter().map(|v| v.max(T::zero())).collect();
    Ok(LdaResult {
        fisher_criteria,
        s_w,
        s_b,
    })
}

enum CentredResponse<'a, T> {
    Single(&'a Array1<T>),
    Multi(&'a CenteredMatrix<T>),
}

/// Criterion of a column subset computed from the definitions. `None`
/// marks a subset whose correlation structure is singular (redundant
/// columns), which the greedy and exhaustive searches skip.
fn subset_score<T: Scalar>(cols: &[Array1<T>], response: &CentredResponse<'_, T>) -> Option<T> {
    let n_rows = cols.first().map_or(0, |c| c.len());
    // Column-major so the per-column dot products below stay contiguous.
    let mut values = Array2::<T>::zeros((n_rows, cols.len()).f());
    for (j, c) in cols.iter().enumerate() {
        values.column_mut(j).assign(c);
    }
    let cm = CenteredMatrix {
        values,
        means: vec![T::zero(); cols.len()],
    };
    match response {
        CentredResponse::Single(y) => multiple_correlation_definition(&cm, y, false).ok(),
        CentredResponse::Multi(ym) => cca_eigen(&cm, ym).map(|r| r.sum()).ok(),
    }
}

/// Greedy selection scored by rebuilding the full definitional criterion
/// for every candidate at every step. The Gram/correlation matrices are
/// recomputed from scratch per candidate; this is the cost baseline the
/// orthogonalised path is benchmarked against.
pub fn definition_greedy_select<T: Scalar>(
    x: &FeatureMatrix<T>,
    y: &EncodedResponse<T>,
    t: usize,
) -> Result<SelectionReport> {
    let n = x.n_features();
    if t < 1 || t > n {
        return Err(Error::InvalidArgument(format!(
            "number of features to select must be between 1 and {n}, got {t}"
        )));
    }
    let run_start = Instant::now();
    let centered = linalg::center_columns(&x.values);
    let columns: Vec<Array1<T>> = (0..n).map(|j| centered.column(j)).collect();
    let y_centered = linalg::center_columns(&y.matrix);
    let y_single = y_centered.column(0);
    let response = if y.width() == 1 {
        CentredResponse::Single(&y_single)
    } else {
        CentredResponse::Multi(&y_centered)
    };

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut selected: Vec<usize> = Vec::new();
    let mut steps = Vec::new();
    let mut step_elapsed_ms = Vec::new();
    let mut dropped: Vec<usize> = Vec::new();
    let mut truncated = false;
    let mut prev_score = T::zero();

    for _step in 0..t {
        let step_start = Instant::now();
        let scored: Vec<Option<(T, usize)>> = remaining
            .par_iter()
            .map(|&cand| {
                let mut cols: Vec<Array1<T>> =
                    selected.iter().map(|&s| columns[s].clone()).collect();
                cols.push(columns[cand].clone());
                subset_score(&cols, &response).map(|s| (s, cand))
            })
            .collect();
        for (slot, &cand) in scored.iter().zip(&remaining) {
            if slot.is_none() && !dropped.contains(&cand) {
                dropped.push(cand);
            }
        }
        let best = scored.into_iter().flatten().reduce(|acc, item| {
            if item.0 > acc.0 {
                item
            } else {
                acc
            }
        });
        let Some((score, winner)) = best else {
            truncated = true;
            break;
        };
        remaining.retain(|&i| i != winner);
        selected.push(winner);
        let gain = (score - prev_score).max(T::zero());
        prev_score = score;
        steps.push(SelectionStep {
            index: winner,
            name: x.names[winner].clone(),
            gain: gain.to_f64().unwrap_or(f64::NAN),
            cumulative: score.to_f64().unwrap_or(f64::NAN),
        });
        step_elapsed_ms.push(step_start.elapsed().as_secs_f64() * 1e3);
    }

    dropped.sort_unstable();
    Ok(SelectionReport {
        method: SelectMethod::Definition,
        steps,
        dropped,
        truncated,
        step_elapsed_ms,
        total_elapsed_ms: run_start.elapsed().as_secs_f64() * 1e3,
    })
}

fn combination_count(n: usize, t: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..t.min(n - t) {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    c
}

/// Exhaustively score every size-`t` column subset and return the best one
/// with its criterion. Ties go to the lexicographically smallest subset;
/// subsets with singular correlation structure are skipped. Guarded to at
/// most 10^6 combinations.
pub fn exhaustive_select<T: Scalar>(
    x: &FeatureMatrix<T>,
    y: &EncodedResponse<T>,
    t: usize,
) -> Result<(Vec<usize>, T)> {
    let n = x.n_features();
    if t < 1 || t > n {
        return Err(Error::InvalidArgument(format!(
            "subset size must be between 1 and {n}, got {t}"
        )));
    }
    let combos = combination_count(n, t);
    if combos > 1_000_000 {
        return Err(Error::GuardExceeded(format!(
            "{combos} subsets of size {t} from {n} features exceeds the 10^6 enumeration guard"
        )));
    }
    let centered = linalg::center_columns(&x.values);
    let columns: Vec<Array1<T>> = (0..n).map(|j| centered.column(j)).collect();
    let y_centered = linalg::center_columns(&y.matrix);
    let y_single = y_centered.column(0);
    let response = if y.width() == 1 {
        CentredResponse::Single(&y_single)
    } else {
        CentredResponse::Multi(&y_centered)
    };

    let mut best: Option<(Vec<usize>, T)> = None;
    let mut indices: Vec<usize> = (0..t).collect();
    loop {
        let cols: Vec<Array1<T>> = indices.iter().map(|&j| columns[j].clone()).collect();
        if let Some(score) = subset_score(&cols, &response) {
            // Strict comparison keeps the lexicographically first subset on
            // ties, since enumeration is lexicographic.
            let better = match &best {
                None => true,
                Some((_, b)) => score > *b,
            };
            if better {
                best = Some((indices.clone(), score));
            }
        }
        if !next_combination(&mut indices, n) {
            break;
        }
    }
    best.ok_or_else(|| Error::Numerical("every subset had singular correlation structure".into()))
}

/// Advance `indices` to the next lexicographic size-`t` combination of
/// `0..n`; returns `false` after the last one.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let t = indices.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if indices[i] != i + n - t {
            indices[i] += 1;
            for k in (i + 1)..t {
                indices[k] = indices[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Agreement report between the direct and the centred least-squares
/// solves of the intercepted regression problem.
#[derive(Debug, Clone)]
pub struct InterceptCheck<T> {
    /// Intercept recovered from the centred route, `mean(y) - mean(x)'b`.
    pub intercept: T,
    pub coefficients: Array1<T>,
    /// Largest absolute disagreement between the two routes over the
    /// intercept and every coefficient.
    pub max_discrepancy: T,
}

/// Solve the intercepted least-squares problem twice, directly on
/// `(1, X)` and through the centred reformulation, and report how far the
/// two solutions disagree.
pub fn ols_intercept_check<T: Scalar>(x: &Array2<T>, y: &Array1<T>) -> Result<InterceptCheck<T>> {
    let (n_rows, n_cols) = x.dim();
    if y.len() != n_rows {
        return Err(Error::InvalidArgument(format!(
            "response length {} does not match {} rows",
            y.len(),
            n_rows
        )));
    }
    // Direct route on the augmented design matrix.
    let mut design = Array2::<T>::ones((n_rows, n_cols + 1));
    for j in 0..n_cols {
        design.column_mut(j + 1).assign(&x.column(j));
    }
    let gram = design.t().dot(&design);
    let rhs = design.t().dot(y);
    let direct = solve::cholesky_solve(&gram, &rhs)
        .map_err(|_| Error::Numerical("augmented design matrix is rank deficient".into()))?;

    // Centred route.
    let x_c = linalg::center_columns(x);
    let (y_c, y_mean) = linalg::center_vector(y);
    let gram_c = x_c.values.t().dot(&x_c.values);
    let rhs_c = x_c.values.t().dot(&y_c);
    let beta = solve::cholesky_solve(&gram_c, &rhs_c)
        .map_err(|_| Error::Numerical("centred design matrix is rank deficient".into()))?;
    let mean_dot: T = x_c
        .means
        .iter()
        .zip(beta.iter())
        .map(|(&m, &b)| m * b)
        .sum();
    let intercept = y_mean - mean_dot;

    let mut disc = (direct[0] - intercept).abs();
    for j in 0..n_cols {
        disc = disc.max((direct[j + 1] - beta[j]).abs());
    }
    Ok(InterceptCheck {
        intercept,
        coefficients: beta,
        max_discrepancy: disc,
    })
}
