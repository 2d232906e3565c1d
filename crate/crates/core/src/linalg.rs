//! Centring, unnormalised classical Gram–Schmidt, and Pearson correlation.
//!
//! Every criterion in this crate is built from three primitives: shift
//! columns to zero mean, orthogonalise columns against an existing basis
//! without normalising them, and correlate vectors. The basis vectors keep
//! their raw squared norms (`w'w`), which is what the criterion formulas
//! divide by.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::Scalar;

/// Relative rank tolerance: a residual whose squared norm falls below
/// `RANK_TOL^2` times the column's own centred squared norm is treated as
/// linearly dependent on the basis.
pub const RANK_TOL: f64 = 1e-8;

/// Scaled off-diagonal bound for basis orthogonality checks.
pub const ORTHO_TOL: f64 = 1e-10;

pub(crate) fn rank_tol_sq<T: Scalar>() -> T {
    T::from_f64(RANK_TOL * RANK_TOL).unwrap()
}

fn ortho_tol<T: Scalar>() -> T {
    T::from_f64(ORTHO_TOL).unwrap()
}

/// A matrix whose columns have been shifted to zero sample mean, together
/// with the removed means.
#[derive(Debug, Clone)]
pub struct CenteredMatrix<T> {
    /// Zero-mean columns, same shape as the input.
    pub values: Array2<T>,
    /// Original column means, one per column.
    pub means: Vec<T>,
}

impl<T: Scalar> CenteredMatrix<T> {
    pub fn n_rows(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_cols(&self) -> usize {
        self.values.ncols()
    }

    /// Owned copy of column `j`.
    pub fn column(&self, j: usize) -> Array1<T> {
        self.values.column(j).to_owned()
    }
}

/// Shift every column of `matrix` by its sample mean.
pub fn center_columns<T: Scalar>(matrix: &Array2<T>) -> CenteredMatrix<T> {
    let mut values = matrix.clone();
    let mut means = Vec::with_capacity(matrix.ncols());
    for mut col in values.columns_mut() {
        let mean = col.mean().unwrap_or_else(T::zero);
        col.mapv_inplace(|v| v - mean);
        means.push(mean);
    }
    CenteredMatrix { values, means }
}

/// Centre a single vector by its sample mean, returning the shifted vector
/// and the mean.
pub fn center_vector<T: Scalar>(v: &Array1<T>) -> (Array1<T>, T) {
    let mean = v.mean().unwrap_or_else(T::zero);
    (v.mapv(|x| x - mean), mean)
}

/// An ordered set of mutually orthogonal zero-mean vectors with their raw
/// squared norms (no normalisation is applied).
#[derive(Debug, Clone, Default)]
pub struct OrthoBasis<T> {
    vectors: Vec<Array1<T>>,
    sq_norms: Vec<T>,
    /// Input column indices rejected for rank deficiency.
    pub dropped: Vec<usize>,
}

impl<T: Scalar> OrthoBasis<T> {
    pub fn new() -> Self {
        OrthoBasis {
            vectors: Vec::new(),
            sq_norms: Vec::new(),
            dropped: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Array1<T>] {
        &self.vectors
    }

    pub fn sq_norms(&self) -> &[T] {
        &self.sq_norms
    }

    /// Append a vector that is already orthogonal to the current basis.
    /// The squared norm must be positive.
    pub fn push(&mut self, vector: Array1<T>, sq_norm: T) {
        debug_assert!(sq_norm > T::zero());
        self.vectors.push(vector);
        self.sq_norms.push(sq_norm);
    }

    /// Subtract from `v` its projection onto every basis vector
    /// (classical Gram–Schmidt step).
    pub fn project_out(&self, v: &mut Array1<T>) {
        for (w, &sq) in self.vectors.iter().zip(&self.sq_norms) {
            let coef = v.dot(w) / sq;
            v.scaled_add(-coef, w);
        }
    }

    /// Largest pairwise inner product scaled by the vector norms,
    /// `max |w_i'w_j| / sqrt(w_i'w_i * w_j'w_j)` over `i != j`.
    pub fn max_scaled_offdiag(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.vectors.len() {
            for j in (i + 1)..self.vectors.len() {
                let dot = self.vectors[i].dot(&self.vectors[j]).abs();
                let scale = (self.sq_norms[i] * self.sq_norms[j]).sqrt();
                if scale > T::zero() {
                    worst = worst.max(dot / scale);
                }
            }
        }
        worst
    }
}

/// Unnormalised classical Gram–Schmidt over the columns of a centred matrix.
///
/// The first retained column is kept verbatim; every later column is
/// replaced by its residual after projection onto all previously retained
/// vectors. Columns whose residual collapses below the relative rank
/// tolerance are recorded in `dropped` and excluded. When accumulated
/// floating-point drift pushes any scaled off-diagonal product above
/// [`ORTHO_TOL`], one re-orthogonalisation pass is applied.
pub fn gram_schmidt_self<T: Scalar>(matrix: &CenteredMatrix<T>) -> OrthoBasis<T> {
    gram_schmidt_columns((0..matrix.n_cols()).map(|j| matrix.column(j)))
}

/// Gram–Schmidt over an arbitrary sequence of columns (not necessarily
/// centred). Used for the uncentred design matrix of the historical
/// error-reduction ratio.
pub(crate) fn gram_schmidt_columns<T, I>(columns: I) -> OrthoBasis<T>
where
    T: Scalar,
    I: IntoIterator<Item = Array1<T>>,
{
    let tol_sq = rank_tol_sq::<T>();
    let mut basis = OrthoBasis::new();
    let mut originals = Vec::new();
    for (j, mut v) in columns.into_iter().enumerate() {
        let orig_sq = v.dot(&v);
        basis.project_out(&mut v);
        let res_sq = v.dot(&v);
        if res_sq <= tol_sq * orig_sq {
            basis.dropped.push(j);
        } else {
            basis.push(v, res_sq);
            originals.push(orig_sq);
        }
    }
    if basis.max_scaled_offdiag() > ortho_tol::<T>() {
        reorthogonalize(&mut basis, &originals);
    }
    basis
}

/// One additional in-place Gram–Schmidt sweep to contain drift. Vectors
/// that collapse during the sweep are discarded (their source index is no
/// longer known, so they are dropped silently; this only happens for inputs
/// already at the rank tolerance boundary).
fn reorthogonalize<T: Scalar>(basis: &mut OrthoBasis<T>, originals: &[T]) {
    let tol_sq = rank_tol_sq::<T>();
    let mut vectors = std::mem::take(&mut basis.vectors);
    let orig_sqs = originals.to_vec();
    basis.sq_norms.clear();
    let mut kept: Vec<Array1<T>> = Vec::with_capacity(vectors.len());
    let mut kept_sq: Vec<T> = Vec::new();
    for (mut v, orig_sq) in vectors.drain(..).zip(orig_sqs) {
        for (w, &sq) in kept.iter().zip(&kept_sq) {
            let coef = v.dot(w) / sq;
            v.scaled_add(-coef, w);
        }
        let res_sq = v.dot(&v);
        if res_sq > tol_sq * orig_sq {
            kept.push(v);
            kept_sq.push(res_sq);
        }
    }
    basis.vectors = kept;
    basis.sq_norms = kept_sq;
}

/// Residual of a single candidate vector after projecting out the basis.
///
/// Returns the residual and its squared norm. The candidate is expected to
/// be centred already; the basis vectors must have the same length.
pub fn orthogonalize_vector<T: Scalar>(
    candidate: &Array1<T>,
    basis: &OrthoBasis<T>,
) -> Result<(Array1<T>, T)> {
    if let Some(w) = basis.vectors.first() {
        if w.len() != candidate.len() {
            return Err(Error::InvalidArgument(format!(
                "candidate length {} does not match basis length {}",
                candidate.len(),
                w.len()
            )));
        }
    }
    let mut v = candidate.clone();
    basis.project_out(&mut v);
    let sq = v.dot(&v);
    Ok((v, sq))
}

/// Residual of a multi-column block after projecting out the basis.
#[derive(Debug, Clone)]
pub struct BlockResidual<T> {
    /// Mutually orthogonal residual columns (degenerate ones included,
    /// flagged below).
    pub columns: Vec<Array1<T>>,
    /// Squared norm of each residual column.
    pub sq_norms: Vec<T>,
    /// `true` where the residual collapsed relative to the column's own
    /// input norm.
    pub degenerate: Vec<bool>,
}

/// Project every column of a block against `basis`, then orthogonalise the
/// block's columns against each other so the surviving columns form a valid
/// basis extension. Near-zero residual columns are flagged, not removed.
pub fn orthogonalize_block<T: Scalar>(
    block: &Array2<T>,
    basis: &OrthoBasis<T>,
) -> Result<BlockResidual<T>> {
    let mut columns: Vec<Array1<T>> = Vec::with_capacity(block.ncols());
    let mut orig_sqs = Vec::with_capacity(block.ncols());
    for col in block.columns() {
        let owned = col.to_owned();
        orig_sqs.push(owned.dot(&owned));
        let (resid, _) = orthogonalize_vector(&owned, basis)?;
        columns.push(resid);
    }
    Ok(inner_orthogonalize(columns, &orig_sqs))
}

/// Orthogonalise a set of columns against each other (classical
/// Gram–Schmidt), flagging columns whose residual collapses relative to the
/// provided per-column reference squared norms.
pub(crate) fn inner_orthogonalize<T: Scalar>(
    mut columns: Vec<Array1<T>>,
    reference_sqs: &[T],
) -> BlockResidual<T> {
    let tol_sq = rank_tol_sq::<T>();
    let n = columns.len();
    let mut sq_norms = vec![T::zero(); n];
    let mut degenerate = vec![false; n];
    for g in 0..n {
        let (done, rest) = columns.split_at_mut(g);
        let v = &mut rest[0];
        for (j, w) in done.iter().enumerate() {
            if degenerate[j] {
                continue;
            }
            let coef = v.dot(w) / sq_norms[j];
            v.scaled_add(-coef, w);
        }
        let sq = v.dot(v);
        sq_norms[g] = sq;
        degenerate[g] = sq <= tol_sq * reference_sqs[g];
    }
    BlockResidual {
        columns,
        sq_norms,
        degenerate,
    }
}

/// Sample Pearson correlation coefficient between two vectors.
///
/// Errors when either vector has zero variance after centring.
pub fn pearson<T: Scalar>(a: &Array1<T>, b: &Array1<T>) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "vector lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let (ac, _) = center_vector(a);
    let (bc, _) = center_vector(b);
    let na = ac.dot(&ac);
    let nb = bc.dot(&bc);
    if na == T::zero() || nb == T::zero() {
        return Err(Error::Numerical(
            "correlation undefined: input has zero variance".into(),
        ));
    }
    let r = ac.dot(&bc) / (na.sqrt() * nb.sqrt());
    Ok(r.min(T::one()).max(-T::one()))
}
