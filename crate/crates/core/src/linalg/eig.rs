//! Symmetric eigendecomposition and singular value decomposition.
//!
//! Both are thin wrappers over `nalgebra` that fix the output conventions
//! used elsewhere in the crate: values sorted in descending order, vectors
//! stored as matrix columns.

use nalgebra::{SymmetricEigen, SVD};

use super::Matrix;
use crate::error::{Error, Result};

/// Relative asymmetry accepted by [`sym_eig`].
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SymEig {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; column `i` belongs to `values[i]`.
    pub vectors: Matrix,
}

#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    /// Singular values, descending.
    pub values: Vec<f64>,
    pub v: Matrix,
}

fn check_symmetric(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(())
}

/// Symmetrized copy in nalgebra form; the lower triangle is what nalgebra reads.
fn symmetrized(m: &Matrix) -> nalgebra::DMatrix<f64> {
    let n = m.rows();
    nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

pub fn sym_eig(m: &Matrix) -> Result<SymEig> {
    check_symmetric(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(SymEig {
            values: vec![],
            vectors: Matrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(symmetrized(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SymEig { values, vectors })
}

/// Eigenvalues only, descending.
pub fn sym_eigvals(m: &Matrix) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    if m.rows() == 0 {
        return Ok(vec![]);
    }
    let mut v: Vec<f64> = symmetrized(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

pub fn svd(m: &Matrix) -> Result<Svd> {
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    let (r, c) = (m.rows(), m.cols());
    let k = r.min(c);
    if k == 0 {
        return Ok(Svd {
            u: Matrix::zeros(r, 0),
            values: vec![],
            v: Matrix::zeros(c, 0),
        });
    }
    let dec = SVD::new(m.to_nalgebra(), true, true);
    let u = dec.u.expect("requested u");
    let vt = dec.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| dec.singular_values[b].total_cmp(&dec.singular_values[a]));
    let values = order.iter().map(|&i| dec.singular_values[i].max(0.0)).collect();
    let u = Matrix::from_fn(r, k, |i, j| u[(i, order[j])]);
    let v = Matrix::from_fn(c, k, |i, j| vt[(order[j], i)]);
    Ok(Svd { u, values, v })
}

pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    if m.rows().min(m.cols()) == 0 {
        return Ok(vec![]);
    }
    let mut v: Vec<f64> = m.to_nalgebra().singular_values().iter().map(|s| s.max(0.0)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Largest singular value (`ℓ₂ → ℓ₂` operator norm).
pub fn spectral_norm(m: &Matrix) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Sum of singular values.
pub fn nuclear_norm(m: &Matrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}
