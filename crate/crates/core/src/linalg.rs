//! Small dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Kronecker product with row index `(i, k) -> i * b.nrows() + k`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

/// Largest entry modulus; 0 for an empty matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.clone().singular_values().iter().copied().collect()
}

/// Orthonormal basis (as columns) of the column span of `a`, by modified
/// Gram-Schmidt with one reorthogonalization pass. A column is kept when its
/// residual exceeds `rel_tol` times the largest column norm.
pub fn column_basis(a: &CMat, rel_tol: f64) -> CMat {
    let n = a.nrows();
    let scale = a.column_iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if n == 0 || scale.is_nan() || scale == 0.0 {
        return CMat::zeros(n, 0);
    }
    let mut basis: Vec<nalgebra::DVector<C64>> = Vec::new();
    for col in a.column_iter() {
        if basis.len() == n {
            break;
        }
        let mut v = col.into_owned();
        for _ in 0..2 {
            for q in &basis {
                let p = q.dotc(&v);
                v.axpy(-p, q, ONE);
            }
        }
        let norm = v.norm();
        if norm > rel_tol * scale {
            basis.push(v.unscale(norm));
        }
    }
    if basis.is_empty() {
        return CMat::zeros(n, 0);
    }
    CMat::from_columns(&basis)
}

/// Rank-1 operator `x -> <x, zeta> theta`, i.e. `theta * zeta^*`.
pub fn rank_one(theta: &[C64], zeta: &[C64]) -> CMat {
    CMat::from_fn(theta.len(), zeta.len(), |i, j| theta[i] * zeta[j].conj())
}

pub fn is_unitary(m: &CMat, tol: f64) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &identity(m.nrows())) <= tol
}

/// Parses the `[[[re, im], ...], ...]` layout used in the JSON formats.
pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> crate::Result<CMat> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(crate::Error::Parse("ragged matrix".into()));
    }
    Ok(CMat::from_fn(nrows, ncols, |i, j| {
        C64::new(rows[i][j][0], rows[i][j][1])
    }))
}

pub fn to_pairs(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}
