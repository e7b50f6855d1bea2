//! Dense complex linear algebra helpers on top of `nalgebra`.
//!
//! Everything spectral in the crate (norms, ranks, eigenvalues, kernels)
//! bottoms out here.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Singular values in descending order. Empty matrices have none.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = hermitian_part(m);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigen-decomposition of the Hermitian part of `m`; eigenvalues ascending,
/// eigenvectors as the matching columns.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = hermitian_part(m);
    let eig = h.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// `m^p` for Hermitian positive definite `m`.
pub fn hermitian_power(m: &CMat, p: f64) -> CMat {
    let (values, vectors) = hermitian_eigen(m);
    let n = m.nrows();
    let d = CMat::from_fn(n, n, |i, j| if i == j { c(values[i].max(0.0).powf(p), 0.0) } else { c(0.0, 0.0) });
    &vectors * d * vectors.adjoint()
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Numerical rank with a threshold relative to `scale`.
pub fn rank(m: &CMat, rel_tol: f64, scale: f64) -> usize {
    let cutoff = rel_tol * scale.max(f64::MIN_POSITIVE);
    singular_values(m).iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis (columns) of the null space of `m`.
pub fn null_space(m: &CMat, rel_tol: f64, scale: f64) -> CMat {
    let n = m.ncols();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    // pad with zero rows so the SVD exposes a full set of right singular vectors
    let rows = m.nrows().max(n);
    let mut padded = CMat::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let cutoff = rel_tol * scale.max(f64::MIN_POSITIVE);
    let cols: Vec<_> = (0..n).filter(|&i| svd.singular_values[i] <= cutoff).map(|i| v_t.row(i).adjoint()).collect();
    if cols.is_empty() {
        CMat::zeros(n, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Orthogonal projector onto the column span of `basis` (assumed orthonormal).
pub fn projector(basis: &CMat, dim: usize) -> CMat {
    if basis.ncols() == 0 {
        CMat::zeros(dim, dim)
    } else {
        basis * basis.adjoint()
    }
}

pub fn block_diag(blocks: &[CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let (mut r, mut col) = (0, 0);
    for b in blocks {
        out.view_mut((r, col), (b.nrows(), b.ncols())).copy_from(b);
        r += b.nrows();
        col += b.ncols();
    }
    out
}

pub fn kron_identity_left(n: usize, m: &CMat) -> CMat {
    block_diag(&vec![m.clone(); n])
}
