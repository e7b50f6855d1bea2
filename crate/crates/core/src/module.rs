//! The standard left Hilbert module `U = A^d` and its adjointable operators.
//!
//! Block `k` of a module element `f = (f_1, …, f_d)` is the `n_k × d·n_k`
//! matrix `X_k = [f_1 | … | f_d]` (block `k` of each coordinate side by side).
//! In that picture `⟨f, g⟩ = Σ_i f_i g_i*` is `X_k Y_k*` and the module norm is
//! the largest singular value of the `X_k`.
//!
//! An adjointable operator `T: A^{d_in} → A^{d_out}` acts by
//! `(Tf)_j = Σ_i f_i M_ij`, which in block `k` is right multiplication
//! `X_k ↦ X_k M_k` by a `d_in·n_k × d_out·n_k` matrix. The adjoint is `M_k*`
//! and every spectral question about `T` reduces to the `M_k`.

use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64};
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::repr::ModuleElementRepr", try_from = "crate::repr::ModuleElementRepr")]
pub struct ModuleElement {
    desc: AlgebraDescriptor,
    coords: Vec<AlgebraElement>,
}

impl ModuleElement {
    pub fn new(desc: &AlgebraDescriptor, coords: Vec<AlgebraElement>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch("module rank d must be positive".into()));
        }
        for a in &coords {
            desc.ensure_same(a.descriptor())?;
        }
        Ok(Self { desc: desc.clone(), coords })
    }

    pub fn zero(desc: &AlgebraDescriptor, d: usize) -> Self {
        Self { desc: desc.clone(), coords: vec![AlgebraElement::zero(desc); d] }
    }

    /// `e_j`: `1_A` in coordinate `j`, zero elsewhere.
    pub fn basis(desc: &AlgebraDescriptor, d: usize, j: usize) -> Self {
        let mut e = Self::zero(desc, d);
        e.coords[j] = AlgebraElement::identity(desc);
        e
    }

    /// Rebuild an element from its per-block row matrices `X_k`.
    pub fn from_block_rows(desc: &AlgebraDescriptor, d: usize, rows: &[CMat]) -> Result<Self> {
        if rows.len() != desc.num_blocks() {
            return Err(Error::DescriptorMismatch("one row block per algebra block".into()));
        }
        for (x, &n) in rows.iter().zip(desc.block_sizes()) {
            if x.nrows() != n || x.ncols() != d * n {
                return Err(Error::DimensionMismatch(format!(
                    "row block is {}x{}, expected {n}x{}",
                    x.nrows(),
                    x.ncols(),
                    d * n
                )));
            }
        }
        let coords = (0..d)
            .map(|i| {
                let blocks =
                    rows.iter().zip(desc.block_sizes()).map(|(x, &n)| x.columns(i * n, n).into_owned()).collect();
                AlgebraElement::from_blocks(desc, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { desc: desc.clone(), coords })
    }

    /// The rank-one element whose block `k` is `e_0 ⊗ row` and whose other
    /// blocks vanish.
    pub fn rank_one(desc: &AlgebraDescriptor, d: usize, k: usize, row: &[C64]) -> Result<Self> {
        if row.len() != d * desc.block_sizes()[k] {
            return Err(Error::DimensionMismatch("rank-one row has the wrong length".into()));
        }
        let rows: Vec<CMat> = desc
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut x = CMat::zeros(n, d * n);
                if b == k {
                    for (j, &z) in row.iter().enumerate() {
                        x[(0, j)] = z;
                    }
                }
                x
            })
            .collect();
        Self::from_block_rows(desc, d, &rows)
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn d(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[AlgebraElement] {
        &self.coords
    }

    pub fn block_row(&self, k: usize) -> CMat {
        let n = self.desc.block_sizes()[k];
        let mut x = CMat::zeros(n, self.d() * n);
        for (i, a) in self.coords.iter().enumerate() {
            x.view_mut((0, i * n), (n, n)).copy_from(a.block(k));
        }
        x
    }

    pub fn block_rows(&self) -> Vec<CMat> {
        (0..self.desc.num_blocks()).map(|k| self.block_row(k)).collect()
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.desc.ensure_same(&other.desc)?;
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch(format!("d = {} vs {}", self.d(), other.d())));
        }
        Ok(())
    }

    /// `⟨f, g⟩ = Σ_i f_i g_i*`.
    pub fn inner(&self, other: &Self) -> Result<AlgebraElement> {
        self.ensure_compatible(other)?;
        let mut acc = AlgebraElement::zero(&self.desc);
        for (f, g) in self.coords.iter().zip(&other.coords) {
            acc = &acc + &(f * &g.adjoint());
        }
        Ok(acc)
    }

    /// `‖f‖ = ‖⟨f, f⟩‖^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.inner(self).expect("self-compatible").norm().max(0.0).sqrt()
    }

    /// Left module action `a·f`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Self {
        Self { desc: self.desc.clone(), coords: self.coords.iter().map(|f| a * f).collect() }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        Self { desc: self.desc.clone(), coords: self.coords.iter().map(|f| f.scale_real(x)).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }

    /// Concatenation over blocks of the rows of each `X_k`.
    pub fn flatten(&self) -> Vec<C64> {
        self.block_rows()
            .iter()
            .flat_map(|x| (0..x.nrows()).flat_map(|r| x.row(r).iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect()
    }
}

impl Add for &ModuleElement {
    type Output = ModuleElement;
    fn add(self, rhs: Self) -> ModuleElement {
        ModuleElement {
            desc: self.desc.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ModuleElement {
    type Output = ModuleElement;
    fn sub(self, rhs: Self) -> ModuleElement {
        ModuleElement {
            desc: self.desc.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

/// An adjointable map `A^{d_in} → A^{d_out}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::repr::OperatorRepr", try_from = "crate::repr::OperatorRepr")]
pub struct AdjointableOperator {
    desc: AlgebraDescriptor,
    d_in: usize,
    d_out: usize,
    blocks: Vec<CMat>,
}

/// Spectral summary shared by the rank-style predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedBelow {
    pub holds: bool,
    /// Largest `m` with `‖Tf‖ ≥ m‖f‖` for all `f`.
    pub m: f64,
}

impl AdjointableOperator {
    pub fn from_blocks(desc: &AlgebraDescriptor, d_in: usize, d_out: usize, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != desc.num_blocks() {
            return Err(Error::DescriptorMismatch("one matrix per algebra block".into()));
        }
        for (m, &n) in blocks.iter().zip(desc.block_sizes()) {
            if m.nrows() != d_in * n || m.ncols() != d_out * n {
                return Err(Error::DimensionMismatch(format!(
                    "operator block is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    d_in * n,
                    d_out * n
                )));
            }
        }
        Ok(Self { desc: desc.clone(), d_in, d_out, blocks })
    }

    /// Build from the `d_in × d_out` matrix of algebra entries `M_ij`.
    pub fn from_entries(desc: &AlgebraDescriptor, entries: &[Vec<AlgebraElement>]) -> Result<Self> {
        let d_in = entries.len();
        let d_out = entries.first().map_or(0, Vec::len);
        if d_in == 0 || d_out == 0 || entries.iter().any(|r| r.len() != d_out) {
            return Err(Error::DimensionMismatch("entries must form a non-empty rectangle".into()));
        }
        let blocks = desc
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let mut m = CMat::zeros(d_in * n, d_out * n);
                for (i, row) in entries.iter().enumerate() {
                    for (j, a) in row.iter().enumerate() {
                        desc.ensure_same(a.descriptor())?;
                        m.view_mut((i * n, j * n), (n, n)).copy_from(a.block(k));
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(desc, d_in, d_out, blocks)
    }

    pub fn identity(desc: &AlgebraDescriptor, d: usize) -> Self {
        let blocks = desc.block_sizes().iter().map(|&n| CMat::identity(d * n, d * n)).collect();
        Self { desc: desc.clone(), d_in: d, d_out: d, blocks }
    }

    pub fn zero(desc: &AlgebraDescriptor, d_in: usize, d_out: usize) -> Self {
        let blocks = desc.block_sizes().iter().map(|&n| CMat::zeros(d_in * n, d_out * n)).collect();
        Self { desc: desc.clone(), d_in, d_out, blocks }
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn entry(&self, i: usize, j: usize) -> AlgebraElement {
        let blocks = self
            .desc
            .block_sizes()
            .iter()
            .zip(&self.blocks)
            .map(|(&n, m)| m.view((i * n, j * n), (n, n)).into_owned())
            .collect();
        AlgebraElement::from_blocks(&self.desc, blocks).expect("block shapes are consistent")
    }

    pub fn entries(&self) -> Vec<Vec<AlgebraElement>> {
        (0..self.d_in).map(|i| (0..self.d_out).map(|j| self.entry(i, j)).collect()).collect()
    }

    pub fn apply(&self, f: &ModuleElement) -> Result<ModuleElement> {
        self.desc.ensure_same(f.descriptor())?;
        if f.d() != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "operator expects d = {}, element has d = {}",
                self.d_in,
                f.d()
            )));
        }
        let rows: Vec<CMat> = f.block_rows().iter().zip(&self.blocks).map(|(x, m)| x * m).collect();
        ModuleElement::from_block_rows(&self.desc, self.d_out, &rows)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            desc: self.desc.clone(),
            d_in: self.d_out,
            d_out: self.d_in,
            blocks: self.blocks.iter().map(|m| m.adjoint()).collect(),
        }
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.desc.ensure_same(&inner.desc)?;
        if inner.d_out != self.d_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner lands in A^{}, outer expects A^{}",
                inner.d_out, self.d_in
            )));
        }
        let blocks = inner.blocks.iter().zip(&self.blocks).map(|(a, b)| a * b).collect();
        Ok(Self { desc: self.desc.clone(), d_in: inner.d_in, d_out: self.d_out, blocks })
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.desc.ensure_same(&other.desc)?;
        if (self.d_in, self.d_out) != (other.d_in, other.d_out) {
            return Err(Error::DimensionMismatch("operator shapes differ".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(Self { desc: self.desc.clone(), d_in: self.d_in, d_out: self.d_out, blocks })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { blocks: self.blocks.iter().map(|m| m * z).collect(), ..self.clone() }
    }

    /// `f ↦ a·T(f)` for central `a`; block `k` is scaled by the scalar of `a`
    /// in that block.
    pub fn left_scale(&self, a: &AlgebraElement) -> Result<Self> {
        self.desc.ensure_same(a.descriptor())?;
        let lambdas = a.central_scalars(tol::ALGEBRAIC)?;
        Ok(Self { blocks: self.blocks.iter().zip(lambdas).map(|(m, z)| m * z).collect(), ..self.clone() })
    }

    /// The full complex matrix on flattened coordinates:
    /// `flatten(Tf) = flatten_op(T) · flatten(f)`.
    pub fn flatten(&self) -> CMat {
        let parts: Vec<CMat> = self
            .desc
            .block_sizes()
            .iter()
            .zip(&self.blocks)
            .map(|(&n, m)| linalg::kron_identity_left(n, &m.transpose()))
            .collect();
        linalg::block_diag(&parts)
    }

    /// Singular values of all blocks, pooled, descending. Each block's values
    /// occur `n_k` times in the flattened matrix; the pooled set is the same.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.blocks.iter().flat_map(linalg::singular_values).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Largest `m` with `‖Tf‖ ≥ m‖f‖`; zero when `T` has a kernel.
    pub fn min_singular(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| {
                if m.nrows() > m.ncols() {
                    0.0
                } else {
                    linalg::singular_values(m).get(m.nrows() - 1).copied().unwrap_or(0.0)
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether every block has full column rank, i.e. `T` is onto.
    pub fn is_surjective(&self, tol: f64) -> bool {
        let cutoff = tol * self.norm();
        self.norm() > 0.0
            && self.blocks.iter().all(|m| {
                m.ncols() <= m.nrows() && linalg::singular_values(m).get(m.ncols() - 1).is_some_and(|&s| s > cutoff)
            })
    }

    pub fn is_injective(&self, tol: f64) -> bool {
        self.adjoint().is_surjective(tol)
    }

    pub fn bounded_below(&self, tol: f64) -> BoundedBelow {
        let m = self.min_singular();
        BoundedBelow { holds: self.norm() > 0.0 && m > tol * self.norm(), m }
    }

    pub fn is_square(&self) -> bool {
        self.d_in == self.d_out
    }

    pub fn invert(&self, tol: f64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("only square operators can be inverted".into()));
        }
        let smallest = self.min_singular();
        if !(self.norm() > 0.0 && smallest > tol * self.norm()) {
            return Err(Error::SingularOperator { smallest });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|m| m.clone().try_inverse().ok_or(Error::SingularOperator { smallest }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks, ..self.clone() })
    }

    /// Eigenvalues of the Hermitian part, pooled over blocks, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.blocks.iter().flat_map(linalg::hermitian_eigenvalues).collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol * (1.0 + self.norm())
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.is_self_adjoint(tol)
            && self.hermitian_eigenvalues().first().is_none_or(|&lo| lo >= -tol * (1.0 + self.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| linalg::max_abs(&(a - b))).fold(0.0, f64::max)
    }

    /// `‖self − other‖` in operator norm.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm())
    }

    pub fn identity_like(&self) -> Self {
        Self::identity(&self.desc, self.d_in)
    }
}

/// Helper for tests and generators: `z·1_A` entries on the diagonal.
pub fn scalar_operator(desc: &AlgebraDescriptor, d: usize, z: f64) -> AdjointableOperator {
    AdjointableOperator::identity(desc, d).scale(c(z, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(vals: &[(f64, f64)]) -> ModuleElement {
        let desc = AlgebraDescriptor::complex();
        let coords = vals.iter().map(|&(re, im)| AlgebraElement::scalar(&desc, c(re, im))).collect();
        ModuleElement::new(&desc, coords).unwrap()
    }

    #[test]
    fn inner_products_over_c() {
        let e1 = scalars(&[(1.0, 0.0), (0.0, 0.0)]);
        let e2 = scalars(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(e1.inner(&e2).unwrap().norm(), 0.0);
        let f = scalars(&[(1.0, 0.0), (2.0, 0.0)]);
        let g = scalars(&[(3.0, 0.0), (4.0, 0.0)]);
        assert_eq!(f.inner(&g).unwrap().block(0)[(0, 0)], c(11.0, 0.0));
    }

    #[test]
    fn module_norms() {
        assert_eq!(scalars(&[(0.0, 0.0)]).norm(), 0.0);
        assert!((scalars(&[(3.0, 0.0), (4.0, 0.0)]).norm() - 5.0).abs() < 1e-14);
        let m2 = AlgebraDescriptor::new(vec![2]).unwrap();
        let diag = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        let f = ModuleElement::new(&m2, vec![AlgebraElement::from_blocks(&m2, vec![diag]).unwrap()]).unwrap();
        assert!((f.norm() - 2.0).abs() < 1e-14);
        let one = ModuleElement::basis(&m2, 1, 0);
        assert!(one.inner(&one).unwrap().approx_eq(&AlgebraElement::identity(&m2), 0.0));
    }

    #[test]
    fn mismatched_shapes_are_errors() {
        let f = scalars(&[(1.0, 0.0)]);
        let g = scalars(&[(1.0, 0.0), (2.0, 0.0)]);
        assert!(matches!(f.inner(&g), Err(Error::DimensionMismatch(_))));
        let t = AdjointableOperator::identity(&AlgebraDescriptor::complex(), 2);
        assert!(matches!(t.apply(&f), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn identity_and_zero_operators() {
        let desc = AlgebraDescriptor::new(vec![2, 1]).unwrap();
        let id = AdjointableOperator::identity(&desc, 2);
        let f = ModuleElement::basis(&desc, 2, 1);
        assert_eq!(id.apply(&f).unwrap(), f);
        assert_eq!(id.norm(), 1.0);
        assert!(id.is_surjective(tol::RANK));
        let bb = id.bounded_below(tol::RANK);
        assert!(bb.holds && (bb.m - 1.0).abs() < 1e-15);
        assert!(id.adjoint() == id);
        let zero = AdjointableOperator::zero(&desc, 2, 2);
        assert_eq!(zero.apply(&f).unwrap(), ModuleElement::zero(&desc, 2));
        assert!(!zero.is_surjective(tol::RANK));
        assert!(matches!(zero.invert(tol::RANK), Err(Error::SingularOperator { .. })));
        assert_eq!(id.flatten(), CMat::identity(2 * desc.dim(), 2 * desc.dim()));
    }

    #[test]
    fn inversion_of_scaled_identity() {
        let desc = AlgebraDescriptor::new(vec![2, 3]).unwrap();
        let two = scalar_operator(&desc, 2, 2.0);
        let inv = two.invert(tol::RANK).unwrap();
        assert!(inv.max_abs_diff(&scalar_operator(&desc, 2, 0.5)) < 1e-15);
    }

    #[test]
    fn entries_round_trip() {
        let desc = AlgebraDescriptor::new(vec![1, 2]).unwrap();
        let a = AlgebraElement::blockwise_scalars(&desc, &[c(1.0, 2.0), c(0.0, -1.0)]);
        let b = AlgebraElement::identity(&desc).scale_real(3.0);
        let entries = vec![vec![a.clone(), b.clone(), a.clone()], vec![b.clone(), a.clone(), b.clone()]];
        let t = AdjointableOperator::from_entries(&desc, &entries).unwrap();
        assert_eq!((t.d_in(), t.d_out()), (2, 3));
        assert_eq!(t.entries(), entries);
    }
}
