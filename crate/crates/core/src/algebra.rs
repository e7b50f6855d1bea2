//! The scalar ring: a finite direct sum of full matrix algebras
//! `M_{n_1}(C) ⊕ … ⊕ M_{n_K}(C)` with its involution, C*-norm and order.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64};
use crate::tol;

/// Block structure `(n_1, …, n_K)` of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct AlgebraDescriptor {
    block_sizes: Vec<usize>,
}

impl From<AlgebraDescriptor> for Vec<usize> {
    fn from(d: AlgebraDescriptor) -> Self {
        d.block_sizes
    }
}

impl TryFrom<Vec<usize>> for AlgebraDescriptor {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl AlgebraDescriptor {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.is_empty() {
            return Err(Error::InvalidDescriptor("at least one block is required".into()));
        }
        if block_sizes.contains(&0) {
            return Err(Error::InvalidDescriptor(format!("zero block size in {block_sizes:?}")));
        }
        Ok(Self { block_sizes })
    }

    /// The commutative algebra `C`.
    pub fn complex() -> Self {
        Self { block_sizes: vec![1] }
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    /// Complex dimension `Σ n_k²`.
    pub fn dim(&self) -> usize {
        self.block_sizes.iter().map(|n| n * n).sum()
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{:?} vs {:?}", self.block_sizes, other.block_sizes)))
        }
    }
}

/// An element of the algebra, stored block by block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::repr::AlgebraElementRepr", try_from = "crate::repr::AlgebraElementRepr")]
pub struct AlgebraElement {
    desc: AlgebraDescriptor,
    blocks: Vec<CMat>,
}

impl AlgebraElement {
    pub fn from_blocks(desc: &AlgebraDescriptor, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != desc.num_blocks() {
            return Err(Error::DescriptorMismatch(format!(
                "expected {} blocks, got {}",
                desc.num_blocks(),
                blocks.len()
            )));
        }
        for (k, (b, &n)) in blocks.iter().zip(desc.block_sizes()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::DescriptorMismatch(format!(
                    "block {k} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Self { desc: desc.clone(), blocks })
    }

    pub fn zero(desc: &AlgebraDescriptor) -> Self {
        Self::scalar(desc, c(0.0, 0.0))
    }

    pub fn identity(desc: &AlgebraDescriptor) -> Self {
        Self::scalar(desc, c(1.0, 0.0))
    }

    /// `z · 1_A`.
    pub fn scalar(desc: &AlgebraDescriptor, z: C64) -> Self {
        Self::blockwise_scalars(desc, &vec![z; desc.num_blocks()])
    }

    /// `λ_1 I ⊕ … ⊕ λ_K I`, the general central element.
    pub fn blockwise_scalars(desc: &AlgebraDescriptor, lambdas: &[C64]) -> Self {
        assert_eq!(lambdas.len(), desc.num_blocks(), "one scalar per block");
        let blocks = desc.block_sizes().iter().zip(lambdas).map(|(&n, &z)| CMat::identity(n, n) * z).collect();
        Self { desc: desc.clone(), blocks }
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn map_blocks(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self { desc: self.desc.clone(), blocks: self.blocks.iter().map(f).collect() }
    }

    fn zip_blocks(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Self {
        assert_eq!(self.desc, other.desc, "algebra descriptor mismatch");
        Self { desc: self.desc.clone(), blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint())
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map_blocks(|b| b * z)
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.map_blocks(|b| b.scale(x))
    }

    /// `|a|² = a*a`.
    pub fn abs_sq(&self) -> Self {
        &self.adjoint() * self
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// Smallest singular value over all blocks.
    pub fn min_singular(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| linalg::singular_values(b).last().copied().unwrap_or(0.0))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| linalg::max_abs(&(a - b))).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.desc == other.desc && self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let slack = tol * (1.0 + self.norm());
        self.blocks.iter().all(|b| linalg::max_abs(&(b - b.adjoint())) <= slack)
    }

    /// Eigenvalues of the Hermitian part of every block, ascending, pooled.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.blocks.iter().flat_map(linalg::hermitian_eigenvalues).collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// C*-positivity with slack `tol·(1 + ‖a‖)`.
    pub fn is_positive(&self, tol: f64) -> bool {
        let slack = tol * (1.0 + self.norm());
        self.is_hermitian(tol) && self.hermitian_eigenvalues().first().is_none_or(|&lo| lo >= -slack)
    }

    /// `self ≤ other` in the C*-order.
    pub fn order_leq(&self, other: &Self, tol: f64) -> bool {
        (other - self).is_positive(tol)
    }

    pub fn invert(&self) -> Result<Self> {
        let norm = self.norm();
        let smallest = self.min_singular();
        if norm == 0.0 || smallest <= tol::ALGEBRAIC * norm {
            return Err(Error::SingularElement { smallest });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.clone().try_inverse().ok_or(Error::SingularElement { smallest }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { desc: self.desc.clone(), blocks })
    }

    /// Whether `a` commutes with every matrix unit `E_ij` of every block,
    /// i.e. each block is a multiple of the identity.
    pub fn is_central(&self, tol: f64) -> bool {
        let slack = tol * (1.0 + self.norm());
        self.blocks.iter().all(|b| {
            let n = b.nrows();
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let mut unit = CMat::zeros(n, n);
                    unit[(i, j)] = c(1.0, 0.0);
                    let comm = b * &unit - &unit * b;
                    linalg::max_abs(&comm) <= slack
                })
            })
        })
    }

    /// The per-block scalars of a central element (`b[0,0]` of each block).
    pub fn central_scalars(&self, tol: f64) -> Result<Vec<C64>> {
        if !self.is_central(tol) {
            return Err(Error::NotCentral);
        }
        Ok(self.blocks.iter().map(|b| b[(0, 0)]).collect())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let one = Self::identity(&self.desc);
        (&self.adjoint() * self).approx_eq(&one, tol) && (self * &self.adjoint()).approx_eq(&one, tol)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        self.zip_blocks(rhs, |a, b| a + b)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.zip_blocks(rhs, |a, b| a - b)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Self) -> AlgebraElement {
        self.zip_blocks(rhs, |a, b| a * b)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.map_blocks(|b| -b)
    }
}
