//! Seeded random objects. Every sampler takes an explicit RNG so callers
//! control reproducibility; per-trial seeds come from [`derive_seed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::frame::{L2Element, MeasureSpace};
use crate::linalg::{c, CMat, C64};
use crate::module::{AdjointableOperator, ModuleElement};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counter-based child seed: splitmix64 of `seed ⊕ golden·(index+1)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_normal(rng: &mut SeededRng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn algebra_element(rng: &mut SeededRng, desc: &AlgebraDescriptor) -> AlgebraElement {
    let blocks = desc.block_sizes().iter().map(|&n| gaussian_matrix(rng, n, n)).collect();
    AlgebraElement::from_blocks(desc, blocks).expect("shapes follow descriptor")
}

/// A Hermitian element with eigenvalues spread over roughly `[-2, 2]`.
pub fn hermitian_element(rng: &mut SeededRng, desc: &AlgebraDescriptor) -> AlgebraElement {
    let a = algebra_element(rng, desc);
    (&a + &a.adjoint()).scale_real(0.5)
}

/// A random element with every block's singular values in `[lo, hi]`-ish:
/// a random unitary times a positive diagonal times a random unitary.
pub fn well_conditioned_element(rng: &mut SeededRng, desc: &AlgebraDescriptor, lo: f64, hi: f64) -> AlgebraElement {
    let blocks = desc
        .block_sizes()
        .iter()
        .map(|&n| {
            let u = unitary_matrix(rng, n);
            let v = unitary_matrix(rng, n);
            let s = CMat::from_fn(n, n, |i, j| if i == j { c(rng.random_range(lo..=hi), 0.0) } else { c(0.0, 0.0) });
            u * s * v
        })
        .collect();
    AlgebraElement::from_blocks(desc, blocks).expect("shapes follow descriptor")
}

/// Haar-ish unitary via QR of a Gaussian matrix with the phase of `R`'s
/// diagonal folded back into `Q`.
pub fn unitary_matrix(rng: &mut SeededRng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMat::from_fn(n, n, |i, j| {
        if i == j {
            let z = r[(i, i)];
            if z.norm() > 0.0 {
                z / z.norm()
            } else {
                c(1.0, 0.0)
            }
        } else {
            c(0.0, 0.0)
        }
    });
    q * phases
}

pub fn module_element(rng: &mut SeededRng, desc: &AlgebraDescriptor, d: usize) -> ModuleElement {
    let coords = (0..d).map(|_| algebra_element(rng, desc)).collect();
    ModuleElement::new(desc, coords).expect("d > 0")
}

/// A module element of norm one (or zero if the sample vanished).
pub fn unit_module_element(rng: &mut SeededRng, desc: &AlgebraDescriptor, d: usize) -> ModuleElement {
    let f = module_element(rng, desc, d);
    let n = f.norm();
    if n > 0.0 {
        f.scale_real(1.0 / n)
    } else {
        f
    }
}

/// A random element whose block rows have rank one, the extremal directions
/// for the module norm.
pub fn rank_one_module_element(rng: &mut SeededRng, desc: &AlgebraDescriptor, d: usize) -> ModuleElement {
    let k = rng.random_range(0..desc.num_blocks());
    let n = desc.block_sizes()[k];
    let row: Vec<C64> = (0..d * n).map(|_| complex_normal(rng)).collect();
    ModuleElement::rank_one(desc, d, k, &row).expect("row length matches")
}

pub fn l2_element(rng: &mut SeededRng, space: &MeasureSpace, desc: &AlgebraDescriptor) -> L2Element {
    let values = (0..space.len()).map(|_| algebra_element(rng, desc)).collect();
    L2Element::new(space, desc, values).expect("one value per atom")
}

pub fn unit_l2_element(rng: &mut SeededRng, space: &MeasureSpace, desc: &AlgebraDescriptor) -> L2Element {
    let phi = l2_element(rng, space, desc);
    let n = phi.norm();
    if n > 0.0 {
        phi.scale_real(1.0 / n)
    } else {
        phi
    }
}

pub fn operator(rng: &mut SeededRng, desc: &AlgebraDescriptor, d_in: usize, d_out: usize) -> AdjointableOperator {
    let blocks = desc.block_sizes().iter().map(|&n| gaussian_matrix(rng, d_in * n, d_out * n)).collect();
    AdjointableOperator::from_blocks(desc, d_in, d_out, blocks).expect("shapes follow descriptor")
}
