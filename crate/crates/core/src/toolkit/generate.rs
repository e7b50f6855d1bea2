//! Seeded test-data generation: frames with a prescribed conditioning,
//! central and unitary scalars, perturbations aimed at a hypothesis, and
//! whole scenarios that satisfy each registered theorem's hypotheses by
//! construction.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::scenario::Scenario;
use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::frame::{FrameMap, MeasureSpace};
use crate::linalg::{self, c};
use crate::module::AdjointableOperator;
use crate::perturbation::{self, CheckOptions, DualPerturbationMeasures, PerturbationConstants, TheoremId};
use crate::sampling::{self, derive_seed, SeededRng};
use crate::tol;

/// Attempts allowed for constrained generation before giving up.
pub const RETRY_BUDGET: usize = 100;

/// A frame on `m` atoms of random weight whose order bounds satisfy
/// `upper / lower ≤ condition_target`.
///
/// A random family with frame operator `S` and condition number `κ` is
/// mapped through `S^{-t/2}`, which turns `S` into `S^{1-t}` and the
/// condition number into `κ^{1-t}`; `t = 1` gives a Parseval frame.
pub fn gen_frame(desc: &AlgebraDescriptor, d: usize, m: usize, seed: u64, condition_target: f64) -> Result<FrameMap> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be at least 1".into()));
    }
    if !(condition_target >= 1.0 && condition_target.is_finite()) {
        return Err(Error::InvalidInput(format!("condition target must be ≥ 1, got {condition_target}")));
    }
    if m < d {
        return Err(Error::UnsatisfiableRequest(format!(
            "{m} atoms cannot span A^{d}: a frame needs m·dim(A) ≥ d·dim(A)"
        )));
    }
    let mut rng = sampling::rng(seed);
    for _ in 0..RETRY_BUDGET {
        let weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..2.0)).collect();
        let space = MeasureSpace::new(weights)?;
        let raw = random_map(&mut rng, &space, desc, d);
        let bounds = raw.order_bounds();
        if !(bounds.lower > 1e-6 * bounds.upper) {
            continue;
        }
        let kappa = bounds.upper / bounds.lower;
        let frame = if kappa <= condition_target {
            raw
        } else {
            let t = (1.0 - condition_target.ln() / kappa.ln()).clamp(0.0, 1.0);
            let q = operator_power(&raw.frame_operator(), -t / 2.0);
            raw.map_operator(&q)?
        };
        let b = frame.order_bounds();
        if b.lower > 0.0 && b.upper / b.lower <= condition_target * (1.0 + 1e-9) {
            return Ok(frame);
        }
    }
    Err(Error::UnsatisfiableRequest(format!(
        "no frame with condition ≤ {condition_target} after {RETRY_BUDGET} attempts"
    )))
}

/// `T^p` for positive `T`, block by block.
fn operator_power(t: &AdjointableOperator, p: f64) -> AdjointableOperator {
    let blocks = t.blocks().iter().map(|m| linalg::hermitian_power(m, p)).collect();
    AdjointableOperator::from_blocks(t.descriptor(), t.d_in(), t.d_out(), blocks).expect("same shapes")
}

/// Blockwise scalars `r e^{iθ}` with `r ∈ [0.5, 2]`.
pub fn gen_central(desc: &AlgebraDescriptor, seed: u64) -> AlgebraElement {
    let mut rng = sampling::rng(seed);
    central_from(&mut rng, desc)
}

fn central_from(rng: &mut SeededRng, desc: &AlgebraDescriptor) -> AlgebraElement {
    let lambdas: Vec<_> = (0..desc.num_blocks())
        .map(|_| {
            let r: f64 = rng.random_range(0.5..2.0);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            c(r * theta.cos(), r * theta.sin())
        })
        .collect();
    AlgebraElement::blockwise_scalars(desc, &lambdas)
}

pub fn gen_unitary(desc: &AlgebraDescriptor, seed: u64) -> AlgebraElement {
    let mut rng = sampling::rng(seed);
    let blocks = desc.block_sizes().iter().map(|&n| sampling::unitary_matrix(&mut rng, n)).collect();
    AlgebraElement::from_blocks(desc, blocks).expect("shapes follow descriptor")
}

/// A map with independent Gaussian vectors.
pub fn random_map(rng: &mut SeededRng, space: &MeasureSpace, desc: &AlgebraDescriptor, d: usize) -> FrameMap {
    let vectors = (0..space.len()).map(|_| sampling::module_element(rng, desc, d)).collect();
    FrameMap::new(space, desc, d, vectors).expect("shapes follow space")
}

/// A random map rescaled so that `‖T_Δ‖ = norm` (Bessel bound `norm²`).
pub fn map_with_synthesis_norm(
    rng: &mut SeededRng,
    space: &MeasureSpace,
    desc: &AlgebraDescriptor,
    d: usize,
    norm: f64,
) -> FrameMap {
    let raw = random_map(rng, space, desc, d);
    let current = raw.synthesis_operator().norm();
    if current > 0.0 {
        raw.scale_real(norm / current)
    } else {
        raw
    }
}

/// `I + E` with `‖E‖ = size`.
fn near_identity(rng: &mut SeededRng, desc: &AlgebraDescriptor, d: usize, size: f64) -> AdjointableOperator {
    let e = sampling::operator(rng, desc, d, d);
    let n = e.norm();
    let e = if n > 0.0 { e.scale(c(size / n, 0.0)) } else { e };
    e.try_add(&AdjointableOperator::identity(desc, d)).expect("same shape")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationMode {
    /// `G = F − Δ` with `F − G` Bessel with bound `ε²`.
    BesselDifference,
    /// `K = F + Δ` with `∫‖F−K‖‖G‖dμ = ε` against the canonical dual `G`.
    DualBased,
    /// `G = F + Δ` with `‖T_F − T_G‖ = ε`.
    SynthesisNorm,
}

impl PerturbationMode {
    pub const ALL: [PerturbationMode; 3] =
        [PerturbationMode::BesselDifference, PerturbationMode::DualBased, PerturbationMode::SynthesisNorm];

    pub fn as_str(self) -> &'static str {
        match self {
            PerturbationMode::BesselDifference => "bessel-difference",
            PerturbationMode::DualBased => "dual-based",
            PerturbationMode::SynthesisNorm => "synthesis-norm",
        }
    }
}

impl fmt::Display for PerturbationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PerturbationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown perturbation mode `{s}`")))
    }
}

/// A perturbation of `F` of size `epsilon` that satisfies the hypothesis
/// targeted by `mode`, re-checked before it is returned.
pub fn gen_perturbation(f: &FrameMap, epsilon: f64, mode: PerturbationMode, seed: u64) -> Result<FrameMap> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon must be finite and non-negative, got {epsilon}")));
    }
    let bounds = f.order_bounds();
    if !f.is_frame(tol::RANK) {
        return Err(Error::NotAFrame { lower: bounds.lower });
    }
    let mut rng = sampling::rng(seed);
    let (space, desc, d) = (f.space(), f.descriptor(), f.d());
    let unreachable = |why: String| Err(Error::HypothesisUnreachable(why));
    match mode {
        PerturbationMode::BesselDifference => {
            if epsilon * epsilon >= bounds.lower {
                return unreachable(format!("N = ε² = {} is not below A = {}", epsilon * epsilon, bounds.lower));
            }
            let delta = map_with_synthesis_norm(&mut rng, space, desc, d, epsilon);
            let g = f.try_sub(&delta)?;
            let report = perturbation::verify_pert_fg_b(f, &g, CheckOptions { trials: 8, ..CheckOptions::default() })?;
            if !report.hypothesis.satisfied {
                return unreachable("difference hypothesis not met after construction".into());
            }
            Ok(g)
        }
        PerturbationMode::DualBased => {
            if epsilon >= 1.0 {
                return unreachable(format!("β = ε = {epsilon} must be below 1"));
            }
            let dual = f.canonical_dual()?;
            let delta = random_map(&mut rng, space, desc, d);
            let beta0 = DualPerturbationMeasures::compute(f, &dual, &f.try_sub(&delta)?)?.beta;
            let delta = if beta0 > 0.0 { delta.scale_real(epsilon / beta0) } else { delta };
            let k = f.try_add(&delta)?;
            let beta = DualPerturbationMeasures::compute(f, &dual, &k)?.beta;
            if beta >= 1.0 {
                return unreachable(format!("constructed β = {beta} is not below 1"));
            }
            Ok(k)
        }
        PerturbationMode::SynthesisNorm => {
            let m = f.synthesis_operator().min_singular();
            let riesz = f.is_riesz_type(tol::RANK)?;
            if epsilon >= bounds.lower.sqrt() || (riesz && epsilon >= m) {
                return unreachable(format!("‖T_F − T_G‖ = {epsilon} is too large for A = {}", bounds.lower));
            }
            let delta = map_with_synthesis_norm(&mut rng, space, desc, d, epsilon);
            f.try_add(&delta)
        }
    }
}

/// Algebras, module ranks and extra atoms sampled for campaigns.
const DESCRIPTORS: [&[usize]; 4] = [&[1], &[2], &[1, 2], &[2, 3]];

struct Shape {
    desc: AlgebraDescriptor,
    d: usize,
}

fn pick_shape(rng: &mut SeededRng) -> Shape {
    let sizes = DESCRIPTORS[rng.random_range(0..DESCRIPTORS.len())];
    Shape { desc: AlgebraDescriptor::new(sizes.to_vec()).expect("static descriptors"), d: rng.random_range(1..=3) }
}

fn frame_for(rng: &mut SeededRng, shape: &Shape, riesz: bool, seed: u64) -> Result<FrameMap> {
    let m = if riesz { shape.d } else { shape.d + rng.random_range(0..=2) };
    let kappa = rng.random_range(1.0..8.0);
    gen_frame(&shape.desc, shape.d, m, derive_seed(seed, 1000), kappa)
}

/// A scenario satisfying the hypotheses of `theorem` by construction.
pub fn generate_scenario(theorem: TheoremId, seed: u64) -> Result<Scenario> {
    let mut rng = sampling::rng(seed);
    let shape = pick_shape(&mut rng);
    let scenario = match theorem {
        TheoremId::Sum3 | TheoremId::Sum4 | TheoremId::PertFgB => gen_sum(theorem, &mut rng, &shape, seed)?,
        TheoremId::Pert1 => gen_pert1(&mut rng, &shape, seed)?,
        TheoremId::Pert2 => gen_pert2(&mut rng, &shape, seed)?,
        TheoremId::Kernel => gen_kernel(&mut rng, &shape, seed)?,
        TheoremId::PertD => gen_pert_d(&mut rng, &shape, seed)?,
        TheoremId::RSurjective | TheoremId::RInvertible => gen_r_pair(theorem, &mut rng, &shape, seed)?,
        TheoremId::RS => gen_rs(&mut rng, &shape, seed)?,
    };
    let scenario = scenario.for_theorem(theorem, seed);
    scenario.validate()?;
    Ok(scenario)
}

fn gen_sum(theorem: TheoremId, rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let f = frame_for(rng, shape, false, seed)?;
    let (a1, a2) = if theorem == TheoremId::PertFgB {
        let one = AlgebraElement::identity(&shape.desc);
        (one.clone(), -&one)
    } else {
        (central_from(rng, &shape.desc), central_from(rng, &shape.desc))
    };
    let a = f.order_bounds().lower;
    let limit = a / (a1.invert()?.norm().powi(2) * a2.norm().powi(2));
    let n = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..0.95) * limit };
    let bessel = map_with_synthesis_norm(rng, f.space(), &shape.desc, shape.d, n.sqrt());
    let constants = PerturbationConstants { n: Some(n), ..PerturbationConstants::default() };
    let base = Scenario::new(f.clone()).with_constants(constants);
    Ok(match theorem {
        TheoremId::Sum3 => base.with_g(bessel).with_scalars(a1, a2),
        // a₂⁻¹G − a₂⁻¹a₁F = D  ⇔  G = a₁F + a₂D
        _ => base.with_g(FrameMap::combine(&a1, &f, &a2, &bessel)?).with_scalars(a1, a2),
    })
}

/// `a₂G` as one of three exact forms around `a₁F`, with the constants
/// that make the theorem's hypothesis hold:
/// `a₁F − Δ` (γ only), `(1−α)a₁F − Δ` (α, γ), `(a₁F − Δ)/(1+β)` (β, γ),
/// where `‖T_Δ‖ = γ`.
fn perturbed_forms(
    rng: &mut SeededRng,
    f: &FrameMap,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
    u1: f64,
    gamma: f64,
) -> Result<(FrameMap, PerturbationConstants)> {
    let kappa1 = a1.invert()?.norm() * a1.norm();
    let kappa2 = a2.invert()?.norm() * a2.norm();
    let delta = map_with_synthesis_norm(rng, f.space(), f.descriptor(), f.d(), gamma);
    let a1f = f.scale_frame(a1)?;
    let a2_inv = a2.invert()?;
    let (target, c) = match rng.random_range(0..3) {
        0 => (a1f.try_sub(&delta)?, PerturbationConstants::gamma_only(gamma)),
        1 => {
            let alpha = u1 / kappa1;
            let c = PerturbationConstants { alpha, gamma, ..PerturbationConstants::default() };
            (a1f.scale_real(1.0 - alpha).try_sub(&delta)?, c)
        }
        _ => {
            let beta = u1 / kappa1.max(kappa2);
            let c = PerturbationConstants { beta, gamma, ..PerturbationConstants::default() };
            (a1f.try_sub(&delta)?.scale_real(1.0 / (1.0 + beta)), c)
        }
    };
    Ok((target.scale_frame(&a2_inv)?, c))
}

fn gen_pert1(rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let f = frame_for(rng, shape, false, seed)?;
    let a1 = central_from(rng, &shape.desc);
    let a2 = central_from(rng, &shape.desc);
    let a = f.order_bounds().lower;
    let u1 = rng.random_range(0.05..0.3);
    let u2 = rng.random_range(0.05..0.6);
    let gamma = u2 * a.sqrt() / a1.invert()?.norm();
    let (g, mut c) = perturbed_forms(rng, &f, &a1, &a2, u1, gamma)?;
    // a looser stated γ is still a valid constant
    let loose = PerturbationConstants { gamma: c.gamma * rng.random_range(1.0..1.1), ..c };
    if perturbation::pw_smallness(a, &loose, &a1)?.holds() {
        c = loose;
    }
    Ok(Scenario::new(f).with_g(g).with_scalars(a1, a2).with_constants(c))
}

fn gen_pert2(rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let f = frame_for(rng, shape, true, seed)?;
    let a1 = central_from(rng, &shape.desc);
    let a2 = central_from(rng, &shape.desc);
    let a = f.order_bounds().lower;
    let m = f.synthesis_operator().min_singular();
    let mut scale = 1.0;
    for _ in 0..RETRY_BUDGET {
        let u1 = scale * rng.random_range(0.05..0.3);
        let u2 = scale * rng.random_range(0.05..0.6);
        let gamma = u2 * a.sqrt() / a1.invert()?.norm();
        let (g, c) = perturbed_forms(rng, &f, &a1, &a2, u1, gamma)?;
        if perturbation::riesz_smallness(a, m, &c, &a1, &a2)? < 1.0 {
            return Ok(Scenario::new(f).with_g(g).with_scalars(a1, a2).with_constants(c));
        }
        scale *= 0.7;
    }
    Err(Error::UnsatisfiableRequest("could not meet the Riesz smallness condition".into()))
}

fn gen_kernel(rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let riesz = rng.random_bool(0.5);
    let f = frame_for(rng, shape, riesz, seed)?;
    let (g, alpha, beta) = match rng.random_range(0..3) {
        0 => {
            let c = rng.random_range(0.5..0.99);
            (f.scale_real(c), 1.0 - c, 0.0)
        }
        1 => {
            let e = rng.random_range(0.05..0.6);
            (f.map_operator(&near_identity(rng, &shape.desc, shape.d, e))?, e, 0.0)
        }
        _ => {
            let b = rng.random_range(0.05..0.6);
            (f.scale_real(1.0 / (1.0 + b)), 0.0, b)
        }
    };
    let c = PerturbationConstants { alpha, beta, ..PerturbationConstants::default() };
    Ok(Scenario::new(f).with_g(g).with_constants(c))
}

/// The canonical dual plus `Y(I − P)` with `P = T_F* S⁻¹ T_F`, which keeps
/// `T_F T_G* = I`.
fn alternate_dual(rng: &mut SeededRng, f: &FrameMap) -> Result<FrameMap> {
    let canonical = f.canonical_dual()?;
    let (desc, m) = (f.descriptor(), f.len());
    let tf = f.synthesis_operator();
    let s_inv = f.frame_operator().invert(tol::RANK)?;
    let p = f.analysis_operator().compose(&s_inv.compose(&tf)?)?;
    let complement = AdjointableOperator::identity(desc, m).try_sub(&p)?;
    let y = sampling::operator(rng, desc, m, f.d());
    let scale = 0.5 * canonical.synthesis_operator().norm() / y.norm().max(f64::MIN_POSITIVE);
    let tw = y.scale(c(scale, 0.0)).compose(&complement)?;
    FrameMap::from_synthesis_operator(f.space(), &canonical.synthesis_operator().try_add(&tw)?)
}

fn gen_pert_d(rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let f = frame_for(rng, shape, false, seed)?;
    let g = if rng.random_bool(0.5) { alternate_dual(rng, &f)? } else { f.canonical_dual()? };
    let delta = random_map(rng, f.space(), &shape.desc, shape.d);
    let beta0 = DualPerturbationMeasures::compute(&f, &g, &f.try_add(&delta)?)?.beta;
    let target = rng.random_range(0.05..0.9);
    let k = f.try_add(&delta.scale_real(target / beta0.max(f64::MIN_POSITIVE)))?;
    Ok(Scenario::new(f).with_g(g).with_k(k))
}

/// `G` with its last coordinate removed: never a frame.
fn drop_last_coordinate(f: &FrameMap) -> Result<FrameMap> {
    let d = f.d();
    let mut entries = AdjointableOperator::identity(f.descriptor(), d).entries();
    entries[d - 1][d - 1] = AlgebraElement::zero(f.descriptor());
    f.map_operator(&AdjointableOperator::from_entries(f.descriptor(), &entries)?)
}

fn gen_r_pair(theorem: TheoremId, rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let riesz = theorem == TheoremId::RInvertible || rng.random_bool(0.5);
    let f = frame_for(rng, shape, riesz, seed)?;
    let g = match rng.random_range(0..4) {
        0 => {
            let other = gen_frame(&shape.desc, shape.d, f.len(), derive_seed(seed, 2000), 8.0)?;
            FrameMap::new(f.space(), &shape.desc, shape.d, other.vectors().to_vec())?
        }
        1 => {
            let eps = 0.3 * f.order_bounds().lower.sqrt();
            f.try_add(&map_with_synthesis_norm(rng, f.space(), &shape.desc, shape.d, eps))?
        }
        2 if f.len() >= 2 => {
            let mut vectors = f.vectors().to_vec();
            vectors[1] = vectors[0].clone();
            FrameMap::new(f.space(), &shape.desc, shape.d, vectors)?
        }
        _ => drop_last_coordinate(&f)?,
    };
    Ok(Scenario::new(f).with_g(g))
}

fn gen_rs(rng: &mut SeededRng, shape: &Shape, seed: u64) -> Result<Scenario> {
    let riesz = rng.random_bool(0.3);
    let f = frame_for(rng, shape, riesz, seed)?;
    let b = f.order_bounds();
    let u = rng.random_range(0.05..0.9);
    let g = if rng.random_bool(0.5) {
        // ‖R − S‖ = ‖T_Δ T_F*‖ ≤ ‖T_Δ‖√B
        let delta = map_with_synthesis_norm(rng, f.space(), &shape.desc, shape.d, u * b.lower / b.upper.sqrt());
        f.try_add(&delta)?
    } else {
        // R = Q S_F, so ‖R − S‖ ≤ ‖Q − I‖B
        f.map_operator(&near_identity(rng, &shape.desc, shape.d, u * b.lower / b.upper))?
    };
    let measured = perturbation::build_r(&f, &g)?.distance(&f.frame_operator())?;
    let loose = measured * rng.random_range(1.0..1.1);
    let lambda = (rng.random_bool(0.5) && loose < b.lower).then_some(loose);
    let c = PerturbationConstants { lambda, ..PerturbationConstants::default() };
    Ok(Scenario::new(f).with_g(g).with_constants(c))
}

/// A Hermitian positive matrix with the given spectrum, for tests.
#[cfg(test)]
fn spectrum_matrix(rng: &mut SeededRng, values: &[f64]) -> crate::linalg::CMat {
    use crate::linalg::CMat;
    let n = values.len();
    let u = sampling::unitary_matrix(rng, n);
    let d = CMat::from_fn(n, n, |i, j| if i == j { c(values[i], 0.0) } else { c(0.0, 0.0) });
    &u * d * u.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturbation::Verdict;

    #[test]
    fn frames_are_deterministic_and_conditioned() {
        let desc = AlgebraDescriptor::new(vec![2, 3]).unwrap();
        let a = gen_frame(&desc, 2, 4, 11, 3.0).unwrap();
        let b = gen_frame(&desc, 2, 4, 11, 3.0).unwrap();
        assert_eq!(a, b);
        let bounds = a.order_bounds();
        assert!(bounds.upper / bounds.lower <= 3.0 * (1.0 + 1e-9));

        let tight = gen_frame(&desc, 2, 3, 5, 1.0).unwrap().order_bounds();
        assert!((tight.upper / tight.lower - 1.0).abs() < 1e-6, "{tight:?}");

        assert!(matches!(gen_frame(&desc, 3, 2, 0, 2.0), Err(Error::UnsatisfiableRequest(_))));
    }

    #[test]
    fn scalars_satisfy_their_predicates() {
        let single = AlgebraDescriptor::new(vec![3]).unwrap();
        let z = gen_central(&single, 4);
        assert!(z.is_central(1e-12));
        let b = z.block(0);
        assert!((b - crate::linalg::CMat::identity(3, 3) * b[(0, 0)]).iter().all(|x| x.norm() < 1e-15));

        let two = AlgebraDescriptor::new(vec![2, 3]).unwrap();
        let z = gen_central(&two, 4);
        let s = z.central_scalars(1e-12).unwrap();
        assert!(s[0] != s[1]);

        let u = gen_unitary(&two, 9);
        assert!(u.is_unitary(1e-10));
        assert_eq!(gen_unitary(&two, 9), u);
    }

    #[test]
    fn perturbations_meet_their_hypotheses() {
        let desc = AlgebraDescriptor::new(vec![1, 2]).unwrap();
        let f = gen_frame(&desc, 2, 4, 3, 4.0).unwrap();
        for mode in PerturbationMode::ALL {
            assert_eq!(gen_perturbation(&f, 0.0, mode, 1).unwrap().max_abs_diff(&f), 0.0, "{mode}");
        }
        let a = f.order_bounds().lower;
        let eps = 0.5 * a.sqrt();
        let g = gen_perturbation(&f, eps, PerturbationMode::BesselDifference, 2).unwrap();
        let n = f.try_sub(&g).unwrap().bessel_bound();
        assert!((n - eps * eps).abs() < 1e-10 * (1.0 + n));
        assert!(matches!(
            gen_perturbation(&f, 2.0 * a.sqrt(), PerturbationMode::BesselDifference, 2),
            Err(Error::HypothesisUnreachable(_))
        ));

        let k = gen_perturbation(&f, 0.4, PerturbationMode::DualBased, 2).unwrap();
        let beta = DualPerturbationMeasures::compute(&f, &f.canonical_dual().unwrap(), &k).unwrap().beta;
        assert!((beta - 0.4).abs() < 1e-10);

        let g = gen_perturbation(&f, eps, PerturbationMode::SynthesisNorm, 2).unwrap();
        let dist = f.synthesis_operator().distance(&g.synthesis_operator()).unwrap();
        assert!((dist - eps).abs() < 1e-10);
    }

    #[test]
    fn alternate_duals_are_duals() {
        let desc = AlgebraDescriptor::new(vec![2]).unwrap();
        let f = gen_frame(&desc, 2, 4, 8, 5.0).unwrap();
        let mut rng = sampling::rng(1);
        let g = alternate_dual(&mut rng, &f).unwrap();
        assert!(f.dual_defect(&g).unwrap() < 1e-10);
        assert!(g.max_abs_diff(&f.canonical_dual().unwrap()) > 1e-3);
    }

    #[test]
    fn operator_power_matches_spectrum() {
        let mut rng = sampling::rng(2);
        let m = spectrum_matrix(&mut rng, &[4.0, 9.0]);
        let desc = AlgebraDescriptor::new(vec![1]).unwrap();
        let t = AdjointableOperator::from_blocks(&desc, 2, 2, vec![m]).unwrap();
        let half = operator_power(&t, -0.5);
        let mut ev = half.hermitian_eigenvalues();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0 / 3.0).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn generated_scenarios_satisfy_hypotheses() {
        for theorem in TheoremId::ALL {
            for seed in 0..6 {
                let s = generate_scenario(theorem, seed).unwrap();
                let r = crate::toolkit::verify_scenario(theorem, &s, CheckOptions { trials: 8, seed, tol: tol::RANK })
                    .unwrap();
                assert_eq!(r.verdict, Verdict::Verified, "{theorem} seed {seed}: {r:#?}");
            }
        }
    }
}
