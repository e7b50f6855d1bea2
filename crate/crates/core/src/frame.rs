//! Continuous frames over a finite weighted measure space.
//!
//! `Ω = {ω_1, …, ω_m}` with weights `μ(ω_i) > 0`, so every integral over `Ω`
//! is a weighted sum. `L²(Ω, A)` is identified isometrically with `A^m` via
//! `φ ↦ (√μ_i φ(ω_i))_i`; that is the coordinate system in which the
//! synthesis operator `T_F: L² → U` is stored as an [`AdjointableOperator`].

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::module::{AdjointableOperator, ModuleElement};
use crate::sampling;
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::repr::MeasureSpaceRepr", try_from = "crate::repr::MeasureSpaceRepr")]
pub struct MeasureSpace {
    weights: Vec<f64>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpace("at least one atom is required".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpace(format!("weight {w} is not a positive finite number")));
        }
        Ok(Self { weights })
    }

    /// `m` atoms of unit weight.
    pub fn counting(m: usize) -> Self {
        Self { weights: vec![1.0; m] }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn restrict(&self, atoms: &[usize]) -> Result<Self> {
        Self::new(atoms.iter().map(|&i| self.weights[i]).collect())
    }

    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| w * factor).collect())
    }

    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!("weights {:?} vs {:?}", self.weights, other.weights)))
        }
    }
}

/// An element `φ: Ω → A` of `L²(Ω, A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct L2Element {
    space: MeasureSpace,
    desc: AlgebraDescriptor,
    values: Vec<AlgebraElement>,
}

impl L2Element {
    pub fn new(space: &MeasureSpace, desc: &AlgebraDescriptor, values: Vec<AlgebraElement>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::SpaceMismatch(format!("{} values for {} atoms", values.len(), space.len())));
        }
        for v in &values {
            desc.ensure_same(v.descriptor())?;
        }
        Ok(Self { space: space.clone(), desc: desc.clone(), values })
    }

    pub fn zero(space: &MeasureSpace, desc: &AlgebraDescriptor) -> Self {
        Self { space: space.clone(), desc: desc.clone(), values: vec![AlgebraElement::zero(desc); space.len()] }
    }

    /// `value` at atom `j`, zero elsewhere.
    pub fn indicator(space: &MeasureSpace, desc: &AlgebraDescriptor, j: usize, value: AlgebraElement) -> Self {
        let mut phi = Self::zero(space, desc);
        phi.values[j] = value;
        phi
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn values(&self) -> &[AlgebraElement] {
        &self.values
    }

    /// `⟨φ, ψ⟩ = Σ_i μ_i φ(ω_i) ψ(ω_i)*`.
    pub fn inner(&self, other: &Self) -> Result<AlgebraElement> {
        self.space.ensure_same(&other.space)?;
        self.desc.ensure_same(&other.desc)?;
        let mut acc = AlgebraElement::zero(&self.desc);
        for ((p, q), &w) in self.values.iter().zip(&other.values).zip(self.space.weights()) {
            acc = &acc + &(p * &q.adjoint()).scale_real(w);
        }
        Ok(acc)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).expect("self-compatible").norm().sqrt()
    }

    pub fn scale_real(&self, x: f64) -> Self {
        Self { values: self.values.iter().map(|v| v.scale_real(x)).collect(), ..self.clone() }
    }

    /// Zero outside `atoms`.
    pub fn restrict_support(&self, atoms: &[usize]) -> Self {
        let mut out = Self::zero(&self.space, &self.desc);
        for &i in atoms {
            out.values[i] = self.values[i].clone();
        }
        out
    }

    /// The isometric image `(√μ_i φ(ω_i))_i` in `A^m`.
    pub fn to_module(&self) -> ModuleElement {
        let coords = self.values.iter().zip(self.space.weights()).map(|(v, w)| v.scale_real(w.sqrt())).collect();
        ModuleElement::new(&self.desc, coords).expect("m > 0")
    }

    pub fn from_module(space: &MeasureSpace, f: &ModuleElement) -> Result<Self> {
        if f.d() != space.len() {
            return Err(Error::SpaceMismatch("module rank differs from atom count".into()));
        }
        let values = f.coords().iter().zip(space.weights()).map(|(v, w)| v.scale_real(1.0 / w.sqrt())).collect();
        Self::new(space, f.descriptor(), values)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSemantics {
    /// `A⟨f,f⟩ ≤ ∫⟨f,F⟩⟨F,f⟩ ≤ B⟨f,f⟩` in the C*-order.
    Order,
    /// `A‖⟨f,f⟩‖ ≤ ‖∫⟨f,F⟩⟨F,f⟩‖ ≤ B‖⟨f,f⟩‖`.
    Norm,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub semantics: BoundSemantics,
}

/// A family `F: Ω → U = A^d`. Nothing forces it to be a frame; the
/// predicates decide.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::repr::FrameMapRepr", try_from = "crate::repr::FrameMapRepr")]
pub struct FrameMap {
    space: MeasureSpace,
    desc: AlgebraDescriptor,
    d: usize,
    vectors: Vec<ModuleElement>,
}

impl FrameMap {
    pub fn new(space: &MeasureSpace, desc: &AlgebraDescriptor, d: usize, vectors: Vec<ModuleElement>) -> Result<Self> {
        if vectors.len() != space.len() {
            return Err(Error::SpaceMismatch(format!("{} vectors for {} atoms", vectors.len(), space.len())));
        }
        for v in &vectors {
            desc.ensure_same(v.descriptor())?;
            if v.d() != d {
                return Err(Error::DimensionMismatch(format!("vector has d = {}, expected {d}", v.d())));
            }
        }
        Ok(Self { space: space.clone(), desc: desc.clone(), d, vectors })
    }

    /// `F(ω_j) = e_j` on `d` atoms of unit weight.
    pub fn standard_basis(desc: &AlgebraDescriptor, d: usize) -> Self {
        Self {
            space: MeasureSpace::counting(d),
            desc: desc.clone(),
            d,
            vectors: (0..d).map(|j| ModuleElement::basis(desc, d, j)).collect(),
        }
    }

    pub fn zero(space: &MeasureSpace, desc: &AlgebraDescriptor, d: usize) -> Self {
        Self { space: space.clone(), desc: desc.clone(), d, vectors: vec![ModuleElement::zero(desc, d); space.len()] }
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn descriptor(&self) -> &AlgebraDescriptor {
        &self.desc
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[ModuleElement] {
        &self.vectors
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.space.ensure_same(&other.space)?;
        self.desc.ensure_same(&other.desc)?;
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("d = {} vs {}", self.d, other.d)));
        }
        Ok(())
    }

    fn ensure_module(&self, f: &ModuleElement) -> Result<()> {
        self.desc.ensure_same(f.descriptor())?;
        if f.d() != self.d {
            return Err(Error::DimensionMismatch(format!("element has d = {}, frame has d = {}", f.d(), self.d)));
        }
        Ok(())
    }

    fn with_vectors(&self, vectors: Vec<ModuleElement>) -> Self {
        Self { vectors, ..self.clone() }
    }

    /// `ω ↦ a·F(ω)`.
    pub fn scale_frame(&self, a: &AlgebraElement) -> Result<Self> {
        self.desc.ensure_same(a.descriptor())?;
        Ok(self.with_vectors(self.vectors.iter().map(|v| v.left_mul(a)).collect()))
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.with_vectors(self.vectors.iter().map(|v| v.scale_real(x)).collect())
    }

    /// `ω ↦ a₁F(ω) + a₂G(ω)`.
    pub fn combine(a1: &AlgebraElement, f: &Self, a2: &AlgebraElement, g: &Self) -> Result<Self> {
        f.ensure_compatible(g)?;
        let vectors = f.vectors.iter().zip(&g.vectors).map(|(x, y)| &x.left_mul(a1) + &y.left_mul(a2)).collect();
        Ok(f.with_vectors(vectors))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(self.with_vectors(self.vectors.iter().zip(&other.vectors).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        Ok(self.with_vectors(self.vectors.iter().zip(&other.vectors).map(|(a, b)| a - b).collect()))
    }

    /// `ω ↦ Q(F(ω))` for an operator `Q` on `U`.
    pub fn map_operator(&self, q: &AdjointableOperator) -> Result<Self> {
        let vectors = self.vectors.iter().map(|v| q.apply(v)).collect::<Result<Vec<_>>>()?;
        Ok(self.with_vectors(vectors))
    }

    /// The family on the sub-space `atoms ⊆ Ω`.
    pub fn restrict(&self, atoms: &[usize]) -> Result<Self> {
        Self::new(
            &self.space.restrict(atoms)?,
            &self.desc,
            self.d,
            atoms.iter().map(|&i| self.vectors[i].clone()).collect(),
        )
    }

    /// `F` with an extra atom carrying `vector` at weight `weight`.
    pub fn push_atom(&self, vector: ModuleElement, weight: f64) -> Result<Self> {
        let mut weights = self.space.weights().to_vec();
        weights.push(weight);
        let mut vectors = self.vectors.clone();
        vectors.push(vector);
        Self::new(&MeasureSpace::new(weights)?, &self.desc, self.d, vectors)
    }

    /// `T_F` in the coordinates `L² ≅ A^m`: entry `(i, j)` is `√μ_i F(ω_i)_j`.
    pub fn synthesis_operator(&self) -> AdjointableOperator {
        let blocks = self
            .desc
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let mut m = CMat::zeros(self.len() * n, self.d * n);
                for (i, (v, w)) in self.vectors.iter().zip(self.space.weights()).enumerate() {
                    m.view_mut((i * n, 0), (n, self.d * n)).copy_from(&v.block_row(k).scale(w.sqrt()));
                }
                m
            })
            .collect();
        AdjointableOperator::from_blocks(&self.desc, self.len(), self.d, blocks).expect("consistent shapes")
    }

    /// Inverse of [`FrameMap::synthesis_operator`]: reads `F(ω_i)` off row
    /// block `i`, dividing out `√μ_i`.
    pub fn from_synthesis_operator(space: &MeasureSpace, t: &AdjointableOperator) -> Result<Self> {
        if t.d_in() != space.len() {
            return Err(Error::SpaceMismatch(format!(
                "operator has domain A^{}, space has {} atoms",
                t.d_in(),
                space.len()
            )));
        }
        let desc = t.descriptor();
        let vectors = space
            .weights()
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                let rows: Vec<CMat> = desc
                    .block_sizes()
                    .iter()
                    .zip(t.blocks())
                    .map(|(&n, m)| m.view((i * n, 0), (n, t.d_out() * n)).unscale(w.sqrt()))
                    .collect();
                ModuleElement::from_block_rows(desc, t.d_out(), &rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, desc, t.d_out(), vectors)
    }

    pub fn analysis_operator(&self) -> AdjointableOperator {
        self.synthesis_operator().adjoint()
    }

    /// `T_F φ = Σ_i μ_i φ(ω_i) F(ω_i)`.
    pub fn synthesis_apply(&self, phi: &L2Element) -> Result<ModuleElement> {
        self.space.ensure_same(phi.space())?;
        let mut acc = ModuleElement::zero(&self.desc, self.d);
        for ((v, p), &w) in self.vectors.iter().zip(phi.values()).zip(self.space.weights()) {
            self.desc.ensure_same(p.descriptor())?;
            acc = &acc + &v.left_mul(&p.scale_real(w));
        }
        Ok(acc)
    }

    /// `(T_F* f)(ω) = ⟨f, F(ω)⟩`.
    pub fn analysis_apply(&self, f: &ModuleElement) -> Result<L2Element> {
        self.ensure_module(f)?;
        let values = self.vectors.iter().map(|v| f.inner(v)).collect::<Result<Vec<_>>>()?;
        L2Element::new(&self.space, &self.desc, values)
    }

    /// `S_F = T_F T_F*`.
    pub fn frame_operator(&self) -> AdjointableOperator {
        self.synthesis_operator().compose(&self.analysis_operator()).expect("T_F and T_F* compose")
    }

    /// `∫⟨f,F(ω)⟩⟨F(ω),f⟩dμ(ω)`, the middle term of the frame inequality.
    pub fn frame_integrand(&self, f: &ModuleElement) -> Result<AlgebraElement> {
        self.ensure_module(f)?;
        let mut acc = AlgebraElement::zero(&self.desc);
        for (v, &w) in self.vectors.iter().zip(self.space.weights()) {
            let x = f.inner(v)?;
            acc = &acc + &(&x * &x.adjoint()).scale_real(w);
        }
        Ok(acc)
    }

    /// Optimal order bounds: extreme eigenvalues of `S_F`.
    pub fn order_bounds(&self) -> FrameBounds {
        let ev = self.frame_operator().hermitian_eigenvalues();
        FrameBounds {
            lower: ev.first().copied().unwrap_or(0.0).max(0.0),
            upper: ev.last().copied().unwrap_or(0.0).max(0.0),
            semantics: BoundSemantics::Order,
        }
    }

    /// Upper order bound; the Bessel bound used in every perturbation formula.
    pub fn bessel_bound(&self) -> f64 {
        self.order_bounds().upper
    }

    /// Positive lower bound relative to the upper one.
    pub fn is_frame(&self, tol: f64) -> bool {
        let b = self.order_bounds();
        b.upper > 0.0 && b.lower > tol * b.upper
    }

    fn require_frame(&self, tol: f64) -> Result<FrameBounds> {
        let b = self.order_bounds();
        if b.upper > 0.0 && b.lower > tol * b.upper {
            Ok(b)
        } else {
            Err(Error::NotAFrame { lower: b.lower })
        }
    }

    /// Sampled check of the norm sandwich
    /// `A‖⟨f,f⟩‖ ≤ ‖∫⟨f,F⟩⟨F,f⟩‖ ≤ B‖⟨f,f⟩‖`.
    pub fn norm_bounds_check(&self, lower: f64, upper: f64, trials: usize, seed: u64) -> NormBoundsReport {
        let mut report = NormBoundsReport {
            lower,
            upper,
            samples: 0,
            empirical_lower: f64::INFINITY,
            empirical_upper: 0.0,
            violation: None,
        };
        for f in norm_probe_elements(self, trials, seed) {
            let ff = f.inner(&f).expect("same module").norm();
            if ff <= 0.0 {
                continue;
            }
            let ratio = self.frame_integrand(&f).expect("same module").norm() / ff;
            report.samples += 1;
            report.empirical_lower = report.empirical_lower.min(ratio);
            report.empirical_upper = report.empirical_upper.max(ratio);
            if report.violation.is_none() {
                let side = if ratio < lower - tol::SAMPLED {
                    Some(BoundSide::Lower)
                } else if ratio > upper + tol::SAMPLED {
                    Some(BoundSide::Upper)
                } else {
                    None
                };
                if let Some(side) = side {
                    report.violation = Some(NormViolation { side, ratio, witness: f });
                }
            }
        }
        report
    }

    /// Norm-semantics bounds estimated by the sampler.
    pub fn sampled_norm_bounds(&self, trials: usize, seed: u64) -> FrameBounds {
        let r = self.norm_bounds_check(0.0, f64::INFINITY, trials, seed);
        FrameBounds { lower: r.empirical_lower, upper: r.empirical_upper, semantics: BoundSemantics::Norm }
    }

    /// `ω ↦ S_F⁻¹F(ω)`.
    pub fn canonical_dual(&self) -> Result<Self> {
        self.require_frame(tol::RANK)?;
        let s_inv = self.frame_operator().invert(tol::RANK)?;
        self.map_operator(&s_inv)
    }

    /// `‖T_F T_G* − I‖ ≤ tol`.
    pub fn is_dual_pair(&self, g: &Self, tol: f64) -> Result<bool> {
        Ok(self.dual_defect(g)? <= tol)
    }

    /// `‖T_F T_G* − I‖`.
    pub fn dual_defect(&self, g: &Self) -> Result<f64> {
        self.ensure_compatible(g)?;
        let tfg = self.synthesis_operator().compose(&g.analysis_operator())?;
        tfg.distance(&AdjointableOperator::identity(&self.desc, self.d))
    }

    /// Riesz-type: the analysis operator is onto.
    pub fn is_riesz_type(&self, tol: f64) -> Result<bool> {
        self.require_frame(tol)?;
        Ok(self.analysis_operator().is_surjective(tol))
    }

    /// `⟨f, F(ω)⟩ = 0 for all ω ⇒ f = 0`.
    pub fn is_mu_complete(&self, tol: f64) -> bool {
        self.analysis_operator().is_injective(tol)
    }

    /// Continuous Riesz basis check by enumerating measurable subsets.
    ///
    /// With `bounds = None` the optimal constants are reported and the
    /// verdict is whether any positive pair works. Subsets are all non-empty
    /// subsets when `|Ω| ≤ 20`, otherwise `subsets` must be supplied.
    pub fn riesz_basis_check(
        &self,
        bounds: Option<(f64, f64)>,
        tol: f64,
        subsets: Option<&[Vec<usize>]>,
        samples_per_subset: usize,
        seed: u64,
    ) -> Result<RieszBasisReport> {
        let m = self.len();
        let owned;
        let subsets: &[Vec<usize>] = match subsets {
            Some(s) => s,
            None if m <= MAX_ENUMERATED_ATOMS => {
                owned = (1u32..(1u32 << m))
                    .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
                    .collect::<Vec<_>>();
                &owned
            }
            None => return Err(Error::TooManyAtoms { atoms: m }),
        };
        let mu_complete = self.is_mu_complete(tol);
        let mut optimal_lower = f64::INFINITY;
        let mut optimal_upper: f64 = 0.0;
        let mut sampled_violation = None;
        let mut rng = sampling::rng(seed);
        for atoms in subsets {
            if atoms.is_empty() {
                continue;
            }
            if let Some(&bad) = atoms.iter().find(|&&i| i >= m) {
                return Err(Error::InvalidInput(format!("subset references atom {bad} of {m}")));
            }
            let t = self.synthesis_operator_on(atoms);
            optimal_lower = optimal_lower.min(t.min_singular());
            optimal_upper = optimal_upper.max(t.norm());
            if let Some((a, b)) = bounds {
                for _ in 0..samples_per_subset {
                    let phi = sampling::l2_element(&mut rng, &self.space, &self.desc).restrict_support(atoms);
                    let n = phi.norm();
                    if n == 0.0 {
                        continue;
                    }
                    let ratio = self.synthesis_apply(&phi)?.norm() / n;
                    if sampled_violation.is_none() && (ratio < a - tol::SAMPLED || ratio > b + tol::SAMPLED) {
                        sampled_violation = Some((atoms.clone(), ratio));
                    }
                }
            }
        }
        let exists = mu_complete && optimal_lower > tol * optimal_upper.max(f64::MIN_POSITIVE);
        let holds_for_given = bounds.is_none_or(|(a, b)| {
            a > 0.0
                && a <= optimal_lower + tol::SAMPLED
                && optimal_upper <= b + tol::SAMPLED
                && sampled_violation.is_none()
        });
        let riesz_type = if self.is_frame(tol) { self.is_riesz_type(tol).ok() } else { None };
        Ok(RieszBasisReport {
            mu_complete,
            subsets_checked: subsets.iter().filter(|s| !s.is_empty()).count(),
            optimal_lower,
            optimal_upper,
            sampled_violation,
            passes: exists && holds_for_given,
            riesz_type,
        })
    }

    /// `T_F` restricted to `L²(Ω₁, A)` for `Ω₁ = atoms`.
    fn synthesis_operator_on(&self, atoms: &[usize]) -> AdjointableOperator {
        self.restrict(atoms).expect("valid atoms").synthesis_operator()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.vectors.iter().zip(&other.vectors).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}

pub const MAX_ENUMERATED_ATOMS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormViolation {
    pub side: BoundSide,
    pub ratio: f64,
    pub witness: ModuleElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormBoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub samples: usize,
    pub empirical_lower: f64,
    pub empirical_upper: f64,
    pub violation: Option<NormViolation>,
}

impl NormBoundsReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszBasisReport {
    pub mu_complete: bool,
    pub subsets_checked: usize,
    /// `min` over subsets of the best lower synthesis constant.
    pub optimal_lower: f64,
    pub optimal_upper: f64,
    pub sampled_violation: Option<(Vec<usize>, f64)>,
    pub passes: bool,
    /// `is_riesz_type` when `F` is a frame, for the cross-check.
    pub riesz_type: Option<bool>,
}

/// Probe elements for norm-sandwich sampling: eigen-directions of `S_F`,
/// coordinate directions, then `trials` random elements (full-rank,
/// rank-one, and extreme-eigenvector mixtures).
pub fn norm_probe_elements(frame: &FrameMap, trials: usize, seed: u64) -> Vec<ModuleElement> {
    let desc = frame.descriptor();
    let d = frame.d();
    let s = frame.frame_operator();
    let mut probes = Vec::new();
    let mut extremes = Vec::new();
    for (k, m) in s.blocks().iter().enumerate() {
        let (values, vectors) = linalg::hermitian_eigen(m);
        for col in 0..values.len() {
            let row: Vec<_> = vectors.column(col).iter().map(|z| z.conj()).collect();
            let f = ModuleElement::rank_one(desc, d, k, &row).expect("eigenvector length matches");
            if col == 0 || col + 1 == values.len() {
                extremes.push(f.clone());
            }
            probes.push(f);
        }
    }
    for j in 0..d {
        probes.push(ModuleElement::basis(desc, d, j));
    }
    let mut rng = sampling::rng(seed);
    for t in 0..trials {
        let f = match t % 4 {
            0 | 1 => sampling::unit_module_element(&mut rng, desc, d),
            2 => sampling::rank_one_module_element(&mut rng, desc, d),
            _ => {
                let mut acc = ModuleElement::zero(desc, d);
                for e in &extremes {
                    acc = &acc + &e.left_mul(&sampling::algebra_element(&mut rng, desc));
                }
                acc
            }
        };
        probes.push(f);
    }
    probes
}
