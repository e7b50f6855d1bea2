//! A frame plus a small Bessel mapping, and the corollaries obtained by
//! reading the Bessel mapping as a difference.

use serde_json::json;

use super::{central_invertible_pair, Check, CheckOptions, ReportBuilder, TheoremId, TheoremReport};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::frame::{BoundSemantics, FrameBounds, FrameMap};
use crate::tol;

/// Norm-sandwich bounds `((‖a₁⁻¹‖⁻¹√A − ‖a₂‖√N)², (‖a₁‖√B + ‖a₂‖√N)²)` for
/// `a₁F + a₂G`.
pub fn predict_sum_bounds(a: f64, b: f64, n: f64, a1: &AlgebraElement, a2: &AlgebraElement) -> Result<FrameBounds> {
    if !(a > 0.0 && b >= a && n >= 0.0 && b.is_finite() && n.is_finite()) {
        return Err(Error::InvalidInput(format!("need 0 < A ≤ B and N ≥ 0, got A={a}, B={b}, N={n}")));
    }
    for (name, x) in [("a1", a1), ("a2", a2)] {
        if !x.is_central(tol::ALGEBRAIC) {
            return Err(Error::HypothesisViolated(format!("{name} is not central")));
        }
    }
    let a1_inv = a1.invert().map_err(|_| Error::HypothesisViolated("a1 is not invertible".into()))?;
    a2.invert().map_err(|_| Error::HypothesisViolated("a2 is not invertible".into()))?;
    let (inv_norm, n1, n2) = (a1_inv.norm(), a1.norm(), a2.norm());
    if n * n2 * n2 >= a / (inv_norm * inv_norm) {
        return Err(Error::HypothesisViolated(format!(
            "N‖a2‖² = {} is not below A‖a1⁻¹‖⁻² = {}",
            n * n2 * n2,
            a / (inv_norm * inv_norm)
        )));
    }
    let lower = (a.sqrt() / inv_norm - n2 * n.sqrt()).powi(2);
    let upper = (n1 * b.sqrt() + n2 * n.sqrt()).powi(2);
    Ok(FrameBounds { lower, upper, semantics: BoundSemantics::Norm })
}

/// `a₁F + a₂G` is a frame when `G` is Bessel with a small enough bound.
pub fn verify_sum_theorem(
    f: &FrameMap,
    g: &FrameMap,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
    opts: CheckOptions,
) -> Result<TheoremReport> {
    f.ensure_compatible(g)?;
    let h = FrameMap::combine(a1, f, a2, g).ok();
    let n = g.bessel_bound();
    Ok(sum_core(TheoremId::Sum3, f, n, a1, a2, h.as_ref(), opts))
}

/// `G` is a frame when `a₂⁻¹G − a₂⁻¹a₁F` is Bessel with a small bound.
pub fn verify_bessel_difference(
    f: &FrameMap,
    g: &FrameMap,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
    opts: CheckOptions,
) -> Result<TheoremReport> {
    f.ensure_compatible(g)?;
    difference_core(TheoremId::Sum4, f, g, a1, a2, opts)
}

/// The `a₁ = −a₂ = 1` case: `F − G` Bessel with bound `N < A`.
pub fn verify_pert_fg_b(f: &FrameMap, g: &FrameMap, opts: CheckOptions) -> Result<TheoremReport> {
    f.ensure_compatible(g)?;
    let one = AlgebraElement::identity(f.descriptor());
    difference_core(TheoremId::PertFgB, f, g, &one, &(-&one), opts)
}

fn difference_core(
    theorem: TheoremId,
    f: &FrameMap,
    g: &FrameMap,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
    opts: CheckOptions,
) -> Result<TheoremReport> {
    // Substituting D = a₂⁻¹G − a₂⁻¹a₁F into the sum theorem gives a₁F + a₂D = G.
    let n = a2
        .invert()
        .ok()
        .filter(|_| a1.is_central(tol::ALGEBRAIC) && a2.is_central(tol::ALGEBRAIC))
        .and_then(|a2_inv| {
            let coef = -&(&a2_inv * a1);
            FrameMap::combine(&a2_inv, g, &coef, f).ok()
        })
        .map(|diff| diff.bessel_bound());
    match n {
        Some(n) => Ok(sum_core(theorem, f, n, a1, a2, Some(g), opts)),
        None => Ok(sum_core(theorem, f, f64::NAN, a1, a2, None, opts)),
    }
}

/// Shared hypothesis and conclusion logic: `target = a₁F + a₂D` where `D`
/// is Bessel with bound `n`.
fn sum_core(
    theorem: TheoremId,
    f: &FrameMap,
    n: f64,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
    target: Option<&FrameMap>,
    opts: CheckOptions,
) -> TheoremReport {
    let mut b = ReportBuilder::new(theorem, opts);
    let fb = f.order_bounds();
    b.measure("A", fb.lower).measure("B", fb.upper).measure("N", n);
    b.hyp(Check::flag("F frame", f.is_frame(opts.tol)));
    let inverses = central_invertible_pair(&mut b, a1, a2);
    let (Some((a1_inv, _)), Some(target)) = (inverses, target) else {
        return b.finish();
    };
    let lhs = n * a2.norm().powi(2);
    let rhs = fb.lower / a1_inv.norm().powi(2);
    b.hyp(Check::lt("N‖a2‖² < A‖a1⁻¹‖⁻²", lhs, rhs));
    if !b.hypothesis_ok() {
        return b.finish();
    }

    let predicted = predict_sum_bounds(fb.lower, fb.upper, n, a1, a2).expect("hypotheses checked above");
    b.predict("lower", predicted.lower).predict("upper", predicted.upper);
    let tb = target.order_bounds();
    b.measure("target_lower", tb.lower).measure("target_upper", tb.upper);
    b.conclude(Check::flag("target frame", target.is_frame(opts.tol)))
        .conclude(Check::ge("order lower ≥ predicted lower", tb.lower, predicted.lower, tol::SAMPLED))
        .conclude(Check::le("order upper ≤ predicted upper", tb.upper, predicted.upper, tol::SAMPLED));

    let sampled = target.norm_bounds_check(predicted.lower, predicted.upper, opts.trials, opts.seed);
    b.measure("sampled_lower", sampled.empirical_lower).measure("sampled_upper", sampled.empirical_upper);
    b.conclude(Check::flag("sampled norm sandwich", sampled.holds()));
    if let Some(v) = &sampled.violation {
        b.witness(json!({ "kind": "norm-sandwich", "violation": v }));
    }
    b.finish()
}
