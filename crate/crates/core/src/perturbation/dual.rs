//! Perturbing a frame that has a known dual.

use serde::Serialize;
use serde_json::json;

use super::{Check, CheckOptions, ReportBuilder, TheoremId, TheoremReport};
use crate::error::Result;
use crate::frame::FrameMap;
use crate::tol;

/// `α = ∫‖F − K‖²dμ` and `β = ∫‖F − K‖‖G‖dμ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualPerturbationMeasures {
    pub alpha: f64,
    pub beta: f64,
}

impl DualPerturbationMeasures {
    pub fn compute(f: &FrameMap, g: &FrameMap, k: &FrameMap) -> Result<Self> {
        f.ensure_compatible(g)?;
        f.ensure_compatible(k)?;
        let mut alpha = 0.0;
        let mut beta = 0.0;
        for ((fv, gv), (kv, &w)) in f.vectors().iter().zip(g.vectors()).zip(k.vectors().iter().zip(f.space().weights()))
        {
            let diff = (fv - kv).norm();
            alpha += w * diff * diff;
            beta += w * diff * gv.norm();
        }
        Ok(Self { alpha, beta })
    }
}

/// `K` is a frame when it is close to `F` in the weighted sense measured
/// against a dual `G` of `F`.
pub fn verify_dual_perturbation(f: &FrameMap, g: &FrameMap, k: &FrameMap, opts: CheckOptions) -> Result<TheoremReport> {
    let m = DualPerturbationMeasures::compute(f, g, k)?;
    let mut b = ReportBuilder::new(TheoremId::PertD, opts);
    let fb = f.order_bounds();
    let d = g.bessel_bound();
    let defect = f.dual_defect(g)?;
    b.measure("A", fb.lower)
        .measure("B", fb.upper)
        .measure("D", d)
        .measure("alpha", m.alpha)
        .measure("beta", m.beta)
        .measure("dual_defect", defect);
    b.hyp(Check::flag("F frame", f.is_frame(opts.tol)))
        .hyp(Check::le("G dual of F: ‖T_F T_G* − I‖", defect, 0.0, tol::SAMPLED))
        .hyp(Check::lt("β < 1", m.beta, 1.0));
    if !b.hypothesis_ok() {
        return Ok(b.finish());
    }

    let tk_bound = m.alpha.sqrt() + fb.upper.sqrt();
    let lower = (1.0 - m.beta).powi(2) / d;
    let upper = tk_bound * tk_bound;
    b.predict("lower", lower)
        .predict("upper", upper)
        .predict("T_K_bound", tk_bound)
        .predict("L_norm_bound", 1.0 + m.beta)
        .predict("L_inverse_bound", 1.0 / (1.0 - m.beta))
        .predict("L_minus_I_bound", m.beta);

    // L = R_{G,K} = T_K T_G*: ⟨Lf, h⟩ = ∫⟨f, G(ω)⟩⟨K(ω), h⟩dμ(ω).
    let l = k.synthesis_operator().compose(&g.analysis_operator())?;
    let l_norm = l.norm();
    let l_minus_i = l.distance(&l.identity_like())?;
    let tk = k.synthesis_operator().norm();
    b.measure("L_norm", l_norm).measure("L_minus_I", l_minus_i).measure("T_K_norm", tk);
    b.conclude(Check::le("‖L − I‖ ≤ β", l_minus_i, m.beta, tol::ALGEBRAIC))
        .conclude(Check::le("‖L‖ ≤ 1 + β", l_norm, 1.0 + m.beta, tol::ALGEBRAIC))
        .conclude(Check::le("‖T_K‖ ≤ √α + √B", tk, tk_bound, tol::ALGEBRAIC));
    match l.invert(opts.tol) {
        Ok(inv) => {
            let n = inv.norm();
            b.measure("L_inverse_norm", n);
            b.conclude(Check::le("‖L⁻¹‖ ≤ 1/(1 − β)", n, 1.0 / (1.0 - m.beta), tol::SAMPLED));
        }
        Err(_) => {
            b.conclude(Check::flag("L invertible", false));
        }
    }

    let kb = k.order_bounds();
    b.measure("K_lower", kb.lower).measure("K_upper", kb.upper);
    b.conclude(Check::flag("K frame", k.is_frame(opts.tol)))
        .conclude(Check::ge("K lower ≥ (1−β)²/D", kb.lower, lower, tol::SAMPLED))
        .conclude(Check::le("K upper ≤ (√α+√B)²", kb.upper, upper, tol::SAMPLED));
    let sampled = k.norm_bounds_check(lower, upper, opts.trials, opts.seed);
    b.measure("K_sampled_lower", sampled.empirical_lower);
    b.conclude(Check::flag("sampled norm sandwich of K", sampled.holds()));
    if let Some(v) = &sampled.violation {
        b.witness(json!({ "kind": "norm-sandwich", "violation": v }));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraDescriptor, AlgebraElement};
    use crate::frame::MeasureSpace;
    use crate::linalg::c;
    use crate::module::ModuleElement;
    use crate::perturbation::Verdict;

    fn scalar_frame(vectors: &[[f64; 2]]) -> FrameMap {
        let desc = AlgebraDescriptor::complex();
        let vs = vectors
            .iter()
            .map(|v| {
                ModuleElement::new(&desc, v.iter().map(|&x| AlgebraElement::scalar(&desc, c(x, 0.0))).collect())
                    .unwrap()
            })
            .collect();
        FrameMap::new(&MeasureSpace::counting(vectors.len()), &desc, 2, vs).unwrap()
    }

    #[test]
    fn shifted_standard_basis_fixture() {
        let f = scalar_frame(&[[1.0, 0.0], [0.0, 1.0]]);
        let k = scalar_frame(&[[1.1, 0.0], [0.1, 1.0]]);
        let r = verify_dual_perturbation(&f, &f, &k, CheckOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "{r:#?}");
        assert!((r.measured["alpha"] - 0.02).abs() < 1e-12);
        assert!((r.measured["beta"] - 0.2).abs() < 1e-12);
        assert!((r.predicted["lower"] - 0.64).abs() < 1e-12);
        assert!((r.predicted["upper"] - (0.02f64.sqrt() + 1.0).powi(2)).abs() < 1e-12);
        // S_K = [[1.22, 0.1], [0.1, 1]]
        let disc = (0.11f64 * 0.11 + 0.01).sqrt();
        assert!((r.measured["K_lower"] - (1.11 - disc)).abs() < 1e-12);
        assert!((r.measured["K_upper"] - (1.11 + disc)).abs() < 1e-12);
    }

    #[test]
    fn unperturbed_and_guard() {
        let f = scalar_frame(&[[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]);
        let g = f.canonical_dual().unwrap();
        let r = verify_dual_perturbation(&f, &g, &f, CheckOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "{r:#?}");
        assert_eq!(r.measured["beta"], 0.0);
        assert!(r.measured["L_minus_I"] < 1e-12);

        let far = f.scale_real(3.0);
        let r = verify_dual_perturbation(&f, &g, &far, CheckOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisViolated);

        let r = verify_dual_perturbation(&f, &f, &f, CheckOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisViolated, "F is not its own dual here");
    }
}
