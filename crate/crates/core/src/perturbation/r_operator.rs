//! The mixed frame operator `R_{F,G} f = ∫⟨f, F(ω)⟩G(ω)dμ(ω) = T_G T_F* f`.

use super::{Check, CheckOptions, ReportBuilder, TheoremId, TheoremReport};
use crate::error::Result;
use crate::frame::FrameMap;
use crate::module::AdjointableOperator;
use crate::tol;

pub fn build_r(f: &FrameMap, g: &FrameMap) -> Result<AdjointableOperator> {
    f.ensure_compatible(g)?;
    g.synthesis_operator().compose(&f.analysis_operator())
}

fn flag(x: bool) -> f64 {
    f64::from(u8::from(x))
}

fn riesz(f: &FrameMap, tol: f64) -> bool {
    f.is_riesz_type(tol).unwrap_or(false)
}

/// `R_{F,G}` onto forces `G` to be a frame; the converse holds for Riesz-type
/// `F`.
pub fn check_r_surjective(f: &FrameMap, g: &FrameMap, opts: CheckOptions) -> Result<TheoremReport> {
    let r = build_r(f, g)?;
    let mut b = ReportBuilder::new(TheoremId::RSurjective, opts);
    b.hyp(Check::flag("F frame", f.is_frame(opts.tol)));
    if !b.hypothesis_ok() {
        return Ok(b.finish());
    }
    let onto = r.is_surjective(opts.tol);
    let g_frame = g.is_frame(opts.tol);
    let f_riesz = riesz(f, opts.tol);
    b.measure("R_min_singular", r.adjoint().min_singular())
        .measure("R_norm", r.norm())
        .measure("R_surjective", flag(onto))
        .measure("G_frame", flag(g_frame))
        .measure("F_riesz", flag(f_riesz))
        .measure("G_lower", g.order_bounds().lower);
    b.conclude(Check::flag("R onto ⇒ G frame", !onto || g_frame))
        .conclude(Check::flag("F Riesz-type ∧ G frame ⇒ R onto", !(f_riesz && g_frame) || onto));
    Ok(b.finish())
}

/// For Riesz-type `F`: `R_{F,G}` is invertible exactly when `G` is Riesz-type.
pub fn check_r_invertible(f: &FrameMap, g: &FrameMap, opts: CheckOptions) -> Result<TheoremReport> {
    let r = build_r(f, g)?;
    let mut b = ReportBuilder::new(TheoremId::RInvertible, opts);
    b.hyp(Check::flag("F Riesz-type", riesz(f, opts.tol)));
    if !b.hypothesis_ok() {
        return Ok(b.finish());
    }
    let invertible = r.invert(opts.tol).is_ok();
    let g_riesz = riesz(g, opts.tol);
    b.measure("R_min_singular", r.min_singular())
        .measure("R_norm", r.norm())
        .measure("R_invertible", flag(invertible))
        .measure("G_riesz", flag(g_riesz));
    b.conclude(Check::flag("R invertible ⇔ G Riesz-type", invertible == g_riesz));
    Ok(b.finish())
}

/// `‖R_{F,G} − S_F‖ ≤ λ < A` makes `G` a frame, with `R*` bounded below by
/// `A − λ`, and `F` Riesz-type exactly when `G` is. `λ` defaults to the
/// measured distance.
pub fn verify_rs_theorem(f: &FrameMap, g: &FrameMap, lambda: Option<f64>, opts: CheckOptions) -> Result<TheoremReport> {
    let r = build_r(f, g)?;
    let s = f.frame_operator();
    let distance = r.distance(&s)?;
    let lambda = lambda.unwrap_or(distance);
    let a = f.order_bounds().lower;
    let mut b = ReportBuilder::new(TheoremId::RS, opts);
    b.measure("A", a).measure("R_minus_S", distance).predict("lambda", lambda);
    b.hyp(Check::flag("F frame", f.is_frame(opts.tol)))
        .hyp(Check::ge("λ ≥ 0", lambda, 0.0, 0.0))
        .hyp(Check::le("‖R − S_F‖ ≤ λ", distance, lambda, tol::ALGEBRAIC * (1.0 + lambda)))
        .hyp(Check::lt("λ < A", lambda, a));
    if !b.hypothesis_ok() {
        return Ok(b.finish());
    }
    let r_star_min = r.adjoint().min_singular();
    let f_riesz = riesz(f, opts.tol);
    let g_riesz = riesz(g, opts.tol);
    b.predict("R_star_lower", a - lambda)
        .measure("R_star_min_singular", r_star_min)
        .measure("G_lower", g.order_bounds().lower)
        .measure("F_riesz", flag(f_riesz))
        .measure("G_riesz", flag(g_riesz));
    b.conclude(Check::ge("min singular of R*", r_star_min, a - lambda, tol::SAMPLED))
        .conclude(Check::flag("R invertible", r.invert(opts.tol).is_ok()))
        .conclude(Check::flag("G frame", g.is_frame(opts.tol)))
        .conclude(Check::flag("F Riesz-type ⇔ G Riesz-type", f_riesz == g_riesz));
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;
    use crate::frame::MeasureSpace;
    use crate::perturbation::Verdict;
    use crate::sampling;

    fn random_frame(seed: u64, m: usize) -> FrameMap {
        let desc = AlgebraDescriptor::new(vec![2, 1]).unwrap();
        let mut rng = sampling::rng(seed);
        let vectors = (0..m).map(|_| sampling::module_element(&mut rng, &desc, 2)).collect();
        FrameMap::new(&MeasureSpace::new((1..=m).map(|i| i as f64 * 0.5).collect()).unwrap(), &desc, 2, vectors)
            .unwrap()
    }

    #[test]
    fn r_matches_pointwise_definition() {
        let f = random_frame(1, 4);
        let g = random_frame(2, 4);
        let r = build_r(&f, &g).unwrap();
        let mut rng = sampling::rng(3);
        for _ in 0..10 {
            let x = sampling::module_element(&mut rng, f.descriptor(), 2);
            let mut direct = crate::module::ModuleElement::zero(f.descriptor(), 2);
            for ((fv, gv), &w) in f.vectors().iter().zip(g.vectors()).zip(f.space().weights()) {
                direct = &direct + &gv.left_mul(&x.inner(fv).unwrap().scale_real(w));
            }
            assert!(r.apply(&x).unwrap().max_abs_diff(&direct) < 1e-10);
        }
        assert!(build_r(&f, &f).unwrap().max_abs_diff(&f.frame_operator()) < 1e-10);
        let zero = FrameMap::zero(f.space(), f.descriptor(), 2);
        assert_eq!(build_r(&f, &zero).unwrap().norm(), 0.0);
    }

    #[test]
    fn canonical_dual_gives_identity() {
        let f = random_frame(4, 5);
        let dual = f.canonical_dual().unwrap();
        let r = build_r(&dual, &f).unwrap();
        assert!(r.distance(&r.identity_like()).unwrap() < 1e-10);
    }

    #[test]
    fn propositions_on_simple_pairs() {
        let f = random_frame(5, 2);
        let opts = CheckOptions::default();
        assert!(f.is_riesz_type(1e-8).unwrap());
        let r = check_r_surjective(&f, &f, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.measured["R_surjective"], 1.0);

        let zero = FrameMap::zero(f.space(), f.descriptor(), 2);
        let r = check_r_surjective(&f, &zero, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.measured["R_surjective"], 0.0);

        let r = check_r_invertible(&f, &f, opts).unwrap();
        assert_eq!(r.measured["R_invertible"], 1.0);
        assert_eq!(r.verdict, Verdict::Verified);

        let g =
            FrameMap::new(f.space(), f.descriptor(), 2, vec![f.vectors()[0].clone(), f.vectors()[0].clone()]).unwrap();
        let r = check_r_invertible(&f, &g, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.measured["R_invertible"], 0.0);

        let redundant = random_frame(6, 4);
        assert_eq!(check_r_invertible(&redundant, &redundant, opts).unwrap().verdict, Verdict::HypothesisViolated);
    }

    #[test]
    fn rs_theorem_examples() {
        let f = random_frame(7, 4);
        let opts = CheckOptions::default();
        let r = verify_rs_theorem(&f, &f, None, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Verified, "{r:#?}");
        assert!(r.measured["R_star_min_singular"] >= r.measured["A"] - 1e-9);

        let a = f.order_bounds().lower;
        let r = verify_rs_theorem(&f, &f, Some(a), opts).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisViolated);

        let far = f.scale_real(-1.0);
        assert_eq!(verify_rs_theorem(&f, &far, None, opts).unwrap().verdict, Verdict::HypothesisViolated);
    }
}
