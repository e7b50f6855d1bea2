//! Acceptance criteria 1 to 11. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line; any FAIL makes the
//! process exit non-zero.

// `!(x > y)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::time::Instant;

use rand::Rng;

use cframe::perturbation::{
    build_k, build_r, check_r_invertible, predict_sum_bounds, pw_conclusion_bounds, verify_dual_perturbation,
    verify_kernel_corollary, verify_pert_fg_b, verify_pw_theorem, verify_rs_theorem, verify_sum_theorem, CheckOptions,
    PerturbationConstants, TheoremId, Verdict,
};
use cframe::toolkit::{self, Scenario};
use cframe::{sampling, AlgebraDescriptor, AlgebraElement, FrameMap, MeasureSpace, ModuleElement};
use num_complex::Complex64;

// Tolerances fixed by the acceptance contract, deliberately not read from
// the library so that a change there cannot loosen a criterion.
const AXIOM_TOL: f64 = 1e-9;
const OPERATOR_TOL: f64 = 1e-9;
const RECONSTRUCTION_TOL: f64 = 1e-8;
const EXACT_TOL: f64 = 1e-12;
const BOUND_SLACK: f64 = 1e-7;
const R_IDENTITY_TOL: f64 = 1e-10;
const SUBSPACE_TOL: f64 = 1e-6;
const RANK_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn desc(sizes: &[usize]) -> AlgebraDescriptor {
    AlgebraDescriptor::new(sizes.to_vec()).unwrap()
}

fn opts(seed: u64) -> CheckOptions {
    CheckOptions { trials: 32, seed, tol: RANK_TOL }
}

fn scalar_frame(vectors: &[[f64; 2]]) -> FrameMap {
    let d = AlgebraDescriptor::complex();
    let vs = vectors
        .iter()
        .map(|v| {
            ModuleElement::new(&d, v.iter().map(|&x| AlgebraElement::scalar(&d, Complex64::new(x, 0.0))).collect())
                .unwrap()
        })
        .collect();
    FrameMap::new(&MeasureSpace::counting(vectors.len()), &d, 2, vs).unwrap()
}

const SHAPES: [&[usize]; 3] = [&[1], &[2], &[2, 3]];

fn random_frame(seed: u64, riesz: bool) -> FrameMap {
    let mut rng = sampling::rng(seed);
    let sizes = SHAPES[rng.random_range(0..SHAPES.len())];
    let d = rng.random_range(1..=3);
    let m = if riesz { d } else { d + rng.random_range(0..=2) };
    toolkit::gen_frame(&desc(sizes), d, m, seed, rng.random_range(1.0..10.0)).unwrap()
}

/// Cauchy-Schwarz, `‖af‖ ≤ ‖a‖‖f‖`, `⟨f,g⟩⟨g,f⟩ ≤ ‖g‖²⟨f,f⟩`, the
/// C*-identity and the adjoint contract.
fn criterion_1() -> Outcome {
    let mut instances = 0;
    for (s, sizes) in SHAPES.iter().enumerate() {
        let a_desc = desc(sizes);
        let mut rng = sampling::rng(100 + s as u64);
        for i in 0..1000 {
            let d = 1 + i % 3;
            let f = sampling::module_element(&mut rng, &a_desc, d);
            let g = sampling::module_element(&mut rng, &a_desc, d);
            let a = sampling::algebra_element(&mut rng, &a_desc);
            let fg = f.inner(&g).unwrap();
            let ff = f.inner(&f).unwrap();
            let gg = g.inner(&g).unwrap();

            let rhs = ff.norm() * gg.norm();
            ensure!(
                fg.norm().powi(2) <= rhs + AXIOM_TOL * rhs.max(1.0),
                "Cauchy-Schwarz fails on {sizes:?}, instance {i}"
            );

            let bound = a.norm() * f.norm();
            ensure!(
                f.left_mul(&a).norm() <= bound + AXIOM_TOL * bound.max(1.0),
                "‖af‖ ≤ ‖a‖‖f‖ fails on {sizes:?}, instance {i}"
            );

            let lhs = &fg * &fg.adjoint();
            let rhs = ff.scale_real(g.norm().powi(2));
            ensure!(
                lhs.order_leq(&rhs, AXIOM_TOL * rhs.norm().max(1.0)),
                "⟨f,g⟩⟨g,f⟩ ≤ ‖g‖²⟨f,f⟩ fails on {sizes:?}, instance {i}"
            );

            let aa = (&a.adjoint() * &a).norm();
            ensure!(
                (aa - a.norm().powi(2)).abs() <= AXIOM_TOL * aa.max(1.0),
                "C*-identity fails on {sizes:?}, instance {i}"
            );

            let d_out = 1 + (i / 3) % 3;
            let t = sampling::operator(&mut rng, &a_desc, d, d_out);
            let h = sampling::module_element(&mut rng, &a_desc, d_out);
            let left = t.apply(&f).unwrap().inner(&h).unwrap();
            let right = f.inner(&t.adjoint().apply(&h).unwrap()).unwrap();
            ensure!(
                left.max_abs_diff(&right) <= AXIOM_TOL * left.norm().max(1.0),
                "adjoint contract fails on {sizes:?}, instance {i}"
            );
            instances += 1;
        }
    }
    Ok(format!("{instances} instances × 5 axioms, zero violations"))
}

/// `‖T_F‖ ≤ √B`, `‖S_F‖ ≤ B`, `S_F` self-adjoint positive, and reconstruction
/// through the canonical dual.
fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let f = random_frame(seed, false);
        let b = f.order_bounds().upper;
        let t = f.synthesis_operator();
        let s = f.frame_operator();
        ensure!(t.norm() <= b.sqrt() + OPERATOR_TOL, "‖T_F‖ = {} > √B = {} (seed {seed})", t.norm(), b.sqrt());
        ensure!(s.norm() <= b + OPERATOR_TOL, "‖S_F‖ = {} > B = {b} (seed {seed})", s.norm());
        ensure!(
            s.is_self_adjoint(OPERATOR_TOL) && s.is_positive(OPERATOR_TOL),
            "S_F not self-adjoint positive (seed {seed})"
        );
        let dual = f.canonical_dual().map_err(|e| e.to_string())?;
        let mut rng = sampling::rng(seed);
        for _ in 0..5 {
            let x = sampling::module_element(&mut rng, f.descriptor(), f.d());
            let back = f.synthesis_apply(&dual.analysis_apply(&x).unwrap()).unwrap();
            let err = back.max_abs_diff(&x) / x.norm().max(1.0);
            worst = worst.max(err);
            ensure!(err <= RECONSTRUCTION_TOL, "reconstruction error {err:e} (seed {seed})");
        }
    }
    Ok(format!("100 frames, worst reconstruction error {worst:.1e}"))
}

/// Standard basis gives (1, 1); the three-vector frame of ℂ² gives (1, 2)
/// against closed-form 2×2 eigenvalues.
fn criterion_3() -> Outcome {
    for sizes in SHAPES {
        for d in 1..=3 {
            let b = FrameMap::standard_basis(&desc(sizes), d).order_bounds();
            ensure!(
                (b.lower - 1.0).abs() <= EXACT_TOL && (b.upper - 1.0).abs() <= EXACT_TOL,
                "standard basis on {sizes:?}, d={d}: {b:?}"
            );
        }
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let vectors = [[1.0, 0.0], [0.0, 1.0], [r, r]];
    let (mut p, mut q, mut s) = (0.0, 0.0, 0.0);
    for v in vectors {
        p += v[0] * v[0];
        q += v[0] * v[1];
        s += v[1] * v[1];
    }
    let (mid, rad) = ((p + s) / 2.0, (((p - s) / 2.0).powi(2) + q * q).sqrt());
    let b = scalar_frame(&vectors).order_bounds();
    ensure!(
        (b.lower - (mid - rad)).abs() <= AXIOM_TOL && (b.upper - (mid + rad)).abs() <= AXIOM_TOL,
        "three-vector frame: {b:?} vs ({}, {})",
        mid - rad,
        mid + rad
    );
    ensure!((b.lower - 1.0).abs() <= AXIOM_TOL && (b.upper - 2.0).abs() <= AXIOM_TOL, "three-vector frame: {b:?}");
    Ok(format!("standard basis (1, 1); three-vector frame ({:.12}, {:.12})", b.lower, b.upper))
}

/// 500 generated sum scenarios: the norm sandwich of `a₁F + a₂G` stays in
/// the predicted interval.
fn criterion_4() -> Outcome {
    let mut non_scalar = 0;
    let mut falsified = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for seed in 0..500 {
        let s = toolkit::generate_scenario(TheoremId::Sum3, seed).map_err(|e| e.to_string())?;
        let (a1, a2) = s.scalars();
        let g = s.g().unwrap();
        if s.descriptor.block_sizes() == [2, 3] {
            let z1 = a1.central_scalars(AXIOM_TOL).unwrap();
            let z2 = a2.central_scalars(AXIOM_TOL).unwrap();
            if z1[0] != z1[1] || z2[0] != z2[1] {
                non_scalar += 1;
            }
        }
        let fb = s.f.order_bounds();
        let pred = predict_sum_bounds(fb.lower, fb.upper, g.bessel_bound(), &a1, &a2).map_err(|e| e.to_string())?;
        let h = FrameMap::combine(&a1, &s.f, &a2, g).unwrap();
        let measured = h.sampled_norm_bounds(32, seed);
        let order = h.order_bounds();
        for (lo, hi) in [(measured.lower, measured.upper), (order.lower, order.upper)] {
            worst_excess = worst_excess.max(pred.lower - lo).max(hi - pred.upper);
            ensure!(
                lo >= pred.lower - BOUND_SLACK && hi <= pred.upper + BOUND_SLACK,
                "seed {seed}: ({lo}, {hi}) outside {pred:?}"
            );
        }
        let report = verify_sum_theorem(&s.f, g, &a1, &a2, opts(seed)).map_err(|e| e.to_string())?;
        falsified += usize::from(report.verdict == Verdict::Falsified);
        ensure!(report.verdict == Verdict::Verified, "seed {seed}: {:?}", report.verdict);
    }
    ensure!(non_scalar > 0, "no scenario with non-scalar central scalars on (2,3)");
    ensure!(falsified == 0, "{falsified} falsifications");
    Ok(format!(
        "500 scenarios ({non_scalar} with non-scalar a_i on (2,3)), largest excess {worst_excess:.1e}, 0 falsified"
    ))
}

/// `G = 0.9F`: `N = 0.01`, bounds of `G` equal to 0.81.
fn criterion_5() -> Outcome {
    let f = scalar_frame(&[[1.0, 0.0], [0.0, 1.0]]);
    let g = f.scale_real(0.9);
    let r = verify_pert_fg_b(&f, &g, opts(0)).map_err(|e| e.to_string())?;
    ensure!(r.verdict == Verdict::Verified, "verdict {:?}", r.verdict);
    let n = f.try_sub(&g).unwrap().bessel_bound();
    ensure!((n - 0.01).abs() <= AXIOM_TOL, "N = {n}");
    let b = g.order_bounds();
    ensure!((b.lower - 0.81).abs() <= AXIOM_TOL && (b.upper - 0.81).abs() <= AXIOM_TOL, "G bounds {b:?}");
    Ok(format!("N = {n:.12}, G bounds ({:.12}, {:.12})", b.lower, b.upper))
}

/// γ-only certificates: `K` invertible within its bounds, `G` a frame above
/// the predicted lower bound; zero constants reproduce `(A, B)` exactly.
fn criterion_6() -> Outcome {
    let mut worst_k = f64::NEG_INFINITY;
    for seed in 0..200 {
        let f = random_frame(seed, false);
        let mut rng = sampling::rng(1_000 + seed);
        let a1 = toolkit::gen_central(f.descriptor(), 2 * seed);
        let a2 = toolkit::gen_central(f.descriptor(), 2 * seed + 1);
        let fb = f.order_bounds();
        let gamma = rng.random_range(0.0..0.8) * fb.lower.sqrt() / a1.invert().unwrap().norm();
        let delta = toolkit::map_with_synthesis_norm(&mut rng, f.space(), f.descriptor(), f.d(), gamma);
        // a₂G = a₁F − Δ, so ‖T_{a₁F} − T_{a₂G}‖ = γ exactly
        let g = f.scale_frame(&a1).unwrap().try_sub(&delta).unwrap().scale_frame(&a2.invert().unwrap()).unwrap();
        let c = PerturbationConstants::gamma_only(gamma);

        let k = build_k(&f, &g, &a1, &a2, &c, opts(seed)).map_err(|e| e.to_string())?;
        ensure!(k.invertible, "seed {seed}: K not invertible");
        let (k_bound, k_inv_bound) = (k.smallness.k_norm_bound(), k.smallness.k_inverse_bound());
        let k_inv = k.inverse_norm.unwrap();
        worst_k = worst_k.max(k.norm - k_bound).max(k_inv - k_inv_bound);
        ensure!(k.norm <= k_bound + BOUND_SLACK, "seed {seed}: ‖K‖ = {} > {k_bound}", k.norm);
        ensure!(k_inv <= k_inv_bound + BOUND_SLACK, "seed {seed}: ‖K⁻¹‖ = {k_inv} > {k_inv_bound}");

        let pred = pw_conclusion_bounds(fb.lower, fb.upper, &c, &a1, &a2).map_err(|e| e.to_string())?;
        ensure!(g.is_frame(RANK_TOL), "seed {seed}: G is not a frame");
        let sampled = g.sampled_norm_bounds(32, seed);
        ensure!(sampled.lower >= pred.lower - BOUND_SLACK, "seed {seed}: G lower {} < {}", sampled.lower, pred.lower);
        ensure!(g.order_bounds().lower >= pred.lower - BOUND_SLACK, "seed {seed}: G order lower below prediction");
        let r = verify_pw_theorem(&f, &g, &a1, &a2, &c, opts(seed)).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Verified, "seed {seed}: {:?}", r.verdict);

        let one = AlgebraElement::identity(f.descriptor());
        let limit = pw_conclusion_bounds(fb.lower, fb.upper, &PerturbationConstants::default(), &one, &one).unwrap();
        ensure!(
            limit.lower == fb.lower && limit.upper == fb.upper,
            "seed {seed}: zero constants give {limit:?}, not ({}, {})",
            fb.lower,
            fb.upper
        );
    }
    Ok(format!("200 scenarios, largest ‖K‖/‖K⁻¹‖ excess over bound {worst_k:.1e}"))
}

/// Standard basis of ℂ², `G = F`, `K` shifted by (0.1, 0) per atom.
fn criterion_7() -> Outcome {
    let f = scalar_frame(&[[1.0, 0.0], [0.0, 1.0]]);
    let k = scalar_frame(&[[1.1, 0.0], [0.1, 1.0]]);
    let r = verify_dual_perturbation(&f, &f, &k, opts(0)).map_err(|e| e.to_string())?;
    let m = &r.measured;
    ensure!(r.verdict == Verdict::Verified, "verdict {:?}", r.verdict);
    ensure!(
        (m["alpha"] - 0.02).abs() <= EXACT_TOL && (m["beta"] - 0.2).abs() <= EXACT_TOL,
        "α = {}, β = {}",
        m["alpha"],
        m["beta"]
    );
    ensure!(m["L_norm"] <= 1.2 + AXIOM_TOL, "‖L‖ = {}", m["L_norm"]);
    ensure!(m["L_inverse_norm"] <= 1.25 + BOUND_SLACK, "‖L⁻¹‖ = {}", m["L_inverse_norm"]);
    ensure!(
        m["K_lower"] >= 0.64 - BOUND_SLACK && m["K_upper"] <= 1.3029,
        "K bounds ({}, {})",
        m["K_lower"],
        m["K_upper"]
    );
    Ok(format!(
        "α = {:.3}, β = {:.3}, ‖L‖ = {:.6}, ‖L⁻¹‖ = {:.6}, K bounds ({:.6}, {:.6})",
        m["alpha"], m["beta"], m["L_norm"], m["L_inverse_norm"], m["K_lower"], m["K_upper"]
    ))
}

/// `R_{F,F} = S_F`; the Riesz equivalence on both branches; the `R − S`
/// lower bound.
fn criterion_8() -> Outcome {
    for seed in 0..100 {
        let f = random_frame(seed, false);
        let diff = build_r(&f, &f).unwrap().max_abs_diff(&f.frame_operator());
        ensure!(diff <= R_IDENTITY_TOL, "seed {seed}: ‖R_FF − S_F‖ = {diff:e}");
    }
    let (mut riesz, mut non_riesz) = (0, 0);
    for seed in 0..200u64 {
        let f = random_frame(seed, true);
        let g = if seed % 2 == 0 {
            let other = toolkit::gen_frame(f.descriptor(), f.d(), f.len(), seed + 7_000, 8.0).unwrap();
            FrameMap::new(f.space(), f.descriptor(), f.d(), other.vectors().to_vec()).unwrap()
        } else if f.len() >= 2 {
            let mut v = f.vectors().to_vec();
            v[1] = v[0].clone();
            FrameMap::new(f.space(), f.descriptor(), f.d(), v).unwrap()
        } else {
            f.scale_real(0.0)
        };
        let r = check_r_invertible(&f, &g, opts(seed)).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Verified, "seed {seed}: {:?}", r.verdict);
        if r.measured["G_riesz"] == 1.0 {
            ensure!(r.measured["R_invertible"] == 1.0, "seed {seed}: G Riesz-type but R singular");
            riesz += 1;
        } else {
            ensure!(r.measured["R_invertible"] == 0.0, "seed {seed}: G not Riesz-type but R invertible");
            non_riesz += 1;
        }
    }
    ensure!(riesz >= 100 && non_riesz >= 100, "branches: {riesz} Riesz-type, {non_riesz} not");
    let mut worst = f64::INFINITY;
    for seed in 0..100 {
        let s = toolkit::generate_scenario(TheoremId::RS, seed).map_err(|e| e.to_string())?;
        let r = verify_rs_theorem(&s.f, s.g().unwrap(), None, opts(seed)).map_err(|e| e.to_string())?;
        let (a, lambda) = (r.measured["A"], r.measured["R_minus_S"]);
        ensure!(lambda < a, "seed {seed}: measured λ = {lambda} ≥ A = {a}");
        let margin = r.measured["R_star_min_singular"] - (a - lambda);
        worst = worst.min(margin);
        ensure!(margin >= -BOUND_SLACK, "seed {seed}: min singular of R* below A − λ by {margin:e}");
        ensure!(r.verdict == Verdict::Verified, "seed {seed}: {:?}", r.verdict);
    }
    Ok(format!("R_FF = S_F on 100 frames; {riesz} + {non_riesz} equivalence pairs; R−S smallest margin {worst:.1e}"))
}

/// `G = cF` has the kernel of `F` and the same Riesz type.
fn criterion_9() -> Outcome {
    let mut cases = 0;
    for (riesz, seed) in [(true, 1u64), (false, 2), (true, 3), (false, 4)] {
        let f = random_frame(seed, riesz);
        let f = if !riesz && f.len() == f.d() { f.push_atom(f.vectors()[0].scale_real(0.5), 1.0).unwrap() } else { f };
        let f_riesz = f.is_riesz_type(RANK_TOL).unwrap();
        ensure!(f_riesz == riesz, "fixture seed {seed} has the wrong Riesz type");
        for c in [0.25, 0.5, 0.9] {
            let g = f.scale_real(c);
            let r = verify_kernel_corollary(&f, &g, 1.0 - c, 0.0, opts(seed)).map_err(|e| e.to_string())?;
            ensure!(r.verdict == Verdict::Verified, "riesz={riesz}, c={c}: {:?}", r.verdict);
            let m = &r.measured;
            ensure!(
                m["ker_T_F_dim"] == m["ker_T_G_dim"] && m["kernel_distance"] <= SUBSPACE_TOL,
                "riesz={riesz}, c={c}: kernels differ"
            );
            ensure!(
                m["F_riesz"] == m["G_riesz"] && (m["F_riesz"] == 1.0) == riesz,
                "riesz={riesz}, c={c}: Riesz biconditional fails"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} scaling fixtures on Riesz-type and redundant frames"))
}

/// Unitary scaling preserves `S_F`; central scaling gives `S_{aF} = |a|²S_F`
/// and `T_{aF} = aT_F`.
fn criterion_10() -> Outcome {
    let d23 = desc(&[2, 3]);
    for seed in 0..20 {
        let f = toolkit::gen_frame(&d23, 2, 4, seed, 6.0).unwrap();
        let u = toolkit::gen_unitary(&d23, seed);
        let diff = f.scale_frame(&u).unwrap().frame_operator().max_abs_diff(&f.frame_operator());
        ensure!(diff <= AXIOM_TOL, "seed {seed}: unitary scaling moves S_F by {diff:e}");

        let a = toolkit::gen_central(&d23, seed + 50);
        let z = a.central_scalars(AXIOM_TOL).unwrap();
        ensure!(z[0] != z[1], "seed {seed}: central element is scalar");
        let af = f.scale_frame(&a).unwrap();
        let abs_sq = &a.adjoint() * &a;
        let s_diff = af.frame_operator().max_abs_diff(&f.frame_operator().left_scale(&abs_sq).unwrap());
        let t_diff = af.synthesis_operator().max_abs_diff(&f.synthesis_operator().left_scale(&a).unwrap());
        ensure!(s_diff <= AXIOM_TOL && t_diff <= AXIOM_TOL, "seed {seed}: S diff {s_diff:e}, T diff {t_diff:e}");

        // the same identities applied pointwise, without left_scale
        let mut rng = sampling::rng(seed);
        let psi = sampling::l2_element(&mut rng, f.space(), &d23);
        let x = sampling::module_element(&mut rng, &d23, 2);
        let t_err = af.synthesis_apply(&psi).unwrap().max_abs_diff(&f.synthesis_apply(&psi).unwrap().left_mul(&a));
        let s_err = af
            .frame_operator()
            .apply(&x)
            .unwrap()
            .max_abs_diff(&f.frame_operator().apply(&x).unwrap().left_mul(&abs_sq));
        ensure!(t_err <= AXIOM_TOL && s_err <= AXIOM_TOL, "seed {seed}: pointwise T err {t_err:e}, S err {s_err:e}");
    }
    Ok("20 frames on (2,3) with unitary and non-scalar central a".into())
}

/// 200-trial campaigns over the whole registry.
fn criterion_11() -> Outcome {
    let mut summary = Vec::new();
    for theorem in TheoremId::ALL {
        let report = toolkit::falsify(theorem, 200, 2024, CheckOptions { trials: 16, seed: 2024, tol: RANK_TOL });
        if let Some(hit) = report.falsifications.first() {
            let path = std::env::temp_dir().join(format!("cframe-reproducer-{theorem}-{}.json", hit.seed));
            let scenario: &Scenario = &hit.scenario;
            scenario.save(&path).map_err(|e| e.to_string())?;
            return Err(format!("{theorem}: {} falsified; reproducer at {}", report.falsified, path.display()));
        }
        ensure!(report.errors == 0, "{theorem}: {} trials failed to generate or check", report.errors);
        ensure!(report.verified > 0, "{theorem}: nothing verified");
        summary.push(format!("{theorem} {}/200", report.verified));
    }
    Ok(format!("0 falsified; verified: {}", summary.join(", ")))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("axiom suite", criterion_1),
        ("operator apparatus", criterion_2),
        ("bounds correctness", criterion_3),
        ("sum of frames", criterion_4),
        ("F − G Bessel perturbation", criterion_5),
        ("synthesis perturbation pipeline", criterion_6),
        ("dual-based perturbation fixture", criterion_7),
        ("mixed frame operator R", criterion_8),
        ("kernel corollary", criterion_9),
        ("scaling remarks", criterion_10),
        ("falsification campaigns", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2}s]", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} of {} acceptance criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", criteria.len());
}
