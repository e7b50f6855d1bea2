//! Running a checker against a scenario, and randomized campaigns that
//! hunt for counterexamples.

use std::collections::BTreeMap;
use std::thread;

use serde::Serialize;

use super::generate::generate_scenario;
use super::scenario::Scenario;
use crate::error::Result;
use crate::perturbation::{self as pt, CheckOptions, TheoremId, TheoremReport, Verdict};
use crate::sampling::derive_seed;

/// Dispatches `scenario` to the checker for `theorem`.
pub fn verify_scenario(theorem: TheoremId, scenario: &Scenario, opts: CheckOptions) -> Result<TheoremReport> {
    scenario.validate()?;
    let f = &scenario.f;
    let (a1, a2) = scenario.scalars();
    let c = &scenario.constants;
    match theorem {
        TheoremId::Sum3 => pt::verify_sum_theorem(f, scenario.g()?, &a1, &a2, opts),
        TheoremId::Sum4 => pt::verify_bessel_difference(f, scenario.g()?, &a1, &a2, opts),
        TheoremId::PertFgB => pt::verify_pert_fg_b(f, scenario.g()?, opts),
        TheoremId::Pert1 => pt::verify_pw_theorem(f, scenario.g()?, &a1, &a2, c, opts),
        TheoremId::Pert2 => pt::verify_riesz_preservation(f, scenario.g()?, &a1, &a2, c, opts),
        TheoremId::Kernel => pt::verify_kernel_corollary(f, scenario.g()?, c.alpha, c.beta, opts),
        TheoremId::PertD => pt::verify_dual_perturbation(f, scenario.g()?, scenario.k()?, opts),
        TheoremId::RSurjective => pt::check_r_surjective(f, scenario.g()?, opts),
        TheoremId::RInvertible => pt::check_r_invertible(f, scenario.g()?, opts),
        TheoremId::RS => pt::verify_rs_theorem(f, scenario.g()?, c.lambda, opts),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightnessStats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// A counterexample together with everything needed to replay it.
#[derive(Clone, Debug, Serialize)]
pub struct Falsification {
    pub trial: usize,
    pub seed: u64,
    pub scenario: Scenario,
    pub report: TheoremReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub theorem: TheoremId,
    pub trials: usize,
    pub seed: u64,
    pub verified: usize,
    pub hypothesis_violated: usize,
    pub falsified: usize,
    /// Trials where no scenario could be generated or checked.
    pub errors: usize,
    /// Per conclusion check, `value / bound` over verified trials.
    pub tightness: BTreeMap<String, TightnessStats>,
    pub falsifications: Vec<Falsification>,
}

enum Outcome {
    Report(Box<Scenario>, TheoremReport),
    Error,
}

fn run_trial(theorem: TheoremId, trial: usize, seed: u64, samples: usize, tol: f64) -> (u64, Outcome) {
    let trial_seed = derive_seed(seed, trial as u64);
    let outcome = generate_scenario(theorem, trial_seed)
        .and_then(|s| {
            let opts = CheckOptions { trials: samples, seed: trial_seed, tol };
            verify_scenario(theorem, &s, opts).map(|r| Outcome::Report(Box::new(s), r))
        })
        .unwrap_or(Outcome::Error);
    (trial_seed, outcome)
}

/// Generates `trials` scenarios for `theorem` from `seed` and checks each
/// one, drawing `opts.trials` random samples per sampled check. Results do
/// not depend on how trials are spread over threads.
pub fn falsify(theorem: TheoremId, trials: usize, seed: u64, opts: CheckOptions) -> CampaignReport {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(trials.max(1));
    let mut outcomes: Vec<(usize, u64, Outcome)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..trials)
                        .step_by(workers)
                        .map(|t| {
                            let (ts, o) = run_trial(theorem, t, seed, opts.trials, opts.tol);
                            (t, ts, o)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trial thread panicked")).collect()
    });
    outcomes.sort_by_key(|(t, _, _)| *t);

    let mut report = CampaignReport {
        theorem,
        trials,
        seed,
        verified: 0,
        hypothesis_violated: 0,
        falsified: 0,
        errors: 0,
        tightness: BTreeMap::new(),
        falsifications: Vec::new(),
    };
    let mut ratios: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (trial, trial_seed, outcome) in outcomes {
        let (scenario, r) = match outcome {
            Outcome::Report(s, r) => (s, r),
            Outcome::Error => {
                report.errors += 1;
                continue;
            }
        };
        match r.verdict {
            Verdict::Verified => {
                report.verified += 1;
                for (name, t) in r.tightness() {
                    ratios.entry(name).or_default().push(t);
                }
            }
            Verdict::HypothesisViolated => report.hypothesis_violated += 1,
            Verdict::Falsified => {
                report.falsified += 1;
                report.falsifications.push(Falsification { trial, seed: trial_seed, scenario: *scenario, report: r });
            }
        }
    }
    report.tightness = ratios
        .into_iter()
        .map(|(name, v)| {
            let stats = TightnessStats {
                count: v.len(),
                min: v.iter().copied().fold(f64::INFINITY, f64::min),
                max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                mean: v.iter().sum::<f64>() / v.len() as f64,
            };
            (name, stats)
        })
        .collect();
    report
}
