//! Constructive checkers for the frame perturbation results.
//!
//! Every checker follows the same discipline: evaluate the hypotheses, and
//! only when they all hold evaluate the conclusion. A conclusion failing
//! under satisfied hypotheses is reported as `falsified`, which for proven
//! statements means a numerical or implementation bug.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::tol;

mod dual;
mod pw;
mod r_operator;
mod sum;

pub use dual::{verify_dual_perturbation, DualPerturbationMeasures};
pub use pw::{
    build_k, kernel_projector_distance, pw_conclusion_bounds, pw_hypothesis_check, pw_printed_bounds, pw_smallness,
    riesz_smallness, synthesis_hypothesis_check, verify_kernel_corollary, verify_pw_theorem, verify_riesz_preservation,
    KReport, PairWitness, PwHypothesisReport, Smallness, SynthesisHypothesisReport,
};
pub use r_operator::{build_r, check_r_invertible, check_r_surjective, verify_rs_theorem};
pub use sum::{predict_sum_bounds, verify_bessel_difference, verify_pert_fg_b, verify_sum_theorem};

/// The registered results, by their CLI ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "sum3")]
    Sum3,
    #[serde(rename = "sum4")]
    Sum4,
    #[serde(rename = "pert-FG-B")]
    PertFgB,
    #[serde(rename = "pert1")]
    Pert1,
    #[serde(rename = "pert2")]
    Pert2,
    #[serde(rename = "kernel")]
    Kernel,
    #[serde(rename = "pert-d")]
    PertD,
    #[serde(rename = "R-surjective")]
    RSurjective,
    #[serde(rename = "R-invertible")]
    RInvertible,
    #[serde(rename = "R-S")]
    RS,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Sum3,
        TheoremId::Sum4,
        TheoremId::PertFgB,
        TheoremId::Pert1,
        TheoremId::Pert2,
        TheoremId::Kernel,
        TheoremId::PertD,
        TheoremId::RSurjective,
        TheoremId::RInvertible,
        TheoremId::RS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Sum3 => "sum3",
            TheoremId::Sum4 => "sum4",
            TheoremId::PertFgB => "pert-FG-B",
            TheoremId::Pert1 => "pert1",
            TheoremId::Pert2 => "pert2",
            TheoremId::Kernel => "kernel",
            TheoremId::PertD => "pert-d",
            TheoremId::RSurjective => "R-surjective",
            TheoremId::RInvertible => "R-invertible",
            TheoremId::RS => "R-S",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Constants of the perturbation hypotheses. Unused ones stay at zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerturbationConstants {
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
    /// `λ` for the `R_{F,G}` closeness theorem; measured when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Bessel bound of a difference map; measured when absent.
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "N")]
    pub n: Option<f64>,
}

impl PerturbationConstants {
    pub fn gamma_only(gamma: f64) -> Self {
        Self { gamma, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!("{name} must be a finite non-negative number, got {v}")));
            }
        }
        Ok(())
    }
}

/// Sampling and decision parameters shared by the checkers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub trials: usize,
    pub seed: u64,
    /// Rank/surjectivity tolerance.
    pub tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { trials: 64, seed: 0, tol: tol::RANK }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    HypothesisViolated,
    Falsified,
}

/// How a check compares `value` against `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `value ≤ bound` (an upper estimate).
    Le,
    /// `value ≥ bound` (a lower estimate).
    Ge,
    /// A boolean property.
    Holds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub relation: Relation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl Check {
    /// `value ≤ bound + slack`.
    pub fn le(name: &str, value: f64, bound: f64, slack: f64) -> Self {
        Self {
            name: name.into(),
            holds: value <= bound + slack,
            relation: Relation::Le,
            value: finite(value),
            bound: finite(bound),
        }
    }

    /// `value ≥ bound − slack`.
    pub fn ge(name: &str, value: f64, bound: f64, slack: f64) -> Self {
        Self {
            name: name.into(),
            holds: value >= bound - slack,
            relation: Relation::Ge,
            value: finite(value),
            bound: finite(bound),
        }
    }

    /// Strict `value < bound`, used by smallness conditions.
    pub fn lt(name: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            holds: value < bound,
            relation: Relation::Le,
            value: finite(value),
            bound: finite(bound),
        }
    }

    pub fn flag(name: &str, holds: bool) -> Self {
        Self { name: name.into(), holds, relation: Relation::Holds, value: None, bound: None }
    }

    /// `measured ÷ predicted` for upper estimates and `predicted ÷ measured`
    /// for lower ones, so a sound estimate is `≤ 1`.
    pub fn tightness(&self) -> Option<f64> {
        let (v, b) = (self.value?, self.bound?);
        match self.relation {
            Relation::Le if b > 0.0 => Some(v / b),
            Relation::Ge if v > 0.0 && b > 0.0 => Some(b / v),
            _ => None,
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChecksReport {
    pub satisfied: bool,
    pub checks: Vec<Check>,
}

impl ChecksReport {
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub hypothesis: ChecksReport,
    pub predicted: BTreeMap<String, f64>,
    pub measured: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<ChecksReport>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub severity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub seed: u64,
    pub trials: usize,
}

impl TheoremReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn is_falsified(&self) -> bool {
        self.verdict == Verdict::Falsified
    }

    /// `Err(HypothesisViolated | ConclusionFailed)` unless verified.
    pub fn into_result(self) -> Result<Self> {
        match self.verdict {
            Verdict::Verified => Ok(self),
            Verdict::HypothesisViolated => Err(Error::HypothesisViolated(self.hypothesis.failures().join(", "))),
            Verdict::Falsified => Err(Error::ConclusionFailed(
                self.conclusion.as_ref().map(|c| c.failures().join(", ")).unwrap_or_default(),
            )),
        }
    }

    /// Tightness ratios of every conclusion check that carries numbers.
    pub fn tightness(&self) -> Vec<(String, f64)> {
        self.conclusion
            .iter()
            .flat_map(|c| c.checks.iter())
            .filter_map(|c| c.tightness().map(|t| (c.name.clone(), t)))
            .collect()
    }
}

/// Accumulates a [`TheoremReport`]; conclusion checks added after a failed
/// hypothesis are discarded by [`ReportBuilder::finish`].
pub(crate) struct ReportBuilder {
    theorem: TheoremId,
    hypothesis: Vec<Check>,
    conclusion: Vec<Check>,
    predicted: BTreeMap<String, f64>,
    measured: BTreeMap<String, f64>,
    witness: Option<serde_json::Value>,
    opts: CheckOptions,
}

impl ReportBuilder {
    pub fn new(theorem: TheoremId, opts: CheckOptions) -> Self {
        Self {
            theorem,
            hypothesis: Vec::new(),
            conclusion: Vec::new(),
            predicted: BTreeMap::new(),
            measured: BTreeMap::new(),
            witness: None,
            opts,
        }
    }

    pub fn hyp(&mut self, check: Check) -> &mut Self {
        self.hypothesis.push(check);
        self
    }

    pub fn hypothesis_ok(&self) -> bool {
        self.hypothesis.iter().all(|c| c.holds)
    }

    pub fn conclude(&mut self, check: Check) -> &mut Self {
        self.conclusion.push(check);
        self
    }

    pub fn predict(&mut self, name: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.predicted.insert(name.into(), value);
        }
        self
    }

    pub fn measure(&mut self, name: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.measured.insert(name.into(), value);
        }
        self
    }

    pub fn witness(&mut self, w: serde_json::Value) -> &mut Self {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
        self
    }

    pub fn finish(self) -> TheoremReport {
        let satisfied = self.hypothesis.iter().all(|c| c.holds);
        let hypothesis = ChecksReport { satisfied, checks: self.hypothesis };
        let (conclusion, verdict) = if satisfied {
            let holds = self.conclusion.iter().all(|c| c.holds);
            let verdict = if holds { Verdict::Verified } else { Verdict::Falsified };
            (Some(ChecksReport { satisfied: holds, checks: self.conclusion }), verdict)
        } else {
            (None, Verdict::HypothesisViolated)
        };
        TheoremReport {
            theorem: self.theorem,
            hypothesis,
            predicted: self.predicted,
            measured: self.measured,
            conclusion,
            severity: (verdict == Verdict::Falsified).then(|| "theorem-falsification".to_string()),
            verdict,
            witness: self.witness,
            seed: self.opts.seed,
            trials: self.opts.trials,
        }
    }
}

/// Centrality and invertibility hypotheses for `a₁, a₂`; returns the
/// inverses when both hold.
pub(crate) fn central_invertible_pair(
    b: &mut ReportBuilder,
    a1: &AlgebraElement,
    a2: &AlgebraElement,
) -> Option<(AlgebraElement, AlgebraElement)> {
    let c1 = a1.is_central(tol::ALGEBRAIC);
    let c2 = a2.is_central(tol::ALGEBRAIC);
    let i1 = a1.invert().ok();
    let i2 = a2.invert().ok();
    b.hyp(Check::flag("a1 central", c1))
        .hyp(Check::flag("a2 central", c2))
        .hyp(Check::flag("a1 invertible", i1.is_some()))
        .hyp(Check::flag("a2 invertible", i2.is_some()));
    match (c1 && c2, i1, i2) {
        (true, Some(x), Some(y)) => Some((x, y)),
        _ => None,
    }
}
