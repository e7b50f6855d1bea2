//! The on-disk scenario: everything a checker needs, in one JSON document.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::frame::{FrameMap, MeasureSpace};
use crate::perturbation::{PerturbationConstants, TheoremId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// The theorem the scenario was generated for, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremId>,
    pub descriptor: AlgebraDescriptor,
    pub space: MeasureSpace,
    #[serde(rename = "F")]
    pub f: FrameMap,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FrameMap>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<FrameMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<AlgebraElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<AlgebraElement>,
    #[serde(default)]
    pub constants: PerturbationConstants,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn new(f: FrameMap) -> Self {
        Self {
            theorem: None,
            descriptor: f.descriptor().clone(),
            space: f.space().clone(),
            f,
            g: None,
            k: None,
            a1: None,
            a2: None,
            constants: PerturbationConstants::default(),
            seed: 0,
        }
    }

    pub fn with_g(mut self, g: FrameMap) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_k(mut self, k: FrameMap) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_scalars(mut self, a1: AlgebraElement, a2: AlgebraElement) -> Self {
        self.a1 = Some(a1);
        self.a2 = Some(a2);
        self
    }

    pub fn with_constants(mut self, c: PerturbationConstants) -> Self {
        self.constants = c;
        self
    }

    pub fn for_theorem(mut self, theorem: TheoremId, seed: u64) -> Self {
        self.theorem = Some(theorem);
        self.seed = seed;
        self
    }

    /// All maps live on the declared space and module; algebra elements on
    /// the declared algebra.
    pub fn validate(&self) -> Result<()> {
        for (name, map) in [("F", Some(&self.f)), ("G", self.g.as_ref()), ("K", self.k.as_ref())] {
            if let Some(map) = map {
                self.descriptor
                    .ensure_same(map.descriptor())
                    .map_err(|e| Error::InvalidInput(format!("{name}: {e}")))?;
                self.space.ensure_same(map.space()).map_err(|e| Error::InvalidInput(format!("{name}: {e}")))?;
                if map.d() != self.f.d() {
                    return Err(Error::InvalidInput(format!("{name} has d = {}, F has d = {}", map.d(), self.f.d())));
                }
            }
        }
        for (name, a) in [("a1", self.a1.as_ref()), ("a2", self.a2.as_ref())] {
            if let Some(a) = a {
                self.descriptor.ensure_same(a.descriptor()).map_err(|e| Error::InvalidInput(format!("{name}: {e}")))?;
            }
        }
        self.constants.validate()
    }

    pub fn g(&self) -> Result<&FrameMap> {
        self.g.as_ref().ok_or_else(|| Error::InvalidInput("scenario has no G".into()))
    }

    pub fn k(&self) -> Result<&FrameMap> {
        self.k.as_ref().ok_or_else(|| Error::InvalidInput("scenario has no K".into()))
    }

    /// `(a1, a2)`, defaulting to the unit.
    pub fn scalars(&self) -> (AlgebraElement, AlgebraElement) {
        let one = AlgebraElement::identity(&self.descriptor);
        (self.a1.clone().unwrap_or_else(|| one.clone()), self.a2.clone().unwrap_or(one))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let scenario: Self = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("scenario JSON: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios always serialize")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }
}
