//! Scenario files, seeded generators and falsification campaigns.

mod campaign;
mod generate;
mod scenario;

pub use campaign::{falsify, verify_scenario, CampaignReport, Falsification, TightnessStats};
pub use generate::{
    gen_central, gen_frame, gen_perturbation, gen_unitary, generate_scenario, map_with_synthesis_norm, random_map,
    PerturbationMode, RETRY_BUDGET,
};
pub use scenario::Scenario;
