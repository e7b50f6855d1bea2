//! Default numerical tolerances, one order of magnitude apart per layer.

/// Algebraic identities (ring laws, adjoint contract, positivity).
pub const ALGEBRAIC: f64 = 1e-9;
/// Rank, surjectivity and invertibility decisions, relative to the largest
/// singular value.
pub const RANK: f64 = 1e-8;
/// Verdicts on sampled norm inequalities and additive slack on predicted
/// bound constants.
pub const SAMPLED: f64 = 1e-7;
/// Largest principal-angle sine accepted when two computed subspaces are
/// declared equal.
pub const SUBSPACE: f64 = 1e-6;

/// Environment variable that overrides the rank tolerance used by the CLI
/// and the campaign runner.
pub const TOL_ENV: &str = "CFRAME_TOL";

/// Rank tolerance, honouring `CFRAME_TOL` when it parses as a positive float.
pub fn rank_from_env() -> f64 {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(RANK)
}
