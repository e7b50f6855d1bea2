use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cframe::perturbation::{CheckOptions, TheoremId, TheoremReport, Verdict};
use cframe::toolkit::{self, CampaignReport, PerturbationMode, Scenario};
use cframe::{tol, AlgebraDescriptor, Error, FrameMap};

const EXIT_HYPOTHESIS: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_FALSIFIED: u8 = 3;

#[derive(Parser)]
#[command(name = "cframe", version, about = "Continuous frames in Hilbert C*-modules and their perturbation theorems")]
struct Cli {
    /// Rank tolerance; defaults to $CFRAME_TOL, then 1e-8.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    F,
    G,
    K,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a scenario: hypothesis-satisfying for `--theorem`, else a random frame.
    Gen {
        #[arg(long, value_parser = parse_theorem)]
        theorem: Option<TheoremId>,
        /// Block sizes of the algebra, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Largest allowed upper/lower order-bound ratio.
        #[arg(long, default_value_t = 4.0)]
        condition: f64,
        /// Also emit a perturbation of F (as G, or as K for `dual-based`).
        #[arg(long, value_parser = parse_mode)]
        perturbation: Option<PerturbationMode>,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Order bounds and sampled norm bounds of a map in a scenario.
    Bounds {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = MapName::F)]
        map: MapName,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Emit the canonical dual of a map.
    Dual {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = MapName::F)]
        map: MapName,
    },
    /// Decide whether a map is a Riesz-type frame.
    Riesz {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = MapName::F)]
        map: MapName,
    },
    /// Run one theorem checker on a scenario file.
    Verify {
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        #[arg(long)]
        scenario: PathBuf,
        /// Random samples per sampled check.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Where to write the reproducer when the theorem is falsified.
        #[arg(long)]
        reproducer: Option<PathBuf>,
    },
    /// Check many generated scenarios; `--theorem all` runs the whole registry.
    Falsify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Random samples per sampled check in each trial.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long)]
        reproducer: Option<PathBuf>,
    },
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<PerturbationMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of a subcommand: the document to print and the exit code.
struct Outcome {
    json: serde_json::Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(value: impl Serialize, text: String) -> Self {
        Self { json: serde_json::to_value(value).expect("serializable"), text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotAFrame { .. }
        | Error::SingularElement { .. }
        | Error::SingularOperator { .. }
        | Error::NotCentral
        | Error::HypothesisViolated(_)
        | Error::SmallnessViolated(_)
        | Error::HypothesisUnreachable(_) => EXIT_HYPOTHESIS,
        Error::ConclusionFailed(_) => EXIT_FALSIFIED,
        _ => EXIT_INVALID,
    }
}

fn pick(s: &Scenario, map: MapName) -> Result<&FrameMap, Error> {
    match map {
        MapName::F => Ok(&s.f),
        MapName::G => s.g(),
        MapName::K => s.k(),
    }
}

fn reproducer_path(explicit: Option<PathBuf>, out: Option<&Path>, theorem: TheoremId, seed: u64) -> PathBuf {
    explicit.unwrap_or_else(|| {
        let name = format!("cframe-reproducer-{theorem}-{seed}.json");
        match out.and_then(Path::parent) {
            Some(dir) if !dir.as_os_str().is_empty() => dir.join(name),
            _ => PathBuf::from(name),
        }
    })
}

fn report_text(r: &TheoremReport) -> String {
    let mut s = format!("{}: {:?}\n", r.theorem, r.verdict);
    for (label, checks) in [("hypothesis", Some(&r.hypothesis)), ("conclusion", r.conclusion.as_ref())] {
        for c in checks.iter().flat_map(|c| c.checks.iter()) {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            let _ = write!(s, "  {mark} {label}: {}", c.name);
            if let (Some(v), Some(b)) = (c.value, c.bound) {
                let _ = write!(s, " ({v:.6e} vs {b:.6e})");
            }
            s.push('\n');
        }
    }
    for (k, v) in &r.predicted {
        let _ = writeln!(s, "  predicted {k} = {v:.12e}");
    }
    for (k, v) in &r.measured {
        let _ = writeln!(s, "  measured  {k} = {v:.12e}");
    }
    s
}

fn campaign_text(r: &CampaignReport) -> String {
    let mut s = format!(
        "{}: {} trials, {} verified, {} hypothesis-violated, {} falsified, {} errors\n",
        r.theorem, r.trials, r.verified, r.hypothesis_violated, r.falsified, r.errors
    );
    for (name, t) in &r.tightness {
        let _ =
            writeln!(s, "  tightness {name}: min {:.4} mean {:.4} max {:.4} (n = {})", t.min, t.mean, t.max, t.count);
    }
    s
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let tol = match cli.tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => return Err(Error::InvalidInput(format!("--tol must be positive, got {t}"))),
        None => tol::rank_from_env(),
    };
    match &cli.command {
        Command::Gen { theorem, blocks, d, m, condition, perturbation, epsilon } => {
            let scenario = match theorem {
                Some(t) => toolkit::generate_scenario(*t, cli.seed)?,
                None => {
                    let desc = AlgebraDescriptor::new(blocks.clone())?;
                    let f = toolkit::gen_frame(&desc, *d, *m, cli.seed, *condition)?;
                    let mut s = Scenario::new(f.clone());
                    s.seed = cli.seed;
                    match perturbation {
                        None => s,
                        Some(PerturbationMode::DualBased) => {
                            let k = toolkit::gen_perturbation(&f, *epsilon, PerturbationMode::DualBased, cli.seed)?;
                            s.with_g(f.canonical_dual()?).with_k(k)
                        }
                        Some(mode) => s.with_g(toolkit::gen_perturbation(&f, *epsilon, *mode, cli.seed)?),
                    }
                }
            };
            let text = scenario.to_json();
            Ok(Outcome::ok(&scenario, text))
        }
        Command::Bounds { scenario, map, samples } => {
            let s = Scenario::load(scenario)?;
            let f = pick(&s, *map)?;
            let order = f.order_bounds();
            let norm = f.sampled_norm_bounds(*samples, cli.seed);
            let text = format!(
                "order: lower {:.12e} upper {:.12e}\nnorm (sampled): lower {:.12e} upper {:.12e}\nframe: {}\n",
                order.lower,
                order.upper,
                norm.lower,
                norm.upper,
                f.is_frame(tol)
            );
            Ok(Outcome::ok(json!({ "order": order, "norm": norm, "frame": f.is_frame(tol) }), text))
        }
        Command::Dual { scenario, map } => {
            let s = Scenario::load(scenario)?;
            let dual = pick(&s, *map)?.canonical_dual()?;
            let text = serde_json::to_string_pretty(&dual).expect("serializable");
            Ok(Outcome::ok(&dual, text))
        }
        Command::Riesz { scenario, map } => {
            let s = Scenario::load(scenario)?;
            let f = pick(&s, *map)?;
            let frame = f.is_frame(tol);
            let riesz = frame && f.is_riesz_type(tol)?;
            let text = format!("frame: {frame}\nriesz-type: {riesz}\nmu-complete: {}\n", f.is_mu_complete(tol));
            Ok(Outcome::ok(json!({ "frame": frame, "riesz_type": riesz, "mu_complete": f.is_mu_complete(tol) }), text))
        }
        Command::Verify { theorem, scenario, samples, reproducer } => {
            let s = Scenario::load(scenario)?;
            let report =
                toolkit::verify_scenario(*theorem, &s, CheckOptions { trials: *samples, seed: cli.seed, tol })?;
            let code = match report.verdict {
                Verdict::Verified => 0,
                Verdict::HypothesisViolated => EXIT_HYPOTHESIS,
                Verdict::Falsified => {
                    let path = reproducer_path(reproducer.clone(), cli.out.as_deref(), *theorem, s.seed);
                    s.clone().for_theorem(*theorem, s.seed).save(&path)?;
                    eprintln!("theorem falsified; reproducer written to {}", path.display());
                    EXIT_FALSIFIED
                }
            };
            let text = report_text(&report);
            Ok(Outcome { code, ..Outcome::ok(&report, text) })
        }
        Command::Falsify { theorem, trials, samples, reproducer } => {
            let theorems: Vec<TheoremId> =
                if theorem.eq_ignore_ascii_case("all") { TheoremId::ALL.to_vec() } else { vec![theorem.parse()?] };
            let opts = CheckOptions { trials: *samples, seed: cli.seed, tol };
            let reports: Vec<CampaignReport> =
                theorems.iter().map(|&t| toolkit::falsify(t, *trials, cli.seed, opts)).collect();
            let mut code = 0;
            if let Some(first) = reports.iter().flat_map(|r| r.falsifications.first()).next() {
                let path = reproducer_path(reproducer.clone(), cli.out.as_deref(), first.report.theorem, first.seed);
                first.scenario.save(&path)?;
                eprintln!("theorem falsified; reproducer written to {}", path.display());
                code = EXIT_FALSIFIED;
            }
            let text = reports.iter().map(campaign_text).collect();
            let json = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
            Ok(Outcome { json, text, code })
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), Error> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n",
        Format::Text if outcome.text.ends_with('\n') => outcome.text.clone(),
        Format::Text => outcome.text.clone() + "\n",
    };
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o).map(|()| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
