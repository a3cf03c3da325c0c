//! Command-line front end: argument model, dispatch and report rendering.
//!
//! Every report embeds the canonical argument vector of its run under
//! `inputs`; parsing that vector reproduces the run exactly.

mod commands;
mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modgroups::{DEFAULT_BFS_CAP, DEFAULT_SURVEY_BUDGET, TV_MIN_SAMPLES, TV_THRESHOLD};

pub use commands::{analyze_curve, sweep, SweepSummary, MAX_SWEEP_CURVES};
pub use spec::{parse_catalog, parse_curve_spec, parse_places, CurveSpec, ParsedCurve};

#[derive(Parser, Clone, Debug, PartialEq, Eq)]
#[command(
    name = "ffcurves",
    version,
    about = "Elliptic curves over F_q(T): reduction data, heights, Tate curves, Frobenius statistics"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Element cap for subgroup enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BFS_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Reduction data, heights and the height inequalities for one curve or a catalog.
    Analyze {
        /// Curve spec, e.g. `p=5 s=1; a=(1); b=(T)`.
        #[arg(required_unless_present = "catalog")]
        spec: Option<String>,
        #[arg(long, conflicts_with = "spec")]
        catalog: Option<PathBuf>,
    },
    /// All curves with polynomial coefficients of degree at most the bound.
    Sweep {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long = "deg-bound")]
        deg_bound: usize,
    },
    /// Tate-curve q-expansions with exactness checks.
    Tate {
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Number of random rational units for the uniformization check.
        #[arg(long, default_value_t = 0)]
        units: usize,
    },
    /// Frobenius (trace, det) statistics mod ℓ over places of bounded degree.
    Frobenius {
        spec: String,
        #[arg(long = "l")]
        ell: u32,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        #[arg(long, default_value_t = DEFAULT_SURVEY_BUDGET)]
        budget: u64,
    },
    /// Orders of H_n and Γ_n, with the (trace, det) distribution for prime n.
    Gamma {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u64,
    },
    /// Brute-force matrix-group checks.
    Lemmas {
        #[arg(value_enum)]
        which: LemmaKind,
        #[arg(long = "l")]
        ell: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
    /// Quadratic twists with good reduction outside a set of places.
    Twists {
        spec: String,
        /// Comma-separated places, e.g. `T^2+2, inf, T`.
        #[arg(long)]
        places: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaKind {
    /// Commutators of the level-ℓⁿ kernel generate the level-ℓ^{2n+2} kernel.
    Commutator,
    /// The two unipotent families generate the level-ℓ² kernel mod ℓ^m.
    Unipotent,
    /// PSL₂(F_ℓ) is simple.
    Simplicity,
    /// Order of ⟨(1 1; 0 1), (1 0; 1 1)⟩ mod ℓ.
    Sl2,
}

impl LemmaKind {
    fn name(self) -> &'static str {
        match self {
            LemmaKind::Commutator => "commutator",
            LemmaKind::Unipotent => "unipotent",
            LemmaKind::Simplicity => "simplicity",
            LemmaKind::Sl2 => "sl2",
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Sweep { .. } => "sweep",
            Command::Tate { .. } => "tate",
            Command::Frobenius { .. } => "frobenius",
            Command::Gamma { .. } => "gamma",
            Command::Lemmas { .. } => "lemmas",
            Command::Twists { .. } => "twists",
        }
    }
}

impl Cli {
    /// The argument vector (without program name) that reproduces this run,
    /// with every default made explicit.
    pub fn canonical_args(&self) -> Vec<String> {
        let mut a: Vec<String> = vec![self.command.name().into()];
        fn kv(a: &mut Vec<String>, k: &str, v: String) {
            a.push(k.into());
            a.push(v);
        }
        match &self.command {
            Command::Analyze { spec, catalog } => {
                if let Some(c) = catalog {
                    kv(&mut a, "--catalog", c.display().to_string());
                }
                if let Some(s) = spec {
                    a.push(s.clone());
                }
            }
            Command::Sweep { p, s, deg_bound } => {
                kv(&mut a, "--p", p.to_string());
                kv(&mut a, "--s", s.to_string());
                kv(&mut a, "--deg-bound", deg_bound.to_string());
            }
            Command::Tate { order, units } => {
                kv(&mut a, "--order", order.to_string());
                kv(&mut a, "--units", units.to_string());
            }
            Command::Frobenius { spec, ell, dmax, budget } => {
                kv(&mut a, "--l", ell.to_string());
                kv(&mut a, "--dmax", dmax.to_string());
                kv(&mut a, "--budget", budget.to_string());
                a.push(spec.clone());
            }
            Command::Gamma { r, n } => {
                kv(&mut a, "--r", r.to_string());
                kv(&mut a, "--n", n.to_string());
            }
            Command::Lemmas { which, ell, n, m } => {
                a.push(which.name().into());
                kv(&mut a, "--l", ell.to_string());
                kv(&mut a, "--n", n.to_string());
                kv(&mut a, "--m", m.to_string());
            }
            Command::Twists { spec, places } => {
                kv(&mut a, "--places", places.clone());
                a.push(spec.clone());
            }
        }
        a.extend(["--seed".into(), self.seed.to_string(), "--cap".into(), self.cap.to_string()]);
        if self.json {
            a.push("--json".into());
        }
        a
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: String,
    pub thresholds: Value,
    pub results: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.inputs.join(" "));
        render_text(&self.results, 0, &mut out);
        out
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.values().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}={}", inline(x))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let results = commands::dispatch(cli)?;
    Ok(Report {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cli.command.name().into(),
        inputs: cli.canonical_args(),
        seed: cli.seed.to_string(),
        thresholds: json!({
            "bfs_cap": cli.cap.to_string(),
            "tv_threshold": format!("{TV_THRESHOLD:.6}"),
            "tv_min_samples": TV_MIN_SAMPLES.to_string(),
            "sweep_max_curves": MAX_SWEEP_CURVES.to_string(),
        }),
        results,
    })
}

/// Failure of [`run_args`]: bad arguments or a failed run.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Run(Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => f.write_str(m),
            RunError::Run(e) => write!(f, "{e}"),
        }
    }
}

/// Parse an argument vector (without program name) and run it.
pub fn run_args<I, S>(args: I) -> std::result::Result<Report, RunError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("ffcurves".to_string()).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| RunError::Usage(e.to_string()))?;
    run(&cli).map_err(RunError::Run)
}
