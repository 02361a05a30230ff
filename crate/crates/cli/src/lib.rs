//! Command-line front end for the category engine.
//!
//! [`run`] executes one parsed [`Cli`] and returns the exit code together
//! with what should be printed: 0 for a decided verdict, 2 for an undecided
//! one, 1 for errors. For `classify` the verdict is `cat(E)` and
//! `cat(E × S^n)`; open `Q` cells are reported but do not change the code.

pub mod alpha;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lscat_core::bar::{self, TensorWord};
use lscat_core::engine::{BundleSpec, Engine};
use lscat_core::{load_facts, Catalog, HopfConfig, TriState, Truth};
use serde_json::{json, Value};
use std::fs::File;
use std::path::PathBuf;
use thiserror::Error;

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("cannot read facts file {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] lscat_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::MissingParameter(_) => "MissingParameter",
            CliError::Io { .. } => "IoError",
            CliError::Core(e) => e.kind(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "lscat",
    version,
    about = "L-S category of sphere bundles over spheres"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Fact file replacing the shipped catalog.
    #[arg(long, global = true, env = "LSCAT_FACTS")]
    pub facts: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Identify h2 with H1 outside the metastable range.
    #[arg(long, global = true)]
    pub no_metastable_guard: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Fibre sphere dimension.
    #[arg(long = "r")]
    pub r: u32,
    /// The base is S^(t+1).
    #[arg(long = "t")]
    pub t: u32,
    /// `α : S^t -> S^r`, e.g. "eta(2)*alpha1(3)*alpha1(2p)" or "deg(1)".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Prime for p-families.
    #[arg(long = "p")]
    pub p: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// cat(Q), cat(E) and their products with S^n.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Sphere dimension of the product factor; omitted means every n.
        #[arg(long = "n")]
        n: Option<u32>,
    },
    /// Whether removing a point keeps the category.
    Punctured {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Ganea counterexample detection and the least certified n.
    Ganea {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// cat of the complex obtained by attaching the top cell along ψ∘β.
    Attach {
        #[command(flatten)]
        spec: SpecArgs,
        /// A co-H map into S^(r+t), e.g. "iota(15)".
        #[arg(long)]
        beta: String,
    },
    /// Whether the second Hopf invariant set of ψ contains 0.
    Hopf2 {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Checks the bar differential and the quotient isomorphism.
    BarCheck {
        #[arg(long, default_value_t = 40)]
        bound: u32,
        /// Sphere parameters for the isomorphism check.
        #[arg(long = "r", value_delimiter = ',', default_values_t = [2, 3, 4])]
        r: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        max_length: usize,
        #[arg(long, default_value_t = 6)]
        max_exponent: u32,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn code(decided: bool) -> i32 {
    if decided {
        EXIT_DECIDED
    } else {
        EXIT_UNDECIDED
    }
}

fn load(cli: &Cli) -> Result<Catalog, CliError> {
    match &cli.facts {
        None => Ok(Catalog::shipped()),
        Some(path) => {
            let file = File::open(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(load_facts(file)?)
        }
    }
}

fn bundle(cat: &Catalog, args: &SpecArgs) -> Result<BundleSpec, CliError> {
    let alpha = alpha::parse_alpha(cat, &args.alpha, args.p, args.r, args.t)?;
    Ok(BundleSpec::new(args.r, args.t, alpha)?)
}

fn spec_json(spec: &BundleSpec) -> Value {
    json!({ "r": spec.r(), "t": spec.t(), "alpha": spec.alpha().to_string() })
}

/// Rendered result: exit code, text and structured forms.
struct Rendered {
    code: i32,
    text: String,
    data: Value,
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Structured => format!("{}\n", r.data),
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let line = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            match cli.format {
                Format::Structured => Outcome {
                    code: EXIT_ERROR,
                    stdout: format!("{line}\n"),
                    stderr: String::new(),
                },
                Format::Text => Outcome {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: format!("error[{}]: {e}\n", e.kind()),
                },
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    if let Command::BarCheck {
        bound,
        r,
        max_length,
        max_exponent,
    } = &cli.command
    {
        return Ok(bar_check(*bound, r, *max_length, *max_exponent));
    }
    let cat = load(cli)?;
    let config = HopfConfig {
        metastable_guard: !cli.no_metastable_guard,
    };
    let engine = Engine::with_config(&cat, config);
    let facts = cat.digest().to_string();
    let rendered = match &cli.command {
        Command::Classify { spec, n } => {
            let spec = bundle(&cat, spec)?;
            let report = engine.classify(&spec, *n)?;
            let bounds = engine.bounds(&spec)?;
            Rendered {
                code: code(report.bundle_decided()),
                text: format!("{spec}\n{report}bounds:\n{bounds}\n"),
                data: json!({
                    "command": "classify",
                    "facts": facts,
                    "spec": spec_json(&spec),
                    "n": n,
                    "decided": report.bundle_decided(),
                    "fullyDecided": report.is_decided(),
                    "report": report,
                    "bounds": bounds,
                }),
            }
        }
        Command::Punctured { spec } => {
            let spec = bundle(&cat, spec)?;
            let verdict = engine.punctured_equal(&spec)?;
            Rendered {
                code: code(verdict != Truth::Unknown),
                text: format!("{spec}\ncat(N - P) = cat(N): {verdict}\n"),
                data: json!({
                    "command": "punctured",
                    "facts": facts,
                    "spec": spec_json(&spec),
                    "puncturedEqual": verdict,
                }),
            }
        }
        Command::Ganea { spec } => {
            let spec = bundle(&cat, spec)?;
            let g = engine.ganea_check(&spec)?;
            let mut text = format!(
                "{spec}\ncounterexample: {}\nminimal n: {}\n",
                g.is_counterexample,
                g.minimal_n
                    .map_or_else(|| "not certified".to_string(), |n| n.to_string())
            );
            text.push_str("trace:\n");
            for e in &g.trace {
                text.push_str(&format!("  {e}\n"));
            }
            Rendered {
                code: code(g.is_counterexample != Truth::Unknown),
                text,
                data: json!({
                    "command": "ganea",
                    "facts": facts,
                    "spec": spec_json(&spec),
                    "ganea": g,
                }),
            }
        }
        Command::Attach { spec, beta } => {
            let spec = bundle(&cat, spec)?;
            let beta = alpha::parse_word(&cat, beta, spec_p(&cli.command), None)?;
            let state = engine.attach_along(&spec, &beta)?;
            let cat_x = match state {
                TriState::Zero => Some(2),
                TriState::Nonzero => Some(3),
                TriState::Unknown => None,
            };
            Rendered {
                code: code(state.is_decided()),
                text: format!(
                    "{spec}, β={beta}\nΣ^r H1(α)∘β: {state}\ncat(X(β)): {}\n",
                    cat_x.map_or_else(|| "2 or 3".to_string(), |c| c.to_string())
                ),
                data: json!({
                    "command": "attach",
                    "facts": facts,
                    "spec": spec_json(&spec),
                    "beta": beta.to_string(),
                    "composite": state,
                    "cat": cat_x,
                }),
            }
        }
        Command::Hopf2 { spec } => {
            let spec = bundle(&cat, spec)?;
            let state = engine.hopf2_contains_zero(&spec)?;
            let rep = engine.hopf2_representative(&spec)?;
            Rendered {
                code: code(state.is_decided()),
                text: format!(
                    "{spec}\nH^S_2(ψ) ∋ {rep}\ncontains 0: {}\n",
                    state.is_zero()
                ),
                data: json!({
                    "command": "hopf2",
                    "facts": facts,
                    "spec": spec_json(&spec),
                    "representative": rep.to_string(),
                    "containsZero": state.is_zero(),
                }),
            }
        }
        Command::BarCheck { .. } => unreachable!("handled above"),
    };
    Ok(rendered)
}

fn spec_p(command: &Command) -> Option<u32> {
    match command {
        Command::Classify { spec, .. }
        | Command::Punctured { spec }
        | Command::Ganea { spec }
        | Command::Attach { spec, .. }
        | Command::Hopf2 { spec } => spec.p,
        Command::BarCheck { .. } => None,
    }
}

fn bar_check(bound: u32, rs: &[u32], max_length: usize, max_exponent: u32) -> Rendered {
    let words = bar::all_words(max_length, max_exponent).len();
    let violations = bar::square_zero_violations(max_length, max_exponent, bar::bar_differential);
    let iso: Vec<(u32, bool)> = rs
        .iter()
        .map(|&r| (r, r >= 2 && bar::iso_check(bound, r)))
        .collect();
    let x = |e: &[u32]| TensorWord::new(e.to_vec()).expect("positive exponents");
    let d_xx = bar::bar_differential(&x(&[1, 1]));
    let d_xxx = bar::bar_differential(&x(&[1, 1, 1]));
    let ok = violations.is_empty() && iso.iter().all(|&(_, ok)| ok);

    let mut text = format!(
        "∂² = 0 on {words} words (length <= {max_length}, exponents <= {max_exponent}): {}\n",
        if violations.is_empty() {
            "ok".to_string()
        } else {
            format!("{} violations", violations.len())
        }
    );
    for (r, ok) in &iso {
        text.push_str(&format!(
            "quotient isomorphism up to degree {bound}, r = {r}: {ok}\n"
        ));
    }
    text.push_str(&format!("∂(x⊗x) = {d_xx}\n∂(x⊗x⊗x) = {d_xxx}\n"));
    Rendered {
        code: if ok { EXIT_DECIDED } else { EXIT_ERROR },
        text,
        data: json!({
            "command": "bar-check",
            "words": words,
            "squareZeroViolations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "iso": iso.iter().map(|(r, ok)| json!({ "r": r, "bijective": ok })).collect::<Vec<_>>(),
            "examples": { "x⊗x": d_xx.to_string(), "x⊗x⊗x": d_xxx.to_string() },
            "ok": ok,
        }),
    }
}
