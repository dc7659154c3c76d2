//! `painleve`: evaluate, transform, classify and verify Picard and Chazy
//! solutions of PVIμ from the command line.

/// Write to standard error, ignoring a closed stream.
macro_rules! log {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stderr(), $($arg)*);
    }};
}

mod commands;
mod output;
mod parse;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use painleve_core::chazy::{ChazyParam, SingularPoint};
use painleve_core::hypergeom::{Chart, Loop};
use painleve_core::verify::Curve;
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(name = "painleve", version, about = "Picard and Chazy solutions of PVIμ at resonant μ")]
pub struct Cli {
    /// Significant digits of every float in the output (1–17).
    #[arg(long, global = true, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
    /// Tolerance applied to every check, replacing the per-check defaults.
    #[arg(long, global = true, value_parser = parse::real)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Picard,
    Chazy,
    Rational,
    Algebraic,
}

/// A solution branch; `--to-mu` maps it along the parameter ladder.
#[derive(Debug, Clone, Args)]
pub struct SolutionArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Picard parameter ν₁ (complex or p/q).
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub nu1: Option<Complex64>,
    /// Picard parameter ν₂ (complex or p/q).
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub nu2: Option<Complex64>,
    /// Chazy parameter ν (complex, p/q or `inf`).
    #[arg(long, value_parser = parse::chazy_param, allow_hyphen_values = true)]
    pub nu: Option<ChazyParam>,
    /// Parameter a of the rational family y = ax/(1 − (1 − a)x).
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    /// Parametric curve of an algebraic solution.
    #[arg(long, value_parser = parse::curve)]
    pub curve: Option<Curve>,
    /// Curve parameter selecting the branch (default: first root at the first sample).
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub seed: Option<Complex64>,
    /// Map the solution to PVI at this μ (p/q).
    #[arg(long, value_parser = parse::rational, allow_hyphen_values = true)]
    pub to_mu: Option<Rational64>,
}

/// Sample points: `--x` list and/or `--line from,to,n`.
#[derive(Debug, Clone, Args)]
pub struct Samples {
    /// Sample points (comma-separated complex numbers).
    #[arg(long, value_parser = parse::complex, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<Complex64>,
    /// `from,to,n`: n equally spaced points on a segment.
    #[arg(long, value_parser = parse::segment, allow_hyphen_values = true)]
    pub line: Option<parse::Segment>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a solution at sample points.
    Eval {
        #[command(flatten)]
        solution: SolutionArgs,
        #[command(flatten)]
        samples: Samples,
        /// Chart whose branch is used (default: the chart containing each point).
        #[arg(long, value_parser = parse::chart)]
        chart: Option<Chart>,
    },
    /// PVIμ residual of a solution at sample points.
    Verify {
        #[command(flatten)]
        solution: SolutionArgs,
        #[command(flatten)]
        samples: Samples,
        /// Absolute stencil step (default: a fixed fraction of the distance to 0 and 1).
        #[arg(long, value_parser = parse::real)]
        step: Option<f64>,
        /// Also check continuation along both loops (Picard and Chazy only).
        #[arg(long)]
        loops: bool,
    },
    /// Fit local behaviour at the singular points.
    Asymptotics {
        #[command(flatten)]
        solution: SolutionArgs,
        /// Singular points (zero|one|infinity; default all three).
        #[arg(long, value_parser = parse::point, value_delimiter = ',')]
        point: Vec<SingularPoint>,
        /// Smallest local radius of the fit window.
        #[arg(long, value_parser = parse::real)]
        rmin: Option<f64>,
        /// Largest local radius of the fit window.
        #[arg(long, value_parser = parse::real)]
        rmax: Option<f64>,
    },
    /// Continue a solution along closed loops and compare with the parameter action.
    Continue {
        #[command(flatten)]
        solution: SolutionArgs,
        /// Loops (gamma0|gamma1|trivial; default gamma0,gamma1).
        #[arg(long = "loop", value_parser = parse::lp, value_delimiter = ',')]
        loops: Vec<Loop>,
    },
    /// Parameter ladder between two μ, or the birational map on one jet.
    Transform {
        /// Ladder start μ (p/q).
        #[arg(long, value_parser = parse::rational, allow_hyphen_values = true, requires = "to")]
        from: Option<Rational64>,
        /// Ladder target μ (p/q).
        #[arg(long, value_parser = parse::rational, allow_hyphen_values = true, requires = "from")]
        to: Option<Rational64>,
        /// μ of the jet (p/q).
        #[arg(long, value_parser = parse::rational, allow_hyphen_values = true, conflicts_with_all = ["from", "to"])]
        mu: Option<Rational64>,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "mu")]
        x: Option<Complex64>,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "mu")]
        y: Option<Complex64>,
        /// y' of the jet.
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "mu")]
        yp: Option<Complex64>,
    },
    /// Algebraic label and dihedral group of rational Picard parameters.
    Classify {
        #[arg(long, value_parser = parse::rational)]
        nu1: Rational64,
        #[arg(long, value_parser = parse::rational)]
        nu2: Rational64,
    },
    /// Braid-group orbit of a triangle or a monodromy triple.
    Orbit {
        /// Three rational angles r₁,r₂,r₃.
        #[arg(long, value_parser = parse::rational, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Vec<Rational64>,
        /// Three complex coordinates x₁,x₂,x₃.
        #[arg(long, value_parser = parse::complex, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "angles")]
        triple: Vec<Complex64>,
        /// Stop after this many classes.
        #[arg(long, default_value_t = painleve_core::monodromy::DEFAULT_ORBIT_CAP)]
        cap: usize,
        /// Identify triples that differ by a permutation.
        #[arg(long)]
        permutations: bool,
    },
    /// Monodromy matrices (Picard, Chazy) or the triple of a triangle.
    Monodromy {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "nu2")]
        nu1: Option<Complex64>,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, requires = "nu1")]
        nu2: Option<Complex64>,
        /// The Chazy family's matrices.
        #[arg(long, conflicts_with_all = ["nu1", "nu2", "angles"])]
        chazy: bool,
        /// Three rational angles r₁,r₂,r₃.
        #[arg(long, value_parser = parse::rational, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["nu1", "nu2"])]
        angles: Vec<Rational64>,
    },
    /// Dihedral group and Gram matrix of the label (M, N).
    Dihedral {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// The rational family at μ = 1 and its commuting monodromy.
    Rational {
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        a: Complex64,
        #[command(flatten)]
        samples: Samples,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Verify { .. } => "verify",
            Command::Asymptotics { .. } => "asymptotics",
            Command::Continue { .. } => "continue",
            Command::Transform { .. } => "transform",
            Command::Classify { .. } => "classify",
            Command::Orbit { .. } => "orbit",
            Command::Monodromy { .. } => "monodromy",
            Command::Dihedral { .. } => "dihedral",
            Command::Rational { .. } => "rational",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] painleve_core::Error),
}

/// Parameters as given, keyed by flag name; defaults included.
fn echo_inputs(sub: &str, m: &ArgMatches) -> BTreeMap<String, Value> {
    let cmd = Cli::command();
    let args: Vec<String> = cmd
        .get_arguments()
        .chain(cmd.find_subcommand(sub).into_iter().flat_map(|c| c.get_arguments()))
        .map(|a| a.get_id().to_string())
        .collect();
    let mut out = BTreeMap::new();
    for id in m.ids() {
        let name = id.as_str();
        // Skip argument groups.
        if !args.iter().any(|a| a == name) {
            continue;
        }
        let Ok(Some(raw)) = m.try_get_raw(name) else { continue };
        let vals: Vec<Value> = raw.map(|v| Value::String(v.to_string_lossy().into_owned())).collect();
        let v = match &vals[..] {
            [one] => one.clone(),
            _ => Value::Array(vals),
        };
        out.insert(name.replace('_', "-"), v);
    }
    out
}

fn subcommand_help(name: &str) -> String {
    let mut cmd = Cli::command();
    match cmd.find_subcommand_mut(name) {
        Some(sub) => sub.render_long_help().to_string(),
        None => cmd.render_long_help().to_string(),
    }
}

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let _ = e.print();
            if e.exit_code() == 0 {
                return ExitCode::SUCCESS;
            }
            // Print the grammar unless clap already did.
            if e.kind() != DisplayHelpOnMissingArgumentOrSubcommand {
                log!("\n{}", Cli::command().render_long_help());
            }
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let inputs = matches.subcommand().map(|(sub, m)| echo_inputs(sub, m)).unwrap_or_default();
    let digits = cli.precision as usize;
    let result = commands::run(&cli, inputs.clone());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match result {
        Ok((res, tables)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&res.to_json(digits)).map(|s| s + "\n").map_err(|e| e.to_string()),
                Format::Csv => output::to_csv(&res.outputs, tables, digits).map_err(|e| e.to_string()),
            };
            let text = match text {
                Ok(t) => t,
                Err(e) => {
                    log!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if cli.format == Format::Csv {
                for d in &res.diagnostics {
                    log!("{} {} = {:e} (tol {:e})", if d.pass() { "pass" } else { "FAIL" }, d.check, d.value, d.tolerance);
                }
            }
            if out.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if res.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(err) => {
            log!("error: {err}");
            if let CliError::Usage(_) = err {
                log!("\n{}", subcommand_help(name));
            }
            let kind = match &err {
                CliError::Usage(_) => "usage",
                CliError::Domain(_) => "domain",
            };
            let doc = serde_json::json!({
                "command": name,
                "inputs": inputs,
                "error": { "kind": kind, "message": err.to_string() },
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            ExitCode::from(2)
        }
    }
}
