//! Command-line front end: evaluate observables, compute Poisson brackets,
//! sample SSC worldlines, compute Moller discs, and run verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use relloc::elementary::{momenta, ElementarySystem, State, StateFile, SCHEMA_TAG};
use relloc::localisation::{moller_disc, ssc_position, standard_aliases, SSCChoice};
use relloc::minkowski::FourVector;
use relloc::obsexpr::parser::{parse_with_aliases, AliasTable};
use relloc::obsexpr::poisson_bracket;
use relloc::poincare::Hyperplane;
use relloc::verify::{self, ReportFormat, RunConfig, SuiteId, SuiteReport};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit status for verification failures; usage and data errors exit 2
/// (also used by the argument parser).
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "relloc",
    version,
    about = "Observables, worldlines and verification suites for relativistic spinning particles",
    after_help = "State files are JSON objects {\"m\": .., \"S\": .., \"c\": .., \"x\": [..], \
                  \"p\": [..], \"s_hat\": [..]} with c defaulting to 1 and s_hat present exactly \
                  when S > 0.\n\
                  Expressions use the symbols x1..x3, p1..p3, s1..s3, m, S, c and the built-in \
                  aliases P0..P3, J23, J31, J12, J10, J20, J30, W0..W3 (Pauli-Lubanski vector \
                  components) and X1..X3 (Newton-Wigner coordinates)."
)]
struct Cli {
    /// Override the state file's speed of light
    #[arg(long, global = true, value_name = "REAL")]
    c: Option<f64>,

    /// Output format for structured results
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Choice {
    /// Newton-Wigner: f = u + P/(mc)
    Nw,
    /// Centre of energy: f = u
    Ce,
    /// Centre of inertia: f = P/(mc)
    Ci,
}

impl Choice {
    fn ssc(self) -> SSCChoice {
        match self {
            Choice::Nw => SSCChoice::NewtonWigner,
            Choice::Ce => SSCChoice::CentreOfEnergy,
            Choice::Ci => SSCChoice::CentreOfInertia,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Choice::Nw => "nw",
            Choice::Ce => "ce",
            Choice::Ci => "ci",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an observable expression at a state
    Eval {
        /// State file (JSON)
        state: PathBuf,
        /// Expression, e.g. "x1*p2 - x2*p1 + s3" or "P0"
        expr: String,
    },
    /// Poisson bracket of two observable expressions at a state
    Bracket {
        state: PathBuf,
        f: String,
        g: String,
        /// Also print the simplified symbolic bracket
        #[arg(long)]
        symbolic: bool,
    },
    /// Sample an SSC position worldline over a range of hyperplane offsets
    Worldline {
        state: PathBuf,
        /// Position observable to sample
        #[arg(long, value_enum, default_value_t = Choice::Nw)]
        choice: Choice,
        /// Hyperplane normal (unit timelike future-directed)
        #[arg(long, num_args = 4, value_names = ["U0", "U1", "U2", "U3"],
              default_values_t = [1.0, 0.0, 0.0, 0.0], allow_negative_numbers = true)]
        u: Vec<f64>,
        /// Inclusive offset range as start:stop:count
        #[arg(long, default_value = "0:1:11", allow_hyphen_values = true)]
        tau: String,
    },
    /// Run a verification suite (or "all")
    Verify {
        /// One of: algebra, equivariance, nw-theorem, centre-of-spin,
        /// moller, covariance, hodge, exponentials, bracket-engine, all
        suite: String,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        /// Tolerance override as suite=value (repeatable)
        #[arg(long, value_name = "SUITE=TOL")]
        tol: Vec<String>,
    },
    /// Moller disc of a state on its momentum-orthogonal hyperplane
    Moller { state: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Eval { state, expr } => {
            let (sys, state) = load_state(state, cli.c)?;
            let value = evaluate_expr(&sys, &state, expr)?;
            match cli.format {
                Format::Csv => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "schema": SCHEMA_TAG, "value": value })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket {
            state,
            f,
            g,
            symbolic,
        } => {
            let (sys, state) = load_state(state, cli.c)?;
            let table = standard_aliases(&sys);
            let fe = parse_named(f, &table)?;
            let ge = parse_named(g, &table)?;
            let bracket = poisson_bracket(&fe, &ge).simplified();
            let ctx = sys.eval_context(&state);
            sys.validate_state(&state).map_err(|e| e.to_string())?;
            let value = bracket.evaluate(&ctx).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Csv => {
                    println!("{value}");
                    if *symbolic {
                        println!("{bracket}");
                    }
                }
                Format::Json => {
                    let mut doc = serde_json::json!({ "schema": SCHEMA_TAG, "value": value });
                    if *symbolic {
                        doc["symbolic"] = serde_json::Value::String(bracket.to_string());
                    }
                    println!("{doc}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Worldline {
            state,
            choice,
            u,
            tau,
        } => {
            let (sys, state) = load_state(state, cli.c)?;
            let normal = FourVector::new(u[0], u[1], u[2], u[3]);
            let taus = parse_tau_range(tau)?;
            let mv = momenta(&sys, &state).map_err(|e| e.to_string())?;
            let ssc = choice.ssc();
            let mut rows = Vec::with_capacity(taus.len());
            for tau in taus {
                let sigma = Hyperplane::new(normal, tau).map_err(|e| e.to_string())?;
                let chi = ssc_position(&mv, &ssc, &sigma).map_err(|e| e.to_string())?;
                // adding zero turns negative zeros into plain zeros for output
                rows.push((tau, chi + FourVector::ZERO));
            }
            match cli.format {
                Format::Csv => {
                    println!("tau,x0,x1,x2,x3");
                    for (tau, chi) in rows {
                        println!("{tau},{},{},{},{}", chi[0], chi[1], chi[2], chi[3]);
                    }
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(tau, chi)| serde_json::json!({ "tau": tau, "x": chi }))
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": SCHEMA_TAG,
                            "choice": choice.name(),
                            "u": normal,
                            "rows": rows,
                        })
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            seed,
            samples,
            tol,
        } => {
            if *samples < 1 {
                return Err("samples must be at least 1".to_string());
            }
            let config = RunConfig {
                seed: *seed,
                samples: *samples,
                tolerance_overrides: parse_tolerance_overrides(tol)?,
                format: match cli.format {
                    Format::Csv => ReportFormat::Csv,
                    Format::Json => ReportFormat::Json,
                },
            };
            let reports = if suite == "all" {
                verify::run_all(&config)
            } else {
                let id = SuiteId::from_name(suite).ok_or_else(|| {
                    format!(
                        "unknown suite `{suite}`; available: {}, all",
                        suite_names().join(", ")
                    )
                })?;
                vec![verify::run_suite(id, &config)]
            };
            print_reports(&reports, config.format);
            if reports.iter().all(|r| r.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAILED))
            }
        }
        Command::Moller { state } => {
            let (sys, state) = load_state(state, cli.c)?;
            let mv = momenta(&sys, &state).map_err(|e| e.to_string())?;
            let u = mv.p.raise() / sys.mc();
            let sigma = Hyperplane::new(u, 0.0).map_err(|e| e.to_string())?;
            let disc = moller_disc(&mv, &sigma).map_err(|e| e.to_string())?;
            let centre_dot_normal = disc.centre.inner(&disc.normal);
            let normal_dot_p = mv.p.apply(&disc.normal);
            println!(
                "{}",
                serde_json::json!({
                    "schema": SCHEMA_TAG,
                    // adding zero turns negative zeros into plain zeros
                    "centre": disc.centre + FourVector::ZERO,
                    "radius": disc.radius,
                    "normal": disc.normal + FourVector::ZERO,
                    "diagnostics": {
                        "eta_centre_normal": centre_dot_normal,
                        "eta_normal_p": normal_dot_p,
                        "spin_magnitude": sys.spin(),
                    },
                })
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn suite_names() -> Vec<&'static str> {
    SuiteId::ALL.iter().map(|s| s.name()).collect()
}

fn load_state(path: &PathBuf, c_override: Option<f64>) -> Result<(ElementarySystem, State), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut file: StateFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(c) = c_override {
        file.c = c;
    }
    file.into_validated()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_named(text: &str, table: &AliasTable) -> Result<relloc::obsexpr::Expression, String> {
    parse_with_aliases(text, table).map_err(|e| format!("in `{text}`: {e}"))
}

fn evaluate_expr(sys: &ElementarySystem, state: &State, text: &str) -> Result<f64, String> {
    let table = standard_aliases(sys);
    let expr = parse_named(text, &table)?;
    sys.validate_state(state).map_err(|e| e.to_string())?;
    expr.evaluate(&sys.eval_context(state))
        .map_err(|e| e.to_string())
}

/// Parse "start:stop:count" into `count` offsets, endpoints included.
fn parse_tau_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(format!("tau range `{text}` is not of the form start:stop:count"));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| format!("bad tau range start `{start}`"))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| format!("bad tau range stop `{stop}`"))?;
    let count: usize = count
        .parse()
        .map_err(|_| format!("bad tau range count `{count}`"))?;
    if count == 0 {
        return Err("tau range count must be at least 1".to_string());
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err("tau range endpoints must be finite".to_string());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|i| start + (stop - start) * (i as f64) / ((count - 1) as f64))
        .collect())
}

fn parse_tolerance_overrides(entries: &[String]) -> Result<Vec<(SuiteId, f64)>, String> {
    entries
        .iter()
        .map(|entry| {
            let (name, value) = entry
                .split_once('=')
                .ok_or_else(|| format!("tolerance override `{entry}` is not of the form suite=value"))?;
            let suite = SuiteId::from_name(name).ok_or_else(|| {
                format!(
                    "unknown suite `{name}` in tolerance override; available: {}",
                    suite_names().join(", ")
                )
            })?;
            let value: f64 = value
                .parse()
                .map_err(|_| format!("bad tolerance value `{value}`"))?;
            if !(value > 0.0) {
                return Err(format!("tolerance for {name} must be positive"));
            }
            Ok((suite, value))
        })
        .collect()
}

fn print_reports(reports: &[SuiteReport], format: ReportFormat) {
    match format {
        ReportFormat::Csv => {
            println!("suite,check,observed,bound,kind,status");
            for report in reports {
                for check in &report.checks {
                    let kind = match check.kind {
                        verify::BoundKind::UpperBound => "upper",
                        verify::BoundKind::LowerBound => "lower",
                    };
                    println!(
                        "{},{},{:e},{:e},{},{}",
                        report.suite,
                        check.name,
                        check.observed,
                        check.bound,
                        kind,
                        if check.passed { "pass" } else { "fail" }
                    );
                }
            }
        }
        ReportFormat::Json => {
            println!(
                "{}",
                serde_json::json!({ "schema": SCHEMA_TAG, "reports": reports })
            );
        }
    }
}
