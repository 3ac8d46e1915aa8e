//! `bazilevic`: command-line front end for `bazilevic-core`.

mod args;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use bazilevic_core::classes::{
    bazilevic_construct, class_functional, herglotz_polynomial, in_named_subclass, in_pk_rho, solve_functional_inverse,
    BazilevicParams, NamedClass,
};
use bazilevic_core::operator::{apply_operator, bernardi, bernardi_inverse};
use bazilevic_core::special::QuadratureSpec;
use bazilevic_core::theorems::{
    empirical_radius, iota, radius_r1, radius_scan, report_json, scan_csv, sharp_function, verify, ParamSource,
    ScanFunction, TheoremId, VerifyConfig,
};
use bazilevic_core::{BernardiParams, HerglotzMeasure, NormalizedSeries, TruncatedSeries, DEFAULT_ORDER};

use args::{ClassArgs, OperatorArgs, ProbeArgs};

const ORDER_ENV: &str = "ML_BAZ_ORDER";

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] bazilevic_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Config(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Schema { .. } => "schema",
            CliError::Config(_) => "config",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "bazilevic",
    version,
    about = "Mittag-Leffler operator and Bazilevič class toolkit"
)]
struct Cli {
    /// Series truncation order [env: ML_BAZ_ORDER; default 64].
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the Mittag-Leffler operator E^m to a series.
    Apply {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Apply the Bernardi-Libera-Livingston operator or its inverse.
    Bernardi {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long)]
        inverse: bool,
    },
    /// Evaluate the class functional of a normalized function.
    Functional {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Test a series against P_k(ρ), or a function against a named subclass.
    Membership {
        /// Series p with p(0) = 1 (or f in class A with --named).
        #[arg(short, long, required_unless_present = "measure", conflicts_with = "measure")]
        input: Option<PathBuf>,
        /// Herglotz measure, tested through its Fejér-damped polynomial of the
        /// working order (which stays in the class at every order).
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        /// Test f against a named subclass instead of P_k(ρ).
        #[arg(long, value_enum, requires = "input")]
        named: Option<Named>,
        /// Exponent for --named b2.
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Solve class_functional(f) = p for f.
    Inverse {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Radius of the class-functional inclusion: formula, empirical, or scan.
    Radius {
        /// Function f for an empirical radius.
        #[arg(short, long, conflicts_with = "csv")]
        input: Option<PathBuf>,
        /// Scan a (λγ, ϑ) grid and emit CSV.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value = "0.5,1,2", value_delimiter = ',')]
        lambda_gammas: Vec<f64>,
        #[arg(long, default_value = "0.5,1,2", value_delimiter = ',')]
        thetas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Scan::Extremal)]
        scan: Scan,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Build the candidate sharp function of the radius problem.
    Sharp {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        op: OperatorArgs,
    },
    /// Evaluate the constants ι and ι₁ of the integral-operator bound.
    Iota {
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        sigma: f64,
    },
    /// Run a seeded randomized verification suite.
    Verify {
        /// 2.1, 2.2, 3.1 or 4.1 (optionally prefixed with T).
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = 1e-4)]
        allowance: f64,
        /// JSON file with fixed trial parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        probe: ProbeArgs,
    },
    /// Build a Bazilevič function from {"theta", "tau", "g", "p"}.
    Bazilevic {
        #[arg(short, long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Named {
    B2,
    B3,
    B4,
    M,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scan {
    Sharp,
    Extremal,
}

/// What a command produced.
enum Output {
    Json(Value),
    Text(String),
    Report { text: String, failures: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let body = json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    let order = resolve_order(cli.order)?;
    let (text, code) = match execute(&cli.command, order)? {
        Output::Json(v) => (pretty(&v), ExitCode::SUCCESS),
        Output::Text(t) => (t, ExitCode::SUCCESS),
        Output::Report { text, failures } => (
            text,
            if failures > 0 {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            },
        ),
    };
    emit(cli.output.as_deref(), &text)?;
    Ok(code)
}

fn resolve_order(flag: Option<usize>) -> CliResult<usize> {
    let order = match flag {
        Some(n) => n,
        None => match std::env::var(ORDER_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("{ORDER_ENV} must be a positive integer, got '{s}'")))?,
            Err(_) => DEFAULT_ORDER,
        },
    };
    if order < 2 {
        return Err(CliError::Config(format!("order must be >= 2, got {order}")));
    }
    Ok(order)
}

fn execute(cmd: &Command, order: usize) -> CliResult<Output> {
    Ok(match cmd {
        Command::Apply { input, op } => {
            let f: TruncatedSeries = read_json(input)?;
            Output::Json(to_value(&apply_operator(&f, &op.params()?)?))
        }
        Command::Bernardi { input, sigma, inverse } => {
            let f: TruncatedSeries = read_json(input)?;
            let b = BernardiParams::new(*sigma)?;
            let g = if *inverse {
                bernardi_inverse(&f, &b)?
            } else {
                bernardi(&f, &b)?
            };
            Output::Json(to_value(&g))
        }
        Command::Functional { input, class, op } => {
            let f: TruncatedSeries = read_json(input)?;
            Output::Json(to_value(&class_functional(&f, &class.params()?, &op.params()?)?))
        }
        Command::Membership {
            input,
            measure,
            k,
            rho,
            named,
            theta,
            probe,
        } => {
            let probe = probe.probe()?;
            let report = match (named, input, measure) {
                (Some(which), Some(path), _) => {
                    let f: TruncatedSeries = read_json(path)?;
                    let class = match which {
                        Named::B2 => NamedClass::B2 {
                            exponent: *theta,
                            rho: *rho,
                        },
                        Named::B3 => NamedClass::B3 { rho: *rho },
                        Named::B4 => NamedClass::B4 { rho: *rho },
                        Named::M => NamedClass::M { rho: *rho },
                    };
                    in_named_subclass(&f, &class, &probe)?
                }
                (None, Some(path), _) => {
                    let p: NormalizedSeries = read_json(path)?;
                    in_pk_rho(&p, *k, *rho, &probe)?
                }
                (None, None, Some(path)) => {
                    let mu: HerglotzMeasure = read_json(path)?;
                    mu.validate_for(*k)?;
                    let p = herglotz_polynomial(&mu, *rho, order)?;
                    in_pk_rho(&p, *k, *rho, &probe)?
                }
                _ => return Err(CliError::Config("membership needs --input or --measure".into())),
            };
            Output::Json(to_value(&report))
        }
        Command::Inverse { input, class, op } => {
            let p: NormalizedSeries = read_json(input)?;
            Output::Json(to_value(&solve_functional_inverse(
                &p,
                &class.params()?,
                &op.params()?,
            )?))
        }
        Command::Radius {
            input,
            csv,
            lambda_gammas,
            thetas,
            scan,
            class,
            op,
            probe,
        } => {
            let cp = class.params()?;
            let op = op.params()?;
            if *csv {
                let which = match scan {
                    Scan::Sharp => ScanFunction::Sharp,
                    Scan::Extremal => ScanFunction::Extremal,
                };
                let rows = radius_scan(lambda_gammas, thetas, &cp, &op, which, order, &probe.probe()?)?;
                Output::Text(scan_csv(&rows))
            } else if let Some(path) = input {
                let f: TruncatedSeries = read_json(path)?;
                Output::Json(to_value(&empirical_radius(&f, &cp, &op, &probe.probe()?)?))
            } else {
                let r = radius_r1(op.lambda, cp.real_gamma()?, cp.exponent)?;
                Output::Json(json!({ "r_formula": r }))
            }
        }
        Command::Sharp { class, op } => {
            Output::Json(to_value(&sharp_function(&class.params()?, &op.params()?, order)?))
        }
        Command::Iota { rho, gamma, sigma } => {
            let (i, i1) = iota(*rho, *gamma, *sigma, &QuadratureSpec::default())?;
            Output::Json(json!({ "iota": i, "iota1": i1 }))
        }
        Command::Verify {
            theorem,
            trials,
            seed,
            threads,
            allowance,
            params,
            probe,
        } => {
            let params: ParamSource = match params {
                Some(path) => read_json(path)?,
                None => ParamSource::RandomBox,
            };
            let cfg = VerifyConfig {
                trials: *trials,
                seed: *seed,
                order,
                probe: probe.probe()?,
                allowance: *allowance,
                threads: *threads,
                params,
            };
            let report = verify(*theorem, &cfg)?;
            let mut text = report_json(&report);
            text.push('\n');
            Output::Report {
                text,
                failures: report.failures,
            }
        }
        Command::Bazilevic { input } => {
            let bp: BazilevicParams = read_json(input)?;
            Output::Json(to_value(&bazilevic_construct(&bp, order)?))
        }
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Schema {
        path: path.to_owned(),
        source,
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Pretty JSON; `Value` maps keep keys sorted.
fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
