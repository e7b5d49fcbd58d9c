mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lambdap::axioms::{run_suite, Suite};
use lambdap::braiding::{channels_json, hat_tau_moy};
use lambdap::knots::{normalize_alexander, BraidWord, KnotEngine, DEFAULT_BUDGET};
use lambdap::lambda::Lambda;
use lambdap::rmatrix::{rho_operator_form, RhoChannels};
use lambdap::Error;

#[derive(Parser)]
#[command(
    name = "lambdap",
    version,
    about = "Exact computations with the deformed exterior algebra Λ_p(V) and its R-matrix"
)]
struct Cli {
    /// Include wall-clock timings in JSON reports (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hopf,
    Ybe,
    Hecke,
    Lemmas,
    Nichols,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::Ybe => Suite::Ybe,
            SuiteArg::Hecke => Suite::Hecke,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Nichols => Suite::Nichols,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Product, coproduct, antipode, unit and counit.
    DumpStructure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The braiding on Λ_p(V) ⊗ Λ_p(V).
    DumpBraiding {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also dump the channels by exchange size.
        #[arg(long)]
        channels: bool,
    },
    /// The R-matrix in flat-index order.
    DumpRmatrix {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        dim: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Add the scattering / reflection / annihilation split.
        #[arg(long)]
        channels: bool,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=5))]
        dim: u8,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        json: bool,
    },
    /// Knot invariant of a braid closure.
    Invariant {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        dim: u8,
        /// Comma separated letters, e.g. "1,-2,1".
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: usize,
        /// Print the value before Alexander normalization.
        #[arg(long, conflicts_with = "normalized")]
        raw: bool,
        /// Normalize to Δ(1) = 1, Δ(t) = Δ(1/t) (dimension 1 only; the default there).
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::InvalidBraid(_)
            | Error::NotAKnot(_)
            | Error::InvalidDimension(_)
            | Error::InvalidRange(_)
            | Error::Parse(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("LAMBDAP_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "LAMBDAP_BUDGET must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LAMBDAP_WORKERS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "LAMBDAP_WORKERS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        })
}

/// Refuses work on more than `budget` basis tuples.
fn guard(dim: usize, arity: usize, budget: u128) -> Result<(), Failure> {
    let needed = 1u128 << (dim * arity);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_workers()?;
    let budget = budget()?;
    match cli.command {
        Command::DumpStructure { dim, format } => {
            let n = dim as usize;
            guard(n, 3, budget)?;
            let lambda = Lambda::new(n)?;
            let maps = [
                ("product", lambda.product()),
                ("coproduct", lambda.coproduct()),
                ("antipode", lambda.antipode()),
                ("unit", lambda.unit()),
                ("counit", lambda.counit()),
            ];
            match format {
                Format::Json => {
                    let mut v = json!({ "dim": n });
                    for (name, op) in maps {
                        v[name] = op.to_json();
                    }
                    print_json(&v);
                }
                Format::Text => {
                    for (name, op) in maps {
                        println!("# {name}");
                        print!("{}", output::operator_text(op));
                    }
                }
            }
        }
        Command::DumpBraiding {
            dim,
            format,
            channels,
        } => {
            let n = dim as usize;
            guard(n, 2, budget)?;
            let lambda = Lambda::new(n)?;
            let tau = hat_tau_moy(&lambda);
            match format {
                Format::Json => {
                    let mut v = json!({ "dim": n, "braiding": tau.to_json() });
                    if channels {
                        v["channels"] = channels_json(&lambda);
                    }
                    print_json(&v);
                }
                Format::Text => {
                    print!("{}", output::operator_text(tau));
                    if channels {
                        for k in 0..=n / 2 {
                            println!("# channel k={k}");
                            print!(
                                "{}",
                                output::operator_text(&lambdap::braiding::channel(
                                    &lambda, k, true
                                ))
                            );
                        }
                    }
                }
            }
        }
        Command::DumpRmatrix {
            dim,
            format,
            channels,
        } => {
            let n = dim as usize;
            guard(n, 2, budget)?;
            let lambda = Lambda::new(n)?;
            let rho = rho_operator_form(&lambda);
            let report = channels.then(|| RhoChannels::new(&lambda));
            match format {
                Format::Json => {
                    let mut v = output::rmatrix_json(&lambda, rho);
                    if let Some(r) = &report {
                        v["channels"] = r.to_json()?;
                    }
                    print_json(&v);
                }
                Format::Text => {
                    print!("{}", output::rmatrix_text(&lambda, rho));
                    if let Some(r) = &report {
                        print!("{}", output::channels_text(r)?);
                    }
                }
            }
        }
        Command::Verify { dim, suite, json } => {
            let n = dim as usize;
            guard(n.min(3), 3, budget)?;
            let reports = run_suite(suite.into(), n)?;
            let passed = reports.iter().all(|r| r.passed());
            if json {
                let v = json!({
                    "dim": n,
                    "suite": suite.to_possible_value().expect("named").get_name(),
                    "status": if passed { "pass" } else { "fail" },
                    "reports": reports.iter().map(|r| r.to_json(cli.timings)).collect::<Vec<_>>(),
                });
                print_json(&v);
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            if !passed {
                return Err(Failure {
                    code: 1,
                    message: "verification failed".into(),
                });
            }
        }
        Command::Invariant {
            dim,
            braid,
            strands,
            raw,
            normalized,
            json,
        } => {
            let n = dim as usize;
            if normalized && n > 1 {
                return Err(usage("--normalized applies to dimension 1 only"));
            }
            let word = BraidWord::parse(strands, &braid)?;
            let engine = KnotEngine::new(n)?;
            let inv = engine.invariant(&word, budget)?;
            if n == 1 && inv.value.depends_on_p() {
                return Err(Failure {
                    code: 1,
                    message: format!("dimension 1 invariant depends on p: {}", inv.value),
                });
            }
            let normalize = n == 1 && !raw;
            let value = if normalize {
                normalize_alexander(&inv.value)?
            } else {
                inv.value.clone()
            };
            let text = if n == 1 {
                value.to_string_descending()
            } else {
                value.to_string()
            };
            if json {
                let e = engine.enhancement();
                let v = json!({
                    "dim": n,
                    "strands": strands,
                    "braid": word.letters(),
                    "writhe": word.writhe(),
                    "mode": if normalize { "normalized" } else { "raw" },
                    "value": text,
                    "terms": value.to_json(),
                    "scalar": e_json(&inv.scalar),
                    "lambda_plus": e_json(&e.lambda_plus),
                    "lambda_minus": e_json(&e.lambda_minus),
                    "mu": e.mu.iter().map(e_json).collect::<Vec<_>>(),
                });
                print_json(&v);
            } else {
                println!("{text}");
            }
        }
    }
    Ok(())
}

fn e_json(x: &lambdap::RationalFn) -> Value {
    use lambdap::ring::Coeff;
    x.to_json()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
