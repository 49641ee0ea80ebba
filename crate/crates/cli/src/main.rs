//! `erdos`: certification, brute-force verification and density-constant experiments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use erdos_core::certify::{census, certify, Status};
use erdos_core::density::{
    alt_bound, dense_counterexample_primes, first_moment_constant, mertens_ratio, minimize_alt,
    minimize_moment, moment_sum_empirical, second_moment_constant, wirsing_check, CurvePoint,
    IntegerMomentSpline, MomentCurve, MomentEvaluator, DEFAULT_DEPTH,
};
use erdos_core::okada::brute::{DEFAULT_CEILING, DEFAULT_CRITERION_BOUND, DEFAULT_THRESHOLD};
use erdos_core::okada::{
    brute_force_verify, criterion_verdict, l_one, BruteOptions, ErdosianFunction,
};
use erdos_core::Error;

/// Overrides the default prime limit for Euler products.
const PRIME_LIMIT_ENV: &str = "ERDOS_PRIME_LIMIT";
const DEFAULT_PRIME_LIMIT: u64 = 1_000_000;

const EXIT_UNKNOWN: u8 = 10;
const EXIT_ESCALATION: u8 = 20;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "erdos",
    version,
    about = "Erdős non-vanishing certification and density bounds"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for data-parallel steps; results do not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Evaluator {
    Empirical,
    Integer,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the certification cascade on one modulus.
    Certify { q: u64 },
    /// Certify every q ≡ 1 (mod 4) up to --max.
    Census {
        #[arg(long = "max")]
        max: u64,
        /// Write the Unknown moduli here, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every balanced Erdősian function mod q.
    Brute {
        q: u64,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        /// Smooth-number bound for the criterion evidence.
        #[arg(long, default_value_t = DEFAULT_CRITERION_BOUND)]
        bound: u64,
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u64,
    },
    /// Okada's criterion and L(1, f) for one sign vector.
    Okada {
        q: u64,
        /// `+`/`-` string of length q − 1 giving f(1), …, f(q − 1).
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// First or second moment Euler-product constant.
    Constant {
        which: Which,
        #[arg(long)]
        prime_limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Normalized r-th moment of the divisor–totient sum up to --max.
    Moment {
        #[arg(long)]
        r: f64,
        #[arg(long = "max")]
        max: u64,
    },
    /// Minimize the fractional moment over r.
    MomentMin {
        #[arg(long = "max")]
        max: u64,
        /// Defaults to 1,10 for the empirical evaluator and 1,8 for the integer one.
        #[arg(long, value_parser = parse_range)]
        range: Option<(f64, f64)>,
        #[arg(long, value_enum, default_value_t = Evaluator::Empirical)]
        evaluator: Evaluator,
        #[arg(long)]
        prime_limit: Option<u64>,
        /// Write the sampled curve as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Alternative bound (p1 + p2)/2^α at one α.
    Alt {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        prime_limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Minimize the alternative bound over α.
    AltMin {
        #[arg(long)]
        prime_limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
        #[arg(long, default_value = "1,16", value_parser = parse_range)]
        range: (f64, f64),
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// log X · Π_{p ≤ X} (1 − 1/p).
    Mertens {
        #[arg(long = "max")]
        max: u64,
    },
    /// Empirical vs predicted mean of f_α over odd q ≤ X.
    Wirsing {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "max")]
        max: u64,
    },
    /// Shortest run of primes ≡ 1 (mod 4) with Π p/(p − 1) ≥ target.
    DenseQ {
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = erdos_core::density::dense::DEFAULT_PRIME_CAP)]
        prime_cap: u64,
    },
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Module(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn default_prime_limit(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var(PRIME_LIMIT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!("{PRIME_LIMIT_ENV}={v:?} is not a positive integer"))
        }),
        Err(_) => Ok(DEFAULT_PRIME_LIMIT),
    }
}

fn emit<T: Serialize>(format: Format, value: &T) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(value).expect("report serializes")
        )?,
        Format::Human => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        )?,
        Format::Csv => {
            let json = serde_json::to_value(value).expect("report serializes");
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["field", "value"]).map_err(csv_io)?;
            if let Value::Object(map) = json {
                for (k, v) in map {
                    let cell = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    w.write_record([k, cell]).map_err(csv_io)?;
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn write_curve(path: &PathBuf, curve: &[CurvePoint]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["exponent", "truncation", "value", "tail_bound"])
        .map_err(csv_io)?;
    for p in curve {
        w.write_record([
            format!("{}", erdos_core::num_format::round12(p.exponent)),
            p.truncation.to_string(),
            format!("{}", erdos_core::num_format::round12(p.value)),
            format!("{}", erdos_core::num_format::round12(p.tail_bound)),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct OkadaReport {
    q: u64,
    signs: String,
    period_sum: i64,
    verdict: erdos_core::okada::CriterionVerdict,
    l_one: erdos_core::okada::LValue,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    let workers = cli.workers.max(1);
    match cli.command {
        Command::Certify { q } => {
            let cert = certify(q)?;
            emit(format, &cert)?;
            Ok(if cert.status == Status::Unknown {
                EXIT_UNKNOWN
            } else {
                0
            })
        }
        Command::Census { max, out } => {
            let report = census(max, workers)?;
            if let Some(path) = out {
                let mut f = BufWriter::new(File::create(path)?);
                for q in &report.unknown_moduli {
                    writeln!(f, "{q}")?;
                }
                f.flush()?;
            }
            if format == Format::Csv {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["rule", "count", "fraction"])
                    .map_err(csv_io)?;
                for (rule, count, frac) in report.rows() {
                    w.write_record([
                        rule.to_string(),
                        count.to_string(),
                        erdos_core::num_format::round12(frac).to_string(),
                    ])
                    .map_err(csv_io)?;
                }
                w.flush()?;
            } else {
                emit(format, &report)?;
            }
            Ok(0)
        }
        Command::Brute {
            q,
            threshold,
            bound,
            ceiling,
        } => {
            let opts = BruteOptions {
                threshold,
                ceiling,
                criterion_bound: bound,
                workers,
            };
            match brute_force_verify(q, &opts) {
                Ok(report) => {
                    emit(format, &report)?;
                    Ok(0)
                }
                Err(e @ Error::Escalation { .. }) => {
                    if let Error::Escalation {
                        q,
                        signs,
                        abs_value,
                        threshold,
                        error_bound,
                    } = &e
                    {
                        emit(
                            format,
                            &serde_json::json!({
                                "q": q,
                                "all_nonzero": false,
                                "offending_signs": signs,
                                "abs_value": erdos_core::num_format::round12(*abs_value),
                                "threshold": threshold,
                                "error_bound": erdos_core::num_format::round12(*error_bound),
                            }),
                        )?;
                    }
                    eprintln!("erdos: {e}");
                    Ok(EXIT_ESCALATION)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Okada { q, signs, bound } => {
            if q < 2 || signs.len() as u64 != q - 1 {
                return Err(Failure::Usage(format!(
                    "--signs must have length q − 1 = {}, got {}",
                    q.saturating_sub(1),
                    signs.chars().count()
                )));
            }
            if let Some(c) = signs.chars().find(|c| *c != '+' && *c != '-') {
                return Err(Failure::Usage(format!(
                    "--signs may contain only '+' and '-', found {c:?}"
                )));
            }
            let f = ErdosianFunction::from_sign_str(q, &signs)?;
            let report = OkadaReport {
                q,
                signs,
                period_sum: f.period_sum(),
                verdict: criterion_verdict(&f, bound)?,
                l_one: l_one(&f)?,
            };
            emit(format, &report)?;
            Ok(0)
        }
        Command::Constant {
            which,
            prime_limit,
            depth,
        } => {
            let limit = default_prime_limit(prime_limit)?;
            let est = match which {
                Which::First => first_moment_constant(limit)?,
                Which::Second => second_moment_constant(limit, depth)?,
            };
            emit(format, &est)?;
            Ok(0)
        }
        Command::Moment { r, max } => {
            emit(format, &moment_sum_empirical(r, max, workers)?)?;
            Ok(0)
        }
        Command::MomentMin {
            max,
            range,
            evaluator,
            prime_limit,
            curve,
        } => {
            let report = match evaluator {
                Evaluator::Empirical => {
                    let c = MomentCurve::new(max, workers)?;
                    minimize_moment(MomentEvaluator::Empirical(&c), range.unwrap_or((1.0, 10.0)))?
                }
                Evaluator::Integer => {
                    let s =
                        IntegerMomentSpline::new(default_prime_limit(prime_limit)?, DEFAULT_DEPTH)?;
                    let range = range.unwrap_or((1.0, IntegerMomentSpline::MAX_EXPONENT));
                    minimize_moment(MomentEvaluator::IntegerInterpolated(&s), range)?
                }
            };
            if let Some(path) = curve {
                write_curve(&path, &report.curve)?;
            }
            emit(format, &report)?;
            Ok(0)
        }
        Command::Alt {
            alpha,
            prime_limit,
            depth,
        } => {
            emit(
                format,
                &alt_bound(alpha, default_prime_limit(prime_limit)?, depth)?,
            )?;
            Ok(0)
        }
        Command::AltMin {
            prime_limit,
            depth,
            range,
            curve,
        } => {
            let report = minimize_alt(default_prime_limit(prime_limit)?, depth, range)?;
            if let Some(path) = curve {
                write_curve(&path, &report.curve)?;
            }
            emit(format, &report)?;
            Ok(0)
        }
        Command::Mertens { max } => {
            let ratio = mertens_ratio(max)?;
            emit(
                format,
                &serde_json::json!({
                    "x": max,
                    "ratio": erdos_core::num_format::round12(ratio),
                    "limit": erdos_core::num_format::round12(erdos_core::density::mertens_limit()),
                }),
            )?;
            Ok(0)
        }
        Command::Wirsing { alpha, max } => {
            emit(format, &wirsing_check(alpha, max)?)?;
            Ok(0)
        }
        Command::DenseQ { target, prime_cap } => {
            emit(format, &dense_counterexample_primes(target, prime_cap)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("erdos: usage: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Module(e)) => {
            eprintln!("erdos: {e}");
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Io(e)) => {
            eprintln!("erdos: i/o error: {e}");
            ExitCode::FAILURE
        }
    }
}
