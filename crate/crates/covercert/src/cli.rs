//! The `covercert` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use covercert_core::analytic::{smooth_reciprocal_sum, thm1_bound, thm2_bound};
use covercert_core::constructions::{construct_theorem_lb, shift_expand, ShiftExpansionSpec};
use covercert_core::distortion::{certify, DeltaSchedule, PrimeLadder};
use covercert_core::{BigRational, CongruenceSystem, Error as CoreError, Limits};
use serde_json::json;

use crate::format::{emit_json, emit_text, parse_system, FormatError};
use crate::rational::{fmt_rational, parse_rational, parse_rational_list};
use crate::report::{certificate_json, certificate_text};

#[derive(Parser, Debug)]
#[command(name = "covercert", version, about = "Covering systems of congruences: decide, construct, certify")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Inline system, e.g. "0 mod 2, 0 mod 3"
    #[arg(long, global = true, env = "COVERCERT_SYSTEM", conflicts_with = "input")]
    pub system: Option<String>,
    /// System file in text or JSON form; `-` reads standard input
    #[arg(long, global = true, env = "COVERCERT_INPUT")]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text, env = "COVERCERT_FORMAT")]
    pub format: OutputFormat,
    /// Largest residue space mod Q (or Q_j) to enumerate
    #[arg(long, global = true, default_value_t = 10_000_000, env = "COVERCERT_LIMIT_RESIDUES",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub limit_residues: u64,
    /// Largest interval {1..2^n} to scan
    #[arg(long, global = true, default_value_t = 1 << 24, env = "COVERCERT_LIMIT_INTERVAL",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub limit_interval: u64,
    /// Largest divisor list to enumerate
    #[arg(long, global = true, default_value_t = 1_000_000, env = "COVERCERT_LIMIT_DIVISORS",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub limit_divisors: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Whichever of Q and 2^n is smaller
    Auto,
    Oracle,
    Interval,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the system covers the integers
    Verify {
        #[arg(long, value_enum, default_value_t = Method::Auto, env = "COVERCERT_METHOD")]
        method: Method,
    },
    /// Smallest residue mod Q left uncovered
    Witness,
    /// Single-removal minimality of a covering system
    Minimal,
    /// Largest number of classes sharing a modulus
    Multiplicity,
    /// Proportion of residues mod Q left uncovered
    Density,
    /// The explicit minimal covering system with j classes
    Construct {
        #[arg(long, value_parser = clap::value_parser!(u32).range(5..))]
        j: u32,
    },
    /// Shift expansion of a minimal covering system
    Reduce {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
        /// Skip checking that the source is a minimal covering system
        #[arg(long)]
        no_check: bool,
    },
    /// Run the distortion criterion
    Certify {
        /// Comma-separated deltas, one per prime of Q, e.g. "0,1/2"
        #[arg(long, env = "COVERCERT_DELTAS", conflicts_with = "schedule_c", allow_hyphen_values = true)]
        deltas: Option<String>,
        /// Threshold-rule constant C: delta = 0 for p <= C s^3, 1/2 above
        #[arg(long = "schedule-C", env = "COVERCERT_SCHEDULE_C")]
        schedule_c: Option<String>,
    },
    /// Evaluate the minimum-modulus bound shapes
    Bounds {
        /// The absolute constant c; there is no default
        #[arg(long, env = "COVERCERT_C")]
        c: String,
        #[arg(long, required_unless_present = "s")]
        j: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        /// Significant digits
        #[arg(long, default_value_t = 50, env = "COVERCERT_PRECISION",
              value_parser = clap::value_parser!(u32).range(1..=10_000))]
        precision: u32,
    },
    /// Exact sum of 1/d over y-smooth d in (threshold, cap]
    Smoothsum {
        #[arg(long)]
        y: u64,
        #[arg(long)]
        threshold: u64,
        #[arg(long)]
        cap: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Format(_) => 1,
            CliError::Core(e) => match e {
                CoreError::InvalidModulus(_) | CoreError::InvalidInput(_) => 1,
                CoreError::ResourceLimit { .. } | CoreError::Overflow(_) => 2,
                CoreError::Domain(_) | CoreError::Inconsistent(_) => 3,
            },
        }
    }
}

type Result<T, E = CliError> = std::result::Result<T, E>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn limits(common: &Common) -> Limits {
    Limits {
        max_residues: common.limit_residues,
        max_interval: common.limit_interval,
        max_divisors: common.limit_divisors,
    }
}

fn load_system(common: &Common) -> Result<CongruenceSystem> {
    let text = match (&common.system, &common.input) {
        (Some(inline), _) => inline.clone(),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
            buf
        }
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?,
        (None, None) => return Err(CliError::Usage("this command needs --system or --input".into())),
    };
    Ok(parse_system(&text)?)
}

fn emit_system(sys: &CongruenceSystem, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => emit_text(sys),
        OutputFormat::Json => emit_json(sys) + "\n",
    }
}

fn json_line(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("values always serialize") + "\n"
}

fn rational_arg(s: &str, name: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<String> {
    let common = &cli.common;
    let limits = limits(common);
    let format = common.format;
    match &cli.command {
        Command::Verify { method } => verify(&load_system(common)?, *method, &limits, format),
        Command::Witness => {
            let report = load_system(common)?.covers_oracle(&limits)?;
            Ok(match format {
                OutputFormat::Text => match report.witness {
                    Some(w) => format!("witness: {w} mod {}\n", report.modulus),
                    None => format!("none: every residue mod {} is covered\n", report.modulus),
                },
                OutputFormat::Json => json_line(json!({ "witness": report.witness, "modulus": report.modulus })),
            })
        }
        Command::Minimal => {
            let sys = load_system(common)?.sorted();
            let m = sys.is_minimal(&limits)?;
            Ok(match format {
                OutputFormat::Text => {
                    let mut s = format!("minimal: {}\n", m.minimal);
                    for &i in &m.redundant {
                        s.push_str(&format!("redundant: {}\n", sys.classes()[i]));
                    }
                    s
                }
                OutputFormat::Json => {
                    let redundant: Vec<_> = m
                        .redundant
                        .iter()
                        .map(|&i| {
                            let c = sys.classes()[i];
                            json!({ "index": i, "r": c.residue(), "d": c.modulus() })
                        })
                        .collect();
                    json_line(json!({ "minimal": m.minimal, "redundant": redundant }))
                }
            })
        }
        Command::Multiplicity => {
            let sys = load_system(common)?;
            let (m, distinct) = (sys.multiplicity()?, sys.distinct_multiplicity()?);
            Ok(match format {
                OutputFormat::Text => format!("multiplicity: {m}\ndistinct: {distinct}\n"),
                OutputFormat::Json => json_line(json!({ "multiplicity": m, "distinct": distinct })),
            })
        }
        Command::Density => {
            let report = load_system(common)?.covers_oracle(&limits)?;
            let density = BigRational::new(report.uncovered_count.into(), report.modulus.into());
            Ok(match format {
                OutputFormat::Text => format!(
                    "density: {}\nuncovered: {}\nmodulus: {}\n",
                    fmt_rational(&density),
                    report.uncovered_count,
                    report.modulus
                ),
                OutputFormat::Json => json_line(json!({
                    "density": fmt_rational(&density),
                    "uncovered": report.uncovered_count,
                    "modulus": report.modulus,
                })),
            })
        }
        Command::Construct { j } => Ok(emit_system(&construct_theorem_lb(*j)?.sorted(), format)),
        Command::Reduce { ell, no_check } => {
            let sys = load_system(common)?;
            if !no_check {
                check_minimal_covering(&sys, &limits, err)?;
            }
            let ell = usize::try_from(*ell).map_err(|_| CoreError::Overflow("ell exceeds usize"))?;
            let spec = ShiftExpansionSpec::new(&sys, ell)?;
            Ok(emit_system(&shift_expand(&spec, &limits)?, format))
        }
        Command::Certify { deltas, schedule_c } => {
            let sys = load_system(common)?;
            let schedule = match (deltas, schedule_c) {
                (Some(list), _) => {
                    DeltaSchedule::new(parse_rational_list(list).map_err(|e| CliError::Usage(format!("--deltas: {e}")))?)?
                }
                (None, c) => {
                    let c = match c {
                        Some(c) => rational_arg(c, "schedule-C")?,
                        None => {
                            let _ = writeln!(err, "note: no schedule given; using the threshold rule with C = 1");
                            BigRational::from_integer(1.into())
                        }
                    };
                    let ladder = PrimeLadder::new(sys.lcm_factorization())?;
                    let s = sys.multiplicity().unwrap_or(1) as u64;
                    DeltaSchedule::threshold_rule(s, &c, &ladder)?
                }
            };
            let cert = certify(&sys, &schedule, &limits)?;
            Ok(match format {
                OutputFormat::Text => certificate_text(&cert),
                OutputFormat::Json => certificate_json(&cert) + "\n",
            })
        }
        Command::Bounds { c, j, s, precision } => {
            let c = rational_arg(c, "c")?;
            let thm1 = j.map(|j| thm1_bound(j, &c, *precision).map(|v| (j, v))).transpose()?;
            let thm2 = s.map(|s| thm2_bound(s, &c, *precision).map(|v| (s, v))).transpose()?;
            Ok(match format {
                OutputFormat::Text => {
                    let mut out = String::new();
                    if let Some((j, v)) = &thm1 {
                        out.push_str(&format!("thm1(j={j}, c={}) = {v}\n", fmt_rational(&c)));
                    }
                    if let Some((s, v)) = &thm2 {
                        out.push_str(&format!("thm2(s={s}, c={}) = {v}\n", fmt_rational(&c)));
                    }
                    out
                }
                OutputFormat::Json => json_line(json!({
                    "c": fmt_rational(&c),
                    "precision": precision,
                    "thm1": thm1.map(|(j, v)| json!({ "j": j, "value": v.to_string() })),
                    "thm2": thm2.map(|(s, v)| json!({ "s": s, "value": v.to_string() })),
                })),
            })
        }
        Command::Smoothsum { y, threshold, cap } => {
            let sum = smooth_reciprocal_sum(*y, *threshold, *cap)?;
            Ok(match format {
                OutputFormat::Text => format!("{}\n", fmt_rational(&sum)),
                OutputFormat::Json => json_line(json!({
                    "y": y,
                    "threshold": threshold,
                    "cap": cap,
                    "sum": fmt_rational(&sum),
                })),
            })
        }
    }
}

fn verify(sys: &CongruenceSystem, method: Method, limits: &Limits, format: OutputFormat) -> Result<String> {
    let n = sys.len() as u32;
    let use_oracle = match method {
        Method::Oracle => true,
        Method::Interval => false,
        Method::Auto => match sys.lcm_value() {
            Some(q) => n >= 64 || q <= 1u64 << n,
            None => false,
        },
    };
    if use_oracle {
        let report = sys.covers_oracle(limits)?;
        return Ok(match format {
            OutputFormat::Text => {
                let mut s = format!(
                    "covers: {}\nmethod: oracle\nmodulus: {}\nuncovered: {}\n",
                    report.covers, report.modulus, report.uncovered_count
                );
                if let Some(w) = report.witness {
                    s.push_str(&format!("witness: {w}\n"));
                }
                s
            }
            OutputFormat::Json => json_line(json!({
                "covers": report.covers,
                "method": "oracle",
                "modulus": report.modulus,
                "uncovered": report.uncovered_count,
                "witness": report.witness,
            })),
        });
    }
    let first = sys.first_uncovered_in_interval(limits)?;
    let end = 1u64 << n;
    Ok(match format {
        OutputFormat::Text => {
            let mut s = format!("covers: {}\nmethod: interval\ninterval: 1..={end}\n", first.is_none());
            if let Some(w) = first {
                s.push_str(&format!("witness: {w}\n"));
            }
            s
        }
        OutputFormat::Json => json_line(json!({
            "covers": first.is_none(),
            "method": "interval",
            "interval_end": end,
            "witness": first,
        })),
    })
}

/// `reduce` expects a minimal covering source; checked when `Q` is small
/// enough to enumerate.
fn check_minimal_covering(sys: &CongruenceSystem, limits: &Limits, err: &mut dyn Write) -> Result<()> {
    if !sys.lcm_value().is_some_and(|q| q <= limits.max_residues) {
        let _ = writeln!(err, "note: Q is over the residue limit; not checking that the source is minimal");
        return Ok(());
    }
    let m = sys.is_minimal(limits)?;
    if let Some(&i) = m.redundant.first() {
        return Err(CoreError::Domain(format!(
            "the source is not a minimal covering system: {} is redundant",
            sys.classes()[i]
        ))
        .into());
    }
    Ok(())
}
