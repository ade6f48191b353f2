//! Argument handling for the `fewnomial` binary.

use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fewnomial::algebra::{Rat, UniPoly};
use fewnomial::reduce::PhiMap;
use fewnomial::rootcount::{bound_phi, bound_t};
use num_traits::One;
use serde::Serialize;

use crate::parse::{parse_poly, parse_system, SystemSpec};
use crate::report::{cmd_analyze, count_settings, SCHEMA_VERSION};
use crate::sample::{cmd_sample, write_csv, Target};
use crate::search::{cmd_search, parse_slots, parse_support, SearchOptions, Space};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fewnomial", version, about = "Certified positive-solution counts for fewnomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// System as "f ; g" or a JSON object.
    system: Option<String>,
    /// Read the system from a file instead.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long)]
    max_depth: Option<u32>,
    /// Allow large budgets for high-degree systems.
    #[arg(long)]
    slow: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    #[value(name = "F", alias = "f")]
    F,
    Phi,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline with a JSON report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock timings (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Single-line JSON.
        #[arg(long)]
        compact: bool,
    },
    /// CSV samples of F or phi over (0,1).
    Sample {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "F")]
        what: What,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded search; records go to --out as JSON lines.
    Search {
        /// Exponents of f, as "i,j i,j ...".
        #[arg(long)]
        f_support: Option<String>,
        #[arg(long)]
        g_support: Option<String>,
        /// Coefficient magnitudes, as "lo:hi".
        #[arg(long, default_value = "1/100:100")]
        coeff_range: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Base system for a grid search.
        #[arg(long)]
        base: Option<String>,
        /// Coefficients of the base to perturb, as "f1,g2".
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// Relative half-width of the grid.
        #[arg(long, default_value = "1/20")]
        rel: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        threshold: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        slow: bool,
    },
    /// Table of the bounds in the number of terms and the phi degrees.
    Bounds {
        #[arg(long, default_value_t = 8)]
        t_max: usize,
        #[arg(long)]
        deg_p: Option<usize>,
        #[arg(long)]
        deg_q: Option<usize>,
    },
}

#[derive(Serialize)]
struct BoundsTable {
    schema_version: u32,
    bound_t: Vec<(usize, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_phi: Option<u64>,
}

struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn read_spec(input: &Input) -> Result<SystemSpec, Failure> {
    let text = match (&input.system, &input.file) {
        (Some(s), None) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        _ => return Err(usage("give the system either inline or with --file")),
    };
    let mut spec = parse_system(&text).map_err(usage)?;
    if let Some(p) = input.precision {
        spec.options.precision = p;
    }
    if let Some(d) = input.max_depth {
        spec.options.max_depth = d;
    }
    spec.options.slow |= input.slow;
    Ok(spec)
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    let p = parse_poly(s).map_err(usage)?;
    match p.terms() {
        [] => Ok(Rat::from_integer(0.into())),
        [t] if t.exp == (Rat::from_integer(0.into()), Rat::from_integer(0.into())) => {
            Ok(t.coeff.as_rat().cloned().unwrap_or_default())
        }
        _ => Err(usage(format!("not a number: {s}"))),
    }
}

fn output<'a>(path: &Option<PathBuf>, append: bool, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, Failure> {
    match path {
        None => Ok(Box::new(stdout)),
        Some(p) => {
            let f = if append {
                OpenOptions::new().create(true).append(true).open(p)
            } else {
                File::create(p)
            };
            Ok(Box::new(f.map_err(|e| usage(format!("{}: {e}", p.display())))?))
        }
    }
}

/// A PhiMap with the given degrees, for the bounds table.
fn generic_phi(dp: usize, dq: usize) -> PhiMap {
    let x_plus = |d: usize| {
        UniPoly::linear(Rat::from_integer(2.into()), Rat::one()).pow(d as u32)
    };
    PhiMap::rational(Rat::one(), Rat::one(), x_plus(dp), x_plus(dq)).expect("nonzero polynomials")
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: io::Error| Failure(EXIT_USAGE, e.to_string());
    match cmd {
        Command::Analyze {
            input,
            out,
            timings,
            compact,
        } => {
            let spec = read_spec(&input)?;
            let report = cmd_analyze(&spec, timings);
            let text = if compact {
                serde_json::to_string(&report)
            } else {
                serde_json::to_string_pretty(&report)
            }
            .map_err(|e| usage(e))?;
            let code = report.exit_code();
            let mut w = output(&out, false, stdout)?;
            writeln!(w, "{text}").map_err(io)?;
            if code == EXIT_VIOLATION {
                writeln!(stderr, "bound violated; diagnostic bundle follows").map_err(io)?;
                writeln!(stderr, "{text}").map_err(io)?;
            }
            Ok(code)
        }
        Command::Sample { input, what, n, out } => {
            let spec = read_spec(&input)?;
            let target = match what {
                What::F => Target::F,
                What::Phi => Target::Phi,
            };
            let rows = cmd_sample(&spec, target, n).map_err(usage)?;
            let mut w = output(&out, false, stdout)?;
            write_csv(&rows, &mut w).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Search {
            f_support,
            g_support,
            coeff_range,
            trials,
            base,
            perturb,
            steps,
            rel,
            seed,
            threshold,
            out,
            slow,
        } => {
            let space = match (base, f_support, g_support) {
                (Some(b), None, None) => {
                    let spec = parse_system(&b).map_err(usage)?;
                    let slots = perturb
                        .as_deref()
                        .and_then(parse_slots)
                        .ok_or_else(|| usage("--perturb must look like f1,g2"))?;
                    Space::Grid {
                        f: spec.f,
                        g: spec.g,
                        perturb: slots,
                        steps,
                        rel: parse_rat(&rel)?,
                    }
                }
                (None, Some(fs), Some(gs)) => {
                    let sup = |s: &str| parse_support(s).ok_or_else(|| usage(format!("bad support: {s}")));
                    let (lo, hi) = coeff_range
                        .split_once(':')
                        .ok_or_else(|| usage("--coeff-range must look like lo:hi"))?;
                    Space::Random {
                        f_support: sup(&fs)?,
                        g_support: sup(&gs)?,
                        coeff_range: (parse_rat(lo)?, parse_rat(hi)?),
                        trials,
                    }
                }
                _ => return Err(usage("give either --base or both --f-support and --g-support")),
            };
            let opts = SearchOptions {
                space,
                seed,
                threshold,
                settings: count_settings(&crate::parse::Options {
                    slow,
                    ..Default::default()
                }),
            };
            let (summary, _) = match &out {
                Some(_) => {
                    let mut w = output(&out, true, stdout)?;
                    cmd_search(&opts, &mut w).map_err(usage)?
                }
                None => cmd_search(&opts, &mut io::sink()).map_err(usage)?,
            };
            let text = serde_json::to_string_pretty(&summary).map_err(usage)?;
            writeln!(stdout, "{text}").map_err(io)?;
            Ok(if summary.violations > 0 { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Bounds { t_max, deg_p, deg_q } => {
            let table = BoundsTable {
                schema_version: SCHEMA_VERSION,
                bound_t: (3..=t_max.max(3)).filter_map(|t| Some((t, bound_t(t).ok()?))).collect(),
                bound_phi: match (deg_p, deg_q) {
                    (Some(p), Some(q)) => Some(bound_phi(&generic_phi(p, q))),
                    (None, None) => None,
                    _ => return Err(usage("give both --deg-p and --deg-q")),
                },
            };
            writeln!(stdout, "{}", serde_json::to_string_pretty(&table).map_err(usage)?).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("fewnomial").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn bounds_table() {
        let (code, out, _) = run_str(&["bounds", "--t-max", "5", "--deg-p", "1", "--deg-q", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["bound_t"], serde_json::json!([[3, 5], [4, 11], [5, 23]]));
        assert_eq!(v["bound_phi"], 4);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["analyze", "x + ; y"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["sample", "x - y ; 1 + x - y", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bounds", "--deg-p", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn same_sign_g_counts_zero() {
        let (code, out, _) = run_str(&["analyze", "--compact", "x^2 - y ; 1 + x + y"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"]["count"], 0);
        assert_eq!(v["count"]["status"], "certified_exact");
    }

    #[test]
    fn zero_trial_search() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        let (code, _, _) = run_str(&[
            "search",
            "--f-support",
            "6,0 0,3 0,1",
            "--g-support",
            "0,6 3,0 1,0",
            "--trials",
            "0",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
    }
}
