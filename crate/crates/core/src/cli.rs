//! `xxqpt` command-line interface.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::correlations::correlation_triple;
use crate::error::Error;
use crate::measures::{lqfi, lqfi_closed, owqd_closed, owqd_numeric};
use crate::oracle::{run_check, Check};
use crate::scan::{detect_transition, emit_csv, format_value, scan, write_csv, Measure, MeasureSet, ScanConfig};
use crate::state::build_x_state;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "xxqpt", version, about = "Quantum correlations across the XX chain transition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Correlations, LQFI and OWQD for a single coupling ratio and separation.
    Measure {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long)]
        m: u32,
    },
    /// Sweep the coupling ratio and write CSV.
    Scan {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long, default_value_t = 0.005, allow_negative_numbers = true)]
        step: f64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Measures to evaluate; the others are written as nan.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MeasureArg::Lqfi, MeasureArg::Owqd])]
        measures: Vec<MeasureArg>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a cross-check suite and report the largest deviation.
    Oracle {
        #[arg(long, value_enum)]
        check: CheckArg,
        /// Chain length for g and energy, number of random states for qfi and owqd.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Lqfi,
    Owqd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    G,
    Qfi,
    Owqd,
    Energy,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::G => Check::G,
            CheckArg::Qfi => Check::Qfi,
            CheckArg::Owqd => Check::Owqd,
            CheckArg::Energy => Check::Energy,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency { .. } | Error::NoConvergence { .. } => EXIT_CONSISTENCY,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> crate::Result<i32> {
    match command {
        Command::Measure { alpha, m } => {
            let t = correlation_triple(m, alpha)?;
            let s = build_x_state(t)?;
            let lq = lqfi_closed(&t).unwrap_or_else(|| lqfi(&s));
            let numeric = owqd_numeric(&s);
            let closed = owqd_closed(&t);
            if (closed - numeric.value).abs() > 1e-5 {
                return Err(Error::Consistency {
                    measure: "owqd",
                    alpha,
                    m,
                    closed,
                    numeric: numeric.value,
                });
            }
            writeln!(out, "t1 {}", format_value(t.t1))?;
            writeln!(out, "t3 {}", format_value(t.t3))?;
            writeln!(out, "lqfi {}", format_value(lq))?;
            writeln!(out, "owqd {}", format_value(closed))?;
            writeln!(out, "theta {}", format_value(numeric.basis.theta()))?;
            writeln!(out, "phi {}", format_value(numeric.basis.phi()))?;
            Ok(EXIT_OK)
        }
        Command::Scan {
            alpha_min,
            alpha_max,
            step,
            m,
            measures,
            out: path,
        } => {
            let set = MeasureSet {
                lqfi: measures.contains(&MeasureArg::Lqfi),
                owqd: measures.contains(&MeasureArg::Owqd),
            };
            let cfg = ScanConfig::new(alpha_min, alpha_max, step, m)?.with_measures(set);
            let rows = scan(&cfg)?;
            match path {
                Some(p) => emit_csv(&rows, &p)?,
                None => write_csv(&rows, &mut *out)?,
            }
            if rows.len() >= 5 {
                for (measure, name) in [(Measure::Lqfi, "lqfi"), (Measure::Owqd, "owqd")] {
                    if !set.contains(measure) {
                        continue;
                    }
                    let tr = detect_transition(&rows, measure)?;
                    if tr.detected {
                        eprintln!(
                            "{name}: transition at alpha = {}, slope jump {}",
                            format_value(tr.alpha_star),
                            format_value(tr.jump)
                        );
                    } else {
                        eprintln!("{name}: no transition above the noise floor");
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Oracle { check, n } => {
            let report = run_check(check.into(), n)?;
            writeln!(
                out,
                "{}: {} comparisons, max deviation {:e}, tolerance {:e}, {}",
                report.check.name(),
                report.comparisons,
                report.max_deviation,
                report.tolerance,
                if report.passed() { "ok" } else { "FAILED" }
            )?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_CONSISTENCY })
        }
    }
}
