//! Command-line front end. The `fracjump` binary is a thin wrapper around
//! [`main_with_args`]; the command functions are usable on their own.
//!
//! Exit codes: 0 on success, 2 for invalid parameters or ranges, 3 when a
//! certificate disagrees with brute force.

mod args;
mod bench;
mod certify;
mod stream;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{
    discrepancy_report, discrepancy_trend, exp_sum_check, second_moment_report,
    subspace_uniformity_check, trend_csv, SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::field::Modulus;
use crate::poly::find_projectively_primitive;
use crate::projective::projective_space_size;

pub use args::{parse_list, parse_seed, GeneratorArgs};
pub use bench::{
    bench, bench_entry, bench_generator, prime_below_power_of_two, BenchConfig, BenchEntry,
    BenchReport, Icg, OpReport, DEFAULT_GRID,
};
pub use certify::{certify, certify_sweep, CertifyReport, SweepReport};
pub use stream::{write_stream, ByteExtractor, OutputFormat};

#[derive(Parser, Debug)]
#[command(
    name = "fracjump",
    version,
    about = "Full-orbit generators from fractional jumps of projective maps"
)]
pub struct Cli {
    /// Worker threads for the exhaustive analysis loops.
    #[arg(long, global = true, env = "FRACJUMP_THREADS", default_value_t = 1)]
    pub threads: usize,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for a projectively primitive polynomial with small coefficients.
    Find {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
        /// Largest absolute value allowed for the non-leading coefficients.
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit points, scalars or bytes from a generator.
    Gen {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Initial point, comma separated; defaults to the origin.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value = "scalars")]
        format: OutputFormat,
        #[arg(long)]
        count: u64,
    },
    /// Decide transitivity from the characteristic polynomial and check it
    /// by brute force when feasible.
    Certify {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Check every matrix of GL_2(F_p) instead of a single one.
        #[arg(long)]
        sweep: bool,
    },
    /// Analysis reports.
    Analyze {
        #[command(subcommand)]
        report: AnalyzeCommand,
    },
    /// Time the jump against an inversive generator of the same output size.
    Bench {
        /// Cells as n:p pairs, e.g. "2:65537,3:65537".
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum AnalyzeCommand {
    /// Check that consecutive orbit points avoid proper projective subspaces.
    Uniformity {
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Number of windows; defaults to the size of P^n.
        #[arg(long)]
        windows: Option<u64>,
    },
    /// Exponential sum over all initial values against its explicit bound.
    Expsum {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        j0: u64,
        /// Frequency vector, comma separated; defaults to all ones.
        #[arg(long)]
        h: Option<String>,
    },
    /// Second moment of short exponential sums, as a ratio to its scale.
    Moment {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        j0: u64,
        #[arg(long)]
        h: Option<String>,
    },
    /// Exact star discrepancy of snake windows.
    Discrepancy {
        #[command(flatten)]
        generator: GeneratorArgs,
        #[arg(long)]
        s: usize,
        /// Sample count, or "full" for one period of the snake sequence.
        #[arg(long = "N", value_name = "N")]
        samples: Option<String>,
        /// Comma-separated sample counts; writes a CSV series instead.
        #[arg(long)]
        trend: Option<String>,
        #[arg(long)]
        seed: Option<String>,
    },
}

#[derive(Serialize)]
struct FindReport {
    schema_version: u32,
    p: u64,
    degree: usize,
    coeff_bound: u64,
    seed: u64,
    char_poly: Vec<i64>,
    display: String,
    companion_matrix: Vec<Vec<u64>>,
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn h_vector(text: Option<&str>, s: usize) -> Result<Vec<u64>> {
    match text {
        Some(t) => parse_list(t, "--h"),
        None => Ok(vec![1; s]),
    }
}

/// Runs a parsed command, writing its output to `out`.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Find {
            p,
            degree,
            bound,
            seed,
        } => {
            let f = find_projectively_primitive(Modulus::new(*p)?, *degree, *bound, *seed)?;
            write_json(
                &FindReport {
                    schema_version: SCHEMA_VERSION,
                    p: *p,
                    degree: *degree,
                    coeff_bound: *bound,
                    seed: *seed,
                    char_poly: f.signed_coeffs(),
                    display: f.to_string(),
                    companion_matrix: f.companion_matrix()?.rows(),
                },
                out,
            )
        }
        Command::Gen {
            generator,
            seed,
            format,
            count,
        } => {
            let jump = generator.build()?;
            let seed = parse_seed(seed.as_deref(), jump.dim())?;
            write_stream(&jump, &seed, *format, *count, out)
        }
        Command::Certify { generator, sweep } => {
            if *sweep {
                let p = generator
                    .p
                    .ok_or_else(|| Error::InvalidParameter("--sweep needs --p".into()))?;
                let report = certify_sweep(Modulus::new(p)?)?;
                write_json(&report, out)?;
                if report.disagreements > 0 {
                    return Err(Error::Inconsistency(format!(
                        "{} matrices disagree with brute force",
                        report.disagreements
                    )));
                }
                return Ok(());
            }
            let report = certify(&generator.matrix()?)?;
            write_json(&report, out)?;
            if report.agree == Some(false) {
                return Err(Error::Inconsistency(
                    "polynomial certificate and brute force disagree".into(),
                ));
            }
            Ok(())
        }
        Command::Analyze { report } => run_analysis(report, out),
        Command::Bench {
            grid,
            trials,
            steps,
        } => {
            let grid = match grid {
                None => DEFAULT_GRID.to_vec(),
                Some(text) => parse_grid(text)?,
            };
            let config = BenchConfig {
                grid,
                trials: *trials,
                steps: *steps,
            };
            write_json(&bench(&config)?, out)
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<(usize, u64)>> {
    text.split(',')
        .map(|cell| {
            let (n, p) = cell.trim().split_once(':').ok_or_else(|| {
                Error::InvalidParameter(format!("grid cell {cell:?} is not of the form n:p"))
            })?;
            let n = n
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad n in {cell:?}")))?;
            let p = p
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad p in {cell:?}")))?;
            Ok((n, p))
        })
        .collect()
}

fn run_analysis(command: &AnalyzeCommand, out: &mut dyn Write) -> Result<()> {
    match command {
        AnalyzeCommand::Uniformity { generator, windows } => {
            let matrix = generator.matrix()?;
            let n = matrix.dim() - 1;
            let windows = match windows {
                Some(w) => *w,
                None => u64::try_from(projective_space_size(matrix.modulus().p(), n))
                    .map_err(|_| Error::ResourceLimit("P^n is too large to walk".into()))?,
            };
            write_json(&subspace_uniformity_check(&matrix, windows)?, out)
        }
        AnalyzeCommand::Expsum {
            generator,
            s,
            d,
            j0,
            h,
        } => {
            let jump = generator.build()?;
            let h = h_vector(h.as_deref(), *s)?;
            write_json(&exp_sum_check(&jump, *s, *d, *j0, &h)?, out)
        }
        AnalyzeCommand::Moment {
            generator,
            s,
            k,
            j0,
            h,
        } => {
            let jump = generator.build()?;
            let h = h_vector(h.as_deref(), *s)?;
            write_json(&second_moment_report(&jump, *s, *j0, *k, &h)?, out)
        }
        AnalyzeCommand::Discrepancy {
            generator,
            s,
            samples,
            trend,
            seed,
        } => {
            let jump = generator.build()?;
            let seed = parse_seed(seed.as_deref(), jump.dim())?;
            let period = || {
                (jump.modulus().p() as u128)
                    .saturating_pow(jump.dim() as u32)
                    .saturating_mul(jump.dim() as u128)
                    .min(u64::MAX as u128) as u64
            };
            let parse_count = |t: &str| -> Result<u64> {
                if t == "full" {
                    Ok(period())
                } else {
                    t.parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad sample count {t:?}")))
                }
            };
            if let Some(list) = trend {
                let counts = list
                    .split(',')
                    .map(|t| parse_count(t.trim()))
                    .collect::<Result<Vec<_>>>()?;
                let reports = discrepancy_trend(&jump, *s, &counts, &seed)?;
                out.write_all(trend_csv(&reports).as_bytes())?;
                return Ok(());
            }
            let samples = samples
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--N or --trend is required".into()))?;
            write_json(
                &discrepancy_report(&jump, *s, parse_count(samples)?, &seed)?,
                out,
            )
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start thread pool: {e}")))?;
    pool.install(|| match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            run(&cli.command, &mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            run(&cli.command, &mut w)
        }
    })
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
