//! gcdec: build, encode, corrupt, and decode generalized concatenated
//! codes, sweep threshold bounds, and run seeded Monte Carlo campaigns.
//!
//! Exit codes: 0 success, 1 decode finished with unrecovered iterations,
//! 2 configuration or input error.

mod config;
mod figures;
mod io;

use clap::{Parser, Subcommand, ValueEnum};
use config::Mode;
use gcdec_core::channel::{inject_errors, monte_carlo_run_with, DecoderKind, ErrorSpec, Placement};
use gcdec_core::gc::IterationStatus;
use gcdec_core::GcCode;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gcdec", version, about = "Generalized concatenated codes toolbox")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Classic,
    Irs,
    Auto,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a config and print the code's distance and group plan
    Build {
        #[arg(long)]
        config: PathBuf,
    },
    /// Encode an info file into a codeword matrix file
    Encode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        info: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Flip a seeded weight-e error pattern into a matrix file
    Corrupt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        weight: usize,
        /// Reproducibility seed (required: no wall-clock defaults)
        #[arg(long)]
        seed: u64,
        /// Cap flips per column instead of placing them uniformly
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode a matrix file and report per-iteration outcomes
    Decode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the recovered information words here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the config's decoding mode
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// CSV of guaranteed bounds against threshold count (one row per z)
    SweepBounds {
        #[arg(long)]
        d_outer: u32,
        #[arg(long)]
        d_inner: u32,
        /// Interleaving depth for the collaborative column
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long)]
        z_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of minimal attempt counts for odd inner distances 3..=max
    AttemptsTable {
        #[arg(long)]
        max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo campaign: seeded random info and error patterns
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        weight: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Cap flips per column instead of placing them uniformly
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn effective_mode(cfg_mode: Mode, flag: Option<ModeArg>) -> Mode {
    match flag {
        Some(ModeArg::Classic) => Mode::Classic,
        Some(ModeArg::Irs) => Mode::Irs,
        Some(ModeArg::Auto) => Mode::Auto,
        None => cfg_mode,
    }
}

fn print_plan(gc: &GcCode) {
    let plan = gc.plan_groups();
    println!("designed distance: {}", gc.designed_distance());
    println!(
        "levels: {}, outer length: {}, inner length: {}",
        gc.levels(),
        gc.n_o(),
        gc.n_i()
    );
    for (i, g) in plan.groups.iter().enumerate() {
        let thresholds: Vec<String> = g.thresholds.iter().map(|t| t.to_string()).collect();
        println!(
            "group {i}: rows {}..{}, mean outer distance {}, thresholds [{}]",
            g.first_row,
            g.first_row + g.rows,
            format_num(g.mean_outer_distance()),
            thresholds.join(" ")
        );
    }
}

/// Integers print bare, anything else with 6 decimals.
fn format_num(x: f64) -> String {
    if x == x.trunc() {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

fn emit(csv: String, out: Option<PathBuf>) -> Result<ExitCode, String> {
    match out {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Build { config } => {
            let cfg = config::parse_config(&config)?;
            let gc = config::build_code(&cfg)?;
            print_plan(&gc);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Encode { config, info, out } => {
            let cfg = config::parse_config(&config)?;
            let gc = config::build_code(&cfg)?;
            let rows = io::read_info(&info, &gc.info_lengths())?;
            let field_size = 1u16 << gc.field().degree();
            if rows.iter().flatten().any(|&s| s >= field_size) {
                return Err(format!("info symbols must be below the field size {field_size}"));
            }
            let m = gc.encode(&rows).map_err(|e| e.to_string())?;
            io::write_matrix(&out, &m)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Corrupt { input, weight, seed, cap, out } => {
            let m = io::read_matrix(&input)?;
            let placement = match cap {
                Some(cap) => Placement::PerColumnCapped { cap },
                None => Placement::Uniform,
            };
            let spec = ErrorSpec { weight, seed, placement };
            let r = inject_errors(&m, &spec).map_err(|e| e.to_string())?;
            io::write_matrix(&out, &r)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decode { config, input, out, mode } => {
            let cfg = config::parse_config(&config)?;
            let gc = config::build_code(&cfg)?;
            let m = io::read_matrix(&input)?;
            let report = match effective_mode(cfg.mode, mode) {
                Mode::Classic => gc.decode_classic(&m),
                Mode::Irs | Mode::Auto => {
                    let plan = gc.plan_groups();
                    gc.decode_grouped(&m, &plan)
                }
            }
            .map_err(|e| e.to_string())?;

            for it in &report.iterations {
                let status = match it.status {
                    IterationStatus::Recovered => "recovered",
                    IterationStatus::Degraded => "degraded",
                    IterationStatus::Failed => "failed",
                };
                println!(
                    "iteration rows {}..{}: {status}, attempts {}",
                    it.first_row,
                    it.first_row + it.row_count,
                    it.attempts.len()
                );
            }
            println!(
                "counters: inner performed {}, inner skipped {}, outer attempts {}",
                report.inner_performed, report.inner_skipped, report.outer_attempts
            );
            if let Some(path) = out {
                io::write_info(&path, &gc.info_from_estimate(&report.estimate))?;
            }
            if report.is_clean() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Cmd::SweepBounds { d_outer, d_inner, ell, z_max, out } => {
            emit(figures::fig1_csv(d_outer, d_inner, ell, z_max)?, out)
        }
        Cmd::AttemptsTable { max, out } => emit(figures::fig2_csv(max)?, out),
        Cmd::Simulate { config, weight, trials, seed, mode, cap } => {
            let cfg = config::parse_config(&config)?;
            let gc = config::build_code(&cfg)?;
            let weight = weight.or(cfg.weight).ok_or("simulate needs --weight (or a config default)")?;
            let trials = trials.or(cfg.trials).ok_or("simulate needs --trials (or a config default)")?;
            let seed = seed.or(cfg.seed).ok_or("simulate needs --seed (or a config default)")?;
            let decoder = match effective_mode(cfg.mode, mode) {
                Mode::Classic => DecoderKind::Classic,
                Mode::Irs | Mode::Auto => DecoderKind::Irs,
            };
            let placement = match cap {
                Some(cap) => Placement::PerColumnCapped { cap },
                None => Placement::Uniform,
            };
            let stats = monte_carlo_run_with(&gc, decoder, weight, placement, trials, seed)
                .map_err(|e| e.to_string())?;
            println!(
                "trials={} successes={} flagged={} silent={} mean_inner={:.6} mean_outer={:.6}",
                stats.trials, stats.successes, stats.flagged, stats.silent, stats.mean_inner,
                stats.mean_outer
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
