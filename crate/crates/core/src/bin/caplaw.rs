//! Command-line harness for the fractional conservation-law solvers.
//!
//! Subcommands: `run` (one configured experiment), `sweep` (vary dt, dx, or
//! alpha), `locus` (stability-region boundary curves), `presets` (catalog).
//! Exit code 0 on success; aborted runs exit nonzero with a category code
//! (3 instability / strict CFL, 4 non-convergence, 2 bad configuration,
//! 5 I/O). The output directory comes from `--out`, else `$CAPLAW_OUT_DIR`,
//! else the config file, else `./out`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use caplaw::harness::output::{fmt17, write_locus};
use caplaw::harness::presets;
use caplaw::harness::{resolve_config, run, sweep, RunConfig, SweepAxis};
use caplaw::stability::boundary_locus;
use caplaw::Error;

const OUT_DIR_ENV: &str = "CAPLAW_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "caplaw",
    version,
    about = "Finite-volume solvers for scalar conservation laws with Caputo time-fractional derivatives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one run from a config file and/or preset.
    Run {
        /// JSON config file; keys override the preset.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in preset name (see `caplaw presets`).
        #[arg(long)]
        preset: Option<String>,
        /// Output directory (overrides $CAPLAW_OUT_DIR and the config file).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort when an explicit step violates its CFL bound.
        #[arg(long)]
        strict_cfl: bool,
        /// Print the fully expanded config as JSON and exit without running.
        #[arg(long)]
        dump_config: bool,
    },
    /// Run a family of configs along one axis and aggregate the results.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// dt, dx, or alpha.
        #[arg(long)]
        axis: SweepAxisArg,
        /// Comma-separated list, e.g. --values 0.01,0.02,0.04.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the backward-Euler stability-region boundary as CSV.
    Locus {
        #[arg(long)]
        alpha: f64,
        /// History length n (the stability polynomial has degree n + 1).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Clone)]
struct SweepAxisArg(SweepAxis);

impl std::str::FromStr for SweepAxisArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(SweepAxisArg(s.parse()?))
    }
}

fn resolve_out_dir(flag: Option<PathBuf>, from_config: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .or(from_config)
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn load_config(
    config: Option<&PathBuf>,
    preset: Option<&str>,
    out: Option<PathBuf>,
    strict_cfl: bool,
) -> Result<RunConfig, Error> {
    let mut rc = resolve_config(config.map(|p| p.as_path()), preset)?;
    rc.out_dir = Some(resolve_out_dir(out, rc.out_dir.take()));
    if strict_cfl {
        rc.strict_cfl = true;
    }
    Ok(rc)
}

fn cmd_run(rc: &RunConfig, dump_config: bool) -> Result<i32, Error> {
    if dump_config {
        println!("{}", serde_json::to_string_pretty(rc)?);
        return Ok(0);
    }
    let report = run(rc)?;
    let first = report.initial_record();
    let last = report.final_record();
    println!(
        "run `{}`: {}, {} steps to t = {}",
        rc.name,
        report.outcome.label(),
        report.steps_completed,
        fmt17(report.t_reached)
    );
    println!("  tv: {} -> {}", fmt17(first.tv), fmt17(last.tv));
    println!(
        "  range: [{}, {}]",
        fmt17(last.min_val),
        fmt17(last.max_val)
    );
    if report.max_sweeps > 0 {
        println!("  max sweeps per step: {}", report.max_sweeps);
    }
    if report.cfl_violations > 0 {
        println!("  cfl violations: {} steps", report.cfl_violations);
    }
    for path in &report.out_paths {
        println!("  wrote {}", path.display());
    }
    Ok(report.outcome.exit_code())
}

fn cmd_sweep(rc: &RunConfig, axis: SweepAxis, values: &[f64]) -> Result<i32, Error> {
    let report = sweep(rc, axis, values)?;
    println!(
        "sweep `{}` over {} ({} runs):",
        rc.name,
        axis.name(),
        report.entries.len()
    );
    println!(
        "  {:<24} {:<24} {:<24} outcome",
        "value", "l1_error", "max_growth"
    );
    for e in &report.entries {
        println!(
            "  {:<24} {:<24} {:<24} {}",
            fmt17(e.value),
            e.l1_error.map(fmt17).unwrap_or_else(|| "-".into()),
            fmt17(e.max_growth),
            e.report.outcome.label()
        );
    }
    if let Some(slope) = report.slope {
        println!("  fitted slope: {}", fmt17(slope));
    }
    if let Some((stable, unstable)) = report.threshold {
        println!(
            "  empirical stability threshold between {} and {}",
            fmt17(stable),
            fmt17(unstable)
        );
    }
    for path in &report.out_paths {
        println!("  wrote {}", path.display());
    }
    Ok(0)
}

fn cmd_locus(alpha: f64, n: usize, samples: usize, out: Option<PathBuf>) -> Result<i32, Error> {
    let locus = boundary_locus(alpha, n, samples)?;
    let dir = resolve_out_dir(out, None);
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(format!("locus_alpha{alpha}_n{n}.csv"));
    write_locus(&path, &locus)?;
    println!(
        "locus alpha = {}, n = {n}, {samples} samples; |z(0)| = {}",
        fmt17(alpha),
        fmt17(locus.points[0].z.norm())
    );
    println!("  wrote {}", path.display());
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Run {
            config,
            preset,
            out,
            strict_cfl,
            dump_config,
        } => {
            let rc = load_config(config.as_ref(), preset.as_deref(), out, strict_cfl)?;
            cmd_run(&rc, dump_config)
        }
        Command::Sweep {
            config,
            preset,
            axis,
            values,
            out,
        } => {
            let rc = load_config(config.as_ref(), preset.as_deref(), out, false)?;
            cmd_sweep(&rc, axis.0, &values)
        }
        Command::Locus {
            alpha,
            n,
            samples,
            out,
        } => cmd_locus(alpha, n, samples, out),
        Command::Presets => {
            for (name, blurb) in presets::CATALOG {
                println!("{name:<34} {blurb}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => {
            eprintln!("error: run aborted (exit category {code})");
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
