// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Thin command-line front end: layers preset, config file and flags into a
//! run description and hands it to the library runners.
//!
//! Exit codes: 0 success, 2 configuration or I/O failure, 3 when the run
//! executed but produced failed points.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdm_sim::config::{parse_source, presets, Layers, RunConfig, Source};
use qdm_sim::sweep::run_to_files;
use qdm_sim::Error;

#[derive(Parser)]
#[command(
    name = "qdm-sim",
    version,
    about = "Transport and entanglement simulator for a two-dot molecule between normal or superconducting leads"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Current-voltage sweep (stationary state per bias point)
    Iv(RunArgs),
    /// Concurrence-voltage sweep (stationary current, finite-horizon entanglement readout)
    Cv(RunArgs),
    /// Time evolution at fixed bias
    Dyn(RunArgs),
    /// Time evolution on both sides of each gap-shifted resonance voltage
    Resdyn(RunArgs),
}

impl Cmd {
    fn mode_key(&self) -> &'static str {
        match self {
            Cmd::Iv(_) => "iv_sweep",
            Cmd::Cv(_) => "cv_sweep",
            Cmd::Dyn(_) => "dynamics",
            Cmd::Resdyn(_) => "resonance_dynamics",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Cmd::Iv(a) | Cmd::Cv(a) | Cmd::Dyn(a) | Cmd::Resdyn(a) => a,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Config file (flat `key = value` lines; overrides the preset)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output CSV path; a `.manifest` sibling is written alongside
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Built-in preset name; use `--preset list` to print all names
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// Left/right coupling asymmetry, 0 (symmetric) to 1
    #[arg(long, value_name = "X")]
    kappa: Option<f64>,

    /// Left lead pairing gap
    #[arg(long = "delta-l", value_name = "X")]
    delta_l: Option<f64>,

    /// Right lead pairing gap
    #[arg(long = "delta-r", value_name = "X")]
    delta_r: Option<f64>,

    /// Bias points for sweeps; output times for dynamics modes
    #[arg(long, value_name = "N")]
    points: Option<usize>,

    /// Drop the coherent inter-dot hopping term from the generator
    #[arg(long)]
    no_coherent: bool,

    /// Add cross dissipators between equal-frequency channels
    #[arg(long)]
    cross_terms: bool,
}

fn build_config(mode_key: &'static str, args: &RunArgs) -> qdm_sim::Result<(RunConfig, Vec<(String, String)>)> {
    let mut layers = Layers::default();
    let mut extras = Vec::new();

    if let Some(name) = &args.preset {
        let text = presets::get(name).ok_or_else(|| {
            Error::ConfigError(format!(
                "unknown preset `{name}`; available: {}",
                presets::names().join(", ")
            ))
        })?;
        layers.push(parse_source(&format!("preset:{name}"), text)?);
        extras.push(("preset".to_string(), name.clone()));
    }

    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)?;
        layers.push(parse_source(&path.display().to_string(), &text)?);
    }

    let mut cli_src = Source::empty("cli");
    cli_src.set("mode", mode_key);
    if let Some(x) = args.kappa {
        cli_src.set("couplings.kappa", x.to_string());
    }
    if let Some(x) = args.delta_l {
        cli_src.set("lead_left.delta", x.to_string());
    }
    if let Some(x) = args.delta_r {
        cli_src.set("lead_right.delta", x.to_string());
    }
    if let Some(n) = args.points {
        let key = match mode_key {
            "iv_sweep" | "cv_sweep" => "grid.points",
            _ => "time.points",
        };
        cli_src.set(key, n.to_string());
    }
    if args.no_coherent {
        cli_src.set("solver.coherent", "false");
    }
    if args.cross_terms {
        cli_src.set("solver.cross_terms", "true");
    }
    if let Some(out) = &args.out {
        cli_src.set("output", out.display().to_string());
    }
    layers.push(cli_src);

    Ok((RunConfig::from_layers(&layers)?, extras))
}

/// Config and environment problems exit 2; failures while solving
/// (degenerate steady states, integrator breakdown, unphysical results)
/// exit 3, matching the failed-sweep-point convention.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ConfigError(_) | Error::InvalidParams(_) | Error::Io(_) | Error::DimensionMismatch { .. } => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.cmd.args();

    if args.preset.as_deref() == Some("list") {
        for name in presets::names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }

    let (cfg, extras) = match build_config(cli.cmd.mode_key(), args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    match run_to_files(&cfg, &extras) {
        Ok(summary) => {
            for f in &summary.files {
                println!("wrote {}", f.display());
            }
            if summary.failed_points > 0 {
                eprintln!("{} sweep point(s) failed; see status column", summary.failed_points);
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
