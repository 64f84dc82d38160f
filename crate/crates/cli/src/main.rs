//! Command-line front end: analysis reports, maneuver plans, simulation
//! runs, parameter sweeps, and figures for a three-module in-pipe crawler.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 the robot
//! stalled, 4 the scenario cannot be planned, 5 filesystem trouble.

mod commands;
mod config;
mod csv;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "pipecrawler",
    version,
    about = "Kinematic analysis and simulation for a three-module in-pipe crawler"
)]
struct Cli {
    /// Scenario configuration file (`key = value` lines).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the command output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override one configuration key, e.g. `--set robot.weight_n=9`.
    /// May repeat; overrides apply after the file in the order given.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the unreachable wall sector at the analysis bend.
    Sector {
        /// Also draw the cross-section figure to this file.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Report the allowed roll window about the preferred orientation.
    Window,
    /// Print the maneuver schedule for the configured network.
    Plan,
    /// Run the schedule through the network and emit the trajectory CSV.
    Simulate,
    /// Tabulate sector and window against one swept parameter.
    Sweep {
        /// `inclination_deg` or `free_radius_mm`.
        #[arg(long)]
        param: String,
        /// First swept value, inclusive.
        #[arg(long)]
        from: f64,
        /// Last swept value, inclusive.
        #[arg(long)]
        to: f64,
        /// Spacing between values.
        #[arg(long)]
        step: f64,
    },
    /// Draw the angular-velocity figure from a trajectory CSV.
    Plot {
        /// Trajectory log written by `simulate`.
        input: PathBuf,
    },
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let config = config::load(cli.config.as_deref(), &cli.set)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Sector { svg } => {
            let (report, figure) = commands::cmd_sector(&config, svg.is_some())?;
            emit(out, &report)?;
            if let (Some(path), Some(figure)) = (svg.as_deref(), figure.as_deref()) {
                write_file(path, figure)?;
            }
            Ok(())
        }
        Command::Window => emit(out, &commands::cmd_window(&config)?),
        Command::Plan => emit(out, &commands::cmd_plan(&config)?),
        Command::Simulate => emit(out, &commands::cmd_simulate(&config)?),
        Command::Sweep {
            param,
            from,
            to,
            step,
        } => emit(out, &commands::cmd_sweep(&config, param, *from, *to, *step)?),
        Command::Plot { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", input.display())))?;
            emit(out, &commands::cmd_plot(&text)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
