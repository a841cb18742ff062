// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qthermo_cli::{read_config, run_nm_scan, run_reproduce, run_simulate, CliResult, Figure, Overrides};

#[derive(Parser)]
#[command(name = "qthermo", version, about = "Ergotropy-based quantum thermodynamics of driven open qubits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OverrideArgs {
    /// Replace the configured time step.
    #[arg(long)]
    dt: Option<f64>,
    /// Replace the configured duration (the horizon for scans).
    #[arg(long = "t-max")]
    t_max: Option<f64>,
}

impl From<OverrideArgs> for Overrides {
    fn from(a: OverrideArgs) -> Self {
        Overrides { dt: a.dt, t_max: a.t_max }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory and write trajectory.csv and thermo.csv.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Scan the non-Markovianity measures over s and write nm_scan.csv.
    NmScan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Regenerate the data of a built-in figure.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { config, out, overrides } => {
            let exp = read_config(&config)?.experiment(overrides.into())?;
            run_simulate(&exp, &out).map(drop)
        }
        Command::NmScan { config, out, overrides } => {
            let scan = read_config(&config)?.scan(overrides.into())?;
            run_nm_scan(&scan, &out).map(drop)
        }
        Command::Reproduce { figure, out, overrides } => run_reproduce(figure, &out, overrides.into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
