use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fuzzpettis_cli::commands::{
    cmd_decompose, cmd_integrate, cmd_plot_data, cmd_verify, CommandOutput, CommonOpts,
    VerifyOpts,
};

/// Level-wise set-valued integration of fuzzy mappings over finite
/// measure spaces, with structural verification built in.
#[derive(Parser)]
#[command(name = "fuzzpettis", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Scenario file (JSON).
    scenario: PathBuf,
    /// Output prefix: files land next to it as `<out>.<suffix>`.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Direction-grid size (overrides scenario and config file).
    #[arg(long)]
    grid: Option<usize>,
    /// Solver and support tolerance (overrides scenario and config file).
    #[arg(long)]
    tol: Option<f64>,
    /// Prune accumulated vertex lists to their hulls during integration.
    #[arg(long)]
    prune: bool,
    /// Settings file (JSON) applied between scenario tolerances and flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn into_opts(self) -> CommonOpts {
        CommonOpts {
            scenario: self.scenario,
            out: self.out,
            grid: self.grid,
            tol: self.tol,
            prune: self.prune,
            config: self.config,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the mapping over a set of atoms; write the level family,
    /// the residual report, and the result re-wrapped as a scenario.
    Integrate {
        #[command(flatten)]
        common: Common,
        /// Atoms to integrate over: `all` or a comma-separated id list.
        #[arg(long, default_value = "all")]
        set: String,
    },
    /// Split the mapping around its canonical selection in a direction;
    /// write the selection, the remainder families, and the check rows.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Direction as comma-separated coordinates, e.g. `1,0`.
        #[arg(long)]
        direction: String,
    },
    /// Run the structural verification suite and print the check table.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also check against the independent brute-force oracles.
        #[arg(long)]
        with_oracle: bool,
        /// Geometric tail family: ratio in (0,1) and atom count.
        #[arg(long, num_args = 2, value_names = ["RATIO", "COUNT"])]
        tail: Option<Vec<String>>,
        /// Seed for the deterministic probe generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the table as `<out>.report.csv`.
        #[arg(long)]
        report: bool,
    },
    /// Emit 2-D plotting data: level polygons and a membership grid.
    PlotData {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_tail(raw: Option<Vec<String>>) -> Result<Option<(f64, usize)>, String> {
    let Some(raw) = raw else { return Ok(None) };
    if raw.len() != 2 {
        return Err(String::from("flag `--tail` takes exactly two values: RATIO COUNT"));
    }
    let ratio: f64 = raw[0]
        .parse()
        .map_err(|_| format!("flag `--tail`: RATIO must be a number, got `{}`", raw[0]))?;
    let count: usize = raw[1]
        .parse()
        .map_err(|_| format!("flag `--tail`: COUNT must be a whole number, got `{}`", raw[1]))?;
    Ok(Some((ratio, count)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Integrate { common, set } => cmd_integrate(&common.into_opts(), &set),
        Command::Decompose { common, direction } => {
            cmd_decompose(&common.into_opts(), &direction)
        }
        Command::Verify { common, with_oracle, tail, seed, report } => {
            match parse_tail(tail) {
                Ok(tail) => cmd_verify(
                    &common.into_opts(),
                    &VerifyOpts { with_oracle, tail, seed, report },
                ),
                Err(message) => Err(fuzzpettis_cli::CliError::Invalid(message)),
            }
        }
        Command::PlotData { common } => cmd_plot_data(&common.into_opts()),
    };
    match result {
        Ok(CommandOutput { stdout, breach }) => {
            print!("{stdout}");
            match breach {
                None => ExitCode::SUCCESS,
                Some(message) => {
                    eprintln!("check failed: {message}");
                    ExitCode::from(fuzzpettis_cli::EXIT_BREACH as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
