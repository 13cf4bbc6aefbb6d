use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ring_thermo::{
    compare_datasets, emit_csv, render_csv, run_sweep, Error, SweepConfig, SweepSpec, EXIT_NUMERICAL_FAILURE,
};

#[derive(Parser)]
#[command(name = "ring-thermo", version, about = "Thermodynamic sweeps of a quantum ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write its CSV dataset.
    Sweep {
        /// Flat key = value config file; flags override its entries.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Box<SweepConfig>,
    },
    /// Compare two datasets column by column.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        rtol: f64,
        #[arg(long, default_value_t = 0.0)]
        atol: f64,
    },
}

fn sweep(config: Option<PathBuf>, overrides: Box<SweepConfig>) -> Result<i32, Error> {
    let base = match &config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    let spec = SweepSpec::try_from(base.overlay(*overrides))?;
    let result = run_sweep(&spec)?;
    match &spec.out {
        Some(path) => emit_csv(&result, path)?,
        None => print!("{}", render_csv(&result)),
    }
    let failed = result.failures();
    if failed > 0 {
        log::error!("{failed} of {} grid points failed", result.rows.len());
        return Ok(EXIT_NUMERICAL_FAILURE);
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn,ring_thermo_core=error")).init();
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Sweep { config, overrides } => sweep(config, overrides),
        Command::Compare { a, b, rtol, atol } => compare_datasets(&a, &b, rtol, atol).map(|report| {
            println!("{report}");
            if report.passed() {
                0
            } else {
                1
            }
        }),
    };
    match status {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
