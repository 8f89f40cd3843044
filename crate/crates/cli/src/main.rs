use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use outage_cli::output::{emit, write_max_interferers, write_records};
use outage_cli::run::parse_grid;
use outage_cli::{max_supported_interferers, run_scenario, sweep, CliError, MethodChoice, ScenarioFile, SweepVariable};

#[derive(Parser)]
#[command(name = "outage", version, about = "Outage probability in finite wireless networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV path; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the file's method. `sweep` accepts a comma list. The CSV
    /// fingerprint always refers to the file as written, plus any `--seed`.
    #[arg(long)]
    method: Option<String>,
    /// Overrides the Monte Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario.
    Run(Common),
    /// Vary one parameter over a grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// One of d, snr_db, alpha, L, M, beta_db.
        #[arg(long)]
        variable: String,
        /// `start:stop:step` or a comma list.
        #[arg(long)]
        grid: String,
    },
    /// Largest number of interferers meeting an outage target.
    Maxm {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.05)]
        target: f64,
    },
}

fn load(common: &Common) -> Result<(ScenarioFile, Vec<MethodChoice>), CliError> {
    let mut file = ScenarioFile::load(&common.scenario)?;
    if let Some(seed) = common.seed {
        file.mc.seed = seed;
    }
    let methods: Vec<MethodChoice> = match &common.method {
        Some(list) => list.split(',').map(|m| m.trim().parse()).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    Ok((file, methods))
}

fn single_method(methods: &[MethodChoice], file: &mut ScenarioFile) -> Result<(), CliError> {
    match methods {
        [] => Ok(()),
        [m] => {
            file.method = *m;
            Ok(())
        }
        _ => Err(CliError::Invalid("this subcommand takes a single --method".into())),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(common) => {
            let (base, methods) = load(&common)?;
            let mut file = base.clone();
            single_method(&methods, &mut file)?;
            let rec = run_scenario(&file)?;
            log::info!("{} outage {}", rec.result.method, rec.result.outage);
            emit(common.out.as_deref(), |w| write_records(&base, std::slice::from_ref(&rec), w))
        }
        Command::Sweep { common, variable, grid } => {
            let (file, methods) = load(&common)?;
            let variable: SweepVariable = variable.parse()?;
            let grid = parse_grid(&grid)?;
            let records = sweep(&file, variable, &grid, &methods)?;
            emit(common.out.as_deref(), |w| write_records(&file, &records, w))
        }
        Command::Maxm { common, target } => {
            let (base, methods) = load(&common)?;
            let mut file = base.clone();
            single_method(&methods, &mut file)?;
            let res = max_supported_interferers(&file, target)?;
            if !res.feasible {
                log::warn!("noise-only outage {} already exceeds the target {target}", res.outage_at_m_star);
            }
            emit(common.out.as_deref(), |w| write_max_interferers(&base, &res, w))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
