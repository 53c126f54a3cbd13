use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use catbreeder::cli::{
    BreedArgs, Cli, Command, OptimizeArgs, ReproduceArgs, ScenarioArgs, SweepArgs, VerifyArgs,
    WignerArgs,
};
use catbreeder::config::Config;
use catbreeder::error::CliError;
use catbreeder::optimize::{find_optimum, resolve_objective, write_report};
use catbreeder::reproduce::reproduce;
use catbreeder::scenario::{breed_at, format_row, resolve_range, resolve_scenario, resolve_z, ROW_HEADER};
use catbreeder::sweep::{run_sweep, write_sweep_csv};
use catbreeder::verify::run_verify;

use catbreeder_core::{breed, wigner_grid, CouplerParams, Error, GridSpec};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if let Err(err) = configure_threads().and_then(|()| run(cli)) {
        eprintln!("error: {err}");
        return ExitCode::from(err.exit_code() as u8);
    }
    ExitCode::SUCCESS
}

/// Honors CATBREEDER_THREADS as a cap on sweep parallelism. Output
/// bytes never depend on the thread count; this only bounds CPU use.
fn configure_threads() -> Result<(), CliError> {
    match std::env::var("CATBREEDER_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let threads: usize = raw.parse().map_err(|_| {
                CliError::Usage(format!("CATBREEDER_THREADS must be a positive integer (got '{raw}')"))
            })?;
            if threads == 0 {
                return Err(CliError::Usage(
                    "CATBREEDER_THREADS must be a positive integer (got '0')".into(),
                ));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| CliError::Runtime(format!("cannot configure thread pool: {e}")))
        }
    }
}

fn load_config(args: &ScenarioArgs) -> Result<Config, CliError> {
    match &args.config {
        Some(path) => Config::load(path),
        None => Ok(Config::default()),
    }
}

/// Runs `emit` against either the given file or stdout.
fn with_output(
    out: &Option<PathBuf>,
    emit: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
            let mut writer = BufWriter::new(file);
            emit(&mut writer)?;
            writer.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Breed(args) => run_breed(args),
        Command::Sweep(args) => run_sweep_cmd(args),
        Command::Wigner(args) => run_wigner(args),
        Command::Reproduce(args) => run_reproduce(args),
        Command::Optimize(args) => run_optimize(args),
        Command::Verify(args) => run_verify_cmd(args),
    }
}

fn run_breed(args: BreedArgs) -> Result<(), CliError> {
    let config = load_config(&args.scenario)?;
    let scenario = resolve_scenario(&args.scenario, &config)?;
    let z_pi = resolve_z(&args.z, &config)?;
    let row = breed_at(&scenario, z_pi)?;
    with_output(&args.out, |out| {
        writeln!(out, "{ROW_HEADER}")?;
        writeln!(out, "{}", format_row(&row))?;
        Ok(())
    })
}

fn run_sweep_cmd(args: SweepArgs) -> Result<(), CliError> {
    let config = load_config(&args.scenario)?;
    let scenario = resolve_scenario(&args.scenario, &config)?;
    let (z_min, z_max, steps) = resolve_range(&args.z_min, &args.z_max, args.steps, &config)?;
    let rows = run_sweep(&scenario, z_min, z_max, steps)?;
    with_output(&args.out, |out| {
        write_sweep_csv(out, &scenario, z_min, z_max, steps, &rows)?;
        Ok(())
    })
}

fn run_wigner(args: WignerArgs) -> Result<(), CliError> {
    if args.grid_count < 2 {
        return Err(CliError::Usage(format!(
            "grid-count must be at least 2 (got {})",
            args.grid_count
        )));
    }
    let config = load_config(&args.scenario)?;
    let scenario = resolve_scenario(&args.scenario, &config)?;
    let z_pi = resolve_z(&args.z, &config)?;
    let params = CouplerParams::new(scenario.mu, z_pi * std::f64::consts::PI)?;
    let outcome = breed(
        scenario.parity1,
        scenario.parity2,
        scenario.alpha0,
        scenario.beta0,
        &params,
        scenario.m,
    )
    .map_err(|e| match e {
        Error::ZeroProbability { .. } => CliError::Runtime(format!(
            "herald probability is zero at z = {z_pi} pi; there is no state to plot"
        )),
        other => other.into(),
    })?;
    let spec = GridSpec::auto(&outcome.state, args.grid_count)?;
    let grid = wigner_grid(&outcome.state, &spec)?;
    with_output(&args.out, |out| {
        grid.write_csv(out)?;
        Ok(())
    })
}

fn run_reproduce(args: ReproduceArgs) -> Result<(), CliError> {
    let written = reproduce(args.figure.into(), &args.out)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let config = load_config(&args.scenario)?;
    let scenario = resolve_scenario(&args.scenario, &config)?;
    let (z_min, z_max, steps) = resolve_range(&args.z_min, &args.z_max, args.steps, &config)?;
    let objective = resolve_objective(&args.objective, args.threshold, &config)?;
    let verdict = find_optimum(&scenario, z_min, z_max, steps, objective)?;
    with_output(&args.out, |out| {
        write_report(out, objective, &verdict)?;
        Ok(())
    })
}

fn run_verify_cmd(args: VerifyArgs) -> Result<(), CliError> {
    let results = run_verify(args.tamper_r);
    let total = results.len();
    let mut failed = 0;
    for result in &results {
        let status = if result.passed { "ok  " } else { "FAIL" };
        println!("{status} {} ({})", result.name, result.detail);
        if !result.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        Err(CliError::Verification { failed, total })
    } else {
        println!("verification passed ({total} checks)");
        Ok(())
    }
}
