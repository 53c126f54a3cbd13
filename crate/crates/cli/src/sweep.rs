//! Sweep evaluation over a z grid and CSV assembly. Rows are computed
//! independently (optionally in parallel) and always emitted in grid
//! order, so output bytes never depend on thread scheduling.

use rayon::prelude::*;
use std::io::Write;

use crate::error::CliError;
use crate::scenario::{breed_at, format_row, Scenario, SweepRow, ROW_HEADER};

pub fn z_grid(z_min: f64, z_max: f64, steps: usize) -> Vec<f64> {
    let span = z_max - z_min;
    (0..steps)
        .map(|i| z_min + span * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Runs the pipeline at every grid point, in index order.
pub fn run_sweep(
    scenario: &Scenario,
    z_min: f64,
    z_max: f64,
    steps: usize,
) -> Result<Vec<SweepRow>, CliError> {
    z_grid(z_min, z_max, steps)
        .par_iter()
        .map(|&z_pi| breed_at(scenario, z_pi))
        .collect()
}

/// Writes the run parameters as `# key = value` lines, then the column
/// header and rows at full precision.
pub fn write_sweep_csv<W: Write>(
    mut out: W,
    scenario: &Scenario,
    z_min: f64,
    z_max: f64,
    steps: usize,
    rows: &[SweepRow],
) -> std::io::Result<()> {
    writeln!(out, "# catbreeder sweep")?;
    writeln!(out, "# parity1 = {}", scenario.parity1)?;
    writeln!(out, "# parity2 = {}", scenario.parity2)?;
    writeln!(out, "# alpha0 = {}", scenario.alpha0)?;
    writeln!(out, "# beta0 = {}", scenario.beta0)?;
    writeln!(out, "# mu = {}", scenario.mu)?;
    writeln!(out, "# m = {}", scenario.m)?;
    writeln!(out, "# z-min = {z_min}")?;
    writeln!(out, "# z-max = {z_max}")?;
    writeln!(out, "# steps = {steps}")?;
    writeln!(out, "# z in units of pi")?;
    writeln!(out, "{ROW_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", format_row(row))?;
    }
    Ok(())
}
