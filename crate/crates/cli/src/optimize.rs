//! Grid-based optimum search over the sweep pipeline.

use std::io::Write;

use crate::config::Config;
use crate::error::CliError;
use crate::scenario::{csv_float, format_row, Scenario, SweepRow, ROW_HEADER};
use crate::sweep::run_sweep;

/// Fidelity floor a row must clear before its amplitude counts toward
/// the threshold objective.
pub const FIDELITY_FLOOR: f64 = 0.98;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    MaxAmplitude,
    MaxProbability,
    /// Maximize probability subject to fitted amplitude ≥ threshold
    /// and fidelity ≥ [`FIDELITY_FLOOR`].
    Threshold(f64),
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Objective::MaxAmplitude => write!(f, "max-amplitude"),
            Objective::MaxProbability => write!(f, "max-probability"),
            Objective::Threshold(t) => write!(f, "threshold {t}"),
        }
    }
}

/// Resolves the objective from flag or config, defaulting to
/// max-amplitude; the threshold objective requires a positive floor.
pub fn resolve_objective(
    flag: &Option<String>,
    threshold_flag: Option<f64>,
    config: &Config,
) -> Result<Objective, CliError> {
    let raw = flag
        .as_deref()
        .or_else(|| config.get("objective"))
        .unwrap_or("max-amplitude");
    match raw {
        "max-amplitude" => Ok(Objective::MaxAmplitude),
        "max-probability" => Ok(Objective::MaxProbability),
        "threshold" => {
            let threshold = match threshold_flag {
                Some(t) => t,
                None => config.get_parsed::<f64>("threshold")?.ok_or_else(|| {
                    CliError::Usage(
                        "the threshold objective needs --threshold (or a config entry)".into(),
                    )
                })?,
            };
            if !threshold.is_finite() || threshold <= 0.0 {
                return Err(CliError::Usage(format!(
                    "threshold must be a positive finite number (got {threshold})"
                )));
            }
            Ok(Objective::Threshold(threshold))
        }
        other => Err(CliError::Usage(format!(
            "objective must be max-amplitude, max-probability, or threshold (got '{other}')"
        ))),
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Best(SweepRow),
    /// No row met the threshold; reports the best amplitude the range
    /// offers so the caller can see how far off the request was.
    Infeasible { best_alpha3: f64, at_z_pi: f64 },
}

fn max_by<'a>(
    rows: impl Iterator<Item = &'a SweepRow>,
    key: impl Fn(&SweepRow) -> f64,
) -> Option<&'a SweepRow> {
    rows.max_by(|a, b| key(a).total_cmp(&key(b)))
}

/// Picks the best row for the objective over a fresh sweep.
pub fn find_optimum(
    scenario: &Scenario,
    z_min: f64,
    z_max: f64,
    steps: usize,
    objective: Objective,
) -> Result<Verdict, CliError> {
    let rows = run_sweep(scenario, z_min, z_max, steps)?;
    let fitted = || rows.iter().filter(|r| r.alpha3.is_some());
    let best = match objective {
        Objective::MaxAmplitude => max_by(fitted(), |r| r.alpha3.unwrap_or(f64::NEG_INFINITY)),
        Objective::MaxProbability => max_by(rows.iter(), |r| r.probability),
        Objective::Threshold(threshold) => {
            let feasible = max_by(
                fitted().filter(|r| {
                    r.alpha3.unwrap() >= threshold
                        && r.fidelity.unwrap_or(0.0) >= FIDELITY_FLOOR
                }),
                |r| r.probability,
            );
            match feasible {
                Some(row) => Some(row),
                None => {
                    let fallback = max_by(fitted(), |r| r.alpha3.unwrap_or(f64::NEG_INFINITY))
                        .ok_or_else(|| {
                            CliError::Runtime(
                                "no grid point produced a fittable state".into(),
                            )
                        })?;
                    return Ok(Verdict::Infeasible {
                        best_alpha3: fallback.alpha3.unwrap(),
                        at_z_pi: fallback.z_pi,
                    });
                }
            }
        }
    };
    best.cloned().map(Verdict::Best).ok_or_else(|| {
        CliError::Runtime("no grid point produced a fittable state".into())
    })
}

/// Prints the verdict: a status block, then the winning row (if any)
/// in the same CSV shape as sweeps.
pub fn write_report<W: Write>(mut out: W, objective: Objective, verdict: &Verdict) -> std::io::Result<()> {
    writeln!(out, "# catbreeder optimize")?;
    writeln!(out, "# objective = {objective}")?;
    match verdict {
        Verdict::Best(row) => {
            writeln!(out, "status = optimal")?;
            writeln!(out, "{ROW_HEADER}")?;
            writeln!(out, "{}", format_row(row))?;
        }
        Verdict::Infeasible { best_alpha3, at_z_pi } => {
            writeln!(out, "status = infeasible")?;
            writeln!(out, "best_achievable_alpha3 = {}", csv_float(*best_alpha3))?;
            writeln!(out, "at_z = {}", csv_float(*at_z_pi))?;
        }
    }
    Ok(())
}
