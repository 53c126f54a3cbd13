//! Scenario resolution (flags over config over defaults) and the
//! single-point breeding pipeline behind every sweep row.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use catbreeder_core::{
    breed, coefficient_ratio, classify_case, fit_cat, normalize, scenario_coefficients,
    wigner_peak_x, CaseLabel, CouplerParams, Error, ModeState, Parity,
};

use crate::cli::ScenarioArgs;
use crate::config::Config;
use crate::error::CliError;
use crate::units::parse_z_pi;

/// One breeding setup: cat parities and amplitudes at the two inputs,
/// coupler strength, and the heralded photon count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub parity1: Parity,
    pub parity2: Parity,
    pub alpha0: f64,
    pub beta0: f64,
    pub mu: f64,
    pub m: usize,
}

impl Scenario {
    fn validate(self) -> Result<Self, CliError> {
        for (name, value) in [
            ("alpha0", self.alpha0),
            ("beta0", self.beta0),
            ("mu", self.mu),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(CliError::Usage(format!(
                    "{name} must be a positive finite number (got {value})"
                )));
            }
        }
        Ok(self)
    }
}

fn parse_parity(raw: &str, flag: &str) -> Result<Parity, CliError> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("{flag} must be 'even' or 'odd' (got '{raw}')")))
}

/// Builds the effective scenario: explicit flags win over config file
/// entries; mu defaults to 1 and m to 0; parities and amplitudes are
/// required.
pub fn resolve_scenario(args: &ScenarioArgs, config: &Config) -> Result<Scenario, CliError> {
    let parity = |flag_value: &Option<String>, key: &str| -> Result<Parity, CliError> {
        let raw = flag_value
            .as_deref()
            .or_else(|| config.get(key))
            .ok_or_else(|| CliError::Usage(format!("missing required --{key}")))?;
        parse_parity(raw, key)
    };
    let number = |flag_value: Option<f64>, key: &str| -> Result<Option<f64>, CliError> {
        match flag_value {
            Some(v) => Ok(Some(v)),
            None => config.get_parsed::<f64>(key),
        }
    };
    let scenario = Scenario {
        parity1: parity(&args.parity1, "parity1")?,
        parity2: parity(&args.parity2, "parity2")?,
        alpha0: number(args.alpha0, "alpha0")?
            .ok_or_else(|| CliError::Usage("missing required --alpha0".into()))?,
        beta0: number(args.beta0, "beta0")?
            .ok_or_else(|| CliError::Usage("missing required --beta0".into()))?,
        mu: number(args.mu, "mu")?.unwrap_or(1.0),
        m: match args.m {
            Some(m) => m,
            None => config.get_parsed::<usize>("m")?.unwrap_or(0),
        },
    };
    scenario.validate()
}

/// Resolves a single z (π units) from flag or config.
pub fn resolve_z(flag_value: &Option<String>, config: &Config) -> Result<f64, CliError> {
    let raw = flag_value
        .as_deref()
        .or_else(|| config.get("z"))
        .ok_or_else(|| CliError::Usage("missing required --z".into()))?;
    parse_z_pi(raw)
}

/// Resolves the sweep range in π units, with the figure-scale default
/// [0.01, 0.49] × 200 steps.
pub fn resolve_range(
    z_min: &Option<String>,
    z_max: &Option<String>,
    steps: Option<usize>,
    config: &Config,
) -> Result<(f64, f64, usize), CliError> {
    let bound = |flag_value: &Option<String>, key: &str, default: f64| -> Result<f64, CliError> {
        match flag_value.as_deref().or_else(|| config.get(key)) {
            Some(raw) => parse_z_pi(raw),
            None => Ok(default),
        }
    };
    let z_min = bound(z_min, "z-min", 0.01)?;
    let z_max = bound(z_max, "z-max", 0.49)?;
    let steps = match steps {
        Some(s) => s,
        None => config.get_parsed::<usize>("steps")?.unwrap_or(200),
    };
    if z_min < 0.0 || z_min >= z_max {
        return Err(CliError::Usage(format!(
            "need 0 <= z-min < z-max (got {z_min} and {z_max}, in units of pi)"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("steps must be at least 2 (got {steps})")));
    }
    Ok((z_min, z_max, steps))
}

/// One computed point of a sweep. Fit-derived fields are absent when
/// the herald has zero probability and there is no state to fit.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub z_pi: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub c1: f64,
    pub c2: f64,
    pub ratio: f64,
    pub alpha3: Option<f64>,
    pub fidelity: Option<f64>,
    pub probability: f64,
    pub case: CaseLabel,
    pub peak_x: Option<f64>,
}

/// Runs the full pipeline at one coupling length: closed-form
/// coefficients, heralded state, cat fit, and the phase-space peak of
/// the positive-x superposition branch.
pub fn breed_at(scenario: &Scenario, z_pi: f64) -> Result<SweepRow, CliError> {
    let params = CouplerParams::new(scenario.mu, z_pi * PI)?;
    let coeffs = scenario_coefficients(
        scenario.parity1,
        scenario.parity2,
        scenario.alpha0,
        scenario.beta0,
        &params,
        scenario.m,
    )?;
    let ratio = coefficient_ratio(scenario.alpha0, scenario.beta0, &params)?;
    let case = classify_case(coeffs.c1, coeffs.c2)?;
    let window = coeffs.alpha1 + coeffs.alpha2 + 1.0;

    let mut row = SweepRow {
        z_pi,
        alpha1: coeffs.alpha1,
        alpha2: coeffs.alpha2,
        c1: coeffs.c1,
        c2: coeffs.c2,
        ratio,
        alpha3: None,
        fidelity: None,
        probability: 0.0,
        case,
        peak_x: None,
    };

    let outcome = match breed(
        scenario.parity1,
        scenario.parity2,
        scenario.alpha0,
        scenario.beta0,
        &params,
        scenario.m,
    ) {
        Ok(outcome) => outcome,
        Err(Error::ZeroProbability { .. }) => return Ok(row),
        Err(e) => return Err(e.into()),
    };
    row.probability = outcome.probability;

    let fit = fit_cat(&outcome.state, coeffs.parity, window)?;
    row.alpha3 = Some(fit.alpha3);
    row.fidelity = Some(fit.fidelity);
    row.peak_x = one_sided_peak(coeffs.c1, coeffs.alpha1, coeffs.c2, coeffs.alpha2, window);
    Ok(row)
}

/// Peak of W(X, 0) for the positive-x branch 𝒩(c₁|α₁⟩ + c₂|α₂⟩); the
/// mirrored branch at −x is its reflection and carries no extra
/// information. None when the branch degenerates to the zero state or
/// a flat profile.
fn one_sided_peak(c1: f64, alpha1: f64, c2: f64, alpha2: f64, window: f64) -> Option<f64> {
    let raw = ModeState::from_components([
        (C64::from(c1), C64::from(alpha1)),
        (C64::from(c2), C64::from(alpha2)),
    ])
    .ok()?;
    let state = normalize(&raw).ok()?;
    wigner_peak_x(&state, 0.0, window).ok()
}

/// 17-significant-digit decimal form used in all CSV output; doubles
/// survive a round-trip through it bit-exactly.
pub fn csv_float(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn csv_optional(value: Option<f64>) -> String {
    value.map(csv_float).unwrap_or_default()
}

pub const ROW_HEADER: &str =
    "z,alpha1,alpha2,c1,c2,ratio,alpha3,fidelity,probability,case,peak_x";

pub fn format_row(row: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        csv_float(row.z_pi),
        csv_float(row.alpha1),
        csv_float(row.alpha2),
        csv_float(row.c1),
        csv_float(row.c2),
        csv_float(row.ratio),
        csv_optional(row.alpha3),
        csv_optional(row.fidelity),
        csv_float(row.probability),
        row.case,
        csv_optional(row.peak_x),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn headline() -> Scenario {
        Scenario {
            parity1: Parity::Odd,
            parity2: Parity::Odd,
            alpha0: 1.7,
            beta0: 0.8,
            mu: 1.0,
            m: 0,
        }
    }

    #[test]
    fn headline_point_matches_the_reference_numbers() {
        let row = breed_at(&headline(), 0.14).unwrap();
        assert!((row.alpha3.unwrap() - 2.10).abs() <= 0.02);
        assert!((row.fidelity.unwrap() - 0.9831).abs() <= 0.002);
        assert!((row.probability - 0.395).abs() <= 0.005);
        assert_eq!(row.case, CaseLabel::I);
        assert!((row.peak_x.unwrap() - row.alpha3.unwrap()).abs() <= 0.05);
    }

    #[test]
    fn zero_probability_point_has_empty_fit_fields() {
        let row = breed_at(&headline(), 0.0).unwrap();
        assert_eq!(row.probability, 0.0);
        assert!(row.alpha3.is_none() && row.fidelity.is_none() && row.peak_x.is_none());
        // The closed-form columns survive: equal amplitudes, balanced
        // opposite coefficients.
        assert!((row.alpha1 - row.alpha2).abs() <= 1e-12);
        assert!((row.c1 + row.c2).abs() <= 1e-12);
        assert_eq!(row.case, CaseLabel::NonCat);
    }

    #[test]
    fn rows_format_at_full_precision() {
        let row = breed_at(&headline(), 0.14).unwrap();
        let line = format_row(&row);
        assert!(line.starts_with("1.4000000000000001e-1,"));
        assert_eq!(line.split(',').count(), 11);
        let reparsed: f64 = line.split(',').nth(8).unwrap().parse().unwrap();
        assert_eq!(reparsed, row.probability);

        let empty = breed_at(&headline(), 0.0).unwrap();
        let line = format_row(&empty);
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[6], "");
        assert_eq!(fields[7], "");
        assert_eq!(fields[10], "");
        assert_eq!(fields[9], "non-cat");
    }

    #[test]
    fn scenario_resolution_prefers_flags_over_config() {
        let config = Config::parse("parity1 = even\nparity2 = even\nalpha0 = 2.5\nbeta0 = 0.9\n")
            .unwrap();
        let args = ScenarioArgs {
            parity1: Some("odd".into()),
            parity2: None,
            alpha0: Some(1.7),
            beta0: None,
            mu: None,
            m: None,
            config: None,
        };
        let scenario = resolve_scenario(&args, &config).unwrap();
        assert_eq!(scenario.parity1, Parity::Odd);
        assert_eq!(scenario.parity2, Parity::Even);
        assert_eq!(scenario.alpha0, 1.7);
        assert_eq!(scenario.beta0, 0.9);
        assert_eq!(scenario.mu, 1.0);
        assert_eq!(scenario.m, 0);
    }

    #[test]
    fn missing_and_invalid_scenario_fields_are_usage_errors() {
        let empty = Config::default();
        let mut args = ScenarioArgs {
            parity1: Some("odd".into()),
            parity2: Some("odd".into()),
            alpha0: Some(1.7),
            beta0: None,
            mu: None,
            m: None,
            config: None,
        };
        assert!(matches!(
            resolve_scenario(&args, &empty),
            Err(CliError::Usage(msg)) if msg.contains("beta0")
        ));
        args.beta0 = Some(-0.8);
        assert!(matches!(
            resolve_scenario(&args, &empty),
            Err(CliError::Usage(msg)) if msg.contains("beta0")
        ));
        args.beta0 = Some(0.8);
        args.parity1 = Some("sideways".into());
        assert!(matches!(
            resolve_scenario(&args, &empty),
            Err(CliError::Usage(msg)) if msg.contains("parity1")
        ));
    }

    #[test]
    fn range_resolution_validates_order_and_steps() {
        let empty = Config::default();
        let (lo, hi, steps) = resolve_range(&None, &None, None, &empty).unwrap();
        assert_eq!((lo, hi, steps), (0.01, 0.49, 200));
        assert!(matches!(
            resolve_range(&Some("0.3".into()), &Some("0.2".into()), None, &empty),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            resolve_range(&None, &None, Some(1), &empty),
            Err(CliError::Usage(_))
        ));
        let (lo, _, _) =
            resolve_range(&Some("0.3141592653589793rad".into()), &None, None, &empty).unwrap();
        assert!((lo - 0.1).abs() <= 1e-15);
    }
}
