//! Coupling lengths on the command line are given in units of π, the
//! same convention as sweep axes: `0.14` means 0.14π. A `rad` suffix
//! switches to raw radians, e.g. `0.4398rad`.

use crate::error::CliError;

/// Parses a z value into units of π.
pub fn parse_z_pi(raw: &str) -> Result<f64, CliError> {
    let trimmed = raw.trim();
    let (number, in_radians) = match trimmed.strip_suffix("rad") {
        Some(rest) => (rest.trim_end(), true),
        None => (trimmed, false),
    };
    let value: f64 = number
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid z value '{raw}'")))?;
    if !value.is_finite() {
        return Err(CliError::Usage(format!("z value '{raw}' is not finite")));
    }
    Ok(if in_radians {
        value / std::f64::consts::PI
    } else {
        value
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values_are_pi_units() {
        assert_eq!(parse_z_pi("0.14").unwrap(), 0.14);
        assert_eq!(parse_z_pi(" 0.25 ").unwrap(), 0.25);
    }

    #[test]
    fn rad_suffix_converts_to_pi_units() {
        let z = parse_z_pi("0.43982297150257105rad").unwrap();
        assert!((z - 0.14).abs() <= 1e-15);
        assert!((parse_z_pi("3.141592653589793rad").unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn junk_is_a_usage_error() {
        assert!(matches!(parse_z_pi("fast"), Err(CliError::Usage(_))));
        assert!(matches!(parse_z_pi("0.14radx"), Err(CliError::Usage(_))));
        assert!(matches!(parse_z_pi("nan"), Err(CliError::Usage(_))));
        assert!(matches!(parse_z_pi(""), Err(CliError::Usage(_))));
    }
}
