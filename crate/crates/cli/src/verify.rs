//! Self-verification: runs the closed-form pipeline against the
//! brute-force number-basis oracle and a set of convention locks,
//! reporting residuals for each check.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_2_PI, PI};

use catbreeder_core::{
    breed, cat, coefficient_ratio, default_cutoff, evolve_fock, evolve_mixing, expectations,
    herald_distribution, make_cat, previous_limit, product_state, project_mode2,
    scenario_coefficients, to_fock, two_mode_to_fock, wigner_point, CatSpec, CouplerParams,
    Error, Parity, PhasePoint, TwoModeState,
};

const ALPHA0: f64 = 1.7;
const BETA0: f64 = 0.8;
const ORACLE_SEED: u64 = 0xCA7B_0A7;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

fn product_input(parity1: Parity, parity2: Parity) -> TwoModeState {
    let mode1 = make_cat(CatSpec::new(ALPHA0, parity1.phase()).unwrap()).unwrap();
    let mode2 = cat(C64::new(0.0, BETA0), parity2.phase()).unwrap();
    product_state(&mode1, &mode2).unwrap()
}

/// Analytic herald vs the truncated-Fock pipeline across all four
/// parity scenarios at seeded random coupling lengths.
fn oracle_equivalence() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let cutoff = default_cutoff(previous_limit(ALPHA0, BETA0).unwrap());
    let mut worst_infidelity: f64 = 0.0;
    let mut worst_dp: f64 = 0.0;
    for (parity1, parity2) in [
        (Parity::Even, Parity::Even),
        (Parity::Even, Parity::Odd),
        (Parity::Odd, Parity::Even),
        (Parity::Odd, Parity::Odd),
    ] {
        let joint = product_input(parity1, parity2);
        let mut checked = 0;
        while checked < 10 {
            let z = rng.random_range(0.05..1.5);
            let params = CouplerParams::new(1.0, z).unwrap();
            let outcome = match breed(parity1, parity2, ALPHA0, BETA0, &params, 0) {
                Ok(outcome) if outcome.probability > 1e-9 => outcome,
                _ => continue,
            };
            let expanded = two_mode_to_fock(&joint, cutoff, cutoff).unwrap();
            let (oracle_state, oracle_p) =
                project_mode2(&evolve_fock(&expanded, &params), 0).unwrap();
            let analytic = to_fock(&outcome.state, cutoff).unwrap();
            worst_infidelity =
                worst_infidelity.max(1.0 - analytic.inner(&oracle_state).norm());
            worst_dp = worst_dp.max((outcome.probability - oracle_p).abs());
            checked += 1;
        }
    }
    check(
        "oracle-equivalence",
        worst_infidelity <= 1e-8 && worst_dp <= 1e-8,
        format!("max 1-F = {worst_infidelity:.2e}, max |dP| = {worst_dp:.2e} over 4 scenarios x 10 z"),
    )
}

/// The degenerate odd⊗odd point at z = 0 must report an explicit
/// zero-probability herald, not a garbage state.
fn zero_probability_herald() -> CheckResult {
    let params = CouplerParams::new(1.0, 0.0).unwrap();
    match breed(Parity::Odd, Parity::Odd, ALPHA0, BETA0, &params, 0) {
        Err(Error::ZeroProbability { probability }) => check(
            "zero-probability-herald",
            true,
            format!("z = 0 reported P = {probability:.2e} as expected"),
        ),
        other => check(
            "zero-probability-herald",
            false,
            format!("expected a zero-probability report, got {other:?}"),
        ),
    }
}

/// Herald outcomes over all photon counts must exhaust the state.
fn herald_completeness() -> CheckResult {
    let params = CouplerParams::new(1.0, 0.14 * PI).unwrap();
    let evolved = catbreeder_core::evolve(&product_input(Parity::Odd, Parity::Odd), &params)
        .unwrap();
    let m_max = evolved.default_m_max();
    let total: f64 = herald_distribution(&evolved, m_max).unwrap().iter().sum();
    check(
        "herald-completeness",
        (total - 1.0).abs() <= 1e-10,
        format!("sum P(m) - 1 = {:+.2e} up to m = {m_max}", total - 1.0),
    )
}

/// Locks the beam-splitter sign convention: each evolved component of
/// the odd⊗odd product must pair the mode-1 amplitude with its partner
/// mode-2 amplitude from the closed-form map. Negating r (the tamper
/// switch) breaks the pairing and must be caught here.
fn amplitude_pairing(tamper_r: bool) -> CheckResult {
    let z = 0.10 * PI;
    let (t, r) = (z.cos(), z.sin());
    let r_used = if tamper_r { -r } else { r };
    let evolved = evolve_mixing(&product_input(Parity::Odd, Parity::Odd), t, r_used).unwrap();

    let big_a = t * ALPHA0 + r * BETA0;
    let big_b = t * ALPHA0 - r * BETA0;
    let q_minus = t * BETA0 - r * ALPHA0;
    let q_plus = t * BETA0 + r * ALPHA0;
    let expected = [
        (C64::from(big_a), C64::new(0.0, q_minus)),
        (C64::from(big_b), C64::new(0.0, -q_plus)),
        (C64::from(-big_b), C64::new(0.0, q_plus)),
        (C64::from(-big_a), C64::new(0.0, -q_minus)),
    ];
    let mut mismatches = 0;
    for term in evolved.terms() {
        let paired = expected
            .iter()
            .any(|(a, b)| (term.alpha - a).norm() <= 1e-10 && (term.beta - b).norm() <= 1e-10);
        if !paired {
            mismatches += 1;
        }
    }
    check(
        "amplitude-pairing",
        mismatches == 0,
        if mismatches == 0 {
            format!("all {} evolved components match the sign convention", evolved.terms().len())
        } else {
            format!("{mismatches} of {} components violate the sign convention", evolved.terms().len())
        },
    )
}

/// The closed-form coefficient table must reassemble the state the
/// full pipeline produces.
fn scenario_reconstruction() -> CheckResult {
    let mut worst: f64 = 0.0;
    for (parity1, parity2) in [
        (Parity::Odd, Parity::Odd),
        (Parity::Even, Parity::Even),
        (Parity::Even, Parity::Odd),
    ] {
        for z in [0.10 * PI, 0.14 * PI, 0.30 * PI] {
            let params = CouplerParams::new(1.0, z).unwrap();
            let outcome = breed(parity1, parity2, ALPHA0, BETA0, &params, 0).unwrap();
            let assembled =
                scenario_coefficients(parity1, parity2, ALPHA0, BETA0, &params, 0)
                    .unwrap()
                    .assemble()
                    .unwrap();
            let fidelity = catbreeder_core::fidelity(&outcome.state, &assembled).unwrap();
            worst = worst.max(1.0 - fidelity);
        }
    }
    check(
        "scenario-reconstruction",
        worst <= 1e-10,
        format!("max 1-F = {worst:.2e} over 9 scenario/z combinations"),
    )
}

/// Phase-space origin value against the independent number-basis
/// parity expectation.
fn parity_identity() -> CheckResult {
    let params = CouplerParams::new(1.0, 0.14 * PI).unwrap();
    let state = breed(Parity::Odd, Parity::Odd, ALPHA0, BETA0, &params, 0)
        .unwrap()
        .state;
    let origin = wigner_point(&state, PhasePoint::new(0.0, 0.0).unwrap()).unwrap();
    let fock = to_fock(&state, default_cutoff(3.0)).unwrap();
    let (_, parity) = expectations(&fock).unwrap();
    let residual = (origin - FRAC_2_PI * parity).abs();
    check(
        "parity-identity",
        residual <= 1e-8,
        format!("|W(0,0) - (2/pi)<parity>| = {residual:.2e}"),
    )
}

/// |c₁/c₂| of the even⊗even table vs the exponential ratio law.
fn ratio_law() -> CheckResult {
    let mut worst: f64 = 0.0;
    for k in 0..40 {
        let z = 0.02 + 1.5 * k as f64 / 39.0;
        let params = CouplerParams::new(1.0, z).unwrap();
        let coeffs =
            scenario_coefficients(Parity::Even, Parity::Even, ALPHA0, BETA0, &params, 0)
                .unwrap();
        let ratio = coefficient_ratio(ALPHA0, BETA0, &params).unwrap();
        worst = worst.max(((coeffs.c1 / coeffs.c2).abs() - ratio).abs());
    }
    check(
        "ratio-law",
        worst <= 1e-10,
        format!("max |R - exp(2 t r a0 b0)| = {worst:.2e} over 40 z"),
    )
}

/// Runs every check; `tamper_r` flips the beam-splitter sign as a
/// negative control that must make `amplitude-pairing` fail.
pub fn run_verify(tamper_r: bool) -> Vec<CheckResult> {
    vec![
        oracle_equivalence(),
        zero_probability_herald(),
        herald_completeness(),
        amplitude_pairing(tamper_r),
        scenario_reconstruction(),
        parity_identity(),
        ratio_law(),
    ]
}
