//! Exact algebra over finite superpositions of coherent states.
//!
//! A single bosonic mode is held as a finite list of weighted coherent
//! components Σᵢ cᵢ|αᵢ⟩. Because every overlap has the closed form
//! ⟨a|b⟩ = exp(−|a|²/2 − |b|²/2 + a̅·b), norms, inner products and
//! normalization factors are computed without any photon-number cutoff.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Two amplitudes closer than this are treated as the same coherent
/// component and their coefficients are summed.
pub const MERGE_TOL: f64 = 1e-12;

/// Squared-norm threshold at or below which a state counts as the zero
/// vector (the square of [`MERGE_TOL`]).
pub const ZERO_NORM_TOL: f64 = 1e-24;

/// |norm_sq − 1| bound under which a state is considered normalized.
pub const NORM_TOL: f64 = 1e-10;

fn ensure_finite(value: C64, context: &'static str) -> Result<()> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { context })
    }
}

/// Closed-form coherent-state overlap ⟨a|b⟩ = exp(−|a|²/2 − |b|²/2 + a̅·b).
///
/// The modulus is e^{−|a−b|²/2} ≤ 1 with equality exactly at a = b.
pub fn coherent_overlap(a: C64, b: C64) -> Result<C64> {
    ensure_finite(a, "coherent_overlap amplitude a")?;
    ensure_finite(b, "coherent_overlap amplitude b")?;
    Ok(overlap(a, b))
}

/// Unchecked overlap kernel for amplitudes already known to be finite.
pub(crate) fn overlap(a: C64, b: C64) -> C64 {
    (a.conj() * b - C64::from(0.5 * (a.norm_sqr() + b.norm_sqr()))).exp()
}

/// One weighted coherent component c|α⟩ of a superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentTerm {
    pub coeff: C64,
    pub alpha: C64,
}

impl CoherentTerm {
    pub fn new(coeff: C64, alpha: C64) -> Result<Self> {
        ensure_finite(coeff, "CoherentTerm coefficient")?;
        ensure_finite(alpha, "CoherentTerm amplitude")?;
        Ok(Self { coeff, alpha })
    }
}

/// A pure single-mode state as a finite superposition of coherent states.
///
/// Construction merges components whose amplitudes agree within
/// [`MERGE_TOL`] and caches the Gram-sum squared norm, so the term list
/// never holds two copies of the same |α⟩.
#[derive(Debug, Clone)]
pub struct ModeState {
    terms: Vec<CoherentTerm>,
    norm_sq: f64,
}

impl ModeState {
    /// Builds a state from raw terms, merging duplicate amplitudes.
    pub fn new(terms: Vec<CoherentTerm>) -> Result<Self> {
        for term in &terms {
            ensure_finite(term.coeff, "ModeState coefficient")?;
            ensure_finite(term.alpha, "ModeState amplitude")?;
        }
        let merged = merge_terms(terms);
        let norm_sq = gram_norm_sq(&merged);
        Ok(Self { terms: merged, norm_sq })
    }

    /// Convenience constructor from (coefficient, amplitude) pairs.
    pub fn from_components(parts: impl IntoIterator<Item = (C64, C64)>) -> Result<Self> {
        let terms = parts
            .into_iter()
            .map(|(coeff, alpha)| CoherentTerm::new(coeff, alpha))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    /// The normalized coherent state |α⟩ as a one-term superposition.
    pub fn coherent(alpha: C64) -> Result<Self> {
        Self::from_components([(C64::from(1.0), alpha)])
    }

    pub fn terms(&self) -> &[CoherentTerm] {
        &self.terms
    }

    /// Cached ⟨ψ|ψ⟩ of the stored (possibly unnormalized) term list.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq - 1.0).abs() <= NORM_TOL
    }

    /// Fixes the irrelevant global phase by making the first nonzero
    /// coefficient real and positive. Used for display and for
    /// coefficient-level comparisons; fidelities never depend on it.
    pub fn canonicalized(&self) -> Self {
        let Some(lead) = self.terms.iter().find(|t| t.coeff.norm() > 0.0) else {
            return self.clone();
        };
        let phase = lead.coeff / C64::from(lead.coeff.norm());
        let rotation = phase.conj();
        let terms = self
            .terms
            .iter()
            .map(|t| CoherentTerm { coeff: t.coeff * rotation, alpha: t.alpha })
            .collect();
        Self { terms, norm_sq: self.norm_sq }
    }
}

impl fmt::Display for ModeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.canonicalized().terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({:.6}{:+.6}i)|{:.6}{:+.6}i⟩",
                term.coeff.re, term.coeff.im, term.alpha.re, term.alpha.im
            )?;
        }
        Ok(())
    }
}

fn merge_terms(raw: Vec<CoherentTerm>) -> Vec<CoherentTerm> {
    let mut merged: Vec<CoherentTerm> = Vec::with_capacity(raw.len());
    for term in raw {
        match merged
            .iter_mut()
            .find(|m| (m.alpha - term.alpha).norm() <= MERGE_TOL)
        {
            Some(existing) => existing.coeff += term.coeff,
            None => merged.push(term),
        }
    }
    merged.retain(|t| t.coeff != C64::new(0.0, 0.0));
    merged
}

/// Σᵢⱼ cᵢ* cⱼ ⟨αᵢ|αⱼ⟩, clamped to the nonnegative reals.
fn gram_norm_sq(terms: &[CoherentTerm]) -> f64 {
    let mut sum = C64::new(0.0, 0.0);
    for ti in terms {
        for tj in terms {
            sum += ti.coeff.conj() * tj.coeff * overlap(ti.alpha, tj.alpha);
        }
    }
    debug_assert!(
        sum.im.abs() <= 1e-12 * sum.re.abs().max(1.0),
        "Gram sum should be real, got imaginary residue {}",
        sum.im
    );
    sum.re.max(0.0)
}

/// Parity of a cat state: even has superposition phase 0, odd has phase π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Superposition phase φ of 𝒩(|α⟩ + e^{iφ}|−α⟩).
    pub fn phase(self) -> f64 {
        match self {
            Parity::Even => 0.0,
            Parity::Odd => std::f64::consts::PI,
        }
    }

    /// e^{iφ} as a real sign: +1 for even, −1 for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidArgument(format!(
                "parity must be \"even\" or \"odd\", got \"{other}\""
            ))),
        }
    }
}

/// Recipe for a cat state 𝒩(|α₀⟩ + e^{iφ}|−α₀⟩) with real α₀ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    alpha0: f64,
    phi: f64,
}

impl CatSpec {
    /// The phase is wrapped into [0, 2π).
    pub fn new(alpha0: f64, phi: f64) -> Result<Self> {
        if !alpha0.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite { context: "CatSpec" });
        }
        if alpha0 < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "cat amplitude must be nonnegative, got {alpha0}"
            )));
        }
        let phi = phi.rem_euclid(2.0 * std::f64::consts::PI);
        Ok(Self { alpha0, phi })
    }

    pub fn with_parity(alpha0: f64, parity: Parity) -> Result<Self> {
        Self::new(alpha0, parity.phase())
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Builds the normalized cat state described by `spec`.
///
/// The normalization 𝒩 = [2 + 2cos(φ)e^{−2α₀²}]^{−1/2} comes out of the
/// generic Gram sum; the degenerate odd cat at α₀ = 0 is the zero vector
/// and is rejected.
pub fn make_cat(spec: CatSpec) -> Result<ModeState> {
    cat(C64::from(spec.alpha0()), spec.phi())
}

/// General-amplitude cat 𝒩(|α⟩ + e^{iφ}|−α⟩) for complex α.
pub fn cat(alpha: C64, phi: f64) -> Result<ModeState> {
    if !phi.is_finite() {
        return Err(Error::NonFinite { context: "cat phase" });
    }
    let phase = C64::new(0.0, phi).exp();
    let raw = ModeState::from_components([(C64::from(1.0), alpha), (phase, -alpha)])?;
    normalize(&raw)
}

/// Rescales all coefficients by the single positive real 1/√⟨ψ|ψ⟩.
pub fn normalize(state: &ModeState) -> Result<ModeState> {
    let norm_sq = state.norm_sq();
    if norm_sq <= ZERO_NORM_TOL {
        return Err(Error::ZeroState { norm_sq });
    }
    let scale = norm_sq.sqrt().recip();
    let terms = state
        .terms()
        .iter()
        .map(|t| CoherentTerm { coeff: t.coeff * scale, alpha: t.alpha })
        .collect();
    ModeState::new(terms)
}

/// Forms the normalized superposition Σₖ λₖ|ψₖ⟩ of whole states.
///
/// Term lists are concatenated with coefficients scaled by λₖ, duplicate
/// amplitudes merge, and the result is normalized. Exact cancellation
/// (e.g. subtracting a state from itself) surfaces as a zero-state error.
pub fn superpose(parts: &[(C64, &ModeState)]) -> Result<ModeState> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "superpose needs at least one state".into(),
        ));
    }
    if parts.iter().all(|(coeff, _)| coeff.norm() == 0.0) {
        return Err(Error::InvalidArgument(
            "superpose needs at least one nonzero coefficient".into(),
        ));
    }
    let mut terms = Vec::new();
    for (weight, state) in parts {
        ensure_finite(*weight, "superpose coefficient")?;
        for term in state.terms() {
            terms.push(CoherentTerm { coeff: *weight * term.coeff, alpha: term.alpha });
        }
    }
    let merged = ModeState::new(terms)?;
    normalize(&merged)
}

/// Raw inner product ⟨a|b⟩ = Σᵢⱼ (cᵢᵃ)* cⱼᵇ ⟨αᵢᵃ|αⱼᵇ⟩ of the stored terms.
pub fn inner(a: &ModeState, b: &ModeState) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    for ta in a.terms() {
        for tb in b.terms() {
            sum += ta.coeff.conj() * tb.coeff * overlap(ta.alpha, tb.alpha);
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: C64 = C64::new(0.0, 1.0);

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent overlap oracle: contract two truncated photon-number
    /// expansions amplitude-by-amplitude, aₙ = e^{−|a|²/2} aⁿ/√(n!).
    fn fock_overlap(a: C64, b: C64, nmax: usize) -> C64 {
        let mut amp_a = C64::from((-0.5 * a.norm_sqr()).exp());
        let mut amp_b = C64::from((-0.5 * b.norm_sqr()).exp());
        let mut sum = amp_a.conj() * amp_b;
        for n in 0..nmax {
            let root = ((n + 1) as f64).sqrt();
            amp_a = amp_a * a / root;
            amp_b = amp_b * b / root;
            sum += amp_a.conj() * amp_b;
        }
        sum
    }

    #[test]
    fn vacuum_overlap_is_one() {
        let got = coherent_overlap(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((got - C64::from(1.0)).norm() <= 1e-15);
    }

    #[test]
    fn self_overlap_is_one() {
        for alpha in [c(1.7, 0.0), c(0.0, 0.8), c(-1.3, 2.4)] {
            let got = coherent_overlap(alpha, alpha).unwrap();
            assert!((got - C64::from(1.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn vacuum_against_imaginary_amplitude() {
        // ⟨0|0.8i⟩ = e^{−0.32}, checked against the truncated expansion.
        let got = coherent_overlap(c(0.0, 0.0), c(0.0, 0.8)).unwrap();
        assert!((got.re - (-0.32f64).exp()).abs() <= 1e-15);
        assert!(got.im.abs() <= 1e-15);
        let oracle = fock_overlap(c(0.0, 0.0), c(0.0, 0.8), 40);
        assert!((got - oracle).norm() <= 1e-12);
    }

    #[test]
    fn overlap_rejects_non_finite() {
        assert!(matches!(
            coherent_overlap(c(f64::NAN, 0.0), c(0.0, 0.0)),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            coherent_overlap(c(0.0, 0.0), c(f64::INFINITY, 0.0)),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn make_cat_zero_amplitude_even_is_vacuum() {
        let state = make_cat(CatSpec::new(0.0, 0.0).unwrap()).unwrap();
        assert_eq!(state.terms().len(), 1);
        assert!((state.terms()[0].alpha).norm() <= 1e-15);
        assert!((state.norm_sq() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn make_cat_zero_amplitude_odd_is_zero_state() {
        let spec = CatSpec::new(0.0, std::f64::consts::PI).unwrap();
        assert!(matches!(make_cat(spec), Err(Error::ZeroState { .. })));
    }

    #[test]
    fn odd_cat_normalization_constant() {
        // 𝒩 = [2 − 2e^{−2·1.7²}]^{−1/2} for the odd cat at α₀ = 1.7.
        let state = make_cat(CatSpec::new(1.7, std::f64::consts::PI).unwrap()).unwrap();
        let expected = (2.0 - 2.0 * (-5.78f64).exp()).sqrt().recip();
        assert!((expected - 0.708201).abs() <= 5e-6);
        let lead = state.terms()[0].coeff;
        assert!((lead.norm() - expected).abs() <= 1e-12);
        assert!(state.is_normalized());
    }

    #[test]
    fn cat_spec_wraps_phase_and_rejects_negative_amplitude() {
        let spec = CatSpec::new(1.0, 2.5 * std::f64::consts::PI).unwrap();
        assert!((spec.phi() - 0.5 * std::f64::consts::PI).abs() <= 1e-12);
        assert!(matches!(
            CatSpec::new(-0.1, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn normalize_single_term() {
        let state = ModeState::from_components([(c(2.0, 0.0), c(1.0, 0.0))]).unwrap();
        let normed = normalize(&state).unwrap();
        assert_eq!(normed.terms().len(), 1);
        assert!((normed.terms()[0].coeff - C64::from(1.0)).norm() <= 1e-12);
        assert!((normed.terms()[0].alpha - C64::from(1.0)).norm() == 0.0);
    }

    #[test]
    fn normalize_two_component_scale() {
        // 0.2|1.7⟩ + 0.1|1.4⟩ has ⟨ψ|ψ⟩ = 0.04 + 0.01 + 2·0.02·⟨1.7|1.4⟩
        // with the real overlap ⟨1.7|1.4⟩ = e^{−0.045}.
        let state =
            ModeState::from_components([(c(0.2, 0.0), c(1.7, 0.0)), (c(0.1, 0.0), c(1.4, 0.0))])
                .unwrap();
        let cross = (-0.045f64).exp();
        let expected_scale = (0.04 + 0.01 + 2.0 * 0.02 * cross).sqrt().recip();
        let normed = normalize(&state).unwrap();
        assert!((normed.terms()[0].coeff.re - 0.2 * expected_scale).abs() <= 1e-12);
        assert!((normed.terms()[1].coeff.re - 0.1 * expected_scale).abs() <= 1e-12);
        assert!(normed.is_normalized());
    }

    #[test]
    fn normalize_is_idempotent_on_cat() {
        let state = make_cat(CatSpec::new(1.3, 0.0).unwrap()).unwrap();
        let again = normalize(&state).unwrap();
        for (a, b) in state.terms().iter().zip(again.terms()) {
            assert!((a.coeff - b.coeff).norm() <= 1e-12);
        }
    }

    #[test]
    fn superpose_identity() {
        let base = ModeState::coherent(c(0.9, -0.4)).unwrap();
        let got = superpose(&[(C64::from(1.0), &base)]).unwrap();
        assert_eq!(got.terms().len(), 1);
        assert!((inner(&got, &base).norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn superpose_full_cancellation_is_zero_state() {
        let even = make_cat(CatSpec::new(1.1, 0.0).unwrap()).unwrap();
        let got = superpose(&[(C64::from(1.0), &even), (C64::from(-1.0), &even)]);
        assert!(matches!(got, Err(Error::ZeroState { .. })));
    }

    #[test]
    fn superpose_two_cats_keeps_four_components() {
        let big = make_cat(CatSpec::new(1.7, 0.0).unwrap()).unwrap();
        let small = make_cat(CatSpec::new(1.4, 0.0).unwrap()).unwrap();
        let got = superpose(&[(c(0.2, 0.0), &big), (c(-0.1, 0.0), &small)]).unwrap();
        assert_eq!(got.terms().len(), 4);
        assert!(got.is_normalized());
    }

    #[test]
    fn superpose_rejects_empty_and_all_zero() {
        assert!(matches!(superpose(&[]), Err(Error::InvalidArgument(_))));
        let base = ModeState::coherent(c(1.0, 0.0)).unwrap();
        let got = superpose(&[(C64::from(0.0), &base)]);
        assert!(matches!(got, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn canonicalized_makes_lead_coefficient_positive_real() {
        let state = ModeState::from_components([
            (c(0.0, -0.7), c(1.2, 0.0)),
            (c(0.3, 0.1), c(-1.2, 0.0)),
        ])
        .unwrap();
        let canon = state.canonicalized();
        let lead = canon.terms()[0].coeff;
        assert!(lead.im.abs() <= 1e-15);
        assert!(lead.re > 0.0);
        assert!((inner(&canon, &state).norm() - state.norm_sq()).abs() <= 1e-12);
    }

    fn amp_strategy() -> impl Strategy<Value = C64> {
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| C64::new(re, im))
    }

    fn coeff_strategy() -> impl Strategy<Value = C64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| C64::new(re, im))
    }

    proptest! {
        #[test]
        fn overlap_is_hermitian(a in amp_strategy(), b in amp_strategy()) {
            let ab = overlap(a, b);
            let ba = overlap(b, a);
            prop_assert!((ab - ba.conj()).norm() <= 1e-14);
        }

        #[test]
        fn overlap_modulus_matches_distance(a in amp_strategy(), b in amp_strategy()) {
            let expected = (-0.5 * (a - b).norm_sqr()).exp();
            let got = overlap(a, b).norm();
            prop_assert!((got - expected).abs() <= 1e-12 * expected.max(1e-30));
            prop_assert!(got <= 1.0 + 1e-15);
        }

        #[test]
        fn overlap_against_fock_expansion(a in amp_strategy(), b in amp_strategy()) {
            let got = overlap(a, b);
            let oracle = fock_overlap(a, b, 60);
            prop_assert!((got - oracle).norm() <= 1e-10);
        }

        #[test]
        fn normalize_is_idempotent_and_preserves_ray(
            parts in proptest::collection::vec((coeff_strategy(), amp_strategy()), 1..5)
        ) {
            let state = ModeState::from_components(parts).unwrap();
            prop_assume!(state.norm_sq() > 1e-12);
            let once = normalize(&state).unwrap();
            let twice = normalize(&once).unwrap();
            prop_assert!((once.norm_sq() - 1.0).abs() <= 1e-10);
            for (a, b) in once.terms().iter().zip(twice.terms()) {
                prop_assert!((a.coeff - b.coeff).norm() <= 1e-12);
            }
            // Ray preservation: overlap of the normalized state with the
            // original has modulus √⟨ψ|ψ⟩ and no extra phase twist.
            let cross = inner(&once, &state);
            prop_assert!((cross.norm() - state.norm_sq().sqrt()).abs() <= 1e-9);
            prop_assert!(cross.re > 0.0);
        }

        #[test]
        fn superpose_is_scale_invariant(
            parts in proptest::collection::vec((coeff_strategy(), amp_strategy()), 1..4),
            lambda_mag in 0.1..8.0f64,
            lambda_arg in 0.0..std::f64::consts::TAU,
        ) {
            let states: Vec<ModeState> = parts
                .iter()
                .map(|&(_, alpha)| ModeState::coherent(alpha).unwrap())
                .collect();
            let mut plain = Vec::new();
            let mut scaled = Vec::new();
            let lambda = C64::from_polar(lambda_mag, lambda_arg);
            for ((coeff, _), state) in parts.iter().zip(&states) {
                plain.push((*coeff, state));
                scaled.push((*coeff * lambda, state));
            }
            let raw = ModeState::from_components(
                parts.iter().map(|&(coeff, alpha)| (coeff, alpha)),
            ).unwrap();
            prop_assume!(raw.norm_sq() > 1e-12);
            let a = superpose(&plain).unwrap();
            let b = superpose(&scaled).unwrap();
            prop_assert!((inner(&a, &b).norm() - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn merging_a_state_with_itself_is_single_term(alpha in amp_strategy()) {
            let state = ModeState::from_components([
                (C64::from(1.0), alpha),
                (C64::from(1.0), alpha),
            ]).unwrap();
            prop_assert_eq!(state.terms().len(), 1);
            prop_assert!((state.terms()[0].coeff - C64::from(2.0)).norm() <= 1e-15);
        }
    }

    #[test]
    fn display_is_compact() {
        let state = make_cat(CatSpec::new(1.0, 0.0).unwrap()).unwrap();
        let text = format!("{state}");
        assert!(text.contains("|1.000000+0.000000i⟩"));
        assert!(text.contains(" + "));
    }

    #[test]
    fn imaginary_unit_constant_is_consistent() {
        assert!((I * I + C64::from(1.0)).norm() <= 1e-16);
    }
}
