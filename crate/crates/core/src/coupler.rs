//! Two coupled waveguides acting as a beam splitter on coherent-product
//! superpositions, plus photon-number-resolved detection on mode 2 that
//! heralds a single-mode superposition in mode 1.
//!
//! The coupler with strength μ and length z applies the amplitude map
//! (a, b) → (t·a − i·r·b, −i·r·a + t·b) with t = cos(μz), r = sin(μz) to
//! every coherent-product term. Detecting m photons in mode 2 projects
//! each term with ⟨m|β⟩ = e^{−|β|²/2} βᵐ/√m! and leaves a heralded
//! single-mode superposition whose closed form, for cat ⊗ cat inputs, is
//! a two-cat superposition with signed real coefficients.

use num_complex::Complex64 as C64;

use crate::coherent::{
    self, make_cat, normalize, overlap, CatSpec, ModeState, Parity, MERGE_TOL, NORM_TOL,
    ZERO_NORM_TOL,
};
use crate::error::{Error, Result};

/// Probabilities below this are treated as a failed herald.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-24;

/// Amplitudes |tα₀ ± rβ₀| at or below this are flagged degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

/// Coupling strength μ and length z; the mixing angle is μz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerParams {
    mu: f64,
    z: f64,
}

impl CouplerParams {
    pub fn new(mu: f64, z: f64) -> Result<Self> {
        if !mu.is_finite() || !z.is_finite() {
            return Err(Error::NonFinite { context: "CouplerParams" });
        }
        if mu <= 0.0 || z < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupler needs mu > 0 and z ≥ 0 (got mu = {mu}, z = {z})"
            )));
        }
        Ok(Self { mu, z })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Transmission t = cos(μz).
    pub fn t(&self) -> f64 {
        (self.mu * self.z).cos()
    }

    /// Reflection r = sin(μz).
    pub fn r(&self) -> f64 {
        (self.mu * self.z).sin()
    }
}

/// One coherent-product component c·|α⟩₁|β⟩₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeTerm {
    pub coeff: C64,
    pub alpha: C64,
    pub beta: C64,
}

impl TwoModeTerm {
    pub fn new(coeff: C64, alpha: C64, beta: C64) -> Result<Self> {
        let finite = coeff.re.is_finite()
            && coeff.im.is_finite()
            && alpha.re.is_finite()
            && alpha.im.is_finite()
            && beta.re.is_finite()
            && beta.im.is_finite();
        if finite {
            Ok(Self { coeff, alpha, beta })
        } else {
            Err(Error::NonFinite { context: "TwoModeTerm" })
        }
    }
}

/// Finite superposition of coherent-product terms on two modes.
///
/// Terms whose amplitude pairs agree within the merge tolerance are
/// combined at construction, so the list is duplicate-free.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    terms: Vec<TwoModeTerm>,
    norm_sq: f64,
}

impl TwoModeState {
    pub fn new(terms: Vec<TwoModeTerm>) -> Result<Self> {
        let merged = merge_terms(terms);
        let norm_sq = gram_norm_sq(&merged);
        Ok(Self { terms: merged, norm_sq })
    }

    pub fn from_components(
        parts: impl IntoIterator<Item = (C64, C64, C64)>,
    ) -> Result<Self> {
        let terms = parts
            .into_iter()
            .map(|(coeff, alpha, beta)| TwoModeTerm::new(coeff, alpha, beta))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    pub fn terms(&self) -> &[TwoModeTerm] {
        &self.terms
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq - 1.0).abs() <= NORM_TOL
    }

    /// ⟨self|other⟩ over both modes.
    pub fn inner(&self, other: &TwoModeState) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for ti in &self.terms {
            for tj in &other.terms {
                acc += ti.coeff.conj()
                    * tj.coeff
                    * overlap(ti.alpha, tj.alpha)
                    * overlap(ti.beta, tj.beta);
            }
        }
        acc
    }

    /// Rescaled copy with unit norm.
    pub fn normalized(&self) -> Result<TwoModeState> {
        if self.norm_sq <= ZERO_NORM_TOL {
            return Err(Error::ZeroState { norm_sq: self.norm_sq });
        }
        let scale = C64::from(self.norm_sq.sqrt().recip());
        let terms = self
            .terms
            .iter()
            .map(|t| TwoModeTerm { coeff: scale * t.coeff, ..*t })
            .collect();
        Self::new(terms)
    }

    /// Photon-count cutoff that captures all but < 1e-12 of the mode-2
    /// projection mass: ⌈max|β|² + 10·max|β| + 20⌉.
    pub fn default_m_max(&self) -> usize {
        let reach = self
            .terms
            .iter()
            .map(|t| t.beta.norm())
            .fold(0.0f64, f64::max);
        (reach * reach + 10.0 * reach + 20.0).ceil() as usize
    }
}

fn merge_terms(raw: Vec<TwoModeTerm>) -> Vec<TwoModeTerm> {
    let mut merged: Vec<TwoModeTerm> = Vec::with_capacity(raw.len());
    for term in raw {
        match merged.iter_mut().find(|m| {
            (m.alpha - term.alpha).norm() <= MERGE_TOL
                && (m.beta - term.beta).norm() <= MERGE_TOL
        }) {
            Some(m) => m.coeff += term.coeff,
            None => merged.push(term),
        }
    }
    merged.retain(|t| t.coeff != C64::new(0.0, 0.0));
    merged
}

fn gram_norm_sq(terms: &[TwoModeTerm]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for ti in terms {
        for tj in terms {
            acc += ti.coeff.conj()
                * tj.coeff
                * overlap(ti.alpha, tj.alpha)
                * overlap(ti.beta, tj.beta);
        }
    }
    debug_assert!(acc.im.abs() <= 1e-12 * acc.re.abs().max(1.0));
    acc.re.max(0.0)
}

/// Tensor product |a⟩₁ ⊗ |b⟩₂ of two normalized single-mode states.
pub fn product_state(a: &ModeState, b: &ModeState) -> Result<TwoModeState> {
    for state in [a, b] {
        if state.norm_sq() <= ZERO_NORM_TOL {
            return Err(Error::ZeroState { norm_sq: state.norm_sq() });
        }
        if !state.is_normalized() {
            return Err(Error::NotNormalized { norm_sq: state.norm_sq() });
        }
    }
    let mut terms = Vec::with_capacity(a.terms().len() * b.terms().len());
    for ta in a.terms() {
        for tb in b.terms() {
            terms.push(TwoModeTerm {
                coeff: ta.coeff * tb.coeff,
                alpha: ta.alpha,
                beta: tb.alpha,
            });
        }
    }
    TwoModeState::new(terms)
}

/// Applies the raw mixing matrix [[t, −i·r], [−i·r, t]] to every term's
/// amplitude pair. `t` and `r` must satisfy t² + r² = 1 within 1e-12;
/// prefer [`evolve`] unless a matrix outside the cos/sin family is
/// needed deliberately (e.g. fault-injection checks).
pub fn evolve_mixing(state: &TwoModeState, t: f64, r: f64) -> Result<TwoModeState> {
    if !t.is_finite() || !r.is_finite() {
        return Err(Error::NonFinite { context: "evolve_mixing" });
    }
    if (t * t + r * r - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "mixing matrix must be unitary: t² + r² = {} ≠ 1",
            t * t + r * r
        )));
    }
    let ir = C64::new(0.0, r);
    let t = C64::from(t);
    let terms = state
        .terms
        .iter()
        .map(|term| TwoModeTerm {
            coeff: term.coeff,
            alpha: t * term.alpha - ir * term.beta,
            beta: -ir * term.alpha + t * term.beta,
        })
        .collect();
    TwoModeState::new(terms)
}

/// Propagates the state through a coupler of length z: a passive
/// beam-splitter rotation by the mixing angle μz.
pub fn evolve(state: &TwoModeState, params: &CouplerParams) -> Result<TwoModeState> {
    evolve_mixing(state, params.t(), params.r())
}

/// ⟨m|β⟩ for a coherent state, built iteratively to avoid factorial
/// overflow.
fn fock_amplitude(m: usize, beta: C64) -> C64 {
    let mut amp = C64::from((-0.5 * beta.norm_sqr()).exp());
    for k in 1..=m {
        amp *= beta / (k as f64).sqrt();
    }
    amp
}

/// Mode-1 terms left after projecting mode 2 onto |m⟩, unnormalized.
fn project_onto_count(state: &TwoModeState, m: usize) -> Result<ModeState> {
    ModeState::from_components(
        state
            .terms
            .iter()
            .map(|t| (t.coeff * fock_amplitude(m, t.beta), t.alpha)),
    )
}

/// Result of detecting exactly `m` photons in mode 2.
#[derive(Debug, Clone)]
pub struct HeraldOutcome {
    pub m: usize,
    pub state: ModeState,
    pub probability: f64,
}

/// Projects mode 2 of a normalized state onto the m-photon count and
/// returns the normalized mode-1 remainder with its success
/// probability. The outcome's global phase (including the iᵐ from
/// imaginary mode-2 amplitudes) is discarded.
pub fn herald(state: &TwoModeState, m: usize) -> Result<HeraldOutcome> {
    if !state.is_normalized() {
        return Err(Error::NotNormalized { norm_sq: state.norm_sq });
    }
    let projected = project_onto_count(state, m)?;
    let probability = projected.norm_sq();
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbability { probability });
    }
    Ok(HeraldOutcome {
        m,
        state: normalize(&projected)?.canonicalized(),
        probability: probability.clamp(0.0, 1.0),
    })
}

/// P(m) for m = 0..=m_max. Entries below the zero-probability threshold
/// are reported as plain zeros rather than errors.
pub fn herald_distribution(state: &TwoModeState, m_max: usize) -> Result<Vec<f64>> {
    if !state.is_normalized() {
        return Err(Error::NotNormalized { norm_sq: state.norm_sq });
    }
    (0..=m_max)
        .map(|m| Ok(project_onto_count(state, m)?.norm_sq().clamp(0.0, 1.0)))
        .collect()
}

/// Signed coefficients and amplitudes of the heralded two-cat
/// superposition 𝒩[c₁(|α₁⟩ ± |−α₁⟩) + c₂(|α₂⟩ ± |−α₂⟩)].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub parity: Parity,
    /// True when one cat amplitude vanishes (tα₀ = ±rβ₀) and that
    /// component collapses to a weighted vacuum.
    pub degenerate: bool,
}

impl ScenarioCoefficients {
    /// Builds the normalized single-mode state these coefficients
    /// describe.
    pub fn assemble(&self) -> Result<ModeState> {
        let s = C64::from(self.parity.sign());
        let c1 = C64::from(self.c1);
        let c2 = C64::from(self.c2);
        let a1 = C64::from(self.alpha1);
        let a2 = C64::from(self.alpha2);
        let merged = ModeState::from_components([
            (c1, a1),
            (s * c1, -a1),
            (c2, a2),
            (s * c2, -a2),
        ])?;
        normalize(&merged)
    }
}

/// Closed-form heralded output for cat(α₀) ⊗ cat(iβ₀) inputs of the
/// given parities when m photons are detected in mode 2.
///
/// With q∓ = tβ₀ ∓ rα₀ the surviving weights are e^{−q∓²/2}·q∓ᵐ on the
/// cat at |tα₀ + rβ₀| and at |tα₀ − rβ₀|. The returned (c₁, c₂) are
/// real and signed; for odd output parity the sign of the vanishing-ket
/// direction is folded into the coefficient so both amplitudes can be
/// reported nonnegative, and slots are ordered so that c₁ pairs with
/// |tα₀ + rβ₀| when r ≥ 0 and with |tα₀ − rβ₀| otherwise.
pub fn scenario_coefficients(
    parity1: Parity,
    parity2: Parity,
    alpha0: f64,
    beta0: f64,
    params: &CouplerParams,
    m: usize,
) -> Result<ScenarioCoefficients> {
    if !alpha0.is_finite() || !beta0.is_finite() {
        return Err(Error::NonFinite { context: "scenario_coefficients" });
    }
    if alpha0 <= 0.0 || beta0 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "scenario inputs must be positive (got alpha0 = {alpha0}, beta0 = {beta0})"
        )));
    }
    let (t, r) = (params.t(), params.r());
    let s2 = parity2.sign();
    let sigma = if m % 2 == 0 { 1.0 } else { -1.0 };
    let parity = if sigma * parity1.sign() * s2 > 0.0 {
        Parity::Even
    } else {
        Parity::Odd
    };

    let big_a = t * alpha0 + r * beta0;
    let big_b = t * alpha0 - r * beta0;
    let q_minus = t * beta0 - r * alpha0;
    let q_plus = t * beta0 + r * alpha0;
    let weight_a = (-0.5 * q_minus * q_minus).exp() * q_minus.powi(m as i32);
    let weight_b = sigma * s2 * (-0.5 * q_plus * q_plus).exp() * q_plus.powi(m as i32);

    let fold = |weight: f64, amplitude: f64| match parity {
        Parity::Even => (weight, amplitude.abs()),
        Parity::Odd => (weight * amplitude.signum(), amplitude.abs()),
    };
    let (ca, alpha_a) = fold(weight_a, big_a);
    let (cb, alpha_b) = fold(weight_b, big_b);

    // Slot order and overall sign follow the r ≥ 0 / r < 0 piecewise
    // convention: c₁ leads with the |tα₀ + rβ₀| cat for r ≥ 0, and the
    // pair is rescaled by −1 whenever the leading weight is negative so
    // that c₁'s exponential factor always enters positively.
    let (lead, mut c1, alpha1, mut c2, alpha2) = if r >= 0.0 {
        (weight_a, ca, alpha_a, cb, alpha_b)
    } else {
        (weight_b, cb, alpha_b, ca, alpha_a)
    };
    if lead < 0.0 {
        c1 = -c1;
        c2 = -c2;
    }

    Ok(ScenarioCoefficients {
        c1,
        c2,
        alpha1,
        alpha2,
        parity,
        degenerate: big_a.abs() <= DEGENERATE_TOL || big_b.abs() <= DEGENERATE_TOL,
    })
}

/// Coefficient ratio R = |c₁/c₂| = e^{2·t·r·α₀·β₀} of the even-input
/// scenarios, maximal at μz = π/4.
pub fn coefficient_ratio(alpha0: f64, beta0: f64, params: &CouplerParams) -> Result<f64> {
    if !alpha0.is_finite() || !beta0.is_finite() {
        return Err(Error::NonFinite { context: "coefficient_ratio" });
    }
    if alpha0 <= 0.0 || beta0 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ratio inputs must be positive (got alpha0 = {alpha0}, beta0 = {beta0})"
        )));
    }
    Ok((2.0 * params.t() * params.r() * alpha0 * beta0).exp())
}

/// Convenience pipeline: parity-labelled cat inputs, coupler, herald.
pub fn breed(
    parity1: Parity,
    parity2: Parity,
    alpha0: f64,
    beta0: f64,
    params: &CouplerParams,
    m: usize,
) -> Result<HeraldOutcome> {
    let input1 = make_cat(CatSpec::with_parity(alpha0, parity1)?)?;
    let input2 = coherent::cat(C64::new(0.0, beta0), parity2.phase())?;
    let joint = product_state(&input1, &input2)?;
    herald(&evolve(&joint, params)?, m)
}
