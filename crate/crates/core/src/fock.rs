//! Truncated photon-number-basis oracle.
//!
//! Everything else in the crate works with closed-form coherent-state
//! algebra; this module redoes the same physics by brute force in a
//! finite Fock basis — expansion via αⁿ/√n!, coupler evolution by
//! numerically exponentiating μz(a₁†a₂ + a₂†a₁) block by block, and
//! projection by slicing — so the two paths can be checked against each
//! other with no shared code.

use nalgebra::{linalg::SymmetricEigen, DMatrix};
use num_complex::Complex64 as C64;

use crate::coherent::{ModeState, NORM_TOL, ZERO_NORM_TOL};
use crate::coupler::{CouplerParams, TwoModeState, ZERO_PROBABILITY_TOL};
use crate::error::{Error, Result};

/// Fraction of probability mass allowed in the top five basis slots.
pub const TAIL_MASS_TOL: f64 = 1e-10;

/// Cutoff heuristic leaving < 1e-12 Poisson tail mass for amplitudes up
/// to `max_amp`: ⌈a² + 10a + 20⌉.
pub fn default_cutoff(max_amp: f64) -> usize {
    let a = max_amp.abs();
    (a * a + 10.0 * a + 20.0).ceil() as usize
}

/// Single-mode state as amplitudes over |0⟩..|cutoff⟩, kept normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<C64>,
}

impl FockVector {
    /// Normalizes a raw amplitude list. No adequacy judgement is made
    /// here; [`to_fock`] enforces the tail bound for expansions.
    pub fn from_amps(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument("empty Fock vector".into()));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { context: "FockVector" });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= ZERO_NORM_TOL {
            return Err(Error::ZeroState { norm_sq });
        }
        let scale = C64::from(norm_sq.sqrt().recip());
        Ok(Self { amps: amps.into_iter().map(|a| scale * a).collect() })
    }

    /// Basis state |n⟩ embedded at the given cutoff.
    pub fn basis(n: usize, cutoff: usize) -> Result<Self> {
        if n > cutoff {
            return Err(Error::InvalidArgument(format!(
                "basis index {n} exceeds cutoff {cutoff}"
            )));
        }
        let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
        amps[n] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn cutoff(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability mass in the top five slots; small values mean the
    /// cutoff comfortably contains the state.
    pub fn tail_mass(&self) -> f64 {
        let start = self.amps.len().saturating_sub(5);
        self.amps[start..].iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩ over the shared range of basis states.
    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Raw coherent-superposition expansion: ampₙ = Σᵢ cᵢ e^{−|αᵢ|²/2} αᵢⁿ/√n!.
fn expand(state: &ModeState, cutoff: usize) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
    for term in state.terms() {
        let mut contrib = term.coeff * C64::from((-0.5 * term.alpha.norm_sqr()).exp());
        for (n, slot) in amps.iter_mut().enumerate() {
            if n > 0 {
                contrib *= term.alpha / (n as f64).sqrt();
            }
            *slot += contrib;
        }
    }
    amps
}

/// Expands a coherent superposition in the number basis, renormalizes,
/// and enforces the tail-mass adequacy bound.
pub fn to_fock(state: &ModeState, cutoff: usize) -> Result<FockVector> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be at least 1 (got {cutoff})"
        )));
    }
    let vector = FockVector::from_amps(expand(state, cutoff))?;
    let tail_mass = vector.tail_mass();
    if tail_mass >= TAIL_MASS_TOL {
        return Err(Error::InadequateCutoff { cutoff, tail_mass });
    }
    Ok(vector)
}

/// Two-mode state as a dense (cutoff₁+1)×(cutoff₂+1) amplitude matrix,
/// kept normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFock {
    amps: DMatrix<C64>,
}

impl TwoModeFock {
    fn from_matrix(amps: DMatrix<C64>) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { context: "TwoModeFock" });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= ZERO_NORM_TOL {
            return Err(Error::ZeroState { norm_sq });
        }
        let scale = C64::from(norm_sq.sqrt().recip());
        Ok(Self { amps: amps * scale })
    }

    pub fn cutoff1(&self) -> usize {
        self.amps.nrows() - 1
    }

    pub fn cutoff2(&self) -> usize {
        self.amps.ncols() - 1
    }

    pub fn amp(&self, n1: usize, n2: usize) -> C64 {
        self.amps[(n1, n2)]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOL
    }

    pub fn inner(&self, other: &TwoModeFock) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability mass per total photon number n₁ + n₂.
    pub fn block_masses(&self) -> Vec<f64> {
        let mut masses = vec![0.0; self.cutoff1() + self.cutoff2() + 1];
        for n1 in 0..self.amps.nrows() {
            for n2 in 0..self.amps.ncols() {
                masses[n1 + n2] += self.amps[(n1, n2)].norm_sqr();
            }
        }
        masses
    }
}

/// Tensor product of two single-mode vectors.
pub fn product_fock(a: &FockVector, b: &FockVector) -> TwoModeFock {
    let amps = DMatrix::from_fn(a.amps.len(), b.amps.len(), |n1, n2| {
        a.amps[n1] * b.amps[n2]
    });
    // Inputs are normalized, so the product already is too.
    TwoModeFock { amps }
}

/// Expands an analytic two-mode superposition into the number basis
/// with per-mode cutoffs, renormalizing and checking both tails.
pub fn two_mode_to_fock(
    state: &TwoModeState,
    cutoff1: usize,
    cutoff2: usize,
) -> Result<TwoModeFock> {
    if cutoff1 < 1 || cutoff2 < 1 {
        return Err(Error::InvalidArgument(format!(
            "cutoffs must be at least 1 (got {cutoff1}, {cutoff2})"
        )));
    }
    let mut amps = DMatrix::from_element(cutoff1 + 1, cutoff2 + 1, C64::new(0.0, 0.0));
    for term in state.terms() {
        let weight = term.coeff
            * C64::from((-0.5 * (term.alpha.norm_sqr() + term.beta.norm_sqr())).exp());
        let mut row = weight;
        for n1 in 0..=cutoff1 {
            if n1 > 0 {
                row *= term.alpha / (n1 as f64).sqrt();
            }
            let mut entry = row;
            for n2 in 0..=cutoff2 {
                if n2 > 0 {
                    entry *= term.beta / (n2 as f64).sqrt();
                }
                amps[(n1, n2)] += entry;
            }
        }
    }
    let fock = TwoModeFock::from_matrix(amps)?;
    let masses = |along_rows: bool| -> f64 {
        let (outer, inner_len) = if along_rows {
            (fock.amps.nrows(), fock.amps.ncols())
        } else {
            (fock.amps.ncols(), fock.amps.nrows())
        };
        let start = outer.saturating_sub(5);
        (start..outer)
            .map(|i| {
                (0..inner_len)
                    .map(|j| {
                        let (n1, n2) = if along_rows { (i, j) } else { (j, i) };
                        fock.amps[(n1, n2)].norm_sqr()
                    })
                    .sum::<f64>()
            })
            .sum()
    };
    let tail_mass = masses(true).max(masses(false));
    if tail_mass >= TAIL_MASS_TOL {
        let cutoff = cutoff1.max(cutoff2);
        return Err(Error::InadequateCutoff { cutoff, tail_mass });
    }
    Ok(fock)
}

/// Applies the coupler propagator exp(−iμz(a₁†a₂ + a₂†a₁)) exactly
/// within each total-photon-number block.
///
/// The generator never moves amplitude between blocks, so each block is
/// a finite real-symmetric tridiagonal matrix (off-diagonals
/// √((k+1)(n−k)) in the mode-1 count k) that is exponentiated through
/// its eigendecomposition. Blocks clipped by the cutoffs evolve
/// unitarily within their stored slice; adequate cutoffs keep the
/// clipped mass negligible.
pub fn evolve_fock(state: &TwoModeFock, params: &CouplerParams) -> TwoModeFock {
    let angle = params.mu() * params.z();
    let (c1, c2) = (state.cutoff1(), state.cutoff2());
    let mut amps = state.amps.clone();
    for n in 0..=(c1 + c2) {
        let lo = n.saturating_sub(c2);
        let hi = n.min(c1);
        let dim = hi - lo + 1;
        if dim == 1 {
            continue;
        }
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for j in 0..dim - 1 {
            let k = lo + j;
            let coupling = (((k + 1) * (n - k)) as f64).sqrt();
            h[(j, j + 1)] = coupling;
            h[(j + 1, j)] = coupling;
        }
        let eig = SymmetricEigen::new(h);
        let vector: Vec<C64> = (0..dim).map(|j| amps[(lo + j, n - lo - j)]).collect();
        // v' = Q · diag(e^{−iθλ}) · Qᵀ · v with Q's columns the
        // eigenvectors.
        let rotated: Vec<C64> = (0..dim)
            .map(|i| {
                let projected: C64 = (0..dim)
                    .map(|j| C64::from(eig.eigenvectors[(j, i)]) * vector[j])
                    .sum();
                projected * C64::from_polar(1.0, -angle * eig.eigenvalues[i])
            })
            .collect();
        for j in 0..dim {
            let updated: C64 = (0..dim)
                .map(|i| C64::from(eig.eigenvectors[(j, i)]) * rotated[i])
                .sum();
            amps[(lo + j, n - lo - j)] = updated;
        }
    }
    TwoModeFock { amps }
}

/// Detects exactly m photons in mode 2: slices the matrix at column m,
/// returning the renormalized mode-1 remainder and the outcome
/// probability.
pub fn project_mode2(state: &TwoModeFock, m: usize) -> Result<(FockVector, f64)> {
    if m > state.cutoff2() {
        return Err(Error::InvalidArgument(format!(
            "photon count {m} exceeds mode-2 cutoff {}",
            state.cutoff2()
        )));
    }
    let slice: Vec<C64> = (0..state.amps.nrows()).map(|n1| state.amps[(n1, m)]).collect();
    let probability: f64 = slice.iter().map(|a| a.norm_sqr()).sum();
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbability { probability });
    }
    Ok((FockVector::from_amps(slice)?, probability.clamp(0.0, 1.0)))
}

/// Mean photon number n̄ = Σ n·|ampₙ|² and parity ⟨Π⟩ = Σ (−1)ⁿ|ampₙ|²
/// of a normalized vector.
pub fn expectations(state: &FockVector) -> Result<(f64, f64)> {
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let mut mean = 0.0;
    let mut parity = 0.0;
    for (n, amp) in state.amps.iter().enumerate() {
        let mass = amp.norm_sqr();
        mean += n as f64 * mass;
        parity += if n % 2 == 0 { mass } else { -mass };
    }
    Ok((mean, parity))
}
