//! Breeding large Schrödinger cat states from smaller ones.
//!
//! The crate models a single scheme end to end: two cat states enter a
//! pair of coupled waveguides acting as a tunable beam splitter, a
//! photon-number-resolving detector heralds on one output, and the other
//! output carries a larger cat-like state. Everything is closed-form over
//! finite superpositions of coherent states, with an independent
//! truncated photon-number oracle for validation.
//!
//! Module map:
//! - [`coherent`] — exact superposition algebra and cat builders;
//! - [`wigner`] — Wigner functions, grids, cross-sections, peak finding;
//! - [`coupler`] — two-mode beam-splitter evolution and heralding;
//! - [`metrics`] — fidelities, best-fit cat amplitudes, case labels;
//! - [`fock`] — brute-force truncated-basis validation path.

pub mod coherent;
pub mod coupler;
pub mod error;
pub mod fock;
pub mod metrics;
mod search;
pub mod wigner;

pub use coherent::{
    cat, coherent_overlap, inner, make_cat, normalize, superpose, CatSpec, CoherentTerm,
    ModeState, Parity,
};
pub use coupler::{
    breed, coefficient_ratio, evolve, evolve_mixing, herald, herald_distribution,
    product_state, scenario_coefficients, CouplerParams, HeraldOutcome, ScenarioCoefficients,
    TwoModeState, TwoModeTerm,
};
pub use error::{Error, Result};
pub use fock::{
    default_cutoff, evolve_fock, expectations, product_fock, project_mode2, to_fock,
    two_mode_to_fock, FockVector, TwoModeFock,
};
pub use metrics::{
    classify_case, fidelity, fit_cat, fit_coherent, previous_limit, CaseLabel, CatFit,
    CoherentFit,
};
pub use wigner::{
    wigner_cross_section, wigner_grid, wigner_peak_x, wigner_point, GridSpec, PhasePoint,
    WignerGrid,
};
