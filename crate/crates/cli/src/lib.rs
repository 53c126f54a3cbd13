//! Command-line front end for the cat-breeding simulator: scenario
//! configuration, z sweeps, Wigner-grid export, optimum search, and
//! oracle verification. The physics lives in `catbreeder-core`; this
//! crate turns it into reproducible flat-file runs.

pub mod cli;
pub mod config;
pub mod error;
pub mod optimize;
pub mod reproduce;
pub mod scenario;
pub mod sweep;
pub mod units;
pub mod verify;
