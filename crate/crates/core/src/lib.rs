//! Exact decoherence of two qubits coupled to a transverse-field XY chain
//! with z-component Dzyaloshinskii–Moriya interaction, and the resulting
//! dynamics of discord, classical correlation and entanglement for
//! X-structure initial states.
//!
//! The pipeline is `chain_model` (mode energies and Bogoliubov angles) →
//! `decoherence` (overlap factors |F_{μν}(t)|) → `correlations` (measures
//! of the evolved state) → `runner` (time series, sweeps, CSV).

pub mod chain_model;
pub mod correlations;
pub mod decoherence;
pub mod error;
pub mod runner;
pub mod validate;

pub use error::{Error, Result};
