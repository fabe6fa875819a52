//! Error type shared by every stage of the pipeline.

use thiserror::Error;

use crate::chain_model::ModeGrid;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),

    #[error("{grid} mode grid needs {} N, got N = {sites}", grid.required_parity())]
    GridParity { sites: usize, grid: ModeGrid },

    #[error("branch index {0} outside 1..=4")]
    BadBranch(usize),

    #[error(
        "mode factor radicand {radicand:e} leaves [0, 1] beyond round-off \
         (Θμ = {theta_mu}, Θν = {theta_nu}, Λμ = {lambda_mu}, Λν = {lambda_nu}, t = {time})"
    )]
    RadicandOutOfRange {
        radicand: f64,
        theta_mu: f64,
        theta_nu: f64,
        lambda_mu: f64,
        lambda_nu: f64,
        time: f64,
    },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("Gaussian rates diverge at lambda = 1; evaluate at lambda = 1 ± eps instead")]
    RateDivergence,

    #[error("cutoff K_c = {cutoff} must lie in 1..={modes}")]
    BadCutoff { cutoff: usize, modes: usize },

    #[error("pair oracle only covers D = 0, got D = {0}")]
    OracleNeedsZeroDm(f64),

    #[error("illegal two-qubit state: {0}")]
    IllegalState(String),

    #[error("decoherence factor {0} outside [0, 1]")]
    FactorOutOfRange(f64),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid scenario: {0}")]
    InvalidConfig(String),

    #[error("at t = {time}{}: {source}", sweep_context(.sweep))]
    AtPoint {
        time: f64,
        sweep: Option<(&'static str, f64)>,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

fn sweep_context(sweep: &Option<(&'static str, f64)>) -> String {
    match sweep {
        Some((name, value)) => format!(", {name} = {value}"),
        None => String::new(),
    }
}
