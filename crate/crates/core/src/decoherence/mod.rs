//! Decoherence factors |F_{μν}(t)| of the environment.
//!
//! Each positive mode contributes an overlap F_k(t) ≤ 1 between the bare
//! vacuum evolved under two projected Hamiltonians. The full factor is their
//! product, taken in the log domain so that long chains and late times do
//! not underflow.

mod oracle;

pub use oracle::pair_oracle_factor;

use crate::chain_model::{ChainParams, ChainSpectrum};
use crate::error::{Error, Result};

/// Slack for round-off in the mode-factor radicand.
pub const RADICAND_TOLERANCE: f64 = 1e-12;

/// Default cutoff for the short-time Gaussian rates.
pub const DEFAULT_CUTOFF: usize = 150;

/// A pair of branch indices (μ, ν), each in 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchPair {
    mu: usize,
    nu: usize,
}

impl BranchPair {
    /// The pair multiplying Γ (|00⟩⟨11|).
    pub const F14: BranchPair = BranchPair { mu: 1, nu: 4 };
    /// The pair multiplying Ω (|01⟩⟨10|).
    pub const F23: BranchPair = BranchPair { mu: 2, nu: 3 };

    pub fn new(mu: usize, nu: usize) -> Result<Self> {
        for i in [mu, nu] {
            if !(1..=4).contains(&i) {
                return Err(Error::BadBranch(i));
            }
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn nu(&self) -> usize {
        self.nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorRequest {
    pub params: ChainParams,
    pub pair: BranchPair,
    pub time: f64,
}

/// Single-mode overlap F_k(t).
///
/// `theta_*` are the half-angle differences Θ and `lambda_*` the
/// quasiparticle energies Λ of the two branches.
pub fn mode_factor(
    theta_mu: f64,
    theta_nu: f64,
    lambda_mu: f64,
    lambda_nu: f64,
    t: f64,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let s_mu = (2.0 * theta_mu).sin();
    let s_nu = (2.0 * theta_nu).sin();
    let (sin_mu, cos_mu) = (lambda_mu * t).sin_cos();
    let (sin_nu, cos_nu) = (lambda_nu * t).sin_cos();
    // cos(Λμt − Λνt) expanded so both phases share one sin_cos evaluation.
    let cos_diff = cos_mu * cos_nu + sin_mu * sin_nu;
    let cross = s_mu * s_nu;
    let dtheta = (theta_mu - theta_nu).sin();

    let radicand = 1.0 - s_mu * s_mu * sin_mu * sin_mu - s_nu * s_nu * sin_nu * sin_nu
        + 2.0 * cross * sin_mu * sin_nu * cos_diff
        - 4.0 * cross * dtheta * dtheta * sin_mu * sin_mu * sin_nu * sin_nu;

    if !(-RADICAND_TOLERANCE..=1.0 + RADICAND_TOLERANCE).contains(&radicand) {
        return Err(Error::RadicandOutOfRange {
            radicand,
            theta_mu,
            theta_nu,
            lambda_mu,
            lambda_nu,
            time: t,
        });
    }
    Ok(radicand.clamp(0.0, 1.0).sqrt())
}

/// Product of factors in [0, 1], accumulated as a sum of logarithms in
/// iteration order. Any exact zero makes the product exactly zero.
pub fn log_domain_product<I>(factors: I) -> Result<f64>
where
    I: IntoIterator<Item = Result<f64>>,
{
    let mut log_sum = 0.0;
    for f in factors {
        let f = f?;
        if f == 0.0 {
            return Ok(0.0);
        }
        log_sum += f.ln();
    }
    Ok(log_sum.exp())
}

impl ChainSpectrum {
    /// |F_{μν}(t)| from the cached mode tables.
    pub fn factor(&self, pair: BranchPair, t: f64) -> Result<f64> {
        if pair.mu == pair.nu {
            // Terms cancel identically; still validate the time.
            if t < 0.0 {
                return Err(Error::NegativeTime(t));
            }
            return Ok(1.0);
        }
        let a = self.branch(pair.mu)?;
        let b = self.branch(pair.nu)?;
        log_domain_product(
            a.iter()
                .zip(b)
                .map(|(m, n)| mode_factor(m.half_angle, n.half_angle, m.lambda_k, n.lambda_k, t)),
        )
    }
}

/// |F_{μν}(t)| for a single request.
///
/// Builds the mode tables from scratch; use [`ChainSpectrum::factor`] when
/// evaluating many times for one parameter set.
pub fn factor_magnitude(req: &FactorRequest) -> Result<f64> {
    ChainSpectrum::new(&req.params)?.factor(req.pair, req.time)
}

/// Short-time decay rates of |F₁₄(t)| ≈ exp(−(τ₁+τ₂)t²) near the critical
/// field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianRates {
    pub tau1: f64,
    pub tau2: f64,
    pub cutoff: usize,
}

impl GaussianRates {
    pub fn total(&self) -> f64 {
        self.tau1 + self.tau2
    }
}

pub fn default_cutoff(params: &ChainParams) -> usize {
    DEFAULT_CUTOFF.min(params.mode_count())
}

/// Rates summed over the first `cutoff` positive mode labels of the grid.
pub fn gaussian_rates(params: &ChainParams, cutoff: usize) -> Result<GaussianRates> {
    params.validate()?;
    let modes = params.mode_count();
    if cutoff == 0 || cutoff > modes {
        return Err(Error::BadCutoff { cutoff, modes });
    }
    if params.lambda == 1.0 {
        return Err(Error::RateDivergence);
    }
    let n = params.sites as f64;
    let (mut s2, mut s3) = (0.0, 0.0);
    for j in 0..cutoff {
        let x = params.grid.index(j) / n;
        s2 += x * x;
        s3 += x * x * x;
    }
    let pi = std::f64::consts::PI;
    let gap2 = (params.lambda - 1.0).powi(2);
    let g2 = params.gamma * params.gamma;
    Ok(GaussianRates {
        tau1: 32.0 * pi.powi(2) * g2 * params.coupling.powi(2) / gap2 * s2,
        tau2: 256.0 * pi.powi(3) * g2 * params.coupling * params.dm / gap2 * s3,
        cutoff,
    })
}

pub fn gaussian_approx_factor(rates: &GaussianRates, t: f64) -> f64 {
    let total = rates.total();
    if total < 0.0 {
        log::warn!("tau1 + tau2 = {total} < 0: Gaussian approximation is outside its regime");
    }
    (-total * t * t).exp()
}
