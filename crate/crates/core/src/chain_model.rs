//! Parameters of the XY environment and the closed-form single-mode
//! quantities of its diagonalized form.
//!
//! The chain Hamiltonian conditioned on the two-qubit basis state |φμ⟩ is the
//! bare chain with the transverse field shifted to λμ. Every mode pair
//! (k, −k) is then characterised by its single-particle energy ε, its
//! quasiparticle energy Λ (which carries the DM shift), its Bogoliubov angle
//! θ and the half-angle Θ between projected and bare vacua.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Momentum grid of the positive-branch modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeGrid {
    /// k = 1/2, 3/2, …, (N−1)/2 with N even.
    #[default]
    HalfInteger,
    /// k = 1, 2, …, (N−1)/2 with N odd.
    Integer,
}

impl ModeGrid {
    pub(crate) fn required_parity(self) -> &'static str {
        match self {
            ModeGrid::HalfInteger => "even",
            ModeGrid::Integer => "odd",
        }
    }

    /// Mode label k of the `j`-th positive mode (0-based).
    pub fn index(self, j: usize) -> f64 {
        match self {
            ModeGrid::HalfInteger => j as f64 + 0.5,
            ModeGrid::Integer => (j + 1) as f64,
        }
    }

    /// Number of positive modes for an `sites`-site chain.
    pub fn mode_count(self, sites: usize) -> usize {
        match self {
            ModeGrid::HalfInteger => sites / 2,
            ModeGrid::Integer => (sites - 1) / 2,
        }
    }
}

impl fmt::Display for ModeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeGrid::HalfInteger => write!(f, "half-integer"),
            ModeGrid::Integer => write!(f, "integer"),
        }
    }
}

/// Environment and coupling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    /// Number of chain sites N.
    pub sites: usize,
    /// XY anisotropy γ.
    pub gamma: f64,
    /// Transverse field λ.
    pub lambda: f64,
    /// z-component DM strength D.
    pub dm: f64,
    /// Qubit–chain coupling g.
    pub coupling: f64,
    /// Coupling anisotropy δ between qubits A and B.
    pub delta: f64,
    pub grid: ModeGrid,
}

impl Default for ChainParams {
    /// The critical Ising chain of the Fig. 1(b) setup.
    fn default() -> Self {
        Self {
            sites: 600,
            gamma: 1.0,
            lambda: 1.0,
            dm: 0.0,
            coupling: 0.05,
            delta: 0.0,
            grid: ModeGrid::HalfInteger,
        }
    }
}

impl ChainParams {
    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::InvalidParams(format!(
                "chain needs at least 2 sites, got {}",
                self.sites
            )));
        }
        let even = self.sites.is_multiple_of(2);
        let parity_ok = match self.grid {
            ModeGrid::HalfInteger => even,
            ModeGrid::Integer => !even,
        };
        if !parity_ok {
            return Err(Error::GridParity { sites: self.sites, grid: self.grid });
        }
        let reals = [
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("D", self.dm),
            ("g", self.coupling),
            ("delta", self.delta),
        ];
        if let Some((name, v)) = reals.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
        }
        if self.coupling < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling g must be nonnegative, got {}",
                self.coupling
            )));
        }
        Ok(())
    }

    pub fn mode_count(&self) -> usize {
        self.grid.mode_count(self.sites)
    }
}

/// The four transverse fields seen by the chain, one per two-qubit basis
/// state |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedFields {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
}

impl ProjectedFields {
    /// Field for branch `mu` (1-based).
    pub fn get(&self, mu: usize) -> Result<f64> {
        match mu {
            1 => Ok(self.lambda1),
            2 => Ok(self.lambda2),
            3 => Ok(self.lambda3),
            4 => Ok(self.lambda4),
            _ => Err(Error::BadBranch(mu)),
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.lambda1, self.lambda2, self.lambda3, self.lambda4]
    }
}

pub fn projected_fields(p: &ChainParams) -> ProjectedFields {
    let g = p.coupling;
    let gd = p.coupling * p.delta;
    ProjectedFields {
        lambda1: p.lambda + g,
        lambda2: p.lambda + gd,
        lambda3: p.lambda - gd,
        lambda4: p.lambda - g,
    }
}

/// Positive-branch momenta 2πk/N, strictly increasing.
pub fn mode_momenta(p: &ChainParams) -> Result<Vec<f64>> {
    p.validate()?;
    let n = p.sites as f64;
    Ok((0..p.mode_count())
        .map(|j| 2.0 * PI * p.grid.index(j) / n)
        .collect())
}

/// ε = √((λμ − cos k̃)² + γ² sin² k̃).
pub fn single_particle_energy(k: f64, field: f64, gamma: f64) -> f64 {
    (field - k.cos()).hypot(gamma * k.sin())
}

/// Λ = 2(ε + 2D sin k̃). Negative values are returned unchanged.
pub fn quasiparticle_energy(k: f64, field: f64, gamma: f64, dm: f64) -> f64 {
    2.0 * (single_particle_energy(k, field, gamma) + 2.0 * dm * k.sin())
}

/// True when both the numerator and denominator of the angle vanish, so
/// the mode has no preferred Bogoliubov rotation.
pub fn is_degenerate_mode(k: f64, field: f64, gamma: f64) -> bool {
    gamma * k.sin() == 0.0 && field == k.cos()
}

/// Bogoliubov angle θ with tan θ = γ sin k̃ / (λμ − cos k̃), folded into
/// [0, π) with the quadrant taken from the signs of both terms.
///
/// The degenerate mode (see [`is_degenerate_mode`]) yields 0.
pub fn bogoliubov_angle(k: f64, field: f64, gamma: f64) -> f64 {
    let raw = (gamma * k.sin()).atan2(field - k.cos());
    // atan2 lands in (−π, π]; shifting by π keeps differences between fields
    // at the same k intact up to a multiple of π/2 in Θ, which leaves every
    // sin(2Θ) product invariant.
    if raw < 0.0 {
        raw + PI
    } else if raw >= PI {
        raw - PI
    } else {
        raw
    }
}

/// Θ = (θ_projected − θ_bare)/2.
pub fn half_angle_difference(theta_projected: f64, theta_bare: f64) -> f64 {
    0.5 * (theta_projected - theta_bare)
}

/// Derived quantities of one positive mode under one projected field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    /// 2πk/N.
    pub k_momentum: f64,
    pub epsilon: f64,
    /// Quasiparticle energy Λ.
    pub lambda_k: f64,
    /// Bogoliubov angle θ under the projected field.
    pub theta: f64,
    /// Half-angle difference Θ relative to the bare field.
    pub half_angle: f64,
    pub degenerate: bool,
}

impl ModeData {
    pub fn new(k: f64, field: f64, bare_field: f64, gamma: f64, dm: f64) -> Self {
        let theta = bogoliubov_angle(k, field, gamma);
        let bare = bogoliubov_angle(k, bare_field, gamma);
        Self {
            k_momentum: k,
            epsilon: single_particle_energy(k, field, gamma),
            lambda_k: quasiparticle_energy(k, field, gamma, dm),
            theta,
            half_angle: half_angle_difference(theta, bare),
            degenerate: is_degenerate_mode(k, field, gamma)
                || is_degenerate_mode(k, bare_field, gamma),
        }
    }
}

/// Mode tables of one parameter set, one per projected branch.
///
/// Built once and shared across every time point and branch pair.
#[derive(Debug, Clone)]
pub struct ChainSpectrum {
    params: ChainParams,
    fields: ProjectedFields,
    branches: [Vec<ModeData>; 4],
}

impl ChainSpectrum {
    pub fn new(params: &ChainParams) -> Result<Self> {
        let momenta = mode_momenta(params)?;
        let fields = projected_fields(params);
        let branches = fields.as_array().map(|field| {
            momenta
                .iter()
                .map(|&k| ModeData::new(k, field, params.lambda, params.gamma, params.dm))
                .collect::<Vec<_>>()
        });
        let spectrum = Self { params: *params, fields, branches };
        let degenerate = spectrum.degenerate_modes();
        if degenerate > 0 {
            log::warn!("{degenerate} degenerate mode(s) with undefined Bogoliubov angle; set to 0");
        }
        Ok(spectrum)
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn fields(&self) -> &ProjectedFields {
        &self.fields
    }

    /// Mode table of branch `mu` (1-based).
    pub fn branch(&self, mu: usize) -> Result<&[ModeData]> {
        match mu {
            1..=4 => Ok(&self.branches[mu - 1]),
            _ => Err(Error::BadBranch(mu)),
        }
    }

    /// Number of (branch, mode) entries flagged degenerate.
    pub fn degenerate_modes(&self) -> usize {
        self.branches
            .iter()
            .flat_map(|b| b.iter())
            .filter(|m| m.degenerate)
            .count()
    }
}
