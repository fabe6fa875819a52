//! Parameter sets of the published figures.
//!
//! Captions that leave the field or the swept values unstated use λ = 1
//! (the critical chain) and D ∈ {0, 0.1, 0.5, 1}.

use super::{ScenarioConfig, Sweep, SweepParam};
use crate::chain_model::ChainParams;
use crate::correlations::XStateCoeffs;
use crate::error::{Error, Result};

pub const PRESET_NAMES: [&str; 9] = [
    "fig1a",
    "fig1b",
    "fig1c",
    "fig2",
    "fig3",
    "fig5",
    "fig6-gamma0.8",
    "fig6-gamma0.2",
    "fig7",
];

const DM_VALUES: [f64; 4] = [0.0, 0.1, 0.5, 1.0];

fn ising(lambda: f64) -> ChainParams {
    ChainParams { sites: 600, gamma: 1.0, lambda, dm: 0.0, coupling: 0.05, delta: 0.0, ..ChainParams::default() }
}

pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let base = ScenarioConfig::default();
    let cfg = match name {
        "fig1a" => ScenarioConfig { chain: ising(0.85), initial: XStateCoeffs::BELL, ..base },
        "fig1b" => ScenarioConfig { chain: ising(1.0), initial: XStateCoeffs::BELL, ..base },
        "fig1c" => ScenarioConfig { chain: ising(1.15), initial: XStateCoeffs::BELL, ..base },
        "fig2" => ScenarioConfig {
            chain: ising(1.0),
            initial: XStateCoeffs::BELL,
            sweep: Some(Sweep { param: SweepParam::Dm, values: DM_VALUES.to_vec() }),
            ..base
        },
        "fig3" => ScenarioConfig {
            chain: ising(1.0),
            initial: XStateCoeffs::MIXED,
            sweep: Some(Sweep {
                param: SweepParam::Lambda,
                values: (0..=8).map(|i| 0.8 + 0.05 * i as f64).collect(),
            }),
            ..base
        },
        "fig5" => ScenarioConfig {
            chain: ising(1.0),
            initial: XStateCoeffs::MIXED,
            sweep: Some(Sweep { param: SweepParam::Delta, values: vec![0.0, 0.1, 0.5, 1.0] }),
            ..base
        },
        "fig6-gamma0.8" | "fig6-gamma0.2" => {
            let gamma = if name.ends_with("0.8") { 0.8 } else { 0.2 };
            ScenarioConfig {
                chain: ChainParams { gamma, delta: 0.5, ..ising(1.0) },
                initial: XStateCoeffs::MIXED,
                sweep: Some(Sweep { param: SweepParam::Dm, values: DM_VALUES.to_vec() }),
                ..base
            }
        }
        "fig7" => ScenarioConfig {
            chain: ChainParams { delta: 1.0, ..ising(1.0) },
            initial: XStateCoeffs::MIXED,
            ..base
        },
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(cfg)
}
