//! Optional TOML config file. Every key is optional; present keys replace
//! the corresponding field of a base scenario, and command-line flags are
//! applied on top by the caller.
//!
//! ```toml
//! sites = 600
//! lambda = 1.0
//! cx = 1.0
//! cy = -0.2
//! cz = 0.2
//! sweep_param = "D"
//! sweep_values = [0.0, 0.1, 0.5, 1.0]
//! ```

use std::path::Path;

use serde::Deserialize;

use super::{Column, ScenarioConfig, Sweep, SweepParam};
use crate::chain_model::ModeGrid;
use crate::correlations::XStateCoeffs;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub sites: Option<usize>,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    pub dm: Option<f64>,
    pub coupling: Option<f64>,
    pub delta: Option<f64>,
    /// "half" or "int".
    pub mode_grid: Option<String>,
    pub cx: Option<f64>,
    pub cy: Option<f64>,
    pub cz: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub sweep_param: Option<String>,
    pub sweep_values: Option<Vec<f64>>,
    pub columns: Option<Vec<String>>,
}

pub fn parse_grid(s: &str) -> Result<ModeGrid> {
    match s {
        "half" | "half-integer" => Ok(ModeGrid::HalfInteger),
        "int" | "integer" => Ok(ModeGrid::Integer),
        _ => Err(Error::InvalidConfig(format!("mode grid `{s}` is neither `half` nor `int`"))),
    }
}

impl ConfigFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn apply(&self, cfg: &mut ScenarioConfig) -> Result<()> {
        let c = &mut cfg.chain;
        if let Some(v) = self.sites { c.sites = v; }
        if let Some(v) = self.gamma { c.gamma = v; }
        if let Some(v) = self.lambda { c.lambda = v; }
        if let Some(v) = self.dm { c.dm = v; }
        if let Some(v) = self.coupling { c.coupling = v; }
        if let Some(v) = self.delta { c.delta = v; }
        if let Some(g) = &self.mode_grid { c.grid = parse_grid(g)?; }

        let i = cfg.initial;
        cfg.initial = XStateCoeffs {
            cx: self.cx.unwrap_or(i.cx),
            cy: self.cy.unwrap_or(i.cy),
            cz: self.cz.unwrap_or(i.cz),
        };
        if let Some(v) = self.t_max { cfg.t_max = v; }
        if let Some(v) = self.t_steps { cfg.t_steps = v; }

        match (&self.sweep_param, &self.sweep_values) {
            (Some(p), Some(values)) => {
                cfg.sweep = Some(Sweep { param: p.parse::<SweepParam>()?, values: values.clone() });
            }
            (None, None) => {}
            _ => {
                return Err(Error::InvalidConfig(
                    "sweep_param and sweep_values must be given together".into(),
                ))
            }
        }
        if let Some(cols) = &self.columns {
            cfg.outputs = cols
                .iter()
                .map(|s| Column::parse(s).ok_or_else(|| Error::InvalidConfig(format!("unknown column `{s}`"))))
                .collect::<Result<_>>()?;
        }
        Ok(())
    }
}
