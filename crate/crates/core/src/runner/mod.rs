//! Scenario orchestration: time series, parameter sweeps, figure presets
//! and CSV output.

mod config;
mod csv;
mod presets;

pub use config::{parse_grid, ConfigFile};
pub use csv::{emit_series_csv, emit_sweep_csv, format_sig, Column};
pub use presets::{preset, PRESET_NAMES};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chain_model::{ChainParams, ChainSpectrum};
use crate::correlations::{evolve_state, CorrelationRecord, XStateCoeffs};
use crate::decoherence::BranchPair;
use crate::error::{Error, Result};

pub const DEFAULT_T_MAX: f64 = 30.0;
pub const DEFAULT_T_STEPS: usize = 1501;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Lambda,
    Dm,
    Delta,
    Gamma,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Lambda => "lambda",
            SweepParam::Dm => "D",
            SweepParam::Delta => "delta",
            SweepParam::Gamma => "gamma",
        }
    }

    pub fn apply(self, base: &ChainParams, value: f64) -> ChainParams {
        let mut p = *base;
        match self {
            SweepParam::Lambda => p.lambda = value,
            SweepParam::Dm => p.dm = value,
            SweepParam::Delta => p.delta = value,
            SweepParam::Gamma => p.gamma = value,
        }
        p
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(SweepParam::Lambda),
            "D" | "dm" => Ok(SweepParam::Dm),
            "delta" => Ok(SweepParam::Delta),
            "gamma" => Ok(SweepParam::Gamma),
            _ => Err(Error::InvalidConfig(format!(
                "unknown sweep parameter `{s}` (expected lambda, D, delta or gamma)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub chain: ChainParams,
    pub initial: XStateCoeffs,
    pub t_max: f64,
    pub t_steps: usize,
    pub sweep: Option<Sweep>,
    pub outputs: Vec<Column>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            chain: ChainParams::default(),
            initial: XStateCoeffs::BELL,
            t_max: DEFAULT_T_MAX,
            t_steps: DEFAULT_T_STEPS,
            sweep: None,
            outputs: Column::ALL.to_vec(),
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        self.initial.validate()?;
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidConfig(format!("t_max must be positive, got {}", self.t_max)));
        }
        if self.t_steps < 2 {
            return Err(Error::InvalidConfig(format!("t_steps must be at least 2, got {}", self.t_steps)));
        }
        if self.outputs.is_empty() {
            return Err(Error::InvalidConfig("no output columns selected".into()));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(Error::InvalidConfig(format!("sweep over {} has no values", sweep.param)));
            }
            if let Some(v) = sweep.values.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("non-finite sweep value {v}")));
            }
            for &v in &sweep.values {
                sweep.param.apply(&self.chain, v).validate()?;
            }
        }
        Ok(())
    }

    /// Uniform grid over [0, t_max] with `t_steps` points.
    pub fn times(&self) -> Vec<f64> {
        let dt = self.t_max / (self.t_steps - 1) as f64;
        (0..self.t_steps).map(|i| i as f64 * dt).collect()
    }
}

/// One row of a time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub t: f64,
    pub f14: f64,
    pub f23: f64,
    pub record: CorrelationRecord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSeries {
    pub points: Vec<SeriesPoint>,
}

impl CorrelationSeries {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.t)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub param: SweepParam,
    pub entries: Vec<(f64, CorrelationSeries)>,
}

fn evaluate_point(
    spectrum: &ChainSpectrum,
    initial: &XStateCoeffs,
    t: f64,
    sweep: Option<(&'static str, f64)>,
) -> Result<SeriesPoint> {
    let wrap = |e: Error| Error::AtPoint { time: t, sweep, source: Box::new(e) };
    let f14 = spectrum.factor(BranchPair::F14, t).map_err(wrap)?;
    let f23 = spectrum.factor(BranchPair::F23, t).map_err(wrap)?;
    let state = evolve_state(initial, f14, f23).map_err(wrap)?;
    Ok(SeriesPoint { t, f14, f23, record: CorrelationRecord::evaluate(&state) })
}

/// Correlations along the configured time grid. Any sweep in `cfg` is
/// ignored; the base chain parameters are used.
///
/// Time points run on the ambient rayon pool; output order and values do
/// not depend on the pool size.
pub fn run_timeseries(cfg: &ScenarioConfig) -> Result<CorrelationSeries> {
    cfg.chain.validate()?;
    cfg.initial.validate()?;
    let base = ScenarioConfig { sweep: None, ..cfg.clone() };
    base.validate()?;
    let spectrum = ChainSpectrum::new(&cfg.chain)?;
    let points = cfg
        .times()
        .into_par_iter()
        .map(|t| evaluate_point(&spectrum, &cfg.initial, t, None))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrelationSeries { points })
}

/// One series per sweep value, in the order the values were given.
pub fn run_sweep(cfg: &ScenarioConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("sweep requested but no sweep configured".into()))?;
    let spectra = sweep
        .values
        .par_iter()
        .map(|&v| ChainSpectrum::new(&sweep.param.apply(&cfg.chain, v)))
        .collect::<Result<Vec<_>>>()?;
    let times = cfg.times();
    let n_t = times.len();

    // Flattened (sweep index, time index) tasks; collect keeps task order.
    let flat = (0..spectra.len() * n_t)
        .into_par_iter()
        .map(|task| {
            let (s, i) = (task / n_t, task % n_t);
            let ctx = Some((sweep.param.name(), sweep.values[s]));
            evaluate_point(&spectra[s], &cfg.initial, times[i], ctx)
        })
        .collect::<Result<Vec<_>>>()?;

    let entries = flat
        .chunks(n_t)
        .zip(&sweep.values)
        .map(|(chunk, &v)| (v, CorrelationSeries { points: chunk.to_vec() }))
        .collect();
    Ok(SweepTable { param: sweep.param, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(cfg: ScenarioConfig) -> ScenarioConfig {
        ScenarioConfig { t_max: 10.0, t_steps: 101, ..cfg }
    }

    #[test]
    fn decoupled_series_is_constant() {
        let mut cfg = small(ScenarioConfig::default());
        cfg.chain.coupling = 0.0;
        cfg.initial = XStateCoeffs::MIXED;
        let s = run_timeseries(&cfg).unwrap();
        let first = s.points[0];
        for p in &s.points {
            assert_eq!((p.f14, p.f23, p.record), (1.0, 1.0, first.record));
        }
    }

    #[test]
    fn series_starts_at_unit_factors() {
        let s = run_timeseries(&small(ScenarioConfig::default())).unwrap();
        assert_eq!(s.len(), 101);
        assert_eq!(s.points[0].t, 0.0);
        assert_eq!((s.points[0].f14, s.points[0].f23), (1.0, 1.0));
        assert!((s.points[0].record.discord - 1.0).abs() < 1e-12);
        assert!((s.points[0].record.eof - 1.0).abs() < 1e-12);
        assert!(s.times().collect::<Vec<_>>().windows(2).all(|w| w[0] < w[1]));
        assert!((s.points[100].t - 10.0).abs() < 1e-12);
    }

    #[test]
    fn single_value_sweep_equals_timeseries() {
        let mut cfg = small(ScenarioConfig::default());
        cfg.chain.dm = 0.3;
        cfg.sweep = Some(Sweep { param: SweepParam::Dm, values: vec![0.3] });
        let table = run_sweep(&cfg).unwrap();
        assert_eq!(table.entries.len(), 1);
        assert_eq!(table.entries[0].1, run_timeseries(&cfg).unwrap());
    }

    #[test]
    fn invalid_configs() {
        let cfg = ScenarioConfig { t_steps: 1, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = ScenarioConfig { t_max: -1.0, ..Default::default() };
        assert!(cfg.validate().is_err());
        let sweep = Some(Sweep { param: SweepParam::Lambda, values: vec![] });
        let mut cfg = ScenarioConfig { sweep, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg.sweep = Some(Sweep { param: SweepParam::Lambda, values: vec![f64::NAN] });
        assert!(cfg.validate().is_err());
        assert!(run_sweep(&ScenarioConfig::default()).is_err());
        assert!("lambda".parse::<SweepParam>().is_ok());
        assert!("mu".parse::<SweepParam>().is_err());
    }

    #[test]
    fn errors_carry_point_context() {
        let mut cfg = small(ScenarioConfig::default());
        cfg.chain.gamma = f64::NAN;
        // Non-finite parameters are caught up front.
        assert!(matches!(run_timeseries(&cfg), Err(Error::InvalidParams(_))));
    }
}
