//! Invariant and oracle suites behind the `validate` subcommand.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain_model::{bogoliubov_angle, ChainParams, ChainSpectrum};
use crate::correlations::{
    discord_bruteforce, evolve_state, pure_bell_correlations, quantum_discord, CorrelationRecord,
    EvolvedXState, XStateCoeffs,
};
use crate::decoherence::{factor_magnitude, pair_oracle_factor, BranchPair, FactorRequest};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation, or a failure description.
    pub detail: String,
    pub elapsed: Duration,
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> SuiteReport {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    SuiteReport { name, passed, detail, elapsed: start.elapsed() }
}

fn random_chain(rng: &mut ChaCha8Rng, sites: usize, dm: f64) -> ChainParams {
    ChainParams {
        sites,
        gamma: rng.gen_range(-1.5..1.5),
        lambda: rng.gen_range(0.0..2.0),
        dm,
        coupling: rng.gen_range(0.0..0.5),
        delta: rng.gen_range(-1.0..1.0),
        ..ChainParams::default()
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> Result<EvolvedXState> {
    let cz: f64 = rng.gen_range(-1.0..=1.0);
    EvolvedXState::new(cz, rng.gen_range(0.0..=1.0 + cz), rng.gen_range(0.0..=1.0 - cz))
}

fn within(worst: f64, tol: f64) -> (bool, String) {
    (worst < tol, format!("max deviation {worst:.3e} (tol {tol:.0e})"))
}

pub fn unitarity_and_decoupling() -> SuiteReport {
    timed("unitarity / decoupling", || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let (sites, dm) = (2 * rng.gen_range(4..=50), rng.gen_range(-1.0..1.0));
            let mut p = random_chain(&mut rng, sites, dm);
            let t = rng.gen_range(0.0..30.0);
            let mu = rng.gen_range(1..=4);
            let nu = rng.gen_range(1..=4);
            let same = ChainSpectrum::new(&p)?.factor(BranchPair::new(mu, mu)?, t)?;
            worst = worst.max((same - 1.0).abs());
            p.coupling = 0.0;
            let free = ChainSpectrum::new(&p)?.factor(BranchPair::new(mu, nu)?, t)?;
            worst = worst.max((free - 1.0).abs());
        }
        Ok(within(worst, 1e-12))
    })
}

pub fn factor_symmetry_and_delta() -> SuiteReport {
    timed("factor symmetry / delta limits", || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let dm = rng.gen_range(-1.0..1.0);
            let mut p = random_chain(&mut rng, 40, dm);
            let t = rng.gen_range(0.0..30.0);
            let s = ChainSpectrum::new(&p)?;
            for (mu, nu) in [(1, 4), (2, 3), (1, 2), (2, 4)] {
                let a = s.factor(BranchPair::new(mu, nu)?, t)?;
                let b = s.factor(BranchPair::new(nu, mu)?, t)?;
                worst = worst.max((a - b).abs());
            }
            p.delta = 0.0;
            worst = worst.max((ChainSpectrum::new(&p)?.factor(BranchPair::F23, t)? - 1.0).abs());
            p.delta = 1.0;
            let s = ChainSpectrum::new(&p)?;
            worst = worst.max((s.factor(BranchPair::F23, t)? - s.factor(BranchPair::F14, t)?).abs());
        }
        Ok(within(worst, 1e-12))
    })
}

pub fn decoherence_oracle() -> SuiteReport {
    timed("closed-form factor vs pair evolution (D = 0)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut worst: f64 = 0.0;
        for _ in 0..200 {
            let sites = [8, 16, 24, 40][rng.gen_range(0..4)];
            let req = FactorRequest {
                params: random_chain(&mut rng, sites, 0.0),
                pair: BranchPair::new(rng.gen_range(1..=4), rng.gen_range(1..=4))?,
                time: rng.gen_range(0.0..10.0),
            };
            worst = worst.max((factor_magnitude(&req)? - pair_oracle_factor(&req)?).abs());
        }
        Ok(within(worst, 1e-9))
    })
}

pub fn angle_quadrants() -> SuiteReport {
    timed("Bogoliubov angle vs mode-block ground state", || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let k = rng.gen_range(1e-3..PI - 1e-3);
            let field = rng.gen_range(-2.5..2.5);
            let gamma = rng.gen_range(0.01..2.0);
            let a = 2.0 * (field - f64::cos(k));
            let b = 2.0 * gamma * k.sin();
            let eig = SymmetricEigen::new(Matrix2::new(-a, b, b, a));
            let i = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
            let v = eig.eigenvectors.column(i);
            let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
            let oracle = 2.0 * (-sign * v[1]).atan2(sign * v[0]);
            let theta = bogoliubov_angle(k, field, gamma);
            worst = worst
                .max((theta.cos() - oracle.cos()).abs())
                .max((theta.sin() - oracle.sin()).abs());
        }
        Ok(within(worst, 1e-10))
    })
}

pub fn discord_oracle() -> SuiteReport {
    timed("closed-form discord vs measurement search", || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst: f64 = 0.0;
        for _ in 0..500 {
            let s = random_state(&mut rng)?;
            worst = worst.max((quantum_discord(&s) - discord_bruteforce(&s)).abs());
        }
        Ok(within(worst, 1e-6))
    })
}

pub fn correlation_invariants() -> SuiteReport {
    timed("Q = I - C, bounds", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10_000 {
            let s = random_state(&mut rng)?;
            let r = CorrelationRecord::evaluate(&s);
            let ok = (r.discord - (r.mutual - r.classical)).abs() < 1e-12
                && (quantum_discord(&s) - r.discord).abs() < 1e-12
                && r.classical >= 0.0
                && r.classical <= r.mutual
                && (0.0..=1.0).contains(&r.concurrence)
                && (0.0..=1.0).contains(&r.eof);
            if !ok {
                return Ok((false, format!("violated at {s:?}: {r:?}")));
            }
        }
        Ok((true, "10000 random states".into()))
    })
}

pub fn pure_state_shortcut() -> SuiteReport {
    timed("Bell-state shortcut, ordering, monotonicity", || {
        let mut worst: f64 = 0.0;
        let mut prev = (0.0, 0.0);
        for i in 0..1000 {
            let f = i as f64 / 999.0;
            let (q, e) = pure_bell_correlations(f);
            let r = CorrelationRecord::evaluate(&evolve_state(&XStateCoeffs::BELL, f, f)?);
            worst = worst.max((r.discord - q).abs()).max((r.eof - e).abs());
            if q < prev.0 || e < prev.1 {
                return Ok((false, format!("not monotone at f = {f}")));
            }
            if i > 0 && i < 999 && q >= e {
                return Ok((false, format!("Q >= E at f = {f}")));
            }
            prev = (q, e);
        }
        Ok(within(worst, 1e-12))
    })
}

pub fn sudden_transition() -> SuiteReport {
    timed("sudden transition plateaus", || {
        let c = XStateCoeffs::MIXED;
        let at = |f: f64| -> Result<CorrelationRecord> {
            Ok(CorrelationRecord::evaluate(&evolve_state(&c, f, f)?))
        };
        let q_ref = at(1.0)?.discord;
        let c_ref = at(0.0)?.classical;
        let (mut wq, mut wc): (f64, f64) = (0.0, 0.0);
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            wq = wq.max((at(c.cz + (1.0 - c.cz) * x)?.discord - q_ref).abs());
            wc = wc.max((at(c.cz * x)?.classical - c_ref).abs());
        }
        Ok((wq < 1e-9 && wc < 1e-12, format!("Q plateau dev {wq:.3e}, C plateau dev {wc:.3e}")))
    })
}

pub fn run_all() -> Vec<SuiteReport> {
    vec![
        unitarity_and_decoupling(),
        factor_symmetry_and_delta(),
        decoherence_oracle(),
        angle_quadrants(),
        discord_oracle(),
        correlation_invariants(),
        pure_state_shortcut(),
        sudden_transition(),
    ]
}
