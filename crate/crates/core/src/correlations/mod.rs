//! Correlation measures of the evolved X-structure two-qubit state.
//!
//! The initial state (I + Σ c_α σ_α⊗σ_α)/4 keeps its X shape under the
//! dephasing dynamics: the anti-diagonal entries Γ = (c_x − c_y)F₁₄ and
//! Ω = (c_x + c_y)F₂₃ shrink while the diagonal stays fixed. All measures
//! here depend only on c_z, |Γ| and |Ω|.

mod bruteforce;

pub use bruteforce::{
    conditional_state, discord_bruteforce, discord_bruteforce_with, BruteForceOptions, BruteForceResult,
    ConditionalState,
    MeasurementSetting,
};

use crate::error::{Error, Result};

/// Slack accepted on weights and probabilities before a state is illegal.
pub const LEGALITY_TOLERANCE: f64 = 1e-12;

/// x·log₂x with 0·log₂0 = 0.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Coefficients (c_x, c_y, c_z) of a Bell-diagonal initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateCoeffs {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl XStateCoeffs {
    /// (|00⟩ + |11⟩)/√2.
    pub const BELL: XStateCoeffs = XStateCoeffs { cx: 1.0, cy: -1.0, cz: 1.0 };
    /// 0.6|Φ⁺⟩⟨Φ⁺| + 0.4|Ψ⁺⟩⟨Ψ⁺|.
    pub const MIXED: XStateCoeffs = XStateCoeffs { cx: 1.0, cy: -0.2, cz: 0.2 };

    pub fn new(cx: f64, cy: f64, cz: f64) -> Result<Self> {
        let c = Self { cx, cy, cz };
        c.validate()?;
        Ok(c)
    }

    /// Weights on the four Bell states; all must be nonnegative.
    pub fn bell_weights(&self) -> [f64; 4] {
        let (x, y, z) = (self.cx, self.cy, self.cz);
        [
            (1.0 - x - y - z) / 4.0,
            (1.0 - x + y + z) / 4.0,
            (1.0 + x - y + z) / 4.0,
            (1.0 + x + y - z) / 4.0,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.cx, self.cy, self.cz].iter().all(|v| v.is_finite()) {
            return Err(Error::IllegalState(format!("non-finite coefficients {self:?}")));
        }
        if let Some(w) = self.bell_weights().iter().find(|&&w| w < -LEGALITY_TOLERANCE) {
            return Err(Error::IllegalState(format!(
                "coefficients {self:?} give negative Bell weight {w}"
            )));
        }
        Ok(())
    }
}

/// Everything the correlation measures need at one instant: c_z, |Γ|, |Ω|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedXState {
    cz: f64,
    gamma_abs: f64,
    omega_abs: f64,
}

impl EvolvedXState {
    pub fn new(cz: f64, gamma_abs: f64, omega_abs: f64) -> Result<Self> {
        let s = Self { cz, gamma_abs, omega_abs };
        if !(cz.is_finite() && gamma_abs.is_finite() && omega_abs.is_finite()) {
            return Err(Error::IllegalState(format!("non-finite state {s:?}")));
        }
        if gamma_abs < 0.0 || omega_abs < 0.0 {
            return Err(Error::IllegalState(format!("negative coherence magnitude in {s:?}")));
        }
        if let Some(w) = s.raw_weights().iter().find(|&&w| w < -LEGALITY_TOLERANCE) {
            return Err(Error::IllegalState(format!("eigenvalue {w} < 0 for {s:?}")));
        }
        Ok(s)
    }

    pub fn cz(&self) -> f64 {
        self.cz
    }

    pub fn gamma_abs(&self) -> f64 {
        self.gamma_abs
    }

    pub fn omega_abs(&self) -> f64 {
        self.omega_abs
    }

    fn raw_weights(&self) -> [f64; 4] {
        let (z, g, o) = (self.cz, self.gamma_abs, self.omega_abs);
        [
            (1.0 - z + o) / 4.0,
            (1.0 - z - o) / 4.0,
            (1.0 + z + g) / 4.0,
            (1.0 + z - g) / 4.0,
        ]
    }

    /// The ϑ of the closed-form classical correlation.
    pub fn vartheta(&self) -> f64 {
        self.cz.abs().max(0.5 * (self.omega_abs + self.gamma_abs))
    }
}

/// Scale the anti-diagonal of the initial state by the decoherence factors.
pub fn evolve_state(c: &XStateCoeffs, f14: f64, f23: f64) -> Result<EvolvedXState> {
    for f in [f14, f23] {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::FactorOutOfRange(f));
        }
    }
    c.validate()?;
    EvolvedXState::new(c.cz, (c.cx - c.cy).abs() * f14, (c.cx + c.cy).abs() * f23)
}

/// Eigenvalues ω₁..ω₄ of the evolved density matrix. Round-off negatives are
/// clamped to zero.
pub fn spectrum_weights(s: &EvolvedXState) -> [f64; 4] {
    s.raw_weights().map(|w| w.max(0.0))
}

pub fn mutual_information(s: &EvolvedXState) -> f64 {
    let sum: f64 = spectrum_weights(s).iter().map(|&w| xlog2x(w)).sum();
    (2.0 + sum).max(0.0)
}

/// ½[(1+r)log₂(1+r) + (1−r)log₂(1−r)] for |r| ≤ 1, accurate for small r.
fn symmetric_xlog(r: f64) -> f64 {
    let r = r.abs().min(1.0);
    if r == 0.0 {
        return 0.0;
    }
    let nats = if r < 0.5 {
        (-r * r).ln_1p() + 2.0 * r * r.atanh()
    } else if r < 1.0 {
        (1.0 + r) * r.ln_1p() + (1.0 - r) * (-r).ln_1p()
    } else {
        2.0 * std::f64::consts::LN_2
    };
    0.5 * nats / std::f64::consts::LN_2
}

/// Binary entropy in bits, accurate for small p.
fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2()) - (1.0 - p) * (-p).ln_1p() / std::f64::consts::LN_2
}

/// C(ϑ) = ((1+ϑ)/2)log₂(1+ϑ) + ((1−ϑ)/2)log₂(1−ϑ).
pub fn classical_from_vartheta(v: f64) -> f64 {
    symmetric_xlog(v.clamp(0.0, 1.0))
}

pub fn classical_correlation(s: &EvolvedXState) -> f64 {
    classical_from_vartheta(s.vartheta())
}

/// Discord in the four-logarithm form; algebraically equal to I − C.
///
/// When ϑ = |c_z| the bracket minus C collapses to a sum of nonnegative
/// terms, which keeps full relative precision as the coherences vanish.
pub fn quantum_discord(s: &EvolvedXState) -> f64 {
    let (z, g, o) = (s.cz, s.gamma_abs, s.omega_abs);
    if z.abs() >= 0.5 * (g + o) {
        let term = |base: f64, d: f64| if base > 0.0 { base * symmetric_xlog(d / base) } else { 0.0 };
        return 0.5 * (term(1.0 - z, o) + term(1.0 + z, g));
    }
    let bracket = 0.25
        * [1.0 - z + o, 1.0 - z - o, 1.0 + z - g, 1.0 + z + g]
            .iter()
            .map(|&x| xlog2x(x.max(0.0)))
            .sum::<f64>();
    (bracket - classical_correlation(s)).max(0.0)
}

/// X-state closed form max{0, (|Γ| + c_z − 1)/2, (|Ω| − c_z − 1)/2}.
pub fn concurrence(s: &EvolvedXState) -> f64 {
    let a = 0.5 * (s.gamma_abs - (1.0 - s.cz));
    let b = 0.5 * (s.omega_abs - (1.0 + s.cz));
    a.max(b).clamp(0.0, 1.0)
}

pub fn entanglement_of_formation(concurrence: f64) -> f64 {
    let c = concurrence.clamp(0.0, 1.0);
    // (1 − √(1 − C²))/2 without the cancellation.
    let p = 0.5 * c * c / (1.0 + (1.0 - c * c).sqrt());
    binary_entropy(p)
}

/// (Q, E) for the Bell initial state, as functions of |F₁₄| alone.
pub fn pure_bell_correlations(f14: f64) -> (f64, f64) {
    let f = f14.clamp(0.0, 1.0);
    (symmetric_xlog(f), entanglement_of_formation(f))
}

/// All five measures at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRecord {
    pub mutual: f64,
    pub classical: f64,
    pub discord: f64,
    pub concurrence: f64,
    pub eof: f64,
}

impl CorrelationRecord {
    pub fn evaluate(s: &EvolvedXState) -> Self {
        let mutual = mutual_information(s);
        let classical = classical_correlation(s).min(mutual);
        let concurrence = concurrence(s);
        Self {
            mutual,
            classical,
            discord: quantum_discord(s),
            concurrence,
            eof: entanglement_of_formation(concurrence),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn st(cz: f64, g: f64, o: f64) -> EvolvedXState {
        EvolvedXState::new(cz, g, o).unwrap()
    }

    // Extended-precision values (40-digit evaluation of the defining sums).
    const Q_MIXED_START: f64 = 0.029_049_405_545_331_36;
    const I_MIXED_START: f64 = 1.029_049_405_545_331_4;
    const C_VARTHETA_04: f64 = 0.11870910076930738;
    const Q_MIXED_PLATEAU: f64 = 0.310_340_304_776_024;
    const EOF_02: f64 = 0.081_468_915_014_354_22;

    #[test]
    fn coefficient_legality() {
        assert!(XStateCoeffs::new(1.0, -1.0, 1.0).is_ok());
        assert!(XStateCoeffs::new(1.0, -0.2, 0.2).is_ok());
        assert!(XStateCoeffs::new(1.0, 1.0, 1.0).is_err());
        assert!(XStateCoeffs::new(1.0 + 1e-13, -1.0, 1.0).is_ok());
        assert!(XStateCoeffs::new(1.0 + 1e-9, -1.0, 1.0).is_err());
        assert!(XStateCoeffs::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn evolve_examples() {
        let s = evolve_state(&XStateCoeffs::BELL, 1.0, 1.0).unwrap();
        assert_eq!((s.cz(), s.gamma_abs(), s.omega_abs()), (1.0, 2.0, 0.0));
        let s = evolve_state(&XStateCoeffs::MIXED, 0.5, 1.0).unwrap();
        assert_abs_diff_eq!(s.cz(), 0.2);
        assert_abs_diff_eq!(s.gamma_abs(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.omega_abs(), 0.8, epsilon = 1e-15);
        let s = evolve_state(&XStateCoeffs { cx: 0.3, cy: 0.1, cz: -0.4 }, 0.0, 0.0).unwrap();
        assert_eq!((s.cz(), s.gamma_abs(), s.omega_abs()), (-0.4, 0.0, 0.0));
        assert!(matches!(evolve_state(&XStateCoeffs::BELL, 1.2, 1.0), Err(Error::FactorOutOfRange(_))));
    }

    #[test]
    fn weights() {
        let w = spectrum_weights(&st(0.2, 1.2, 0.8));
        for (a, b) in w.iter().zip([0.4, 0.0, 0.6, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert_eq!(spectrum_weights(&st(0.0, 0.0, 0.0)), [0.25; 4]);
        let w = spectrum_weights(&st(0.2, 0.0, 0.8));
        for (a, b) in w.iter().zip([0.4, 0.0, 0.3, 0.3]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(EvolvedXState::new(0.2, 1.3, 0.0).is_err());
        assert!(EvolvedXState::new(0.2, -0.1, 0.0).is_err());
    }

    #[test]
    fn mutual_examples() {
        assert_abs_diff_eq!(mutual_information(&st(0.0, 0.0, 0.0)), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mutual_information(&st(1.0, 2.0, 0.0)), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mutual_information(&st(0.2, 1.2, 0.8)), I_MIXED_START, epsilon = 1e-12);
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_from_vartheta(1.0), 1.0);
        assert_eq!(classical_from_vartheta(0.0), 0.0);
        let s = st(0.2, 0.0, 0.8);
        assert_abs_diff_eq!(s.vartheta(), 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(classical_correlation(&s), C_VARTHETA_04, epsilon = 1e-12);
    }

    #[test]
    fn discord_examples() {
        assert_abs_diff_eq!(quantum_discord(&st(0.0, 0.0, 0.0)), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(quantum_discord(&st(0.2, 1.2, 0.8)), Q_MIXED_START, epsilon = 1e-12);
        assert_abs_diff_eq!(quantum_discord(&st(0.2, 0.0, 0.8)), Q_MIXED_PLATEAU, epsilon = 1e-12);
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence(&st(1.0, 2.0, 0.0)), 1.0);
        assert_abs_diff_eq!(concurrence(&st(0.2, 1.2, 0.8)), 0.2, epsilon = 1e-15);
        for i in 0..=100 {
            let f = 2.0 / 3.0 * i as f64 / 100.0;
            assert_eq!(concurrence(&st(0.2, 1.2 * f, 0.8)), 0.0, "f = {f}");
        }
        assert!(concurrence(&st(0.2, 1.2 * 0.67, 0.8)) > 0.0);
    }

    #[test]
    fn eof_examples() {
        assert_eq!(entanglement_of_formation(0.0), 0.0);
        assert_abs_diff_eq!(entanglement_of_formation(1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(entanglement_of_formation(0.2), EOF_02, epsilon = 1e-12);
    }

    #[test]
    fn pure_bell_examples() {
        assert_eq!(pure_bell_correlations(1.0), (1.0, 1.0));
        assert_eq!(pure_bell_correlations(0.0), (0.0, 0.0));
        let (q, e) = pure_bell_correlations(0.5);
        assert_abs_diff_eq!(q, 0.18872187554086714, epsilon = 1e-12);
        assert_abs_diff_eq!(e, 0.35457890266526988, epsilon = 1e-12);
        assert!(q < e);
    }

    #[test]
    fn small_coherence_keeps_relative_precision() {
        for f in [1e-4, 1e-8, 1e-12] {
            let r = CorrelationRecord::evaluate(&evolve_state(&XStateCoeffs::BELL, f, f).unwrap());
            let q_lead = f * f / (2.0 * std::f64::consts::LN_2);
            assert_abs_diff_eq!(r.discord / q_lead, 1.0, epsilon = 1e-6);
            let p = f * f / 4.0;
            let e_lead = p * (1.0 / std::f64::consts::LN_2 - p.log2());
            assert_abs_diff_eq!(r.eof / e_lead, 1.0, epsilon = 1e-6);
            assert!(0.0 < r.discord && r.discord < r.eof);
        }
    }

    #[test]
    fn pure_bell_monotone_and_ordered() {
        let grid: Vec<(f64, f64)> = (0..1000).map(|i| pure_bell_correlations(i as f64 / 999.0)).collect();
        assert!(grid.windows(2).all(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1));
        for (i, (q, e)) in grid.iter().enumerate().skip(1).take(997) {
            assert!(q < e, "i = {i}");
        }
    }

    #[test]
    fn sudden_transition_algebra() {
        let cz = 0.2;
        let c = XStateCoeffs::MIXED;
        let at = |f: f64| CorrelationRecord::evaluate(&evolve_state(&c, f, f).unwrap());
        let q_ref = at(1.0).discord;
        let c_ref = at(0.0).classical;
        for i in 0..=200 {
            let f = cz + (1.0 - cz) * i as f64 / 200.0;
            assert_abs_diff_eq!(at(f).discord, q_ref, epsilon = 1e-9);
            let f = cz * i as f64 / 200.0;
            assert_abs_diff_eq!(at(f).classical, c_ref, epsilon = 1e-12);
        }
    }

    fn legal_state() -> impl Strategy<Value = EvolvedXState> {
        (-1.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(cz, a, b)| {
            EvolvedXState::new(cz, a * (1.0 + cz), b * (1.0 - cz)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn record_invariants(s in legal_state()) {
            let r = CorrelationRecord::evaluate(&s);
            prop_assert!((r.discord - (r.mutual - r.classical)).abs() < 1e-12);
            prop_assert!((quantum_discord(&s) - r.discord).abs() < 1e-12);
            prop_assert!(r.classical >= 0.0 && r.classical <= r.mutual);
            prop_assert!(r.discord >= 0.0);
            prop_assert!((0.0..=1.0).contains(&r.concurrence));
            prop_assert!((0.0..=1.0).contains(&r.eof));
            let w = spectrum_weights(&s);
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(w.iter().all(|x| (0.0..=1.0).contains(x)));
        }

        #[test]
        fn pure_shortcut_matches_pipeline(f in 0.0..=1.0f64) {
            let r = CorrelationRecord::evaluate(&evolve_state(&XStateCoeffs::BELL, f, f).unwrap());
            let (q, e) = pure_bell_correlations(f);
            prop_assert!((r.discord - q).abs() < 1e-12);
            prop_assert!((r.eof - e).abs() < 1e-12);
            prop_assert!((r.concurrence - f).abs() < 1e-12);
        }

        #[test]
        fn evolved_magnitudes_bounded(cz in -1.0..=1.0f64, u in -1.0..=1.0f64, f14 in 0.0..=1.0f64, f23 in 0.0..=1.0f64) {
            // |cx| + |cy| + |cz| ≤ 1 keeps every Bell weight nonnegative.
            let cx = u * (1.0 - cz.abs());
            let cy = -0.5 * (1.0 - cz.abs() - cx.abs());
            let c = XStateCoeffs::new(cx, cy, cz).unwrap();
            let s = evolve_state(&c, f14, f23).unwrap();
            prop_assert!(s.gamma_abs() <= (c.cx - c.cy).abs() + 1e-15);
            prop_assert!(s.omega_abs() <= (c.cx + c.cy).abs() + 1e-15);
        }
    }
}
