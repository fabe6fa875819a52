//! Classical correlation by explicit search over von Neumann measurements
//! on qubit B.
//!
//! Works on the full 4×4 density matrix with Γ and Ω taken real and
//! nonnegative (a local-unitary gauge that leaves every measure unchanged)
//! and never touches the closed-form expressions.

use std::f64::consts::TAU;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen, Vector2};
use num_complex::Complex64;
use rayon::prelude::*;

use super::{xlog2x, EvolvedXState};
use crate::error::{Error, Result};

/// Projective measurement |φ₁⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩ and its
/// orthogonal partner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementSetting {
    fn basis(&self) -> [Vector2<Complex64>; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = Complex64::from_polar(1.0, self.phi);
        [
            Vector2::new(Complex64::new(c, 0.0), e * s),
            Vector2::new(e.conj() * s, Complex64::new(-c, 0.0)),
        ]
    }
}

/// State of A after outcome `i` on B, and the outcome probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalState {
    pub matrix: Matrix2<Complex64>,
    pub probability: f64,
}

fn density_matrix(s: &EvolvedXState) -> Matrix4<Complex64> {
    let c = |x: f64| Complex64::new(x / 4.0, 0.0);
    let (z, g, o) = (s.cz(), s.gamma_abs(), s.omega_abs());
    let zero = c(0.0);
    Matrix4::new(
        c(1.0 + z), zero, zero, c(g),
        zero, c(1.0 - z), c(o), zero,
        zero, c(o), c(1.0 - z), zero,
        c(g), zero, zero, c(1.0 + z),
    )
}

/// ⟨b| ρ_AB |b⟩_B, unnormalized. Basis index = 2·a + b.
fn project_b(rho: &Matrix4<Complex64>, b: &Vector2<Complex64>) -> Matrix2<Complex64> {
    Matrix2::from_fn(|a, a2| {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..2 {
            for j2 in 0..2 {
                acc += b[j].conj() * rho[(2 * a + j, 2 * a2 + j2)] * b[j2];
            }
        }
        acc
    })
}

fn reduced_a(rho: &Matrix4<Complex64>) -> Matrix2<Complex64> {
    Matrix2::from_fn(|a, a2| rho[(2 * a, 2 * a2)] + rho[(2 * a + 1, 2 * a2 + 1)])
}

fn reduced_b(rho: &Matrix4<Complex64>) -> Matrix2<Complex64> {
    Matrix2::from_fn(|b, b2| rho[(b, b2)] + rho[(2 + b, 2 + b2)])
}

/// Von Neumann entropy (bits) of a unit-trace 2×2 Hermitian matrix.
fn entropy2(m: &Matrix2<Complex64>) -> f64 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let r = ((a - d).powi(2) + 4.0 * m[(0, 1)].norm_sqr()).sqrt();
    let tr = a + d;
    -xlog2x(0.5 * (tr + r)) - xlog2x(0.5 * (tr - r))
}

fn entropy4(m: &Matrix4<Complex64>) -> f64 {
    SymmetricEigen::new(*m).eigenvalues.iter().map(|&w| -xlog2x(w)).sum()
}

/// Conditional state of A for outcome `outcome` ∈ {1, 2}.
pub fn conditional_state(
    s: &EvolvedXState,
    m: &MeasurementSetting,
    outcome: u8,
) -> Result<ConditionalState> {
    let basis = m.basis();
    let b = match outcome {
        1 => &basis[0],
        2 => &basis[1],
        _ => return Err(Error::InvalidConfig(format!("measurement outcome {outcome} not in {{1, 2}}"))),
    };
    let unnorm = project_b(&density_matrix(s), b);
    let p = unnorm.trace().re;
    let matrix = if p > 0.0 { unnorm / Complex64::new(p, 0.0) } else { unnorm };
    Ok(ConditionalState { matrix, probability: p })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceOptions {
    /// Points per axis over [0, 2π], endpoints included.
    pub grid: usize,
    /// Golden-section bracket width at which refinement stops.
    pub tolerance: f64,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self { grid: 181, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceResult {
    pub mutual: f64,
    pub classical: f64,
    pub discord: f64,
    pub setting: MeasurementSetting,
}

struct Objective {
    rho: Matrix4<Complex64>,
    s_a: f64,
}

impl Objective {
    /// S(ρ_A) − Σ p_i S(ρ_A^(i)).
    fn eval(&self, theta: f64, phi: f64) -> f64 {
        let mut cond = 0.0;
        for b in (MeasurementSetting { theta, phi }).basis() {
            let m = project_b(&self.rho, &b);
            let p = m.trace().re;
            if p > 0.0 {
                cond += p * entropy2(&(m / Complex64::new(p, 0.0)));
            }
        }
        self.s_a - cond
    }
}

/// Maximizer of `f` on [lo, hi].
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let r = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

pub fn discord_bruteforce(s: &EvolvedXState) -> f64 {
    discord_bruteforce_with(s, &BruteForceOptions::default()).discord
}

/// Grid search over (θ, φ) followed by alternating golden-section
/// refinement around the best grid point.
pub fn discord_bruteforce_with(s: &EvolvedXState, opts: &BruteForceOptions) -> BruteForceResult {
    let rho = density_matrix(s);
    let s_a = entropy2(&reduced_a(&rho));
    let mutual = s_a + entropy2(&reduced_b(&rho)) - entropy4(&rho);
    let obj = Objective { rho, s_a };

    let n = opts.grid.max(2);
    let step = TAU / (n - 1) as f64;
    // Row maxima in parallel; rows and columns are scanned in ascending
    // order with strict improvement, so ties go to the smallest (θ, φ).
    let rows: Vec<(f64, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let theta = i as f64 * step;
            let mut best = (f64::NEG_INFINITY, i, 0);
            for j in 0..n {
                let v = obj.eval(theta, j as f64 * step);
                if v > best.0 {
                    best = (v, i, j);
                }
            }
            best
        })
        .collect();
    let (mut best, bi, bj) = rows
        .into_iter()
        .fold((f64::NEG_INFINITY, 0, 0), |acc, r| if r.0 > acc.0 { r } else { acc });

    let (mut theta, mut phi) = (bi as f64 * step, bj as f64 * step);
    for _ in 0..50 {
        let t_new = golden_max(|x| obj.eval(x, phi), theta - step, theta + step, opts.tolerance);
        let p_new = golden_max(|y| obj.eval(t_new, y), phi - step, phi + step, opts.tolerance);
        let v = obj.eval(t_new, p_new);
        let moved = (t_new - theta).abs().max((p_new - phi).abs());
        if v >= best {
            best = v;
            theta = t_new;
            phi = p_new;
        }
        if moved < opts.tolerance {
            break;
        }
    }

    let classical = best.clamp(0.0, mutual.max(0.0));
    BruteForceResult {
        mutual,
        classical,
        discord: (mutual - classical).max(0.0),
        setting: MeasurementSetting { theta, phi },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::quantum_discord;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::FRAC_PI_4;

    fn st(cz: f64, g: f64, o: f64) -> EvolvedXState {
        EvolvedXState::new(cz, g, o).unwrap()
    }

    /// The displayed closed form of the conditional state.
    fn displayed(s: &EvolvedXState, m: &MeasurementSetting, i: u8) -> Matrix2<Complex64> {
        let sign = if i == 1 { 1.0 } else { -1.0 };
        let (cz, g, o) = (s.cz(), s.gamma_abs(), s.omega_abs());
        let c2 = (2.0 * m.theta).cos();
        let s2 = (2.0 * m.theta).sin();
        let e = Complex64::from_polar(1.0, m.phi);
        let off = (e.conj() * o + e * g) * (sign * s2 / 4.0);
        Matrix2::new(
            Complex64::new(0.5 * (1.0 + sign * cz * c2), 0.0),
            off,
            off.conj(),
            Complex64::new(0.5 * (1.0 - sign * cz * c2), 0.0),
        )
    }

    #[test]
    fn z_basis_conditional() {
        let s = st(0.3, 0.5, 0.4);
        let c = conditional_state(&s, &MeasurementSetting { theta: 0.0, phi: 1.3 }, 1).unwrap();
        assert_abs_diff_eq!(c.matrix[(0, 0)].re, 0.65, epsilon = 1e-15);
        assert_abs_diff_eq!(c.matrix[(1, 1)].re, 0.35, epsilon = 1e-15);
        assert_eq!(c.matrix[(0, 1)].norm(), 0.0);
        assert_abs_diff_eq!(c.probability, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn bell_conditional_is_pure() {
        let s = st(0.0, 1.0, 1.0);
        let c = conditional_state(&s, &MeasurementSetting { theta: FRAC_PI_4, phi: 0.0 }, 1).unwrap();
        assert_abs_diff_eq!(c.matrix[(0, 1)].norm(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(entropy2(&c.matrix), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn conditional_states_match_display_and_are_physical() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let cz: f64 = rng.gen_range(-1.0..1.0);
            let s = st(cz, rng.gen_range(0.0..=1.0 + cz), rng.gen_range(0.0..=1.0 - cz));
            let m = MeasurementSetting { theta: rng.gen_range(0.0..TAU), phi: rng.gen_range(0.0..TAU) };
            for i in [1, 2] {
                let c = conditional_state(&s, &m, i).unwrap();
                assert_abs_diff_eq!(c.probability, 0.5, epsilon = 1e-12);
                let d = displayed(&s, &m, i);
                assert!((c.matrix - d).norm() < 1e-12);
                assert_abs_diff_eq!(c.matrix.trace().re, 1.0, epsilon = 1e-12);
                let herm = Matrix2::from_fn(|a, b| c.matrix[(a, b)]);
                let eig = SymmetricEigen::new(herm).eigenvalues;
                assert!(eig.iter().all(|&w| w >= -1e-12));
            }
        }
        let s = st(0.0, 0.0, 0.0);
        assert!(conditional_state(&s, &MeasurementSetting { theta: 0.0, phi: 0.0 }, 3).is_err());
    }

    #[test]
    fn bruteforce_limits() {
        assert_abs_diff_eq!(discord_bruteforce(&st(1.0, 2.0, 0.0)), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(discord_bruteforce(&st(0.0, 0.0, 0.0)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn bruteforce_matches_closed_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let cz: f64 = rng.gen_range(-1.0..1.0);
            let s = st(cz, rng.gen_range(0.0..=1.0 + cz), rng.gen_range(0.0..=1.0 - cz));
            let a = discord_bruteforce(&s);
            let b = quantum_discord(&s);
            assert!((a - b).abs() < 1e-6, "{s:?}: {a} vs {b}");
        }
        // Frozen plateau and starting values of the mixed-state scenario.
        assert_abs_diff_eq!(discord_bruteforce(&st(0.2, 1.2, 0.8)), 0.029049405545331, epsilon = 1e-7);
        assert_abs_diff_eq!(discord_bruteforce(&st(0.2, 0.0, 0.8)), 0.310340304776024, epsilon = 1e-7);
    }

    #[test]
    fn measuring_a_or_b_gives_same_classical_correlation() {
        // ρ_A = ρ_B for every X state here; compare entropies of both marginals.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let cz: f64 = rng.gen_range(-1.0..1.0);
            let rho = density_matrix(&st(cz, rng.gen_range(0.0..=1.0 + cz), rng.gen_range(0.0..=1.0 - cz)));
            assert_abs_diff_eq!(entropy2(&reduced_a(&rho)), entropy2(&reduced_b(&rho)), epsilon = 1e-14);
        }
    }
}
