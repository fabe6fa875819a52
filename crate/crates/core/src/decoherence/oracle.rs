//! Exact evolution of the even-parity mode pairs, used to cross-check the
//! closed-form mode factors.
//!
//! Each pair (k, −k) lives in the two-dimensional space spanned by the pair
//! vacuum and the doubly occupied pair. The block Hamiltonian, its ground
//! state and the propagators are all obtained numerically here.

use nalgebra::{Matrix2, SymmetricEigen, Vector2};
use num_complex::Complex64;

use super::FactorRequest;
use crate::chain_model::{mode_momenta, projected_fields};
use crate::error::{Error, Result};

fn mode_block(k: f64, field: f64, gamma: f64) -> Matrix2<f64> {
    let diag = 2.0 * (field - k.cos());
    let off = 2.0 * gamma * k.sin();
    Matrix2::new(-diag, off, off, diag)
}

fn ground_state(h: Matrix2<f64>) -> Vector2<f64> {
    let eig = SymmetricEigen::new(h);
    let i = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
    eig.eigenvectors.column(i).into_owned()
}

/// exp(−iHt) ψ via the eigenbasis of H.
fn evolve(h: Matrix2<f64>, psi: &Vector2<f64>, t: f64) -> [Complex64; 2] {
    let eig = SymmetricEigen::new(h);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for j in 0..2 {
        let v = eig.eigenvectors.column(j);
        let amp = v.dot(psi);
        let phase = Complex64::from_polar(1.0, -eig.eigenvalues[j] * t);
        for (o, &vi) in out.iter_mut().zip(v.iter()) {
            *o += phase * amp * vi;
        }
    }
    out
}

/// |⟨G| U_ν†(t) U_μ(t) |G⟩| from explicit 2×2 evolution of every mode pair.
///
/// Only defined for D = 0: the DM term does not act inside the pair space.
pub fn pair_oracle_factor(req: &FactorRequest) -> Result<f64> {
    let p = &req.params;
    if p.dm != 0.0 {
        return Err(Error::OracleNeedsZeroDm(p.dm));
    }
    if req.time < 0.0 {
        return Err(Error::NegativeTime(req.time));
    }
    let fields = projected_fields(p);
    let field_mu = fields.get(req.pair.mu())?;
    let field_nu = fields.get(req.pair.nu())?;

    let mut product = 1.0;
    for k in mode_momenta(p)? {
        let g = ground_state(mode_block(k, p.lambda, p.gamma));
        let a = evolve(mode_block(k, field_mu, p.gamma), &g, req.time);
        let b = evolve(mode_block(k, field_nu, p.gamma), &g, req.time);
        let overlap: Complex64 = b.iter().zip(&a).map(|(x, y)| x.conj() * y).sum();
        product *= overlap.norm();
    }
    Ok(product.min(1.0))
}
