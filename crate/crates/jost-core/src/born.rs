//! First-order (Born) expansions of the spectral pair for small potentials,
//! real `α` only.

use crate::algebra::{BoundaryParam, C64, I};
use crate::error::{JostError, Result};
use crate::potential::Potential;
use crate::quad::integrate_pieces;
use serde::Serialize;
use std::f64::consts::PI;

const QUAD_TOL: f64 = 1e-12;

/// `∫₀^{X_q} w(y)·q(y) dy` split at the breakpoints of `q`.
pub fn weighted_integral(p: &Potential, w: impl Fn(f64) -> f64) -> C64 {
    let mut cuts = vec![0.0];
    cuts.extend(p.breakpoints());
    cuts.push(p.support());
    if p.support() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    integrate_pieces(|y| p.eval(y) * w(y), &cuts, QUAD_TOL)
}

fn real_alpha(alpha: BoundaryParam) -> Result<Option<f64>> {
    match alpha {
        BoundaryParam::Infinite => Ok(None),
        BoundaryParam::Finite(a) if a.im == 0.0 => Ok(Some(a.re)),
        BoundaryParam::Finite(a) => Err(JostError::Domain(format!("the Born formulas are for real α, got {a}"))),
    }
}

fn check_k(lambda: f64) -> Result<f64> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(lambda.sqrt())
    } else {
        Err(JostError::Domain(format!("λ must be positive, got {lambda}")))
    }
}

/// `(1/π)·bracket` shared by the `ν` and `σ` densities, evaluated on `u`.
fn density_bracket(p: &Potential, alpha: Option<f64>, k: f64) -> f64 {
    let s = weighted_integral(p, |y| (2.0 * k * y).sin()).re;
    match alpha {
        None => (k - s) / PI,
        Some(a) => {
            let c = weighted_integral(p, |y| (2.0 * k * y).cos()).re;
            let d = a * a + k * k;
            (1.0 + a * a) / d * (k - (a * a - k * k) / d * s + 2.0 * k * a / d * c) / PI
        }
    }
}

/// First-order `dν/dλ`; depends on `Re q` only.
pub fn born_density(p: &Potential, alpha: BoundaryParam, lambda: f64) -> Result<f64> {
    let k = check_k(lambda)?;
    Ok(0.5 * density_bracket(p, real_alpha(alpha)?, k))
}

/// First-order `ψ`; depends on `Im q` only.
pub fn born_psi(p: &Potential, alpha: BoundaryParam, lambda: f64) -> Result<C64> {
    let k = check_k(lambda)?;
    let v = |w: &dyn Fn(f64) -> f64| weighted_integral(p, w).im;
    match real_alpha(alpha)? {
        None => Ok(1.0 + 2.0 * I / k * v(&|y| (-k * y).exp() * (k * y).sin())),
        Some(a) => {
            if a > 0.0 && (k - a).abs() <= 1e-12 * a {
                return Err(JostError::Domain(format!("k = α = {a} is excluded from the Born formula for ψ")));
            }
            let w = move |y: f64| (-k * y).exp() * (a * (k * y).sin() - k * (k * y).cos());
            Ok(1.0 + 2.0 * I / (k * (a - k)) * v(&w))
        }
    }
}

/// First-order classical `dσ/dλ` for real `q`.
pub fn born_sigma_density(p: &Potential, alpha: BoundaryParam, lambda: f64) -> Result<f64> {
    if !p.is_real() {
        return Err(JostError::Domain("the classical Born density needs a real potential".into()));
    }
    let k = check_k(lambda)?;
    Ok(density_bracket(p, real_alpha(alpha)?, k))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BornSample {
    pub lambda: f64,
    pub dnu_dlambda: f64,
    pub psi: C64,
    /// Present for real potentials.
    pub dsigma_dlambda: Option<f64>,
}

pub fn born_sample(p: &Potential, alpha: BoundaryParam, lambda: f64) -> Result<BornSample> {
    Ok(BornSample {
        lambda,
        dnu_dlambda: born_density(p, alpha, lambda)?,
        psi: born_psi(p, alpha, lambda)?,
        dsigma_dlambda: if p.is_real() { Some(born_sigma_density(p, alpha, lambda)?) } else { None },
    })
}
