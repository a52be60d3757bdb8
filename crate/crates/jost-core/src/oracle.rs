//! Independent reference computations: the classical scalar self-adjoint
//! problem `−f″ + qf = Ef` for real `q`, and a dense direct solve of the
//! integral equations for `F₋₁` and `F₊ᵢ`.

use crate::algebra::{boundary_ell, BoundaryParam, CMat2, CVec2, C64, E_MINUS, E_PLUS, I, ONE, P_MINUS, P_PLUS, ZERO};
use crate::error::{JostError, Result};
use crate::grid::Grid;
use crate::jost::JostIndex;
use crate::ode::{integrate, OdeTolerance};
use crate::potential::{MatrixPotential, Potential, Segment};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

fn require_real(p: &Potential) -> Result<()> {
    if p.is_real() {
        Ok(())
    } else {
        Err(JostError::Domain("the classical oracle needs a real potential".into()))
    }
}

/// Integrates `f″ = (q − E)f` across the segments from `x0` to `x1`; the
/// optional third state component accumulates `∫|f|²` in the direction of travel.
fn scalar_flow(p: &Potential, energy: C64, x0: f64, x1: f64, y: &mut [C64], tol: &OdeTolerance) -> Result<()> {
    let mut cuts: Vec<f64> = p
        .segments()
        .iter()
        .flat_map(|s| [s.a, s.b])
        .filter(|&c| c > x0.min(x1) && c < x0.max(x1))
        .collect();
    cuts.push(x0);
    cuts.push(x1);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    if x1 < x0 {
        cuts.reverse();
    }
    let track = y.len() > 2;
    let mut hint = 0.0;
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let seg: Option<Segment> = p.segment_at(mid).copied();
        let rhs = |x: f64, s: &[C64], d: &mut [C64]| {
            let q = seg.as_ref().map_or(ZERO, |sg| sg.value(x));
            d[0] = s[1];
            d[1] = (q - energy) * s[0];
            if track {
                d[2] = C64::new(s[0].norm_sqr(), 0.0);
            }
        };
        hint = integrate(rhs, w[0], w[1], y, tol, hint)?;
    }
    Ok(())
}

/// `(f(0), f′(0))` of the classical Jost solution `f ~ e^{ikx}`, by backward
/// integration from the end of the support.
pub fn classical_jost(p: &Potential, k: f64) -> Result<(C64, C64)> {
    require_real(p)?;
    if !(k > 0.0) {
        return Err(JostError::Domain(format!("classical Jost solution needs k > 0, got {k}")));
    }
    let xq = p.support();
    let e = (I * k * xq).exp();
    let mut y = [e, I * k * e];
    scalar_flow(p, C64::new(k * k, 0.0), xq, 0.0, &mut y, &OdeTolerance::default())?;
    Ok((y[0], y[1]))
}

/// Closed form of `(f(0), f′(0))` for the well `q = −V₀` on `[0, a]`.
pub fn square_well_jost(v0: f64, a: f64, k: f64) -> (C64, C64) {
    let kk = C64::new(k * k + v0, 0.0).sqrt();
    let eka = (I * k * a).exp();
    let amp_a = eka * (1.0 + k / kk) * 0.5 * (-I * kk * a).exp();
    let amp_b = eka * (1.0 - k / kk) * 0.5 * (I * kk * a).exp();
    (amp_a + amp_b, I * kk * (amp_a - amp_b))
}

/// `dσ/dλ = k/(π|ℓ_α⊥(f)|²)` at `λ = k²`.
pub fn classical_density(p: &Potential, alpha: BoundaryParam, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(JostError::Domain(format!("λ must be positive, got {lambda}")));
    }
    let k = lambda.sqrt();
    let (f0, fp0) = classical_jost(p, k)?;
    let (_, lp) = boundary_ell(alpha, f0, fp0);
    Ok(k / (PI * lp.norm_sqr()))
}

fn shooting_start(alpha: BoundaryParam) -> Result<(C64, C64)> {
    match alpha {
        BoundaryParam::Infinite => Ok((ZERO, ONE)),
        BoundaryParam::Finite(a) if a.im == 0.0 => Ok((ONE, -a)),
        BoundaryParam::Finite(_) => Err(JostError::Domain("the classical oracle needs a real α".into())),
    }
}

/// Forward shooting at `E = −κ²`: returns `(f(X_q), f′(X_q), ∫₀^{X_q}|f|²)`.
fn shoot(p: &Potential, alpha: BoundaryParam, kappa: f64) -> Result<(f64, f64, f64)> {
    let (f0, fp0) = shooting_start(alpha)?;
    let mut y = [f0, fp0, ZERO];
    scalar_flow(p, C64::new(-kappa * kappa, 0.0), 0.0, p.support(), &mut y, &OdeTolerance::default())?;
    Ok((y[0].re, y[1].re, y[2].re))
}

/// Decay mismatch `f′(X_q) + κf(X_q)` of the shooting solution.
fn mismatch(p: &Potential, alpha: BoundaryParam, kappa: f64) -> Result<f64> {
    let (f, fp, _) = shoot(p, alpha, kappa)?;
    Ok(fp + kappa * f)
}

/// Bound states `E = −κ²` with `κ ∈ [κ_lo, κ_hi]`, by sign changes of the
/// decay mismatch on `n` points and bisection.
pub fn bound_states(p: &Potential, alpha: BoundaryParam, kappa_lo: f64, kappa_hi: f64, n: usize) -> Result<Vec<f64>> {
    require_real(p)?;
    if !(0.0 < kappa_lo && kappa_lo < kappa_hi) {
        return Err(JostError::Domain(format!("need 0 < κ_lo < κ_hi, got [{kappa_lo}, {kappa_hi}]")));
    }
    let n = n.max(2);
    let ks: Vec<f64> = (0..n).map(|i| kappa_lo + (kappa_hi - kappa_lo) * i as f64 / (n - 1) as f64).collect();
    let ds: Vec<f64> = ks.iter().map(|&k| mismatch(p, alpha, k)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for i in 0..n - 1 {
        if ds[i] == 0.0 {
            out.push(ks[i]);
            continue;
        }
        if ds[i] * ds[i + 1] < 0.0 {
            let (mut a, mut b, mut fa) = (ks[i], ks[i + 1], ds[i]);
            while b - a > 1e-15 * b {
                let m = 0.5 * (a + b);
                let fm = mismatch(p, alpha, m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fa * fm < 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            out.push(0.5 * (a + b));
        }
    }
    Ok(out)
}

/// `σ({−κ²}) = |ℓ_α(f₋₁)|²/‖f₋₁‖²` at a bound state.
pub fn classical_point_mass(p: &Potential, alpha: BoundaryParam, kappa: f64) -> Result<f64> {
    require_real(p)?;
    let (f, fp, inner) = shoot(p, alpha, kappa)?;
    let scale = fp.abs().max(kappa * f.abs()).max(f64::MIN_POSITIVE);
    if (fp + kappa * f).abs() > 1e-6 * scale {
        return Err(JostError::Domain(format!("κ = {kappa} is not a bound state")));
    }
    let (f0, fp0) = shooting_start(alpha)?;
    let (l, _) = boundary_ell(alpha, f0, fp0);
    let norm = inner + f * f / (2.0 * kappa);
    Ok(l.norm_sqr() / norm)
}

/// Direct solution of an integral equation on a grid.
#[derive(Clone, Debug)]
pub struct BruteForceJost {
    pub index: JostIndex,
    pub k: C64,
    pub r: f64,
    pub x: Vec<f64>,
    pub f: Vec<CVec2>,
}

/// `F₋₁` on `[0, X_q]` or `F₊ᵢ` on `[r, X_q]`, discretised by the
/// trapezoid rule on a grid with about `n` intervals and solved by dense LU;
/// the results on `n` and `2n` intervals are Richardson-combined.
pub fn brute_force_jost(p: &Potential, k: C64, j: JostIndex, r: f64, n: usize) -> Result<BruteForceJost> {
    let a = k.arg();
    if k == ZERO || a < -1e-14 || a > std::f64::consts::FRAC_PI_4 + 1e-14 {
        return Err(JostError::Domain(format!("k = {k} is outside the sector 0 ≤ arg k ≤ π/4")));
    }
    let r = match j {
        JostIndex::MinusOne => 0.0,
        JostIndex::PlusI => r,
        _ => return Err(JostError::Domain("the direct solver handles F₋₁ and F₊ᵢ".into())),
    };
    let xq = p.support();
    if xq <= r {
        let x = vec![r];
        let f = vec![free(j, k, r)];
        return Ok(BruteForceJost { index: j, k, r, x, f });
    }
    let coarse = Grid::build(r, xq, &p.breakpoints(), (xq - r) / n.max(2) as f64, 2);
    let fine = coarse.refine();
    let mp = MatrixPotential::new(p);
    let fc = trapezoid_solve(&mp, k, j, &coarse)?;
    let ff = trapezoid_solve(&mp, k, j, &fine)?;
    let f = fc.iter().enumerate().map(|(i, v)| (ff[2 * i] * 4.0 - *v) * (1.0 / 3.0)).collect();
    Ok(BruteForceJost { index: j, k, r, x: coarse.x, f })
}

fn free(j: JostIndex, k: C64, x: f64) -> CVec2 {
    match j {
        JostIndex::MinusOne => E_MINUS * (-k * x).exp(),
        _ => E_PLUS * (I * k * x).exp(),
    }
}

/// Green's kernel of the integral equation at `(x, y)`, `y ≥ x` unless stated.
fn green(j: JostIndex, k: C64, x: f64, y: f64) -> CMat2 {
    let d = x - y;
    match j {
        JostIndex::MinusOne => {
            if y < x {
                return CMat2::zero();
            }
            P_MINUS * ((k * d).sinh() / k) - P_PLUS * ((k * d).sin() / k)
        }
        _ => {
            let vol = if y >= x { P_PLUS * (-(k * d).sin() / k) } else { CMat2::zero() };
            vol + P_MINUS * ((-k * d.abs()).exp() / (2.0 * k))
        }
    }
}

fn trapezoid_solve(mp: &MatrixPotential, k: C64, j: JostIndex, grid: &Grid) -> Result<Vec<CVec2>> {
    let n = grid.len();
    let x = &grid.x;
    // one-sided Q at both ends of every interval
    let q_ends: Vec<(CMat2, CMat2)> = (0..n - 1)
        .map(|m| match mp.segment_for(x[m], x[m + 1]) {
            Some(s) => (mp.eval_on(s, x[m]), mp.eval_on(s, x[m + 1])),
            None => (CMat2::zero(), CMat2::zero()),
        })
        .collect();
    let dim = 2 * n;
    let mut a = vec![ZERO; dim * dim];
    let mut rhs = vec![ZERO; dim];
    for i in 0..dim {
        a[i * dim + i] = ONE;
    }
    for i in 0..n {
        let e = free(j, k, x[i]);
        rhs[2 * i] = e[0];
        rhs[2 * i + 1] = e[1];
        let first = if j == JostIndex::MinusOne { i } else { 0 };
        for m in first..n - 1 {
            let w = 0.5 * (x[m + 1] - x[m]);
            for (node, q) in [(m, q_ends[m].0), (m + 1, q_ends[m].1)] {
                let blk = green(j, k, x[i], x[node]) * q * w;
                for r in 0..2 {
                    for c in 0..2 {
                        a[(2 * i + r) * dim + 2 * node + c] -= blk.0[r][c];
                    }
                }
            }
        }
    }
    let sol = lu_solve(&mut a, &mut rhs, dim)?;
    Ok((0..n).map(|i| CVec2::new(sol[2 * i], sol[2 * i + 1])).collect())
}

/// Solves the row-major `dim × dim` system with partial-pivot LU.
fn lu_solve(a: &mut [C64], b: &mut [C64], dim: usize) -> Result<Vec<C64>> {
    let m = DMatrix::from_row_slice(dim, dim, a);
    let rhs = DVector::from_column_slice(b);
    m.lu()
        .solve(&rhs)
        .map(|x| x.iter().copied().collect())
        .ok_or_else(|| JostError::Singular("dense system of the integral equation".into()))
}
