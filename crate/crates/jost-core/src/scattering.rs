//! Regular solutions `Φ₁, Φ₂`, their expansion coefficients `γ` in the basis
//! of Jost solutions, and the spectral pair expressed through `γ`.

use crate::algebra::{BoundaryParam, CMat2, CVec2, C64, I, IDENTITY, ZERO};
use crate::error::{JostError, Result};
use crate::flow::propagate;
use crate::grid::Grid;
use crate::jost::{jost_at, FreeTail, JostIndex, JostSet, JostSolution, NeumannConfig};
use crate::potential::{MatrixPotential, Potential};
use crate::spectral::{principal_k, SampleKind, SpectralSample};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::PI;

/// `Φ` with `L_α(Φ) = −I`, `L_α⊥(Φ) = 0`, sampled on `[0, X_q]` and exactly
/// free beyond.
#[derive(Clone, Debug)]
pub struct RegularSolutions {
    pub lambda: C64,
    pub k: C64,
    pub x: Vec<f64>,
    /// Columns `Φ₁`, `Φ₂` and their derivatives.
    pub phi: [Vec<CVec2>; 2],
    pub phip: [Vec<CVec2>; 2],
    pub tails: [FreeTail; 2],
}

impl RegularSolutions {
    /// `(Φⱼ(x), Φⱼ′(x))` at a node or in the free region.
    pub fn eval(&self, j: usize, x: f64) -> Option<(CVec2, CVec2)> {
        let xq = self.tails[j].x0;
        if x >= xq {
            return Some(self.tails[j].eval(x));
        }
        let i = self.x.partition_point(|&v| v < x);
        (i < self.x.len() && (self.x[i] - x).abs() <= 1e-12 * x.abs().max(1.0)).then(|| (self.phi[j][i], self.phip[j][i]))
    }

    pub fn at_zero(&self) -> (CMat2, CMat2) {
        (
            CMat2::from_cols(self.phi[0][0], self.phi[1][0]),
            CMat2::from_cols(self.phip[0][0], self.phip[1][0]),
        )
    }
}

pub fn regular_solutions(p: &Potential, alpha: BoundaryParam, lambda: C64, cfg: &NeumannConfig) -> Result<RegularSolutions> {
    if lambda == ZERO {
        return Err(JostError::Domain("λ = 0 is excluded".into()));
    }
    let k = principal_k(lambda);
    let mp = MatrixPotential::new(p);
    let (f0, fp0) = alpha.cauchy_from_boundary(-IDENTITY, CMat2::zero());
    let xq = p.support();
    let grid = Grid::build(0.0, xq, &p.breakpoints(), cfg.step(k), 2);
    let flow = propagate(&mp, lambda, &grid.x, &[f0.col(0), f0.col(1)], &[fp0.col(0), fp0.col(1)], &cfg.ode)?;
    let mut phi = flow.f.into_iter();
    let mut phip = flow.fp.into_iter();
    let phi = [phi.next().unwrap(), phi.next().unwrap()];
    let phip = [phip.next().unwrap(), phip.next().unwrap()];
    let n = grid.x.len() - 1;
    let tails = [
        FreeTail::from_cauchy(xq, phi[0][n], phip[0][n], k),
        FreeTail::from_cauchy(xq, phi[1][n], phip[1][n], k),
    ];
    Ok(RegularSolutions { lambda, k, x: grid.x, phi, phip, tails })
}

/// `Φⱼ = Σ γʲ_i F_i`, with slots ordered `−1, +1, +i, −i`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GammaCoefficients {
    pub k: f64,
    pub g1: [C64; 4],
    pub g2: [C64; 4],
    pub eigenvalue_case: bool,
    /// Largest collocation residual relative to `‖Φⱼ‖` at the tail points.
    pub residual: f64,
    /// Condition number of the column-scaled collocation matrix.
    pub condition: f64,
}

impl GammaCoefficients {
    pub fn get(&self, j: usize, idx: JostIndex) -> C64 {
        if j == 1 {
            self.g1[idx.slot()]
        } else {
            self.g2[idx.slot()]
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.g1.iter().chain(&self.g2).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `γ²₊₁γ¹₊ᵢ − γ¹₊₁γ²₊ᵢ`, independent of the representatives.
    pub fn plus_combination(&self) -> C64 {
        let s = JostIndex::PlusOne.slot();
        let t = JostIndex::PlusI.slot();
        self.g2[s] * self.g1[t] - self.g1[s] * self.g2[t]
    }

    /// `γ¹₋₁γ²₋ᵢ − γ¹₋ᵢγ²₋₁`.
    pub fn minus_combination(&self) -> C64 {
        let s = JostIndex::MinusOne.slot();
        let t = JostIndex::MinusI.slot();
        self.g1[s] * self.g2[t] - self.g1[t] * self.g2[s]
    }
}

/// Relative threshold on `|γ₊₁|` for the eigenvalue case.
pub const EIGEN_GAMMA_TOL: f64 = 1e-7;

/// The basis used for the expansion: `F₋₁, F₊₁, F₊ᵢ` and `F₋ᵢ − β₁F₊ᵢ`.
pub fn expansion_basis(set: &JostSet) -> [JostSolution; 4] {
    [
        set.get(JostIndex::MinusOne).clone(),
        set.get(JostIndex::PlusOne).clone(),
        set.get(JostIndex::PlusI).clone(),
        set.corrected_minus_i(),
    ]
}

pub fn gamma_extract(p: &Potential, alpha: BoundaryParam, k: f64, cfg: &NeumannConfig) -> Result<GammaCoefficients> {
    if !(k > 0.0) {
        return Err(JostError::Domain(format!("γ extraction needs k > 0, got {k}")));
    }
    let set = jost_at(p, C64::new(k, 0.0), cfg)?;
    let reg = regular_solutions(p, alpha, C64::new(k * k, 0.0), cfg)?;
    gamma_from(&set, &reg)
}

/// Collocation at two points of the free region.
pub fn gamma_from(set: &JostSet, reg: &RegularSolutions) -> Result<GammaCoefficients> {
    let k = set.k;
    if k.im != 0.0 || set.beta1.is_none() {
        return Err(JostError::Domain("γ extraction needs the Jost set at real k > 0".into()));
    }
    let basis = expansion_basis(set);
    let xq = reg.tails[0].x0;
    let attempt = |x1: f64, x2: f64| -> Result<(Vec<[C64; 4]>, f64, f64)> {
        let xm = 0.5 * (x1 + x2);
        let scale: Vec<f64> = JostIndex::ALL.iter().map(|j| (j.sigma(k) * xm).exp().norm()).collect();
        let mut a = DMatrix::<C64>::zeros(8, 4);
        for (c, b) in basis.iter().enumerate() {
            for (blk, x) in [x1, x2].into_iter().enumerate() {
                let (f, fp) = b.tail.eval(x);
                for comp in 0..2 {
                    a[(4 * blk + comp, c)] = f[comp] / scale[c];
                    a[(4 * blk + 2 + comp, c)] = fp[comp] / scale[c];
                }
            }
        }
        let svd = a.clone().svd(true, true);
        let sv = &svd.singular_values;
        let cond = sv.max() / sv.min();
        let mut out = Vec::new();
        let mut resid = 0.0f64;
        for j in 0..2 {
            let mut rhs = DVector::<C64>::zeros(8);
            let mut norm = 0.0f64;
            for (blk, x) in [x1, x2].into_iter().enumerate() {
                let (f, fp) = reg.tails[j].eval(x);
                for comp in 0..2 {
                    rhs[4 * blk + comp] = f[comp];
                    rhs[4 * blk + 2 + comp] = fp[comp];
                }
                norm = norm.max(f.norm());
            }
            let sol = svd.solve(&rhs, 0.0).map_err(|e| JostError::Singular(e.to_string()))?;
            let r = (&a * &sol - &rhs).norm();
            resid = resid.max(r / norm.max(f64::MIN_POSITIVE));
            let mut g = [ZERO; 4];
            for c in 0..4 {
                g[c] = sol[c] / scale[c];
            }
            out.push(g);
        }
        Ok((out, cond, resid))
    };
    let (mut g, mut cond, mut resid) = attempt(xq + 2.0, xq + 3.0)?;
    if cond > 1e10 {
        (g, cond, resid) = attempt(xq + 2.0, xq + 2.0 + 2.0 * PI / k.re.max(1e-3) / 4.0 + 1.0)?;
        if cond > 1e10 {
            return Err(JostError::IllConditioned(cond));
        }
    }
    let (g1, g2) = (g[0], g[1]);
    let max = g1.iter().chain(&g2).map(|z| z.norm()).fold(0.0, f64::max);
    let s = JostIndex::PlusOne.slot();
    let eigenvalue_case = g1[s].norm() < EIGEN_GAMMA_TOL * max && g2[s].norm() < EIGEN_GAMMA_TOL * max;
    Ok(GammaCoefficients { k: k.re, g1, g2, eigenvalue_case, residual: resid, condition: cond })
}

/// The spectral pair from the expansion coefficients.
pub fn pair_from_gamma(g: &GammaCoefficients, norm_e_sq: f64) -> Result<SpectralSample> {
    let k = g.k;
    let lambda = k * k;
    if !g.eigenvalue_case {
        let g1p = g.g1[JostIndex::PlusOne.slot()];
        let d = g.plus_combination();
        if g1p == ZERO || d == ZERO {
            return Err(JostError::Inconsistent("vanishing γ combination off the point spectrum".into()));
        }
        let value = g1p.norm_sqr() / (8.0 * PI * k * d.norm_sqr());
        Ok(SpectralSample { lambda, k, kind: SampleKind::Density, value, psi: g1p.conj() / g1p })
    } else {
        let t = JostIndex::MinusI.slot();
        let d = g.minus_combination();
        let g1pi = g.g1[JostIndex::PlusI.slot()];
        if g.g1[t] == ZERO || d == ZERO {
            return Err(JostError::Inconsistent("vanishing γ combination at an eigenvalue".into()));
        }
        let value = g1pi.norm_sqr() / (2.0 * norm_e_sq * d.norm_sqr());
        Ok(SpectralSample { lambda, k, kind: SampleKind::PointMass, value, psi: -g.g2[t] / g.g1[t] })
    }
}

/// Violations of the displayed relations between the coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub eigenvalue_case: bool,
    pub checks: Vec<(String, f64)>,
    pub max_violation: f64,
}

pub fn gamma_invariants_check(g: &GammaCoefficients) -> GammaReport {
    use JostIndex::*;
    let scale = g.max_abs().max(f64::MIN_POSITIVE);
    let mut checks = Vec::new();
    let g1 = |j: JostIndex| g.g1[j.slot()];
    let g2 = |j: JostIndex| g.g2[j.slot()];
    if !g.eigenvalue_case {
        checks.push(("g2(+1) + conj g1(+1)".to_string(), (g2(PlusOne) + g1(PlusOne).conj()).norm() / scale));
    } else {
        checks.push(("|g1(+1)| + |g2(+1)|".to_string(), (g1(PlusOne).norm() + g2(PlusOne).norm()) / scale));
        checks.push(("g2(+i) - conj g1(-i)".to_string(), (g2(PlusI) - g1(MinusI).conj()).norm() / scale));
        checks.push(("g2(-i) - conj g1(+i)".to_string(), (g2(MinusI) - g1(PlusI).conj()).norm() / scale));
        let m = [g1(PlusI).norm(), g1(MinusI).norm(), g2(PlusI).norm(), g2(MinusI).norm()];
        let spread = m.iter().fold(0.0f64, |a, &b| a.max(b)) - m.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        checks.push(("spread of |g(+-i)|".to_string(), spread / scale));
        if g1(PlusI) != ZERO && g1(MinusI) != ZERO {
            checks.push(("g2(+i)/g1(+i) - g2(-i)/g1(-i)".to_string(), (g2(PlusI) / g1(PlusI) - g2(MinusI) / g1(MinusI)).norm()));
        }
    }
    let max_violation = checks.iter().map(|c| c.1).fold(0.0, f64::max);
    GammaReport { eigenvalue_case: g.eigenvalue_case, checks, max_violation }
}

/// `|4kγ¹₊₁ + conj ℓ⊥(𝐞)|`, `|4kγ²₊₁ − ℓ⊥(𝐞)|` and the determinant identity
/// `conj(det) = 16ik²(γ²₊₁γ¹₊ᵢ − γ¹₊₁γ²₊ᵢ)`, all relative.
pub fn gamma_boundary_relations(g: &GammaCoefficients, ell_perp: C64, det: C64) -> [f64; 3] {
    let k = g.k;
    let s = JostIndex::PlusOne.slot();
    let scale = ell_perp.norm().max(f64::MIN_POSITIVE);
    [
        (4.0 * k * g.g1[s] + ell_perp.conj()).norm() / scale,
        (4.0 * k * g.g2[s] - ell_perp).norm() / scale,
        (det.conj() - 16.0 * I * k * k * g.plus_combination()).norm() / det.norm().max(f64::MIN_POSITIVE),
    ]
}
