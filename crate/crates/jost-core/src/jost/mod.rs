//! Vector Jost solutions `F_j(x, k)`, `j ∈ {−1, +1, +i, −i}`, and the scalar
//! Jost solution `𝐞`.
//!
//! For `k` in the closed sector `0 ≤ arg k ≤ π/4` each `F_j` is obtained from
//! `w_j = e^{−σ_j x} F_j` solving `w_j = e + 𝒦_j w_j` on `[r, X_q]`; the result
//! is continued to `[0, r]` by integrating the differential equation
//! backwards and is exactly free beyond `X_q`. Other `k` are reached through
//! the conjugation, rotation and negation symmetries (see [`sector_map`]).

pub mod kernel;
pub mod neumann;
mod symmetry;

pub use kernel::{kernel_K, kernel_terms, KernelTerm, Proj, Side};
pub use neumann::{solve_neumann, NeumannProfile};
pub use symmetry::{sector_map, SectorMap, SymmetryStep};

use crate::algebra::{boundary_ell, BoundaryParam, CMat2, CVec2, C64, EPSILON, E_MINUS, E_PLUS, I, ONE, ZERO};
use crate::error::{JostError, Result};
use crate::flow::propagate;
use crate::grid::Grid;
use crate::ode::OdeTolerance;
use crate::potential::{MatrixPotential, Potential};
use std::f64::consts::FRAC_PI_4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JostIndex {
    MinusOne,
    PlusOne,
    PlusI,
    MinusI,
}

impl JostIndex {
    pub const ALL: [JostIndex; 4] = [JostIndex::MinusOne, JostIndex::PlusOne, JostIndex::PlusI, JostIndex::MinusI];

    /// Exponent of the leading behaviour: `F_j ~ e^{σ_j x}`.
    pub fn sigma(self, k: C64) -> C64 {
        match self {
            JostIndex::MinusOne => -k,
            JostIndex::PlusOne => k,
            JostIndex::PlusI => I * k,
            JostIndex::MinusI => -I * k,
        }
    }

    pub fn direction(self) -> CVec2 {
        match self {
            JostIndex::MinusOne | JostIndex::PlusOne => E_MINUS,
            JostIndex::PlusI | JostIndex::MinusI => E_PLUS,
        }
    }

    pub fn slot(self) -> usize {
        match self {
            JostIndex::MinusOne => 0,
            JostIndex::PlusOne => 1,
            JostIndex::PlusI => 2,
            JostIndex::MinusI => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            JostIndex::MinusOne => "-1",
            JostIndex::PlusOne => "+1",
            JostIndex::PlusI => "+i",
            JostIndex::MinusI => "-i",
        }
    }
}

/// Parameters of the Neumann construction and of the grids built around it.
#[derive(Clone, Copy, Debug)]
pub struct NeumannConfig {
    /// Lower bound on `|k|`; defaults to `0.9·|k|`.
    pub delta: Option<f64>,
    /// Split point; chosen by [`select_r`] when absent.
    pub r: Option<f64>,
    pub contraction_margin: f64,
    pub max_terms: usize,
    pub series_tol: f64,
    /// Grid step `h = min(h_max, h_scale/|k|)`.
    pub h_max: f64,
    pub h_scale: f64,
    /// Alignment of the automatically chosen `r`.
    pub r_align: f64,
    pub ode: OdeTolerance,
}

impl Default for NeumannConfig {
    fn default() -> Self {
        NeumannConfig {
            delta: None,
            r: None,
            contraction_margin: 0.45,
            max_terms: 400,
            series_tol: 1e-12,
            h_max: 0.01,
            h_scale: 0.1,
            r_align: 1e-3,
            ode: OdeTolerance::default(),
        }
    }
}

impl NeumannConfig {
    pub fn step(&self, k: C64) -> f64 {
        self.h_max.min(self.h_scale / k.norm())
    }

    pub fn with_h_max(mut self, h: f64) -> Self {
        self.h_max = h;
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }
}

/// Smallest `r` (aligned to 10⁻³) with `(2/δ)·∫_r^∞|q| ≤ 0.45`.
pub fn select_r(p: &Potential, delta: f64) -> f64 {
    select_r_with(p, delta, 0.45, 1e-3)
}

pub fn select_r_with(p: &Potential, delta: f64, margin: f64, align: f64) -> f64 {
    let holds = |r: f64| 2.0 / delta * p.l1_tail(r) <= margin;
    if holds(0.0) {
        return 0.0;
    }
    let xq = p.support();
    let (mut lo, mut hi) = (0.0, xq);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * xq.max(1.0) {
            break;
        }
    }
    let mut r = ((hi / align) - 1e-9).ceil() * align;
    while r < xq && !holds(r) {
        r += align;
    }
    r.min(xq)
}

/// `Σ aₙ e^{cₙ(x−x₀)}` with constant vectors `aₙ`: the exact form of a
/// solution where the potential vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeTail {
    pub x0: f64,
    pub terms: Vec<(CVec2, C64)>,
}

impl FreeTail {
    pub fn eval(&self, x: f64) -> (CVec2, CVec2) {
        let mut f = CVec2::zero();
        let mut fp = CVec2::zero();
        for (a, c) in &self.terms {
            let e = (*c * (x - self.x0)).exp();
            f += *a * e;
            fp += *a * (*c * e);
        }
        (f, fp)
    }

    /// Decomposes the Cauchy data `(F, F′)` at `x0` of a free solution into
    /// the four modes `e^{±kx}e₋`, `e^{±ikx}e₊`.
    pub fn from_cauchy(x0: f64, f: CVec2, fp: CVec2, k: C64) -> FreeTail {
        let sp = (f[0] + f[1]) * 0.5;
        let sm = (f[0] - f[1]) * 0.5;
        let dp = (fp[0] + fp[1]) * 0.5;
        let dm = (fp[0] - fp[1]) * 0.5;
        let ik = I * k;
        FreeTail {
            x0,
            terms: vec![
                (E_MINUS * ((sm - dm / k) * 0.5), -k),
                (E_MINUS * ((sm + dm / k) * 0.5), k),
                (E_PLUS * ((sp + dp / ik) * 0.5), ik),
                (E_PLUS * ((sp - dp / ik) * 0.5), -ik),
            ],
        }
    }

    fn combine(&self, other: &FreeTail, c: C64) -> FreeTail {
        assert!((self.x0 - other.x0).abs() < 1e-12);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(a, r)| (*a * c, *r)));
        FreeTail { x0: self.x0, terms }
    }

    fn map(&self, fa: impl Fn(CVec2) -> CVec2, fr: impl Fn(C64) -> C64) -> FreeTail {
        FreeTail { x0: self.x0, terms: self.terms.iter().map(|(a, r)| (fa(*a), fr(*r))).collect() }
    }

    /// `∫_{x0}^∞ F_a(x)·conj(F_b(x)) dx` for one component of two tails;
    /// all terms must decay.
    pub fn cross_integral(&self, other: &FreeTail, comp: usize) -> Result<C64> {
        let mut s = ZERO;
        for (a, ra) in &self.terms {
            for (b, rb) in &other.terms {
                let amp = a[comp] * b[comp].conj();
                if amp == ZERO {
                    continue;
                }
                let rate = *ra + rb.conj();
                if rate.re >= 0.0 {
                    return Err(JostError::Domain("tail integral of a non-decaying mode".into()));
                }
                s -= amp / rate;
            }
        }
        Ok(s)
    }
}

/// Sampled Jost solution: nodes on `[0, X_q]` plus the exact free tail.
#[derive(Clone, Debug)]
pub struct JostSolution {
    pub index: JostIndex,
    pub k: C64,
    pub r: f64,
    pub x: Vec<f64>,
    pub f: Vec<CVec2>,
    pub fp: Vec<CVec2>,
    /// Inclusive node ranges with uniform spacing.
    pub pieces: Vec<(usize, usize)>,
    pub tail: FreeTail,
    pub x_max: f64,
    pub h: f64,
}

impl JostSolution {
    pub fn at_zero(&self) -> (CVec2, CVec2) {
        (self.f[0], self.fp[0])
    }

    pub fn x_q(&self) -> f64 {
        self.tail.x0
    }

    /// Value at a node or anywhere in the free region.
    pub fn eval(&self, x: f64) -> Option<(CVec2, CVec2)> {
        if x >= self.tail.x0 {
            return Some(self.tail.eval(x));
        }
        let i = self.x.partition_point(|&v| v < x);
        if i < self.x.len() && (self.x[i] - x).abs() <= 1e-12 * x.abs().max(1.0) {
            Some((self.f[i], self.fp[i]))
        } else {
            None
        }
    }

    /// Samples on `[0, X_max]`: the nodes, then the free tail at step `h`.
    pub fn samples(&self) -> (Vec<f64>, Vec<CVec2>, Vec<CVec2>) {
        let mut xs = self.x.clone();
        let mut f = self.f.clone();
        let mut fp = self.fp.clone();
        let x0 = self.tail.x0;
        let n = ((self.x_max - x0) / self.h).ceil() as usize;
        for i in 1..=n {
            let x = (x0 + i as f64 * self.h).min(self.x_max);
            let (a, b) = self.tail.eval(x);
            xs.push(x);
            f.push(a);
            fp.push(b);
        }
        (xs, f, fp)
    }

    /// `max |−εF″ + QF − k²F| / max(1, |F|)` over interior nodes, with
    /// `F″ ≈ 2·D²F − D¹F′` on three adjacent equally spaced nodes.
    pub fn ode_residual(&self, mp: &MatrixPotential) -> f64 {
        let k2 = self.k * self.k;
        let mut worst = 0.0f64;
        for &(s, e) in &self.pieces {
            let seg = mp.segment_for(self.x[s], self.x[e]).copied();
            for i in s + 1..e {
                let h = self.x[i + 1] - self.x[i];
                let d2 = (self.f[i + 1] - self.f[i] * 2.0 + self.f[i - 1]) * (1.0 / (h * h));
                let d1 = (self.fp[i + 1] - self.fp[i - 1]) * (1.0 / (2.0 * h));
                let fpp = d2 * 2.0 - d1;
                let q = seg.as_ref().map_or(crate::algebra::CMat2::zero(), |sg| mp.eval_on(sg, self.x[i]));
                let res = -(crate::algebra::EPSILON * fpp) + q * self.f[i] - self.f[i] * k2;
                worst = worst.max(res.norm() / self.f[i].norm().max(1.0));
            }
        }
        worst
    }

    /// `self + c·other` on the same grid.
    pub fn combine(&self, other: &JostSolution, c: C64) -> JostSolution {
        assert_eq!(self.x.len(), other.x.len());
        let mut out = self.clone();
        for i in 0..out.f.len() {
            out.f[i] += other.f[i] * c;
            out.fp[i] += other.fp[i] * c;
        }
        out.tail = self.tail.combine(&other.tail, c);
        out
    }

    fn map(&self, index: JostIndex, k: C64, fv: impl Fn(CVec2) -> CVec2, fr: impl Fn(C64) -> C64) -> JostSolution {
        JostSolution {
            index,
            k,
            r: self.r,
            x: self.x.clone(),
            f: self.f.iter().map(|v| fv(*v)).collect(),
            fp: self.fp.iter().map(|v| fv(*v)).collect(),
            pieces: self.pieces.clone(),
            tail: self.tail.map(&fv, fr),
            x_max: self.x_max,
            h: self.h,
        }
    }

    pub fn scaled(&self, c: C64) -> JostSolution {
        let mut out = self.clone();
        for v in out.f.iter_mut().chain(out.fp.iter_mut()) {
            *v = *v * c;
        }
        for t in &mut out.tail.terms {
            t.0 = t.0 * c;
        }
        out
    }

    /// `∫₀^∞ ⟨F(x), G(x)⟩ dx` for two solutions on the same grid.
    pub fn inner_integral(&self, other: &JostSolution) -> Result<C64> {
        assert_eq!(self.x.len(), other.x.len());
        let mut s = ZERO;
        for &(a, b) in &self.pieces {
            let h = (self.x[b] - self.x[a]) / (b - a) as f64;
            let v: Vec<C64> = (a..=b).map(|i| self.f[i].inner(other.f[i])).collect();
            s += crate::quad::simpson_uniform(&v, h);
        }
        Ok(s + self.tail.cross_integral(&other.tail, 0)? + self.tail.cross_integral(&other.tail, 1)?)
    }

    /// Composite Simpson of `|component|²` over `[0, X_q]` plus the exact tail.
    pub fn component_norm_sq(&self, comp: usize) -> Result<f64> {
        let mut s = 0.0;
        for &(a, b) in &self.pieces {
            let h = (self.x[b] - self.x[a]) / (b - a) as f64;
            let v: Vec<C64> = (a..=b).map(|i| C64::new(self.f[i][comp].norm_sqr(), 0.0)).collect();
            s += crate::quad::simpson_uniform(&v, h).re;
        }
        Ok(s + self.tail.cross_integral(&self.tail, comp)?.re)
    }
}

/// Continues the Neumann profile from `r` down to 0 by integrating the
/// differential equation backwards, and merges both pieces.
pub fn extend_to_zero(mp: &MatrixPotential, profile: &NeumannProfile, cfg: &NeumannConfig) -> Result<JostSolution> {
    let (f, fp) = profile.f_values();
    extend_values(mp, profile, f, fp, profile.tail(), cfg)
}

/// Like [`extend_to_zero`] for `F₊₁`, after removing from it the multiple of
/// `F₋₁` that matches its most rapidly decaying local mode at `r`. `F₊₁` is
/// only defined up to such multiples, and this one would otherwise grow
/// relative to `F₊₁` when integrating back to 0.
pub fn extend_dominant(
    mp: &MatrixPotential,
    plus_one: &NeumannProfile,
    minus_one: &NeumannProfile,
    cfg: &NeumannConfig,
) -> Result<JostSolution> {
    let (mut f, mut fp) = plus_one.f_values();
    let (g, gp) = minus_one.f_values();
    let mut tail = plus_one.tail();
    let r = plus_one.r;
    if plus_one.grid.x == minus_one.grid.x && r > 0.0 {
        let k = plus_one.k;
        let m = EPSILON * (mp.eval(r * (1.0 - 1e-12)) - CMat2::identity() * (k * k));
        if let Some(weight) = decaying_mode(m) {
            let c = weight(f[0], fp[0]) / weight(g[0], gp[0]);
            if c.is_finite() {
                for i in 0..f.len() {
                    f[i] = f[i] - g[i] * c;
                    fp[i] = fp[i] - gp[i] * c;
                }
                tail = tail.combine(&minus_one.tail(), -c);
            }
        }
    }
    extend_values(mp, plus_one, f, fp, tail, cfg)
}

/// For `F″ = MF` with constant `M`, the functional giving the coefficient of
/// the local mode `e^{−μx}v` with the largest `Re μ`.
fn decaying_mode(m: CMat2) -> Option<impl Fn(CVec2, CVec2) -> C64> {
    let half = m.trace() * 0.5;
    let disc = (half * half - m.det()).sqrt();
    let eig = [half + disc, half - disc];
    let vec = |e: C64| {
        let [[a, b], [cc, d]] = m.0;
        if b.norm() >= cc.norm() && b != ZERO {
            CVec2::new(b, e - a)
        } else if cc != ZERO {
            CVec2::new(e - d, cc)
        } else if (e - a).norm() <= (e - d).norm() {
            CVec2::new(ONE, ZERO)
        } else {
            CVec2::new(ZERO, ONE)
        }
    };
    let vinv = CMat2::from_cols(vec(eig[0]), vec(eig[1])).inverse()?;
    let mu = [eig[0].sqrt(), eig[1].sqrt()];
    let i = if mu[0].re >= mu[1].re { 0 } else { 1 };
    let mu = mu[i];
    if mu.norm() == 0.0 {
        return None;
    }
    Some(move |f: CVec2, fp: CVec2| ((vinv * f)[i] - (vinv * fp)[i] / mu) * 0.5)
}

fn extend_values(
    mp: &MatrixPotential,
    profile: &NeumannProfile,
    fn_: Vec<CVec2>,
    fpn: Vec<CVec2>,
    tail: FreeTail,
    cfg: &NeumannConfig,
) -> Result<JostSolution> {
    let k = profile.k;
    let h = cfg.step(k);
    let r = profile.r;
    let xq = mp.support();
    let x_max = tail.x0 + (5.0 / k.re.max(1e-3)).max(10.0);

    let offset;
    let mut x = Vec::new();
    let mut f = Vec::new();
    let mut fp = Vec::new();
    let mut pieces = Vec::new();
    if r > 0.0 {
        let g0 = Grid::build(0.0, r, &mp.potential().breakpoints(), h, 6);
        let xs: Vec<f64> = g0.x.iter().rev().copied().collect();
        let flow = propagate(mp, k * k, &xs, &[fn_[0]], &[fpn[0]], &cfg.ode)?;
        x.extend(g0.x.iter().copied());
        f.extend(flow.f[0].iter().rev().copied());
        fp.extend(flow.fp[0].iter().rev().copied());
        pieces.extend(g0.pieces.iter().copied());
        // the node at r is shared; keep the Neumann values there
        x.pop();
        f.pop();
        fp.pop();
        offset = x.len();
    } else {
        offset = 0;
    }
    x.extend(profile.grid.x.iter().copied());
    f.extend(fn_);
    fp.extend(fpn);
    pieces.extend(profile.grid.pieces.iter().map(|&(a, b)| (a + offset, b + offset)));
    debug_assert!((x.last().copied().unwrap_or(0.0) - xq.max(r)).abs() < 1e-9);
    Ok(JostSolution { index: profile.index, k, r, x, f, fp, pieces, tail, x_max, h })
}

/// The four Jost solutions at one `k`.
#[derive(Clone, Debug)]
pub struct JostSet {
    pub k: C64,
    pub r: f64,
    pub delta: f64,
    /// Ordered as `−1, +1, +i, −i`.
    pub sols: [JostSolution; 4],
    /// For real `k > 0`: the coefficient making `F₋ᵢ − β₁F₊ᵢ` a class member.
    pub beta1: Option<C64>,
}

impl JostSet {
    pub fn get(&self, j: JostIndex) -> &JostSolution {
        &self.sols[j.slot()]
    }

    /// `F₋ᵢ − β₁F₊ᵢ`, or the raw `F₋ᵢ` when no correction applies.
    pub fn corrected_minus_i(&self) -> JostSolution {
        let raw = self.get(JostIndex::MinusI);
        match self.beta1 {
            Some(b) => raw.combine(self.get(JostIndex::PlusI), -b),
            None => raw.clone(),
        }
    }

    /// Gauge change `F₊ᵢ ↦ F₊ᵢ + c·F₋₁`.
    pub fn gauge_shift(&self, c: C64) -> JostSet {
        let mut out = self.clone();
        out.sols[2] = self.sols[2].combine(&self.sols[0], c);
        out
    }

    pub fn boundary(&self, j: JostIndex, alpha: BoundaryParam) -> (CVec2, CVec2) {
        let (f0, fp0) = self.get(j).at_zero();
        crate::algebra::boundary_vec(alpha, f0, fp0)
    }
}

fn in_closed_sector(k: C64) -> bool {
    let a = k.arg();
    k != ZERO && a >= -1e-14 && a <= FRAC_PI_4 + 1e-14
}

fn resolve_r(mp: &MatrixPotential, k: C64, cfg: &NeumannConfig) -> (f64, f64) {
    let delta = cfg.delta.unwrap_or(0.9 * k.norm());
    let r = cfg
        .r
        .unwrap_or_else(|| select_r_with(mp.potential(), delta, cfg.contraction_margin, cfg.r_align));
    (delta, r)
}

/// One Jost solution for `k` in the closed sector `0 ≤ arg k ≤ π/4`.
pub fn jost_single(mp: &MatrixPotential, k: C64, j: JostIndex, cfg: &NeumannConfig) -> Result<JostSolution> {
    if !in_closed_sector(k) {
        return Err(JostError::Domain(format!("k = {k} is outside the sector 0 ≤ arg k ≤ π/4")));
    }
    let (delta, r) = resolve_r(mp, k, cfg);
    let profile = solve_neumann(mp, k, j, r, delta, cfg)?;
    if j == JostIndex::PlusOne {
        let minus = solve_neumann(mp, k, JostIndex::MinusOne, r, delta, cfg)?;
        return extend_dominant(mp, &profile, &minus, cfg);
    }
    extend_to_zero(mp, &profile, cfg)
}

/// All four Jost solutions for `k` in the closed sector `0 ≤ arg k ≤ π/4`.
pub fn jost_all(mp: &MatrixPotential, k: C64, cfg: &NeumannConfig) -> Result<JostSet> {
    if !in_closed_sector(k) {
        return Err(JostError::Domain(format!("k = {k} is outside the sector 0 ≤ arg k ≤ π/4")));
    }
    let (delta, r) = resolve_r(mp, k, cfg);
    let mut sols = Vec::with_capacity(4);
    let mut beta1 = None;
    let minus = solve_neumann(mp, k, JostIndex::MinusOne, r, delta, cfg)?;
    for j in JostIndex::ALL {
        let sol = match j {
            JostIndex::MinusOne => extend_to_zero(mp, &minus, cfg)?,
            JostIndex::PlusOne => extend_dominant(mp, &solve_neumann(mp, k, j, r, delta, cfg)?, &minus, cfg)?,
            _ => {
                let profile = solve_neumann(mp, k, j, r, delta, cfg)?;
                if j == JostIndex::MinusI && k.im == 0.0 {
                    beta1 = Some(profile.beta1()?);
                }
                extend_to_zero(mp, &profile, cfg)?
            }
        };
        sols.push(sol);
    }
    let sols: [JostSolution; 4] = sols.try_into().expect("four solutions");
    Ok(JostSet { k, r, delta, sols, beta1 })
}

/// All four Jost solutions at any `k ≠ 0`, through the sector symmetries.
pub fn jost_at(p: &Potential, k: C64, cfg: &NeumannConfig) -> Result<JostSet> {
    let map = sector_map(k)?;
    let mut mp = MatrixPotential::new(p);
    for step in &map.steps {
        mp = step.transform_potential(mp);
    }
    let base = jost_all(&mp, map.base_k, cfg)?;
    Ok(map.pull_back(base))
}

/// Scalar Jost solution `𝐞` for `k > 0`.
#[derive(Clone, Debug)]
pub struct ScalarJost {
    pub k: f64,
    pub x: Vec<f64>,
    pub e: Vec<C64>,
    pub ep: Vec<C64>,
    /// `‖𝐞‖²` over the half-line.
    pub norm_sq: f64,
    /// The underlying `F₋₁`.
    pub vector: JostSolution,
}

impl ScalarJost {
    pub fn at_zero(&self) -> (C64, C64) {
        (self.e[0], self.ep[0])
    }

    /// `(ℓ_α(𝐞), ℓ_α⊥(𝐞))`.
    pub fn boundary(&self, alpha: BoundaryParam) -> (C64, C64) {
        boundary_ell(alpha, self.e[0], self.ep[0])
    }

    pub fn from_vector(vector: JostSolution) -> Result<ScalarJost> {
        if vector.index != JostIndex::MinusOne || vector.k.im != 0.0 || vector.k.re <= 0.0 {
            return Err(JostError::Domain("the scalar Jost solution needs F₋₁ at real k > 0".into()));
        }
        let e: Vec<C64> = vector.f.iter().map(|v| -v[1]).collect();
        let ep: Vec<C64> = vector.fp.iter().map(|v| -v[1]).collect();
        let scale = e.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mismatch = vector
            .f
            .iter()
            .zip(&e)
            .map(|(v, z)| (v[0] - z.conj()).norm())
            .fold(0.0, f64::max);
        if mismatch > 1e-8 * scale {
            return Err(JostError::Inconsistent(format!(
                "first component of F₋₁ differs from conj(𝐞) by {mismatch:.3e}"
            )));
        }
        let norm_sq = vector.component_norm_sq(1)?;
        Ok(ScalarJost { k: vector.k.re, x: vector.x.clone(), e, ep, norm_sq, vector })
    }
}

pub fn scalar_jost(p: &Potential, k: f64, cfg: &NeumannConfig) -> Result<ScalarJost> {
    if !(k > 0.0) {
        return Err(JostError::Domain(format!("scalar Jost solution needs k > 0, got {k}")));
    }
    let v = jost_single(&MatrixPotential::new(p), C64::new(k, 0.0), JostIndex::MinusOne, cfg)?;
    ScalarJost::from_vector(v)
}

/// Two-term large-`k` predictions `(F₋₁(0), F₋₁′(0), F₊ᵢ(0), F₊ᵢ′(0))`
/// with `q₀ = ½∫Re q`.
pub fn asymptotic_reference(p: &Potential, k: C64) -> [CVec2; 4] {
    let q0 = 0.5 * p.integral().re;
    [
        E_MINUS * (1.0 + q0 / k),
        E_MINUS * (-k - q0),
        E_PLUS * (1.0 + I * q0 / k),
        E_PLUS * (I * k - q0),
    ]
}
