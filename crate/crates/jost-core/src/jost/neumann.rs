//! Neumann-series solution of `w = e + 𝒦_j w` on `[r, X_q]`.
//!
//! The operator is applied by product integration: `Q·w` is replaced by its
//! degree-5 Lagrange interpolant on each piece of the grid and integrated
//! exactly against each exponential kernel term. Every kernel term is a
//! one-sided causal convolution, evaluated by a stable running recurrence.

use super::kernel::{kernel_terms, KernelTerm, Side};
use super::{FreeTail, JostIndex, NeumannConfig};
use crate::algebra::{CMat2, CVec2, C64, ZERO};
use crate::error::{JostError, Result};
use crate::grid::Grid;
use crate::potential::MatrixPotential;
use crate::quad::gauss_legendre;

const STENCIL: usize = 6;
const NGL: usize = 12;

#[derive(Clone, Debug)]
pub struct NeumannProfile {
    pub index: JostIndex,
    pub k: C64,
    pub r: f64,
    pub grid: Grid,
    /// `w_j` and `w_j′` at the grid nodes.
    pub w: Vec<CVec2>,
    pub wp: Vec<CVec2>,
    /// Sup-norm of each Neumann term, starting with `m = 1`.
    pub term_norms: Vec<f64>,
    /// `∫_r^{X_q} e^{c(X_q−y)} Q(y)w(y) dy` for every `x > 0` kernel term.
    pub(crate) end_accumulators: Vec<(KernelTerm, CVec2)>,
}

impl NeumannProfile {
    /// `F = e^{σx} w` and `F′` at the nodes.
    pub fn f_values(&self) -> (Vec<CVec2>, Vec<CVec2>) {
        let sigma = self.index.sigma(self.k);
        let mut f = Vec::with_capacity(self.w.len());
        let mut fp = Vec::with_capacity(self.w.len());
        for ((x, w), wp) in self.grid.x.iter().zip(&self.w).zip(&self.wp) {
            let e = (sigma * *x).exp();
            f.push(*w * e);
            fp.push((*w * sigma + *wp) * e);
        }
        (f, fp)
    }

    /// Exact representation of `F_j` for `x ≥ X_q`, where `Q = 0`.
    pub fn tail(&self) -> FreeTail {
        let x0 = self.grid.end();
        let sigma = self.index.sigma(self.k);
        let e0 = (sigma * x0).exp();
        let mut terms = vec![(self.index.direction() * e0, sigma)];
        for (term, acc) in &self.end_accumulators {
            terms.push((term.proj.apply(*acc) * (term.coeff * e0), term.rate + sigma));
        }
        FreeTail { x0, terms }
    }

    /// `β₁ = (−i/2k)∫_r^∞ e^{−2iky}(P₊Q w₋ᵢ)(y) dy` as the coefficient of `e₊`.
    pub fn beta1(&self) -> Result<C64> {
        if self.index != JostIndex::MinusI || self.k.im != 0.0 || self.k.re <= 0.0 {
            return Err(JostError::Domain("β₁ is defined for F₋ᵢ at real k > 0".into()));
        }
        let k = self.k;
        let x0 = self.grid.end();
        let rate = 2.0 * crate::algebra::I * k;
        let acc = self
            .end_accumulators
            .iter()
            .find(|(t, _)| t.side == Side::Pos && (t.rate - rate).norm() < 1e-12 * k.norm())
            .map(|(_, a)| *a)
            .unwrap_or_default();
        // acc = ∫ e^{2ik(x0−y)} g(y) dy
        let integral = acc * (-rate * x0).exp();
        let plus = (integral[0] + integral[1]) * 0.5;
        Ok(plus * C64::new(0.0, -0.5) / k)
    }
}

struct Interval {
    piece: usize,
    /// Stencil start as a local index within the piece.
    stencil: usize,
    h: f64,
    /// Lagrange basis values at the Gauss points.
    lag: [[f64; STENCIL]; NGL],
    /// Gauss points mapped to the interval, and weights scaled by h/2.
    ys: [f64; NGL],
    ws: [f64; NGL],
}

struct TermData {
    term: KernelTerm,
    prop: Vec<C64>,
    weights: Vec<[C64; STENCIL]>,
}

pub(crate) struct Discretisation {
    grid: Grid,
    q_piece: Vec<Vec<CMat2>>,
    intervals: Vec<Interval>,
    terms: Vec<TermData>,
}

impl Discretisation {
    pub(crate) fn new(mp: &MatrixPotential, j: JostIndex, k: C64, grid: Grid) -> Self {
        let (gx, gw) = gauss_legendre(NGL);
        let mut q_piece = Vec::with_capacity(grid.pieces.len());
        let mut intervals = Vec::new();
        for (p, &(s, e)) in grid.pieces.iter().enumerate() {
            let seg = mp.segment_for(grid.x[s], grid.x[e]).copied();
            q_piece.push(
                (s..=e)
                    .map(|n| match &seg {
                        Some(sg) => mp.eval_on(sg, grid.x[n]),
                        None => CMat2::zero(),
                    })
                    .collect::<Vec<_>>(),
            );
            let nloc = e - s + 1;
            for i in s..e {
                let li = i - s;
                let st = li.saturating_sub(STENCIL / 2 - 1).min(nloc - STENCIL);
                let z: Vec<f64> = (0..STENCIL).map(|m| grid.x[s + st + m]).collect();
                let (a, b) = (grid.x[i], grid.x[i + 1]);
                let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
                let mut lag = [[0.0; STENCIL]; NGL];
                let mut ys = [0.0; NGL];
                let mut ws = [0.0; NGL];
                for q in 0..NGL {
                    let y = mid + half * gx[q];
                    ys[q] = y;
                    ws[q] = half * gw[q];
                    for m in 0..STENCIL {
                        let mut l = 1.0;
                        for n in 0..STENCIL {
                            if n != m {
                                l *= (y - z[n]) / (z[m] - z[n]);
                            }
                        }
                        lag[q][m] = l;
                    }
                }
                intervals.push(Interval { piece: p, stencil: st, h: b - a, lag, ys, ws });
            }
        }

        let terms = kernel_terms(j, k)
            .into_iter()
            .map(|term| {
                let c = term.rate;
                let mut prop = Vec::with_capacity(intervals.len());
                let mut weights = Vec::with_capacity(intervals.len());
                for (i, iv) in intervals.iter().enumerate() {
                    let (a, b) = (grid.x[i], grid.x[i + 1]);
                    let anchor = match term.side {
                        Side::Pos => b,
                        Side::Neg => a,
                    };
                    prop.push(match term.side {
                        Side::Pos => (c * iv.h).exp(),
                        Side::Neg => (-c * iv.h).exp(),
                    });
                    let mut wts = [ZERO; STENCIL];
                    for q in 0..NGL {
                        let ex = (c * (anchor - iv.ys[q])).exp() * iv.ws[q];
                        for m in 0..STENCIL {
                            wts[m] += ex * iv.lag[q][m];
                        }
                    }
                    weights.push(wts);
                }
                TermData { term, prop, weights }
            })
            .collect();

        Discretisation { grid, q_piece, intervals, terms }
    }

    /// Applies `𝒦` and its x-derivative to nodal values; also returns the
    /// `x > 0` accumulators at the right end.
    pub(crate) fn apply(&self, v: &[CVec2], with_derivative: bool) -> (Vec<CVec2>, Vec<CVec2>, Vec<(KernelTerm, CVec2)>) {
        let n = self.grid.len();
        let g: Vec<Vec<CVec2>> = self
            .grid
            .pieces
            .iter()
            .zip(&self.q_piece)
            .map(|(&(s, _), qs)| qs.iter().enumerate().map(|(l, q)| *q * v[s + l]).collect())
            .collect();
        let mut out = vec![CVec2::zero(); n];
        let mut dout = if with_derivative { vec![CVec2::zero(); n] } else { Vec::new() };
        let mut ends = Vec::new();
        let mut acc = vec![CVec2::zero(); n];
        for td in &self.terms {
            let local = |i: usize| -> CVec2 {
                let iv = &self.intervals[i];
                let gp = &g[iv.piece];
                let w = &td.weights[i];
                let mut s = CVec2::zero();
                for m in 0..STENCIL {
                    s += gp[iv.stencil + m] * w[m];
                }
                s
            };
            match td.term.side {
                Side::Pos => {
                    acc[0] = CVec2::zero();
                    for i in 0..n - 1 {
                        acc[i + 1] = acc[i] * td.prop[i] + local(i);
                    }
                    ends.push((td.term, acc[n - 1]));
                }
                Side::Neg => {
                    acc[n - 1] = CVec2::zero();
                    for i in (0..n - 1).rev() {
                        acc[i] = acc[i + 1] * td.prop[i] + local(i);
                    }
                }
            }
            for (idx, a) in acc.iter().enumerate() {
                let pv = td.term.proj.apply(*a);
                out[idx] += pv * td.term.coeff;
                if with_derivative {
                    dout[idx] += pv * (td.term.coeff * td.term.rate);
                }
            }
        }
        (out, dout, ends)
    }
}

/// Solves `w_j = e + 𝒦_j w_j` on `[r, X_q]` by the Neumann series.
pub fn solve_neumann(
    mp: &MatrixPotential,
    k: C64,
    j: JostIndex,
    r: f64,
    delta: f64,
    cfg: &NeumannConfig,
) -> Result<NeumannProfile> {
    let xq = mp.support();
    let r = r.min(xq).max(0.0);
    let bound = 2.0 / delta * mp.potential().l1_tail(r);
    if bound > cfg.contraction_margin || k.norm() < delta * (1.0 - 1e-12) || !(delta > 0.0) {
        return Err(JostError::Contraction {
            bound,
            margin: cfg.contraction_margin,
            delta,
            r,
            k_abs: k.norm(),
        });
    }
    let h = cfg.step(k);
    let grid = Grid::build(r, xq, &mp.potential().breakpoints(), h, 6);
    let e = j.direction();
    let n = grid.len();
    if grid.pieces.is_empty() {
        return Ok(NeumannProfile {
            index: j,
            k,
            r,
            grid,
            w: vec![e; n],
            wp: vec![CVec2::zero(); n],
            term_norms: Vec::new(),
            end_accumulators: Vec::new(),
        });
    }
    let disc = Discretisation::new(mp, j, k, grid);
    let mut v = vec![e; n];
    let mut w = v.clone();
    let mut norms = Vec::new();
    let mut converged = false;
    for _ in 0..cfg.max_terms {
        let (next, _, _) = disc.apply(&v, false);
        let sup = next.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (wi, ni) in w.iter_mut().zip(&next) {
            *wi += *ni;
        }
        norms.push(sup);
        v = next;
        if sup < cfg.series_tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(JostError::NotConverged { terms: norms.len(), last: *norms.last().unwrap_or(&f64::NAN) });
    }
    // one more application gives nodal values and derivatives consistent with the quadrature
    let (kw, dkw, ends) = disc.apply(&w, true);
    let w: Vec<CVec2> = kw.iter().map(|z| e + *z).collect();
    Ok(NeumannProfile {
        index: j,
        k,
        r,
        grid: disc.grid,
        w,
        wp: dkw,
        term_norms: norms,
        end_accumulators: ends,
    })
}
