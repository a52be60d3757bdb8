//! E-matrix, Jost determinant, M-function and the spectral pair `(ν, ψ)`.

use crate::algebra::{boundary_L, BoundaryParam, CMat2, C64, EPSILON, I, P_MINUS, P_PLUS, ZERO};
use crate::error::{JostError, Result};
use crate::jost::{jost_at, scalar_jost, JostIndex, JostSet, NeumannConfig, ScalarJost};
use crate::potential::Potential;
use serde::Serialize;

/// Square root with `0 ≤ arg k < π`, so `Im λ > 0` maps to the first quadrant.
pub fn principal_k(lambda: C64) -> C64 {
    let k = lambda.sqrt();
    if k.im < 0.0 || (k.im == 0.0 && k.re < 0.0) {
        -k
    } else {
        k
    }
}

/// `E = {F₊ᵢ, F₋₁}` and `E′` at `x = 0`.
#[derive(Clone, Copy, Debug)]
pub struct EMatrix {
    pub k: C64,
    pub e0: CMat2,
    pub ep0: CMat2,
    pub r: f64,
}

impl EMatrix {
    pub fn from_set(set: &JostSet) -> EMatrix {
        let (a, ap) = set.get(JostIndex::PlusI).at_zero();
        let (b, bp) = set.get(JostIndex::MinusOne).at_zero();
        EMatrix { k: set.k, e0: CMat2::from_cols(a, b), ep0: CMat2::from_cols(ap, bp), r: set.r }
    }

    /// `(L_α(E), L_α⊥(E))`.
    pub fn boundary(&self, alpha: BoundaryParam) -> (CMat2, CMat2) {
        boundary_L(alpha, self.e0, self.ep0)
    }

    /// `det L_α⊥(E)`.
    pub fn det(&self, alpha: BoundaryParam) -> C64 {
        self.boundary(alpha).1.det()
    }

    /// `M = L_α(E)·L_α⊥(E)⁻¹·ε`.
    pub fn m(&self, alpha: BoundaryParam) -> Result<CMat2> {
        let (l, lp) = self.boundary(alpha);
        let inv = lp.inverse().ok_or_else(|| JostError::EigenvalueProximity {
            lambda: (self.k * self.k).re,
            det_abs: lp.det().norm(),
        })?;
        Ok(l * inv * EPSILON)
    }
}

pub fn e_matrix(p: &Potential, k: C64, cfg: &NeumannConfig) -> Result<EMatrix> {
    Ok(EMatrix::from_set(&jost_at(p, k, cfg)?))
}

pub fn jost_det(p: &Potential, alpha: BoundaryParam, k: C64, cfg: &NeumannConfig) -> Result<C64> {
    Ok(e_matrix(p, k, cfg)?.det(alpha))
}

/// Threshold on `|det|` below which `k²` is treated as an eigenvalue.
pub fn proximity_threshold(k: C64) -> f64 {
    1e-6 * (1.0 + k.norm()).powi(2)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MFunction {
    pub lambda: C64,
    pub k: C64,
    pub m: CMat2,
}

impl MFunction {
    /// Smallest eigenvalue of `Im M`.
    pub fn im_min_eig(&self) -> f64 {
        self.m.im_part().hermitian_eigenvalues()[0]
    }
}

/// `M_α(λ)` for `Im λ > 0`, or its boundary value at `λ > 0`.
pub fn m_function(p: &Potential, alpha: BoundaryParam, lambda: C64, cfg: &NeumannConfig) -> Result<MFunction> {
    if lambda.im < 0.0 || (lambda.im == 0.0 && lambda.re <= 0.0) {
        return Err(JostError::Domain(format!("M is evaluated for Im λ > 0 or λ > 0, got {lambda}")));
    }
    let k = principal_k(lambda);
    let m = e_matrix(p, k, cfg)?.m(alpha)?;
    Ok(MFunction { lambda, k, m })
}

/// Large-`k` expansion of `M_α(k²)` for `0 ≤ arg k ≤ π/4`.
pub fn m_asymptotic(alpha: BoundaryParam, k: C64) -> CMat2 {
    match alpha.a_matrix() {
        None => (P_PLUS * I + P_MINUS) * k,
        Some(a) => {
            let s = 1.0 + alpha_abs_sq(alpha);
            let b = P_PLUS * I - P_MINUS;
            EPSILON * a + b * (s / k) + b * EPSILON * a * b * (s / (k * k))
        }
    }
}

fn alpha_abs_sq(alpha: BoundaryParam) -> f64 {
    match alpha {
        BoundaryParam::Finite(a) => a.norm_sqr(),
        BoundaryParam::Infinite => f64::INFINITY,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Density,
    PointMass,
}

/// `(λ, dν/dλ, ψ)` or `(λ, ν({λ}), ψ)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralSample {
    pub lambda: f64,
    pub k: f64,
    pub kind: SampleKind,
    pub value: f64,
    pub psi: C64,
}

impl SpectralSample {
    /// The sample at `−λ`: `ν` is even and `ψ` is odd.
    pub fn reflect(&self) -> SpectralSample {
        SpectralSample { lambda: -self.lambda, psi: -self.psi, ..*self }
    }
}

/// Jost data at one `k > 0`, reusable across boundary parameters.
#[derive(Clone, Debug)]
pub struct SpectralPoint {
    pub set: JostSet,
    pub e: ScalarJost,
}

impl SpectralPoint {
    pub fn new(p: &Potential, k: f64, cfg: &NeumannConfig) -> Result<SpectralPoint> {
        if !(k > 0.0) {
            return Err(JostError::Domain(format!("spectral samples need k > 0, got {k}")));
        }
        SpectralPoint::from_set(jost_at(p, C64::new(k, 0.0), cfg)?)
    }

    pub fn from_set(set: JostSet) -> Result<SpectralPoint> {
        let e = ScalarJost::from_vector(set.get(JostIndex::MinusOne).clone())?;
        Ok(SpectralPoint { set, e })
    }

    pub fn k(&self) -> f64 {
        self.e.k
    }

    pub fn e_matrix(&self) -> EMatrix {
        EMatrix::from_set(&self.set)
    }

    pub fn det(&self, alpha: BoundaryParam) -> C64 {
        self.e_matrix().det(alpha)
    }

    pub fn is_near_eigenvalue(&self, alpha: BoundaryParam) -> bool {
        self.det(alpha).norm() < proximity_threshold(C64::new(self.k(), 0.0))
    }

    /// `dν/dλ = (2k/π)|ℓ⊥(𝐞)|²/|det|²`, `ψ = ℓ⊥/conj(ℓ⊥)`.
    pub fn density(&self, alpha: BoundaryParam) -> Result<SpectralSample> {
        let k = self.k();
        let det = self.det(alpha);
        if det.norm() < proximity_threshold(C64::new(k, 0.0)) {
            return Err(JostError::EigenvalueProximity { lambda: k * k, det_abs: det.norm() });
        }
        let (_, lp) = self.e.boundary(alpha);
        let value = 2.0 * k / std::f64::consts::PI * lp.norm_sqr() / det.norm_sqr();
        let psi = if lp == ZERO { C64::new(1.0, 0.0) } else { lp / lp.conj() };
        Ok(SpectralSample { lambda: k * k, k, kind: SampleKind::Density, value, psi })
    }

    /// `ν({λ}) = |ℓ(𝐞)|²/(2‖𝐞‖²)`, `ψ = −conj(ℓ)/ℓ`.
    pub fn point_mass(&self, alpha: BoundaryParam) -> Result<SpectralSample> {
        let k = self.k();
        let (l, _) = self.e.boundary(alpha);
        if l.norm() < 1e-12 {
            return Err(JostError::Inconsistent(format!("ℓ(𝐞) vanishes at the eigenvalue k = {k}")));
        }
        let value = l.norm_sqr() / (2.0 * self.e.norm_sq);
        Ok(SpectralSample { lambda: k * k, k, kind: SampleKind::PointMass, value, psi: -l.conj() / l })
    }

    /// Rank-one density `dΣ/dλ = dν/dλ·[[1, ψ], [ψ̄, 1]]`.
    pub fn sigma_density(&self, alpha: BoundaryParam) -> Result<CMat2> {
        let k = self.k();
        let det = self.det(alpha);
        if det.norm() < proximity_threshold(C64::new(k, 0.0)) {
            return Err(JostError::EigenvalueProximity { lambda: k * k, det_abs: det.norm() });
        }
        let (_, lp) = self.e.boundary(alpha);
        let pre = 2.0 * k / std::f64::consts::PI / det.norm_sqr();
        let d = C64::new(lp.norm_sqr(), 0.0);
        Ok(CMat2::new(d, lp * lp, (lp * lp).conj(), d) * pre)
    }

    /// `M_α(λ + i0)`.
    pub fn m(&self, alpha: BoundaryParam) -> Result<CMat2> {
        self.e_matrix().m(alpha)
    }

    pub fn with_gauge(&self, c: C64) -> SpectralPoint {
        SpectralPoint { set: self.set.gauge_shift(c), e: self.e.clone() }
    }
}

pub fn spectral_density(p: &Potential, alpha: BoundaryParam, lambda: f64, cfg: &NeumannConfig) -> Result<SpectralSample> {
    SpectralPoint::new(p, lambda_to_k(lambda)?, cfg)?.density(alpha)
}

pub fn point_mass(p: &Potential, alpha: BoundaryParam, lambda: f64, cfg: &NeumannConfig) -> Result<SpectralSample> {
    SpectralPoint::new(p, lambda_to_k(lambda)?, cfg)?.point_mass(alpha)
}

pub fn sigma_density(p: &Potential, alpha: BoundaryParam, lambda: f64, cfg: &NeumannConfig) -> Result<CMat2> {
    SpectralPoint::new(p, lambda_to_k(lambda)?, cfg)?.sigma_density(alpha)
}

fn lambda_to_k(lambda: f64) -> Result<f64> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(lambda.sqrt())
    } else {
        Err(JostError::Domain(format!("λ must be positive, got {lambda}")))
    }
}

/// Embedded eigenvalues `k ∈ [k_lo, k_hi]`: zeros of `k ↦ ℓ_α⊥(𝐞(·, k))`.
pub fn find_eigenvalues(
    p: &Potential,
    alpha: BoundaryParam,
    k_lo: f64,
    k_hi: f64,
    cfg: &NeumannConfig,
) -> Result<Vec<f64>> {
    find_eigenvalues_with(p, alpha, k_lo, k_hi, 200, cfg)
}

pub fn find_eigenvalues_with(
    p: &Potential,
    alpha: BoundaryParam,
    k_lo: f64,
    k_hi: f64,
    scan: usize,
    cfg: &NeumannConfig,
) -> Result<Vec<f64>> {
    if !(0.0 < k_lo && k_lo < k_hi) {
        return Err(JostError::Domain(format!("need 0 < k_lo < k_hi, got [{k_lo}, {k_hi}]")));
    }
    let n = scan.max(200);
    let g = |k: f64| -> Result<(C64, C64)> {
        let e = scalar_jost(p, k, cfg)?;
        let (l, lp) = e.boundary(alpha);
        Ok((lp, l))
    };
    let ks: Vec<f64> = (0..n).map(|i| k_lo + (k_hi - k_lo) * i as f64 / (n - 1) as f64).collect();
    let vals: Vec<C64> = ks.iter().map(|&k| g(k).map(|v| v.0)).collect::<Result<_>>()?;

    let mut brackets: Vec<(usize, Option<usize>)> = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        if a.re == 0.0 && a.im == 0.0 {
            brackets.push((i, None));
        } else if a.re * b.re < 0.0 {
            brackets.push((i, Some(0)));
        } else if a.im * b.im < 0.0 {
            brackets.push((i, Some(1)));
        }
    }
    for i in 1..n - 1 {
        let m = vals[i].norm();
        if m < vals[i - 1].norm() && m < vals[i + 1].norm() && !brackets.iter().any(|&(j, _)| j + 1 == i || j == i) {
            brackets.push((i - 1, Some(2)));
        }
    }

    let mut roots: Vec<f64> = Vec::new();
    for (i, how) in brackets {
        let root = match how {
            None => ks[i],
            Some(comp @ (0 | 1)) => {
                let part = |z: C64| if comp == 0 { z.re } else { z.im };
                illinois(|k| g(k).map(|v| part(v.0)), ks[i], ks[i + 1], part(vals[i]), part(vals[i + 1]))?
            }
            Some(_) => golden_min(|k| g(k).map(|v| v.0.norm()), ks[i], ks[i + 2])?,
        };
        let (lp, l) = g(root)?;
        if lp.norm() < 1e-9 * (1.0 + l.norm()) && !roots.iter().any(|r| (r - root).abs() < 1e-8 * root.max(1.0)) {
            roots.push(root);
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Ok(roots)
}

/// Regula falsi with the Illinois modification on a sign-changing bracket.
fn illinois(mut f: impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> Result<f64> {
    let mut side = 0;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c)?;
        if fc == 0.0 || (b - a).abs() < 4.0 * f64::EPSILON * c.abs() {
            return Ok(c);
        }
        if fc * fb < 0.0 {
            a = b;
            fa = fb;
            side = 0;
        } else {
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        b = c;
        fb = fc;
        if (b - a).abs() < 1e-15 * b.abs().max(1.0) {
            break;
        }
    }
    Ok(b)
}

fn golden_min(mut f: impl FnMut(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > 1e-13 * b.abs().max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// `‖Im M − Im λ·∫₀^∞ X*X dx‖` with `X = Θ − ΦM`.
///
/// The columns of `X` decay, so `X = E·L_α⊥(E)⁻¹·ε`; the integral is taken
/// by composite Simpson on `[0, X_q]` and exactly over the free tail.
pub fn im_m_identity_check(p: &Potential, alpha: BoundaryParam, lambda: C64, cfg: &NeumannConfig) -> Result<f64> {
    if !(lambda.im > 0.0) {
        return Err(JostError::Domain(format!("the identity needs Im λ > 0, got {lambda}")));
    }
    let k = principal_k(lambda);
    let set = jost_at(p, k, cfg)?;
    let em = EMatrix::from_set(&set);
    let (_, lp) = em.boundary(alpha);
    let c = lp.inverse().ok_or_else(|| JostError::Singular("L⊥(E) at non-real λ".into()))? * EPSILON;
    let m = em.m(alpha)?;
    let a = set.get(JostIndex::PlusI);
    let b = set.get(JostIndex::MinusOne);
    // X column j = a·c[0][j] + b·c[1][j]
    let cols: Vec<_> = (0..2).map(|j| a.scaled(c.0[0][j]).combine(b, c.0[1][j])).collect();
    let mut gram = CMat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            gram.0[i][j] = cols[j].inner_integral(&cols[i])?;
        }
    }
    let resid = m.im_part() - gram * lambda.im;
    Ok(resid.frobenius())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn free_m_functions() {
        let cfg = NeumannConfig::default();
        let z = Potential::zero();
        for lambda in [c(1.0, 0.0), c(0.3, 1.2), c(-2.0, 0.5)] {
            let k = principal_k(lambda);
            let m = m_function(&z, BoundaryParam::Infinite, lambda, &cfg).unwrap().m;
            let expect = (P_PLUS * I + P_MINUS) * k;
            assert!((m - expect).frobenius() <= 1e-12 * expect.frobenius());
            let m = m_function(&z, BoundaryParam::real(0.0), lambda, &cfg).unwrap().m;
            let expect = (P_PLUS * I - P_MINUS) * (1.0 / k);
            assert!((m - expect).frobenius() <= 1e-12 * expect.frobenius());
        }
    }

    #[test]
    fn asymptotic_forms() {
        let k = c(3.0, 0.0);
        assert_eq!(m_asymptotic(BoundaryParam::Infinite, k), (P_PLUS * I + P_MINUS) * k);
        let m0 = m_asymptotic(BoundaryParam::real(0.0), k);
        assert!((m0 - (P_PLUS * I - P_MINUS) * (1.0 / k)).frobenius() < 1e-15);
    }

    #[test]
    fn free_density_and_determinant() {
        let cfg = NeumannConfig::default();
        let z = Potential::zero();
        let s = spectral_density(&z, BoundaryParam::Infinite, 1.0, &cfg).unwrap();
        assert!((s.value - 0.5 / std::f64::consts::PI).abs() < 1e-15);
        assert!((s.psi - 1.0).norm() < 1e-15);
        let s = spectral_density(&z, BoundaryParam::real(0.0), 4.0, &cfg).unwrap();
        assert!((s.value - 0.25 / std::f64::consts::PI).abs() < 1e-15);
        let d = jost_det(&z, BoundaryParam::Infinite, c(1.0, 0.0), &cfg).unwrap();
        assert!((d + 2.0).norm() < 1e-15);
        let d = jost_det(&z, BoundaryParam::real(0.0), c(2.0, 0.0), &cfg).unwrap();
        assert!((d - c(0.0, 8.0)).norm() < 1e-14);
        let sd = sigma_density(&z, BoundaryParam::Infinite, 1.0, &cfg).unwrap();
        let expect = CMat2::real(1.0, 1.0, 1.0, 1.0) * (0.5 / std::f64::consts::PI);
        assert!((sd - expect).frobenius() < 1e-15);
    }

    #[test]
    fn free_identity_residual() {
        let r = im_m_identity_check(&Potential::zero(), BoundaryParam::Infinite, c(0.0, 1.0), &NeumannConfig::default()).unwrap();
        assert!(r < 1e-6, "{r:e}");
    }

    #[test]
    fn reflection() {
        let s = SpectralSample { lambda: 2.0, k: 2f64.sqrt(), kind: SampleKind::Density, value: 0.3, psi: c(0.6, 0.8) };
        let r = s.reflect();
        assert_eq!((r.lambda, r.value, r.psi), (-2.0, 0.3, c(-0.6, -0.8)));
    }
}
