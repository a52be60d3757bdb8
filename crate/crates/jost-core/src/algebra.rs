//! Small fixed-size complex linear algebra, Wronskians and boundary functionals.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second: `⟨a, b⟩ = Σ aᵢ·conj(bᵢ)`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct CVec2(pub [C64; 2]);

impl CVec2 {
    pub const fn new(a: C64, b: C64) -> Self {
        CVec2([a, b])
    }

    pub const fn real(a: f64, b: f64) -> Self {
        CVec2([C64::new(a, 0.0), C64::new(b, 0.0)])
    }

    pub fn zero() -> Self {
        CVec2([ZERO; 2])
    }

    pub fn conj(self) -> Self {
        CVec2([self.0[0].conj(), self.0[1].conj()])
    }

    /// `⟨self, other⟩`, linear in `self`.
    pub fn inner(self, other: CVec2) -> C64 {
        self.0[0] * other.0[0].conj() + self.0[1] * other.0[1].conj()
    }

    pub fn norm(self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for CVec2 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Add for CVec2 {
    type Output = CVec2;
    fn add(self, o: CVec2) -> CVec2 {
        CVec2([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl AddAssign for CVec2 {
    fn add_assign(&mut self, o: CVec2) {
        self.0[0] += o.0[0];
        self.0[1] += o.0[1];
    }
}

impl Sub for CVec2 {
    type Output = CVec2;
    fn sub(self, o: CVec2) -> CVec2 {
        CVec2([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Neg for CVec2 {
    type Output = CVec2;
    fn neg(self) -> CVec2 {
        CVec2([-self.0[0], -self.0[1]])
    }
}

impl Mul<C64> for CVec2 {
    type Output = CVec2;
    fn mul(self, s: C64) -> CVec2 {
        CVec2([self.0[0] * s, self.0[1] * s])
    }
}

impl Mul<f64> for CVec2 {
    type Output = CVec2;
    fn mul(self, s: f64) -> CVec2 {
        CVec2([self.0[0] * s, self.0[1] * s])
    }
}

/// Row-major 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct CMat2(pub [[C64; 2]; 2]);

impl CMat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        CMat2([[a, b], [c, d]])
    }

    pub const fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        CMat2([
            [C64::new(a, 0.0), C64::new(b, 0.0)],
            [C64::new(c, 0.0), C64::new(d, 0.0)],
        ])
    }

    pub fn zero() -> Self {
        CMat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        IDENTITY
    }

    pub fn diag(a: C64, b: C64) -> Self {
        CMat2([[a, ZERO], [ZERO, b]])
    }

    pub fn from_cols(c0: CVec2, c1: CVec2) -> Self {
        CMat2([[c0.0[0], c1.0[0]], [c0.0[1], c1.0[1]]])
    }

    pub fn col(&self, j: usize) -> CVec2 {
        CVec2([self.0[0][j], self.0[1][j]])
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn inverse(&self) -> Option<CMat2> {
        let d = self.det();
        if d == ZERO || !d.re.is_finite() || !d.im.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(CMat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn adjoint(&self) -> CMat2 {
        let m = &self.0;
        CMat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn conj(&self) -> CMat2 {
        let m = &self.0;
        CMat2([[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]])
    }

    /// `(M − M*)/(2i)`.
    pub fn im_part(&self) -> CMat2 {
        (*self - self.adjoint()) * C64::new(0.0, -0.5)
    }

    /// `(M + M*)/2`.
    pub fn re_part(&self) -> CMat2 {
        (*self + self.adjoint()) * 0.5
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        let f2 = self.frobenius().powi(2);
        let d = self.det().norm();
        let disc = (f2 * f2 - 4.0 * d * d).max(0.0).sqrt();
        ((f2 + disc) / 2.0).sqrt()
    }

    /// Eigenvalues (ascending) of the Hermitian part of `self`; exact for Hermitian input.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let h = self.re_part();
        let a = h.0[0][0].re;
        let d = h.0[1][1].re;
        let b = h.0[0][1].norm();
        let mean = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mean - rad, mean + rad]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, o: CMat2) -> CMat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.0[i][j] += o.0[i][j];
            }
        }
        r
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, o: CMat2) -> CMat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.0[i][j] -= o.0[i][j];
            }
        }
        r
    }
}

impl Neg for CMat2 {
    type Output = CMat2;
    fn neg(self) -> CMat2 {
        self * -1.0
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, o: CMat2) -> CMat2 {
        let a = &self.0;
        let b = &o.0;
        let mut r = [[ZERO; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        CMat2(r)
    }
}

impl Mul<CVec2> for CMat2 {
    type Output = CVec2;
    fn mul(self, v: CVec2) -> CVec2 {
        let a = &self.0;
        CVec2([
            a[0][0] * v.0[0] + a[0][1] * v.0[1],
            a[1][0] * v.0[0] + a[1][1] * v.0[1],
        ])
    }
}

impl Mul<C64> for CMat2 {
    type Output = CMat2;
    fn mul(self, s: C64) -> CMat2 {
        let mut r = self;
        r.0.iter_mut().flatten().for_each(|z| *z *= s);
        r
    }
}

impl Mul<f64> for CMat2 {
    type Output = CMat2;
    fn mul(self, s: f64) -> CMat2 {
        let mut r = self;
        r.0.iter_mut().flatten().for_each(|z| *z *= s);
        r
    }
}

pub const E1: CVec2 = CVec2::real(1.0, 0.0);
pub const E2: CVec2 = CVec2::real(0.0, 1.0);
pub const E_PLUS: CVec2 = CVec2::real(1.0, 1.0);
pub const E_MINUS: CVec2 = CVec2::real(1.0, -1.0);

pub const IDENTITY: CMat2 = CMat2::real(1.0, 0.0, 0.0, 1.0);
/// Pauli matrix ε with eigenvectors e₊ (eigenvalue 1) and e₋ (eigenvalue −1).
pub const EPSILON: CMat2 = CMat2::real(0.0, 1.0, 1.0, 0.0);
pub const XI: CMat2 = CMat2::real(1.0, 0.0, 0.0, -1.0);
pub const P_PLUS: CMat2 = CMat2::real(0.5, 0.5, 0.5, 0.5);
pub const P_MINUS: CMat2 = CMat2::real(0.5, -0.5, -0.5, 0.5);

/// Boundary parameter α ∈ ℂ ∪ {∞}. Infinity is its own variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryParam {
    Finite(C64),
    Infinite,
}

impl BoundaryParam {
    pub fn real(a: f64) -> Self {
        BoundaryParam::Finite(C64::new(a, 0.0))
    }

    pub fn conj(self) -> Self {
        match self {
            BoundaryParam::Finite(a) => BoundaryParam::Finite(a.conj()),
            BoundaryParam::Infinite => BoundaryParam::Infinite,
        }
    }

    pub fn is_real(self) -> bool {
        match self {
            BoundaryParam::Finite(a) => a.im == 0.0,
            BoundaryParam::Infinite => true,
        }
    }

    /// The matrix `A = diag(ᾱ, α)`; `None` for α = ∞.
    pub fn a_matrix(self) -> Option<CMat2> {
        match self {
            BoundaryParam::Finite(a) => Some(CMat2::diag(a.conj(), a)),
            BoundaryParam::Infinite => None,
        }
    }

    /// Cauchy data `(F(0), F′(0))` of the matrix solution with prescribed
    /// `L(F) = l` and `L⊥(F) = lp`.
    pub fn cauchy_from_boundary(self, l: CMat2, lp: CMat2) -> (CMat2, CMat2) {
        match self {
            BoundaryParam::Infinite => (lp, l),
            BoundaryParam::Finite(a) => {
                let s = (1.0 + a.norm_sqr()).sqrt();
                let am = CMat2::diag(a.conj(), a);
                let abar = CMat2::diag(a, a.conj());
                ((abar * lp - l) * (1.0 / s), (lp + am * l) * (1.0 / s))
            }
        }
    }
}

impl std::fmt::Display for BoundaryParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryParam::Infinite => write!(f, "inf"),
            BoundaryParam::Finite(a) if a.im == 0.0 => write!(f, "{}", a.re),
            BoundaryParam::Finite(a) => write!(f, "{}{:+}i", a.re, a.im),
        }
    }
}

impl Serialize for BoundaryParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BoundaryParam::Infinite => s.serialize_str("inf"),
            BoundaryParam::Finite(a) => [a.re, a.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Real(f64),
            Pair([f64; 2]),
        }
        let a = match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "inf" || t == "infinity" => return Ok(BoundaryParam::Infinite),
            Raw::Tag(t) => {
                return Err(serde::de::Error::custom(format!(
                    "boundary parameter must be \"inf\", a number or [re, im], got {t:?}"
                )))
            }
            Raw::Real(x) => C64::new(x, 0.0),
            Raw::Pair([re, im]) => C64::new(re, im),
        };
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(serde::de::Error::custom("boundary parameter must be finite or \"inf\""));
        }
        Ok(BoundaryParam::Finite(a))
    }
}

/// `[F, G] = ⟨εF′, G⟩ − ⟨εF, G′⟩` from values at a common point.
pub fn wronskian_bracket(f: CVec2, fp: CVec2, g: CVec2, gp: CVec2) -> C64 {
    (EPSILON * fp).inner(g) - (EPSILON * f).inner(gp)
}

/// Scalar boundary functionals `(ℓ_α(f), ℓ_α⊥(f))`.
pub fn boundary_ell(alpha: BoundaryParam, f0: C64, fp0: C64) -> (C64, C64) {
    match alpha {
        BoundaryParam::Infinite => (fp0, f0),
        BoundaryParam::Finite(a) => {
            let s = (1.0 + a.norm_sqr()).sqrt();
            ((a.conj() * fp0 - f0) / s, (fp0 + a * f0) / s)
        }
    }
}

/// Vector boundary functionals: first component with ᾱ, second with α.
pub fn boundary_vec(alpha: BoundaryParam, f0: CVec2, fp0: CVec2) -> (CVec2, CVec2) {
    let (l1, p1) = boundary_ell(alpha.conj(), f0.0[0], fp0.0[0]);
    let (l2, p2) = boundary_ell(alpha, f0.0[1], fp0.0[1]);
    (CVec2::new(l1, l2), CVec2::new(p1, p2))
}

/// Matrix boundary operators `(L_α(F), L_α⊥(F))`, applied column by column.
#[allow(non_snake_case)]
pub fn boundary_L(alpha: BoundaryParam, f0: CMat2, fp0: CMat2) -> (CMat2, CMat2) {
    let (l0, p0) = boundary_vec(alpha, f0.col(0), fp0.col(0));
    let (l1, p1) = boundary_vec(alpha, f0.col(1), fp0.col(1));
    (CMat2::from_cols(l0, l1), CMat2::from_cols(p0, p1))
}

/// The Wronskian at 0 expressed through boundary data:
/// `⟨εL(F), L⊥(G)⟩ − ⟨εL⊥(F), L(G)⟩`.
pub fn wronskian_at_zero(lf: CVec2, lf_perp: CVec2, lg: CVec2, lg_perp: CVec2) -> C64 {
    (EPSILON * lf).inner(lg_perp) - (EPSILON * lf_perp).inner(lg)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn constant_identities() {
        assert_eq!(EPSILON * E_PLUS, E_PLUS);
        assert_eq!(EPSILON * E_MINUS, -E_MINUS);
        assert_eq!(EPSILON * P_PLUS, P_PLUS);
        assert_eq!(EPSILON * P_MINUS, -P_MINUS);
        assert_eq!(XI * E_PLUS, E_MINUS);
        assert_eq!(P_PLUS + P_MINUS, IDENTITY);
        assert_eq!(P_PLUS * P_MINUS, CMat2::zero());
        assert_eq!(XI * EPSILON * XI, -EPSILON);
    }

    #[test]
    fn free_brackets() {
        let k = 1.0;
        // e^{-kx}e₋ against e^{kx}e₋ at x = 0
        let w = wronskian_bracket(E_MINUS, E_MINUS * -k, E_MINUS, E_MINUS * k);
        assert!(close(w, c(4.0, 0.0), 1e-15));
        let w = wronskian_bracket(E_PLUS, E_PLUS * I, E_PLUS, E_PLUS * I);
        assert!(close(w, c(0.0, 4.0), 1e-15));
        let w = wronskian_bracket(E_MINUS, -E_MINUS, E_MINUS, -E_MINUS);
        assert!(close(w, ZERO, 1e-15));
    }

    #[test]
    fn boundary_ell_examples() {
        let (l, lp) = boundary_ell(BoundaryParam::Infinite, c(2.0, 0.0), c(3.0, 0.0));
        assert_eq!((l, lp), (c(3.0, 0.0), c(2.0, 0.0)));
        let k = 1.7;
        let (l, lp) = boundary_ell(BoundaryParam::real(0.0), ONE, c(-k, 0.0));
        assert!(close(l, c(-1.0, 0.0), 1e-15) && close(lp, c(-k, 0.0), 1e-15));
        let (l, lp) = boundary_ell(BoundaryParam::Finite(I), ONE, I);
        assert!(close(l, ZERO, 1e-15));
        assert!(close(lp, c(0.0, 2f64.sqrt()), 1e-15));
    }

    #[test]
    fn boundary_matrix_examples() {
        let f0 = CMat2::from_cols(E_PLUS, E_MINUS);
        let (l, lp) = boundary_L(BoundaryParam::Infinite, f0, IDENTITY);
        assert_eq!((l, lp), (IDENTITY, f0));

        let a: f64 = 0.7;
        let s = (1.0 + a * a).sqrt();
        let (l, lp) = boundary_L(BoundaryParam::real(a), IDENTITY, CMat2::zero());
        assert!((l - IDENTITY * (-1.0 / s)).frobenius() < 1e-15);
        assert!((lp - IDENTITY * (a / s)).frobenius() < 1e-15);

        let (_, lp) = boundary_L(BoundaryParam::Finite(I), f0, CMat2::zero());
        let expect = CMat2::diag(-I, I) * f0 * (1.0 / 2f64.sqrt());
        assert!((lp - expect).frobenius() < 1e-15);
    }

    #[test]
    fn boundary_bracket_identity() {
        // Φ₂ has L = −e₂, L⊥ = 0.
        let g = CVec2::new(c(0.3, -1.0), c(2.0, 0.5));
        let w = wronskian_at_zero(-E2, CVec2::zero(), CVec2::zero(), g);
        assert!(close(w, -E1.inner(g), 1e-15));
    }

    #[test]
    fn cauchy_roundtrip() {
        for alpha in [BoundaryParam::Infinite, BoundaryParam::Finite(c(0.3, -1.2)), BoundaryParam::real(0.0)] {
            let l = CMat2::new(c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0), c(3.0, -1.0));
            let lp = CMat2::new(c(0.2, 0.0), c(1.0, 1.0), c(-2.0, 0.5), c(0.0, 0.0));
            let (f0, fp0) = alpha.cauchy_from_boundary(l, lp);
            let (l2, lp2) = boundary_L(alpha, f0, fp0);
            assert!((l2 - l).frobenius() < 1e-14, "{alpha}");
            assert!((lp2 - lp).frobenius() < 1e-14, "{alpha}");
        }
    }

    #[test]
    fn hermitian_eigs() {
        let m = CMat2::new(c(2.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(3.0, 0.0));
        let [a, b] = m.hermitian_eigenvalues();
        assert!((a + b - 5.0).abs() < 1e-14);
        assert!((a * b - 4.0).abs() < 1e-13);
        let m = CMat2::new(c(1.0, 2.0), c(-3.0, 0.5), c(0.2, 0.0), c(0.0, -1.0));
        let s = m.op_norm();
        // σ_max² is the largest eigenvalue of M*M
        let [_, top] = (m.adjoint() * m).hermitian_eigenvalues();
        assert!((s * s - top).abs() < 1e-12);
    }

    #[test]
    fn alpha_serde() {
        let a: BoundaryParam = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(a, BoundaryParam::Infinite);
        let a: BoundaryParam = serde_json::from_str("[1.0, -2.0]").unwrap();
        assert_eq!(a, BoundaryParam::Finite(c(1.0, -2.0)));
        let a: BoundaryParam = serde_json::from_str("0.5").unwrap();
        assert_eq!(a, BoundaryParam::real(0.5));
        assert!(serde_json::from_str::<BoundaryParam>("\"big\"").is_err());
        assert_eq!(serde_json::to_string(&BoundaryParam::Infinite).unwrap(), "\"inf\"");
    }
}
