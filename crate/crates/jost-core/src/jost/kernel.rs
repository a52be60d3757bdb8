//! Weighted Green kernels `K_j(x) = e^{−σ_j x} L_j(x)` as finite sums of
//! exponentials, one list per side of the crease at `x = 0`.

use super::JostIndex;
use crate::algebra::{CMat2, CVec2, C64, I, P_MINUS, P_PLUS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x > 0`
    Pos,
    /// `x < 0`
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proj {
    Plus,
    Minus,
}

impl Proj {
    pub fn matrix(self) -> CMat2 {
        match self {
            Proj::Plus => P_PLUS,
            Proj::Minus => P_MINUS,
        }
    }

    pub fn apply(self, v: CVec2) -> CVec2 {
        match self {
            Proj::Plus => {
                let s = (v[0] + v[1]) * 0.5;
                CVec2::new(s, s)
            }
            Proj::Minus => {
                let s = (v[0] - v[1]) * 0.5;
                CVec2::new(s, -s)
            }
        }
    }
}

/// `coeff · e^{rate·x} · proj` on its side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelTerm {
    pub side: Side,
    pub coeff: C64,
    pub rate: C64,
    pub proj: Proj,
}

fn t(side: Side, coeff: C64, rate: C64, proj: Proj) -> KernelTerm {
    KernelTerm { side, coeff, rate, proj }
}

/// Terms of `K_j` for `k` in the closed sector `0 ≤ arg k ≤ π/4`.
pub fn kernel_terms(j: JostIndex, k: C64) -> Vec<KernelTerm> {
    use Proj::{Minus, Plus};
    use Side::{Neg, Pos};
    let a = 1.0 / (2.0 * k);
    let b = 1.0 / (2.0 * I * k);
    let ik = I * k;
    // A  = e^{−k|x|}/(2k) P₋
    let big_a = [t(Pos, a, -k, Minus), t(Neg, a, k, Minus)];
    let mut terms: Vec<KernelTerm> = match j {
        JostIndex::MinusOne => vec![
            // A₋ = sinh(kx)/k χ₋ P₋,  B₋ = −sin(kx)/k χ₋ P₊
            t(Neg, a, k, Minus),
            t(Neg, -a, -k, Minus),
            t(Neg, -b, ik, Plus),
            t(Neg, b, -ik, Plus),
        ],
        JostIndex::PlusOne => {
            // A + B₊,  B₊ = sin(kx)/k χ₊ P₊
            let mut v = big_a.to_vec();
            v.push(t(Pos, b, ik, Plus));
            v.push(t(Pos, -b, -ik, Plus));
            v
        }
        JostIndex::PlusI => {
            let mut v = big_a.to_vec();
            v.push(t(Neg, -b, ik, Plus));
            v.push(t(Neg, b, -ik, Plus));
            v
        }
        JostIndex::MinusI => {
            // A + B,  B = e^{ik|x|}/(2ik) P₊
            let mut v = big_a.to_vec();
            v.push(t(Pos, b, ik, Plus));
            v.push(t(Neg, b, -ik, Plus));
            v
        }
    };
    let sigma = j.sigma(k);
    for term in &mut terms {
        term.rate -= sigma;
    }
    terms
}

/// `K_j(x)`; the kernels are continuous at `x = 0`.
#[allow(non_snake_case)]
pub fn kernel_K(j: JostIndex, k: C64, x: f64) -> CMat2 {
    let side = if x > 0.0 { Side::Pos } else { Side::Neg };
    kernel_terms(j, k)
        .into_iter()
        .filter(|term| term.side == side)
        .fold(CMat2::zero(), |acc, term| acc + term.proj.matrix() * (term.coeff * (term.rate * x).exp()))
}

/// `d/dx K_j(x)` away from the crease.
#[allow(non_snake_case)]
pub fn kernel_K_prime(j: JostIndex, k: C64, x: f64) -> CMat2 {
    let side = if x > 0.0 { Side::Pos } else { Side::Neg };
    kernel_terms(j, k)
        .into_iter()
        .filter(|term| term.side == side)
        .fold(CMat2::zero(), |acc, term| {
            acc + term.proj.matrix() * (term.coeff * term.rate * (term.rate * x).exp())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn minus_one_vanishes_for_positive_x() {
        for x in [1e-9, 0.3, 5.0] {
            assert_eq!(kernel_K(JostIndex::MinusOne, c(1.3, 0.2), x), CMat2::zero());
        }
    }

    #[test]
    fn displayed_forms() {
        let k = c(1.1, 0.4);
        let ik = I * k;
        for x in [0.2, 1.7] {
            let expect = P_MINUS * ((-(k + ik) * x).exp() / (2.0 * k));
            assert!((kernel_K(JostIndex::PlusI, k, x) - expect).frobenius() < 1e-15);
            let xn = -x;
            let expect = P_MINUS * (((k - ik) * xn).exp() / (2.0 * k))
                - P_PLUS * ((-ik * xn).exp() * (k * xn).sin() / k);
            assert!((kernel_K(JostIndex::PlusI, k, xn) - expect).frobenius() < 1e-14);
            let expect = (P_MINUS * (-(k - ik) * x).exp() - P_PLUS * (I * (2.0 * ik * x).exp())) * (1.0 / (2.0 * k));
            assert!((kernel_K(JostIndex::MinusI, k, x) - expect).frobenius() < 1e-15);
            let expect = P_MINUS * ((-2.0 * k * x).exp() / (2.0 * k)) + P_PLUS * ((-k * x).exp() * (k * x).sin() / k);
            assert!((kernel_K(JostIndex::PlusOne, k, x) - expect).frobenius() < 1e-15);
            let expect = (P_MINUS * (k * xn).sinh() - P_PLUS * (k * xn).sin()) * ((k * xn).exp() / k);
            assert!((kernel_K(JostIndex::MinusOne, k, xn) - expect).frobenius() < 1e-14);
        }
        let at0 = (P_MINUS - P_PLUS * I) * (1.0 / (2.0 * k));
        assert!((kernel_K(JostIndex::MinusI, k, 0.0) - at0).frobenius() < 1e-15);
    }

    #[test]
    fn continuity_at_crease() {
        let k = c(0.9, 0.5);
        for j in JostIndex::ALL {
            let d = kernel_K(j, k, 1e-12) - kernel_K(j, k, -1e-12);
            assert!(d.frobenius() < 1e-10, "{j:?}");
        }
    }

    #[test]
    fn side_rates_are_bounded() {
        // every term is bounded on its own side throughout the closed sector
        for arg in [0.0, 0.3, std::f64::consts::FRAC_PI_4] {
            let k = C64::from_polar(2.0, arg);
            for j in JostIndex::ALL {
                for term in kernel_terms(j, k) {
                    let ok = match term.side {
                        Side::Pos => term.rate.re <= 1e-12,
                        Side::Neg => term.rate.re >= -1e-12,
                    };
                    assert!(ok, "{j:?} {term:?}");
                }
            }
        }
    }
}
