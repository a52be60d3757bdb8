//! Extension of the Jost solutions from the closed sector `0 ≤ arg k ≤ π/4`
//! to every `k ≠ 0`.

use super::{JostIndex, JostSet, JostSolution};
use crate::algebra::{C64, I, XI, ZERO};
use crate::error::{JostError, Result};
use crate::potential::MatrixPotential;
use std::f64::consts::{FRAC_PI_4, PI};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryStep {
    /// `k ↦ k̄`, `Q ↦ Q̄`; `F_{±i}(k) = conj F_{∓i}(k̄)`, `F_{±1}(k) = conj F_{±1}(k̄)`.
    Conjugate,
    /// `k ↦ −ik`, `Q ↦ −ξQξ`; `F_{±i}(k) = ξF_{∓1}(−ik)`, `F_{±1}(k) = ξF_{±i}(−ik)`.
    Rotate,
    /// `k ↦ −k`; `F_{±i}(k) = F_{∓i}(−k)`, `F_{±1}(k) = F_{∓1}(−k)`.
    Negate,
}

impl SymmetryStep {
    fn forward(self, k: C64) -> C64 {
        match self {
            SymmetryStep::Conjugate => k.conj(),
            SymmetryStep::Rotate => -I * k,
            SymmetryStep::Negate => -k,
        }
    }

    pub fn transform_potential(self, mp: MatrixPotential) -> MatrixPotential {
        match self {
            SymmetryStep::Conjugate => mp.conjugated(),
            SymmetryStep::Rotate => mp.rotated(),
            SymmetryStep::Negate => mp,
        }
    }

    /// Solutions at the pre-image of `k` from the solutions at `k`.
    fn pull_back(self, set: &JostSet) -> [JostSolution; 4] {
        use JostIndex::*;
        let k_prev = match self {
            SymmetryStep::Conjugate => set.k.conj(),
            SymmetryStep::Rotate => I * set.k,
            SymmetryStep::Negate => -set.k,
        };
        let src = |j: JostIndex| set.get(j);
        let build = |target: JostIndex, from: JostIndex| -> JostSolution {
            let s = src(from);
            match self {
                SymmetryStep::Conjugate => s.map(target, k_prev, |v| v.conj(), |r| r.conj()),
                SymmetryStep::Rotate => s.map(target, k_prev, |v| XI * v, |r| r),
                SymmetryStep::Negate => s.map(target, k_prev, |v| v, |r| r),
            }
        };
        match self {
            SymmetryStep::Conjugate => [
                build(MinusOne, MinusOne),
                build(PlusOne, PlusOne),
                build(PlusI, MinusI),
                build(MinusI, PlusI),
            ],
            SymmetryStep::Rotate => [
                build(MinusOne, MinusI),
                build(PlusOne, PlusI),
                build(PlusI, MinusOne),
                build(MinusI, PlusOne),
            ],
            SymmetryStep::Negate => [
                build(MinusOne, PlusOne),
                build(PlusOne, MinusOne),
                build(PlusI, MinusI),
                build(MinusI, PlusI),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorMap {
    pub k: C64,
    pub base_k: C64,
    /// Applied in order to `k` to reach `base_k`.
    pub steps: Vec<SymmetryStep>,
}

impl SectorMap {
    /// Solutions at `k` from the solutions at `base_k` for the transformed potential.
    pub fn pull_back(&self, base: JostSet) -> JostSet {
        let mut set = base;
        for step in self.steps.iter().rev() {
            let sols = step.pull_back(&set);
            let k_prev = sols[0].k;
            set = JostSet { k: k_prev, r: set.r, delta: set.delta, sols, beta1: None };
        }
        if self.steps.is_empty() {
            return set;
        }
        set.beta1 = None;
        set
    }
}

/// Reduces `k ≠ 0` to the closed sector `0 ≤ arg k ≤ π/4`.
pub fn sector_map(k: C64) -> Result<SectorMap> {
    if k == ZERO || !(k.re.is_finite() && k.im.is_finite()) {
        return Err(JostError::Domain("k must be finite and non-zero".into()));
    }
    let tol = 1e-14;
    let mut steps = Vec::new();
    let mut cur = k;
    for _ in 0..4 {
        let a = cur.arg();
        let step = if a >= -tol && a <= FRAC_PI_4 + tol {
            break;
        } else if a < 0.0 && a >= -FRAC_PI_4 - tol {
            SymmetryStep::Conjugate
        } else if a > FRAC_PI_4 && a <= 3.0 * FRAC_PI_4 + tol {
            SymmetryStep::Rotate
        } else {
            debug_assert!(a > 3.0 * FRAC_PI_4 || a < -FRAC_PI_4 || a.abs() > PI - tol);
            SymmetryStep::Negate
        };
        steps.push(step);
        cur = step.forward(cur);
    }
    Ok(SectorMap { k, base_k: cur, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;

    #[test]
    fn examples() {
        let m = sector_map(c(1.0, 0.3)).unwrap();
        assert!(m.steps.is_empty());
        let m = sector_map(C64::from_polar(1.0, -PI / 8.0)).unwrap();
        assert_eq!(m.steps, vec![SymmetryStep::Conjugate]);
        let m = sector_map(c(0.0, 2.0)).unwrap();
        assert_eq!(m.steps, vec![SymmetryStep::Rotate]);
        assert!((m.base_k - c(2.0, 0.0)).norm() < 1e-15);
        assert!(sector_map(ZERO).is_err());
    }

    #[test]
    fn every_direction_reaches_the_sector() {
        for i in 0..64 {
            let a = -PI + (i as f64 + 0.5) * 2.0 * PI / 64.0;
            let m = sector_map(C64::from_polar(1.5, a)).unwrap();
            let b = m.base_k.arg();
            assert!((-1e-12..=FRAC_PI_4 + 1e-12).contains(&b), "{a} -> {b}");
            assert!((m.base_k.norm() - 1.5).abs() < 1e-14);
            assert!(m.steps.len() <= 3);
        }
    }
}
