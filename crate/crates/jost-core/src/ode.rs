//! Dormand–Prince 5(4) with step-size control for complex first-order systems.

use crate::algebra::C64;
use crate::error::{JostError, Result};

#[derive(Clone, Copy, Debug)]
pub struct OdeTolerance {
    pub atol: f64,
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        OdeTolerance { atol: 1e-12, rtol: 1e-12, max_steps: 2_000_000 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates `y′ = f(x, y)` from `x0` to `x1` (either direction), updating `y`
/// in place. `h0` is a hint for the first step; pass 0 to let the solver pick.
/// Returns the last accepted step size, usable as the hint for a following call.
pub fn integrate<F>(mut f: F, x0: f64, x1: f64, y: &mut [C64], tol: &OdeTolerance, h0: f64) -> Result<f64>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let n = y.len();
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(h0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut k1 = vec![C64::default(); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut k5 = k1.clone();
    let mut k6 = k1.clone();
    let mut k7 = k1.clone();
    let mut tmp = k1.clone();
    let mut ynew = k1.clone();

    f(x, y, &mut k1);
    let hmin = 1e-14 * span.abs().max(x0.abs()).max(1.0);
    let mut h = if h0 > hmin { h0.min(span.abs()) } else { initial_step(y, &k1, tol, span.abs()) };
    let mut steps = 0usize;
    let mut last_ok = h;

    loop {
        let remaining = (x1 - x) * dir;
        if remaining <= 0.0 {
            break;
        }
        let last = h >= remaining;
        // a truncated final step is not a useful hint for the next call
        let proposed = h;
        if last {
            h = remaining;
        }
        let hs = h * dir;

        for i in 0..n {
            tmp[i] = y[i] + k1[i] * (hs * A21);
        }
        f(x + C2 * hs, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + (k1[i] * A31 + k2[i] * A32) * hs;
        }
        f(x + C3 * hs, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + (k1[i] * A41 + k2[i] * A42 + k3[i] * A43) * hs;
        }
        f(x + C4 * hs, &tmp, &mut k4);
        for i in 0..n {
            tmp[i] = y[i] + (k1[i] * A51 + k2[i] * A52 + k3[i] * A53 + k4[i] * A54) * hs;
        }
        f(x + C5 * hs, &tmp, &mut k5);
        for i in 0..n {
            tmp[i] = y[i] + (k1[i] * A61 + k2[i] * A62 + k3[i] * A63 + k4[i] * A64 + k5[i] * A65) * hs;
        }
        let xend = if last { x1 } else { x + hs };
        f(xend, &tmp, &mut k6);
        for i in 0..n {
            ynew[i] = y[i] + (k1[i] * B1 + k3[i] * B3 + k4[i] * B4 + k5[i] * B5 + k6[i] * B6) * hs;
        }
        f(xend, &ynew, &mut k7);

        // one scale for the whole state: components may pass through zero
        let ymax = y.iter().chain(ynew.iter()).map(|v| v.norm()).fold(0.0, f64::max);
        let sc = tol.atol + tol.rtol * ymax;
        let mut err = 0.0f64;
        for i in 0..n {
            let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * hs;
            err = err.max(e.norm() / sc);
        }
        if !err.is_finite() {
            return Err(JostError::Integration(format!("non-finite state near x = {x}")));
        }

        if err <= 1.0 {
            x = xend;
            y.copy_from_slice(&ynew);
            std::mem::swap(&mut k1, &mut k7);
            last_ok = if last { proposed.max(h) } else { h };
            if last {
                break;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
        if h < hmin {
            return Err(JostError::Integration(format!(
                "step size underflow at x = {x} (stiff or singular system)"
            )));
        }
        steps += 1;
        if steps > tol.max_steps {
            return Err(JostError::Integration(format!("too many steps before reaching x = {x1}")));
        }
    }
    Ok(last_ok)
}

fn initial_step(y: &[C64], f0: &[C64], tol: &OdeTolerance, span: f64) -> f64 {
    let mut d0 = 0.0f64;
    let mut d1 = 0.0f64;
    for (yi, fi) in y.iter().zip(f0) {
        let sc = tol.atol + tol.rtol * yi.norm();
        d0 = d0.max(yi.norm() / sc);
        d1 = d1.max(fi.norm() / sc);
    }
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span).max(1e-10 * span)
}
