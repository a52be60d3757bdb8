//! Integration of `−εF″ + QF = λF` through a list of nodes.

use crate::algebra::{CVec2, C64};
use crate::error::Result;
use crate::ode::{integrate, OdeTolerance};
use crate::potential::MatrixPotential;

/// Values and derivatives of each column at every node.
pub struct Flow {
    pub f: Vec<Vec<CVec2>>,
    pub fp: Vec<Vec<CVec2>>,
}

/// Propagates the Cauchy data given at `xs[0]` through `xs[1], xs[2], …`
/// (monotone, either direction). Every discontinuity of `Q` must be a node.
pub fn propagate(
    mp: &MatrixPotential,
    lambda: C64,
    xs: &[f64],
    f0: &[CVec2],
    fp0: &[CVec2],
    tol: &OdeTolerance,
) -> Result<Flow> {
    let ncol = f0.len();
    let mut state = vec![C64::default(); 4 * ncol];
    for c in 0..ncol {
        state[4 * c] = f0[c][0];
        state[4 * c + 1] = f0[c][1];
        state[4 * c + 2] = fp0[c][0];
        state[4 * c + 3] = fp0[c][1];
    }
    let mut f = vec![Vec::with_capacity(xs.len()); ncol];
    let mut fp = vec![Vec::with_capacity(xs.len()); ncol];
    let record = |state: &[C64], f: &mut Vec<Vec<CVec2>>, fp: &mut Vec<Vec<CVec2>>| {
        for c in 0..ncol {
            f[c].push(CVec2::new(state[4 * c], state[4 * c + 1]));
            fp[c].push(CVec2::new(state[4 * c + 2], state[4 * c + 3]));
        }
    };
    record(&state, &mut f, &mut fp);
    let mut hint = 0.0;
    for w in xs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let seg = mp.segment_for(a.min(b), a.max(b)).copied();
        let rhs = |x: f64, y: &[C64], d: &mut [C64]| {
            let q = match &seg {
                Some(s) => mp.eval_on(s, x),
                None => crate::algebra::CMat2::zero(),
            };
            for c in 0..ncol {
                let v = CVec2::new(y[4 * c], y[4 * c + 1]);
                let m = q * v - v * lambda;
                d[4 * c] = y[4 * c + 2];
                d[4 * c + 1] = y[4 * c + 3];
                // ε swaps the two components
                d[4 * c + 2] = m[1];
                d[4 * c + 3] = m[0];
            }
        };
        hint = integrate(rhs, a, b, &mut state, tol, hint)?;
        record(&state, &mut f, &mut fp);
    }
    Ok(Flow { f, fp })
}
