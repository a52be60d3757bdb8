//! Piecewise-uniform node grids whose piece boundaries sit on the
//! discontinuities of the potential.

use crate::algebra::{C64, ZERO};
use crate::quad::simpson_uniform;

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub x: Vec<f64>,
    /// Inclusive node ranges; spacing is uniform inside each piece.
    pub pieces: Vec<(usize, usize)>,
}

impl Grid {
    /// Nodes on `[a, b]` with step at most `h`, every piece holding an even
    /// number (at least `min_intervals`) of intervals.
    pub fn build(a: f64, b: f64, cuts: &[f64], h: f64, min_intervals: usize) -> Grid {
        assert!(b >= a && h > 0.0);
        if b - a <= 1e-14 * b.abs().max(1.0) {
            return Grid { x: vec![a], pieces: Vec::new() };
        }
        let tiny = 1e-12 * (b - a).max(1.0);
        let mut bounds = vec![a];
        let mut inner: Vec<f64> = cuts.iter().copied().filter(|&c| c > a + tiny && c < b - tiny).collect();
        inner.sort_by(f64::total_cmp);
        for c in inner {
            if c - bounds.last().unwrap() > tiny {
                bounds.push(c);
            }
        }
        if b - bounds.last().unwrap() <= tiny {
            bounds.pop();
        }
        bounds.push(b);

        let mut x = vec![a];
        let mut pieces = Vec::new();
        for w in bounds.windows(2) {
            let (p0, p1) = (w[0], w[1]);
            let mut n = ((p1 - p0) / h).ceil() as usize;
            n = n.max(min_intervals);
            if n % 2 == 1 {
                n += 1;
            }
            let start = x.len() - 1;
            let step = (p1 - p0) / n as f64;
            for i in 1..n {
                x.push(p0 + i as f64 * step);
            }
            x.push(p1);
            pieces.push((start, x.len() - 1));
        }
        Grid { x, pieces }
    }

    /// Halves every interval; node `i` of `self` becomes node `2i`.
    pub fn refine(&self) -> Grid {
        let mut x = vec![self.x[0]];
        for w in self.x.windows(2) {
            x.push(0.5 * (w[0] + w[1]));
            x.push(w[1]);
        }
        let pieces = self.pieces.iter().map(|&(a, b)| (2 * a, 2 * b)).collect();
        Grid { x, pieces }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn start(&self) -> f64 {
        self.x[0]
    }

    pub fn end(&self) -> f64 {
        *self.x.last().unwrap()
    }

    /// Composite Simpson over all pieces.
    pub fn simpson(&self, values: &[C64]) -> C64 {
        assert_eq!(values.len(), self.x.len());
        let mut s = ZERO;
        for &(i0, i1) in &self.pieces {
            let h = (self.x[i1] - self.x[i0]) / (i1 - i0) as f64;
            s += simpson_uniform(&values[i0..=i1], h);
        }
        s
    }
}
