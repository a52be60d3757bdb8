//! Quadrature rules: Gauss–Legendre nodes, adaptive Gauss–Kronrod and
//! composite Simpson on uniform pieces.

use crate::algebra::{C64, ZERO};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &mut impl FnMut(f64) -> C64, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Adaptive G7/K15 integration of a complex integrand with absolute tolerance `tol`.
pub fn integrate(mut f: impl FnMut(f64) -> C64, a: f64, b: f64, tol: f64) -> C64 {
    if a == b {
        return ZERO;
    }
    let mut stack = vec![(a, b, tol)];
    let mut total = ZERO;
    let mut depth_guard = 0usize;
    while let Some((lo, hi, t)) = stack.pop() {
        let (val, err) = gk15(&mut f, lo, hi);
        depth_guard += 1;
        if err <= t || (hi - lo).abs() < 1e-12 * (b - a).abs() || depth_guard > 200_000 {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    total
}

/// Integrate over `[a, b]` splitting at the given interior points.
pub fn integrate_pieces(mut f: impl FnMut(f64) -> C64, cuts: &[f64], tol: f64) -> C64 {
    let n = cuts.len().saturating_sub(1).max(1) as f64;
    cuts.windows(2).map(|w| integrate(&mut f, w[0], w[1], tol / n)).sum()
}

/// Composite Simpson on uniform nodes; `values.len()` must be odd.
pub fn simpson_uniform(values: &[C64], h: f64) -> C64 {
    let n = values.len();
    assert!(n % 2 == 1 && n >= 3, "Simpson needs an odd number ≥ 3 of nodes");
    let mut s = values[0] + values[n - 1];
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        s += *v * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * (h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exactness() {
        for n in [1, 2, 5, 12] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..2 * n {
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-14, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn kronrod_exact_on_polynomials() {
        let mut f = |x: f64| C64::new(x.powi(20), 0.0);
        let (v, _) = gk15(&mut f, -1.0, 1.0);
        assert!((v.re - 2.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_reference_values() {
        let v = integrate(|y| C64::new((2.0 * y).sin(), 0.0), 0.0, 1.0, 1e-13);
        assert!((v.re - (1.0 - 2f64.cos()) / 2.0).abs() < 1e-13);
        let v = integrate(|y| C64::new(0.0, (200.0 * y).cos()), 0.0, 3.0, 1e-12);
        assert!((v.im - (600f64).sin() / 200.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_order() {
        let f = |x: f64| C64::new(x.exp(), 0.0);
        let err = |n: usize| {
            let h = 1.0 / n as f64;
            let v: Vec<C64> = (0..=n).map(|i| f(i as f64 * h)).collect();
            (simpson_uniform(&v, h).re - (1f64.exp() - 1.0)).abs()
        };
        let ratio = err(10) / err(20);
        assert!((ratio - 16.0).abs() < 0.5, "{ratio}");
    }
}
