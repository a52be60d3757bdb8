use jost_core::algebra::{c, C64};
use jost_core::jost::{jost_at, jost_single, kernel_K, JostIndex, NeumannConfig};
use jost_core::{MatrixPotential, Potential};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_4;

fn long_potential() -> Potential {
    Potential::pwc(vec![0.0, 1.5, 4.0], vec![c(0.8, -0.6), c(-0.5, 0.4)]).unwrap()
}

#[test]
fn plus_i_changes_with_r_only_by_multiples_of_minus_one() {
    let p = long_potential();
    let mp = MatrixPotential::new(&p);
    for k in [c(1.2, 0.0), C64::from_polar(1.5, 0.4)] {
        let base = NeumannConfig::default();
        let a = jost_single(&mp, k, JostIndex::PlusI, &base).unwrap();
        let b = jost_single(&mp, k, JostIndex::PlusI, &base.with_r(a.r + 0.6)).unwrap();
        assert!(b.r > a.r);
        let m = jost_single(&mp, k, JostIndex::MinusOne, &base).unwrap();
        let (fa, fpa) = a.at_zero();
        let (fb, fpb) = b.at_zero();
        let (g, gp) = m.at_zero();
        let d = [fa[0] - fb[0], fa[1] - fb[1], fpa[0] - fpb[0], fpa[1] - fpb[1]];
        let v = [g[0], g[1], gp[0], gp[1]];
        let num: C64 = d.iter().zip(&v).map(|(x, y)| x * y.conj()).sum();
        let den: f64 = v.iter().map(|y| y.norm_sqr()).sum();
        let t = num / den;
        let resid: f64 = d.iter().zip(&v).map(|(x, y)| (x - y * t).norm_sqr()).sum::<f64>().sqrt();
        let scale: f64 = d.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
        assert!(resid < 1e-8 * scale.max(1.0), "k {k}: residual {resid:.2e}, difference {scale:.2e}");
    }
}

#[test]
fn symmetry_extension_keeps_the_equation() {
    let p = long_potential();
    let mp = MatrixPotential::new(&p);
    for k in [c(-1.1, 0.3), c(0.2, 1.4), c(0.9, -0.7), c(-0.5, -1.0)] {
        let set = jost_at(&p, k, &NeumannConfig::default()).unwrap();
        for j in JostIndex::ALL {
            let s = set.get(j);
            assert!(s.ode_residual(&mp) < 1e-6, "k {k} {j:?}: {}", s.ode_residual(&mp));
        }
    }
}

proptest! {
    #[test]
    fn kernel_norm_bound(modulus in 0.1f64..20.0, arg in 0.0f64..FRAC_PI_4, x in -30.0f64..30.0, slot in 0usize..4) {
        let k = C64::from_polar(modulus, arg);
        let j = JostIndex::ALL[slot];
        prop_assert!(kernel_K(j, k, x).op_norm() <= 2.0 / modulus + 1e-14);
    }
}
