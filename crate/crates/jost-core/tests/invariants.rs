use jost_core::algebra::{c, wronskian_bracket, BoundaryParam, C64};
use jost_core::born::{born_density, born_psi};
use jost_core::jost::{jost_at, select_r, JostIndex, JostSolution, NeumannConfig};
use jost_core::spectral::{m_function, SpectralPoint};
use jost_core::Potential;
use proptest::prelude::*;

fn potential() -> impl Strategy<Value = Potential> {
    (1usize..=4, 0.5f64..3.0)
        .prop_flat_map(|(n, len)| (Just(len), prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n)))
        .prop_map(|(len, vals)| {
            let n = vals.len();
            let breaks = (0..=n).map(|i| len * i as f64 / n as f64).collect();
            Potential::pwc(breaks, vals.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap()
        })
}

fn alpha() -> impl Strategy<Value = BoundaryParam> {
    prop_oneof![Just(BoundaryParam::Infinite), (-3.0f64..3.0).prop_map(BoundaryParam::real)]
}

fn bracket(f: &JostSolution, g: &JostSolution) -> C64 {
    let (f0, fp0) = f.at_zero();
    let (g0, gp0) = g.at_zero();
    wronskian_bracket(f0, fp0, g0, gp0)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn wronskian_table(p in potential(), k in 0.3f64..4.0) {
        let set = jost_at(&p, c(k, 0.0), &NeumannConfig::default()).unwrap();
        let m1 = set.get(JostIndex::MinusOne);
        let p1 = set.get(JostIndex::PlusOne);
        let pi = set.get(JostIndex::PlusI);
        let mi = set.corrected_minus_i();
        let scale = 4.0 * k;
        for z in [bracket(m1, m1), bracket(m1, pi), bracket(m1, &mi), bracket(pi, &mi), bracket(&mi, pi)] {
            prop_assert!(z.norm() < 1e-7 * scale, "{z}");
        }
        prop_assert!((bracket(m1, p1) - scale).norm() < 1e-7 * scale);
        prop_assert!((bracket(pi, pi) - c(0.0, scale)).norm() < 1e-7 * scale);
        prop_assert!((bracket(&mi, &mi) + c(0.0, scale)).norm() < 1e-7 * scale);
    }

    #[test]
    fn gauge_invariance(p in potential(), k in 0.3f64..4.0, a in alpha(), cr in -3.0f64..3.0, ci in -3.0f64..3.0) {
        let sp = SpectralPoint::new(&p, k, &NeumannConfig::default()).unwrap();
        let g = sp.with_gauge(c(cr, ci));
        prop_assert!(rel(g.det(a), sp.det(a)) < 1e-10);
        if !sp.is_near_eigenvalue(a) {
            let (d0, d1) = (sp.density(a).unwrap(), g.density(a).unwrap());
            prop_assert!((d0.value - d1.value).abs() < 1e-10 * d0.value);
            prop_assert!((d0.psi - d1.psi).norm() < 1e-10);
            let (m0, m1) = (sp.m(a).unwrap(), g.m(a).unwrap());
            prop_assert!((m0 - m1).frobenius() < 1e-10 * m0.frobenius());
        }
    }

    #[test]
    fn density_is_rank_one_psd_with_unimodular_psi(p in potential(), k in 0.3f64..4.0, a in alpha()) {
        let sp = SpectralPoint::new(&p, k, &NeumannConfig::default()).unwrap();
        prop_assume!(!sp.is_near_eigenvalue(a));
        let s = sp.sigma_density(a).unwrap();
        let d = sp.density(a).unwrap();
        prop_assert!((s - s.adjoint()).frobenius() < 1e-12 * s.frobenius());
        let [lo, hi] = s.hermitian_eigenvalues();
        prop_assert!(lo.abs() < 1e-10 * hi && lo > -1e-10 * hi);
        prop_assert!((hi - 2.0 * d.value).abs() < 1e-10 * hi);
        prop_assert!((d.psi.norm() - 1.0).abs() < 1e-8);
        prop_assert!((s.0[0][1] - d.psi * d.value).norm() < 1e-10 * d.value);
    }

    #[test]
    fn herglotz(p in potential(), re in -4.0f64..4.0, im in 0.1f64..2.0, a in alpha()) {
        let m = m_function(&p, a, c(re, im), &NeumannConfig::default()).unwrap();
        prop_assert!(m.im_min_eig() > 0.0);
    }

    #[test]
    fn born_error_is_quadratic(p in potential(), lambda in 0.5f64..6.0, a in alpha()) {
        let cfg = NeumannConfig::default();
        let l1 = p.l1_norm();
        let mut last = f64::INFINITY;
        for eps in [0.02, 0.01] {
            let q = p.scaled(c(eps / l1, 0.0));
            let k: f64 = lambda.sqrt();
            prop_assume!(!matches!(a, BoundaryParam::Finite(x) if (x.re - k).abs() < 0.2));
            let d = SpectralPoint::new(&q, k, &cfg).unwrap().density(a).unwrap();
            let err = (d.value - born_density(&q, a, lambda).unwrap()).abs() / d.value
                + (d.psi - born_psi(&q, a, lambda).unwrap()).norm();
            prop_assert!(err < 50.0 * eps * eps, "eps {eps}: {err}");
            prop_assert!(err < last);
            last = err;
        }
    }

    #[test]
    fn split_point_satisfies_contraction(p in potential(), delta in 0.1f64..5.0) {
        let r = select_r(&p, delta);
        prop_assert!(2.0 / delta * p.l1_tail(r) <= 0.45 + 1e-12);
        if r >= 1e-3 {
            prop_assert!(2.0 / delta * p.l1_tail(r - 1e-3) > 0.45 - 1e-12);
        }
    }
}
