use jost_core::algebra::{c, BoundaryParam, C64};
use jost_core::jost::NeumannConfig;
use jost_core::oracle::{bound_states, classical_density};
use jost_core::scattering::{gamma_boundary_relations, gamma_extract, gamma_from, gamma_invariants_check, pair_from_gamma, regular_solutions};
use jost_core::spectral::{find_eigenvalues, SpectralPoint};
use jost_core::Potential;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pwc(seed: u64) -> Potential {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let mut breaks = vec![0.0];
    for i in 1..=n {
        breaks.push(2.0 * i as f64 / n as f64);
    }
    let raw: Vec<C64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let l1: f64 = raw.iter().map(|v| v.norm() * 2.0 / n as f64).sum();
    let s = rng.gen_range(0.2..1.0) / l1;
    Potential::pwc(breaks, raw.into_iter().map(|v| v * s).collect()).unwrap()
}

#[test]
fn both_pipelines_agree_on_random_potentials() {
    let cfg = NeumannConfig::default();
    for seed in 0..3 {
        let p = random_pwc(seed);
        for lambda in [0.3, 1.7, 6.0] {
            let k: f64 = f64::sqrt(lambda);
            let sp = SpectralPoint::new(&p, k, &cfg).unwrap();
            for alpha in [BoundaryParam::Infinite, BoundaryParam::real(0.0), BoundaryParam::real(1.0)] {
                let a = sp.density(alpha).unwrap();
                let reg = regular_solutions(&p, alpha, c(lambda, 0.0), &cfg).unwrap();
                let g = gamma_from(&sp.set, &reg).unwrap();
                assert!(g.residual < 1e-8);
                let b = pair_from_gamma(&g, sp.e.norm_sq).unwrap();
                assert!((a.value - b.value).abs() <= 1e-7 * a.value, "seed {seed} λ {lambda}: {} vs {}", a.value, b.value);
                assert!((a.psi - b.psi).norm() <= 1e-7);
                let (_, lp) = sp.e.boundary(alpha);
                for v in gamma_boundary_relations(&g, lp, sp.det(alpha)) {
                    assert!(v < 1e-8, "{v}");
                }
                assert!(gamma_invariants_check(&g).max_violation < 1e-8);
            }
        }
    }
}

#[test]
fn square_well_eigenvalue_case() {
    let cfg = NeumannConfig::default();
    let p = Potential::pwc(vec![0.0, std::f64::consts::PI], vec![c(-4.0, 0.0)]).unwrap();
    let alpha = BoundaryParam::Infinite;
    let kappas = bound_states(&p, alpha, 0.05, 2.0, 400).unwrap();
    assert!(!kappas.is_empty());
    let found = find_eigenvalues(&p, alpha, 0.05, 2.0, &cfg).unwrap();
    assert_eq!(found.len(), kappas.len());
    for (&k, &kappa) in found.iter().zip(&kappas) {
        assert!((k - kappa).abs() < 1e-6, "{k} vs {kappa}");
        let sp = SpectralPoint::new(&p, k, &cfg).unwrap();
        let pm = sp.point_mass(alpha).unwrap();
        assert!((pm.psi + 1.0).norm() < 1e-8);
        let g = gamma_extract(&p, alpha, k, &cfg).unwrap();
        assert!(g.eigenvalue_case, "{g:?}");
        let pg = pair_from_gamma(&g, sp.e.norm_sq).unwrap();
        assert!((pg.value - pm.value).abs() < 1e-6 * pm.value, "{} vs {}", pg.value, pm.value);
        assert!((pg.psi - pm.psi).norm() < 1e-6);
        assert!(gamma_invariants_check(&g).max_violation < 1e-6);
    }
    for lambda in [0.5, 2.0, 7.0] {
        let d = SpectralPoint::new(&p, f64::sqrt(lambda), &cfg).unwrap().density(alpha).unwrap();
        let cl = classical_density(&p, alpha, lambda).unwrap();
        assert!((d.value - cl / 2.0).abs() < 1e-6 * d.value);
        assert!((d.psi - 1.0).norm() < 1e-8);
    }
}
