use jost_core::algebra::{c, wronskian_bracket, BoundaryParam, CMat2, C64, E_MINUS, I, P_MINUS, P_PLUS};
use jost_core::born::{born_density, born_psi, weighted_integral};
use jost_core::jost::{asymptotic_reference, jost_at, JostIndex, JostSolution, NeumannConfig};
use jost_core::oracle::{bound_states, brute_force_jost, classical_density, classical_point_mass};
use jost_core::scattering::{gamma_from, pair_from_gamma, regular_solutions};
use jost_core::spectral::{find_eigenvalues, im_m_identity_check, m_asymptotic, m_function, SpectralPoint};
use jost_core::Potential;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn well() -> Potential {
    Potential::pwc(vec![0.0, PI], vec![c(-4.0, 0.0)]).unwrap()
}

/// Piecewise constant on `[0, 2]` with `‖q‖_{L¹} = l1`.
fn random_pwc(rng: &mut ChaCha8Rng, l1: f64) -> Potential {
    let n = rng.gen_range(1..=5);
    let breaks: Vec<f64> = (0..=n).map(|i| 2.0 * i as f64 / n as f64).collect();
    let raw: Vec<C64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm: f64 = raw.iter().map(|v| v.norm() * 2.0 / n as f64).sum();
    Potential::pwc(breaks, raw.into_iter().map(|v| v * (l1 / norm)).collect()).unwrap()
}

fn free_golden() -> Outcome {
    let t = Instant::now();
    let cfg = NeumannConfig::default();
    let z = Potential::zero();
    let mut worst = 0.0f64;
    let s = SpectralPoint::new(&z, 1.0, &cfg).map_err(|e| e.to_string())?.density(BoundaryParam::Infinite).unwrap();
    worst = worst.max(rel(s.value, 0.5 / PI)).max((s.psi - 1.0).norm());
    let s = SpectralPoint::new(&z, 2.0, &cfg).unwrap().density(BoundaryParam::real(0.0)).unwrap();
    worst = worst.max(rel(s.value, 0.25 / PI)).max((s.psi - 1.0).norm());
    for lambda in [c(1.0, 0.0), c(4.0, 0.0), c(-2.0, 0.5), c(3.0, 1.0)] {
        let mi = m_function(&z, BoundaryParam::Infinite, lambda, &cfg).unwrap();
        let k = mi.k;
        let expect = (P_PLUS * I + P_MINUS) * k;
        worst = worst.max((mi.m - expect).frobenius() / expect.frobenius());
        let m0 = m_function(&z, BoundaryParam::real(0.0), lambda, &cfg).unwrap();
        let expect = (P_PLUS * I - P_MINUS) * (1.0 / k);
        worst = worst.max((m0.m - expect).frobenius() / expect.frobenius());
    }
    let secs = t.elapsed().as_secs_f64();
    check(worst <= 1e-12 && secs < 1.0, format!("max rel error {worst:.2e}, {secs:.3} s"))
}

fn dual_pipeline() -> Outcome {
    let t = Instant::now();
    let cfg = NeumannConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let alphas = [BoundaryParam::Infinite, BoundaryParam::real(0.0), BoundaryParam::real(1.0)];
    let (mut dv, mut dpsi, mut n, mut skipped) = (0.0f64, 0.0f64, 0usize, 0usize);
    for _ in 0..10 {
        let l1 = rng.gen_range(0.2..1.0);
        let p = random_pwc(&mut rng, l1);
        for i in 0..20 {
            let lambda = 0.1 + 9.9 * i as f64 / 19.0;
            let sp = SpectralPoint::new(&p, lambda.sqrt(), &cfg).map_err(|e| e.to_string())?;
            for alpha in alphas {
                if sp.is_near_eigenvalue(alpha) {
                    skipped += 1;
                    continue;
                }
                let a = sp.density(alpha).map_err(|e| e.to_string())?;
                let reg = regular_solutions(&p, alpha, c(lambda, 0.0), &cfg).map_err(|e| e.to_string())?;
                let g = gamma_from(&sp.set, &reg).map_err(|e| e.to_string())?;
                let b = pair_from_gamma(&g, sp.e.norm_sq).map_err(|e| e.to_string())?;
                dv = dv.max(rel(b.value, a.value));
                dpsi = dpsi.max((a.psi - b.psi).norm());
                n += 1;
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        dv <= 1e-7 && dpsi <= 1e-7 && secs < 120.0,
        format!("{n} samples ({skipped} near eigenvalues), max rel dν {dv:.2e}, max |Δψ| {dpsi:.2e}, {secs:.1} s"),
    )
}

fn self_adjoint() -> Outcome {
    let cfg = NeumannConfig::default();
    let p = well();
    let alpha = BoundaryParam::Infinite;
    let mut da = 0.0f64;
    let mut dpsi_off = 0.0f64;
    for i in 0..50 {
        let lambda = 0.05 + 11.95 * i as f64 / 49.0;
        let sp = SpectralPoint::new(&p, lambda.sqrt(), &cfg).map_err(|e| e.to_string())?;
        let d = sp.density(alpha).map_err(|e| e.to_string())?;
        let cl = classical_density(&p, alpha, lambda).map_err(|e| e.to_string())?;
        da = da.max(rel(d.value, cl / 2.0));
        dpsi_off = dpsi_off.max((d.psi - 1.0).norm());
    }
    let kappas = bound_states(&p, alpha, 1e-3, 2.5, 500).map_err(|e| e.to_string())?;
    let found = find_eigenvalues(&p, alpha, 1e-3, 2.5, &cfg).map_err(|e| e.to_string())?;
    let mut db = if kappas.len() == found.len() && !kappas.is_empty() { 0.0f64 } else { f64::INFINITY };
    let (mut dc, mut dpsi_on) = (0.0f64, 0.0f64);
    for (&k, &kappa) in found.iter().zip(&kappas) {
        db = db.max((k - kappa).abs());
        let pm = SpectralPoint::new(&p, k, &cfg).unwrap().point_mass(alpha).map_err(|e| e.to_string())?;
        let sigma = classical_point_mass(&p, alpha, kappa).map_err(|e| e.to_string())?;
        dc = dc.max(rel(pm.value, sigma / 2.0));
        dpsi_on = dpsi_on.max((pm.psi + 1.0).norm());
    }
    check(
        da <= 1e-6 && db <= 1e-6 && dc <= 1e-6 && dpsi_off <= 1e-8 && dpsi_on <= 1e-8,
        format!(
            "(a) {da:.2e} (b) {} eigenvalues, {db:.2e} (c) {dc:.2e} (d) off {dpsi_off:.2e}, on {dpsi_on:.2e}",
            found.len()
        ),
    )
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = (xs.iter().map(|v| v.ln()).collect(), ys.iter().map(|v| v.ln()).collect());
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn born_scaling() -> Outcome {
    let cfg = NeumannConfig::default();
    let alpha = BoundaryParam::Infinite;
    let unit = Potential::pwc(vec![0.0, 1.0], vec![c(1.0, 0.0)]).unwrap();
    // closed forms of the two weighted integrals at k = 1
    let s_exact = (1.0 - 2f64.cos()) / 2.0;
    let g_exact = 1.0 - (-1f64).exp() * (1f64.cos() + 1f64.sin());
    let s_quad = weighted_integral(&unit, |y| (2.0 * y).sin()).re;
    let g_quad = weighted_integral(&unit, |y| 2.0 * (-y).exp() * y.sin()).re;
    let quad_err = (s_quad - s_exact).abs().max((g_quad - g_exact).abs());
    // the printed ψ constant disagrees with its own closed form in the fifth digit
    let printed_err = (s_quad - 0.7080734).abs();
    let printed_psi_gap = (g_quad - 0.4916639).abs();
    let eps = [0.2, 0.1, 0.05, 0.025];
    let (mut ed, mut ep) = (Vec::new(), Vec::new());
    for &e in &eps {
        let q = Potential::pwc(vec![0.0, 1.0], vec![c(e, e)]).unwrap();
        let d = SpectralPoint::new(&q, 1.0, &cfg).map_err(|e| e.to_string())?.density(alpha).map_err(|e| e.to_string())?;
        ed.push((d.value - born_density(&q, alpha, 1.0).unwrap()).abs());
        ep.push((d.psi - born_psi(&q, alpha, 1.0).unwrap()).norm());
    }
    let (sd, sp) = (slope(&eps, &ed), slope(&eps, &ep));
    check(
        (sd - 2.0).abs() <= 0.2 && (sp - 2.0).abs() <= 0.2 && quad_err <= 1e-9 && printed_err <= 5e-8,
        format!(
            "slopes dν {sd:.3}, ψ {sp:.3}; constants by quadrature {quad_err:.1e}, density vs printed {printed_err:.1e}, ψ vs printed {printed_psi_gap:.1e}"
        ),
    )
}

fn bracket(f: &JostSolution, g: &JostSolution) -> C64 {
    let (f0, fp0) = f.at_zero();
    let (g0, gp0) = g.at_zero();
    wronskian_bracket(f0, fp0, g0, gp0)
}

fn structural() -> Outcome {
    let cfg = NeumannConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut potentials = vec![
        Potential::zero(),
        well(),
        Potential::pwc(vec![0.0, 1.0], vec![c(0.05, 0.05)]).unwrap(),
        Potential::pwc(vec![0.0, 1.0], vec![c(2.0, 0.0)]).unwrap(),
        Potential::expdecay(c(1.0, -0.5), 1.2, 12.0).unwrap(),
    ];
    for _ in 0..5 {
        let l1 = rng.gen_range(0.2..2.0);
        potentials.push(random_pwc(&mut rng, l1));
    }
    let alphas = [BoundaryParam::Infinite, BoundaryParam::real(0.0), BoundaryParam::real(1.0), BoundaryParam::real(-2.5)];
    let (mut wr, mut gauge, mut psd, mut uni) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &potentials {
        for k in [0.4, 1.0, 2.3, 5.0] {
            let sp = SpectralPoint::new(p, k, &cfg).map_err(|e| e.to_string())?;
            let set = &sp.set;
            let (m1, p1, pi) = (set.get(JostIndex::MinusOne), set.get(JostIndex::PlusOne), set.get(JostIndex::PlusI));
            let mi = set.corrected_minus_i();
            let s = 4.0 * k;
            for z in [bracket(m1, m1), bracket(m1, pi), bracket(m1, &mi), bracket(pi, &mi), bracket(&mi, pi)] {
                wr = wr.max(z.norm() / s);
            }
            wr = wr.max((bracket(m1, p1) - s).norm() / s);
            wr = wr.max((bracket(pi, pi) - I * s).norm() / s);
            wr = wr.max((bracket(&mi, &mi) + I * s).norm() / s);
            let g = sp.with_gauge(c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
            for alpha in alphas {
                gauge = gauge.max((g.det(alpha) - sp.det(alpha)).norm() / sp.det(alpha).norm());
                if sp.is_near_eigenvalue(alpha) {
                    continue;
                }
                let (d0, d1) = (sp.density(alpha).unwrap(), g.density(alpha).unwrap());
                gauge = gauge.max(rel(d1.value, d0.value)).max((d1.psi - d0.psi).norm());
                let (m0, m1) = (sp.m(alpha).unwrap(), g.m(alpha).unwrap());
                gauge = gauge.max((m1 - m0).frobenius() / m0.frobenius());
                let sd: CMat2 = sp.sigma_density(alpha).unwrap();
                let [lo, hi] = sd.hermitian_eigenvalues();
                psd = psd.max((sd - sd.adjoint()).frobenius() / hi).max(lo.abs() / hi);
                if hi <= 0.0 {
                    psd = f64::INFINITY;
                }
                uni = uni.max((d0.psi.norm() - 1.0).abs());
            }
        }
    }
    check(
        wr <= 1e-7 && gauge <= 1e-10 && psd <= 1e-10 && uni <= 1e-8,
        format!("Wronskians {wr:.2e}, gauge {gauge:.2e}, rank-one PSD {psd:.2e}, |ψ|−1 {uni:.2e}"),
    )
}

fn herglotz_identity() -> Outcome {
    let cfg = NeumannConfig::default();
    let potentials = [Potential::pwc(vec![0.0, 1.0], vec![c(1.0, 1.0)]).unwrap(), well()];
    let alphas = [BoundaryParam::Infinite, BoundaryParam::real(0.0), BoundaryParam::real(1.0)];
    let mut min_eig = f64::INFINITY;
    for p in &potentials {
        for alpha in alphas {
            for i in 0..5 {
                for j in 0..5 {
                    let lambda = c(-4.0 + 2.0 * i as f64, 0.1 + 0.225 * j as f64);
                    let m = m_function(p, alpha, lambda, &cfg).map_err(|e| e.to_string())?;
                    min_eig = min_eig.min(m.im_min_eig());
                }
            }
        }
    }
    let coarse = cfg.with_h_max(0.05);
    let fine = cfg.with_h_max(0.025);
    let (mut worst, mut min_ratio) = (0.0f64, f64::INFINITY);
    for p in &potentials {
        for alpha in alphas {
            for lambda in [c(0.5, 0.5), c(-1.0, 0.3), c(2.0, 1.0)] {
                let a = im_m_identity_check(p, alpha, lambda, &coarse).map_err(|e| e.to_string())?;
                let b = im_m_identity_check(p, alpha, lambda, &fine).map_err(|e| e.to_string())?;
                worst = worst.max(a).max(b);
                min_ratio = min_ratio.min(a / b);
            }
        }
    }
    check(
        min_eig > 0.0 && worst < 1e-5 && min_ratio >= 4.0,
        format!("min eig Im M {min_eig:.3e}; identity residual {worst:.2e}, min reduction under halving {min_ratio:.1}×"),
    )
}

fn asymptotics() -> Outcome {
    let cfg = NeumannConfig::default();
    let p = Potential::pwc(vec![0.0, 1.0], vec![c(2.0, 0.0)]).unwrap();
    let (mut jost_err, mut m_err) = (Vec::new(), Vec::new());
    for k in [20.0, 40.0, 80.0] {
        let kc = c(k, 0.0);
        let set = jost_at(&p, kc, &cfg).map_err(|e| e.to_string())?;
        let (f0, _) = set.get(JostIndex::MinusOne).at_zero();
        let reference = asymptotic_reference(&p, kc)[0];
        debug_assert!((reference - E_MINUS * (1.0 + 1.0 / k)).norm() < 1e-15);
        jost_err.push((f0 - reference).norm() * k);
        let mut e = 0.0f64;
        for alpha in [BoundaryParam::Infinite, BoundaryParam::real(0.0), BoundaryParam::real(1.0)] {
            let m = m_function(&p, alpha, c(k * k, 0.0), &cfg).map_err(|e| e.to_string())?.m;
            let a = m_asymptotic(alpha, kc);
            e = e.max((m - a).frobenius() / a.frobenius());
        }
        m_err.push(e);
    }
    let dec = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    check(
        dec(&jost_err) && dec(&m_err),
        format!("k·‖F₋₁(0) − ref‖ {:.3e} {:.3e} {:.3e}; M rel error {:.3e} {:.3e} {:.3e}", jost_err[0], jost_err[1], jost_err[2], m_err[0], m_err[1], m_err[2]),
    )
}

fn oracle_cross() -> Outcome {
    let cfg = NeumannConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    let mut compared = 0usize;
    for _ in 0..5 {
        let l1 = rng.gen_range(0.5..3.0);
        let p = random_pwc(&mut rng, l1);
        let k = C64::from_polar(rng.gen_range(0.8..2.5), rng.gen_range(0.0..std::f64::consts::FRAC_PI_4));
        let set = jost_at(&p, k, &cfg).map_err(|e| e.to_string())?;
        for j in [JostIndex::MinusOne, JostIndex::PlusI] {
            let neumann = set.get(j);
            let brute = brute_force_jost(&p, k, j, neumann.r, 500).map_err(|e| e.to_string())?;
            let scale = brute.f.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let mut n = 0;
            for (x, fb) in brute.x.iter().zip(&brute.f) {
                if let Some((fnm, _)) = neumann.eval(*x) {
                    worst = worst.max((fnm - *fb).norm() / scale);
                    n += 1;
                }
            }
            if n < 2 {
                return Err(format!("only {n} common nodes"));
            }
            compared += n;
        }
    }
    check(worst <= 1e-7, format!("{compared} common nodes, max rel difference {worst:.2e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("free-case golden values", free_golden),
        ("dual-pipeline agreement", dual_pipeline),
        ("self-adjoint reduction", self_adjoint),
        ("Born quadratic scaling", born_scaling),
        ("structural invariants", structural),
        ("Herglotz and identity checks", herglotz_identity),
        ("large-k asymptotics", asymptotics),
        ("oracle cross-method", oracle_cross),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {} {name}: {detail} [{:.1} s]", i + 1, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
