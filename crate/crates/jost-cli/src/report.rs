//! Self-check suites run on the configured potential and boundary parameter.

use crate::config::{CliError, Config, Suite, Tolerances};
use crate::sweep::lambda_grid;
use jost_core::algebra::{c, wronskian_bracket, I};
use jost_core::born::{born_density, born_psi};
use jost_core::jost::{asymptotic_reference, jost_at, JostIndex, JostSolution, NeumannConfig};
use jost_core::oracle::{bound_states, classical_density, classical_point_mass};
use jost_core::spectral::{
    find_eigenvalues, im_m_identity_check, m_asymptotic, m_function, SpectralPoint,
};
use jost_core::{BoundaryParam, Potential, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::path::Path;

pub const JSON_NAME: &str = "report.json";
pub const TEXT_NAME: &str = "report.txt";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub status: Status,
    pub measured: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub potential: Value,
    pub alpha: BoundaryParam,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

struct Ctx<'a> {
    p: &'a Potential,
    alpha: BoundaryParam,
    cfg: NeumannConfig,
    tol: &'a Tolerances,
    lambdas: Vec<f64>,
    seed: u64,
}

/// Measured values, thresholds and the verdict of one suite.
#[derive(Default)]
struct Outcome {
    measured: Map<String, Value>,
    tolerances: Map<String, Value>,
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            ..Default::default()
        }
    }

    fn measure(&mut self, key: &str, v: impl Into<Value>) {
        self.measured.insert(key.to_string(), v.into());
    }

    /// Records `value ≤ limit` (or `≥` with `at_least`).
    fn bound(&mut self, key: &str, value: f64, limit: f64, at_least: bool) {
        self.measure(key, finite(value));
        self.tolerances.insert(key.to_string(), finite(limit));
        let ok = if at_least {
            value >= limit
        } else {
            value <= limit
        };
        if !ok {
            self.ok = false;
            let rel = if at_least { "<" } else { ">" };
            let _ = write!(
                self.detail,
                "{}{key} = {value:.3e} {rel} {limit:.3e}",
                if self.detail.is_empty() { "" } else { "; " }
            );
        }
    }

    fn fail(&mut self, why: String) {
        self.ok = false;
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&why);
    }
}

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(format!("{v}"))
    }
}

fn is_real_alpha(a: BoundaryParam) -> bool {
    a.is_real()
}

/// Why a suite does not apply, if it does not.
fn not_applicable(s: Suite, p: &Potential, alpha: BoundaryParam) -> Option<&'static str> {
    match s {
        Suite::BornScaling if !is_real_alpha(alpha) => Some("the Born formulas need real α"),
        Suite::Selfadjoint if !p.is_real() => Some("the classical oracle needs a real potential"),
        Suite::Selfadjoint if !is_real_alpha(alpha) => Some("the classical oracle needs real α"),
        _ => None,
    }
}

fn bracket(f: &JostSolution, g: &JostSolution) -> C64 {
    let (f0, fp0) = f.at_zero();
    let (g0, gp0) = g.at_zero();
    wronskian_bracket(f0, fp0, g0, gp0)
}

fn wronskian(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let mut worst = 0.0f64;
    for &l in &cx.lambdas {
        let k = l.sqrt();
        let set = jost_at(cx.p, c(k, 0.0), &cx.cfg)?;
        let (m1, p1, pi) = (
            set.get(JostIndex::MinusOne),
            set.get(JostIndex::PlusOne),
            set.get(JostIndex::PlusI),
        );
        let mi = set.corrected_minus_i();
        let s = 4.0 * k;
        for z in [
            bracket(m1, m1),
            bracket(m1, pi),
            bracket(m1, &mi),
            bracket(pi, &mi),
            bracket(&mi, pi),
        ] {
            worst = worst.max(z.norm() / s);
        }
        worst = worst.max((bracket(m1, p1) - s).norm() / s);
        worst = worst.max((bracket(pi, pi) - I * s).norm() / s);
        worst = worst.max((bracket(&mi, &mi) + I * s).norm() / s);
    }
    o.bound("max_relative_violation", worst, cx.tol.wronskian, false);
    Ok(())
}

fn gauge(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed);
    let (mut det, mut spectral, mut uni, mut rank) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &l in &cx.lambdas {
        let sp = SpectralPoint::new(cx.p, l.sqrt(), &cx.cfg)?;
        let g = sp.with_gauge(c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)));
        let d0 = sp.det(cx.alpha);
        det = det.max((g.det(cx.alpha) - d0).norm() / d0.norm());
        if sp.is_near_eigenvalue(cx.alpha) {
            continue;
        }
        let (a, b) = (sp.density(cx.alpha)?, g.density(cx.alpha)?);
        spectral = spectral
            .max((a.value - b.value).abs() / a.value)
            .max((a.psi - b.psi).norm());
        let (ma, mb) = (sp.m(cx.alpha)?, g.m(cx.alpha)?);
        spectral = spectral.max((ma - mb).frobenius() / ma.frobenius());
        uni = uni.max((a.psi.norm() - 1.0).abs());
        let sd = sp.sigma_density(cx.alpha)?;
        let [lo, hi] = sd.hermitian_eigenvalues();
        rank = rank
            .max((sd - sd.adjoint()).frobenius() / hi)
            .max(lo.abs() / hi);
        if !(hi > 0.0) {
            rank = f64::INFINITY;
        }
    }
    o.bound("jost_det_relative_change", det, cx.tol.gauge, false);
    o.bound("spectral_relative_change", spectral, cx.tol.gauge, false);
    o.bound("psi_unimodular_defect", uni, cx.tol.unimodular, false);
    o.bound("rank_one_defect", rank, cx.tol.gauge, false);
    Ok(())
}

fn herglotz(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let hi = *cx.lambdas.last().unwrap();
    let mut min_eig = f64::INFINITY;
    for i in 0..5 {
        for j in 0..5 {
            let lambda = c(-hi + 0.5 * hi * i as f64, 0.1 + 0.225 * j as f64);
            min_eig = min_eig.min(m_function(cx.p, cx.alpha, lambda, &cx.cfg)?.im_min_eig());
        }
    }
    o.measure("min_eig_im_m", finite(min_eig));
    o.tolerances.insert("min_eig_im_m".into(), json!("> 0"));
    if !(min_eig > 0.0) {
        o.fail(format!("min eig Im M = {min_eig:.3e} is not positive"));
    }
    Ok(())
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn born_scaling(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let l1 = cx.p.l1_norm();
    if l1 == 0.0 {
        o.measure("note", "zero potential: Born formulas are exact");
        return Ok(());
    }
    let alpha_re = match cx.alpha {
        BoundaryParam::Finite(a) => Some(a.re),
        BoundaryParam::Infinite => None,
    };
    let lambda = cx
        .lambdas
        .iter()
        .copied()
        .find(|l| alpha_re.is_none_or(|a| (l.sqrt() - a).abs() > 0.2))
        .unwrap_or(cx.lambdas[0]);
    let eps = [0.2, 0.1, 0.05, 0.025];
    let (mut ed, mut ep) = (Vec::new(), Vec::new());
    for &e in &eps {
        let q = cx.p.scaled(c(e / l1, 0.0));
        let d = SpectralPoint::new(&q, lambda.sqrt(), &cx.cfg)?.density(cx.alpha)?;
        ed.push((d.value - born_density(&q, cx.alpha, lambda)?).abs());
        ep.push((d.psi - born_psi(&q, cx.alpha, lambda)?).norm());
    }
    o.measure("lambda", lambda);
    o.measure("eps", json!(eps));
    o.measure("density_errors", json!(ed));
    o.measure("psi_errors", json!(ep));
    for (key, errs) in [("density_slope", &ed), ("psi_slope", &ep)] {
        if errs.iter().all(|&v| v < cx.tol.floor) {
            o.measure(key, Value::Null);
            continue;
        }
        let s = slope(&eps, errs);
        o.bound(
            &format!("{key}_deviation_from_2"),
            (s - 2.0).abs(),
            cx.tol.slope,
            false,
        );
        o.measure(key, finite(s));
    }
    Ok(())
}

fn selfadjoint(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let (mut dens, mut psi) = (0.0f64, 0.0f64);
    for &l in &cx.lambdas {
        let sp = SpectralPoint::new(cx.p, l.sqrt(), &cx.cfg)?;
        if sp.is_near_eigenvalue(cx.alpha) {
            continue;
        }
        let d = sp.density(cx.alpha)?;
        let cl = classical_density(cx.p, cx.alpha, l)?;
        dens = dens.max((d.value - cl / 2.0).abs() / d.value);
        psi = psi.max((d.psi - 1.0).norm());
    }
    let k_lo = cx.lambdas[0].sqrt();
    let k_hi = cx.lambdas.last().unwrap().sqrt();
    let kappas = bound_states(cx.p, cx.alpha, k_lo, k_hi, 500)?;
    let found = find_eigenvalues(cx.p, cx.alpha, k_lo, k_hi, &cx.cfg)?;
    o.measure("eigenvalues_found", found.len());
    o.measure("oracle_bound_states", kappas.len());
    if found.len() != kappas.len() {
        o.fail(format!(
            "{} eigenvalues found, oracle has {}",
            found.len(),
            kappas.len()
        ));
    }
    let (mut dk, mut dm) = (0.0f64, 0.0f64);
    let mut masses = Vec::new();
    for (&k, &kappa) in found.iter().zip(&kappas) {
        dk = dk.max((k - kappa).abs());
        let pm = SpectralPoint::new(cx.p, k, &cx.cfg)?.point_mass(cx.alpha)?;
        let sigma = classical_point_mass(cx.p, cx.alpha, kappa)?;
        dm = dm.max((pm.value - sigma / 2.0).abs() / pm.value);
        psi = psi.max((pm.psi + 1.0).norm());
        masses.push(json!({"lambda": k * k, "nu_mass": pm.value, "oracle_half_mass": sigma / 2.0}));
    }
    o.measure("point_masses", Value::Array(masses));
    o.bound("density_vs_oracle", dens, cx.tol.selfadjoint_density, false);
    o.bound(
        "eigenvalue_k_vs_oracle",
        dk,
        cx.tol.selfadjoint_eigen,
        false,
    );
    o.bound("mass_vs_oracle", dm, cx.tol.selfadjoint_eigen, false);
    o.bound("psi_sign_defect", psi, cx.tol.selfadjoint_psi, false);
    Ok(())
}

fn decreasing(v: &[f64], floor: f64) -> bool {
    v.windows(2).all(|w| w[1] < w[0] || w[1] < floor)
}

fn asymptotics(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let (mut jost_err, mut m_err) = (Vec::new(), Vec::new());
    let ladder = [20.0, 40.0, 80.0];
    for k in ladder {
        let kc = c(k, 0.0);
        let set = jost_at(cx.p, kc, &cx.cfg)?;
        let (f0, _) = set.get(JostIndex::MinusOne).at_zero();
        jost_err.push((f0 - asymptotic_reference(cx.p, kc)[0]).norm() * k);
        let m = m_function(cx.p, cx.alpha, c(k * k, 0.0), &cx.cfg)?.m;
        let a = m_asymptotic(cx.alpha, kc);
        m_err.push((m - a).frobenius() / a.frobenius());
    }
    o.measure("k", json!(ladder));
    o.measure("scaled_jost_error", json!(jost_err));
    o.measure("m_relative_error", json!(m_err));
    o.tolerances.insert("trend".into(), json!("decreasing"));
    if !decreasing(&jost_err, cx.tol.floor) {
        o.fail("k·‖F₋₁(0) − reference‖ does not decrease".into());
    }
    if !decreasing(&m_err, cx.tol.floor) {
        o.fail("M-function error does not decrease".into());
    }
    Ok(())
}

fn id_identity(cx: &Ctx, o: &mut Outcome) -> jost_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed.wrapping_add(1));
    let hi = *cx.lambdas.last().unwrap();
    let coarse = NeumannConfig {
        h_max: 0.05,
        ..cx.cfg
    };
    let fine = NeumannConfig {
        h_max: 0.025,
        ..cx.cfg
    };
    let (mut worst, mut min_ratio) = (0.0f64, f64::INFINITY);
    let mut points = Vec::new();
    for _ in 0..4 {
        let lambda = c(rng.gen_range(-hi..hi), rng.gen_range(0.1..1.0));
        let a = im_m_identity_check(cx.p, cx.alpha, lambda, &coarse)?;
        let b = im_m_identity_check(cx.p, cx.alpha, lambda, &fine)?;
        worst = worst.max(a).max(b);
        if a >= cx.tol.floor {
            min_ratio = min_ratio.min(a / b.max(f64::MIN_POSITIVE));
        }
        points
            .push(json!({"lambda": [lambda.re, lambda.im], "residual_h": a, "residual_h_half": b}));
    }
    o.measure("points", Value::Array(points));
    o.bound("max_residual", worst, cx.tol.identity, false);
    if min_ratio.is_finite() {
        o.bound(
            "min_reduction_under_halving",
            min_ratio,
            cx.tol.identity_reduction,
            true,
        );
    } else {
        o.measure("min_reduction_under_halving", Value::Null);
    }
    Ok(())
}

fn run_suite(s: Suite, cx: &Ctx) -> Outcome {
    let mut o = Outcome::new();
    let r = match s {
        Suite::Wronskian => wronskian(cx, &mut o),
        Suite::Gauge => gauge(cx, &mut o),
        Suite::Herglotz => herglotz(cx, &mut o),
        Suite::BornScaling => born_scaling(cx, &mut o),
        Suite::Selfadjoint => selfadjoint(cx, &mut o),
        Suite::Asymptotics => asymptotics(cx, &mut o),
        Suite::IdIdentity => id_identity(cx, &mut o),
    };
    if let Err(e) = r {
        o.fail(format!("computation failed: {e}"));
    }
    o
}

pub fn run_report(cfg: &Config) -> Result<Report, CliError> {
    let p = &cfg.potential;
    let requested: Vec<(Suite, bool)> = match &cfg.report.suites {
        Some(list) => {
            for &s in list {
                if let Some(why) = not_applicable(s, p, cfg.alpha) {
                    return Err(CliError::Config(format!("suite {}: {why}", s.name())));
                }
            }
            let mut v = list.clone();
            v.sort();
            v.dedup();
            v.into_iter().map(|s| (s, true)).collect()
        }
        None => Suite::ALL
            .iter()
            .map(|&s| (s, not_applicable(s, p, cfg.alpha).is_none()))
            .collect(),
    };
    let cx = Ctx {
        p,
        alpha: cfg.alpha,
        cfg: cfg.neumann(None),
        tol: &cfg.tolerances,
        lambdas: lambda_grid(
            cfg.report.lambda_lo,
            cfg.report.lambda_hi,
            cfg.report.samples,
        ),
        seed: cfg.seed,
    };
    let results: Vec<SuiteResult> = requested
        .into_par_iter()
        .map(|(s, applies)| {
            if !applies {
                let why = not_applicable(s, p, cfg.alpha).unwrap_or_default();
                return SuiteResult {
                    suite: s.name(),
                    status: Status::Skipped,
                    measured: Map::new(),
                    tolerances: Map::new(),
                    detail: why.to_string(),
                };
            }
            let o = run_suite(s, &cx);
            SuiteResult {
                suite: s.name(),
                status: if o.ok { Status::Pass } else { Status::Fail },
                measured: o.measured,
                tolerances: o.tolerances,
                detail: o.detail,
            }
        })
        .collect();
    let passed = results.iter().all(|r| r.status != Status::Fail);
    Ok(Report {
        potential: p.to_json(),
        alpha: cfg.alpha,
        seed: cfg.seed,
        passed,
        suites: results,
    })
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "potential: {}", r.potential);
    let _ = writeln!(
        s,
        "alpha: {}",
        serde_json::to_string(&r.alpha).unwrap_or_default()
    );
    let _ = writeln!(s, "seed: {}", r.seed);
    for suite in &r.suites {
        let tag = match suite.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = writeln!(s, "{tag} {}", suite.suite);
        for (k, v) in &suite.measured {
            match suite.tolerances.get(k) {
                Some(t) => {
                    let _ = writeln!(s, "    {k} = {v} (tolerance {t})");
                }
                None => {
                    let _ = writeln!(s, "    {k} = {v}");
                }
            }
        }
        if !suite.detail.is_empty() {
            let _ = writeln!(s, "    {}", suite.detail);
        }
    }
    let _ = writeln!(
        s,
        "{}",
        if r.passed {
            "all requested suites passed"
        } else {
            "some suites failed"
        }
    );
    s
}

pub fn write_report(r: &Report, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let mut text = serde_json::to_string_pretty(r)?;
    text.push('\n');
    std::fs::write(dir.join(JSON_NAME), text)?;
    std::fs::write(dir.join(TEXT_NAME), render_text(r))?;
    Ok(())
}
