//! λ-grid sweeps: density rows in CSV and the point spectrum in a JSON sidecar.

use crate::config::{CliError, Config, Method, SweepConfig};
use jost_core::jost::NeumannConfig;
use jost_core::scattering::{gamma_from, pair_from_gamma, regular_solutions};
use jost_core::spectral::{find_eigenvalues, SpectralPoint, SpectralSample};
use jost_core::{BoundaryParam, Potential, C64};
use rayon::prelude::*;
use serde::Serialize;
use std::path::Path;

pub const CSV_NAME: &str = "sweep.csv";
pub const SIDECAR_NAME: &str = "sweep.json";

#[derive(Clone, Debug)]
pub struct Row {
    pub lambda: f64,
    pub k: f64,
    pub dnu_dlambda: f64,
    pub psi: C64,
    pub jost_det_abs: f64,
    pub method: Method,
    pub discrepancy: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub lambda: f64,
    pub k: f64,
    pub nu_mass: f64,
    pub psi_re: f64,
    pub psi_im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Excluded {
    pub lambda: f64,
    pub k: f64,
    pub jost_det_abs: f64,
    pub reason: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub potential: serde_json::Value,
    pub alpha: BoundaryParam,
    pub method: Method,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub samples: usize,
    pub rows_written: usize,
    pub eigenvalues: Vec<Eigenvalue>,
    pub excluded: Vec<Excluded>,
    pub max_discrepancy: Option<f64>,
    /// With `method = both`: the tolerance and the rows that exceed it.
    pub discrepancy_tolerance: Option<f64>,
    pub rows_over_tolerance: Option<usize>,
}

pub struct SweepOutput {
    pub rows: Vec<Row>,
    pub sidecar: Sidecar,
}

pub fn lambda_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

enum Point {
    Row(Row),
    Excluded(Excluded),
}

fn gamma_sample(
    p: &Potential,
    alpha: BoundaryParam,
    sp: &SpectralPoint,
    cfg: &NeumannConfig,
) -> Result<SpectralSample, CliError> {
    let k = sp.k();
    let reg = regular_solutions(p, alpha, C64::new(k * k, 0.0), cfg)?;
    let g = gamma_from(&sp.set, &reg)?;
    Ok(pair_from_gamma(&g, sp.e.norm_sq)?)
}

fn sweep_point(
    p: &Potential,
    alpha: BoundaryParam,
    method: Method,
    lambda: f64,
    cfg: &NeumannConfig,
) -> Result<Point, CliError> {
    let k = lambda.abs().sqrt();
    if lambda == 0.0 {
        return Ok(Point::Excluded(Excluded {
            lambda,
            k,
            jost_det_abs: f64::NAN,
            reason: "threshold λ = 0",
        }));
    }
    let sp = SpectralPoint::new(p, k, cfg)?;
    let det = sp.det(alpha).norm();
    if sp.is_near_eigenvalue(alpha) {
        return Ok(Point::Excluded(Excluded {
            lambda,
            k,
            jost_det_abs: det,
            reason: "eigenvalue at grid point",
        }));
    }
    let (sample, discrepancy) = match method {
        Method::Jost => (sp.density(alpha)?, None),
        Method::Gamma => (gamma_sample(p, alpha, &sp, cfg)?, None),
        Method::Both => {
            let a = sp.density(alpha)?;
            let b = gamma_sample(p, alpha, &sp, cfg)?;
            let d = ((a.value - b.value).abs() / a.value).max((a.psi - b.psi).norm());
            (a, Some(d))
        }
    };
    let sample = if lambda < 0.0 {
        sample.reflect()
    } else {
        sample
    };
    Ok(Point::Row(Row {
        lambda,
        k,
        dnu_dlambda: sample.value,
        psi: sample.psi,
        jost_det_abs: det,
        method,
        discrepancy,
    }))
}

/// Embedded eigenvalues whose `λ` or `−λ` lies in `[lo, hi]`.
fn eigenvalues(
    p: &Potential,
    alpha: BoundaryParam,
    lo: f64,
    hi: f64,
    cfg: &NeumannConfig,
) -> Result<Vec<Eigenvalue>, CliError> {
    let (a, b) = (lo.abs().min(hi.abs()), lo.abs().max(hi.abs()));
    let (k_lo, k_hi) = (a.sqrt(), b.sqrt());
    if k_hi <= k_lo {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for k in find_eigenvalues(p, alpha, k_lo, k_hi, cfg)? {
        let pm = SpectralPoint::new(p, k, cfg)?.point_mass(alpha)?;
        for s in [pm.reflect(), pm] {
            if s.lambda >= lo && s.lambda <= hi {
                out.push(Eigenvalue {
                    lambda: s.lambda,
                    k,
                    nu_mass: s.value,
                    psi_re: s.psi.re,
                    psi_im: s.psi.im,
                });
            }
        }
    }
    out.sort_by(|x, y| x.lambda.total_cmp(&y.lambda));
    Ok(out)
}

pub fn run_sweep(cfg: &Config) -> Result<SweepOutput, CliError> {
    let s: &SweepConfig = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("the sweep command needs a \"sweep\" section".into()))?;
    let grid = lambda_grid(s.lambda_lo, s.lambda_hi, s.samples);
    let k_min = grid
        .iter()
        .map(|l| l.abs().sqrt())
        .fold(f64::INFINITY, f64::min);
    let ncfg = cfg.neumann(Some(k_min));
    let p = &cfg.potential;
    let points: Vec<Result<Point, CliError>> = grid
        .par_iter()
        .map(|&l| sweep_point(p, cfg.alpha, s.method, l, &ncfg))
        .collect();
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for pt in points {
        match pt? {
            Point::Row(r) => rows.push(r),
            Point::Excluded(e) => excluded.push(e),
        }
    }
    let eigen = eigenvalues(p, cfg.alpha, s.lambda_lo, s.lambda_hi, &ncfg)?;
    let tol = cfg.tolerances.dual_pipeline;
    let max_discrepancy = rows.iter().filter_map(|r| r.discrepancy).reduce(f64::max);
    let sidecar = Sidecar {
        potential: p.to_json(),
        alpha: cfg.alpha,
        method: s.method,
        lambda_lo: s.lambda_lo,
        lambda_hi: s.lambda_hi,
        samples: s.samples,
        rows_written: rows.len(),
        eigenvalues: eigen,
        excluded,
        max_discrepancy,
        discrepancy_tolerance: (s.method == Method::Both).then_some(tol),
        rows_over_tolerance: (s.method == Method::Both).then(|| {
            rows.iter()
                .filter(|r| r.discrepancy.is_some_and(|d| !(d <= tol)))
                .count()
        }),
    };
    Ok(SweepOutput { rows, sidecar })
}

/// Seventeen significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_sweep(out: &SweepOutput, dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let both = out.sidecar.method == Method::Both;
    let mut w = csv::Writer::from_path(dir.join(CSV_NAME))?;
    let mut header = vec![
        "lambda",
        "k",
        "dnu_dlambda",
        "psi_re",
        "psi_im",
        "jost_det_abs",
        "method",
    ];
    if both {
        header.push("discrepancy");
    }
    w.write_record(&header)?;
    for r in &out.rows {
        let mut rec = vec![
            fmt_num(r.lambda),
            fmt_num(r.k),
            fmt_num(r.dnu_dlambda),
            fmt_num(r.psi.re),
            fmt_num(r.psi.im),
            fmt_num(r.jost_det_abs),
            r.method.label().to_string(),
        ];
        if both {
            rec.push(fmt_num(r.discrepancy.unwrap_or(f64::NAN)));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    let mut text = serde_json::to_string_pretty(&out.sidecar)?;
    text.push('\n');
    std::fs::write(dir.join(SIDECAR_NAME), text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        assert_eq!(lambda_grid(0.25, 4.0, 16).last(), Some(&4.0));
        assert_eq!(lambda_grid(0.25, 4.0, 16)[0], 0.25);
        assert_eq!(lambda_grid(2.0, 2.0, 1), vec![2.0]);
    }

    #[test]
    fn number_format_has_seventeen_digits() {
        assert_eq!(fmt_num(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_num(-2.0), "-2.0000000000000000e0");
        let v = std::f64::consts::PI / 7.0;
        assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
    }
}
