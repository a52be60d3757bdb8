//! The JSON configuration shared by `sweep` and `report`.

use jost_core::jost::NeumannConfig;
use jost_core::{BoundaryParam, Potential};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Write(String),
    #[error(transparent)]
    Numerics(#[from] jost_core::JostError),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Jost,
    Gamma,
    Both,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Jost => "jost",
            Method::Gamma => "gamma",
            Method::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Wronskian,
    Gauge,
    Herglotz,
    BornScaling,
    Selfadjoint,
    Asymptotics,
    IdIdentity,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Wronskian,
        Suite::Gauge,
        Suite::Herglotz,
        Suite::BornScaling,
        Suite::Selfadjoint,
        Suite::Asymptotics,
        Suite::IdIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Wronskian => "wronskian",
            Suite::Gauge => "gauge",
            Suite::Herglotz => "herglotz",
            Suite::BornScaling => "born-scaling",
            Suite::Selfadjoint => "selfadjoint",
            Suite::Asymptotics => "asymptotics",
            Suite::IdIdentity => "id-identity",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub samples: usize,
    #[serde(default = "default_method")]
    pub method: Method,
}

fn default_method() -> Method {
    Method::Jost
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReportConfig {
    /// Absent: every suite that applies to the potential and `α`.
    pub suites: Option<Vec<Suite>>,
    /// Real parts of the λ grid used by the suites.
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub samples: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            suites: None,
            lambda_lo: 0.25,
            lambda_hi: 9.0,
            samples: 12,
        }
    }
}

/// Pass thresholds of the report suites.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub wronskian: f64,
    pub gauge: f64,
    pub unimodular: f64,
    pub slope: f64,
    pub selfadjoint_density: f64,
    pub selfadjoint_eigen: f64,
    pub selfadjoint_psi: f64,
    pub identity: f64,
    pub identity_reduction: f64,
    pub dual_pipeline: f64,
    /// Measured values below this are treated as exact in ratio and slope tests.
    pub floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            wronskian: 1e-7,
            gauge: 1e-10,
            unimodular: 1e-8,
            slope: 0.2,
            selfadjoint_density: 1e-6,
            selfadjoint_eigen: 1e-6,
            selfadjoint_psi: 1e-8,
            identity: 1e-5,
            identity_reduction: 4.0,
            dual_pipeline: 1e-7,
            floor: 1e-10,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    pub h_max: Option<f64>,
    pub h_scale: Option<f64>,
    pub series_tol: Option<f64>,
    pub contraction_margin: Option<f64>,
    pub delta: Option<f64>,
    pub r: Option<f64>,
    pub ode_atol: Option<f64>,
    pub ode_rtol: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub potential: Potential,
    #[serde(default = "default_alpha")]
    pub alpha: BoundaryParam,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub report: ReportConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub seed: u64,
}

fn default_alpha() -> BoundaryParam {
    BoundaryParam::Infinite
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CliError> {
        let cfg: Config =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Config::parse(&text)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if let Some(s) = &self.sweep {
            if !(s.lambda_lo.is_finite() && s.lambda_hi.is_finite() && s.lambda_lo <= s.lambda_hi) {
                return bad("sweep needs finite lambda_lo ≤ lambda_hi");
            }
            if s.samples == 0 {
                return bad("sweep needs at least one sample");
            }
        }
        let r = &self.report;
        if !(r.lambda_lo > 0.0 && r.lambda_lo < r.lambda_hi && r.lambda_hi.is_finite())
            || r.samples < 2
        {
            return bad("report needs 0 < lambda_lo < lambda_hi and at least two samples");
        }
        let n = &self.numerics;
        for (name, v) in [
            ("h_max", n.h_max),
            ("h_scale", n.h_scale),
            ("series_tol", n.series_tol),
            ("contraction_margin", n.contraction_margin),
            ("delta", n.delta),
            ("ode_atol", n.ode_atol),
            ("ode_rtol", n.ode_rtol),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Config(format!(
                        "numerics.{name} must be positive"
                    )));
                }
            }
        }
        if matches!(n.contraction_margin, Some(m) if m >= 0.5) {
            return bad("numerics.contraction_margin must stay below 1/2");
        }
        if matches!(n.r, Some(r) if !(r >= 0.0 && r.is_finite())) {
            return bad("numerics.r must be non-negative");
        }
        Ok(())
    }

    /// Solver settings. With `k_min`, the smallest `|k|` of a sweep, `δ`
    /// defaults to `0.9·k_min`; without it, to `0.9·|k|` per evaluation.
    pub fn neumann(&self, k_min: Option<f64>) -> NeumannConfig {
        let n = &self.numerics;
        let mut c = NeumannConfig::default();
        if let Some(v) = n.h_max {
            c.h_max = v;
        }
        if let Some(v) = n.h_scale {
            c.h_scale = v;
        }
        if let Some(v) = n.series_tol {
            c.series_tol = v;
        }
        if let Some(v) = n.contraction_margin {
            c.contraction_margin = v;
        }
        if let Some(v) = n.ode_atol {
            c.ode.atol = v;
        }
        if let Some(v) = n.ode_rtol {
            c.ode.rtol = v;
        }
        c.r = n.r;
        c.delta = n.delta.or(k_min.map(|k| 0.9 * k));
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let c = Config::parse(r#"{"potential":{"family":"zero"}}"#).unwrap();
        assert_eq!(c.alpha, BoundaryParam::Infinite);
        assert_eq!(c.report.suites, None);
        assert_eq!(c.seed, 0);
        assert_eq!(c.neumann(Some(2.0)).delta, Some(1.8));
        assert_eq!(c.neumann(None).delta, None);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"potential":{"family":"zero"},"sweep":{"lambda_lo":1,"lambda_hi":-1,"samples":4}}"#,
            r#"{"potential":{"family":"zero"},"sweep":{"lambda_lo":1,"lambda_hi":2,"samples":0}}"#,
            r#"{"potential":{"family":"zero"},"sweep":{"lambda_lo":1,"lambda_hi":2,"samples":3,"method":"magic"}}"#,
            r#"{"potential":{"family":"zero"},"numerics":{"h_max":-1}}"#,
            r#"{"potential":{"family":"zero"},"report":{"suites":["nope"]}}"#,
            r#"{"potential":{"family":"zero"},"unknown":1}"#,
        ] {
            assert!(
                matches!(Config::parse(text), Err(CliError::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn suites_and_alpha_parse() {
        let c = Config::parse(
            r#"{"potential":{"family":"zero"},"alpha":[1,0],"report":{"suites":["born-scaling","id-identity"]}}"#,
        )
        .unwrap();
        assert_eq!(c.alpha, BoundaryParam::real(1.0));
        assert_eq!(
            c.report.suites,
            Some(vec![Suite::BornScaling, Suite::IdIdentity])
        );
    }
}
