//! Compactly supported complex potentials and their 2×2 matrix lift.

use crate::algebra::{CMat2, C64, XI, ZERO};
use crate::error::{JostError, Result};
use serde::{Deserialize, Serialize};

/// Functional form of `q` on one segment, extended to the closed segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Constant(C64),
    Exponential { c: C64, gamma: f64 },
    /// Linear interpolation between the endpoint values.
    Linear { v0: C64, v1: C64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
    pub shape: Shape,
}

impl Segment {
    /// Value of the segment formula at `x`; at the endpoints this is the
    /// one-sided limit from inside the segment.
    pub fn value(&self, x: f64) -> C64 {
        match self.shape {
            Shape::Constant(v) => v,
            Shape::Exponential { c, gamma } => c * (-gamma * x).exp(),
            Shape::Linear { v0, v1 } => {
                let t = (x - self.a) / (self.b - self.a);
                v0 + (v1 - v0) * t
            }
        }
    }

    /// Exact `∫_{max(a,r)}^b |q|`.
    fn abs_integral_from(&self, r: f64) -> f64 {
        let lo = self.a.max(r);
        if lo >= self.b {
            return 0.0;
        }
        match self.shape {
            Shape::Constant(v) => v.norm() * (self.b - lo),
            Shape::Exponential { c, gamma } => {
                if gamma == 0.0 {
                    c.norm() * (self.b - lo)
                } else {
                    c.norm() * ((-gamma * lo).exp() - (-gamma * self.b).exp()) / gamma
                }
            }
            Shape::Linear { v0, v1 } => {
                let len = self.b - self.a;
                let t0 = (lo - self.a) / len;
                len * abs_linear_integral(v0, v1 - v0, t0, 1.0)
            }
        }
    }

    fn integral(&self) -> C64 {
        let len = self.b - self.a;
        match self.shape {
            Shape::Constant(v) => v * len,
            Shape::Exponential { c, gamma } => {
                if gamma == 0.0 {
                    c * len
                } else {
                    c * (((-gamma * self.a).exp() - (-gamma * self.b).exp()) / gamma)
                }
            }
            Shape::Linear { v0, v1 } => (v0 + v1) * (0.5 * len),
        }
    }
}

/// `∫_{t0}^{t1} |a + d·t| dt` in closed form.
fn abs_linear_integral(a: C64, d: C64, t0: f64, t1: f64) -> f64 {
    let aa = d.norm_sqr();
    if aa == 0.0 {
        return a.norm() * (t1 - t0);
    }
    // |a + d t|² = aa·((t + s)² + m²)
    let s = (a.conj() * d).re / aa;
    let m2 = ((a.conj() * d).im / aa).powi(2);
    let m = m2.sqrt();
    let prim = |u: f64| {
        let root = (u * u + m2).sqrt();
        if m > 0.0 {
            0.5 * (u * root + m2 * (u / m).asinh())
        } else {
            0.5 * u * u.abs()
        }
    };
    aa.sqrt() * (prim(t1 + s) - prim(t0 + s))
}

#[derive(Clone, Debug, PartialEq)]
enum Family {
    Zero,
    Pwc { breaks: Vec<f64>, values: Vec<C64> },
    ExpDecay { c: C64, gamma: f64, cutoff: f64 },
    Table { x: Vec<f64>, values: Vec<C64> },
}

/// A complex potential `q` on the half-line with compact support `[0, X_q]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    family: Family,
    segments: Vec<Segment>,
}

impl Potential {
    pub fn zero() -> Self {
        Potential { family: Family::Zero, segments: Vec::new() }
    }

    /// Piecewise constant: `q = values[i]` on `[breaks[i], breaks[i+1])`.
    pub fn pwc(breaks: Vec<f64>, values: Vec<C64>) -> Result<Self> {
        check_abscissae(&breaks, "breaks")?;
        if breaks.len() != values.len() + 1 {
            return Err(invalid(format!(
                "pwc needs len(breaks) = len(values) + 1, got {} and {}",
                breaks.len(),
                values.len()
            )));
        }
        check_values(&values)?;
        let mut segments = Vec::new();
        if breaks[0] > 0.0 {
            segments.push(Segment { a: 0.0, b: breaks[0], shape: Shape::Constant(ZERO) });
        }
        for (i, v) in values.iter().enumerate() {
            segments.push(Segment { a: breaks[i], b: breaks[i + 1], shape: Shape::Constant(*v) });
        }
        Ok(Potential { family: Family::Pwc { breaks, values }, segments })
    }

    /// `c·e^{−γx}` on `[0, cutoff)`.
    pub fn expdecay(c: C64, gamma: f64, cutoff: f64) -> Result<Self> {
        check_values(&[c])?;
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(invalid(format!("expdecay gamma must be finite and ≥ 0, got {gamma}")));
        }
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(invalid(format!("expdecay cutoff must be finite and > 0, got {cutoff}")));
        }
        let segments = vec![Segment { a: 0.0, b: cutoff, shape: Shape::Exponential { c, gamma } }];
        Ok(Potential { family: Family::ExpDecay { c, gamma, cutoff }, segments })
    }

    /// Linear interpolation of a table, zero outside `[x[0], x[n−1])`.
    pub fn table(x: Vec<f64>, values: Vec<C64>) -> Result<Self> {
        check_abscissae(&x, "table abscissae")?;
        if x.len() != values.len() {
            return Err(invalid(format!(
                "table needs as many values as abscissae, got {} and {}",
                values.len(),
                x.len()
            )));
        }
        check_values(&values)?;
        let mut segments = Vec::new();
        if x[0] > 0.0 {
            segments.push(Segment { a: 0.0, b: x[0], shape: Shape::Constant(ZERO) });
        }
        for i in 0..x.len() - 1 {
            segments.push(Segment {
                a: x[i],
                b: x[i + 1],
                shape: Shape::Linear { v0: values[i], v1: values[i + 1] },
            });
        }
        Ok(Potential { family: Family::Table { x, values }, segments })
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Zero => "zero",
            Family::Pwc { .. } => "pwc",
            Family::ExpDecay { .. } => "expdecay",
            Family::Table { .. } => "table",
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Support bound `X_q`: `q = 0` on `[X_q, ∞)`.
    pub fn support(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.b)
    }

    /// Interior segment boundaries, strictly between 0 and `X_q`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let xq = self.support();
        self.segments.iter().map(|s| s.a).filter(|&a| a > 0.0 && a < xq).collect()
    }

    pub fn segment_at(&self, x: f64) -> Option<&Segment> {
        self.segments.iter().find(|s| x >= s.a && x < s.b)
    }

    /// Pointwise value; right-continuous at breakpoints.
    pub fn eval(&self, x: f64) -> C64 {
        self.segment_at(x).map_or(ZERO, |s| s.value(x))
    }

    /// Exact `∫_r^∞ |q|`.
    pub fn l1_tail(&self, r: f64) -> f64 {
        self.segments.iter().map(|s| s.abs_integral_from(r)).sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.l1_tail(0.0)
    }

    /// Exact `∫_0^∞ q`.
    pub fn integral(&self) -> C64 {
        self.segments.iter().map(|s| s.integral()).sum()
    }

    pub fn is_real(&self) -> bool {
        self.segments.iter().all(|s| match s.shape {
            Shape::Constant(v) => v.im == 0.0,
            Shape::Exponential { c, .. } => c.im == 0.0,
            Shape::Linear { v0, v1 } => v0.im == 0.0 && v1.im == 0.0,
        })
    }

    /// The potential `s·q`.
    pub fn scaled(&self, s: C64) -> Potential {
        self.map_values(|v| v * s)
    }

    /// The potential `q̄`.
    pub fn conj(&self) -> Potential {
        self.map_values(|v| v.conj())
    }

    /// `Re q` as a potential of the same family.
    pub fn real_part(&self) -> Potential {
        self.map_values(|v| C64::new(v.re, 0.0))
    }

    /// `Im q` as a potential of the same family.
    pub fn imag_part(&self) -> Potential {
        self.map_values(|v| C64::new(v.im, 0.0))
    }

    fn map_values(&self, f: impl Fn(C64) -> C64) -> Potential {
        let family = match &self.family {
            Family::Zero => Family::Zero,
            Family::Pwc { breaks, values } => {
                Family::Pwc { breaks: breaks.clone(), values: values.iter().map(|&v| f(v)).collect() }
            }
            Family::ExpDecay { c, gamma, cutoff } => {
                Family::ExpDecay { c: f(*c), gamma: *gamma, cutoff: *cutoff }
            }
            Family::Table { x, values } => {
                Family::Table { x: x.clone(), values: values.iter().map(|&v| f(v)).collect() }
            }
        };
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                a: s.a,
                b: s.b,
                shape: match s.shape {
                    Shape::Constant(v) => Shape::Constant(f(v)),
                    Shape::Exponential { c, gamma } => Shape::Exponential { c: f(c), gamma },
                    Shape::Linear { v0, v1 } => Shape::Linear { v0: f(v0), v1: f(v1) },
                },
            })
            .collect();
        Potential { family, segments }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("potential serialises")
    }

    fn to_raw(&self) -> RawPotential {
        let pair = |v: &C64| [v.re, v.im];
        match &self.family {
            Family::Zero => RawPotential::Zero,
            Family::Pwc { breaks, values } => RawPotential::Pwc {
                breaks: breaks.clone(),
                values: values.iter().map(|v| RawComplex::Pair(pair(v))).collect(),
            },
            Family::ExpDecay { c, gamma, cutoff } => RawPotential::Expdecay {
                c: RawComplex::Pair(pair(c)),
                gamma: *gamma,
                cutoff: *cutoff,
            },
            Family::Table { x, values } => RawPotential::Table {
                x: x.clone(),
                values: values.iter().map(|v| RawComplex::Pair(pair(v))).collect(),
            },
        }
    }
}

fn invalid(msg: String) -> JostError {
    JostError::InvalidPotential(msg)
}

fn check_abscissae(x: &[f64], what: &str) -> Result<()> {
    if x.len() < 2 {
        return Err(invalid(format!("{what} needs at least two entries")));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(invalid(format!("{what} contain a non-finite value")));
    }
    if x[0] < 0.0 {
        return Err(invalid(format!("{what} must be non-negative, got {}", x[0])));
    }
    if x.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid(format!("non-monotone {what}: must be strictly increasing")));
    }
    Ok(())
}

fn check_values(v: &[C64]) -> Result<()> {
    if v.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(invalid("potential values must be finite".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawComplex {
    Pair([f64; 2]),
    Real(f64),
}

impl From<RawComplex> for C64 {
    fn from(r: RawComplex) -> C64 {
        match r {
            RawComplex::Pair([re, im]) => C64::new(re, im),
            RawComplex::Real(re) => C64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum RawPotential {
    Zero,
    Pwc { breaks: Vec<f64>, values: Vec<RawComplex> },
    Expdecay { c: RawComplex, gamma: f64, cutoff: f64 },
    Table { x: Vec<f64>, values: Vec<RawComplex> },
}

impl TryFrom<RawPotential> for Potential {
    type Error = JostError;
    fn try_from(raw: RawPotential) -> Result<Potential> {
        let conv = |v: Vec<RawComplex>| v.into_iter().map(C64::from).collect::<Vec<_>>();
        match raw {
            RawPotential::Zero => Ok(Potential::zero()),
            RawPotential::Pwc { breaks, values } => Potential::pwc(breaks, conv(values)),
            RawPotential::Expdecay { c, gamma, cutoff } => Potential::expdecay(c.into(), gamma, cutoff),
            RawPotential::Table { x, values } => Potential::table(x, conv(values)),
        }
    }
}

impl Serialize for Potential {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Potential {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPotential::deserialize(d)?;
        Potential::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// Parse a potential from its JSON description.
pub fn parse_potential(text: &str) -> Result<Potential> {
    let raw: RawPotential =
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed potential config: {e}")))?;
    Potential::try_from(raw)
}

pub fn eval_q(p: &Potential, x: f64) -> C64 {
    p.eval(x)
}

pub fn l1_tail(p: &Potential, r: f64) -> f64 {
    p.l1_tail(r)
}

/// `Q(x) = [[0, q], [q̄, 0]]`.
#[allow(non_snake_case)]
pub fn assemble_Q(p: &Potential, x: f64) -> CMat2 {
    lift(p.eval(x))
}

fn lift(q: C64) -> CMat2 {
    CMat2::new(ZERO, q, q.conj(), ZERO)
}

/// The matrix potential seen by the solvers, possibly after the symmetry
/// transforms `Q ↦ Q̄` and `Q ↦ −ξQξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPotential {
    p: Potential,
    conjugated: bool,
    rotated: bool,
}

impl MatrixPotential {
    pub fn new(p: &Potential) -> Self {
        MatrixPotential { p: p.clone(), conjugated: false, rotated: false }
    }

    pub fn potential(&self) -> &Potential {
        &self.p
    }

    /// `Q ↦ Q̄` (entrywise conjugate).
    pub fn conjugated(mut self) -> Self {
        self.conjugated = !self.conjugated;
        self
    }

    /// `Q ↦ −ξQξ`.
    pub fn rotated(mut self) -> Self {
        self.rotated = !self.rotated;
        self
    }

    pub fn support(&self) -> f64 {
        self.p.support()
    }

    pub fn eval(&self, x: f64) -> CMat2 {
        self.transform(self.p.eval(x))
    }

    /// Matrix value using a specific segment's formula (one-sided at its ends).
    pub fn eval_on(&self, seg: &Segment, x: f64) -> CMat2 {
        self.transform(seg.value(x))
    }

    fn transform(&self, q: C64) -> CMat2 {
        let mut m = lift(q);
        if self.conjugated {
            m = m.conj();
        }
        if self.rotated {
            m = -(XI * m * XI);
        }
        m
    }

    /// Segment containing the open interval `(a, b)`, if `q` is non-zero there.
    pub fn segment_for(&self, a: f64, b: f64) -> Option<&Segment> {
        self.p.segment_at(0.5 * (a + b))
    }
}
