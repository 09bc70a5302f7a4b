//! Target laws: declarative specs, their quantile functions, moments and the
//! hypothesis checks the construction relies on.

pub mod normal;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use statrs::function::gamma::gamma;
use thiserror::Error;

use crate::quad::{self, QuadError};

/// Tolerance on weight sums and CDF endpoints.
pub const PROBABILITY_TOL: f64 = 1e-12;
/// A centered spec has `|mean|` at most this.
pub const CENTERING_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid atoms: {0}")]
    InvalidAtoms(String),
    #[error("invalid tabulated CDF: {0}")]
    InvalidCdf(String),
    #[error("{message}")]
    MomentOrder { p: f64, message: String },
    #[error("mean is not finite; the law cannot be centered")]
    NonIntegrableMean,
    #[error("law is not centered: mean = {mean:e}")]
    NotCentered { mean: f64 },
    #[error("the {p}-th absolute moment is {value}; a finite nonzero moment is required")]
    DegenerateMoment { p: f64, value: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("measure document: {0}")]
    Document(String),
}

/// Closed-form families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Uniform { a: f64, b: f64 },
    Gaussian { sigma: f64 },
    Laplace { b: f64 },
    /// `½δ_{-c} + ½δ_{c}`.
    TwoPoint { c: f64 },
    /// Arcsine law on `(-r, r)`.
    Arcsine { r: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub weight: f64,
}

/// A CDF knot; the CDF is linear between knots and may jump where two
/// consecutive knots share `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub x: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureKind {
    Builtin(Builtin),
    Discrete(Vec<Atom>),
    TabulatedCdf(Vec<Knot>),
}

/// A target law together with the moment order the caller asserts for it.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpec {
    kind: MeasureKind,
    p: f64,
    /// Total translation applied by [`center`].
    shift: f64,
}

/// Rejects moment orders for which the construction carries no guarantee.
pub fn check_moment_order(p: f64) -> Result<(), MeasureError> {
    if !p.is_finite() {
        return Err(MeasureError::MomentOrder {
            p,
            message: format!("moment order p = {p} must be a finite number greater than 1"),
        });
    }
    if p < 0.5 {
        return Err(MeasureError::MomentOrder {
            p,
            message: format!(
                "moment order p = {p} rejected (p <= 1 is unsupported): below p = 1/2 no \
                 simply connected domain can realize such a law, since every proper simply \
                 connected domain has E[tau^(p/2)] < infinity for all p < 1/2; this is an \
                 impossibility, not a missing feature"
            ),
        });
    }
    if p <= 1.0 {
        return Err(MeasureError::MomentOrder {
            p,
            message: format!(
                "moment order p = {p} rejected (p <= 1 is unsupported): finiteness of \
                 E[tau^(p/2)] is only established for p > 1; whether it holds for \
                 1/2 <= p <= 1 is an open problem"
            ),
        });
    }
    Ok(())
}

impl MeasureSpec {
    pub fn builtin(b: Builtin, p: f64) -> Result<Self, MeasureError> {
        Self::new(MeasureKind::Builtin(b), p)
    }

    pub fn discrete(atoms: Vec<Atom>, p: f64) -> Result<Self, MeasureError> {
        Self::new(MeasureKind::Discrete(atoms), p)
    }

    pub fn tabulated(knots: Vec<Knot>, p: f64) -> Result<Self, MeasureError> {
        Self::new(MeasureKind::TabulatedCdf(knots), p)
    }

    pub fn new(kind: MeasureKind, p: f64) -> Result<Self, MeasureError> {
        check_moment_order(p)?;
        let kind = validate_kind(kind)?;
        Ok(MeasureSpec { kind, p, shift: 0.0 })
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn with_p(&self, p: f64) -> Result<Self, MeasureError> {
        check_moment_order(p)?;
        Ok(MeasureSpec { p, ..self.clone() })
    }

    pub fn mean(&self) -> f64 {
        match &self.kind {
            MeasureKind::Builtin(Builtin::Uniform { a, b }) => 0.5 * (a + b),
            MeasureKind::Builtin(_) => 0.0,
            MeasureKind::Discrete(atoms) => atoms.iter().map(|a| a.x * a.weight).sum(),
            MeasureKind::TabulatedCdf(knots) => knots
                .windows(2)
                .map(|w| (w[1].f - w[0].f) * 0.5 * (w[0].x + w[1].x))
                .sum(),
        }
    }

    pub fn is_centered(&self) -> bool {
        self.mean().abs() <= CENTERING_TOL
    }

    /// `(lo, hi)` bounds of the support.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            MeasureKind::Builtin(b) => match *b {
                Builtin::Uniform { a, b } => (a, b),
                Builtin::Gaussian { .. } | Builtin::Laplace { .. } => {
                    (f64::NEG_INFINITY, f64::INFINITY)
                }
                Builtin::TwoPoint { c } => (-c, c),
                Builtin::Arcsine { r } => (-r, r),
            },
            MeasureKind::Discrete(atoms) => (atoms[0].x, atoms[atoms.len() - 1].x),
            MeasureKind::TabulatedCdf(knots) => (knots[0].x, knots[knots.len() - 1].x),
        }
    }

    pub fn is_bounded(&self) -> bool {
        let (lo, hi) = self.support();
        lo.is_finite() && hi.is_finite()
    }

    /// Right-continuous CDF `F(x) = μ(-∞, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_pair(x).1
    }

    /// `(F(x-), F(x))`.
    pub fn cdf_pair(&self, x: f64) -> (f64, f64) {
        match &self.kind {
            MeasureKind::Builtin(b) => {
                let v = match *b {
                    Builtin::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
                    Builtin::Gaussian { sigma } => normal::cdf(x / sigma),
                    Builtin::Laplace { b } => {
                        if x < 0.0 {
                            0.5 * (x / b).exp()
                        } else {
                            1.0 - 0.5 * (-x / b).exp()
                        }
                    }
                    Builtin::Arcsine { r } => {
                        if x <= -r {
                            0.0
                        } else if x >= r {
                            1.0
                        } else {
                            0.5 + (x / r).asin() / PI
                        }
                    }
                    Builtin::TwoPoint { c } => {
                        let left = if x <= -c {
                            0.0
                        } else if x <= c {
                            0.5
                        } else {
                            1.0
                        };
                        let right = if x < -c {
                            0.0
                        } else if x < c {
                            0.5
                        } else {
                            1.0
                        };
                        return (left, right);
                    }
                };
                (v, v)
            }
            MeasureKind::Discrete(atoms) => {
                let left: f64 = atoms.iter().filter(|a| a.x < x).map(|a| a.weight).sum();
                let right: f64 = atoms.iter().filter(|a| a.x <= x).map(|a| a.weight).sum();
                (left.min(1.0), right.min(1.0))
            }
            MeasureKind::TabulatedCdf(knots) => tabulated_cdf(knots, x),
        }
    }

    /// Locations where the CDF jumps.
    pub fn atoms(&self) -> Vec<f64> {
        match &self.kind {
            MeasureKind::Builtin(Builtin::TwoPoint { c }) => vec![-c, *c],
            MeasureKind::Builtin(_) => vec![],
            MeasureKind::Discrete(atoms) => atoms.iter().map(|a| a.x).collect(),
            MeasureKind::TabulatedCdf(knots) => knots
                .windows(2)
                .filter(|w| w[0].x == w[1].x && w[1].f > w[0].f)
                .map(|w| w[0].x)
                .collect(),
        }
    }

    /// `E|X|^q`; `+∞` when the moment diverges.
    pub fn moment(&self, q: f64) -> Result<f64, MeasureError> {
        if q.is_nan() || q <= 0.0 {
            return Err(MeasureError::InvalidParameter(format!(
                "moment order q must be positive, got {q}"
            )));
        }
        let v = match &self.kind {
            MeasureKind::Builtin(b) => match *b {
                Builtin::Uniform { a, b } => {
                    let anti = |x: f64| x.signum() * x.abs().powf(q + 1.0) / (q + 1.0);
                    (anti(b) - anti(a)) / (b - a)
                }
                Builtin::Gaussian { sigma } => {
                    sigma.powf(q) * 2f64.powf(0.5 * q) * gamma(0.5 * (q + 1.0)) / PI.sqrt()
                }
                Builtin::Laplace { b } => b.powf(q) * gamma(q + 1.0),
                Builtin::TwoPoint { c } => c.powf(q),
                Builtin::Arcsine { r } => {
                    r.powf(q) * gamma(0.5 * (q + 1.0)) / (PI.sqrt() * gamma(0.5 * q + 1.0))
                }
            },
            MeasureKind::Discrete(atoms) => {
                atoms.iter().map(|a| a.weight * a.x.abs().powf(q)).sum()
            }
            MeasureKind::TabulatedCdf(knots) => tabulated_moment(knots, q)?,
        };
        Ok(if v.is_finite() { v } else { f64::INFINITY })
    }

    /// Checks the hypotheses of the construction: centered, finite and nonzero
    /// `p`-th moment.
    pub fn check_hypotheses(&self) -> Result<(), MeasureError> {
        let mean = self.mean();
        if !mean.is_finite() {
            return Err(MeasureError::NonIntegrableMean);
        }
        if mean.abs() > CENTERING_TOL {
            return Err(MeasureError::NotCentered { mean });
        }
        let m = self.moment(self.p)?;
        if !(m.is_finite() && m > 0.0) {
            return Err(MeasureError::DegenerateMoment { p: self.p, value: m });
        }
        Ok(())
    }

    pub fn quantile(&self) -> QuantileFn {
        quantile(self)
    }

    pub fn to_document(&self) -> MeasureDocument {
        let p = self.p;
        let shift = (self.shift != 0.0).then_some(self.shift);
        match &self.kind {
            MeasureKind::Builtin(b) => {
                let (name, params): (&str, Vec<(&str, f64)>) = match *b {
                    Builtin::Uniform { a, b } => ("uniform", vec![("a", a), ("b", b)]),
                    Builtin::Gaussian { sigma } => ("gaussian", vec![("sigma", sigma)]),
                    Builtin::Laplace { b } => ("laplace", vec![("b", b)]),
                    Builtin::TwoPoint { c } => ("two_point", vec![("c", c)]),
                    Builtin::Arcsine { r } => ("arcsine", vec![("r", r)]),
                };
                MeasureDocument::Builtin {
                    name: name.to_string(),
                    params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                    p,
                    shift,
                }
            }
            MeasureKind::Discrete(atoms) => MeasureDocument::Discrete {
                atoms: atoms.iter().map(|a| (a.x, a.weight)).collect(),
                p,
                shift,
            },
            MeasureKind::TabulatedCdf(knots) => MeasureDocument::TabulatedCdf {
                knots: knots.iter().map(|k| (k.x, k.f)).collect(),
                p,
                shift,
            },
        }
    }

    pub fn from_document(doc: MeasureDocument) -> Result<Self, MeasureError> {
        let (mut spec, shift) = match doc {
            MeasureDocument::Builtin {
                name,
                params,
                p,
                shift,
            } => {
                let get = |key: &str| {
                    params.get(key).copied().ok_or_else(|| {
                        MeasureError::Document(format!("builtin '{name}' needs parameter '{key}'"))
                    })
                };
                let b = match name.as_str() {
                    "uniform" => Builtin::Uniform {
                        a: get("a")?,
                        b: get("b")?,
                    },
                    "gaussian" => Builtin::Gaussian { sigma: get("sigma")? },
                    "laplace" => Builtin::Laplace { b: get("b")? },
                    "two_point" => Builtin::TwoPoint { c: get("c")? },
                    "arcsine" => Builtin::Arcsine { r: get("r")? },
                    other => {
                        return Err(MeasureError::Document(format!("unknown builtin '{other}'")))
                    }
                };
                (MeasureSpec::builtin(b, p)?, shift)
            }
            MeasureDocument::Discrete { atoms, p, shift } => (
                MeasureSpec::discrete(
                    atoms.into_iter().map(|(x, weight)| Atom { x, weight }).collect(),
                    p,
                )?,
                shift,
            ),
            MeasureDocument::TabulatedCdf { knots, p, shift } => (
                MeasureSpec::tabulated(knots.into_iter().map(|(x, f)| Knot { x, f }).collect(), p)?,
                shift,
            ),
        };
        spec.shift = shift.unwrap_or(0.0);
        Ok(spec)
    }

    pub fn from_json(text: &str) -> Result<Self, MeasureError> {
        let doc: MeasureDocument =
            serde_json::from_str(text).map_err(|e| MeasureError::Document(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("measure documents always serialize")
    }

    /// SHA-256 of the canonical JSON document.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

/// On-disk form of a [`MeasureSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureDocument {
    Builtin {
        name: String,
        params: BTreeMap<String, f64>,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
    },
    Discrete {
        atoms: Vec<(f64, f64)>,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
    },
    TabulatedCdf {
        knots: Vec<(f64, f64)>,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
    },
}

fn validate_kind(kind: MeasureKind) -> Result<MeasureKind, MeasureError> {
    let positive = |name: &str, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(MeasureError::InvalidParameter(format!(
                "{name} must be positive and finite, got {v}"
            )))
        }
    };
    match kind {
        MeasureKind::Builtin(b) => {
            match b {
                Builtin::Uniform { a, b } => {
                    if !(a.is_finite() && b.is_finite() && a < b) {
                        return Err(MeasureError::InvalidParameter(format!(
                            "uniform needs finite a < b, got a = {a}, b = {b}"
                        )));
                    }
                }
                Builtin::Gaussian { sigma } => positive("sigma", sigma)?,
                Builtin::Laplace { b } => positive("b", b)?,
                Builtin::TwoPoint { c } => positive("c", c)?,
                Builtin::Arcsine { r } => positive("r", r)?,
            }
            Ok(MeasureKind::Builtin(b))
        }
        MeasureKind::Discrete(mut atoms) => {
            if atoms.is_empty() {
                return Err(MeasureError::InvalidAtoms("no atoms".into()));
            }
            for a in &atoms {
                if !a.x.is_finite() || !(a.weight.is_finite() && a.weight > 0.0) {
                    return Err(MeasureError::InvalidAtoms(format!(
                        "atom ({}, {}) needs a finite location and positive weight",
                        a.x, a.weight
                    )));
                }
            }
            let total: f64 = atoms.iter().map(|a| a.weight).sum();
            if (total - 1.0).abs() > PROBABILITY_TOL {
                return Err(MeasureError::InvalidAtoms(format!(
                    "weights sum to {total}, expected 1"
                )));
            }
            atoms.sort_by(|l, r| l.x.total_cmp(&r.x));
            let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
            for a in atoms {
                match merged.last_mut() {
                    Some(last) if last.x == a.x => last.weight += a.weight,
                    _ => merged.push(a),
                }
            }
            Ok(MeasureKind::Discrete(merged))
        }
        MeasureKind::TabulatedCdf(knots) => {
            if knots.len() < 2 {
                return Err(MeasureError::InvalidCdf("need at least two knots".into()));
            }
            for k in &knots {
                if !(k.x.is_finite() && k.f.is_finite()) {
                    return Err(MeasureError::InvalidCdf(format!(
                        "non-finite knot ({}, {})",
                        k.x, k.f
                    )));
                }
            }
            for w in knots.windows(2) {
                if w[1].x < w[0].x {
                    return Err(MeasureError::InvalidCdf(format!(
                        "knot locations decrease at x = {}",
                        w[1].x
                    )));
                }
                if w[1].f < w[0].f {
                    return Err(MeasureError::InvalidCdf(format!(
                        "CDF decreases at x = {}",
                        w[1].x
                    )));
                }
            }
            let first = knots[0].f;
            let last = knots[knots.len() - 1].f;
            if first.abs() > PROBABILITY_TOL || (last - 1.0).abs() > PROBABILITY_TOL {
                return Err(MeasureError::InvalidCdf(format!(
                    "CDF must run from 0 to 1, got {first} .. {last}"
                )));
            }
            Ok(MeasureKind::TabulatedCdf(knots))
        }
    }
}

fn tabulated_cdf(knots: &[Knot], x: f64) -> (f64, f64) {
    let n = knots.len();
    if x < knots[0].x {
        return (0.0, 0.0);
    }
    if x > knots[n - 1].x {
        return (1.0, 1.0);
    }
    // All knots sitting exactly at x define the jump there.
    let first_ge = knots.partition_point(|k| k.x < x);
    let first_gt = knots.partition_point(|k| k.x <= x);
    if first_ge < first_gt {
        let left = if first_ge == 0 {
            0.0
        } else {
            knots[first_ge].f.min(knots[first_ge - 1].f.max(knots[first_ge].f))
        };
        return (left.min(knots[first_ge].f), knots[first_gt - 1].f);
    }
    let (k0, k1) = (knots[first_gt - 1], knots[first_gt]);
    let v = k0.f + (k1.f - k0.f) * (x - k0.x) / (k1.x - k0.x);
    (v, v)
}

fn tabulated_moment(knots: &[Knot], q: f64) -> Result<f64, MeasureError> {
    let mut total = 0.0;
    for w in knots.windows(2) {
        let (k0, k1) = (w[0], w[1]);
        let mass = k1.f - k0.f;
        if mass <= 0.0 {
            continue;
        }
        if k1.x == k0.x {
            total += mass * k0.x.abs().powf(q);
            continue;
        }
        let density = mass / (k1.x - k0.x);
        let f = |x: f64| x.abs().powf(q);
        // |x|^q is not smooth at 0; split there.
        let piece = |a: f64, b: f64| quad::integrate(f, a, b, 0.0, 1e-9);
        let integral = if k0.x < 0.0 && k1.x > 0.0 {
            piece(k0.x, 0.0)? + piece(0.0, k1.x)?
        } else {
            piece(k0.x, k1.x)?
        };
        total += density * integral;
    }
    Ok(total)
}

/// Translates the law to zero mean, recording the shift.
pub fn center(spec: &MeasureSpec) -> Result<MeasureSpec, MeasureError> {
    let mean = spec.mean();
    if !mean.is_finite() {
        return Err(MeasureError::NonIntegrableMean);
    }
    let kind = match &spec.kind {
        MeasureKind::Builtin(Builtin::Uniform { a, b }) => MeasureKind::Builtin(Builtin::Uniform {
            a: a - mean,
            b: b - mean,
        }),
        MeasureKind::Builtin(b) => MeasureKind::Builtin(*b),
        MeasureKind::Discrete(atoms) => MeasureKind::Discrete(
            atoms
                .iter()
                .map(|a| Atom {
                    x: a.x - mean,
                    weight: a.weight,
                })
                .collect(),
        ),
        MeasureKind::TabulatedCdf(knots) => MeasureKind::TabulatedCdf(
            knots
                .iter()
                .map(|k| Knot {
                    x: k.x - mean,
                    f: k.f,
                })
                .collect(),
        ),
    };
    Ok(MeasureSpec {
        kind,
        p: spec.p,
        shift: spec.shift - mean,
    })
}

#[derive(Debug, Clone, PartialEq)]
enum QuantileKind {
    Uniform { a: f64, b: f64 },
    Gaussian { sigma: f64 },
    Laplace { b: f64 },
    TwoPoint { c: f64 },
    Arcsine { r: f64 },
    /// Atom locations and cumulative weights.
    Discrete { xs: Vec<f64>, cum: Vec<f64>, partial: Vec<f64> },
    /// Knots plus `∫_0^{F_i} G` at each knot.
    Tabulated { knots: Vec<Knot>, partial: Vec<f64> },
}

/// Left-continuous generalized inverse `G(u) = inf{x : F(x) ≥ u}` of a CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileFn {
    kind: QuantileKind,
    support: (f64, f64),
    has_jumps: bool,
    has_flats: bool,
}

/// Builds the quantile function of `spec`.
pub fn quantile(spec: &MeasureSpec) -> QuantileFn {
    let support = spec.support();
    let (kind, has_jumps, has_flats) = match &spec.kind {
        MeasureKind::Builtin(b) => match *b {
            Builtin::Uniform { a, b } => (QuantileKind::Uniform { a, b }, false, false),
            Builtin::Gaussian { sigma } => (QuantileKind::Gaussian { sigma }, false, false),
            Builtin::Laplace { b } => (QuantileKind::Laplace { b }, false, false),
            Builtin::TwoPoint { c } => (QuantileKind::TwoPoint { c }, true, true),
            Builtin::Arcsine { r } => (QuantileKind::Arcsine { r }, false, false),
        },
        MeasureKind::Discrete(atoms) => {
            let mut cum = Vec::with_capacity(atoms.len());
            let mut partial = Vec::with_capacity(atoms.len());
            let (mut c, mut m) = (0.0, 0.0);
            for a in atoms {
                c += a.weight;
                m += a.weight * a.x;
                cum.push(c);
                partial.push(m);
            }
            let xs = atoms.iter().map(|a| a.x).collect();
            (
                QuantileKind::Discrete { xs, cum, partial },
                atoms.len() > 1,
                true,
            )
        }
        MeasureKind::TabulatedCdf(knots) => {
            let mut partial = vec![0.0];
            let mut acc = 0.0;
            for w in knots.windows(2) {
                acc += (w[1].f - w[0].f) * 0.5 * (w[0].x + w[1].x);
                partial.push(acc);
            }
            let jumps = knots.windows(2).any(|w| w[1].f == w[0].f && w[1].x > w[0].x);
            let flats = knots.windows(2).any(|w| w[1].x == w[0].x && w[1].f > w[0].f);
            (
                QuantileKind::Tabulated {
                    knots: knots.clone(),
                    partial,
                },
                jumps,
                flats,
            )
        }
    };
    QuantileFn {
        kind,
        support,
        has_jumps,
        has_flats,
    }
}

impl QuantileFn {
    /// `G(u)`; `u` outside `(0, 1)` is clamped to the support bounds.
    pub fn eval(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return self.support.0;
        }
        if u >= 1.0 {
            return self.support.1;
        }
        match &self.kind {
            QuantileKind::Uniform { a, b } => a + (b - a) * u,
            QuantileKind::Gaussian { sigma } => sigma * normal::quantile(u),
            QuantileKind::Laplace { b } => {
                if u <= 0.5 {
                    b * (2.0 * u).ln()
                } else {
                    -b * (2.0 * (1.0 - u)).ln()
                }
            }
            QuantileKind::TwoPoint { c } => {
                if u <= 0.5 {
                    -c
                } else {
                    *c
                }
            }
            QuantileKind::Arcsine { r } => -r * (PI * u).cos(),
            QuantileKind::Discrete { xs, cum, .. } => {
                let i = cum.partition_point(|&c| c < u);
                xs[i.min(xs.len() - 1)]
            }
            QuantileKind::Tabulated { knots, .. } => {
                let i = knots.partition_point(|k| k.f < u);
                if i == 0 {
                    return knots[0].x;
                }
                if i >= knots.len() {
                    return knots[knots.len() - 1].x;
                }
                let (k0, k1) = (knots[i - 1], knots[i]);
                k0.x + (k1.x - k0.x) * (u - k0.f) / (k1.f - k0.f)
            }
        }
    }

    /// `∫_0^u G(s) ds`, in closed form for every kind.
    pub fn integral(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match &self.kind {
            QuantileKind::Uniform { a, b } => a * u + 0.5 * (b - a) * u * u,
            QuantileKind::Gaussian { sigma } => {
                if u <= 0.0 || u >= 1.0 {
                    0.0
                } else {
                    -sigma * normal::pdf(normal::quantile(u))
                }
            }
            QuantileKind::Laplace { b } => {
                let g = |v: f64| if v <= 0.0 { 0.0 } else { v * (2.0 * v).ln() - v };
                if u <= 0.5 {
                    b * g(u)
                } else {
                    b * g(1.0 - u)
                }
            }
            QuantileKind::TwoPoint { c } => {
                if u <= 0.5 {
                    -c * u
                } else {
                    c * (u - 1.0)
                }
            }
            QuantileKind::Arcsine { r } => -r * (PI * u).sin() / PI,
            QuantileKind::Discrete { xs, cum, partial } => {
                let i = cum.partition_point(|&c| c < u).min(xs.len() - 1);
                let (c_prev, m_prev) = if i == 0 { (0.0, 0.0) } else { (cum[i - 1], partial[i - 1]) };
                m_prev + (u - c_prev) * xs[i]
            }
            QuantileKind::Tabulated { knots, partial } => {
                let i = knots.partition_point(|k| k.f < u);
                if i == 0 {
                    return 0.0;
                }
                if i >= knots.len() {
                    return partial[partial.len() - 1];
                }
                let k0 = knots[i - 1];
                partial[i - 1] + (u - k0.f) * 0.5 * (k0.x + self.eval(u))
            }
        }
    }

    /// Mean of `G` over `[u0, u1]`.
    pub fn cell_average(&self, u0: f64, u1: f64) -> f64 {
        (self.integral(u1) - self.integral(u0)) / (u1 - u0)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn is_unbounded(&self) -> bool {
        !(self.support.0.is_finite() && self.support.1.is_finite())
    }

    /// `G` has jump discontinuities (gaps in the support).
    pub fn has_jumps(&self) -> bool {
        self.has_jumps
    }

    /// `G` has flat stretches (atoms of the law).
    pub fn has_flats(&self) -> bool {
        self.has_flats
    }
}
