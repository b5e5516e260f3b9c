//! Planar paths `t ↦ (u(t), v(t))` on the parameter rectangle
//! `B = [0, π] × [0, 2π]` of the sphere chart.
//!
//! Bézier nets are the design primitive; [`AnalyticPath`] covers the closed
//! form test configurations (great and small circles, straight lines).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DomainPoint {
    pub u: f64,
    pub v: f64,
}

impl DomainPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        DomainPoint { u, v }
    }

    pub fn in_domain(&self) -> bool {
        (0.0..=PI).contains(&self.u) && (0.0..=TAU).contains(&self.v)
    }

    fn lerp(self, other: DomainPoint, t: f64) -> DomainPoint {
        let s = 1.0 - t;
        DomainPoint::new(s * self.u + t * other.u, s * self.v + t * other.v)
    }
}

impl From<[f64; 2]> for DomainPoint {
    fn from(p: [f64; 2]) -> Self {
        DomainPoint::new(p[0], p[1])
    }
}

/// Position and first two parameter derivatives of a path.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

/// A twice differentiable path in the `(u, v)` chart.
///
/// `sample_at` must accept any real `t` (polynomials and analytic paths
/// extend naturally); finite-difference stencils rely on it near the ends of
/// `[0, 1]`. Range-checked access goes through [`path_sample`].
pub trait ParametricPath: Sync {
    fn sample_at(&self, t: f64) -> PathSample;

    /// Whether the path returns to its starting chart point at `t = 1`.
    fn is_closed(&self) -> bool;
}

/// Range checked sampling on `[0, 1]`.
pub fn path_sample(path: &dyn ParametricPath, t: f64) -> Result<PathSample> {
    check_parameter(t)?;
    Ok(path.sample_at(t))
}

fn check_parameter(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(t))
    }
}

/// Bernstein–Bézier curve with control points `p₀ … pₙ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DomainPoint>", into = "Vec<DomainPoint>")]
pub struct BezierPath2 {
    control_points: Vec<DomainPoint>,
}

impl TryFrom<Vec<DomainPoint>> for BezierPath2 {
    type Error = Error;
    fn try_from(points: Vec<DomainPoint>) -> Result<Self> {
        BezierPath2::new(points)
    }
}

impl From<BezierPath2> for Vec<DomainPoint> {
    fn from(p: BezierPath2) -> Self {
        p.control_points
    }
}

impl BezierPath2 {
    pub fn new(control_points: Vec<DomainPoint>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::InvalidNet(format!(
                "need at least 2 control points, got {}",
                control_points.len()
            )));
        }
        if let Some(p) = control_points
            .iter()
            .find(|p| !(p.u.is_finite() && p.v.is_finite()))
        {
            return Err(Error::InvalidNet(format!(
                "non-finite control point ({}, {})",
                p.u, p.v
            )));
        }
        Ok(BezierPath2 { control_points })
    }

    pub fn control_points(&self) -> &[DomainPoint] {
        &self.control_points
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    /// The same curve traversed backwards, `b(1 − t)`.
    pub fn reversed(&self) -> BezierPath2 {
        let mut pts = self.control_points.clone();
        pts.reverse();
        BezierPath2 {
            control_points: pts,
        }
    }

    /// Degree elevation by one; the curve is unchanged.
    pub fn elevated(&self) -> BezierPath2 {
        let n = self.degree();
        let p = &self.control_points;
        let mut out = Vec::with_capacity(n + 2);
        out.push(p[0]);
        for i in 1..=n {
            let a = i as f64 / (n + 1) as f64;
            out.push(DomainPoint::new(
                a * p[i - 1].u + (1.0 - a) * p[i].u,
                a * p[i - 1].v + (1.0 - a) * p[i].v,
            ));
        }
        out.push(p[n]);
        BezierPath2 {
            control_points: out,
        }
    }

    /// `b(t)` for any real `t` (de Casteljau; no range check).
    pub fn point_at(&self, t: f64) -> DomainPoint {
        de_casteljau(&self.control_points, t)
    }

    /// Range checked evaluation of `b(t)`.
    pub fn eval(&self, t: f64) -> Result<DomainPoint> {
        check_parameter(t)?;
        Ok(self.point_at(t))
    }

    /// `(u', v')` for `order = 1`, `(u'', v'')` for `order = 2`.
    ///
    /// Uses the hodograph forms `n Σ B^{n−1}_i (p_{i+1} − p_i)` and
    /// `n(n−1) Σ B^{n−2}_i (p_{i+2} − 2p_{i+1} + p_i)`.
    pub fn derivative(&self, t: f64, order: usize) -> Result<(f64, f64)> {
        check_parameter(t)?;
        let n = self.degree();
        if order == 0 || order > 2 || order > n {
            return Err(Error::DegreeTooLow { order, degree: n });
        }
        let d = self.derivative_at(t, order);
        Ok((d.u, d.v))
    }

    fn derivative_at(&self, t: f64, order: usize) -> DomainPoint {
        let n = self.degree();
        if order > n {
            return DomainPoint::default();
        }
        let mut diffs = self.control_points.clone();
        for _ in 0..order {
            diffs = diffs
                .windows(2)
                .map(|w| DomainPoint::new(w[1].u - w[0].u, w[1].v - w[0].v))
                .collect();
        }
        let factor: f64 = (0..order).map(|k| (n - k) as f64).product();
        let d = de_casteljau(&diffs, t);
        DomainPoint::new(d.u * factor, d.v * factor)
    }

    /// Closure, C¹ and domain diagnostics for the net.
    pub fn validate(&self, tol: &Tolerances) -> ValidationReport {
        validate_closed_c1(self, tol)
    }
}

fn de_casteljau(points: &[DomainPoint], t: f64) -> DomainPoint {
    let mut work = points.to_vec();
    let n = work.len();
    for level in 1..n {
        for i in 0..n - level {
            work[i] = work[i].lerp(work[i + 1], t);
        }
    }
    work[0]
}

impl ParametricPath for BezierPath2 {
    fn sample_at(&self, t: f64) -> PathSample {
        let p = self.point_at(t);
        let d1 = self.derivative_at(t, 1);
        let d2 = self.derivative_at(t, 2);
        PathSample {
            t,
            u: p.u,
            v: p.v,
            du: d1.u,
            dv: d1.v,
            ddu: d2.u,
            ddv: d2.v,
        }
    }

    fn is_closed(&self) -> bool {
        let first = self.control_points[0];
        let last = self.control_points[self.degree()];
        (first.u - last.u).abs() <= 1e-12 && (first.v - last.v).abs() <= 1e-12
    }
}

/// Closed-form paths used as test configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AnalyticPath {
    /// `u = u₀ + du·t`, `v = v₀ + dv·t`.
    Line { u0: f64, v0: f64, du: f64, dv: f64 },
    /// `u = 2πt`, `v ≡ v₀`; `v₀ = π/2` is the equator.
    SmallCircle { v0: f64 },
}

impl AnalyticPath {
    pub fn great_circle() -> Self {
        AnalyticPath::SmallCircle {
            v0: std::f64::consts::FRAC_PI_2,
        }
    }
}

impl ParametricPath for AnalyticPath {
    fn sample_at(&self, t: f64) -> PathSample {
        match *self {
            AnalyticPath::Line { u0, v0, du, dv } => PathSample {
                t,
                u: u0 + du * t,
                v: v0 + dv * t,
                du,
                dv,
                ddu: 0.0,
                ddv: 0.0,
            },
            AnalyticPath::SmallCircle { v0 } => PathSample {
                t,
                u: TAU * t,
                v: v0,
                du: TAU,
                dv: 0.0,
                ddu: 0.0,
                ddv: 0.0,
            },
        }
    }

    fn is_closed(&self) -> bool {
        match *self {
            AnalyticPath::SmallCircle { .. } => true,
            AnalyticPath::Line { du, dv, .. } => {
                let turns = du / TAU;
                dv.abs() <= 1e-12 && du.abs() > 0.0 && (turns - turns.round()).abs() <= 1e-12
            }
        }
    }
}

/// Any supported path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Path {
    Bezier(BezierPath2),
    Analytic(AnalyticPath),
}

impl ParametricPath for Path {
    fn sample_at(&self, t: f64) -> PathSample {
        match self {
            Path::Bezier(b) => b.sample_at(t),
            Path::Analytic(a) => a.sample_at(t),
        }
    }

    fn is_closed(&self) -> bool {
        match self {
            Path::Bezier(b) => b.is_closed(),
            Path::Analytic(a) => a.is_closed(),
        }
    }
}

impl From<BezierPath2> for Path {
    fn from(b: BezierPath2) -> Self {
        Path::Bezier(b)
    }
}

impl From<AnalyticPath> for Path {
    fn from(a: AnalyticPath) -> Self {
        Path::Analytic(a)
    }
}

/// Diagnostics for a control net. Never an error: every flag is reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub degree: usize,
    /// `p₀ = pₙ`.
    pub closed: bool,
    /// Closed and `{pₙ₋₁, p₀, p₁}` collinear.
    pub c1: bool,
    /// Smallest chart distance of a sampled `v(t)` to a pole (`0`, `π` or `2π`).
    pub pole_proximity: f64,
    /// Control points outside `B`.
    pub out_of_domain: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Number of uniform samples used for the pole proximity scan.
const POLE_SCAN_SAMPLES: usize = 512;

pub fn validate_closed_c1(path: &BezierPath2, tol: &Tolerances) -> ValidationReport {
    let pts = path.control_points();
    let n = path.degree();
    let closed = path.is_closed();
    let c1 = closed && n >= 2 && {
        let (a, o, b) = (pts[n - 1], pts[0], pts[1]);
        let area = 0.5 * ((a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u)).abs();
        area < tol.collinear_area
    };

    let pole_proximity = (0..=POLE_SCAN_SAMPLES)
        .map(|i| {
            let v = path.point_at(i as f64 / POLE_SCAN_SAMPLES as f64).v;
            let r = v.rem_euclid(PI);
            r.min(PI - r)
        })
        .fold(f64::INFINITY, f64::min);

    let out_of_domain: Vec<usize> = pts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.in_domain())
        .map(|(i, _)| i)
        .collect();

    let mut warnings = Vec::new();
    if !closed {
        warnings.push("curve not closed".to_string());
    } else if !c1 {
        warnings.push("closed curve is not C1 at the seam".to_string());
    }
    if !out_of_domain.is_empty() {
        warnings.push(format!(
            "control points outside the domain rectangle: {out_of_domain:?}"
        ));
    }
    if pole_proximity.sin() < tol.pole {
        warnings.push(format!(
            "curve passes within {pole_proximity:e} of a pole of the sphere chart"
        ));
    }

    ValidationReport {
        degree: n,
        closed,
        c1,
        pole_proximity,
        out_of_domain,
        warnings,
    }
}
