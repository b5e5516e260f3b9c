//! Differential geometry of the ruled surface traced by `X(t)`.
//!
//! The curvature `κ̂ = κ + εκ̄` and torsion `τ̂ = τ + ετ̄` come from the chart
//! coordinates by dual substitution:
//!
//! ```text
//! κ̂² = û'² sin²v̂ + v̂'²
//! τ̂  = [cos v̂ (û'³ sin²v̂ + 2û'v̂'²) + sin v̂ (û''v̂' − û'v̂'')] / κ̂²
//! ```
//!
//! Everything else follows: `δ = κ̄/κ`, `cot σ = τ̄/κ̄`, the striction point,
//! and the fundamental forms in the chart `r(t, w) = m(t) + w x(t)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{path_sample, ParametricPath, Path};
use crate::dual::{DualScalar, DualVec3};
use crate::error::{Error, Result};
use crate::lift::LiftField;
use crate::quadrature;
use crate::sphere::{self, BlaschkeFrame, DualCoordinates, DualCurvePoint};
use crate::tolerance::Tolerances;
use crate::Vec3;

/// Step used for every finite difference in this module.
pub const DIFF_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SampleFlags {
    /// `|κ̄| ≤ developable`: `σ` undefined.
    pub developable: bool,
    /// `κ < κ_min`: no frame, only `κ` is meaningful.
    pub cylindrical: bool,
    /// `|sin v| < pole`.
    pub pole: bool,
    /// Evaluation failed for another reason (e.g. the field left its domain).
    pub invalid: bool,
}

impl SampleFlags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (set, name) in [
            (self.developable, "developable"),
            (self.cylindrical, "cylindrical"),
            (self.pole, "pole"),
            (self.invalid, "invalid"),
        ] {
            if set {
                out.push(name);
            }
        }
        out
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<SampleFlags> {
        let mut flags = SampleFlags::default();
        for name in names {
            match name {
                "developable" => flags.developable = true,
                "cylindrical" => flags.cylindrical = true,
                "pole" => flags.pole = true,
                "invalid" => flags.invalid = true,
                other => return Err(Error::InvalidArgument(format!("unknown flag `{other}`"))),
            }
        }
        Ok(flags)
    }

    pub fn any(&self) -> bool {
        self.developable || self.cylindrical || self.pole || self.invalid
    }
}

/// Invariants at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InvariantSample {
    pub t: f64,
    pub kappa: f64,
    pub kappa_bar: f64,
    pub tau: f64,
    pub tau_bar: f64,
    /// Distribution parameter `κ̄/κ`.
    pub delta: f64,
    /// `τ̄/κ̄`, absent at developable samples.
    pub cot_sigma: Option<f64>,
    pub flags: SampleFlags,
}

impl InvariantSample {
    /// `cot σ`, or `StrictionUndefined` at a developable sample.
    pub fn cot_sigma_checked(&self) -> Result<f64> {
        self.cot_sigma
            .ok_or(Error::StrictionUndefined { t: self.t })
    }

    fn from_dual(
        t: f64,
        kappa_hat: DualScalar,
        tau_hat: DualScalar,
        pole: bool,
        tol: &Tolerances,
    ) -> Self {
        let (kappa, kappa_bar) = (kappa_hat.real, kappa_hat.dual);
        let developable = kappa_bar.abs() <= tol.developable;
        InvariantSample {
            t,
            kappa,
            kappa_bar,
            tau: tau_hat.real,
            tau_bar: tau_hat.dual,
            delta: kappa_bar / kappa,
            cot_sigma: (!developable).then(|| tau_hat.dual / kappa_bar),
            flags: SampleFlags {
                developable,
                pole,
                ..SampleFlags::default()
            },
        }
    }

    /// Placeholder for a failed sample inside a profile.
    fn failed(t: f64, error: &Error) -> Self {
        let mut s = InvariantSample {
            t,
            ..InvariantSample::default()
        };
        match *error {
            Error::CylindricalPoint { kappa, .. } => {
                s.kappa = kappa;
                s.flags.cylindrical = true;
            }
            _ => s.flags.invalid = true,
        }
        s
    }
}

/// Striction point with its velocity and arc length from `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrictionData {
    pub t: f64,
    pub m: Vec3,
    pub dm_dt: Vec3,
    /// `None` when the arc-length integral does not converge, e.g. when
    /// `[0, t]` passes through a cylindrical point.
    pub s: Option<f64>,
}

/// Point, normal and fundamental forms at `r(t, w) = m(t) + w x(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSample {
    pub t: f64,
    pub w: f64,
    pub point: Vec3,
    pub normal: Vec3,
    pub r_t: Vec3,
    pub r_w: Vec3,
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub gaussian: f64,
    pub mean: f64,
}

/// A closed or open one-parameter line motion: a chart path lifted by a field.
#[derive(Debug, Clone)]
pub struct RuledMotion<P: ParametricPath = Path> {
    path: P,
    field: LiftField,
    tol: Tolerances,
}

impl<P: ParametricPath> RuledMotion<P> {
    pub fn new(path: P, field: LiftField) -> Self {
        RuledMotion {
            path,
            field,
            tol: Tolerances::default(),
        }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn path(&self) -> &P {
        &self.path
    }

    pub fn field(&self) -> &LiftField {
        &self.field
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    fn check(&self, t: f64) -> Result<()> {
        path_sample(&self.path, t).map(|_| ())
    }

    pub fn dual_curve(&self, t: f64) -> Result<DualCurvePoint> {
        sphere::dual_curve(&self.path, &self.field, t)
    }

    pub(crate) fn dual_curve_at(&self, t: f64) -> Result<DualCurvePoint> {
        sphere::dual_curve_at(&self.path, &self.field, t)
    }

    pub fn blaschke_frame(&self, t: f64) -> Result<BlaschkeFrame> {
        sphere::blaschke_frame(&self.dual_curve(t)?, self.tol.kappa_min)
    }

    /// `(κ̂, τ̂)` from the coordinate formulas, for any real `t`.
    pub(crate) fn dual_invariants_at(&self, t: f64) -> Result<(DualScalar, DualScalar, bool)> {
        let p = self.path.sample_at(t);
        let lift = self.field.eval_jet(p.u, p.v)?;
        let c = DualCoordinates::new(&p, &lift);
        let (sv, cv) = (c.v.sin(), c.v.cos());
        let k2 = c.du * c.du * sv * sv + c.dv * c.dv;
        let kappa = k2.real.max(0.0).sqrt();
        if kappa < self.tol.kappa_min || !kappa.is_finite() {
            return Err(Error::CylindricalPoint { t, kappa });
        }
        let kappa_hat = DualScalar::new(kappa, k2.dual / (2.0 * kappa));
        let num = cv
            * (c.du * c.du * c.du * sv * sv + DualScalar::constant(2.0) * c.du * c.dv * c.dv)
            + sv * (c.ddu * c.dv - c.du * c.ddv);
        let inv = 1.0 / k2.real;
        let tau_hat = num * DualScalar::new(inv, -k2.dual * inv * inv);
        Ok((kappa_hat, tau_hat, sv.real.abs() < self.tol.pole))
    }

    pub(crate) fn invariants_unchecked(&self, t: f64) -> Result<InvariantSample> {
        let (k, tau, pole) = self.dual_invariants_at(t)?;
        Ok(InvariantSample::from_dual(t, k, tau, pole, &self.tol))
    }

    /// Invariants from the coordinate formulas.
    pub fn invariants_at(&self, t: f64) -> Result<InvariantSample> {
        self.check(t)?;
        self.invariants_unchecked(t)
    }

    /// Independent evaluation of the same invariants: `X(t)` sampled in
    /// closed form, derivatives by central differences, then
    /// `κ̂ = ‖X'‖` and `τ̂ = [X, X', X'']/κ̂²` in dual arithmetic.
    pub fn frame_invariants_oracle(&self, t: f64) -> Result<InvariantSample> {
        self.check(t)?;
        let h = DIFF_STEP;
        let point = |s: f64| -> Result<DualVec3> {
            let p = self.path.sample_at(s);
            Ok(sphere::dus_point(p.u, p.v, &self.field)?.as_dual())
        };
        let (xm, x0, xp) = (point(t - h)?, point(t)?, point(t + h)?);
        let d1 = (xp - xm) * (0.5 / h);
        let d2 = (xp - x0 * 2.0 + xm) * (1.0 / (h * h));
        let kappa = d1.real.norm();
        if kappa < self.tol.kappa_min {
            return Err(Error::CylindricalPoint { t, kappa });
        }
        let kappa_hat = DualScalar::new(kappa, d1.real.dot(&d1.dual) / kappa);
        let k2 = kappa_hat * kappa_hat;
        let inv = 1.0 / k2.real;
        let tau_hat = x0.triple(&d1, &d2) * DualScalar::new(inv, -k2.dual * inv * inv);
        let pole = x0.real.z.abs() > 1.0 - 0.5 * self.tol.pole * self.tol.pole;
        Ok(InvariantSample::from_dual(
            t, kappa_hat, tau_hat, pole, &self.tol,
        ))
    }

    /// `sin v (ū v' − v̄ u')`: the integrand of the pitch. It differs from
    /// `τ̄` pointwise but has the same integral over a closed period.
    pub fn pitch_density(&self, t: f64) -> Result<f64> {
        let p = self.path.sample_at(t);
        let (u_bar, v_bar) = self.field.eval(p.u, p.v)?;
        Ok(p.v.sin() * (u_bar * p.dv - v_bar * p.du))
    }

    /// Unit ruling direction `x(t)`.
    pub fn ruling(&self, t: f64) -> Result<Vec3> {
        let p = path_sample(&self.path, t)?;
        Ok(sphere::rus_point(p.u, p.v))
    }

    /// Directrix `a(t) = x × x̄`, the foot of the ruling on the origin.
    pub fn directrix(&self, t: f64) -> Result<Vec3> {
        self.check(t)?;
        self.directrix_at(t)
    }

    pub(crate) fn directrix_at(&self, t: f64) -> Result<Vec3> {
        let p = self.path.sample_at(t);
        let (u_bar, v_bar) = self.field.eval(p.u, p.v)?;
        let (su, cu) = p.u.sin_cos();
        let (sv, cv) = p.v.sin_cos();
        Ok(Vec3::new(
            -u_bar * cu * sv * cv - v_bar * su,
            -u_bar * su * sv * cv + v_bar * cu,
            u_bar * sv * sv,
        ))
    }

    /// Signed offset `w₀` of the directrix along the ruling: `a = m + w₀ x`.
    pub(crate) fn directrix_offset(&self, point: &DualCurvePoint) -> f64 {
        let (x, xb) = (point.x.real, point.x.dual);
        let (dx, dxb) = (point.d1.real, point.d1.dual);
        let dc = dx.cross(&xb) + x.cross(&dxb);
        dx.dot(&dc) / dx.norm_squared()
    }

    /// Striction point `m = c − ⟨x', c'⟩/κ² x` with `c = x × x̄`, its
    /// velocity `τ̄x₁ + κ̄x₃` and arc length `∫₀ᵗ √(τ̄² + κ̄²)`.
    pub fn striction_point(&self, t: f64) -> Result<StrictionData> {
        let point = self.dual_curve(t)?;
        let frame = sphere::blaschke_frame(&point, self.tol.kappa_min)?;
        let inv = self.invariants_unchecked(t)?;
        let s = if t == 0.0 {
            Some(0.0)
        } else {
            quadrature::adaptive(
                |s| {
                    self.invariants_unchecked(s)
                        .map(|i| i.tau_bar.hypot(i.kappa_bar))
                },
                0.0,
                t,
                self.tol.numerical,
                quadrature::DEFAULT_MAX_DEPTH,
            )
            .ok()
            .map(|e| e.value)
        };
        Ok(StrictionData {
            t,
            m: self.striction_at(&point),
            dm_dt: frame.x1.real * inv.tau_bar + frame.x3.real * inv.kappa_bar,
            s,
        })
    }

    pub(crate) fn striction_at(&self, point: &DualCurvePoint) -> Vec3 {
        let x = point.x.real;
        x.cross(&point.x.dual) - x * self.directrix_offset(point)
    }

    /// Surface data at `r(t, w) = m(t) + w x(t)`. `κ'` and `κ̄'` needed by
    /// `h₁₁` are central differences with step [`DIFF_STEP`].
    pub fn surface_sample(&self, t: f64, w: f64) -> Result<SurfaceSample> {
        self.check(t)?;
        self.surface_sample_at(t, w)
    }

    pub(crate) fn surface_sample_at(&self, t: f64, w: f64) -> Result<SurfaceSample> {
        let point = self.dual_curve_at(t)?;
        let frame = sphere::blaschke_frame(&point, self.tol.kappa_min)?;
        let (k, tau, _) = self.dual_invariants_at(t)?;
        let (kp, _, _) = self.dual_invariants_at(t + DIFF_STEP)?;
        let (km, _, _) = self.dual_invariants_at(t - DIFF_STEP)?;
        let dk = (kp - km) * (0.5 / DIFF_STEP);

        let (kappa, kappa_bar, tau_r, tau_bar) = (k.real, k.dual, tau.real, tau.dual);
        let (x1, x2, x3) = (frame.x1.real, frame.x2.real, frame.x3.real);
        let wk = w * kappa;
        let n2 = wk * wk + kappa_bar * kappa_bar;
        if n2 <= 1e-18 {
            return Err(Error::NormalUndefined { t, w });
        }
        let big_n = n2.sqrt();
        let normal = (x2 * kappa_bar - x3 * wk) / big_n;

        let h11 = (kappa_bar * (kappa * tau_bar + w * dk.real - kappa_bar * tau_r)
            - wk * (wk * tau_r + dk.dual))
            / big_n;
        let h12 = kappa_bar * kappa / big_n;
        let g12 = tau_bar;
        Ok(SurfaceSample {
            t,
            w,
            point: self.striction_at(&point) + x1 * w,
            normal,
            r_t: x1 * tau_bar + x2 * wk + x3 * kappa_bar,
            r_w: x1,
            g11: tau_bar * tau_bar + n2,
            g12,
            g22: 1.0,
            h11,
            h12,
            h22: 0.0,
            gaussian: -(kappa_bar * kappa_bar * kappa * kappa) / (n2 * n2),
            mean: (h11 - 2.0 * g12 * h12) / (2.0 * n2),
        })
    }

    /// Invariants on a uniform grid of `samples ≥ 2` points of `[0, 1]`.
    /// Failed samples are flagged, never dropped.
    pub fn profile(&self, samples: usize) -> Result<Vec<InvariantSample>> {
        if samples < 2 {
            return Err(Error::InvalidArgument(format!(
                "profile needs at least 2 samples, got {samples}"
            )));
        }
        let last = (samples - 1) as f64;
        Ok((0..samples)
            .into_par_iter()
            .map(|i| {
                let t = i as f64 / last;
                self.invariants_unchecked(t)
                    .unwrap_or_else(|e| InvariantSample::failed(t, &e))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{AnalyticPath, BezierPath2, DomainPoint};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

    fn helicoid(p: f64) -> RuledMotion<AnalyticPath> {
        RuledMotion::new(
            AnalyticPath::Line {
                u0: 0.0,
                v0: FRAC_PI_2,
                du: 1.0,
                dv: 0.0,
            },
            LiftField::affine(p, 0.0, 0.0, 0.0, 0.0, 0.0),
        )
    }

    fn example1() -> RuledMotion<AnalyticPath> {
        RuledMotion::new(
            AnalyticPath::Line {
                u0: 0.0,
                v0: 0.0,
                du: 1.0,
                dv: 1.0,
            },
            LiftField::parse("u - v, u + v").unwrap(),
        )
    }

    fn example2() -> RuledMotion<BezierPath2> {
        let e = FRAC_PI_8;
        let pts = [
            [e, 2.0 * e],
            [e, 3.0 * e],
            [3.0 * e, 3.0 * e],
            [3.0 * e, 2.0 * e],
            [3.0 * e, e],
            [e, e],
            [e, 2.0 * e],
        ];
        let net = BezierPath2::new(pts.iter().map(|&p| DomainPoint::from(p)).collect()).unwrap();
        RuledMotion::new(net, LiftField::parse("u - v, u + v").unwrap())
    }

    #[test]
    fn helicoid_invariants() {
        let m = helicoid(0.7);
        for t in [0.0, 0.3, 1.0] {
            let s = m.invariants_at(t).unwrap();
            assert!((s.kappa - 1.0).abs() < 1e-15);
            assert!(s.tau.abs() < 1e-15 && s.tau_bar.abs() < 1e-15);
            assert!((s.delta - 0.7).abs() < 1e-12);
            assert!(s.cot_sigma.unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn example1_closed_forms() {
        let m = example1();
        for i in 0..=16 {
            let t = i as f64 / 16.0;
            let s = m.invariants_at(t).unwrap();
            let s2 = t.sin().powi(2);
            assert!((s.kappa - (s2 + 1.0).sqrt()).abs() < 1e-12);
            assert!((s.tau - t.cos() * (s2 + 2.0) / (s2 + 1.0)).abs() < 1e-12);
            let kb = (t * (2.0 * t).sin() + 2.0) / (s2 + 1.0).sqrt();
            assert!(
                (s.kappa_bar - kb).abs() < 1e-12,
                "{t}: {} vs {kb}",
                s.kappa_bar
            );
        }
    }

    #[test]
    fn example1_pitch_density() {
        let m = example1();
        let t = 0.6;
        assert!((m.pitch_density(t).unwrap() + 2.0 * t * t.sin()).abs() < 1e-15);
    }

    #[test]
    fn zero_field_is_a_cone() {
        let m = RuledMotion::new(
            AnalyticPath::Line {
                u0: 0.1,
                v0: 0.5,
                du: 2.0,
                dv: 1.0,
            },
            LiftField::zero(),
        );
        let s = m.invariants_at(0.4).unwrap();
        assert_eq!((s.kappa_bar, s.tau_bar, s.delta), (0.0, 0.0, 0.0));
        assert!(s.flags.developable && s.cot_sigma.is_none());
        assert!(matches!(
            s.cot_sigma_checked(),
            Err(Error::StrictionUndefined { .. })
        ));
        assert_eq!(m.striction_point(0.4).unwrap().m, Vec3::zeros());
        assert!(matches!(
            m.surface_sample(0.4, 0.0),
            Err(Error::NormalUndefined { .. })
        ));
        assert_eq!(m.surface_sample(0.4, 0.5).unwrap().gaussian, 0.0);
    }

    #[test]
    fn example2_oracle_agreement() {
        let m = example2();
        for t in [0.0, 0.1, 0.25, 0.5, 0.77, 1.0] {
            let a = m.invariants_at(t).unwrap();
            let b = m.frame_invariants_oracle(t).unwrap();
            for (x, y) in [
                (a.kappa, b.kappa),
                (a.kappa_bar, b.kappa_bar),
                (a.tau, b.tau),
                (a.tau_bar, b.tau_bar),
            ] {
                assert!((x - y).abs() <= 1e-5 * x.abs().max(1.0), "{t}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn example2_golden_pointwise() {
        let m = example2();
        let golden = [
            (
                0.0,
                2.35619449019234493,
                2.35619449019234493,
                7.07106781186547524,
                4.99824330542816203,
            ),
            (
                0.25,
                1.55888548268305035,
                3.10702329041991843,
                6.40346364607448122,
                -7.09007495852538438,
            ),
            (
                0.5,
                1.32535940073319402,
                1.32535940073319402,
                4.71404520791031683,
                10.3204468250970383,
            ),
        ];
        for (t, k, kb, tau, taub) in golden {
            let s = m.invariants_at(t).unwrap();
            assert!((s.kappa - k).abs() < 1e-12);
            assert!((s.kappa_bar - kb).abs() < 1e-12);
            assert!((s.tau - tau).abs() < 1e-12);
            assert!((s.tau_bar - taub).abs() < 1e-11);
        }
    }

    #[test]
    fn frame_origin_is_striction_point() {
        let m = example2();
        for t in [0.0, 0.25, 0.5] {
            let f = m.blaschke_frame(t).unwrap();
            let sd = m.striction_point(t).unwrap();
            assert!((f.origin() - sd.m).amax() < 1e-12);
            assert!(sd.dm_dt.dot(&f.x2.real).abs() < 1e-12);
        }
    }

    #[test]
    fn striction_velocity_matches_differences() {
        let m = example2();
        for t in [0.1, 0.25, 0.5, 0.9] {
            let sd = m.striction_point(t).unwrap();
            let at = |s: f64| m.striction_at(&m.dual_curve_at(s).unwrap());
            let fd = (at(t + DIFF_STEP) - at(t - DIFF_STEP)) / (2.0 * DIFF_STEP);
            assert!(
                (fd - sd.dm_dt).amax() < 1e-6,
                "{t}: {}",
                (fd - sd.dm_dt).amax()
            );
        }
    }

    #[test]
    fn striction_arc_length_accumulates() {
        let m = helicoid(0.5);
        // τ̄ = 0 and κ̄ = p, so s(t) = p t.
        assert!((m.striction_point(0.8).unwrap().s.unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(m.striction_point(0.0).unwrap().s, Some(0.0));
    }

    #[test]
    fn helicoid_gaussian_curvature() {
        let p = 0.6;
        let m = helicoid(p);
        for w in [-1.0, -0.2, 0.0, 0.5, 2.0] {
            let s = m.surface_sample(0.3, w).unwrap();
            let expected = -p * p / (p * p + w * w).powi(2);
            assert!((s.gaussian - expected).abs() < 1e-12);
            assert!(s.mean.abs() < 1e-9, "minimal surface: {}", s.mean);
        }
    }

    #[test]
    fn surface_normal_is_orthogonal_to_tangents() {
        let m = example2();
        for (t, w) in [(0.2, -0.5), (0.6, 0.3), (0.9, 1.0)] {
            let s = m.surface_sample(t, w).unwrap();
            assert!((s.normal.norm() - 1.0).abs() < 1e-12);
            assert!(s.normal.dot(&s.r_t).abs() < 1e-9 && s.normal.dot(&s.r_w).abs() < 1e-9);
            assert!(s.gaussian <= 0.0);
        }
    }

    #[test]
    fn surface_tangent_matches_differences() {
        let m = example2();
        let (t, w) = (0.4, 0.7);
        let at = |s: f64| m.surface_sample_at(s, w).unwrap().point;
        let fd = (at(t + DIFF_STEP) - at(t - DIFF_STEP)) / (2.0 * DIFF_STEP);
        assert!((fd - m.surface_sample(t, w).unwrap().r_t).amax() < 1e-6);
    }

    #[test]
    fn second_fundamental_form_matches_differences() {
        let m = example2();
        let h = 1e-4;
        for (t, w) in [(0.3, 0.4), (0.65, -0.8)] {
            let s = m.surface_sample(t, w).unwrap();
            let r = |a: f64| m.surface_sample_at(a, w).unwrap().point;
            let r_tt = (r(t + h) - 2.0 * r(t) + r(t - h)) / (h * h);
            assert!(
                (r_tt.dot(&s.normal) - s.h11).abs() < 1e-4 * s.h11.abs().max(1.0),
                "{} {}",
                r_tt.dot(&s.normal),
                s.h11
            );
        }
    }

    #[test]
    fn gaussian_at_the_striction_curve() {
        let m = example2();
        let inv = m.invariants_at(0.3).unwrap();
        let s = m.surface_sample(0.3, 0.0).unwrap();
        let expected = -(inv.kappa * inv.kappa) / (inv.kappa_bar * inv.kappa_bar);
        assert!((s.gaussian - expected).abs() < 1e-9 * expected.abs());
    }

    #[test]
    fn directrix_identities() {
        let m = example2();
        for t in [0.0, 0.3, 0.8] {
            let a = m.directrix(t).unwrap();
            let x = m.dual_curve(t).unwrap().x;
            assert!((a.cross(&x.real) - x.dual).amax() < 1e-12);
            assert!(a.dot(&x.real).abs() < 1e-12);
        }
        let annulus = RuledMotion::new(
            AnalyticPath::great_circle(),
            LiftField::affine(0.0, 0.0, 0.0, 0.0, 0.0, 0.4),
        );
        let t = 0.2;
        let u = 2.0 * PI * t;
        let a = annulus.directrix(t).unwrap();
        assert!((a - Vec3::new(-0.4 * u.sin(), 0.4 * u.cos(), 0.0)).amax() < 1e-15);
    }

    #[test]
    fn profile_flags_failures() {
        let m = RuledMotion::new(
            AnalyticPath::Line {
                u0: 0.0,
                v0: 1.0,
                du: 0.0,
                dv: 0.0,
            },
            LiftField::zero(),
        );
        let prof = m.profile(4).unwrap();
        assert_eq!(prof.len(), 4);
        assert!(prof.iter().all(|s| s.flags.cylindrical && s.kappa == 0.0));
        assert!(m.profile(1).is_err());
        let h = helicoid(0.25).profile(128).unwrap();
        assert!(h.iter().all(|s| (s.delta - 0.25).abs() < 1e-9));
        assert_eq!(h[127].t, 1.0);
    }

    #[test]
    fn flag_names_round_trip() {
        let f = SampleFlags {
            developable: true,
            pole: true,
            ..SampleFlags::default()
        };
        assert_eq!(f.names(), vec!["developable", "pole"]);
        assert_eq!(SampleFlags::from_names(f.names()).unwrap(), f);
        assert!(SampleFlags::from_names(["nope"]).is_err());
    }
}
