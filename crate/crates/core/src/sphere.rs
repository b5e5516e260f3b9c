//! The sphere chart `x(u, v) = (cos u sin v, sin u sin v, cos v)`, its lift
//! to the dual unit sphere and the dual curve `X(t)` of a path.
//!
//! Substituting dual coordinates `û = u + εū`, `v̂ = v + εv̄` into the chart
//! gives `X = x + ε(ū x_u + v̄ x_v)`, a point of the dual unit sphere, i.e. a
//! directed line. Its `t`-derivatives are assembled with the chain rule in
//! dual arithmetic from the path derivatives and the lift-field partials.

use crate::curve::{path_sample, ParametricPath, PathSample};
use crate::dual::{DualScalar, DualVec3, LineElement};
use crate::error::{Error, Result};
use crate::lift::{LiftField, LiftJet};
use crate::Vec3;

/// Point on the real unit sphere.
pub fn rus_point(u: f64, v: f64) -> Vec3 {
    let (su, cu) = u.sin_cos();
    let (sv, cv) = v.sin_cos();
    Vec3::new(cu * sv, su * sv, cv)
}

/// Chart tangents `(x_u, x_v)`.
pub fn chart_tangents(u: f64, v: f64) -> (Vec3, Vec3) {
    let (su, cu) = u.sin_cos();
    let (sv, cv) = v.sin_cos();
    (
        Vec3::new(-su * sv, cu * sv, 0.0),
        Vec3::new(cu * cv, su * cv, -sv),
    )
}

/// A point of the dual unit sphere given by the lifted chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DusPoint {
    pub x: Vec3,
    pub x_bar: Vec3,
}

impl DusPoint {
    pub fn as_dual(&self) -> DualVec3 {
        DualVec3::new(self.x, self.x_bar)
    }

    /// The directed line: direction `x` through the foot point `x × x̄`.
    pub fn line(&self) -> Result<LineElement> {
        LineElement::through(self.x.cross(&self.x_bar), self.x)
    }
}

/// `x(u, v) + ε(ū x_u + v̄ x_v)`.
pub fn dus_point(u: f64, v: f64, field: &LiftField) -> Result<DusPoint> {
    let (u_bar, v_bar) = field.eval(u, v)?;
    let (xu, xv) = chart_tangents(u, v);
    Ok(DusPoint {
        x: rus_point(u, v),
        x_bar: xu * u_bar + xv * v_bar,
    })
}

/// Dual chart coordinates `û, v̂` with their first two `t`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCoordinates {
    pub u: DualScalar,
    pub v: DualScalar,
    pub du: DualScalar,
    pub dv: DualScalar,
    pub ddu: DualScalar,
    pub ddv: DualScalar,
}

impl DualCoordinates {
    pub fn new(p: &PathSample, lift: &LiftJet) -> Self {
        let total = |j: &crate::lift::Jet2| {
            let d1 = j.du * p.du + j.dv * p.dv;
            let d2 = j.duu * p.du * p.du
                + 2.0 * j.duv * p.du * p.dv
                + j.dvv * p.dv * p.dv
                + j.du * p.ddu
                + j.dv * p.ddv;
            (d1, d2)
        };
        let (ub1, ub2) = total(&lift.u_bar);
        let (vb1, vb2) = total(&lift.v_bar);
        DualCoordinates {
            u: DualScalar::new(p.u, lift.u_bar.value),
            v: DualScalar::new(p.v, lift.v_bar.value),
            du: DualScalar::new(p.du, ub1),
            dv: DualScalar::new(p.dv, vb1),
            ddu: DualScalar::new(p.ddu, ub2),
            ddv: DualScalar::new(p.ddv, vb2),
        }
    }
}

/// `X(t)` with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCurvePoint {
    pub t: f64,
    pub x: DualVec3,
    pub d1: DualVec3,
    pub d2: DualVec3,
    pub coords: DualCoordinates,
    pub path: PathSample,
    pub lift: LiftJet,
}

impl DualCurvePoint {
    pub fn dus(&self) -> DusPoint {
        DusPoint {
            x: self.x.real,
            x_bar: self.x.dual,
        }
    }
}

/// Range checked [`dual_curve_at`].
pub fn dual_curve(path: &dyn ParametricPath, field: &LiftField, t: f64) -> Result<DualCurvePoint> {
    path_sample(path, t)?;
    dual_curve_at(path, field, t)
}

/// `X(t)`, `X'(t)`, `X''(t)` for any real `t`.
pub fn dual_curve_at(
    path: &dyn ParametricPath,
    field: &LiftField,
    t: f64,
) -> Result<DualCurvePoint> {
    let p = path.sample_at(t);
    let lift = field.eval_jet(p.u, p.v)?;
    let c = DualCoordinates::new(&p, &lift);

    let (su, cu) = (c.u.sin(), c.u.cos());
    let (sv, cv) = (c.v.sin(), c.v.cos());
    let zero = DualScalar::ZERO;
    let f = DualVec3::from_components([cu * sv, su * sv, cv]);
    let f_u = DualVec3::from_components([-(su * sv), cu * sv, zero]);
    let f_v = DualVec3::from_components([cu * cv, su * cv, -sv]);
    let f_uu = DualVec3::from_components([-(cu * sv), -(su * sv), zero]);
    let f_uv = DualVec3::from_components([-(su * cv), cu * cv, zero]);
    let f_vv = -f;

    let d1 = f_u.scale(c.du) + f_v.scale(c.dv);
    let d2 = f_uu.scale(c.du * c.du)
        + f_uv.scale(c.du * c.dv * DualScalar::constant(2.0))
        + f_vv.scale(c.dv * c.dv)
        + f_u.scale(c.ddu)
        + f_v.scale(c.ddv);

    Ok(DualCurvePoint {
        t,
        x: f,
        d1,
        d2,
        coords: c,
        path: p,
        lift,
    })
}

/// Dual orthonormal frame `{X₁ = X, X₂ = X'/‖X'‖, X₃ = X₁ × X₂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkeFrame {
    pub x1: DualVec3,
    pub x2: DualVec3,
    pub x3: DualVec3,
    /// `κ̂ = ‖X'‖ = κ + εκ̄`.
    pub kappa_hat: DualScalar,
    /// Coordinates of the frame origin in the real frame:
    /// `x̄₁ = α₃x₂ − α₂x₃`, `x̄₂ = α₁x₃ − α₃x₁`, `x̄₃ = α₂x₁ − α₁x₂`.
    pub alpha: [f64; 3],
}

impl BlaschkeFrame {
    /// Origin `α₁x₁ + α₂x₂ + α₃x₃`, common to the three frame lines.
    pub fn origin(&self) -> Vec3 {
        self.x1.real * self.alpha[0] + self.x2.real * self.alpha[1] + self.x3.real * self.alpha[2]
    }

    /// Largest deviation of `⟨Xᵢ, Xⱼ⟩` from `δᵢⱼ + ε0`.
    pub fn orthonormality_residual(&self) -> f64 {
        let xs = [self.x1, self.x2, self.x3];
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let d = xs[i].dot(&xs[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d.real - target).abs()).max(d.dual.abs());
            }
        }
        worst
    }
}

pub fn blaschke_frame(point: &DualCurvePoint, kappa_min: f64) -> Result<BlaschkeFrame> {
    let kappa = point.d1.real.norm();
    if kappa < kappa_min {
        return Err(Error::CylindricalPoint { t: point.t, kappa });
    }
    let kappa_hat = DualScalar::new(kappa, point.d1.real.dot(&point.d1.dual) / kappa);
    let inv = 1.0 / kappa;
    let x1 = point.x;
    let x2 = point
        .d1
        .scale(DualScalar::new(inv, -kappa_hat.dual * inv * inv));
    let x3 = x1.cross(&x2);
    let alpha = [
        x2.dual.dot(&x3.real),
        -x1.dual.dot(&x3.real),
        x1.dual.dot(&x2.real),
    ];
    Ok(BlaschkeFrame {
        x1,
        x2,
        x3,
        kappa_hat,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::AnalyticPath;
    use std::f64::consts::{FRAC_PI_2, TAU};

    #[test]
    fn rus_point_examples() {
        assert!((rus_point(0.0, FRAC_PI_2) - Vec3::new(1.0, 0.0, 0.0)).amax() < 1e-16);
        assert!((rus_point(FRAC_PI_2, FRAC_PI_2) - Vec3::new(0.0, 1.0, 0.0)).amax() < 1e-16);
        assert_eq!(rus_point(1.234, 0.0), Vec3::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn dus_point_examples() {
        let p = dus_point(
            0.0,
            FRAC_PI_2,
            &LiftField::affine(0.0, 0.0, 1.0, 0.0, 0.0, 0.0),
        )
        .unwrap();
        assert!((p.x - Vec3::new(1.0, 0.0, 0.0)).amax() < 1e-16);
        assert!((p.x_bar - Vec3::new(0.0, 1.0, 0.0)).amax() < 1e-16);
        let p = dus_point(0.7, 1.1, &LiftField::zero()).unwrap();
        assert_eq!(p.x_bar, Vec3::zeros());
    }

    #[test]
    fn study_line_round_trip() {
        let field = LiftField::parse("u - v, u*u + 0.3").unwrap();
        let p = dus_point(0.8, 2.1, &field).unwrap();
        let c = p.x.cross(&p.x_bar);
        assert!((c.cross(&p.x) - p.x_bar).amax() < 1e-12);
        let line = p.line().unwrap();
        assert!((line.moment() - p.x_bar).amax() < 1e-12);
    }

    #[test]
    fn zero_field_has_no_dual_parts() {
        let path = AnalyticPath::Line {
            u0: 0.2,
            v0: 0.9,
            du: 1.3,
            dv: -0.4,
        };
        let p = dual_curve(&path, &LiftField::zero(), 0.5).unwrap();
        assert_eq!(
            (p.x.dual, p.d1.dual, p.d2.dual),
            (Vec3::zeros(), Vec3::zeros(), Vec3::zeros())
        );
    }

    #[test]
    fn derivatives_match_central_differences() {
        let path = AnalyticPath::Line {
            u0: 0.2,
            v0: 0.9,
            du: 1.3,
            dv: -0.4,
        };
        let field = LiftField::parse("sin(u)*v, u^2 - v").unwrap();
        let h = 1e-5;
        let t = 0.4;
        let at = |s: f64| dual_curve_at(&path, &field, s).unwrap();
        let fd1 = (at(t + h).x - at(t - h).x) * (1.0 / (2.0 * h));
        let fd2 = (at(t + h).d1 - at(t - h).d1) * (1.0 / (2.0 * h));
        assert!(at(t).d1.max_abs_diff(&fd1) < 1e-7);
        assert!(at(t).d2.max_abs_diff(&fd2) < 1e-7);
    }

    #[test]
    fn great_circle_frame() {
        let path = AnalyticPath::great_circle();
        let t = 0.3;
        let p = dual_curve(&path, &LiftField::zero(), t).unwrap();
        let frame = blaschke_frame(&p, 1e-8).unwrap();
        let u = TAU * t;
        assert!((frame.x2.real - Vec3::new(-u.sin(), u.cos(), 0.0)).amax() < 1e-12);
        assert!((frame.x3.real - Vec3::new(0.0, 0.0, 1.0)).amax() < 1e-12);
        assert_eq!(frame.x2.dual, Vec3::zeros());
        assert!(frame.orthonormality_residual() < 1e-12);
        assert_eq!(frame.alpha, [0.0, 0.0, 0.0]);
        assert!((frame.kappa_hat.real - TAU).abs() < 1e-12);
    }

    #[test]
    fn constant_path_is_cylindrical() {
        let path = AnalyticPath::Line {
            u0: 0.5,
            v0: 1.0,
            du: 0.0,
            dv: 0.0,
        };
        let p = dual_curve(&path, &LiftField::zero(), 0.5).unwrap();
        assert!(matches!(
            blaschke_frame(&p, 1e-8),
            Err(Error::CylindricalPoint { .. })
        ));
    }

    #[test]
    fn alpha_reproduces_all_dual_parts() {
        let path = AnalyticPath::Line {
            u0: 0.4,
            v0: 0.8,
            du: 2.0,
            dv: 0.7,
        };
        let field = LiftField::parse("u*v, cos(u) - v").unwrap();
        let p = dual_curve(&path, &field, 0.6).unwrap();
        let f = blaschke_frame(&p, 1e-8).unwrap();
        let [a1, a2, a3] = f.alpha;
        let (x1, x2, x3) = (f.x1.real, f.x2.real, f.x3.real);
        assert!((f.x1.dual - (x2 * a3 - x3 * a2)).amax() < 1e-9);
        assert!((f.x2.dual - (x3 * a1 - x1 * a3)).amax() < 1e-9);
        assert!((f.x3.dual - (x1 * a2 - x2 * a1)).amax() < 1e-9);
        assert!((x1.cross(&x2).dot(&x3) - 1.0).abs() < 1e-12);
    }
}
