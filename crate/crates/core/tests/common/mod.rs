#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

use proptest::prelude::*;
use ruledkit::{AnalyticPath, BezierPath2, DomainPoint, LiftField, RuledMotion};

pub fn example2_net() -> BezierPath2 {
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
    BezierPath2::new(pts.iter().map(|&p| DomainPoint::from(p)).collect()).unwrap()
}

pub fn example_field() -> LiftField {
    LiftField::parse("u - v, u + v").unwrap()
}

pub fn example2() -> RuledMotion<BezierPath2> {
    RuledMotion::new(example2_net(), example_field())
}

pub fn helicoid(p: f64) -> RuledMotion<AnalyticPath> {
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

/// Control nets of degree 2..=6 kept away from the poles.
pub fn net() -> impl Strategy<Value = BezierPath2> {
    prop::collection::vec((0.0..PI, 0.3..PI - 0.3), 3..=7).prop_map(|pts| {
        BezierPath2::new(
            pts.into_iter()
                .map(|(u, v)| DomainPoint::new(u, v))
                .collect(),
        )
        .unwrap()
    })
}

/// Closed nets: the first point repeated at the end.
pub fn closed_net() -> impl Strategy<Value = BezierPath2> {
    prop::collection::vec((0.0..PI, 0.3..PI - 0.3), 3..=6).prop_map(|mut pts| {
        pts.push(pts[0]);
        BezierPath2::new(
            pts.into_iter()
                .map(|(u, v)| DomainPoint::new(u, v))
                .collect(),
        )
        .unwrap()
    })
}

pub fn affine_field() -> impl Strategy<Value = LiftField> {
    prop::array::uniform6(-1.0..1.0f64)
        .prop_map(|c| LiftField::affine(c[0], c[1], c[2], c[3], c[4], c[5]))
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
