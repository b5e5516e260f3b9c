mod common;

use common::{affine_field, close, example2, helicoid, net};
use proptest::prelude::*;
use ruledkit::ruled::DIFF_STEP;
use ruledkit::{Error, RuledMotion};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lifted_points_are_lines(path in net(), field in affine_field(), t in 0.0..=1.0f64) {
        let x = RuledMotion::new(path, field).dual_curve(t).unwrap().x;
        prop_assert!((x.real.norm() - 1.0).abs() < 1e-12);
        prop_assert!(x.real.dot(&x.dual).abs() < 1e-12);
    }

    #[test]
    fn frame_is_dual_orthonormal(path in net(), field in affine_field(), t in 0.0..=1.0f64) {
        match RuledMotion::new(path, field).blaschke_frame(t) {
            Ok(f) => prop_assert!(f.orthonormality_residual() < 1e-9),
            Err(e) => prop_assert!(matches!(e, Error::CylindricalPoint { .. }), "{:?}", e),
        }
    }

    #[test]
    fn coordinate_formulas_match_the_frame_oracle(path in net(), field in affine_field(), t in 0.0..=1.0f64) {
        let m = RuledMotion::new(path, field);
        let a = m.invariants_at(t).unwrap();
        prop_assume!(a.kappa > 1e-2);
        let b = m.frame_invariants_oracle(t).unwrap();
        for (x, y) in [(a.kappa, b.kappa), (a.kappa_bar, b.kappa_bar), (a.tau, b.tau), (a.tau_bar, b.tau_bar)] {
            prop_assert!(close(x, y, 1e-4), "{} vs {}", x, y);
        }
    }

    #[test]
    fn distribution_parameter_and_striction_identities(path in net(), field in affine_field(), t in 0.0..=1.0f64) {
        let s = RuledMotion::new(path, field).invariants_at(t).unwrap();
        prop_assume!(s.kappa > 1e-8);
        prop_assert!((s.delta * s.kappa - s.kappa_bar).abs() < 1e-9 * s.kappa_bar.abs().max(1.0));
        if s.kappa_bar.abs() > 1e-9 {
            prop_assert!((s.cot_sigma.unwrap() * s.kappa_bar - s.tau_bar).abs() < 1e-9 * s.tau_bar.abs().max(1.0));
        } else {
            prop_assert!(s.cot_sigma.is_none() && s.flags.developable);
        }
    }

    #[test]
    fn gaussian_curvature_is_nonpositive(path in net(), field in affine_field(), t in 0.0..=1.0f64, w in -2.0..2.0f64) {
        if let Ok(s) = RuledMotion::new(path, field).surface_sample(t, w) {
            prop_assert!(s.gaussian <= 1e-12);
            prop_assert!((s.normal.norm() - 1.0).abs() < 1e-12);
            prop_assert!(s.normal.dot(&s.r_t).abs() < 1e-9 * s.r_t.norm().max(1.0));
            prop_assert!(s.normal.dot(&s.r_w).abs() < 1e-9);
        }
    }

    #[test]
    fn directrix_lies_in_the_moment_plane(path in net(), field in affine_field(), t in 0.0..=1.0f64) {
        let m = RuledMotion::new(path, field);
        let a = m.directrix(t).unwrap();
        let x = m.dual_curve(t).unwrap().x;
        prop_assert!((a.cross(&x.real) - x.dual).amax() < 1e-9);
        prop_assert!(a.dot(&x.real).abs() < 1e-9);
    }

    #[test]
    fn striction_velocity(path in net(), field in affine_field(), t in 0.01..0.98f64) {
        let m = RuledMotion::new(path, field);
        let inv = m.invariants_at(t).unwrap();
        prop_assume!(inv.kappa > 0.1);
        let sd = m.striction_point(t).unwrap();
        // Fourth-order central stencil: random nets can have large third derivatives.
        let at = |s: f64| m.striction_point(s).unwrap().m;
        let h = DIFF_STEP;
        let fd = (at(t - 2.0 * h) - at(t - h) * 8.0 + at(t + h) * 8.0 - at(t + 2.0 * h)) / (12.0 * h);
        prop_assert!((fd - sd.dm_dt).amax() < 1e-6 * sd.dm_dt.amax().max(1.0), "{}", (fd - sd.dm_dt).amax());
    }
}

#[test]
fn helicoid_oracles() {
    let p = 0.8;
    let m = helicoid(p);
    for s in m.profile(128).unwrap() {
        assert!((s.delta - p).abs() < 1e-9);
        assert!(s.tau.abs() < 1e-12 && s.tau_bar.abs() < 1e-12);
    }
    for w in [-2.0, -0.5, 0.0, 0.3, 1.7] {
        let g = m.surface_sample(0.4, w).unwrap().gaussian;
        assert!((g + p * p / (p * p + w * w).powi(2)).abs() < 1e-12);
    }
}

#[test]
fn example2_striction_tangent_has_no_x2_part() {
    let m = example2();
    for t in [0.0, 0.25, 0.5] {
        let f = m.blaschke_frame(t).unwrap();
        let sd = m.striction_point(t).unwrap();
        assert!(sd.m.iter().all(|c| c.is_finite()));
        assert!(sd.dm_dt.dot(&f.x2.real).abs() < 1e-6);
    }
}

#[test]
fn example2_oracle_agreement_along_the_period() {
    let m = example2();
    for i in 0..=64 {
        let t = i as f64 / 64.0;
        let (a, b) = (
            m.invariants_at(t).unwrap(),
            m.frame_invariants_oracle(t).unwrap(),
        );
        assert!(
            close(a.tau_bar, b.tau_bar, 1e-4) && close(a.kappa_bar, b.kappa_bar, 1e-4),
            "t = {t}"
        );
    }
}
