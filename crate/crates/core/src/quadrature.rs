//! Composite Gauss–Legendre and adaptive Gauss–Kronrod quadrature for
//! fallible integrands.
//!
//! Neither rule evaluates the integrand at interval end points, so a
//! singular sample at `t = 0` or at a panel boundary is never touched.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: usize = 20;
pub const DEFAULT_PANELS: usize = 64;
/// Gauss points per panel of the fixed rule.
pub const PANEL_POINTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// ordered by increasing node.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// `(Pₙ(x), Pₙ'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

fn finite(t: f64, y: f64) -> Result<f64> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::QuadratureNoConvergence(format!(
            "integrand is not finite at t = {t}"
        )))
    }
}

fn apply_rule<F>(f: &F, rule: &[(f64, f64)], a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    let mut sum = 0.0;
    for &(x, w) in rule {
        let t = c + r * x;
        sum += w * finite(t, f(t)?)?;
    }
    Ok(sum * r)
}

/// `panels` equal panels with [`PANEL_POINTS`] Gauss points each. The error
/// estimate is the difference to the rule with one point fewer per panel.
/// Panels are evaluated in parallel and summed in order.
pub fn fixed<F>(f: F, a: f64, b: f64, panels: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if panels == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one panel".into(),
        ));
    }
    let high = gauss_legendre(PANEL_POINTS);
    let low = gauss_legendre(PANEL_POINTS - 1);
    let h = (b - a) / panels as f64;
    let parts: Vec<(f64, f64)> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let (lo, hi) = (
                a + i as f64 * h,
                if i + 1 == panels {
                    b
                } else {
                    a + (i + 1) as f64 * h
                },
            );
            Ok((
                apply_rule(&f, &high, lo, hi)?,
                apply_rule(&f, &low, lo, hi)?,
            ))
        })
        .collect::<Result<_>>()?;
    let value: f64 = parts.iter().map(|p| p.0).sum();
    let coarse: f64 = parts.iter().map(|p| p.1).sum();
    Ok(Estimate {
        value,
        error: (value - coarse).abs(),
        evaluations: panels * (2 * PANEL_POINTS - 1),
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod 15-point value and its distance to the embedded 7-point Gauss value.
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
    let fc = finite(c, f(c)?)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = r * XGK[j];
        let (t1, t2) = (c - dx, c + dx);
        let pair = finite(t1, f(t1)?)? + finite(t2, f(t2)?)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * r, (kronrod - gauss).abs() * r))
}

/// Upper bound on the number of bisections in [`adaptive`].
pub const MAX_SUBDIVISIONS: usize = 100_000;

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: usize,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

/// Globally adaptive G7/K15 quadrature: the piece with the largest error
/// estimate is bisected until the summed estimate drops below
/// `rel_tol · max(|I|, 1)`. A piece that needs splitting at `max_depth`
/// fails with `QuadratureNoConvergence`.
pub fn adaptive<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rel_tol must be positive, got {rel_tol}"
        )));
    }
    let (value, error) = gk15(&f, a, b)?;
    let mut heap = BinaryHeap::from([Piece {
        a,
        b,
        value,
        error,
        depth: 0,
    }]);
    let (mut total, mut total_err, mut evaluations) = (value, error, 15);
    for _ in 0..MAX_SUBDIVISIONS {
        if total_err <= rel_tol * total.abs().max(1.0) {
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= max_depth {
            return Err(Error::QuadratureNoConvergence(format!(
                "error {:.3e} on [{}, {}] at depth {}",
                worst.error, worst.a, worst.b, worst.depth
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(&f, worst.a, mid)?;
        let (rv, re) = gk15(&f, mid, worst.b)?;
        evaluations += 30;
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
            depth: worst.depth + 1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
            depth: worst.depth + 1,
        });
    }
    if total_err > rel_tol * total.abs().max(1.0) {
        return Err(Error::QuadratureNoConvergence(format!(
            "no convergence after {MAX_SUBDIVISIONS} subdivisions"
        )));
    }
    // Re-sum in parameter order so the result does not depend on update history.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    Ok(Estimate {
        value: pieces.iter().map(|p| p.value).sum(),
        error: pieces.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=12 {
            let rule = gauss_legendre(n);
            assert!((rule.iter().map(|r| r.1).sum::<f64>() - 2.0).abs() < 1e-14);
            for k in 0..2 * n {
                let q: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                assert!((q - exact).abs() < 1e-14, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rules_agree_on_smooth_integrand() {
        let f = |t: f64| Ok((3.0 * t).sin() * t.exp());
        // ∫₀¹ eᵗ sin 3t dt = (eᵗ(sin 3t − 3 cos 3t))/10 |₀¹
        let e = 1f64.exp();
        let exact = (e * (3f64.sin() - 3.0 * 3f64.cos()) + 3.0) / 10.0;
        let g = fixed(f, 0.0, 1.0, DEFAULT_PANELS).unwrap();
        let k = adaptive(f, 0.0, 1.0, 1e-12, DEFAULT_MAX_DEPTH).unwrap();
        assert!((g.value - exact).abs() < 1e-14);
        assert!((k.value - exact).abs() < 1e-13);
    }

    #[test]
    fn adaptive_refines_near_a_kink() {
        let est = adaptive(|t: f64| Ok((t - 0.3).abs().sqrt()), 0.0, 1.0, 1e-10, 40).unwrap();
        let exact = 2.0 / 3.0 * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!((est.value - exact).abs() < 1e-9);
        assert!(est.evaluations > 15);
    }

    #[test]
    fn depth_limit_is_reported() {
        let r = adaptive(
            |t: f64| Ok(1.0 / (t - 0.5).abs().sqrt()),
            0.0,
            1.0,
            1e-12,
            3,
        );
        assert!(matches!(r, Err(Error::QuadratureNoConvergence(_))));
        let r = adaptive(
            |t: f64| Ok(if t < 1.0 / 3.0 { 0.0 } else { 1.0 }),
            0.0,
            1.0,
            1e-12,
            30,
        );
        assert!(matches!(r, Err(Error::QuadratureNoConvergence(_))));
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = fixed(|_| Err(Error::NotClosed), 0.0, 1.0, 4);
        assert_eq!(r, Err(Error::NotClosed));
        let r = fixed(|_| Ok(f64::NAN), 0.0, 1.0, 4);
        assert!(matches!(r, Err(Error::QuadratureNoConvergence(_))));
    }
}
