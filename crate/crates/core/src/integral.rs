//! Integral invariants of a closed motion over one period `t ∈ [0, 1]`:
//!
//! * pitch `l = ∮ sin v (ū v' − v̄ u') dt` (equal to `∮ τ̄ dt`),
//! * angle of pitch `λ = −∮ τ dt`,
//! * striction length `∮ √(τ̄² + κ̄²) dt`.
//!
//! [`SignConvention::MomentForm`] negates `l` and `λ` for users who measure
//! the pitch with the opposite orientation.

use serde::{Deserialize, Serialize};

use crate::curve::ParametricPath;
use crate::error::{Error, Result};
use crate::quadrature::{self, Estimate};
use crate::ruled::RuledMotion;

/// Largest dual distance between `X(0)` and `X(1)` for a closed motion.
pub const CLOSURE_TOL: f64 = 1e-9;
/// Required agreement between the two schemes in [`integral_invariants`],
/// relative to `max(|I|, 1)`.
pub const SCHEME_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    /// Composite Gauss–Legendre on equal panels.
    #[default]
    GaussLegendre,
    /// Bisection driven by the embedded G7/K15 error estimate.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// `l = ∮ sin v (ū v' − v̄ u')`, `λ = −∮ τ`.
    #[default]
    CoordinateForm,
    /// Both integrals negated.
    MomentForm,
}

impl SignConvention {
    pub fn sign(self) -> f64 {
        match self {
            SignConvention::CoordinateForm => 1.0,
            SignConvention::MomentForm => -1.0,
        }
    }
}

impl std::str::FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coordinate" | "coordinate-form" => Ok(SignConvention::CoordinateForm),
            "moment" | "moment-form" => Ok(SignConvention::MomentForm),
            other => Err(Error::InvalidArgument(format!(
                "unknown sign convention `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub scheme: QuadratureScheme,
    pub rel_tol: f64,
    pub max_depth: usize,
    pub panels: usize,
    /// Integrate over `[phase, 1 + phase]`, taken modulo one period.
    pub phase: f64,
    pub convention: SignConvention,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            scheme: QuadratureScheme::GaussLegendre,
            rel_tol: 1e-9,
            max_depth: quadrature::DEFAULT_MAX_DEPTH,
            panels: quadrature::DEFAULT_PANELS,
            phase: 0.0,
            convention: SignConvention::CoordinateForm,
        }
    }
}

impl QuadratureConfig {
    pub fn with_scheme(mut self, scheme: QuadratureScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return Err(Error::InvalidArgument(format!(
                "max_depth must be in 1..=60, got {}",
                self.max_depth
            )));
        }
        if self.panels == 0 {
            return Err(Error::InvalidArgument("panels must be positive".into()));
        }
        if !self.phase.is_finite() {
            return Err(Error::InvalidArgument("phase must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralInvariants {
    pub pitch: f64,
    pub angle_of_pitch: f64,
    pub striction_length: f64,
    /// Largest of the quadrature error estimates and the scheme disagreement.
    pub est_error: f64,
    pub period: [f64; 2],
}

fn ensure_closed<P: ParametricPath>(motion: &RuledMotion<P>) -> Result<()> {
    if !motion.path().is_closed() {
        return Err(Error::NotClosed);
    }
    let start = motion.dual_curve_at(0.0)?.x;
    let end = motion.dual_curve_at(1.0)?.x;
    if start.max_abs_diff(&end) > CLOSURE_TOL {
        return Err(Error::NotClosed);
    }
    Ok(())
}

fn integrate<P, F>(motion: &RuledMotion<P>, cfg: &QuadratureConfig, f: F) -> Result<Estimate>
where
    P: ParametricPath,
    F: Fn(&RuledMotion<P>, f64) -> Result<f64> + Sync,
{
    cfg.validate()?;
    ensure_closed(motion)?;
    let phase = cfg.phase.rem_euclid(1.0);
    let g = |t: f64| f(motion, t);
    if phase == 0.0 {
        return over(&g, cfg, 0.0, 1.0, cfg.panels);
    }
    // The integrand is only piecewise smooth across t = 0 ≡ 1, so the
    // wrapped period is split there.
    let head_panels =
        ((cfg.panels as f64 * (1.0 - phase)).round() as usize).clamp(1, cfg.panels.max(2) - 1);
    let head = over(&g, cfg, phase, 1.0, head_panels)?;
    let tail = over(&g, cfg, 0.0, phase, cfg.panels.max(2) - head_panels)?;
    Ok(Estimate {
        value: head.value + tail.value,
        error: head.error + tail.error,
        evaluations: head.evaluations + tail.evaluations,
    })
}

fn over<G>(g: &G, cfg: &QuadratureConfig, a: f64, b: f64, panels: usize) -> Result<Estimate>
where
    G: Fn(f64) -> Result<f64> + Sync,
{
    match cfg.scheme {
        QuadratureScheme::GaussLegendre => quadrature::fixed(g, a, b, panels),
        QuadratureScheme::Adaptive => quadrature::adaptive(g, a, b, cfg.rel_tol, cfg.max_depth),
    }
}

fn pitch_estimate<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate(motion, cfg, |m, t| m.pitch_density(t))
}

fn angle_estimate<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate(motion, cfg, |m, t| {
        m.invariants_unchecked(t).map(|s| -s.tau)
    })
}

fn striction_estimate<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate(motion, cfg, |m, t| {
        m.invariants_unchecked(t)
            .map(|s| s.tau_bar.hypot(s.kappa_bar))
    })
}

pub fn pitch<P: ParametricPath>(motion: &RuledMotion<P>, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(cfg.convention.sign() * pitch_estimate(motion, cfg)?.value)
}

pub fn angle_of_pitch<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(cfg.convention.sign() * angle_estimate(motion, cfg)?.value)
}

pub fn striction_arclength<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(striction_estimate(motion, cfg)?.value)
}

/// All three integrals, each computed with both schemes. Reported values
/// come from the adaptive scheme; a disagreement above [`SCHEME_AGREEMENT`]
/// is an error.
pub fn integral_invariants<P: ParametricPath>(
    motion: &RuledMotion<P>,
    cfg: &QuadratureConfig,
) -> Result<IntegralInvariants> {
    let fixed = cfg.with_scheme(QuadratureScheme::GaussLegendre);
    let adaptive = cfg.with_scheme(QuadratureScheme::Adaptive);
    let mut est_error = 0.0f64;
    let mut both = |name: &str, f: &dyn Fn(&QuadratureConfig) -> Result<Estimate>| -> Result<f64> {
        let (a, b) = (f(&fixed)?, f(&adaptive)?);
        let gap = (a.value - b.value).abs();
        if gap > SCHEME_AGREEMENT * a.value.abs().max(b.value.abs()).max(1.0) {
            return Err(Error::QuadratureNoConvergence(format!(
                "{name}: schemes disagree by {gap:.3e} ({} vs {})",
                a.value, b.value
            )));
        }
        est_error = est_error.max(gap).max(a.error.min(b.error));
        Ok(b.value)
    };
    let sign = cfg.convention.sign();
    let pitch = sign * both("pitch", &|c| pitch_estimate(motion, c))?;
    let angle_of_pitch = sign * both("angle of pitch", &|c| angle_estimate(motion, c))?;
    let striction_length = both("striction length", &|c| striction_estimate(motion, c))?;
    Ok(IntegralInvariants {
        pitch,
        angle_of_pitch,
        striction_length,
        est_error,
        period: [0.0, 1.0],
    })
}
