//! Numerical thresholds shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable holding tolerance overrides, e.g.
/// `RULEDKIT_TOL="kappa_min=1e-7,numerical=1e-8"`.
pub const TOLERANCE_ENV: &str = "RULEDKIT_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Plücker constraints, unit norms, exact identities.
    pub structural: f64,
    /// Comparisons of computed geometric quantities.
    pub numerical: f64,
    /// Below this real curvature a point is treated as cylindrical.
    pub kappa_min: f64,
    /// `|sin v|` below this is reported as pole proximity.
    pub pole: f64,
    /// `|κ̄|` at or below this marks a developable sample.
    pub developable: f64,
    /// Triangle area threshold for the C¹ collinearity test.
    pub collinear_area: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-12,
            numerical: 1e-9,
            kappa_min: 1e-8,
            pole: 1e-6,
            developable: 1e-9,
            collinear_area: 1e-10,
        }
    }
}

impl Tolerances {
    /// Defaults with overrides applied from [`TOLERANCE_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOLERANCE_ENV) {
            Ok(spec) => Self::default().with_overrides(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Applies a comma separated list of `key=value` overrides.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("tolerance override `{item}` is not key=value"))
            })?;
            let value: f64 = value
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite() && *v > 0.0)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("tolerance `{key}` needs a positive number"))
                })?;
            let slot = match key.trim() {
                "structural" => &mut self.structural,
                "numerical" => &mut self.numerical,
                "kappa_min" => &mut self.kappa_min,
                "pole" => &mut self.pole,
                "developable" => &mut self.developable,
                "collinear_area" => &mut self.collinear_area,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown tolerance `{other}`"
                    )))
                }
            };
            *slot = value;
        }
        Ok(self)
    }
}
