//! Dual numbers `a + εā` (with `ε² = 0`), dual 3-vectors and the line
//! elements they encode.
//!
//! A unit dual vector `x + εx̄` with `|x| = 1` and `⟨x, x̄⟩ = 0` is a directed
//! line: `x` is its direction and `x̄ = p × x` its moment about the origin for
//! any point `p` on the line.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Vec3;

/// Real parts with magnitude at or below this cannot be inverted.
pub const INVERTIBLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DualScalar {
    pub real: f64,
    pub dual: f64,
}

impl DualScalar {
    pub const ZERO: DualScalar = DualScalar {
        real: 0.0,
        dual: 0.0,
    };
    pub const ONE: DualScalar = DualScalar {
        real: 1.0,
        dual: 0.0,
    };
    /// The dual unit ε.
    pub const EPSILON: DualScalar = DualScalar {
        real: 0.0,
        dual: 1.0,
    };

    pub const fn new(real: f64, dual: f64) -> Self {
        DualScalar { real, dual }
    }

    pub const fn constant(real: f64) -> Self {
        DualScalar { real, dual: 0.0 }
    }

    /// Seeds a variable for forward differentiation: `x + ε`.
    pub const fn variable(real: f64) -> Self {
        DualScalar { real, dual: 1.0 }
    }

    /// Lifts a differentiable real function: `f(x + εx̄) = f(x) + εx̄ f'(x)`.
    #[inline]
    pub fn lift(self, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Self {
        DualScalar::new(f(self.real), self.dual * df(self.real))
    }

    /// Lift with the value and derivative supplied together.
    #[inline]
    pub fn lift_with(self, value: f64, derivative: f64) -> Self {
        DualScalar::new(value, self.dual * derivative)
    }

    pub fn sin(self) -> Self {
        self.lift_with(self.real.sin(), self.real.cos())
    }

    pub fn cos(self) -> Self {
        self.lift_with(self.real.cos(), -self.real.sin())
    }

    pub fn exp(self) -> Self {
        let e = self.real.exp();
        self.lift_with(e, e)
    }

    pub fn ln(self) -> Result<Self> {
        if self.real <= 0.0 {
            return Err(Error::Domain(format!(
                "ln of non-positive value {}",
                self.real
            )));
        }
        Ok(self.lift_with(self.real.ln(), 1.0 / self.real))
    }

    /// Square root; the real part must be positive for the derivative to exist.
    pub fn sqrt(self) -> Result<Self> {
        if self.real <= INVERTIBLE_EPS {
            return Err(Error::DualDivisionByZero);
        }
        let s = self.real.sqrt();
        Ok(self.lift_with(s, 0.5 / s))
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return DualScalar::ONE;
        }
        self.lift_with(self.real.powi(n), f64::from(n) * self.real.powi(n - 1))
    }

    pub fn recip(self) -> Result<Self> {
        if self.real.abs() <= INVERTIBLE_EPS {
            return Err(Error::DualDivisionByZero);
        }
        let inv = 1.0 / self.real;
        Ok(DualScalar::new(inv, -self.dual * inv * inv))
    }

    /// `self / rhs`, defined only for an invertible divisor.
    pub fn checked_div(self, rhs: DualScalar) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }

    pub fn scale(self, k: f64) -> Self {
        DualScalar::new(self.real * k, self.dual * k)
    }
}

impl From<f64> for DualScalar {
    fn from(x: f64) -> Self {
        DualScalar::constant(x)
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual.is_sign_negative() {
            write!(f, "{} - ε{}", self.real, -self.dual)
        } else {
            write!(f, "{} + ε{}", self.real, self.dual)
        }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: Self) -> Self {
        DualScalar::new(self.real + rhs.real, self.dual + rhs.dual)
    }
}

impl AddAssign for DualScalar {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: Self) -> Self {
        DualScalar::new(self.real - rhs.real, self.dual - rhs.dual)
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> Self {
        DualScalar::new(-self.real, -self.dual)
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: Self) -> Self {
        // ε² = 0: no dual·dual term.
        DualScalar::new(
            self.real * rhs.real,
            self.dual * rhs.real + self.real * rhs.dual,
        )
    }
}

impl Mul<f64> for DualScalar {
    type Output = DualScalar;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

/// `x + εx̄` with `x, x̄ ∈ R³`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualVec3 {
    pub real: Vec3,
    pub dual: Vec3,
}

impl DualVec3 {
    pub fn new(real: Vec3, dual: Vec3) -> Self {
        DualVec3 { real, dual }
    }

    pub fn zero() -> Self {
        DualVec3::new(Vec3::zeros(), Vec3::zeros())
    }

    pub fn from_components(c: [DualScalar; 3]) -> Self {
        DualVec3::new(
            Vec3::new(c[0].real, c[1].real, c[2].real),
            Vec3::new(c[0].dual, c[1].dual, c[2].dual),
        )
    }

    pub fn component(&self, i: usize) -> DualScalar {
        DualScalar::new(self.real[i], self.dual[i])
    }

    /// `⟨U, V⟩ = ⟨u, v⟩ + ε(⟨u, v̄⟩ + ⟨ū, v⟩)`.
    pub fn dot(&self, other: &DualVec3) -> DualScalar {
        DualScalar::new(
            self.real.dot(&other.real),
            self.real.dot(&other.dual) + self.dual.dot(&other.real),
        )
    }

    /// `(u × v) + ε(ū × v + u × v̄)`.
    pub fn cross(&self, other: &DualVec3) -> DualVec3 {
        DualVec3::new(
            self.real.cross(&other.real),
            self.dual.cross(&other.real) + self.real.cross(&other.dual),
        )
    }

    /// Dual triple product `[U, V, W] = ⟨U, V × W⟩`.
    pub fn triple(&self, v: &DualVec3, w: &DualVec3) -> DualScalar {
        self.dot(&v.cross(w))
    }

    /// Dual norm `sqrt⟨U, U⟩`; needs a non-vanishing real part.
    pub fn norm(&self) -> Result<DualScalar> {
        self.dot(self).sqrt().map_err(|_| Error::SingularDirection)
    }

    pub fn scale(&self, s: DualScalar) -> DualVec3 {
        DualVec3::new(self.real * s.real, self.dual * s.real + self.real * s.dual)
    }

    /// `U / ‖U‖` computed entirely in dual arithmetic.
    pub fn unit(&self) -> Result<DualVec3> {
        let inv = self.norm()?.recip().map_err(|_| Error::SingularDirection)?;
        Ok(self.scale(inv))
    }

    /// Max-abs distance over all six components.
    pub fn max_abs_diff(&self, other: &DualVec3) -> f64 {
        (self.real - other.real)
            .amax()
            .max((self.dual - other.dual).amax())
    }
}

impl Add for DualVec3 {
    type Output = DualVec3;
    fn add(self, rhs: Self) -> Self {
        DualVec3::new(self.real + rhs.real, self.dual + rhs.dual)
    }
}

impl Sub for DualVec3 {
    type Output = DualVec3;
    fn sub(self, rhs: Self) -> Self {
        DualVec3::new(self.real - rhs.real, self.dual - rhs.dual)
    }
}

impl Neg for DualVec3 {
    type Output = DualVec3;
    fn neg(self) -> Self {
        DualVec3::new(-self.real, -self.dual)
    }
}

impl Mul<f64> for DualVec3 {
    type Output = DualVec3;
    fn mul(self, k: f64) -> Self {
        DualVec3::new(self.real * k, self.dual * k)
    }
}

/// A directed line: unit direction and moment, `‖x‖ = 1`, `⟨x, x̄⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineElement {
    direction: Vec3,
    moment: Vec3,
}

impl LineElement {
    /// Line through `point` with direction `direction` (normalized here).
    pub fn through(point: Vec3, direction: Vec3) -> Result<Self> {
        let n = direction.norm();
        if n <= INVERTIBLE_EPS {
            return Err(Error::SingularDirection);
        }
        let x = direction / n;
        Ok(LineElement {
            direction: x,
            moment: point.cross(&x),
        })
    }

    pub fn direction(&self) -> Vec3 {
        self.direction
    }

    pub fn moment(&self) -> Vec3 {
        self.moment
    }

    /// Point of the line closest to the origin, `x × x̄`.
    pub fn foot(&self) -> Vec3 {
        self.direction.cross(&self.moment)
    }

    pub fn as_dual(&self) -> DualVec3 {
        DualVec3::new(self.direction, self.moment)
    }

    /// Residuals of the two Plücker constraints `(‖x‖ − 1, ⟨x, x̄⟩)`.
    pub fn plucker_residual(&self) -> (f64, f64) {
        (
            self.direction.norm() - 1.0,
            self.direction.dot(&self.moment),
        )
    }
}

/// Normalizes a dual vector onto the dual unit sphere.
///
/// The direction is scaled to unit length, the moment by the same factor, and
/// then the moment's component along the direction is removed.
pub fn normalize(u: &DualVec3) -> Result<LineElement> {
    let n = u.real.norm();
    if n <= INVERTIBLE_EPS {
        return Err(Error::SingularDirection);
    }
    let x = u.real / n;
    let m = u.dual / n;
    let moment = m - x * x.dot(&m);
    Ok(LineElement {
        direction: x,
        moment,
    })
}

impl From<LineElement> for DualVec3 {
    fn from(l: LineElement) -> Self {
        l.as_dual()
    }
}

/// Angle between directions and signed distance along the common normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualAngle {
    /// Radians in `[0, π]`.
    pub angle: f64,
    /// Offset along `u × v` (signed); its magnitude is the shortest distance.
    pub distance: f64,
}

/// Dual angle `α + εd` between two lines, from `cos(α + εd) = ⟨U, V⟩`.
pub fn dual_angle(a: &LineElement, b: &LineElement) -> DualAngle {
    let c = a.as_dual().dot(&b.as_dual());
    let cos_a = c.real.clamp(-1.0, 1.0);
    let angle = cos_a.acos();
    let sin_a = a.direction.cross(&b.direction).norm();
    if sin_a > 1e-9 {
        // cos(α + εd) = cos α − εd sin α
        DualAngle {
            angle,
            distance: -c.dual / sin_a,
        }
    } else {
        // Parallel (or antiparallel): moments differ by (p − q) × x.
        let sign = if cos_a >= 0.0 { 1.0 } else { -1.0 };
        let distance = (a.moment - b.moment * sign).norm();
        DualAngle {
            angle: if sign > 0.0 {
                0.0
            } else {
                std::f64::consts::PI
            },
            distance,
        }
    }
}
