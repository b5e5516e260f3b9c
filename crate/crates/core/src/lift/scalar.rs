//! Number types an expression can be evaluated over.

use std::ops::{Add, Mul, Neg, Sub};

use super::jet::Jet2;
use crate::dual::{DualScalar, INVERTIBLE_EPS};
use crate::error::{Error, Result};

/// Real-valued arithmetic with the transcendental functions of the
/// expression language. Implemented for `f64`, [`DualScalar`] and [`Jet2`].
pub trait Number:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(x: f64) -> Self;
    fn value(&self) -> f64;
    /// Applies a scalar function given its value and first two derivatives at
    /// `self.value()`.
    fn chain(self, f: f64, df: f64, ddf: f64) -> Self;

    fn sin(self) -> Self {
        let x = self.value();
        self.chain(x.sin(), x.cos(), -x.sin())
    }

    fn cos(self) -> Self {
        let x = self.value();
        self.chain(x.cos(), -x.sin(), -x.cos())
    }

    fn exp(self) -> Self {
        let e = self.value().exp();
        self.chain(e, e, e)
    }

    fn ln(self) -> Result<Self> {
        let x = self.value();
        if x <= 0.0 {
            return Err(Error::Domain(format!(
                "logarithm of non-positive value {x}"
            )));
        }
        Ok(self.chain(x.ln(), 1.0 / x, -1.0 / (x * x)))
    }

    fn recip(self) -> Result<Self> {
        let x = self.value();
        if x.abs() <= INVERTIBLE_EPS {
            return Err(Error::DualDivisionByZero);
        }
        Ok(self.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)))
    }

    fn div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }

    /// `self^p` for a constant exponent.
    fn powf(self, p: f64) -> Result<Self> {
        let x = self.value();
        let integral = p.fract() == 0.0 && p.abs() < f64::from(i32::MAX);
        if integral {
            let n = p as i32;
            if n == 0 {
                return Ok(Self::constant(1.0));
            }
            if n < 0 && x.abs() <= INVERTIBLE_EPS {
                return Err(Error::DualDivisionByZero);
            }
            let nf = f64::from(n);
            let d1 = nf * x.powi(n - 1);
            let d2 = if n == 1 {
                0.0
            } else {
                nf * (nf - 1.0) * x.powi(n - 2)
            };
            return Ok(self.chain(x.powi(n), d1, d2));
        }
        if x <= 0.0 {
            return Err(Error::Domain(format!(
                "non-integer power {p} of non-positive value {x}"
            )));
        }
        Ok(self.chain(
            x.powf(p),
            p * x.powf(p - 1.0),
            p * (p - 1.0) * x.powf(p - 2.0),
        ))
    }

    /// `self^e` for a variable exponent, as `exp(e ln self)`.
    fn pow(self, e: Self) -> Result<Self> {
        if self.value() <= 0.0 {
            return Err(Error::Domain(format!(
                "variable power of non-positive value {}",
                self.value()
            )));
        }
        Ok((e * self.ln()?).exp())
    }
}

impl Number for f64 {
    fn constant(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn chain(self, f: f64, _df: f64, _ddf: f64) -> Self {
        f
    }
}

impl Number for DualScalar {
    fn constant(x: f64) -> Self {
        DualScalar::constant(x)
    }
    fn value(&self) -> f64 {
        self.real
    }
    fn chain(self, f: f64, df: f64, _ddf: f64) -> Self {
        self.lift_with(f, df)
    }
}

impl Number for Jet2 {
    fn constant(x: f64) -> Self {
        Jet2::constant(x)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn chain(self, f: f64, df: f64, ddf: f64) -> Self {
        Jet2 {
            value: f,
            du: df * self.du,
            dv: df * self.dv,
            duu: ddf * self.du * self.du + df * self.duu,
            duv: ddf * self.du * self.dv + df * self.duv,
            dvv: ddf * self.dv * self.dv + df * self.dvv,
        }
    }
}
