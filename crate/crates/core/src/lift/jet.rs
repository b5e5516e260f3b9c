//! Second-order truncated Taylor arithmetic in the two chart variables.

use std::ops::{Add, Mul, Neg, Sub};

/// Value, gradient and Hessian of a function of `(u, v)` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub value: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub const fn constant(value: f64) -> Self {
        Jet2 {
            value,
            du: 0.0,
            dv: 0.0,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
        }
    }

    /// The coordinate function `u` at `u = x`.
    pub const fn var_u(x: f64) -> Self {
        Jet2 {
            value: x,
            du: 1.0,
            dv: 0.0,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
        }
    }

    /// The coordinate function `v` at `v = x`.
    pub const fn var_v(x: f64) -> Self {
        Jet2 {
            value: x,
            du: 0.0,
            dv: 1.0,
            duu: 0.0,
            duv: 0.0,
            dvv: 0.0,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, r: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + r.value,
            du: self.du + r.du,
            dv: self.dv + r.dv,
            duu: self.duu + r.duu,
            duv: self.duv + r.duv,
            dvv: self.dvv + r.dvv,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, r: Jet2) -> Jet2 {
        self + (-r)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            du: -self.du,
            dv: -self.dv,
            duu: -self.duu,
            duv: -self.duv,
            dvv: -self.dvv,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, r: Jet2) -> Jet2 {
        Jet2 {
            value: self.value * r.value,
            du: self.du * r.value + self.value * r.du,
            dv: self.dv * r.value + self.value * r.dv,
            duu: self.duu * r.value + 2.0 * self.du * r.du + self.value * r.duu,
            duv: self.duv * r.value + self.du * r.dv + self.dv * r.du + self.value * r.duv,
            dvv: self.dvv * r.value + 2.0 * self.dv * r.dv + self.value * r.dvv,
        }
    }
}
