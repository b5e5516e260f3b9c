//! Lift fields `ū(u, v)`, `v̄(u, v)`: the dual parts of the dual chart
//! coordinates `û = u + εū`, `v̂ = v + εv̄`.
//!
//! Partials come from forward-mode differentiation: first partials by two
//! [`DualScalar`] passes (seed `u`, then `v`), second partials by one
//! [`Jet2`] pass.

mod expr;
mod jet;
mod scalar;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use expr::{parse_constant, parse_pair, BinOp, Expr, Func, ParseError, Var};
pub use jet::Jet2;
pub use scalar::Number;

use crate::dual::DualScalar;
use crate::error::Result;

/// `ū = a₁u + b₁v + c₁`, `v̄ = a₂u + b₂v + c₂`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AffineField {
    pub u_bar: [f64; 3],
    pub v_bar: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiftField {
    Affine(AffineField),
    Expression { u_bar: Expr, v_bar: Expr },
}

/// Field values and first partials at one chart point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LiftSample {
    pub u_bar: f64,
    pub v_bar: f64,
    pub u_bar_u: f64,
    pub u_bar_v: f64,
    pub v_bar_u: f64,
    pub v_bar_v: f64,
}

/// Field values with first and second partials.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LiftJet {
    pub u_bar: Jet2,
    pub v_bar: Jet2,
}

impl LiftField {
    /// `"EXPR , EXPR"` for `(ū, v̄)`.
    pub fn parse(source: &str) -> Result<LiftField, ParseError> {
        let (u_bar, v_bar) = parse_pair(source)?;
        Ok(LiftField::Expression { u_bar, v_bar })
    }

    pub fn from_exprs(u_bar: &str, v_bar: &str) -> Result<LiftField, ParseError> {
        Ok(LiftField::Expression {
            u_bar: Expr::parse(u_bar)?,
            v_bar: Expr::parse(v_bar)?,
        })
    }

    pub fn affine(a1: f64, b1: f64, c1: f64, a2: f64, b2: f64, c2: f64) -> LiftField {
        LiftField::Affine(AffineField {
            u_bar: [a1, b1, c1],
            v_bar: [a2, b2, c2],
        })
    }

    /// `ū = v̄ = 0`: a purely spherical motion, all rulings through the origin.
    pub fn zero() -> LiftField {
        LiftField::affine(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// Field values only.
    pub fn eval(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        match self {
            LiftField::Affine(a) => {
                Ok((affine_value(&a.u_bar, u, v), affine_value(&a.v_bar, u, v)))
            }
            LiftField::Expression { u_bar, v_bar } => Ok((u_bar.eval(u, v)?, v_bar.eval(u, v)?)),
        }
    }

    /// Values and the four first partials.
    pub fn eval_with_partials(&self, u: f64, v: f64) -> Result<LiftSample> {
        match self {
            LiftField::Affine(a) => Ok(LiftSample {
                u_bar: affine_value(&a.u_bar, u, v),
                v_bar: affine_value(&a.v_bar, u, v),
                u_bar_u: a.u_bar[0],
                u_bar_v: a.u_bar[1],
                v_bar_u: a.v_bar[0],
                v_bar_v: a.v_bar[1],
            }),
            LiftField::Expression { u_bar, v_bar } => {
                let (seed_u, fixed_v) = (DualScalar::variable(u), DualScalar::constant(v));
                let (fixed_u, seed_v) = (DualScalar::constant(u), DualScalar::variable(v));
                let ub_u = u_bar.eval(seed_u, fixed_v)?;
                let vb_u = v_bar.eval(seed_u, fixed_v)?;
                let ub_v = u_bar.eval(fixed_u, seed_v)?;
                let vb_v = v_bar.eval(fixed_u, seed_v)?;
                Ok(LiftSample {
                    u_bar: ub_u.real,
                    v_bar: vb_u.real,
                    u_bar_u: ub_u.dual,
                    u_bar_v: ub_v.dual,
                    v_bar_u: vb_u.dual,
                    v_bar_v: vb_v.dual,
                })
            }
        }
    }

    /// Values with first and second partials.
    pub fn eval_jet(&self, u: f64, v: f64) -> Result<LiftJet> {
        match self {
            LiftField::Affine(a) => {
                let jet = |c: &[f64; 3]| Jet2 {
                    value: affine_value(c, u, v),
                    du: c[0],
                    dv: c[1],
                    ..Jet2::default()
                };
                Ok(LiftJet {
                    u_bar: jet(&a.u_bar),
                    v_bar: jet(&a.v_bar),
                })
            }
            LiftField::Expression { u_bar, v_bar } => {
                let (ju, jv) = (Jet2::var_u(u), Jet2::var_v(v));
                Ok(LiftJet {
                    u_bar: u_bar.eval(ju, jv)?,
                    v_bar: v_bar.eval(ju, jv)?,
                })
            }
        }
    }

    /// Source text accepted by [`LiftField::parse`].
    pub fn to_source(&self) -> String {
        self.to_string()
    }
}

fn affine_value(c: &[f64; 3], u: f64, v: f64) -> f64 {
    c[0] * u + c[1] * v + c[2]
}

impl fmt::Display for LiftField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftField::Affine(a) => {
                let part = |c: &[f64; 3]| format!("{:?}*u + {:?}*v + {:?}", c[0], c[1], c[2]);
                write!(f, "{}, {}", part(&a.u_bar), part(&a.v_bar))
            }
            LiftField::Expression { u_bar, v_bar } => write!(f, "{u_bar}, {v_bar}"),
        }
    }
}
