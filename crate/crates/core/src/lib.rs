//! Ruled surfaces designed from control points.
//!
//! A planar Bézier net on the rectangle `[0, π] × [0, 2π]` is mapped onto the
//! unit sphere and lifted to the dual unit sphere with a pair of scalar fields
//! `(ū, v̄)`. The resulting one-parameter family of dual unit vectors is a
//! family of directed lines, i.e. a ruled surface. This crate evaluates that
//! construction and its invariants:
//!
//! * [`dual`]: dual numbers, dual vectors and line elements,
//! * [`curve`]: Bézier nets on the parameter rectangle and analytic test paths,
//! * [`lift`]: lift fields parsed from expressions, with forward-mode partials,
//! * [`sphere`]: the sphere chart, its dual lift and the Blaschke frame,
//! * [`ruled`]: curvature, torsion, distribution parameter, striction and
//!   fundamental forms of the ruled surface,
//! * [`integral`]: pitch and angle of pitch of closed ruled surfaces,
//! * [`mesh`] and [`export`]: tessellation and text serialization.

pub mod curve;
pub mod dual;
pub mod error;
pub mod export;
pub mod integral;
pub mod lift;
pub mod mesh;
pub mod net;
pub mod quadrature;
pub mod ruled;
pub mod sphere;
pub mod tolerance;

pub use curve::{
    AnalyticPath, BezierPath2, DomainPoint, ParametricPath, Path, PathSample, ValidationReport,
};
pub use dual::{DualAngle, DualScalar, DualVec3, LineElement};
pub use error::{Error, Result};
pub use integral::{IntegralInvariants, QuadratureConfig, QuadratureScheme, SignConvention};
pub use lift::{LiftField, LiftSample};
pub use mesh::TriMesh;
pub use ruled::{InvariantSample, RuledMotion, SampleFlags, StrictionData, SurfaceSample};
pub use tolerance::Tolerances;

/// Real 3-vector used throughout the crate.
pub type Vec3 = nalgebra::Vector3<f64>;
