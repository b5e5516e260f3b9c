//! Request and response types of the design endpoint and the pipeline
//! that connects them.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ruledkit::curve::validate_closed_c1;
use ruledkit::integral::{integral_invariants, QuadratureConfig};
use ruledkit::lift::ParseError;
use ruledkit::mesh::{tessellate, MeshJson, RuledPatch};
use ruledkit::net::net_from_value;
use ruledkit::{Error, InvariantSample, LiftField, RuledMotion, Tolerances, ValidationReport};

/// Inclusive bounds for every count in a request.
pub const MIN_COUNT: usize = 2;
pub const MAX_COUNT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftText {
    pub u_bar: String,
    pub v_bar: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignRequest {
    /// `[[u, v], ...]`; coordinates may be numbers or strings like `"pi/8"`.
    pub control_points: Value,
    pub lift: LiftText,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_w_min")]
    pub w_min: f64,
    #[serde(default = "default_w_max")]
    pub w_max: f64,
    #[serde(default = "default_samples")]
    pub mesh_nt: usize,
    #[serde(default = "default_mesh_nw")]
    pub mesh_nw: usize,
}

fn default_samples() -> usize {
    128
}
fn default_w_min() -> f64 {
    -1.0
}
fn default_w_max() -> f64 {
    1.0
}
fn default_mesh_nw() -> usize {
    8
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integrals {
    pub pitch: f64,
    pub angle_of_pitch: f64,
    pub striction_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignResponse {
    pub validation: ValidationReport,
    pub mesh: MeshJson,
    /// Gaussian curvature at each mesh vertex; `null` where the surface is
    /// singular.
    pub gaussian: Vec<Option<f64>>,
    pub striction: Vec<[f64; 3]>,
    pub profile: Vec<InvariantSample>,
    /// Absent when the closed-loop integrals could not be evaluated.
    pub integrals: Option<Integrals>,
    pub warnings: Vec<String>,
}

/// Failure of a design request, already classified by HTTP status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignError {
    #[serde(skip)]
    pub status: u16,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl DesignError {
    pub fn bad_request(message: impl Into<String>) -> Self {
        DesignError {
            status: 400,
            error: message.into(),
            field: None,
            position: None,
        }
    }

    pub fn unprocessable(message: impl Into<String>) -> Self {
        DesignError {
            status: 422,
            error: message.into(),
            field: None,
            position: None,
        }
    }

    fn expression(field: &str, e: ParseError) -> Self {
        DesignError {
            status: 400,
            error: format!("{field}: {e}"),
            field: Some(field.to_string()),
            position: Some(e.position),
        }
    }
}

impl From<Error> for DesignError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => DesignError {
                position: Some(p.position),
                ..DesignError::bad_request(p.to_string())
            },
            Error::InvalidNet(_) | Error::InvalidArgument(_) | Error::Format { .. } => {
                DesignError::bad_request(e.to_string())
            }
            other => DesignError::unprocessable(other.to_string()),
        }
    }
}

fn check_count(name: &str, n: usize) -> Result<(), DesignError> {
    if (MIN_COUNT..=MAX_COUNT).contains(&n) {
        Ok(())
    } else {
        Err(DesignError::bad_request(format!(
            "{name} must lie in [{MIN_COUNT}, {MAX_COUNT}], got {n}"
        )))
    }
}

/// Runs the full pipeline for one request. Deterministic in its inputs.
pub fn design(req: &DesignRequest, tol: &Tolerances) -> Result<DesignResponse, DesignError> {
    check_count("samples", req.samples)?;
    check_count("mesh_nt", req.mesh_nt)?;
    check_count("mesh_nw", req.mesh_nw)?;
    if let Some(points) = req.control_points.as_array() {
        check_count("control_points", points.len())?;
    }
    if !(req.w_min.is_finite() && req.w_max.is_finite() && req.w_min < req.w_max) {
        return Err(DesignError::bad_request(format!(
            "w range [{}, {}] is empty",
            req.w_min, req.w_max
        )));
    }

    let net = net_from_value(&req.control_points)?;
    let u_bar = ruledkit::lift::Expr::parse(&req.lift.u_bar)
        .map_err(|e| DesignError::expression("u_bar", e))?;
    let v_bar = ruledkit::lift::Expr::parse(&req.lift.v_bar)
        .map_err(|e| DesignError::expression("v_bar", e))?;

    let validation = validate_closed_c1(&net, tol);
    if !validation.closed {
        return Err(DesignError::unprocessable(Error::NotClosed.to_string()));
    }
    let mut warnings = validation.warnings.clone();

    let motion =
        RuledMotion::new(net, LiftField::Expression { u_bar, v_bar }).with_tolerances(*tol);
    let profile = motion.profile(req.samples)?;
    if profile
        .iter()
        .all(|s| s.flags.invalid || s.flags.cylindrical)
    {
        return Err(DesignError::unprocessable(
            Error::AllSamplesDegenerate.to_string(),
        ));
    }
    let count = |f: fn(&InvariantSample) -> bool| profile.iter().filter(|s| f(s)).count();
    let flagged = [
        ("developable", count(|s| s.flags.developable)),
        ("cylindrical", count(|s| s.flags.cylindrical)),
        ("near a pole", count(|s| s.flags.pole)),
        ("invalid", count(|s| s.flags.invalid)),
    ];
    for (label, n) in flagged.into_iter().filter(|f| f.1 > 0) {
        warnings.push(format!(
            "{n} of {} profile samples are {label}",
            profile.len()
        ));
    }

    let patch = RuledPatch::new(&motion, req.w_min, req.w_max)?;
    let mesh = tessellate(&patch, req.mesh_nt, req.mesh_nw)?;
    if !mesh.degenerate_vertices.is_empty() {
        warnings.push(format!(
            "{} mesh vertices have no surface normal",
            mesh.degenerate_vertices.len()
        ));
    }
    if !mesh.holes.is_empty() {
        warnings.push(format!(
            "{} mesh vertices could not be evaluated",
            mesh.holes.len()
        ));
    }

    let integrals = match integral_invariants(&motion, &QuadratureConfig::default()) {
        Ok(i) => Some(Integrals {
            pitch: i.pitch,
            angle_of_pitch: i.angle_of_pitch,
            striction_length: i.striction_length,
        }),
        Err(e) => {
            warnings.push(format!("integral invariants unavailable: {e}"));
            None
        }
    };

    let gaussian = mesh.gaussian.clone();
    let mesh = mesh.to_json();
    Ok(DesignResponse {
        validation,
        striction: mesh.striction.clone(),
        mesh,
        gaussian,
        profile,
        integrals,
        warnings,
    })
}
