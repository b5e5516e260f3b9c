//! Input resolution shared by the subcommands.

use std::fmt;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use ruledkit::lift::parse_constant;
use ruledkit::net::parse_net;
use ruledkit::{AnalyticPath, BezierPath2, Error, LiftField, Path, Tolerances};

/// Exit codes of the `ruledkit` binary.
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ENVIRONMENT: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn environment(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_ENVIRONMENT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Format { .. }
            | Error::InvalidNet(_)
            | Error::InvalidArgument(_) => CliError::input(e.to_string()),
            other => CliError::domain(other.to_string()),
        }
    }
}

/// Reads a control net from a file, or parses it directly when the
/// argument is itself JSON.
pub fn load_net(source: &str) -> Result<BezierPath2, CliError> {
    let trimmed = source.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        source.to_string()
    } else {
        fs::read_to_string(source)
            .map_err(|e| CliError::input(format!("cannot read `{source}`: {e}")))?
    };
    parse_net(&text).map_err(|e| CliError::input(format!("{source}: {e}")))
}

/// `great-circle`, `small-circle:V0` or `line:U0,V0,DU,DV`. Numbers may be
/// constants such as `pi/2`.
pub fn parse_path_spec(spec: &str) -> Result<AnalyticPath, CliError> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let numbers = || -> Result<Vec<f64>, CliError> {
        args.split(',')
            .map(|a| {
                parse_constant(a.trim()).map_err(|e| CliError::input(format!("path `{spec}`: {e}")))
            })
            .collect()
    };
    match (kind, args.is_empty()) {
        ("great-circle", true) => Ok(AnalyticPath::great_circle()),
        ("small-circle", false) => match numbers()?[..] {
            [v0] => Ok(AnalyticPath::SmallCircle { v0 }),
            _ => Err(CliError::input(format!(
                "path `{spec}`: small-circle takes one value"
            ))),
        },
        ("line", false) => match numbers()?[..] {
            [u0, v0, du, dv] => Ok(AnalyticPath::Line { u0, v0, du, dv }),
            _ => Err(CliError::input(format!(
                "path `{spec}`: line takes u0,v0,du,dv"
            ))),
        },
        _ => Err(CliError::input(format!(
            "unknown path `{spec}` (expected great-circle, small-circle:V0 or line:U0,V0,DU,DV)"
        ))),
    }
}

/// `A:B` with `A < B`.
pub fn parse_w_range(spec: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::input(format!("w range `{spec}` is not MIN:MAX with MIN < MAX"));
    let (a, b) = spec.split_once(':').ok_or_else(bad)?;
    let (a, b) = (
        parse_constant(a.trim()).map_err(|_| bad())?,
        parse_constant(b.trim()).map_err(|_| bad())?,
    );
    if a.is_finite() && b.is_finite() && a < b {
        Ok((a, b))
    } else {
        Err(bad())
    }
}

pub fn parse_field(spec: &str) -> Result<LiftField, CliError> {
    LiftField::parse(spec).map_err(|e| CliError::input(format!("field `{spec}`: {e}")))
}

pub fn tolerances() -> Result<Tolerances, CliError> {
    Tolerances::from_env()
        .map_err(|e| CliError::input(format!("{}: {e}", ruledkit::tolerance::TOLERANCE_ENV)))
}

/// Exactly one of `curve` and `path` must be given.
pub fn resolve_path(curve: Option<&str>, path: Option<&str>) -> Result<Path, CliError> {
    match (curve, path) {
        (Some(c), None) => Ok(Path::Bezier(load_net(c)?)),
        (None, Some(p)) => Ok(Path::Analytic(parse_path_spec(p)?)),
        (Some(_), Some(_)) => Err(CliError::input("give either --curve or --path, not both")),
        (None, None) => Err(CliError::input(
            "an input is required: --curve FILE or --path SPEC",
        )),
    }
}

/// Output format, given explicitly or taken from the extension of `out`.
pub fn resolve_format(
    explicit: Option<&str>,
    out: Option<&FsPath>,
    allowed: &[&'static str],
) -> Result<&'static str, CliError> {
    let from_ext = out
        .and_then(|p| p.extension())
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let wanted = explicit.map(str::to_ascii_lowercase).or(from_ext);
    match wanted {
        None => Ok(allowed[0]),
        Some(w) => allowed.iter().copied().find(|a| *a == w).ok_or_else(|| {
            CliError::input(format!(
                "format `{w}` not supported here (expected one of {allowed:?})"
            ))
        }),
    }
}

/// Writes to `out`, or to stdout when absent.
pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::environment(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::environment(format!("cannot write to stdout: {e}")))
        }
    }
}
