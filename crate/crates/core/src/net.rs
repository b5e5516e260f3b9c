//! Control-net files: a JSON array of `[u, v]` pairs in radians. Each
//! coordinate is a number or a string such as `"pi/8"` or `"3pi/8"`.
//! An object `{"control_points": [...]}` is accepted as well.

use serde_json::Value;

use crate::curve::{BezierPath2, DomainPoint};
use crate::error::{Error, Result};
use crate::export::to_json17;
use crate::lift::parse_constant;

fn net_error(message: impl Into<String>) -> Error {
    Error::Format {
        format: "net",
        line: 0,
        message: message.into(),
    }
}

pub fn parse_net(text: &str) -> Result<BezierPath2> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Format {
        format: "net",
        line: e.line(),
        message: e.to_string(),
    })?;
    net_from_value(&value)
}

pub fn net_from_value(value: &Value) -> Result<BezierPath2> {
    let items = match value {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("control_points") {
            Some(Value::Array(items)) => items,
            _ => {
                return Err(net_error(
                    "expected an array or an object with `control_points`",
                ))
            }
        },
        _ => return Err(net_error("expected an array of [u, v] pairs")),
    };
    let points = items
        .iter()
        .enumerate()
        .map(|(i, item)| match item.as_array().map(Vec::as_slice) {
            Some([u, v]) => Ok(DomainPoint::new(coordinate(u, i)?, coordinate(v, i)?)),
            _ => Err(net_error(format!("control point {i}: expected [u, v]"))),
        })
        .collect::<Result<Vec<_>>>()?;
    BezierPath2::new(points)
}

fn coordinate(value: &Value, index: usize) -> Result<f64> {
    match value {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| net_error(format!("control point {index}: bad number"))),
        Value::String(s) => {
            parse_constant(s).map_err(|e| net_error(format!("control point {index}: `{s}`: {e}")))
        }
        _ => Err(net_error(format!(
            "control point {index}: expected a number or a string"
        ))),
    }
}

/// `[[u, v], ...]` with 17-digit numbers.
pub fn write_net(path: &BezierPath2) -> Result<String> {
    let pairs: Vec<[f64; 2]> = path.control_points().iter().map(|p| [p.u, p.v]).collect();
    to_json17(&pairs)
}
