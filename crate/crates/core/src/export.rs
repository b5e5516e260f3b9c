//! Text serialization of profiles and results with 17 significant digits,
//! enough to restore every `f64` exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::ruled::{InvariantSample, SampleFlags};

pub const PROFILE_HEADER: &str = "t,kappa,kappa_bar,tau,tau_bar,delta,cot_sigma,flags";

/// `x` in scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One header line plus one record per sample. An absent `cot σ` is an
/// empty field; flags are joined by `|`.
pub fn write_profile_csv(samples: &[InvariantSample]) -> Result<String> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("profile is empty".into()));
    }
    let mut out = String::with_capacity(64 * (samples.len() + 1));
    out.push_str(PROFILE_HEADER);
    out.push('\n');
    for s in samples {
        let cot = s.cot_sigma.map(fmt17).unwrap_or_default();
        let fields = [s.t, s.kappa, s.kappa_bar, s.tau, s.tau_bar, s.delta].map(fmt17);
        out.push_str(&fields.join(","));
        out.push(',');
        out.push_str(&cot);
        out.push(',');
        out.push_str(&s.flags.names().join("|"));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_profile_csv(text: &str) -> Result<Vec<InvariantSample>> {
    let err = |line: usize, message: String| Error::Format {
        format: "csv",
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == PROFILE_HEADER => {}
        _ => return Err(err(1, format!("expected header `{PROFILE_HEADER}`"))),
    }
    let mut out = Vec::new();
    for (k, raw) in lines {
        let line = k + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.trim_end().split(',').collect();
        if fields.len() != 8 {
            return Err(err(
                line,
                format!("expected 8 fields, found {}", fields.len()),
            ));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .parse()
                .map_err(|_| err(line, format!("bad number `{}`", fields[i])))
        };
        let flags = if fields[7].is_empty() {
            SampleFlags::default()
        } else {
            SampleFlags::from_names(fields[7].split('|')).map_err(|e| err(line, e.to_string()))?
        };
        out.push(InvariantSample {
            t: num(0)?,
            kappa: num(1)?,
            kappa_bar: num(2)?,
            tau: num(3)?,
            tau_bar: num(4)?,
            delta: num(5)?,
            cot_sigma: if fields[6].is_empty() {
                None
            } else {
                Some(num(6)?)
            },
            flags,
        });
    }
    Ok(out)
}

/// `serde_json` formatter writing every float with [`fmt17`].
struct Digits17<F>(F);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(writer $(, $arg)*)
        })*
    };
}

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        end_object_key(),
        begin_object_value(),
        end_object_value(),
    );
}

fn to_json_with<T: Serialize, F: Formatter>(value: &T, formatter: F) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(formatter));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Single-line JSON with 17-digit floats; non-finite floats become `null`.
pub fn to_json17<T: Serialize>(value: &T) -> Result<String> {
    to_json_with(value, CompactFormatter)
}

/// Indented JSON with 17-digit floats.
pub fn to_json17_pretty<T: Serialize>(value: &T) -> Result<String> {
    to_json_with(value, PrettyFormatter::new())
}
