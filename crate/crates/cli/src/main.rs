//! `ruledkit`: validate control nets, write invariant profiles, integral
//! invariants and meshes, or run the design service.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 unreadable
//! input, 3 environment failure (unwritable output, port in use).

mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ruledkit::curve::validate_closed_c1;
use ruledkit::export::{to_json17_pretty, write_profile_csv};
use ruledkit::integral::{integral_invariants, QuadratureConfig};
use ruledkit::mesh::{tessellate, write_obj, write_ply, RuledPatch};
use ruledkit::{RuledMotion, SignConvention};

use job::{
    emit, parse_field, parse_w_range, resolve_format, resolve_path, tolerances, CliError,
    EXIT_DOMAIN,
};

#[derive(Parser)]
#[command(
    name = "ruledkit",
    version,
    about = "Ruled surfaces from dual spherical Bézier curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report closure, C1 continuity and warnings for a control net.
    Validate {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the invariant profile on a uniform grid in t.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        /// csv or json; defaults to the extension of --out, then csv.
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pitch, angle of pitch and striction length of a closed motion.
    Integrals {
        #[command(flatten)]
        input: Input,
        /// coordinate or moment.
        #[arg(long, default_value = "coordinate")]
        convention: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tessellate the ruled patch.
    Mesh {
        #[command(flatten)]
        input: Input,
        /// Ruling parameter range MIN:MAX, measured from the directrix.
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        w_range: String,
        #[arg(long, default_value_t = 128)]
        nt: usize,
        #[arg(long, default_value_t = 8)]
        nw: usize,
        /// obj, ply or json; defaults to the extension of --out, then obj.
        #[arg(long)]
        format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the HTTP design service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Args)]
struct Input {
    /// Control net JSON file, or the JSON text itself.
    #[arg(long)]
    curve: Option<String>,
    /// Analytic path: great-circle, small-circle:V0 or line:U0,V0,DU,DV.
    #[arg(long)]
    path: Option<String>,
    /// Lift field "EXPR, EXPR" for (u_bar, v_bar).
    #[arg(long, default_value = "0, 0")]
    field: String,
}

impl Input {
    fn motion(&self) -> Result<RuledMotion, CliError> {
        let path = resolve_path(self.curve.as_deref(), self.path.as_deref())?;
        let field = parse_field(&self.field)?;
        Ok(RuledMotion::new(path, field).with_tolerances(tolerances()?))
    }
}

#[derive(Serialize)]
struct IntegralsReport {
    pitch: f64,
    angle_of_pitch: f64,
    striction_length: f64,
    est_error: f64,
    convention: &'static str,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { curve, out } => {
            let net = job::load_net(&curve)?;
            let report = validate_closed_c1(&net, &tolerances()?);
            emit(out.as_ref(), &(to_json17_pretty(&report)? + "\n"))?;
            if report.closed {
                Ok(())
            } else {
                Err(CliError::domain("curve not closed"))
            }
        }
        Command::Invariants {
            input,
            samples,
            format,
            out,
        } => {
            let format = resolve_format(format.as_deref(), out.as_deref(), &["csv", "json"])?;
            let profile = input.motion()?.profile(samples)?;
            let text = match format {
                "csv" => write_profile_csv(&profile)?,
                _ => to_json17_pretty(&profile)? + "\n",
            };
            emit(out.as_ref(), &text)
        }
        Command::Integrals {
            input,
            convention,
            out,
        } => {
            let convention: SignConvention = convention.parse()?;
            let motion = input.motion()?;
            let cfg = QuadratureConfig {
                convention,
                ..QuadratureConfig::default()
            };
            let i = integral_invariants(&motion, &cfg)?;
            let report = IntegralsReport {
                pitch: i.pitch,
                angle_of_pitch: i.angle_of_pitch,
                striction_length: i.striction_length,
                est_error: i.est_error,
                convention: match convention {
                    SignConvention::CoordinateForm => "coordinate",
                    SignConvention::MomentForm => "moment",
                },
            };
            emit(out.as_ref(), &(to_json17_pretty(&report)? + "\n"))
        }
        Command::Mesh {
            input,
            w_range,
            nt,
            nw,
            format,
            out,
        } => {
            let format =
                resolve_format(format.as_deref(), out.as_deref(), &["obj", "ply", "json"])?;
            let (w_min, w_max) = parse_w_range(&w_range)?;
            let motion = input.motion()?;
            let mesh = tessellate(&RuledPatch::new(&motion, w_min, w_max)?, nt, nw)?;
            let text = match format {
                "obj" => write_obj(&mesh)?,
                "ply" => write_ply(&mesh)?,
                _ => to_json17_pretty(&mesh.to_json())? + "\n",
            };
            emit(out.as_ref(), &text)
        }
        Command::Serve { port } => {
            let tol = tolerances()?;
            let runtime = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(|e| CliError::environment(format!("cannot start runtime: {e}")))?;
            runtime.block_on(async {
                let listener = ruledkit_service::bind(port)
                    .await
                    .map_err(|e| CliError::environment(format!("cannot bind port {port}: {e}")))?;
                if let Ok(addr) = listener.local_addr() {
                    eprintln!(
                        "ruledkit {}: listening on http://{addr}",
                        ruledkit_service::VERSION
                    );
                }
                ruledkit_service::serve(listener, tol)
                    .await
                    .map_err(|e| CliError::environment(format!("server stopped: {e}")))
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ruledkit: {e}");
            ExitCode::from(u8::try_from(e.code).unwrap_or(EXIT_DOMAIN as u8))
        }
    }
}
