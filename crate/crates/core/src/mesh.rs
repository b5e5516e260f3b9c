//! Triangle meshes of ruled patches and their OBJ / PLY text forms.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::ParametricPath;
use crate::error::{Error, Result};
use crate::export::fmt17;
use crate::ruled::RuledMotion;
use crate::sphere;
use crate::Vec3;

/// `R(t, w) = a(t) + w x(t)` for `t ∈ [0, 1]`, `w ∈ [w_min, w_max]`.
#[derive(Debug, Clone, Copy)]
pub struct RuledPatch<'a, P: ParametricPath> {
    motion: &'a RuledMotion<P>,
    w_range: [f64; 2],
}

impl<'a, P: ParametricPath> RuledPatch<'a, P> {
    pub fn new(motion: &'a RuledMotion<P>, w_min: f64, w_max: f64) -> Result<Self> {
        if !(w_min.is_finite() && w_max.is_finite() && w_min < w_max) {
            return Err(Error::InvalidArgument(format!(
                "invalid w range [{w_min}, {w_max}]"
            )));
        }
        Ok(RuledPatch {
            motion,
            w_range: [w_min, w_max],
        })
    }

    pub fn motion(&self) -> &RuledMotion<P> {
        self.motion
    }

    pub fn w_range(&self) -> [f64; 2] {
        self.w_range
    }

    pub fn directrix(&self, t: f64) -> Result<Vec3> {
        self.motion.directrix(t)
    }

    pub fn ruling(&self, t: f64) -> Result<Vec3> {
        self.motion.ruling(t)
    }

    pub fn point(&self, t: f64, w: f64) -> Result<Vec3> {
        Ok(self.directrix(t)? + self.ruling(t)? * w)
    }
}

/// Indexed triangle mesh with per-vertex unit normals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub normals: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
    /// Vertex indices along each ruling, one list per `t` row.
    pub ruling_polylines: Vec<Vec<usize>>,
    /// Striction points at the `t` rows where they exist.
    pub striction_polyline: Vec<Vec3>,
    /// Vertices whose normal came from neighbouring faces because the
    /// surface normal is undefined there (e.g. the edge of regression).
    pub degenerate_vertices: Vec<usize>,
    /// Vertices with no usable position or normal; faces touching them are
    /// left out.
    pub holes: Vec<usize>,
    /// Gaussian curvature per vertex where the surface is regular. Empty
    /// for meshes read from files.
    pub gaussian: Vec<Option<f64>>,
}

/// Wire form of a mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshJson {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub striction: Vec<[f64; 3]>,
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl TriMesh {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }

    pub fn to_json(&self) -> MeshJson {
        MeshJson {
            vertices: self.vertices.iter().map(arr).collect(),
            normals: self.normals.iter().map(arr).collect(),
            faces: self.faces.clone(),
            striction: self.striction_polyline.iter().map(arr).collect(),
        }
    }

    /// Distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    fn check(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let n = self.vertices.len();
        if self.normals.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} normals for {n} vertices",
                self.normals.len()
            )));
        }
        if let Some(f) = self.faces.iter().find(|f| f.iter().any(|&i| i >= n)) {
            return Err(Error::InvalidArgument(format!(
                "face {f:?} indexes past {n} vertices"
            )));
        }
        Ok(())
    }
}

struct Row {
    points: Vec<Option<Vec3>>,
    normals: Vec<Option<Vec3>>,
    gaussian: Vec<Option<f64>>,
    striction: Option<Vec3>,
}

fn sample_row<P: ParametricPath>(motion: &RuledMotion<P>, t: f64, ws: &[f64]) -> Row {
    let Ok(point) = motion.dual_curve_at(t) else {
        return Row {
            points: vec![None; ws.len()],
            normals: vec![None; ws.len()],
            gaussian: vec![None; ws.len()],
            striction: None,
        };
    };
    let (x, x_bar) = (point.x.real, point.x.dual);
    let a = x.cross(&x_bar);
    let frame_ok = sphere::blaschke_frame(&point, motion.tolerances().kappa_min).is_ok();
    let offset = if frame_ok {
        motion.directrix_offset(&point)
    } else {
        0.0
    };
    let samples: Vec<_> = ws
        .iter()
        .map(|&w| {
            frame_ok
                .then(|| motion.surface_sample_at(t, w + offset).ok())
                .flatten()
                .filter(|s| s.normal.iter().all(|c| c.is_finite()))
        })
        .collect();
    Row {
        points: ws.iter().map(|&w| Some(a + x * w)).collect(),
        normals: samples.iter().map(|s| s.map(|s| s.normal)).collect(),
        gaussian: samples
            .iter()
            .map(|s| s.map(|s| s.gaussian).filter(|k| k.is_finite()))
            .collect(),
        striction: frame_ok.then(|| motion.striction_at(&point)),
    }
}

/// Grid mesh over `nt × nw` cells: `(nt+1)(nw+1)` vertices, row `i` holds
/// `t = i/nt`, column `j` holds `w = w_min + j (w_max − w_min)/nw`, and
/// each cell is split into two triangles.
pub fn tessellate<P: ParametricPath>(
    patch: &RuledPatch<'_, P>,
    nt: usize,
    nw: usize,
) -> Result<TriMesh> {
    if nt < 2 || nw < 1 {
        return Err(Error::InvalidArgument(format!(
            "grid needs nt ≥ 2 and nw ≥ 1, got {nt} × {nw}"
        )));
    }
    let [w_min, w_max] = patch.w_range;
    let ws: Vec<f64> = (0..=nw)
        .map(|j| w_min + (w_max - w_min) * j as f64 / nw as f64)
        .collect();
    let rows: Vec<Row> = (0..=nt)
        .into_par_iter()
        .map(|i| sample_row(patch.motion, i as f64 / nt as f64, &ws))
        .collect();

    let cols = nw + 1;
    let points: Vec<Option<Vec3>> = rows.iter().flat_map(|r| r.points.iter().copied()).collect();
    let mut normals: Vec<Option<Vec3>> = rows
        .iter()
        .flat_map(|r| r.normals.iter().copied())
        .collect();
    if normals.iter().all(Option::is_none) {
        return Err(Error::AllSamplesDegenerate);
    }

    let mut cells = Vec::with_capacity(2 * nt * nw);
    for i in 0..nt {
        for j in 0..nw {
            let v00 = i * cols + j;
            let (v10, v01, v11) = (v00 + cols, v00 + 1, v00 + cols + 1);
            cells.push([v00, v10, v11]);
            cells.push([v00, v11, v01]);
        }
    }

    let face_normal = |f: &[usize; 3]| -> Option<Vec3> {
        let [a, b, c] = [points[f[0]]?, points[f[1]]?, points[f[2]]?];
        Some((b - a).cross(&(c - a)))
    };
    let mut degenerate_vertices = Vec::new();
    let mut holes = Vec::new();
    for v in 0..points.len() {
        if normals[v].is_some() {
            continue;
        }
        let best = points[v].and_then(|_| {
            cells
                .iter()
                .filter(|f| f.contains(&v))
                .filter_map(face_normal)
                .filter(|n| n.norm() > 1e-14)
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        });
        match best {
            Some(n) => {
                normals[v] = Some(n.normalize());
                degenerate_vertices.push(v);
            }
            None => holes.push(v),
        }
    }

    let faces = cells
        .into_iter()
        .filter(|f| f.iter().all(|v| normals[*v].is_some()))
        .collect();
    Ok(TriMesh {
        vertices: points
            .into_iter()
            .map(|p| p.unwrap_or_else(Vec3::zeros))
            .collect(),
        normals: normals
            .into_iter()
            .map(|n| n.unwrap_or_else(Vec3::z))
            .collect(),
        faces,
        ruling_polylines: (0..=nt)
            .map(|i| (i * cols..(i + 1) * cols).collect())
            .collect(),
        striction_polyline: rows.iter().filter_map(|r| r.striction).collect(),
        degenerate_vertices,
        holes,
        gaussian: rows
            .iter()
            .flat_map(|r| r.gaussian.iter().copied())
            .collect(),
    })
}

pub fn write_obj(mesh: &TriMesh) -> Result<String> {
    mesh.check()?;
    let mut out = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", fmt17(v.x), fmt17(v.y), fmt17(v.z));
    }
    for n in &mesh.normals {
        let _ = writeln!(out, "vn {} {} {}", fmt17(n.x), fmt17(n.y), fmt17(n.z));
    }
    for f in &mesh.faces {
        let [a, b, c] = f.map(|i| i + 1);
        let _ = writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}");
    }
    Ok(out)
}

pub fn write_ply(mesh: &TriMesh) -> Result<String> {
    mesh.check()?;
    let mut out = String::new();
    out.push_str("ply\nformat ascii 1.0\n");
    let _ = writeln!(out, "element vertex {}", mesh.vertices.len());
    for p in ["x", "y", "z", "nx", "ny", "nz"] {
        let _ = writeln!(out, "property double {p}");
    }
    let _ = writeln!(out, "element face {}", mesh.faces.len());
    out.push_str("property list uchar int vertex_indices\nend_header\n");
    for (v, n) in mesh.vertices.iter().zip(&mesh.normals) {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            fmt17(v.x),
            fmt17(v.y),
            fmt17(v.z),
            fmt17(n.x),
            fmt17(n.y),
            fmt17(n.z)
        );
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
    }
    Ok(out)
}

fn format_error(format: &'static str, line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        format,
        line,
        message: message.into(),
    }
}

fn parse_vec3(format: &'static str, line: usize, fields: &[&str]) -> Result<Vec3> {
    if fields.len() != 3 {
        return Err(format_error(
            format,
            line,
            format!("expected 3 coordinates, found {}", fields.len()),
        ));
    }
    let mut c = [0.0; 3];
    for (k, f) in fields.iter().enumerate() {
        c[k] = f
            .parse()
            .map_err(|_| format_error(format, line, format!("bad number `{f}`")))?;
    }
    Ok(Vec3::new(c[0], c[1], c[2]))
}

/// Reads back what [`write_obj`] produces: `v`, `vn` and `f a//a b//b c//c`
/// lines, with `#` comments and blank lines ignored.
pub fn parse_obj(text: &str) -> Result<TriMesh> {
    const F: &str = "obj";
    let mut mesh = TriMesh::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.split_first() {
            None => {}
            Some((tag, _)) if tag.starts_with('#') => {}
            Some((&"v", rest)) => mesh.vertices.push(parse_vec3(F, line, rest)?),
            Some((&"vn", rest)) => mesh.normals.push(parse_vec3(F, line, rest)?),
            Some((&"f", rest)) => {
                if rest.len() != 3 {
                    return Err(format_error(F, line, "only triangles are supported"));
                }
                let mut face = [0usize; 3];
                for (slot, item) in face.iter_mut().zip(rest) {
                    let index = item.split('/').next().unwrap_or_default();
                    let one_based: usize = index
                        .parse()
                        .map_err(|_| format_error(F, line, format!("bad index `{item}`")))?;
                    if one_based == 0 {
                        return Err(format_error(F, line, "indices are 1-based"));
                    }
                    *slot = one_based - 1;
                }
                mesh.faces.push(face);
            }
            Some((tag, _)) => {
                return Err(format_error(F, line, format!("unsupported record `{tag}`")))
            }
        }
    }
    mesh.check()?;
    Ok(mesh)
}

/// Reads back what [`write_ply`] produces.
pub fn parse_ply(text: &str) -> Result<TriMesh> {
    const F: &str = "ply";
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    for want in ["ply", "format ascii 1.0"] {
        match lines.next() {
            Some((_, l)) if l == want => {}
            Some((n, l)) => {
                return Err(format_error(
                    F,
                    n,
                    format!("expected `{want}`, found `{l}`"),
                ))
            }
            None => return Err(format_error(F, 0, format!("missing `{want}`"))),
        }
    }
    let (mut nv, mut nf) = (None, None);
    for (n, l) in lines.by_ref() {
        if l == "end_header" {
            break;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        if let ["element", kind, count] = fields[..] {
            let count: usize = count
                .parse()
                .map_err(|_| format_error(F, n, format!("bad count `{count}`")))?;
            match kind {
                "vertex" => nv = Some(count),
                "face" => nf = Some(count),
                other => return Err(format_error(F, n, format!("unsupported element `{other}`"))),
            }
        }
    }
    let (nv, nf) = (
        nv.ok_or(format_error(F, 0, "no vertex element"))?,
        nf.ok_or(format_error(F, 0, "no face element"))?,
    );
    let mut mesh = TriMesh::default();
    for _ in 0..nv {
        let (n, l) = lines
            .next()
            .ok_or(format_error(F, 0, "missing vertex records"))?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(format_error(
                F,
                n,
                format!("expected 6 values, found {}", fields.len()),
            ));
        }
        mesh.vertices.push(parse_vec3(F, n, &fields[..3])?);
        mesh.normals.push(parse_vec3(F, n, &fields[3..])?);
    }
    for _ in 0..nf {
        let (n, l) = lines
            .next()
            .ok_or(format_error(F, 0, "missing face records"))?;
        let idx: Vec<usize> = l
            .split_whitespace()
            .map(|s| {
                s.parse()
                    .map_err(|_| format_error(F, n, format!("bad index `{s}`")))
            })
            .collect::<Result<_>>()?;
        match idx[..] {
            [3, a, b, c] => mesh.faces.push([a, b, c]),
            _ => return Err(format_error(F, n, "expected `3 a b c`")),
        }
    }
    mesh.check()?;
    Ok(mesh)
}
