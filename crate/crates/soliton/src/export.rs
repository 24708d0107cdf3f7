//! Byte-deterministic OBJ, CSV and JSON writers.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{AppError, AppResult};
use crate::mesh::SurfaceMesh;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Obj,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Some(Format::Obj),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Obj => "obj",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

fn check(mesh: &SurfaceMesh) -> AppResult<()> {
    if mesh.vertices.len() < 3 {
        return Err(AppError::Mesh(format!("mesh has {} vertices, need at least 3", mesh.vertices.len())));
    }
    Ok(())
}

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn export_obj(mesh: &SurfaceMesh) -> AppResult<Vec<u8>> {
    check(mesh)?;
    let mut s = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(s, "v {} {} {}", num(v.c[0]), num(v.c[1]), num(v.c[2]));
    }
    for f in &mesh.faces {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    Ok(s.into_bytes())
}

/// Rows through the `csv` writer with LF terminators.
pub fn csv_bytes<R: AsRef<[String]>>(header: &[&str], rows: impl IntoIterator<Item = R>) -> AppResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let err = |e: csv::Error| AppError::Mesh(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r.as_ref()).map_err(err)?;
    }
    w.into_inner().map_err(|e| AppError::Mesh(e.to_string()))
}

pub fn export_csv(mesh: &SurfaceMesh) -> AppResult<Vec<u8>> {
    check(mesh)?;
    let rows = mesh.vertices.iter().map(|v| vec![num(v.x), num(v.y), num(v.c[0]), num(v.c[1]), num(v.c[2])]);
    csv_bytes(&["x", "y", "e1", "e2", "e3"], rows)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> AppResult<Vec<u8>> {
    // `Value` maps are ordered, so going through it sorts every object.
    let v = serde_json::to_value(value).map_err(|e| AppError::Mesh(e.to_string()))?;
    let mut out = serde_json::to_vec_pretty(&v).map_err(|e| AppError::Mesh(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

pub fn export_json(mesh: &SurfaceMesh) -> AppResult<Vec<u8>> {
    check(mesh)?;
    to_json(mesh)
}

pub fn export(mesh: &SurfaceMesh, format: Format) -> AppResult<Vec<u8>> {
    match format {
        Format::Obj => export_obj(mesh),
        Format::Csv => export_csv(mesh),
        Format::Json => export_json(mesh),
    }
}

pub fn parse_mesh_json(bytes: &[u8]) -> AppResult<SurfaceMesh> {
    serde_json::from_slice(bytes).map_err(|e| AppError::Mesh(e.to_string()))
}

/// Writes to `path`, or to standard output when `path` is `-`.
pub fn write_output(path: &Path, bytes: &[u8]) -> AppResult<()> {
    let io = |source| AppError::Io { path: path.to_path_buf(), source };
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(bytes).map_err(io)?;
        return out.flush().map_err(io);
    }
    std::fs::write(path, bytes).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use crate::mesh::sample_surface;
    use soliton_core::cpn::veronese_chain;
    use soliton_core::immersion::{Family, Options, Surface};

    fn mesh() -> SurfaceMesh {
        let s = Surface::build(&veronese_chain(2).unwrap(), 0, Family::St, Options::default()).unwrap();
        sample_surface(&s, &GridSpec::square(1.0, 3), 0.5).unwrap()
    }

    #[test]
    fn obj_layout() {
        let b = String::from_utf8(export_obj(&mesh()).unwrap()).unwrap();
        let lines: Vec<&str> = b.lines().collect();
        assert_eq!(lines.len(), 17);
        assert!(lines[0].starts_with("v "));
        assert_eq!(lines[9], "f 1 2 5");
        assert!(!b.contains('\r'));
    }

    #[test]
    fn csv_header() {
        let b = String::from_utf8(export_csv(&mesh()).unwrap()).unwrap();
        assert!(b.starts_with("x,y,e1,e2,e3\n"));
        assert_eq!(b.lines().count(), 10);
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let m = mesh();
        let a = export_json(&m).unwrap();
        assert_eq!(parse_mesh_json(&a).unwrap(), m);
        assert_eq!(a, export_json(&m).unwrap());
    }

    #[test]
    fn tiny_mesh_rejected() {
        let mut m = mesh();
        m.vertices.truncate(2);
        assert!(export_obj(&m).is_err() && export_csv(&m).is_err() && export_json(&m).is_err());
    }

    #[test]
    fn io_error_carries_path() {
        let e = write_output(Path::new("/nonexistent/dir/x.obj"), b"x").unwrap_err();
        assert_eq!(e.exit_code(), 4);
        assert!(e.to_string().contains("/nonexistent/dir/x.obj"));
    }
}
