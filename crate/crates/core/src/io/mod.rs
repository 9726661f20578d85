//! OFF and OBJ export, OFF import.

mod decimal;

pub use decimal::{format_dyadic, format_rational, parse_decimal, DecimalRounding};

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::mesh::{MeshError, Polyhedron};
use crate::scalar::{EvalError, Real};
use crate::vector::Vec3;

/// Coordinates are written as midpoints of enclosures at this precision.
pub const EXPORT_PRECISION: u32 = 128;

pub const MIN_DIGITS: usize = 6;
pub const MAX_DIGITS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelFormat {
    Off,
    Obj,
}

impl ModelFormat {
    /// From a file name's extension.
    pub fn from_path(path: &std::path::Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "off" => Some(ModelFormat::Off),
            "obj" => Some(ModelFormat::Obj),
            _ => None,
        }
    }
}

impl FromStr for ModelFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(ModelFormat::Off),
            "obj" => Ok(ModelFormat::Obj),
            other => Err(format!("unknown model format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("digits must be in [{MIN_DIGITS}, {MAX_DIGITS}], got {0}")]
    Digits(usize),
    #[error("vertex {vertex}: {source}")]
    Coordinate { vertex: usize, source: EvalError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OffError {
    #[error("missing or malformed OFF header")]
    MalformedHeader,
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("face {face} references vertex {index}, but there are {count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        count: usize,
    },
    #[error("line {line}: cannot parse `{token}`")]
    BadToken { line: usize, token: String },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

fn coordinate(x: &Real, digits: usize) -> Result<String, EvalError> {
    let iv = x.eval(EXPORT_PRECISION)?;
    Ok(format_dyadic(&iv.midpoint(), digits, DecimalRounding::Nearest))
}

/// Serialize `mesh`; output is LF-terminated and deterministic.
pub fn export_model(mesh: &Polyhedron, format: ModelFormat, digits: usize) -> Result<Vec<u8>, ExportError> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        return Err(ExportError::Digits(digits));
    }
    let mut out = String::new();
    let coords = mesh
        .vertices()
        .iter()
        .enumerate()
        .map(|(vertex, v)| {
            v.0.iter()
                .map(|c| coordinate(c, digits))
                .collect::<Result<Vec<_>, _>>()
                .map(|cs| cs.join(" "))
                .map_err(|source| ExportError::Coordinate { vertex, source })
        })
        .collect::<Result<Vec<String>, _>>()?;
    match format {
        ModelFormat::Off => {
            out.push_str("OFF\n");
            let _ = writeln!(out, "{} {} {}", mesh.vertex_count(), mesh.face_count(), mesh.edge_count());
            for c in &coords {
                out.push_str(c);
                out.push('\n');
            }
            for f in mesh.faces() {
                let _ = write!(out, "{}", f.len());
                for i in f {
                    let _ = write!(out, " {i}");
                }
                out.push('\n');
            }
        }
        ModelFormat::Obj => {
            for c in &coords {
                let _ = writeln!(out, "v {c}");
            }
            for f in mesh.faces() {
                out.push('f');
                for i in f {
                    let _ = write!(out, " {}", i + 1);
                }
                out.push('\n');
            }
        }
    }
    Ok(out.into_bytes())
}

/// Read an OFF file. Coordinates are kept as the exact decimals written.
/// A nonzero edge count in the header must match the faces.
pub fn parse_off(bytes: &[u8]) -> Result<Polyhedron, OffError> {
    let text = std::str::from_utf8(bytes).map_err(|_| OffError::MalformedHeader)?;
    // (line number, tokens) with comments and blank lines removed
    let mut lines = text.lines().enumerate().filter_map(|(n, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (n + 1, l.split_whitespace().collect::<Vec<_>>()))
    });

    let (_, header) = lines.next().ok_or(OffError::MalformedHeader)?;
    if header[0] != "OFF" {
        return Err(OffError::MalformedHeader);
    }
    // counts may share the header line
    let counts = if header.len() > 1 {
        header[1..].to_vec()
    } else {
        lines.next().ok_or(OffError::MalformedHeader)?.1
    };
    if counts.len() != 3 {
        return Err(OffError::MalformedHeader);
    }
    let parse_count = |t: &str| t.parse::<usize>().map_err(|_| OffError::MalformedHeader);
    let (nv, nf, ne) = (parse_count(counts[0])?, parse_count(counts[1])?, parse_count(counts[2])?);

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| OffError::CountMismatch(format!("expected {nv} vertices, found {}", vertices.len())))?;
        if toks.len() < 3 {
            return Err(OffError::BadToken {
                line,
                token: toks.join(" "),
            });
        }
        let mut xyz = Vec::with_capacity(3);
        for t in &toks[..3] {
            let r = parse_decimal(t).ok_or_else(|| OffError::BadToken {
                line,
                token: (*t).to_owned(),
            })?;
            xyz.push(Real::from_rational(r));
        }
        let [x, y, z]: [Real; 3] = xyz.try_into().expect("three coordinates");
        vertices.push(Vec3::new(x, y, z));
    }

    let mut faces = Vec::with_capacity(nf);
    for f in 0..nf {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| OffError::CountMismatch(format!("expected {nf} faces, found {f}")))?;
        let bad = |t: &str| OffError::BadToken {
            line,
            token: t.to_owned(),
        };
        let n: usize = toks[0].parse().map_err(|_| bad(toks[0]))?;
        if toks.len() < n + 1 {
            return Err(OffError::CountMismatch(format!(
                "face {f} declares {n} vertices but lists {}",
                toks.len() - 1
            )));
        }
        let mut face = Vec::with_capacity(n);
        for t in &toks[1..=n] {
            let index: usize = t.parse().map_err(|_| bad(t))?;
            if index >= nv {
                return Err(OffError::IndexOutOfRange { face: f, index, count: nv });
            }
            face.push(index);
        }
        faces.push(face);
    }
    if let Some((line, _)) = lines.next() {
        return Err(OffError::CountMismatch(format!("unexpected data on line {line}")));
    }
    let mesh = Polyhedron::new(vertices, faces)?;
    if ne != 0 && ne != mesh.edge_count() {
        return Err(OffError::CountMismatch(format!(
            "header says {ne} edges, faces have {}",
            mesh.edge_count()
        )));
    }
    Ok(mesh)
}
