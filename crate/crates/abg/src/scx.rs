//! Plain-text exchange format for simplicial complexes.
//!
//! Layout, UTF-8 with LF newlines: a header `scx 1 <ambient_dim>
//! <num_vertices> <num_tops>`, then one vertex per line as space-separated
//! reduced fractions `p/q` (the denominator is always written, even for
//! integers), then one top simplex per line as space-separated increasing
//! vertex indices. Vertex lines appear in coordinate order and simplex lines
//! in lexicographic order, which is exactly the canonical in-memory form, so
//! writing and re-reading a complex reproduces the bytes.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::complex::{make_complex, SimplicialComplex, Validation, VertexId};
use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

pub fn to_scx_string(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "scx 1 {} {} {}",
        complex.ambient_dim(),
        complex.num_vertices(),
        complex.tops().len()
    )
    .unwrap();
    for v in complex.vertices() {
        for (i, c) in v.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{}", c).unwrap();
        }
        out.push('\n');
    }
    for t in complex.tops() {
        for (i, id) in t.vertices().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{}", id).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn from_scx_str(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::ParseError("empty scx input".into()))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 5 || fields[0] != "scx" {
        return Err(Error::ParseError(format!("bad scx header {:?}", header)));
    }
    if fields[1] != "1" {
        return Err(Error::FormatVersionUnsupported(fields[1].into()));
    }
    let counts: Vec<usize> = fields[2..]
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|e| Error::ParseError(format!("bad header count {:?}: {}", f, e)))
        })
        .collect::<Result<_>>()?;
    let (dim, nv, nt) = (counts[0], counts[1], counts[2]);

    let mut points = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::ParseError("truncated vertex section".into()))?;
        let coords: Vec<Rat> = line
            .split(' ')
            .map(|f| {
                Rat::from_str(f)
                    .map_err(|e| Error::ParseError(format!("line {}: {}", ln + 1, e)))
            })
            .collect::<Result<_>>()?;
        if coords.len() != dim {
            return Err(Error::ParseError(format!(
                "line {}: expected {} coordinates, found {}",
                ln + 1,
                dim,
                coords.len()
            )));
        }
        points.push(RatVec(coords));
    }
    let mut simplices = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::ParseError("truncated simplex section".into()))?;
        let ids: Vec<VertexId> = line
            .split(' ')
            .map(|f| {
                f.parse::<VertexId>()
                    .map_err(|e| Error::ParseError(format!("line {}: {:?}: {}", ln + 1, f, e)))
            })
            .collect::<Result<_>>()?;
        if !ids.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::ParseError(format!(
                "line {}: vertex indices not strictly increasing",
                ln + 1
            )));
        }
        simplices.push(ids);
    }
    if let Some((ln, line)) = lines.next() {
        return Err(Error::ParseError(format!(
            "line {}: trailing content {:?}",
            ln + 1,
            line
        )));
    }
    make_complex(points, simplices, Validation::Structural)
}

pub fn write_scx(path: &Path, complex: &SimplicialComplex) -> Result<()> {
    std::fs::write(path, to_scx_string(complex))?;
    Ok(())
}

pub fn read_scx(path: &Path) -> Result<SimplicialComplex> {
    from_scx_str(&std::fs::read_to_string(path)?)
}
