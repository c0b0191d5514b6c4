use crate::error::{Error, Result};
use crate::geometry;
use crate::rat::{Rat, RatVec};

use super::{Simplex, SimplicialComplex, VertexId};

/// How much validation `make_complex` performs.
///
/// `Structural` checks indices and canonical form only. `Geometric` also
/// rejects affinely dependent simplices. `Full` additionally proves, by an
/// exact feasibility test on every candidate pair, that simplices intersect
/// only along shared faces. `Full` is quadratic and meant for inputs that do
/// not come from a constructor that guarantees the gluing property.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Validation {
    Structural,
    Geometric,
    Full,
}

/// Builds a complex in canonical form from arbitrary input order.
///
/// Vertices are sorted by coordinates and simplices renumbered accordingly;
/// simplices contained in other simplices are dropped so that only maximal
/// faces remain.
pub fn make_complex(
    points: Vec<RatVec>,
    simplices: Vec<Vec<VertexId>>,
    level: Validation,
) -> Result<SimplicialComplex> {
    if points.is_empty() {
        return Err(Error::NotAComplex("no vertices".into()));
    }
    let ambient_dim = points[0].dim();
    if points.iter().any(|p| p.dim() != ambient_dim) {
        return Err(Error::NotAComplex(
            "vertices have mixed ambient dimensions".into(),
        ));
    }

    // Sort points, remember where each input index went.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(Error::DuplicateVertexCoordinates(w[0], w[1]));
        }
    }
    let mut renumber = vec![0 as VertexId; points.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new as VertexId;
    }
    let vertices: Vec<RatVec> = order.iter().map(|&i| points[i].clone()).collect();

    let mut tops: Vec<Simplex> = Vec::with_capacity(simplices.len());
    for ids in simplices {
        for &v in &ids {
            if v as usize >= vertices.len() {
                return Err(Error::IndexOutOfRange(
                    v as usize,
                    format!("vertex table has {} entries", vertices.len()),
                ));
            }
        }
        tops.push(Simplex::new(
            ids.iter().map(|&v| renumber[v as usize]).collect(),
        )?);
    }
    if tops.is_empty() {
        return Err(Error::NotAComplex("no simplices".into()));
    }
    tops.sort_unstable();
    tops.dedup();
    // Keep only maximal simplices. Sorting by decreasing size makes every
    // potential container precede its faces.
    let mut by_size: Vec<Simplex> = tops.clone();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.vertices().len()));
    let mut maximal: Vec<Simplex> = Vec::with_capacity(by_size.len());
    // Only strictly larger simplices can contain `s`; they form a prefix of
    // `maximal` because insertion order is by decreasing size.
    let mut larger_end = 0;
    for s in by_size {
        while larger_end < maximal.len()
            && maximal[larger_end].vertices().len() > s.vertices().len()
        {
            larger_end += 1;
        }
        if !maximal[..larger_end].iter().any(|t| t.contains(&s)) {
            maximal.push(s);
        }
    }
    maximal.sort_unstable();

    let complex = SimplicialComplex::from_canonical_parts(ambient_dim, vertices, maximal);
    if level != Validation::Structural {
        validate_geometry(&complex)?;
    }
    if level == Validation::Full {
        validate_gluing(&complex)?;
    }
    Ok(complex)
}

fn validate_geometry(complex: &SimplicialComplex) -> Result<()> {
    for t in complex.tops() {
        let pts = complex.simplex_points(t);
        if !geometry::affinely_independent(&pts) {
            return Err(Error::DegenerateSimplex(t.vertices().to_vec()));
        }
    }
    Ok(())
}

/// Past this many top simplices the gluing check caps the number of
/// box-sharing partners examined per simplex instead of checking them all.
const FULL_PAIRWISE_LIMIT: usize = 100_000;
const PAIR_SAMPLE_CAP: usize = 128;

/// Checks pairs of top simplices with overlapping bounding boxes for an
/// intersection larger than the simplex spanned by their shared vertices.
///
/// Tops are swept in order of bounding-box minimum, so the scan for partners
/// of a simplex stops as soon as a later box starts past its end in the
/// first coordinate. Below `FULL_PAIRWISE_LIMIT` every box-sharing pair is
/// tested; above it each simplex tests at most `PAIR_SAMPLE_CAP` partners.
fn validate_gluing(complex: &SimplicialComplex) -> Result<()> {
    use rayon::prelude::*;
    let tops = complex.tops();
    let boxes: Vec<(Vec<Rat>, Vec<Rat>)> = tops
        .iter()
        .map(|t| bounding_box(&complex.simplex_points(t)))
        .collect();
    let mut order: Vec<u32> = (0..tops.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| boxes[a as usize].0.cmp(&boxes[b as usize].0));
    let cap = if tops.len() <= FULL_PAIRWISE_LIMIT {
        usize::MAX
    } else {
        PAIR_SAMPLE_CAP
    };
    let bad = (0..order.len())
        .into_par_iter()
        .find_map_any(|oi| {
            let i = order[oi] as usize;
            let a = complex.simplex_points(&tops[i]);
            let mut candidates = 0usize;
            for &jid in &order[oi + 1..] {
                let j = jid as usize;
                // Later boxes have lexicographically larger minima, so once
                // one starts past this box in the first coordinate they all do.
                if boxes[j].0[0] > boxes[i].1[0] {
                    break;
                }
                if !boxes_touch(&boxes[i], &boxes[j]) {
                    continue;
                }
                candidates += 1;
                if candidates > cap {
                    break;
                }
                let b = complex.simplex_points(&tops[j]);
                if geometry::improper_intersection(&a, &b) {
                    return Some((i, j));
                }
            }
            None
        });
    if let Some((i, j)) = bad {
        return Err(Error::NotAComplex(format!(
            "simplices {:?} and {:?} intersect outside their shared face",
            tops[i], tops[j]
        )));
    }
    Ok(())
}

fn bounding_box(points: &[RatVec]) -> (Vec<Rat>, Vec<Rat>) {
    let dim = points[0].dim();
    let mut lo = points[0].0.clone();
    let mut hi = points[0].0.clone();
    for p in &points[1..] {
        for c in 0..dim {
            if p.0[c] < lo[c] {
                lo[c] = p.0[c];
            }
            if p.0[c] > hi[c] {
                hi[c] = p.0[c];
            }
        }
    }
    (lo, hi)
}

fn boxes_touch(a: &(Vec<Rat>, Vec<Rat>), b: &(Vec<Rat>, Vec<Rat>)) -> bool {
    a.0.iter()
        .zip(&b.1)
        .all(|(lo, hi)| lo <= hi)
        && b.0.iter().zip(&a.1).all(|(lo, hi)| lo <= hi)
}
