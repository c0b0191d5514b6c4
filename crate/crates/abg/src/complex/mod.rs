//! Finite simplicial complexes with exact rational vertex coordinates.
//!
//! A complex is stored canonically: the vertex table is sorted
//! lexicographically by coordinates (so a vertex id is the lexicographic rank
//! of its point), and the list of top simplices is sorted and contains only
//! maximal faces. Two complexes are equal as values exactly when they are the
//! same complex.

mod build;
mod ops;
mod subdivide;

pub use build::{make_complex, Validation};
pub use ops::{
    boundary_subcomplex, closures_equal, extract_subcomplex, is_full_subcomplex, link_complex,
    simplicial_neighborhood, star_and_link, subcomplex_intersection_generators,
    subcomplex_tops_equal, vertex_link_report, verify_closed_pseudomanifold, Extraction,
    LinkReport, PseudomanifoldReport,
};
pub use subdivide::{barycentric_subdivision, SubdivisionMap};

use std::fmt;

use crate::error::{Error, Result};
use crate::rat::RatVec;

pub type VertexId = u32;

/// A simplex named by its vertex ids, sorted strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from distinct vertex ids in any order.
    pub fn new(mut ids: Vec<VertexId>) -> Result<Simplex> {
        ids.sort_unstable();
        let distinct = ids.windows(2).all(|w| w[0] < w[1]);
        if ids.is_empty() || !distinct {
            return Err(Error::NotAComplex(format!(
                "simplex vertex list {ids:?} is empty or has repeats"
            )));
        }
        Ok(Simplex(ids))
    }

    /// Internal constructor for ids already sorted and distinct.
    pub(crate) fn from_sorted(ids: Vec<VertexId>) -> Simplex {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]) && !ids.is_empty());
        Simplex(ids)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        // Both sorted: subset test by merge.
        let mut it = self.0.iter();
        other.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The facet opposite vertex position `i`.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut ids = self.0.clone();
        ids.remove(i);
        Simplex(ids)
    }

    /// All faces of dimension `d`, in lexicographic order.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..=d).collect();
        if d + 1 > self.0.len() {
            return out;
        }
        loop {
            out.push(Simplex(idx.iter().map(|&i| self.0[i]).collect()));
            // Next (d+1)-subset of positions in lexicographic order.
            let mut i = d + 1;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + self.0.len() - (d + 1) {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..=d {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

/// A finite geometric simplicial complex in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    vertices: Vec<RatVec>,
    tops: Vec<Simplex>,
}

impl SimplicialComplex {
    pub(crate) fn from_canonical_parts(
        ambient_dim: usize,
        vertices: Vec<RatVec>,
        tops: Vec<Simplex>,
    ) -> SimplicialComplex {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(tops.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(vertices.iter().all(|v| v.dim() == ambient_dim));
        SimplicialComplex {
            ambient_dim,
            vertices,
            tops,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: VertexId) -> &RatVec {
        &self.vertices[id as usize]
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn vertex_id(&self, point: &RatVec) -> Option<VertexId> {
        self.vertices
            .binary_search(point)
            .ok()
            .map(|i| i as VertexId)
    }

    pub fn tops(&self) -> &[Simplex] {
        &self.tops
    }

    /// Dimension of the complex: the largest top dimension.
    pub fn dim(&self) -> usize {
        self.tops.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.tops.iter().all(|t| t.dim() == d)
    }

    /// Coordinates of a simplex's vertices.
    pub fn simplex_points(&self, s: &Simplex) -> Vec<RatVec> {
        s.vertices()
            .iter()
            .map(|&v| self.vertices[v as usize].clone())
            .collect()
    }

    /// True when `s` is a face of some top simplex.
    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.tops.iter().any(|t| t.contains(s))
    }

    /// Number of distinct faces in each dimension, index `d` = dimension `d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self.dim();
        (0..=dim).map(|d| self.count_faces_of_dim(d)).collect()
    }

    /// Distinct `d`-faces across all tops, sorted.
    pub fn all_faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        let mut packed = self.packed_faces(d);
        packed.sort_unstable();
        packed.dedup();
        packed
            .into_iter()
            .map(|key| unpack_face(key, d + 1))
            .collect()
    }

    fn count_faces_of_dim(&self, d: usize) -> usize {
        use rayon::prelude::*;
        let mut packed = self.packed_faces(d);
        packed.par_sort_unstable();
        packed.dedup();
        packed.len()
    }

    fn packed_faces(&self, d: usize) -> Vec<PackedFace> {
        use rayon::prelude::*;
        self.tops
            .par_iter()
            .flat_map_iter(|t| t.faces_of_dim(d).into_iter().map(|f| pack_face(&f)))
            .collect()
    }

    /// Euler characteristic, computed from the f-vector.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Sorted distinct faces per dimension, 0..=dim. The table backing
    /// boundary-map assembly and serialization of small complexes.
    pub fn face_table(&self) -> Vec<Vec<Simplex>> {
        (0..=self.dim())
            .map(|d| self.all_faces_of_dim(d))
            .collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(ambient={}, vertices={}, tops={})",
            self.ambient_dim,
            self.vertices.len(),
            self.tops.len()
        )
    }
}

/// Fixed-width face key: up to 8 vertex ids packed into two u128 words.
/// Lexicographic order on the words matches lexicographic order on the
/// id sequences because ids are packed big-end first and padded with the
/// maximum id (faces of equal dimension only).
pub(crate) type PackedFace = (u128, u128);

pub(crate) fn pack_face(s: &Simplex) -> PackedFace {
    let ids = s.vertices();
    debug_assert!(ids.len() <= 8, "face packing supports up to 8 vertices");
    let mut words = [0u128; 2];
    for slot in 0..8 {
        let v = ids.get(slot).copied().unwrap_or(u32::MAX);
        let w = slot / 4;
        words[w] = (words[w] << 32) | v as u128;
    }
    (words[0], words[1])
}

/// Packs the subset of sorted ids selected by `mask` without allocating.
pub(crate) fn pack_id_subset(ids: &[VertexId], mask: u32) -> PackedFace {
    debug_assert!(ids.len() <= 32);
    let mut words = [0u128; 2];
    let mut slot = 0usize;
    for (i, &v) in ids.iter().enumerate() {
        if mask & (1 << i) != 0 {
            debug_assert!(slot < 8);
            words[slot / 4] = (words[slot / 4] << 32) | v as u128;
            slot += 1;
        }
    }
    for s in slot..8 {
        words[s / 4] = (words[s / 4] << 32) | u32::MAX as u128;
    }
    (words[0], words[1])
}

/// Narrow face key: vertex ids in 21-bit fields of a single u128, big-end
/// first. Numeric order agrees with lexicographic id order for faces of
/// equal arity. Callers reserve `tag_bits` low bits for their own use.
pub(crate) const COMPACT_ID_BITS: u32 = 21;

pub(crate) fn compact_fits(num_vertices: usize, arity: usize, tag_bits: u32) -> bool {
    arity as u32 * COMPACT_ID_BITS + tag_bits <= 128
        && (num_vertices as u128) <= (1u128 << COMPACT_ID_BITS)
}

pub(crate) fn pack_subset_compact(ids: &[VertexId], mask: u32) -> u128 {
    let mut key = 0u128;
    for (i, &v) in ids.iter().enumerate() {
        if mask & (1 << i) != 0 {
            debug_assert!((v as u128) < (1 << COMPACT_ID_BITS));
            key = (key << COMPACT_ID_BITS) | v as u128;
        }
    }
    key
}

pub(crate) fn unpack_compact(mut key: u128, len: usize) -> Simplex {
    let mut ids = vec![0 as VertexId; len];
    for slot in (0..len).rev() {
        ids[slot] = (key & ((1 << COMPACT_ID_BITS) - 1)) as VertexId;
        key >>= COMPACT_ID_BITS;
    }
    Simplex::from_sorted(ids)
}

pub(crate) fn unpack_face(key: PackedFace, len: usize) -> Simplex {
    let words = [key.0, key.1];
    let mut ids = Vec::with_capacity(len);
    for slot in 0..len {
        let w = slot / 4;
        let shift = 32 * (3 - (slot % 4));
        ids.push(((words[w] >> shift) & 0xffff_ffff) as u32);
    }
    Simplex::from_sorted(ids)
}

/// A subcomplex of a parent complex, generated by its maximal member
/// simplices. The subcomplex is the downward closure of `tops`; every member
/// of `tops` must be a face of some top simplex of the parent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subcomplex {
    tops: Vec<Simplex>,
}

impl Subcomplex {
    /// Builds from generators: drops non-maximal entries, sorts, and checks
    /// each generator against the parent complex.
    pub fn new(parent: &SimplicialComplex, mut tops: Vec<Simplex>) -> Result<Subcomplex> {
        tops.sort_unstable();
        tops.dedup();
        for t in &tops {
            if t.vertices()
                .iter()
                .any(|&v| v as usize >= parent.num_vertices())
                || !parent.contains_simplex(t)
            {
                return Err(Error::SimplexNotInComplex(t.vertices().to_vec()));
            }
        }
        Ok(Subcomplex::from_members(tops))
    }

    /// Internal constructor for generators already known to lie in the
    /// parent. Still reduces to maximal members and sorts.
    pub(crate) fn from_members(mut tops: Vec<Simplex>) -> Subcomplex {
        tops.sort_unstable();
        tops.dedup();
        // Only strictly larger simplices can contain another, so visit by
        // decreasing size and test each candidate against the kept prefix
        // of larger ones.
        let mut by_size: Vec<Simplex> = tops;
        by_size.sort_by_key(|s| std::cmp::Reverse(s.vertices().len()));
        let mut maximal: Vec<Simplex> = Vec::with_capacity(by_size.len());
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
        Subcomplex { tops: maximal }
    }

    /// For large member lists known to be distinct, maximal, and sorted.
    pub(crate) fn from_maximal_unchecked(tops: Vec<Simplex>) -> Subcomplex {
        debug_assert!(tops.windows(2).all(|w| w[0] < w[1]));
        Subcomplex { tops }
    }

    pub fn tops(&self) -> &[Simplex] {
        &self.tops
    }

    pub fn is_empty(&self) -> bool {
        self.tops.is_empty()
    }

    /// Sorted distinct vertex ids used by the subcomplex.
    pub fn vertex_ids(&self) -> Vec<VertexId> {
        let mut ids: Vec<VertexId> = self
            .tops
            .iter()
            .flat_map(|t| t.vertices().iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Membership of a simplex in the downward closure.
    pub fn contains(&self, s: &Simplex) -> bool {
        self.tops.iter().any(|t| t.contains(s))
    }

    /// Distinct `d`-faces of the closure, sorted.
    pub fn all_faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        let mut packed: Vec<PackedFace> = self
            .tops
            .iter()
            .flat_map(|t| t.faces_of_dim(d).into_iter().map(|f| pack_face(&f)))
            .collect();
        packed.sort_unstable();
        packed.dedup();
        packed
            .into_iter()
            .map(|key| unpack_face(key, d + 1))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.tops.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim())
            .map(|d| self.all_faces_of_dim(d).len())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_ops() {
        let s = Simplex::new(vec![3, 1, 2]).unwrap();
        assert_eq!(s.vertices(), &[1, 2, 3]);
        assert_eq!(s.dim(), 2);
        assert!(Simplex::new(vec![1, 1]).is_err());
        let edges = s.faces_of_dim(1);
        assert_eq!(
            edges,
            vec![
                Simplex::new(vec![1, 2]).unwrap(),
                Simplex::new(vec![1, 3]).unwrap(),
                Simplex::new(vec![2, 3]).unwrap(),
            ]
        );
        assert!(s.contains(&edges[1]));
        assert_eq!(s.facet(0), Simplex::new(vec![2, 3]).unwrap());
    }

    #[test]
    fn pack_respects_order() {
        let a = Simplex::new(vec![0, 1, 5]).unwrap();
        let b = Simplex::new(vec![0, 2, 3]).unwrap();
        assert!(a < b);
        assert!(pack_face(&a) < pack_face(&b));
        assert_eq!(unpack_face(pack_face(&a), 3), a);
    }
}
