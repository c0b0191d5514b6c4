//! Skeleton neighborhoods in the subdivided quotient and the hypersurface
//! they share as boundary.
//!
//! In the subdivision, a top simplex is a full flag of faces of a quotient
//! top. The simplicial neighborhood of a skeleton is just the set of flags
//! whose minimal face lies in it, which vertex flags decide in constant
//! time. The hypersurface between the two neighborhoods arises in two
//! independent ways, as the common boundary and by a direct predicate on
//! flags, and the pipeline checks the two agree.

use rayon::prelude::*;

use crate::algebra::{verify_cocycle, Cochain, Ring};
use crate::complex::{
    compact_fits, extract_subcomplex, pack_id_subset, pack_subset_compact, unpack_compact,
    verify_closed_pseudomanifold, PackedFace, Simplex, SimplicialComplex, Subcomplex, VertexId,
};
use crate::error::{Error, Result};
use crate::lattice::quotient::canonical_key;
use crate::lattice::{
    subdivide_quotient, verify_fullness, GroupKind, QuotientComplex, Skeleton,
    SubdividedQuotient, TopLifts,
};
use crate::rat::{barycenter, RatVec};

/// Both skeleton neighborhoods inside one subdivided quotient, stored as a
/// side bitmask per subdivided top (bit 1: touches the integral skeleton,
/// bit 2: the shifted one). The member lists would double the size of the
/// complex, and every consumer only needs the bits.
pub struct NeighborhoodPair {
    pub sub: SubdividedQuotient,
    side: Vec<u8>,
}

fn side_bit(which: Skeleton) -> u8 {
    match which {
        Skeleton::Integral => 1,
        Skeleton::Shifted => 2,
    }
}

impl NeighborhoodPair {
    /// Neighborhood membership bits, aligned with the subdivided tops.
    pub fn side_bits(&self) -> &[u8] {
        &self.side
    }

    pub fn tops_on(&self, which: Skeleton) -> usize {
        let bit = side_bit(which);
        self.side.iter().filter(|&&s| s & bit != 0).count()
    }

    /// One neighborhood materialized as a subcomplex of the subdivision.
    pub fn neighborhood(&self, which: Skeleton) -> Subcomplex {
        let bit = side_bit(which);
        let tops: Vec<Simplex> = self
            .sub
            .complex
            .tops()
            .iter()
            .zip(&self.side)
            .filter(|(_, &s)| s & bit != 0)
            .map(|(t, _)| t.clone())
            .collect();
        Subcomplex::from_maximal_unchecked(tops)
    }
}

/// A closed codimension-one complex cut out of a subdivided quotient.
pub struct Hypersurface {
    pub complex: SimplicialComplex,
    /// Subdivided-quotient vertex behind each vertex; strictly increasing.
    pub vertex_to_parent: Vec<VertexId>,
    /// The same tops as a subcomplex of the subdivided quotient.
    pub inclusion: Subcomplex,
    pub lifts: Option<TopLifts>,
}

/// Subdivides the quotient and takes the simplicial neighborhood of each
/// skeleton. The skeletons only descend when all generators are integral,
/// and each must be a full subcomplex for the neighborhood to deformation
/// retract onto it.
pub fn build_neighborhoods(q: &QuotientComplex, with_lifts: bool) -> Result<NeighborhoodPair> {
    for which in [Skeleton::Integral, Skeleton::Shifted] {
        if !verify_fullness(q, which)? {
            return Err(Error::SkeletonNotFull(format!(
                "{:?} skeleton is not a full subcomplex",
                which
            )));
        }
    }
    let sub = subdivide_quotient(q, with_lifts)?;
    // A top touches a skeleton exactly when some vertex barycenter of a
    // face inside it is flagged, so the simplicial neighborhood of the
    // subdivided skeleton is decided one flag at a time.
    let side: Vec<u8> = sub
        .complex
        .tops()
        .par_iter()
        .map(|t| {
            let mut s = 0u8;
            for &v in t.vertices() {
                if sub.in_skel[v as usize] {
                    s |= 1;
                }
                if sub.in_shifted[v as usize] {
                    s |= 2;
                }
            }
            s
        })
        .collect();
    Ok(NeighborhoodPair { sub, side })
}

/// True when the two neighborhoods together contain every top.
pub fn verify_coverage(pair: &NeighborhoodPair) -> bool {
    pair.side.iter().all(|&s| s != 0)
}

/// The hypersurface as the common boundary of the two neighborhoods: the
/// closure of the facets whose two cofaces lie on opposite sides. Errors
/// when some facet bounds one neighborhood but not the other.
pub fn extract_hypersurface(pair: &NeighborhoodPair) -> Result<Hypersurface> {
    let members = boundary_between_sides(&pair.sub.complex, &pair.side)?;
    finish_hypersurface(&pair.sub, Subcomplex::from_maximal_unchecked(members))
}

/// One linear scan over all facets, tagged by the side of the emitting top.
/// A facet belongs to a neighborhood's boundary exactly when it lies in one
/// member top of that side, so per-facet tag counts decide everything.
fn boundary_between_sides(parent: &SimplicialComplex, side: &[u8]) -> Result<Vec<Simplex>> {
    let d = parent.dim();
    debug_assert!(parent.is_pure());
    let full = (1u32 << (d + 1)) - 1;
    let mut members: Vec<Simplex> = Vec::new();
    let mut uneven = 0usize;
    if compact_fits(parent.num_vertices(), d, 2) {
        let mut entries: Vec<u128> = parent
            .tops()
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, t)| {
                let tag = side[i] as u128;
                (0..=d).map(move |j| {
                    (pack_subset_compact(t.vertices(), full & !(1 << j)) << 2) | tag
                })
            })
            .collect();
        entries.par_sort_unstable();
        let mut i = 0;
        while i < entries.len() {
            let key = entries[i] >> 2;
            let (mut c1, mut c2) = (0u32, 0u32);
            let mut j = i;
            while j < entries.len() && entries[j] >> 2 == key {
                c1 += (entries[j] & 1) as u32;
                c2 += ((entries[j] >> 1) & 1) as u32;
                j += 1;
            }
            match (c1 == 1, c2 == 1) {
                (true, true) => members.push(unpack_compact(key, d)),
                (true, false) | (false, true) => uneven += 1,
                (false, false) => {}
            }
            i = j;
        }
    } else {
        let mut entries: Vec<(PackedFace, u8)> = parent
            .tops()
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, t)| {
                let tag = side[i];
                (0..=d).map(move |j| (pack_id_subset(t.vertices(), full & !(1 << j)), tag))
            })
            .collect();
        entries.par_sort_unstable();
        let mut i = 0;
        while i < entries.len() {
            let key = entries[i].0;
            let (mut c1, mut c2) = (0u32, 0u32);
            let mut j = i;
            while j < entries.len() && entries[j].0 == key {
                c1 += (entries[j].1 & 1) as u32;
                c2 += ((entries[j].1 >> 1) & 1) as u32;
                j += 1;
            }
            match (c1 == 1, c2 == 1) {
                (true, true) => members.push(crate::complex::unpack_face(key, d)),
                (true, false) | (false, true) => uneven += 1,
                (false, false) => {}
            }
            i = j;
        }
    }
    if uneven > 0 {
        return Err(Error::BoundariesDiffer(format!(
            "{} facets bound one neighborhood but not the other",
            uneven
        )));
    }
    Ok(members)
}

/// Member tops of the hypersurface read off one flag at a time: the facet
/// opposite the grid vertex, for flags whose edge barycenter lies in
/// neither skeleton. Meaningful for both lattices, since "in neither
/// skeleton" is preserved even by the mixing translation.
pub fn direct_hypersurface_members(sub: &SubdividedQuotient) -> Vec<Simplex> {
    let mut members: Vec<Simplex> = sub
        .complex
        .tops()
        .par_iter()
        .filter_map(|t| {
            let mut grid_pos = None;
            let mut edge_vertex = None;
            for (pos, &v) in t.vertices().iter().enumerate() {
                match sub.origin_dim[v as usize] {
                    0 => grid_pos = Some(pos),
                    1 => edge_vertex = Some(v),
                    _ => {}
                }
            }
            let grid_pos = grid_pos.expect("every flag starts at a grid vertex");
            let ev = edge_vertex.expect("every flag passes an edge") as usize;
            (!sub.in_skel[ev] && !sub.in_shifted[ev]).then(|| t.facet(grid_pos))
        })
        .collect();
    members.par_sort_unstable();
    members.dedup();
    members
}

/// The flag-predicate hypersurface as a standalone complex.
pub fn direct_hypersurface(sub: &SubdividedQuotient) -> Result<Hypersurface> {
    let members = direct_hypersurface_members(sub);
    finish_hypersurface(sub, Subcomplex::from_maximal_unchecked(members))
}

fn finish_hypersurface(sub: &SubdividedQuotient, inclusion: Subcomplex) -> Result<Hypersurface> {
    let dim = sub.complex.dim() - 1;
    let ext = extract_subcomplex(&sub.complex, &inclusion);
    let report = verify_closed_pseudomanifold(&ext.complex, dim)?;
    if report.bad_ridge_count != 0 {
        return Err(Error::NotPseudomanifold(format!(
            "{} ridges fail to have exactly two cofaces",
            report.bad_ridge_count
        )));
    }
    let lifts = match &sub.lifts {
        None => None,
        Some(tl) => Some(restrict_lifts(sub, tl, &inclusion)?),
    };
    Ok(Hypersurface {
        complex: ext.complex,
        vertex_to_parent: ext.vertex_to_parent,
        inclusion,
        lifts,
    })
}

/// Lift corrections for the hypersurface tops, taken from any parent flag
/// containing each one. Correction differences within a top are the same in
/// every containing parent, so the choice does not matter.
fn restrict_lifts(
    sub: &SubdividedQuotient,
    tl: &TopLifts,
    inclusion: &Subcomplex,
) -> Result<TopLifts> {
    let n = tl.basis.ambient_dim();
    let m = inclusion.tops().len();
    let mut corrections: Vec<Option<Box<[i16]>>> = vec![None; m];
    let mut found = vec![false; m];
    for (pi, pt) in sub.complex.tops().iter().enumerate() {
        for pos in 0..=pt.dim() {
            let f = pt.facet(pos);
            if let Ok(bi) = inclusion.tops().binary_search(&f) {
                if found[bi] {
                    continue;
                }
                found[bi] = true;
                if let Some(rows) = &tl.corrections[pi] {
                    let mut out = Vec::with_capacity(pt.dim() * n);
                    for r in 0..=pt.dim() {
                        if r != pos {
                            out.extend_from_slice(&rows[r * n..(r + 1) * n]);
                        }
                    }
                    if out.iter().any(|&c| c != 0) {
                        corrections[bi] = Some(out.into_boxed_slice());
                    }
                }
            }
        }
    }
    if let Some(missing) = found.iter().position(|&f| !f) {
        return Err(Error::SimplexNotInComplex(
            inclusion.tops()[missing].vertices().to_vec(),
        ));
    }
    Ok(TopLifts {
        basis: tl.basis.clone(),
        corrections,
    })
}

/// Outcome of the intersection verification, with the face counts of the
/// hypersurface gathered along the way (its f-vector when the check holds).
pub struct IntersectionReport {
    pub matches: bool,
    pub x_face_counts: Vec<usize>,
}

/// Per-pass memory target for the face scans below.
const SCAN_TARGET_BYTES: usize = 384 << 20;

fn bucket_count(entries: usize, entry_bytes: usize) -> usize {
    (entries * entry_bytes).div_ceil(SCAN_TARGET_BYTES).max(1)
}

fn bucket_of_u128(key: u128, buckets: usize) -> usize {
    let fold = (key as u64) ^ ((key >> 64) as u64);
    ((fold.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 32) % buckets as u64) as usize
}

fn bucket_of_packed(key: PackedFace, buckets: usize) -> usize {
    let fold = (key.0 as u64)
        ^ ((key.0 >> 64) as u64)
        ^ (key.1 as u64).rotate_left(17)
        ^ ((key.1 >> 64) as u64).rotate_left(31);
    ((fold.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 32) % buckets as u64) as usize
}

fn masks_of_size(bits: usize, size: usize) -> Vec<u32> {
    (1u32..(1 << bits))
        .filter(|m| m.count_ones() as usize == size)
        .collect()
}

/// Checks that the hypersurface is exactly the intersection of the two
/// neighborhood closures, dimension by dimension: a face of the subdivision
/// lies in tops of both sides exactly when it is a face of the hypersurface,
/// and each hypersurface top has one coface on each side. Faces are streamed
/// in hash buckets so no dimension's full face catalogue is ever in memory.
pub fn verify_intersection_is_hypersurface(
    pair: &NeighborhoodPair,
    x: &Hypersurface,
) -> Result<IntersectionReport> {
    let parent = &pair.sub.complex;
    let side = pair.side_bits();
    let xtops = x.inclusion.tops();
    let top_dim = parent.dim();
    let mut matches = true;
    let mut x_face_counts = vec![0usize; top_dim];

    // Dimension zero by direct indexing: vertex side bits against
    // hypersurface membership.
    let nv = parent.num_vertices();
    let mut vbits = vec![0u8; nv];
    for (i, t) in parent.tops().iter().enumerate() {
        if side[i] == 0 {
            continue;
        }
        for &v in t.vertices() {
            vbits[v as usize] |= side[i];
        }
    }
    let mut in_x = vec![false; nv];
    for t in xtops {
        for &v in t.vertices() {
            in_x[v as usize] = true;
        }
    }
    for v in 0..nv {
        if in_x[v] {
            x_face_counts[0] += 1;
        }
        if (vbits[v] & 3 == 3) != in_x[v] {
            matches = false;
        }
    }
    drop(vbits);
    drop(in_x);

    // Positive dimensions: tagged faces of sided tops (bits 1, 2) merged
    // with hypersurface faces (bit 4); every key run must satisfy
    // "on both sides iff in the hypersurface". At the facet layer the run
    // additionally shows the two cofaces of each hypersurface top, which
    // must be one per side.
    for d in 1..top_dim {
        let p_masks = masks_of_size(top_dim + 1, d + 1);
        let x_masks = masks_of_size(top_dim, d + 1);
        let estimate = parent.tops().len() * p_masks.len() + xtops.len() * x_masks.len();
        let coface_layer = d == top_dim - 1;
        if compact_fits(nv, d + 1, 3) {
            let buckets = bucket_count(estimate, 16);
            for b in 0..buckets {
                let mut entries: Vec<u128> = parent
                    .tops()
                    .par_iter()
                    .enumerate()
                    .filter(|(i, _)| side[*i] != 0)
                    .flat_map_iter(|(i, t)| {
                        let tag = side[i] as u128;
                        p_masks.iter().filter_map(move |&m| {
                            let key = pack_subset_compact(t.vertices(), m);
                            (bucket_of_u128(key, buckets) == b).then(|| (key << 3) | tag)
                        })
                    })
                    .collect();
                let x_entries: Vec<u128> = xtops
                    .par_iter()
                    .flat_map_iter(|t| {
                        x_masks.iter().filter_map(move |&m| {
                            let key = pack_subset_compact(t.vertices(), m);
                            (bucket_of_u128(key, buckets) == b).then_some((key << 3) | 4)
                        })
                    })
                    .collect();
                entries.extend_from_slice(&x_entries);
                drop(x_entries);
                entries.par_sort_unstable();
                let mut i = 0;
                while i < entries.len() {
                    let key = entries[i] >> 3;
                    let mut or = 0u8;
                    let (mut c1, mut c2) = (0u32, 0u32);
                    let mut j = i;
                    while j < entries.len() && entries[j] >> 3 == key {
                        let tag = (entries[j] & 7) as u8;
                        or |= tag;
                        c1 += (tag & 1) as u32;
                        c2 += ((tag >> 1) & 1) as u32;
                        j += 1;
                    }
                    let in_x = or & 4 != 0;
                    if in_x {
                        x_face_counts[d] += 1;
                    }
                    if (or & 3 == 3) != in_x || (coface_layer && in_x && !(c1 == 1 && c2 == 1)) {
                        matches = false;
                    }
                    i = j;
                }
            }
        } else {
            let buckets = bucket_count(estimate, 48);
            for b in 0..buckets {
                let mut entries: Vec<(PackedFace, u8)> = parent
                    .tops()
                    .par_iter()
                    .enumerate()
                    .filter(|(i, _)| side[*i] != 0)
                    .flat_map_iter(|(i, t)| {
                        let tag = side[i];
                        p_masks.iter().filter_map(move |&m| {
                            let key = pack_id_subset(t.vertices(), m);
                            (bucket_of_packed(key, buckets) == b).then_some((key, tag))
                        })
                    })
                    .collect();
                let x_entries: Vec<(PackedFace, u8)> = xtops
                    .par_iter()
                    .flat_map_iter(|t| {
                        x_masks.iter().filter_map(move |&m| {
                            let key = pack_id_subset(t.vertices(), m);
                            (bucket_of_packed(key, buckets) == b).then_some((key, 4))
                        })
                    })
                    .collect();
                entries.extend_from_slice(&x_entries);
                drop(x_entries);
                entries.par_sort_unstable();
                let mut i = 0;
                while i < entries.len() {
                    let key = entries[i].0;
                    let mut or = 0u8;
                    let (mut c1, mut c2) = (0u32, 0u32);
                    let mut j = i;
                    while j < entries.len() && entries[j].0 == key {
                        let tag = entries[j].1;
                        or |= tag;
                        c1 += (tag & 1) as u32;
                        c2 += ((tag >> 1) & 1) as u32;
                        j += 1;
                    }
                    let in_x = or & 4 != 0;
                    if in_x {
                        x_face_counts[d] += 1;
                    }
                    if (or & 3 == 3) != in_x || (coface_layer && in_x && !(c1 == 1 && c2 == 1)) {
                        matches = false;
                    }
                    i = j;
                }
            }
        }
    }
    Ok(IntersectionReport {
        matches,
        x_face_counts,
    })
}

/// Flag-level structure along every subdivided top: the faces lying in a
/// skeleton form a prefix of the flag, the two prefixes exclude each other,
/// the grid vertex lies in exactly one skeleton, and membership in a
/// neighborhood is decided by the grid vertex alone. Needs flags that mean
/// the same thing on every lift, hence the integral-generator group.
pub fn verify_flag_split(sub: &SubdividedQuotient) -> Result<bool> {
    if sub.params().group != GroupKind::Ghat {
        return Err(Error::ParamMismatch(
            "flag membership is only lattice-invariant with integral generators".into(),
        ));
    }
    let n = sub.complex.dim();
    Ok(sub.complex.tops().par_iter().all(|t| {
        let mut by_dim: Vec<Option<VertexId>> = vec![None; n + 1];
        for &v in t.vertices() {
            let d = sub.origin_dim[v as usize] as usize;
            if by_dim[d].is_some() {
                return false;
            }
            by_dim[d] = Some(v);
        }
        let vs: Vec<VertexId> = match by_dim.into_iter().collect::<Option<Vec<_>>>() {
            Some(vs) => vs,
            None => return false,
        };
        let s: Vec<bool> = vs.iter().map(|&v| sub.in_skel[v as usize]).collect();
        let h: Vec<bool> = vs.iter().map(|&v| sub.in_shifted[v as usize]).collect();
        let prefixes = s.windows(2).all(|w| w[0] || !w[1])
            && h.windows(2).all(|w| w[0] || !w[1]);
        let exclusive = s.iter().zip(&h).all(|(&a, &b)| !(a && b));
        let grid_split = s[0] ^ h[0];
        let membership = (s.iter().any(|&b| b) == !h[0]) && (h.iter().any(|&b| b) == !s[0]);
        prefixes && exclusive && grid_split && membership
    }))
}

/// Vertex and top maps from the subdivision of the index-two quotient down
/// to the subdivision of the full quotient. Every target top is hit exactly
/// twice.
pub struct CoverDescent {
    pub vertex_map: Vec<VertexId>,
    pub top_map: Vec<u32>,
}

pub fn descend_subdivision(
    cover_q: &QuotientComplex,
    cover_sub: &SubdividedQuotient,
    base_sub: &SubdividedQuotient,
) -> Result<CoverDescent> {
    let cp = cover_q.params();
    let bp = base_sub.params();
    if cp.group != GroupKind::Ghat || bp.group != GroupKind::G || cp.k != bp.k || cp.l != bp.l {
        return Err(Error::ParamMismatch(
            "descent runs from the index-two quotient to the full quotient at equal k, L".into(),
        ));
    }
    let n = cover_q.ambient_dim();
    let cover_vertices = cover_sub.complex.vertices();
    let base_vertices = base_sub.complex.vertices();

    let mut vertex_map: Vec<Option<VertexId>> = vec![None; cover_vertices.len()];
    for t in &cover_q.tops {
        for mask in 1u32..(1 << (n + 1)) {
            let pts: Vec<RatVec> = (0..n + 1)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| t.key[i].clone())
                .collect();
            let cover_id = bsearch(cover_vertices, &barycenter(&canonical_key(&cover_sub.basis, &pts)))?;
            let base_id = bsearch(base_vertices, &barycenter(&canonical_key(&base_sub.basis, &pts)))?;
            match vertex_map[cover_id as usize] {
                None => vertex_map[cover_id as usize] = Some(base_id),
                Some(prev) if prev == base_id => {}
                Some(_) => {
                    return Err(Error::ParamMismatch(
                        "descent is not well defined on a vertex".into(),
                    ))
                }
            }
        }
    }
    let vertex_map: Vec<VertexId> = vertex_map
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::ParamMismatch("descent misses a cover vertex".into()))?;

    let base_tops = base_sub.complex.tops();
    let mut hits = vec![0u8; base_tops.len()];
    let top_map: Vec<u32> = cover_sub
        .complex
        .tops()
        .iter()
        .map(|t| {
            let mut ids: Vec<VertexId> =
                t.vertices().iter().map(|&v| vertex_map[v as usize]).collect();
            ids.sort_unstable();
            let s = Simplex::new(ids)?;
            base_tops
                .binary_search(&s)
                .map(|i| i as u32)
                .map_err(|_| Error::SimplexNotInComplex(s.vertices().to_vec()))
        })
        .collect::<Result<_>>()?;
    for &bt in &top_map {
        hits[bt as usize] += 1;
    }
    if hits.iter().any(|&h| h != 2) {
        return Err(Error::ParamMismatch(
            "descent does not hit every base top exactly twice".into(),
        ));
    }
    Ok(CoverDescent {
        vertex_map,
        top_map,
    })
}

fn bsearch(vertices: &[RatVec], p: &RatVec) -> Result<VertexId> {
    vertices
        .binary_search(p)
        .map(|i| i as VertexId)
        .map_err(|_| Error::ParamMismatch("point is not a subdivision vertex".into()))
}

/// Projection of one hypersurface onto another along a subdivision descent:
/// vertex map and top map in the extracted complexes' numbering.
pub fn project_hypersurface(
    descent: &CoverDescent,
    cover_x: &Hypersurface,
    base_x: &Hypersurface,
) -> Result<(Vec<VertexId>, Vec<u32>)> {
    let vertex_map: Vec<VertexId> = cover_x
        .vertex_to_parent
        .iter()
        .map(|&pv| {
            let target = descent.vertex_map[pv as usize];
            base_x
                .vertex_to_parent
                .binary_search(&target)
                .map(|i| i as VertexId)
                .map_err(|_| {
                    Error::ParamMismatch("projected vertex misses the base hypersurface".into())
                })
        })
        .collect::<Result<_>>()?;
    let base_tops = base_x.inclusion.tops();
    let top_map: Vec<u32> = cover_x
        .inclusion
        .tops()
        .iter()
        .map(|t| {
            let mut ids: Vec<VertexId> = t
                .vertices()
                .iter()
                .map(|&v| descent.vertex_map[v as usize])
                .collect();
            ids.sort_unstable();
            let s = Simplex::new(ids)?;
            base_tops
                .binary_search(&s)
                .map(|i| i as u32)
                .map_err(|_| Error::SimplexNotInComplex(s.vertices().to_vec()))
        })
        .collect::<Result<_>>()?;
    Ok((vertex_map, top_map))
}

/// The integer cochain assigning to each edge the drift of lattice
/// coefficient `axis` along it, read from the exact lifts. Always a
/// cocycle: within any single top the drift is a difference of a function
/// of the vertices.
pub fn coordinate_cocycle(
    x: &Hypersurface,
    table: &[Vec<Simplex>],
    axis: usize,
) -> Result<Cochain> {
    let lifts = x
        .lifts
        .as_ref()
        .ok_or_else(|| Error::ParamMismatch("edge drifts need exact lifts".into()))?;
    let n = lifts.basis.ambient_dim();
    if axis == 0 || axis >= n {
        return Err(Error::AxisOutOfRange(axis, n - 1));
    }
    let edges = &table[1];
    let mut values: Vec<Option<i64>> = vec![None; edges.len()];
    for (ti, t) in x.complex.tops().iter().enumerate() {
        let vs = t.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let e = Simplex::from_sorted(vec![vs[i], vs[j]]);
                let idx = edges
                    .binary_search(&e)
                    .expect("edge table is complete");
                if values[idx].is_none() {
                    let ra = lifts.row(ti, i);
                    let rb = lifts.row(ti, j);
                    values[idx] = Some(rb[axis - 1] - ra[axis - 1]);
                }
            }
        }
    }
    let values: Vec<i64> = values
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .expect("every edge lies in a top");
    let c = Cochain::new(1, Ring::Z, values);
    verify_cocycle(table, &c)?;
    Ok(c)
}
