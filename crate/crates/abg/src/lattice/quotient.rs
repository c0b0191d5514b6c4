//! Quotients of the half-integer Kuhn triangulation by a lattice.
//!
//! Space is tiled by half-side cubes with corners on the half-integer grid;
//! each carries the Kuhn triangulation walking between its unique all-integer
//! corner and the opposite all-half-integer corner. A lattice orbit of
//! simplices is named by its canonical key: the sorted lift translated so
//! that its lexicographically smallest point sits at its canonical
//! representative. Keys make every set-level question exact even when the
//! quotient identifies vertices of distinct simplices (which happens at
//! L = 1, where the quotient is a Delta-complex rather than a simplicial
//! complex).

use itertools::Itertools;
use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex, Subcomplex, VertexId};
use crate::error::{Error, Result};
use crate::geometry::simplex_volume;
use crate::rat::{barycenter, Rat, RatVec};

use super::kuhn::cube_top_tuples;
use super::{
    mixing_translation, point_in_skeleton, span_in_skeleton, ConstructionParams, GroupKind,
    LatticeBasis,
};

/// The two codimension-(k+1) skeleta cut out by coordinate integrality.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Skeleton {
    /// Points with at least k+1 integer coordinates.
    Integral,
    /// The translate by (1/2, ..., 1/2): at least k+1 coordinates in Z+1/2.
    Shifted,
}

impl Skeleton {
    pub fn is_shifted(self) -> bool {
        matches!(self, Skeleton::Shifted)
    }
}

/// One lattice orbit of top simplices, named by its canonical lift.
#[derive(Clone, Debug)]
pub struct TopOrbit {
    /// Sorted lift points, translated so key[0] is its own canonical rep.
    pub key: Vec<RatVec>,
    /// Quotient vertex of each key point, aligned with `key`.
    pub vertex_ids: Vec<VertexId>,
}

/// The quotient torus triangulation, stored orbit by orbit.
pub struct QuotientComplex {
    pub basis: LatticeBasis,
    /// Canonical representatives of the half-integer grid, sorted.
    pub vertices: Vec<RatVec>,
    /// Top orbits sorted by key.
    pub tops: Vec<TopOrbit>,
    /// Whether distinct top orbits have distinct vertex sets. False at
    /// L = 1, where the quotient is only a Delta-complex.
    pub faithful: bool,
}

impl QuotientComplex {
    pub fn params(&self) -> ConstructionParams {
        self.basis.params
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ambient_dim()
    }

    /// Distinct face orbits per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let n = self.ambient_dim();
        (0..=n)
            .map(|d| {
                let mut keys: Vec<Box<[i16]>> = self
                    .tops
                    .par_iter()
                    .flat_map_iter(|t| {
                        subsets_of_size(n + 1, d + 1).map(|mask| {
                            encode_key(&canonical_key(&self.basis, &select(&t.key, mask)))
                        })
                    })
                    .collect();
                keys.par_sort_unstable();
                keys.dedup();
                keys.len()
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The quotient as a plain simplicial complex. Only possible when
    /// orbits are determined by their vertex sets.
    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        if !self.faithful {
            return Err(Error::QuotientNotSimplicial(
                "distinct simplex orbits share vertex sets; subdivide instead".into(),
            ));
        }
        let mut tops: Vec<Simplex> = self
            .tops
            .iter()
            .map(|t| {
                let mut ids = t.vertex_ids.clone();
                ids.sort_unstable();
                Simplex::new(ids)
            })
            .collect::<Result<_>>()?;
        tops.sort_unstable();
        Ok(SimplicialComplex::from_canonical_parts(
            self.ambient_dim(),
            self.vertices.clone(),
            tops,
        ))
    }

    /// Exact total volume of all top orbits; equals the covolume exactly
    /// when the orbits tile the torus once.
    pub fn total_volume(&self) -> Rat {
        self.tops
            .par_iter()
            .map(|t| simplex_volume(&t.key))
            .reduce(|| Rat::ZERO, |a, b| a + b)
    }
}

/// Translates sorted `points` so the first lands on its canonical
/// representative. Keys are equal exactly for lattice-equivalent simplices.
pub(crate) fn canonical_key(basis: &LatticeBasis, points: &[RatVec]) -> Vec<RatVec> {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    let s = basis.canonical_rep(&points[0]).sub(&points[0]);
    if s.is_zero() {
        points.to_vec()
    } else {
        points.iter().map(|p| p.add(&s)).collect()
    }
}

/// Compact order-preserving encoding of a key: doubled coordinates, which
/// are integers because every key point lies on the half-integer grid.
pub(crate) fn encode_key(points: &[RatVec]) -> Box<[i16]> {
    let mut out = Vec::with_capacity(points.len() * points[0].dim());
    for p in points {
        for c in &p.0 {
            let twice = *c + *c;
            debug_assert!(twice.is_integral());
            out.push(i16::try_from(twice.numer()).expect("key coordinate out of range"));
        }
    }
    out.into_boxed_slice()
}

fn select(key: &[RatVec], mask: u32) -> Vec<RatVec> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    for (i, p) in key.iter().enumerate() {
        if mask & (1 << i) != 0 {
            out.push(p.clone());
        }
    }
    out
}

fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    (1u32..(1 << n)).filter(move |m| m.count_ones() as usize == size)
}

/// Half-cube origins inside the chart box, on the half-integer grid.
fn chart_half_cube_origins(basis: &LatticeBasis) -> Vec<RatVec> {
    let n = basis.ambient_dim();
    let l = basis.params.l as i128;
    let steps_axis = 2 * l;
    let twice_last = basis.last_period() + basis.last_period();
    debug_assert!(twice_last.is_integral());
    let steps_last = twice_last.numer();
    let mut origins = Vec::new();
    let mut counter = vec![0i128; n];
    loop {
        origins.push(RatVec(
            counter.iter().map(|&i| Rat::new(i, 2)).collect(),
        ));
        let mut pos = 0;
        loop {
            counter[pos] += 1;
            let limit = if pos == n - 1 { steps_last } else { steps_axis };
            if counter[pos] < limit {
                break;
            }
            counter[pos] = 0;
            pos += 1;
            if pos == n {
                return origins;
            }
        }
    }
}

/// The all-integer corner and the opposite all-half-integer corner of the
/// half-cube at `w`.
fn half_cube_diagonal(w: &RatVec) -> (RatVec, RatVec) {
    let mut v = w.clone();
    let mut vp = w.clone();
    for i in 0..w.dim() {
        if w.0[i].is_integral() {
            vp.0[i] = w.0[i] + Rat::HALF;
        } else {
            v.0[i] = w.0[i] + Rat::HALF;
        }
    }
    (v, vp)
}

/// Builds the quotient triangulation: one Kuhn-triangulated half-cube per
/// chart origin, simplices named by canonical keys. Verifies that adjacent
/// half-cube triangulations agree on shared facets, and that no simplex has
/// two lattice-identified vertices.
pub fn triangulate_quotient(params: ConstructionParams) -> Result<QuotientComplex> {
    let basis = LatticeBasis::new(params);
    let n = params.ambient_dim();
    let origins = chart_half_cube_origins(&basis);
    verify_half_cube_gluing(&origins)?;

    let mut keys: Vec<Vec<RatVec>> = origins
        .par_iter()
        .flat_map_iter(|w| {
            let (v, vp) = half_cube_diagonal(w);
            cube_top_tuples(&v, &vp)
                .into_iter()
                .map(|t| canonical_key(&basis, &t))
                .collect::<Vec<_>>()
        })
        .collect();

    // No two vertices of one simplex may be identified in the quotient.
    if let Some(bad) = keys.par_iter().find_map_any(|key| {
        for i in 0..key.len() {
            for j in i + 1..key.len() {
                if basis.contains(&key[j].sub(&key[i])) {
                    return Some((key[i].clone(), key[j].clone()));
                }
            }
        }
        None
    }) {
        return Err(Error::QuotientNotSimplicial(format!(
            "lift vertices {:?} and {:?} are lattice equivalent",
            bad.0, bad.1
        )));
    }

    keys.par_sort_unstable_by(|a, b| a.cmp(b));
    debug_assert!(keys.windows(2).all(|w| w[0] != w[1]));

    let mut vertices: Vec<RatVec> = keys
        .par_iter()
        .flat_map_iter(|key| key.iter().map(|p| basis.canonical_rep(p)))
        .collect();
    vertices.par_sort_unstable();
    vertices.dedup();

    let tops: Vec<TopOrbit> = keys
        .into_par_iter()
        .map(|key| {
            let vertex_ids = key
                .iter()
                .map(|p| {
                    vertices
                        .binary_search(&basis.canonical_rep(p))
                        .expect("vertex table is complete") as VertexId
                })
                .collect();
            TopOrbit { key, vertex_ids }
        })
        .collect();

    let mut id_sets: Vec<Vec<VertexId>> = tops
        .par_iter()
        .map(|t| {
            let mut ids = t.vertex_ids.clone();
            ids.sort_unstable();
            ids
        })
        .collect();
    id_sets.par_sort_unstable();
    let faithful = id_sets.windows(2).all(|w| w[0] != w[1]);

    debug_assert_eq!(n + 1, tops[0].key.len());
    Ok(QuotientComplex {
        basis,
        vertices,
        tops,
        faithful,
    })
}

/// Checks that for every chart half-cube and every positive axis direction,
/// this cube's triangulation and its neighbor's agree on the shared facet.
/// Runs on the lifts, so no quotient identifications are involved.
fn verify_half_cube_gluing(origins: &[RatVec]) -> Result<()> {
    origins.par_iter().try_for_each(|w| {
        let n = w.dim();
        let (v, vp) = half_cube_diagonal(w);
        let tuples = cube_top_tuples(&v, &vp);
        for axis in 0..n {
            let plane = w.0[axis] + Rat::HALF;
            let mut neighbor = w.clone();
            neighbor.0[axis] = plane;
            let (nv, nvp) = half_cube_diagonal(&neighbor);
            let a = facet_restriction(&tuples, axis, plane);
            let b = facet_restriction(&cube_top_tuples(&nv, &nvp), axis, plane);
            if a != b {
                return Err(Error::NotAComplex(format!(
                    "half-cube triangulations at {:?} disagree across axis {}",
                    w, axis
                )));
            }
        }
        Ok(())
    })
}

fn facet_restriction(
    tuples: &[Vec<RatVec>],
    axis: usize,
    value: Rat,
) -> std::collections::BTreeSet<Vec<RatVec>> {
    tuples
        .iter()
        .filter_map(|t| {
            let sub: Vec<RatVec> = t
                .iter()
                .filter(|p| p.0[axis] == value)
                .cloned()
                .collect();
            (sub.len() == t.len() - 1).then_some(sub)
        })
        .collect()
}

/// True when every top orbit has exactly k+1 lift vertices in the integral
/// skeleton and k+1 in the shifted one. The statement is about one lift at
/// a time, so it makes sense for both lattices.
pub fn verify_dual_split(q: &QuotientComplex) -> bool {
    let k = q.params().skeleton_dim();
    q.tops.par_iter().all(|t| {
        let z = t
            .key
            .iter()
            .filter(|p| point_in_skeleton(p, k, false))
            .count();
        let zp = t
            .key
            .iter()
            .filter(|p| point_in_skeleton(p, k, true))
            .count();
        z == k + 1 && zp == k + 1
    })
}

/// True when, for every face orbit, vertexwise skeleton membership forces
/// the whole face into the skeleton. Membership of a vertex is only
/// lattice-invariant when all generators are integral.
pub fn verify_fullness(q: &QuotientComplex, which: Skeleton) -> Result<bool> {
    require_integral_group(q)?;
    let k = q.params().skeleton_dim();
    let n = q.ambient_dim();
    let shifted = which.is_shifted();
    Ok(q.tops.par_iter().all(|t| {
        (1u32..(1 << (n + 1))).all(|mask| {
            let pts = select(&t.key, mask);
            !pts.iter().all(|p| point_in_skeleton(p, k, shifted))
                || span_in_skeleton(&pts, k, shifted)
        })
    }))
}

/// True when translation by the undoubled mixing vector permutes the top
/// orbits. Pointwise it swaps the two skeleta, so together with key
/// bijectivity this is the equivariance of the whole construction.
pub fn verify_equivariance(q: &QuotientComplex) -> Result<bool> {
    require_integral_group(q)?;
    let t = mixing_translation(q.params());
    let mut keys: Vec<Box<[i16]>> = q.tops.par_iter().map(|o| encode_key(&o.key)).collect();
    keys.par_sort_unstable();
    Ok(q.tops.par_iter().all(|o| {
        let moved: Vec<RatVec> = o.key.iter().map(|p| p.add(&t)).collect();
        keys.binary_search(&encode_key(&canonical_key(&q.basis, &moved)))
            .is_ok()
    }))
}

fn require_integral_group(q: &QuotientComplex) -> Result<()> {
    if q.params().group != GroupKind::Ghat {
        return Err(Error::ParamMismatch(
            "skeleton membership only descends to the integral-generator quotient".into(),
        ));
    }
    Ok(())
}

/// Distinct face orbits per dimension lying inside the skeleton.
pub fn skeleton_face_counts(q: &QuotientComplex, which: Skeleton) -> Result<Vec<usize>> {
    require_integral_group(q)?;
    let k = q.params().skeleton_dim();
    let n = q.ambient_dim();
    let shifted = which.is_shifted();
    let mut out = Vec::new();
    for d in 0..=n {
        let mut keys: Vec<Box<[i16]>> = q
            .tops
            .par_iter()
            .flat_map_iter(|t| {
                subsets_of_size(n + 1, d + 1).filter_map(move |mask| {
                    let pts = select(&t.key, mask);
                    span_in_skeleton(&pts, k, shifted)
                        .then(|| encode_key(&canonical_key(&q.basis, &pts)))
                })
            })
            .collect();
        keys.par_sort_unstable();
        keys.dedup();
        out.push(keys.len());
    }
    Ok(out)
}

/// The skeleton as a subcomplex of the vertex-faithful quotient.
pub fn skeleton_subcomplex(
    complex: &SimplicialComplex,
    q: &QuotientComplex,
    which: Skeleton,
) -> Result<Subcomplex> {
    require_integral_group(q)?;
    if !q.faithful {
        return Err(Error::QuotientNotSimplicial(
            "skeleton subcomplex needs a vertex-faithful quotient".into(),
        ));
    }
    let k = q.params().skeleton_dim();
    let n = q.ambient_dim();
    let shifted = which.is_shifted();
    let mut members: Vec<Simplex> = Vec::new();
    for t in &q.tops {
        for mask in 1u32..(1 << (n + 1)) {
            let pts = select(&t.key, mask);
            if span_in_skeleton(&pts, k, shifted) {
                let mut ids: Vec<VertexId> = (0..n + 1)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| t.vertex_ids[i])
                    .collect();
                ids.sort_unstable();
                members.push(Simplex::new(ids)?);
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    Subcomplex::new(complex, members)
}

/// Exact rational lifts of the top simplices of a quotient-derived complex,
/// stored as lattice-coefficient corrections against the stored coordinates.
pub struct TopLifts {
    pub basis: LatticeBasis,
    /// Per top: None for the identity correction, otherwise a row-major
    /// (vertex x generator) array of basis coefficients.
    pub corrections: Vec<Option<Box<[i16]>>>,
}

impl TopLifts {
    /// The lift of one top: stored coordinates plus corrections.
    pub fn lift(&self, complex: &SimplicialComplex, top_idx: usize) -> Vec<RatVec> {
        let s = &complex.tops()[top_idx];
        let n = self.basis.ambient_dim();
        s.vertices()
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                let base = complex.vertex(v).clone();
                match &self.corrections[top_idx] {
                    None => base,
                    Some(rows) => {
                        let row = &rows[pos * n..(pos + 1) * n];
                        if row.iter().all(|&c| c == 0) {
                            base
                        } else {
                            let coeffs: Vec<i64> = row.iter().map(|&c| c as i64).collect();
                            base.add(&self.basis.combine(&coeffs))
                        }
                    }
                }
            })
            .collect()
    }

    /// Correction coefficients of one vertex position of one top.
    pub fn row(&self, top_idx: usize, pos: usize) -> Vec<i64> {
        let n = self.basis.ambient_dim();
        match &self.corrections[top_idx] {
            None => vec![0; n],
            Some(rows) => rows[pos * n..(pos + 1) * n]
                .iter()
                .map(|&c| c as i64)
                .collect(),
        }
    }
}

/// The barycentric subdivision of a quotient, as a genuine simplicial
/// complex: vertices are barycenters of canonical face keys, tops are the
/// flags of each top orbit. Vertex flags record whether the originating
/// face lies in either skeleton (evaluated on its canonical lift), and
/// `origin_dim` its dimension.
pub struct SubdividedQuotient {
    pub basis: LatticeBasis,
    pub complex: SimplicialComplex,
    pub in_skel: Vec<bool>,
    pub in_shifted: Vec<bool>,
    pub origin_dim: Vec<u8>,
    /// Quotient top orbit each subdivided top came from.
    pub parent_top: Vec<u32>,
    pub lifts: Option<TopLifts>,
}

impl SubdividedQuotient {
    pub fn params(&self) -> ConstructionParams {
        self.basis.params
    }

    pub fn origin_flag(&self, v: VertexId, which: Skeleton) -> bool {
        match which {
            Skeleton::Integral => self.in_skel[v as usize],
            Skeleton::Shifted => self.in_shifted[v as usize],
        }
    }
}

pub fn subdivide_quotient(q: &QuotientComplex, with_lifts: bool) -> Result<SubdividedQuotient> {
    let n = q.ambient_dim();
    let k = q.params().skeleton_dim();
    let basis = q.basis.clone();

    // Face catalogue: barycenter, key encoding, dimension, skeleton flags.
    let mut cand: Vec<(RatVec, Box<[i16]>, u8, bool, bool)> = q
        .tops
        .par_iter()
        .flat_map_iter(|t| {
            (1u32..(1 << (n + 1))).map(|mask| {
                let key = canonical_key(&basis, &select(&t.key, mask));
                let bary = barycenter(&key);
                let dim = (mask.count_ones() - 1) as u8;
                let z = span_in_skeleton(&key, k, false);
                let zp = span_in_skeleton(&key, k, true);
                (bary, encode_key(&key), dim, z, zp)
            })
        })
        .collect();
    cand.par_sort_unstable_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    // Orbits must be separated by their barycenters, or the subdivision
    // would identify vertices.
    for w in cand.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
            return Err(Error::QuotientNotSimplicial(format!(
                "distinct face orbits share the barycenter {:?}",
                w[0].0
            )));
        }
    }
    cand.dedup_by(|a, b| a.0 == b.0);

    let vertices: Vec<RatVec> = cand.iter().map(|c| c.0.clone()).collect();
    let in_skel: Vec<bool> = cand.iter().map(|c| c.3).collect();
    let in_shifted: Vec<bool> = cand.iter().map(|c| c.4).collect();
    let origin_dim: Vec<u8> = cand.iter().map(|c| c.2).collect();
    drop(cand);

    // All flags of every top orbit. Chains are emitted per orbit from a
    // shared permutation table, then sorted globally.
    let perms: Vec<Vec<usize>> = (0..n + 1).permutations(n + 1).collect();
    let mut flat: Vec<(Simplex, Option<Box<[i16]>>, u32)> =
        Vec::with_capacity(q.tops.len() * perms.len());
    let mut info: Vec<(VertexId, Vec<i16>)> = Vec::with_capacity(1 << (n + 1));
    for (parent, t) in q.tops.iter().enumerate() {
        // Subset lookup: vertex id and slide coefficients per mask.
        info.clear();
        info.push((0, Vec::new())); // mask 0 unused
        for mask in 1u32..(1 << (n + 1)) {
            let sub = select(&t.key, mask);
            let key = canonical_key(&basis, &sub);
            let id = vertices
                .binary_search(&barycenter(&key))
                .expect("face catalogue is complete") as VertexId;
            // Stored coordinates equal the lift within this orbit's
            // chart plus the canonicalizing slide; the correction
            // undoes the slide.
            let slide = key[0].sub(&sub[0]);
            let coeffs: Vec<i16> = basis
                .decompose(&slide.scale(Rat::new(-1, 1)))
                .expect("slides are lattice vectors")
                .iter()
                .map(|&c| i16::try_from(c).expect("slide coefficient out of range"))
                .collect();
            info.push((id, coeffs));
        }
        for perm in &perms {
            let mut mask = 0u32;
            let mut chain: Vec<(VertexId, &[i16])> = perm
                .iter()
                .map(|&i| {
                    mask |= 1 << i;
                    let (id, ref coeffs) = info[mask as usize];
                    (id, coeffs.as_slice())
                })
                .collect();
            chain.sort_unstable_by_key(|&(id, _)| id);
            let ids: Vec<VertexId> = chain.iter().map(|&(id, _)| id).collect();
            debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
            let corr = if with_lifts && chain.iter().any(|(_, c)| c.iter().any(|&x| x != 0)) {
                let mut rows = Vec::with_capacity((n + 1) * n);
                for (_, c) in &chain {
                    rows.extend_from_slice(c);
                }
                Some(rows.into_boxed_slice())
            } else {
                None
            };
            flat.push((Simplex::from_sorted(ids), corr, parent as u32));
        }
    }
    flat.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let mut tops = Vec::with_capacity(flat.len());
    let mut corrections = Vec::with_capacity(if with_lifts { flat.len() } else { 0 });
    let mut parent_top = Vec::with_capacity(flat.len());
    for (s, c, p) in flat {
        tops.push(s);
        if with_lifts {
            corrections.push(c);
        }
        parent_top.push(p);
    }
    let complex = SimplicialComplex::from_canonical_parts(n, vertices, tops);
    let lifts = with_lifts.then(|| TopLifts {
        basis: basis.clone(),
        corrections,
    });
    Ok(SubdividedQuotient {
        basis,
        complex,
        in_skel,
        in_shifted,
        origin_dim,
        parent_top,
        lifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, l: u32, group: GroupKind) -> ConstructionParams {
        ConstructionParams::new(k, l, group).unwrap()
    }

    #[test]
    fn quotient_counts_k1_l1() {
        let q = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        assert_eq!(q.vertices.len(), 24);
        assert_eq!(q.tops.len(), 144);
        assert!(!q.faithful);
        assert_eq!(q.f_vector(), vec![24, 168, 288, 144]);
        assert_eq!(q.euler_characteristic(), 0);
        assert_eq!(q.total_volume(), Rat::from_int(3));
        assert!(matches!(
            q.to_simplicial(),
            Err(Error::QuotientNotSimplicial(_))
        ));

        let g = triangulate_quotient(params(1, 1, GroupKind::G)).unwrap();
        assert_eq!(g.vertices.len(), 12);
        assert_eq!(g.tops.len(), 72);
        assert_eq!(g.total_volume(), Rat::new(3, 2));
    }

    #[test]
    fn quotient_is_faithful_at_l2() {
        let q = triangulate_quotient(params(1, 2, GroupKind::Ghat)).unwrap();
        assert!(q.faithful);
        assert_eq!(q.tops.len(), 960);
        let c = q.to_simplicial().unwrap();
        assert_eq!(c.f_vector(), vec![160, 1120, 1920, 960]);
        assert_eq!(c.euler_characteristic(), 0);

        let g = triangulate_quotient(params(1, 2, GroupKind::G)).unwrap();
        assert!(g.faithful);
        assert_eq!(g.tops.len(), 480);
        assert_eq!(g.to_simplicial().unwrap().f_vector(), vec![80, 560, 960, 480]);
    }

    #[test]
    fn dual_split_and_fullness() {
        for group in [GroupKind::G, GroupKind::Ghat] {
            let q = triangulate_quotient(params(1, 1, group)).unwrap();
            assert!(verify_dual_split(&q));
        }
        let q = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        assert!(verify_fullness(&q, Skeleton::Integral).unwrap());
        assert!(verify_fullness(&q, Skeleton::Shifted).unwrap());
        assert!(verify_equivariance(&q).unwrap());

        let g = triangulate_quotient(params(1, 1, GroupKind::G)).unwrap();
        assert!(matches!(
            verify_fullness(&g, Skeleton::Integral),
            Err(Error::ParamMismatch(_))
        ));
    }

    #[test]
    fn skeleton_counts_k1_l1() {
        let q = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        let z = skeleton_face_counts(&q, Skeleton::Integral).unwrap();
        let zp = skeleton_face_counts(&q, Skeleton::Shifted).unwrap();
        // The skeleton meets the triangulation in 12 vertices and 18 edges:
        // 3 integer points plus 9 unit-edge midpoints, with every unit edge
        // split in two. No triangle of the triangulation lies inside it.
        assert_eq!(z, vec![12, 18, 0, 0]);
        assert_eq!(zp, z);
    }

    #[test]
    fn subdivision_k1_l1() {
        let q = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        let sub = subdivide_quotient(&q, true).unwrap();
        assert_eq!(sub.complex.num_vertices(), 624);
        assert_eq!(sub.complex.tops().len(), 3456);
        // Vertex count equals the total face-orbit count.
        assert_eq!(q.f_vector().iter().sum::<usize>(), 624);
        // Lifts reproduce genuine simplices: spot-check volumes sum to the
        // covolume across all subdivided tops.
        let lifts = sub.lifts.as_ref().unwrap();
        let total = (0..sub.complex.tops().len())
            .map(|i| simplex_volume(&lifts.lift(&sub.complex, i)))
            .fold(Rat::ZERO, |a, b| a + b);
        assert_eq!(total, Rat::from_int(3));

        let g = triangulate_quotient(params(1, 1, GroupKind::G)).unwrap();
        let gsub = subdivide_quotient(&g, false).unwrap();
        assert_eq!(gsub.complex.num_vertices(), 312);
        assert_eq!(gsub.complex.tops().len(), 1728);
        assert!(gsub.lifts.is_none());
    }

    #[test]
    fn origin_flags_partition_grid_vertices() {
        let q = triangulate_quotient(params(1, 1, GroupKind::Ghat)).unwrap();
        let sub = subdivide_quotient(&q, false).unwrap();
        for v in 0..sub.complex.num_vertices() {
            let z = sub.in_skel[v];
            let zp = sub.in_shifted[v];
            assert!(!(z && zp));
            if sub.origin_dim[v] == 0 {
                // Every grid vertex lies in exactly one skeleton.
                assert!(z ^ zp);
            }
        }
    }
}
