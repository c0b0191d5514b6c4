//! The orientation double cover of a pure complex, constructed from two
//! signed copies of every top simplex glued coherently across ridges.

use std::collections::VecDeque;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};
use crate::uf::UnionFind;

use super::orientation::facet_adjacencies;

/// A double cover together with its projection to the base.
pub struct DoubleCover {
    pub complex: SimplicialComplex,
    /// Base vertex of each cover vertex.
    pub vertex_to_base: Vec<VertexId>,
    /// Base top of each cover top.
    pub top_to_base: Vec<u32>,
    /// Orientation sign carried by each cover top's sheet.
    pub sheet: Vec<i8>,
}

/// Builds the orientation double cover.
///
/// Cover tops are pairs (top, sign); across each ridge the sheet continues
/// by the relative orientation sign. Cover vertices are the classes of
/// (top, sign, vertex) triples under identification along shared ridges.
/// Coordinates are the base coordinates with one extra component separating
/// the classes over a base vertex.
pub fn orientation_double_cover(complex: &SimplicialComplex) -> Result<DoubleCover> {
    let tops = complex.tops();
    let d = complex.dim();
    let n = tops.len();
    let adj = facet_adjacencies(complex)?;

    // Sheet index: (top t, sign s) -> 2t + (s == -1).
    let m = d + 1;
    let mut uf = UnionFind::new(2 * n * m);
    let corner = |t: usize, s: usize, pos: usize| ((2 * t + s) * m + pos) as u32;
    for a in &adj {
        let (ta, tb) = (a.a as usize, a.b as usize);
        // Vertex positions of the shared ridge in each top.
        for s in 0..2 {
            // Sheet s of `a` glues to the sheet of `b` continuing coherently.
            let sb = if a.relative_sign == 1 { s } else { 1 - s };
            let mut pa = 0;
            for (i, &v) in tops[ta].vertices().iter().enumerate() {
                if i == a.pos_a as usize {
                    continue;
                }
                // Position of v in top b.
                let pb = tops[tb]
                    .vertices()
                    .iter()
                    .position(|&w| w == v)
                    .expect("ridge vertex missing from adjacent top");
                uf.union(corner(ta, s, i), corner(tb, sb, pb));
                pa += 1;
            }
            debug_assert_eq!(pa, d);
        }
    }

    // Name the classes and index them per base vertex to assign tags.
    let mut class_of = vec![u32::MAX; 2 * n * m];
    let mut reps: Vec<u32> = Vec::new();
    for t in 0..n {
        for s in 0..2 {
            for pos in 0..m {
                let c = corner(t, s, pos);
                let root = uf.find(c);
                if class_of[root as usize] == u32::MAX {
                    class_of[root as usize] = reps.len() as u32;
                    reps.push(c);
                }
                class_of[c as usize] = class_of[root as usize];
            }
        }
    }
    let num_classes = reps.len();
    let base_vertex_of_class: Vec<VertexId> = reps
        .iter()
        .map(|&c| {
            let t = (c as usize / m) / 2;
            let pos = c as usize % m;
            tops[t].vertices()[pos]
        })
        .collect();
    // Distinguish classes over the same base vertex by the rank of their
    // smallest corner; a single-class vertex keeps tag zero.
    let mut order: Vec<u32> = (0..num_classes as u32).collect();
    order.sort_unstable_by_key(|&c| (base_vertex_of_class[c as usize], reps[c as usize]));
    let mut tag = vec![0i128; num_classes];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len()
            && base_vertex_of_class[order[j] as usize] == base_vertex_of_class[order[i] as usize]
        {
            tag[order[j] as usize] = (j - i) as i128;
            j += 1;
        }
        i = j;
    }

    let mut points: Vec<RatVec> = Vec::with_capacity(num_classes);
    for c in 0..num_classes {
        let mut coords = complex.vertex(base_vertex_of_class[c]).0.clone();
        coords.push(Rat::from_int(tag[c]));
        points.push(RatVec(coords));
    }

    // Cover tops with provenance, then canonical renumbering.
    let mut raw: Vec<(Simplex, u32, i8)> = Vec::with_capacity(2 * n);
    for t in 0..n {
        for s in 0..2 {
            let ids: Vec<VertexId> = (0..m).map(|pos| class_of[corner(t, s, pos) as usize]).collect();
            let simplex = Simplex::new(ids).map_err(|_| {
                Error::NotAComplex("double cover degenerates: sheet corners collide".into())
            })?;
            raw.push((simplex, t as u32, if s == 0 { 1 } else { -1 }));
        }
    }

    // Canonicalize: vertex ids by coordinate order, tops sorted.
    let mut vert_order: Vec<u32> = (0..num_classes as u32).collect();
    vert_order.sort_unstable_by(|&a, &b| points[a as usize].cmp(&points[b as usize]));
    let mut new_id = vec![0u32; num_classes];
    for (newv, &old) in vert_order.iter().enumerate() {
        new_id[old as usize] = newv as u32;
    }
    let vertices: Vec<RatVec> = vert_order
        .iter()
        .map(|&old| points[old as usize].clone())
        .collect();
    let vertex_to_base: Vec<VertexId> = vert_order
        .iter()
        .map(|&old| base_vertex_of_class[old as usize])
        .collect();
    let mut renamed: Vec<(Simplex, u32, i8)> = raw
        .into_iter()
        .map(|(s, t, sign)| {
            let ids: Vec<VertexId> = s.vertices().iter().map(|&v| new_id[v as usize]).collect();
            (Simplex::new(ids).expect("renumbering keeps ids distinct"), t, sign)
        })
        .collect();
    renamed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut tops_out = Vec::with_capacity(renamed.len());
    let mut top_to_base = Vec::with_capacity(renamed.len());
    let mut sheet = Vec::with_capacity(renamed.len());
    for (s, t, sign) in renamed {
        tops_out.push(s);
        top_to_base.push(t);
        sheet.push(sign);
    }
    let cover =
        SimplicialComplex::from_canonical_parts(complex.ambient_dim() + 1, vertices, tops_out);
    Ok(DoubleCover {
        complex: cover,
        vertex_to_base,
        top_to_base,
        sheet,
    })
}

impl DoubleCover {
    /// Checks that the projection is simplicial, two-to-one on tops, and
    /// commutes with the boundary operator as a chain map.
    pub fn verify_projection(&self, base: &SimplicialComplex) -> Result<()> {
        let mut hits = vec![0usize; base.tops().len()];
        for (ct, &bt) in self.top_to_base.iter().enumerate() {
            let img = self.project_simplex(&self.complex.tops()[ct]);
            let img = Simplex::new(img)
                .map_err(|_| Error::NotAComplex("projection collapses a top".into()))?;
            if &img != &base.tops()[bt as usize] {
                return Err(Error::NotAComplex(
                    "cover top does not project onto its base top".into(),
                ));
            }
            hits[bt as usize] += 1;
        }
        if hits.iter().any(|&h| h != 2) {
            return Err(Error::NotAComplex(
                "projection is not two-to-one on tops".into(),
            ));
        }
        if !chain_map_commutes(&self.complex, base, &self.vertex_to_base) {
            return Err(Error::NotAComplex(
                "projection does not commute with boundaries".into(),
            ));
        }
        Ok(())
    }

    fn project_simplex(&self, s: &Simplex) -> Vec<VertexId> {
        s.vertices()
            .iter()
            .map(|&v| self.vertex_to_base[v as usize])
            .collect()
    }
}

/// Verifies on every face of every dimension that the simplicial chain map
/// induced by `vertex_map` commutes with boundaries: the boundary of the
/// image chain equals the image of the boundary chain, with orientation
/// signs from sorting the image vertices.
pub fn chain_map_commutes(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: &[VertexId],
) -> bool {
    use std::collections::HashMap;
    for d in 1..=source.dim() {
        for f in source.all_faces_of_dim(d) {
            // phi(boundary f)
            let mut lhs: HashMap<Simplex, i64> = HashMap::new();
            for i in 0..=d {
                let facet = f.facet(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                if let Some((img, s)) = map_with_sign(&facet, vertex_map) {
                    *lhs.entry(img).or_insert(0) += sign * s;
                }
            }
            // boundary(phi f)
            let mut rhs: HashMap<Simplex, i64> = HashMap::new();
            if let Some((img, s)) = map_with_sign(&f, vertex_map) {
                for i in 0..=d {
                    let facet = img.facet(i);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *rhs.entry(facet).or_insert(0) += sign * s;
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return false;
            }
            // Images must be faces of the target complex when nondegenerate.
            if let Some((img, _)) = map_with_sign(&f, vertex_map) {
                if !target.contains_simplex(&img) {
                    return false;
                }
            }
        }
    }
    true
}

/// Image simplex under a vertex map with the sign of the sorting
/// permutation; `None` when the image is degenerate.
pub fn map_with_sign(s: &Simplex, vertex_map: &[VertexId]) -> Option<(Simplex, i64)> {
    let image: Vec<VertexId> = s
        .vertices()
        .iter()
        .map(|&v| vertex_map[v as usize])
        .collect();
    let mut idx: Vec<usize> = (0..image.len()).collect();
    idx.sort_by_key(|&i| image[i]);
    let sorted: Vec<VertexId> = idx.iter().map(|&i| image[i]).collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // Parity of the sorting permutation by counting transpositions.
    let mut perm = idx.clone();
    let mut sign = 1i64;
    for i in 0..perm.len() {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    Some((Simplex::from_sorted(sorted), sign))
}

/// Decides whether two connected double covers of the same base are
/// isomorphic over the base. An isomorphism is determined by where the
/// first top of `c1` goes; both lifts are tried and extended along ridge
/// adjacencies, where the continuation is forced: the image of a neighbor
/// is the unique lift of its base top containing the image of the shared
/// ridge.
pub fn covers_isomorphic_over_base(
    c1: &SimplicialComplex,
    p1_tops: &[u32],
    c2: &SimplicialComplex,
    p2_tops: &[u32],
    p1_vertices: &[VertexId],
    p2_vertices: &[VertexId],
    base: &SimplicialComplex,
) -> Result<bool> {
    if c1.tops().len() != c2.tops().len() || c1.num_vertices() != c2.num_vertices() {
        return Ok(false);
    }
    let mut lifts: Vec<Vec<u32>> = vec![Vec::new(); base.tops().len()];
    for (t, &bt) in p2_tops.iter().enumerate() {
        lifts[bt as usize].push(t as u32);
    }
    if lifts.iter().any(|l| l.len() != 2) {
        return Ok(false);
    }
    // Correspondence of a c1 top's vertices with a candidate image top's,
    // matching over the base; None when not bijective.
    let correspond = |t1: &Simplex, t2: &Simplex| -> Option<Vec<VertexId>> {
        t1.vertices()
            .iter()
            .map(|&v| {
                let bv = p1_vertices[v as usize];
                let mut found = None;
                for &w in t2.vertices() {
                    if p2_vertices[w as usize] == bv {
                        if found.is_some() {
                            return None;
                        }
                        found = Some(w);
                    }
                }
                found
            })
            .collect()
    };
    let adj1 = facet_adjacencies(c1)?;
    let mut nbr1: Vec<Vec<(u32, u8)>> = vec![Vec::new(); c1.tops().len()];
    for a in &adj1 {
        nbr1[a.a as usize].push((a.b, a.pos_a));
        nbr1[a.b as usize].push((a.a, a.pos_b));
    }

    'candidates: for &start2 in &lifts[p1_tops[0] as usize] {
        let mut phi = vec![u32::MAX; c1.tops().len()];
        phi[0] = start2;
        if correspond(&c1.tops()[0], &c2.tops()[start2 as usize]).is_none() {
            continue 'candidates;
        }
        let mut queue = VecDeque::from([0u32]);
        let mut assigned = 1usize;
        while let Some(t) = queue.pop_front() {
            let it = phi[t as usize] as usize;
            let Some(corr) = correspond(&c1.tops()[t as usize], &c2.tops()[it]) else {
                continue 'candidates;
            };
            for &(u, drop_pos) in &nbr1[t as usize] {
                // Image of the shared ridge under the local correspondence.
                let mut ridge_img: Vec<VertexId> = corr
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop_pos as usize)
                    .map(|(_, &w)| w)
                    .collect();
                ridge_img.sort_unstable();
                let ridge_img = Simplex::from_sorted(ridge_img);
                // Forced image: the lift of base(u) containing the ridge.
                let mut forced = u32::MAX;
                for &cu in &lifts[p1_tops[u as usize] as usize] {
                    if c2.tops()[cu as usize].contains(&ridge_img) {
                        if forced != u32::MAX {
                            continue 'candidates; // ambiguous: not a cover shape
                        }
                        forced = cu;
                    }
                }
                if forced == u32::MAX {
                    continue 'candidates;
                }
                if phi[u as usize] == u32::MAX {
                    phi[u as usize] = forced;
                    assigned += 1;
                    queue.push_back(u);
                } else if phi[u as usize] != forced {
                    continue 'candidates;
                }
            }
        }
        if assigned != c1.tops().len() {
            return Err(Error::NotAComplex("cover is not facet-connected".into()));
        }
        // Derive the global vertex map and verify it is a simplicial
        // bijection over the base.
        let mut vmap = vec![u32::MAX; c1.num_vertices()];
        let mut consistent = true;
        'derive: for (t, top) in c1.tops().iter().enumerate() {
            let Some(corr) = correspond(top, &c2.tops()[phi[t] as usize]) else {
                consistent = false;
                break 'derive;
            };
            for (i, &v) in top.vertices().iter().enumerate() {
                if vmap[v as usize] == u32::MAX {
                    vmap[v as usize] = corr[i];
                } else if vmap[v as usize] != corr[i] {
                    consistent = false;
                    break 'derive;
                }
            }
        }
        if !consistent {
            continue 'candidates;
        }
        let mut seen = vec![false; c2.num_vertices()];
        if vmap.iter().any(|&w| {
            w == u32::MAX || {
                let dup = seen[w as usize];
                seen[w as usize] = true;
                dup
            }
        }) {
            continue 'candidates;
        }
        return Ok(true);
    }
    Ok(false)
}
