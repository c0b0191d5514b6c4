use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::uf::UnionFind;

use super::{pack_face, pack_id_subset, PackedFace, Simplex, SimplicialComplex, Subcomplex, VertexId};

/// Closed star and link of a simplex.
///
/// The star is generated by the top simplices containing `s`; the link by
/// their complements `t \ s`.
pub fn star_and_link(
    complex: &SimplicialComplex,
    s: &Simplex,
) -> Result<(Subcomplex, Subcomplex)> {
    let containing: Vec<&Simplex> = complex.tops().iter().filter(|t| t.contains(s)).collect();
    if containing.is_empty() {
        return Err(Error::SimplexNotInComplex(s.vertices().to_vec()));
    }
    let star = Subcomplex::from_members(containing.iter().map(|t| (*t).clone()).collect());
    let link_tops: Vec<Simplex> = containing
        .iter()
        .filter_map(|t| {
            let rest: Vec<VertexId> = t
                .vertices()
                .iter()
                .copied()
                .filter(|v| !s.has_vertex(*v))
                .collect();
            (!rest.is_empty()).then(|| Simplex::from_sorted(rest))
        })
        .collect();
    Ok((star, Subcomplex::from_members(link_tops)))
}

/// The link of a simplex as a standalone complex, with the map from its
/// vertex ids back to the parent's.
pub fn link_complex(
    complex: &SimplicialComplex,
    s: &Simplex,
) -> Result<(SimplicialComplex, Vec<VertexId>)> {
    let (_, link) = star_and_link(complex, s)?;
    if link.is_empty() {
        return Err(Error::SimplexNotInComplex(s.vertices().to_vec()));
    }
    let e = extract_subcomplex(complex, &link);
    Ok((e.complex, e.vertex_to_parent))
}

/// Whether `sub` is a full subcomplex of `parent`: every parent simplex all
/// of whose vertices lie in `sub` belongs to `sub`. It suffices to test the
/// simplex induced in each top, because induced simplices of faces are faces
/// of the induced simplex of their top.
pub fn is_full_subcomplex(parent: &SimplicialComplex, sub: &Subcomplex) -> bool {
    let mut in_sub = vec![false; parent.num_vertices()];
    for v in sub.vertex_ids() {
        in_sub[v as usize] = true;
    }
    // Vertex -> member tops index, to answer closure membership queries.
    let mut by_vertex: Vec<Vec<u32>> = vec![Vec::new(); parent.num_vertices()];
    for (i, t) in sub.tops().iter().enumerate() {
        for &v in t.vertices() {
            by_vertex[v as usize].push(i as u32);
        }
    }
    parent.tops().par_iter().all(|t| {
        let induced: Vec<VertexId> = t
            .vertices()
            .iter()
            .copied()
            .filter(|&v| in_sub[v as usize])
            .collect();
        if induced.is_empty() {
            return true;
        }
        let induced = Simplex::from_sorted(induced);
        // Scan member tops through the induced simplex's least-degree vertex.
        let probe = induced
            .vertices()
            .iter()
            .min_by_key(|&&v| by_vertex[v as usize].len())
            .unwrap();
        by_vertex[*probe as usize]
            .iter()
            .any(|&i| sub.tops()[i as usize].contains(&induced))
    })
}

/// The simplicial neighborhood of `sub` in `parent`: the closure of all
/// simplices whose geometric realization meets that of `sub`.
///
/// A simplex meets `|sub|` exactly when it shares a vertex with `sub`: the
/// realizations of the faces of a complex partition it into open cells, so a
/// common point lies in the relative interior of a common face, and a shared
/// face shares vertices. The neighborhood is therefore generated by the top
/// simplices having a vertex in `sub`.
pub fn simplicial_neighborhood(parent: &SimplicialComplex, sub: &Subcomplex) -> Subcomplex {
    let mut in_sub = vec![false; parent.num_vertices()];
    for v in sub.vertex_ids() {
        in_sub[v as usize] = true;
    }
    let tops: Vec<Simplex> = parent
        .tops()
        .iter()
        .filter(|t| t.vertices().iter().any(|&v| in_sub[v as usize]))
        .cloned()
        .collect();
    Subcomplex::from_maximal_unchecked(tops)
}

/// Boundary of a pure subcomplex: the closure of the ridges lying in exactly
/// one member top.
pub fn boundary_subcomplex(
    parent: &SimplicialComplex,
    sub: &Subcomplex,
) -> Result<Subcomplex> {
    let _ = parent;
    let d = sub.dim();
    if let Some(t) = sub.tops().iter().find(|t| t.dim() != d) {
        return Err(Error::NotPure {
            expected: d,
            detail: format!("member {:?} has dimension {}", t, t.dim()),
        });
    }
    let mut ridges: Vec<PackedFace> = sub
        .tops()
        .par_iter()
        .flat_map_iter(|t| {
            let full = (1u32 << (d + 1)) - 1;
            (0..=d).map(move |i| pack_id_subset(t.vertices(), full & !(1 << i)))
        })
        .collect();
    ridges.par_sort_unstable();
    let mut boundary: Vec<Simplex> = Vec::new();
    let mut i = 0;
    while i < ridges.len() {
        let mut j = i + 1;
        while j < ridges.len() && ridges[j] == ridges[i] {
            j += 1;
        }
        if j - i == 1 {
            boundary.push(super::unpack_face(ridges[i], d));
        }
        i = j;
    }
    Ok(Subcomplex::from_maximal_unchecked(boundary))
}

/// A subcomplex extracted as a standalone complex. Vertex ids are compacted
/// but stay in the same coordinate order, so `vertex_to_parent` is strictly
/// increasing.
pub struct Extraction {
    pub complex: SimplicialComplex,
    pub vertex_to_parent: Vec<VertexId>,
}

pub fn extract_subcomplex(parent: &SimplicialComplex, sub: &Subcomplex) -> Extraction {
    let vertex_to_parent = sub.vertex_ids();
    let mut new_id = vec![u32::MAX; parent.num_vertices()];
    for (new, &old) in vertex_to_parent.iter().enumerate() {
        new_id[old as usize] = new as u32;
    }
    let vertices = vertex_to_parent
        .iter()
        .map(|&v| parent.vertex(v).clone())
        .collect();
    // Renumbering is monotone, so sortedness of the member list is preserved.
    let tops: Vec<Simplex> = sub
        .tops()
        .iter()
        .map(|t| {
            Simplex::from_sorted(t.vertices().iter().map(|&v| new_id[v as usize]).collect())
        })
        .collect();
    Extraction {
        complex: SimplicialComplex::from_canonical_parts(parent.ambient_dim(), vertices, tops),
        vertex_to_parent,
    }
}

/// Result of the closed-pseudomanifold verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub pure_dim: Option<usize>,
    /// Ridges not contained in exactly two top simplices.
    pub bad_ridge_count: usize,
    /// Connected components of the facet adjacency graph.
    pub strong_components: usize,
    /// Connected components of the vertex graph.
    pub vertex_components: usize,
}

impl PseudomanifoldReport {
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.pure_dim.is_some() && self.bad_ridge_count == 0 && self.strong_components == 1
    }
}

/// Verifies that the tops form a closed pseudomanifold of dimension `d`:
/// pure, every ridge in exactly two tops, and facet-connected.
pub fn verify_closed_pseudomanifold(
    complex: &SimplicialComplex,
    expected_dim: usize,
) -> Result<PseudomanifoldReport> {
    let tops = complex.tops();
    let pure = tops.iter().all(|t| t.dim() == expected_dim);
    if !pure {
        return Err(Error::NotPure {
            expected: expected_dim,
            detail: "pseudomanifold verification requires a pure complex".into(),
        });
    }
    let d = expected_dim;
    let full = (1u32 << (d + 1)) - 1;
    let mut pairs: Vec<(PackedFace, u32)> = tops
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            (0..=d).map(move |j| (pack_id_subset(t.vertices(), full & !(1 << j)), i as u32))
        })
        .collect();
    pairs.par_sort_unstable();
    let mut bad = 0usize;
    let mut uf = UnionFind::new(tops.len());
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i + 1;
        while j < pairs.len() && pairs[j].0 == pairs[i].0 {
            j += 1;
        }
        if j - i != 2 {
            bad += 1;
        }
        for w in i + 1..j {
            uf.union(pairs[i].1, pairs[w].1);
        }
        i = j;
    }
    let strong_components = uf.component_count();
    let mut vuf = UnionFind::new(complex.num_vertices());
    for t in tops {
        let vs = t.vertices();
        for w in vs.windows(2) {
            vuf.union(w[0], w[1]);
        }
    }
    Ok(PseudomanifoldReport {
        pure_dim: Some(d),
        bad_ridge_count: bad,
        strong_components,
        vertex_components: vuf.component_count(),
    })
}

/// Equality of two subcomplexes presented by generators, as sets of
/// simplices: their downward closures agree in every dimension.
pub fn closures_equal(a_gens: &[Simplex], b_gens: &[Simplex]) -> bool {
    let dim_a = a_gens.iter().map(Simplex::dim).max();
    let dim_b = b_gens.iter().map(Simplex::dim).max();
    if dim_a != dim_b {
        return false;
    }
    let Some(dim) = dim_a else {
        return true;
    };
    for d in 0..=dim {
        let mut fa: Vec<PackedFace> = a_gens
            .par_iter()
            .flat_map_iter(|t| t.faces_of_dim(d).into_iter().map(|f| pack_face(&f)))
            .collect();
        let mut fb: Vec<PackedFace> = b_gens
            .par_iter()
            .flat_map_iter(|t| t.faces_of_dim(d).into_iter().map(|f| pack_face(&f)))
            .collect();
        fa.par_sort_unstable();
        fa.dedup();
        fb.par_sort_unstable();
        fb.dedup();
        if fa != fb {
            return false;
        }
    }
    true
}

/// Convenience: equality of canonical member-top lists.
pub fn subcomplex_tops_equal(a: &Subcomplex, b: &Subcomplex) -> bool {
    a.tops() == b.tops()
}

/// Generators of the intersection of two subcomplexes: pairwise vertex
/// intersections of member tops. A common face of two simplices of a complex
/// is spanned by their common vertices, so these generate the intersection
/// of the closures. Quadratic in the number of member tops sharing vertices.
pub fn subcomplex_intersection_generators(
    parent: &SimplicialComplex,
    a: &Subcomplex,
    b: &Subcomplex,
) -> Vec<Simplex> {
    let mut b_by_vertex: Vec<Vec<u32>> = vec![Vec::new(); parent.num_vertices()];
    for (i, t) in b.tops().iter().enumerate() {
        for &v in t.vertices() {
            b_by_vertex[v as usize].push(i as u32);
        }
    }
    let mut gens: Vec<Simplex> = a
        .tops()
        .par_iter()
        .flat_map_iter(|ta| {
            let mut candidates: Vec<u32> = ta
                .vertices()
                .iter()
                .flat_map(|&v| b_by_vertex[v as usize].iter().copied())
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            candidates.into_iter().filter_map(move |i| {
                let tb = &b.tops()[i as usize];
                let common: Vec<VertexId> = ta
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| tb.has_vertex(*v))
                    .collect();
                (!common.is_empty()).then(|| Simplex::from_sorted(common))
            })
        })
        .collect();
    gens.par_sort_unstable();
    gens.dedup();
    gens
}

/// Homology summary of one vertex link.
#[derive(Debug, Clone)]
pub struct LinkReport {
    pub vertex: VertexId,
    pub link_dim: usize,
    pub betti: Vec<usize>,
    pub torsion_free: bool,
    /// True when the link has the integral homology of a sphere of its
    /// dimension.
    pub is_homology_sphere: bool,
}

/// Integral homology of the links of the sampled vertices, each compared
/// against the sphere of the link's dimension.
pub fn vertex_link_report(
    complex: &SimplicialComplex,
    sample: &[VertexId],
) -> Result<Vec<LinkReport>> {
    sample
        .iter()
        .map(|&v| {
            let (link, _) = link_complex(complex, &Simplex::from_sorted(vec![v]))?;
            let d = link.dim();
            let summary = crate::algebra::homology_summary(&link)?;
            let betti: Vec<usize> = summary.iter().map(|h| h.betti).collect();
            let torsion_free = summary.iter().all(|h| h.torsion.is_empty());
            let mut sphere = vec![0usize; d + 1];
            sphere[0] = 1;
            sphere[d] += 1;
            Ok(LinkReport {
                vertex: v,
                link_dim: d,
                is_homology_sphere: torsion_free && betti == sphere,
                betti,
                torsion_free,
            })
        })
        .collect()
}
