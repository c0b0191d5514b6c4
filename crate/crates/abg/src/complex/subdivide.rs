use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rat::{barycenter, RatVec};

use super::{Simplex, SimplicialComplex, VertexId};

/// Relates a barycentric subdivision to its parent complex.
pub struct SubdivisionMap {
    /// For each subdivision vertex, the parent face whose barycenter it is.
    pub vertex_origin: Vec<Simplex>,
    /// For each subdivision top simplex, the index of the parent top simplex
    /// it subdivides.
    pub top_parent: Vec<u32>,
}

/// Barycentric subdivision. The new vertices are the barycenters of all
/// faces; the new top simplices are the chains of faces of each top, one per
/// permutation of its vertices.
pub fn barycentric_subdivision(
    complex: &SimplicialComplex,
) -> Result<(SimplicialComplex, SubdivisionMap)> {
    // All faces of all dimensions, with their barycenters.
    let mut faces: Vec<Simplex> = Vec::new();
    for d in 0..=complex.dim() {
        faces.extend(complex.all_faces_of_dim(d));
    }
    let mut points: Vec<(RatVec, usize)> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (barycenter(&complex.simplex_points(f)), i))
        .collect();
    points.sort_by(|a, b| a.0.cmp(&b.0));
    for w in points.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::BarycenterCollision(
                faces[w[0].1].vertices().to_vec(),
                faces[w[1].1].vertices().to_vec(),
            ));
        }
    }
    let mut face_to_new: HashMap<&Simplex, VertexId> = HashMap::with_capacity(faces.len());
    let mut vertices: Vec<RatVec> = Vec::with_capacity(points.len());
    let mut vertex_origin: Vec<Simplex> = Vec::with_capacity(points.len());
    for (new_id, (coords, old)) in points.iter().enumerate() {
        face_to_new.insert(&faces[*old], new_id as VertexId);
        vertices.push(coords.clone());
        vertex_origin.push(faces[*old].clone());
    }

    let mut tops_with_parent: Vec<(Simplex, u32)> = Vec::new();
    for (ti, top) in complex.tops().iter().enumerate() {
        let ids = top.vertices();
        let m = ids.len();
        // One chain per permutation: the prefix sets of the permutation.
        let mut perm: Vec<usize> = (0..m).collect();
        permute(&mut perm, 0, &mut |perm| {
            let mut prefix: Vec<VertexId> = Vec::with_capacity(m);
            let mut chain: Vec<VertexId> = Vec::with_capacity(m);
            for &i in perm.iter() {
                let pos = prefix.binary_search(&ids[i]).unwrap_err();
                prefix.insert(pos, ids[i]);
                let face = Simplex::from_sorted(prefix.clone());
                chain.push(face_to_new[&face]);
            }
            tops_with_parent.push((Simplex::new(chain).expect("chain ids distinct"), ti as u32));
        });
    }
    tops_with_parent.sort_unstable();
    let (tops, top_parent): (Vec<Simplex>, Vec<u32>) = tops_with_parent.into_iter().unzip();
    let subdivided =
        SimplicialComplex::from_canonical_parts(complex.ambient_dim(), vertices, tops);
    Ok((
        subdivided,
        SubdivisionMap {
            vertex_origin,
            top_parent,
        },
    ))
}

/// Heap-style permutation enumeration, calling `f` on each arrangement.
fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}
