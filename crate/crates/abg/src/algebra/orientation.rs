//! Orientability of pure pseudomanifold complexes, decided by propagating
//! facet orientations along a spanning forest of the facet adjacency graph.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::complex::{pack_face, pack_id_subset, PackedFace, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// One facet adjacency: tops `a < b` share the ridge obtained by dropping
/// vertex position `pos_a` from `a` and `pos_b` from `b`. `relative_sign` is
/// the factor by which coherent orientations of `a` and `b` differ.
#[derive(Debug, Clone, Copy)]
pub struct Adjacency {
    pub a: u32,
    pub b: u32,
    pub pos_a: u8,
    pub pos_b: u8,
    pub relative_sign: i8,
}

/// Facet adjacencies of a pure complex in which every ridge lies in at most
/// two tops. Ridges in three or more tops are rejected.
pub fn facet_adjacencies(complex: &SimplicialComplex) -> Result<Vec<Adjacency>> {
    let tops = complex.tops();
    let d = complex.dim();
    if tops.iter().any(|t| t.dim() != d) {
        return Err(Error::NotPure {
            expected: d,
            detail: "facet adjacency requires a pure complex".into(),
        });
    }
    let full = (1u32 << (d + 1)) - 1;
    let mut pairs: Vec<(PackedFace, u32, u8)> = tops
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            (0..=d)
                .map(move |j| (pack_id_subset(t.vertices(), full & !(1 << j)), i as u32, j as u8))
        })
        .collect();
    pairs.par_sort_unstable();
    let mut adj = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i + 1;
        while j < pairs.len() && pairs[j].0 == pairs[i].0 {
            j += 1;
        }
        if j - i > 2 {
            return Err(Error::NotPseudomanifold(format!(
                "a ridge lies in {} top simplices",
                j - i
            )));
        }
        if j - i == 2 {
            let (_, a, pa) = pairs[i];
            let (_, b, pb) = pairs[i + 1];
            // With vertices sorted, a top's orientation class is its identity
            // ordering; the facet dropping position p carries sign (-1)^p.
            // Coherence asks the two induced ridge orientations to be
            // opposite: o_b = -(-1)^(pa+pb) o_a.
            let relative_sign = if (pa + pb) % 2 == 0 { -1 } else { 1 };
            adj.push(Adjacency {
                a,
                b,
                pos_a: pa,
                pos_b: pb,
                relative_sign,
            });
        }
        i = j;
    }
    Ok(adj)
}

/// Outcome of the orientation propagation.
#[derive(Debug, Clone)]
pub struct OrientationData {
    pub orientable: bool,
    /// Signs assigned along the spanning forest, one per top simplex.
    pub orientations: Vec<i8>,
    /// For each non-forest adjacency, +1 when the propagated orientations
    /// are coherent across it and -1 when they clash. The complex is
    /// orientable exactly when no -1 appears.
    pub defects: Vec<(u32, u32, i8)>,
}

/// Decides orientability. Deterministic: breadth-first from the smallest
/// unvisited top, neighbors in adjacency order.
pub fn orientation(complex: &SimplicialComplex) -> Result<OrientationData> {
    let adj = facet_adjacencies(complex)?;
    Ok(orientation_from_adjacencies(complex.tops().len(), &adj))
}

pub fn orientation_from_adjacencies(num_tops: usize, adj: &[Adjacency]) -> OrientationData {
    let mut neighbors: Vec<Vec<(u32, i8, u32)>> = vec![Vec::new(); num_tops];
    for (e, a) in adj.iter().enumerate() {
        neighbors[a.a as usize].push((a.b, a.relative_sign, e as u32));
        neighbors[a.b as usize].push((a.a, a.relative_sign, e as u32));
    }
    for n in &mut neighbors {
        n.sort_unstable();
    }
    let mut orientations: Vec<i8> = vec![0; num_tops];
    let mut tree_edge = vec![false; adj.len()];
    for root in 0..num_tops {
        if orientations[root] != 0 {
            continue;
        }
        orientations[root] = 1;
        let mut queue = VecDeque::from([root as u32]);
        while let Some(t) = queue.pop_front() {
            for &(u, sign, e) in &neighbors[t as usize] {
                if orientations[u as usize] == 0 {
                    orientations[u as usize] = orientations[t as usize] * sign;
                    tree_edge[e as usize] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let defects: Vec<(u32, u32, i8)> = adj
        .iter()
        .enumerate()
        .filter(|(e, _)| !tree_edge[*e])
        .map(|(_, a)| {
            let coherent =
                orientations[a.b as usize] == orientations[a.a as usize] * a.relative_sign;
            (a.a, a.b, if coherent { 1 } else { -1 })
        })
        .collect();
    OrientationData {
        orientable: defects.iter().all(|&(_, _, s)| s == 1),
        orientations,
        defects,
    }
}

/// A fundamental cycle over the integers: the tops with the propagated
/// signs, when orientable. Verifies that the signed boundary vanishes.
pub fn fundamental_class_z(complex: &SimplicialComplex) -> Result<Option<Vec<i8>>> {
    let data = orientation(complex)?;
    if !data.orientable {
        return Ok(None);
    }
    debug_assert!(signed_boundary_vanishes(complex, &data.orientations));
    Ok(Some(data.orientations))
}

fn signed_boundary_vanishes(complex: &SimplicialComplex, signs: &[i8]) -> bool {
    let d = complex.dim();
    let mut acc: Vec<(PackedFace, i64)> = Vec::new();
    for (t, top) in complex.tops().iter().enumerate() {
        for i in 0..=d {
            let c = signs[t] as i64 * if i % 2 == 0 { 1 } else { -1 };
            acc.push((pack_face(&top.facet(i)), c));
        }
    }
    acc.sort_unstable_by_key(|&(f, _)| f);
    let mut i = 0;
    while i < acc.len() {
        let mut sum = 0i64;
        let mut j = i;
        while j < acc.len() && acc[j].0 == acc[i].0 {
            sum += acc[j].1;
            j += 1;
        }
        if sum != 0 {
            return false;
        }
        i = j;
    }
    true
}

/// The mod-2 fundamental class of a closed pure complex: every top with
/// coefficient one. Valid whenever each ridge lies in exactly two tops.
pub fn fundamental_class_z2(complex: &SimplicialComplex) -> Result<Vec<Simplex>> {
    let report = crate::complex::verify_closed_pseudomanifold(complex, complex.dim())?;
    if report.bad_ridge_count > 0 {
        return Err(Error::NotPseudomanifold(format!(
            "{} ridges are not in exactly two tops",
            report.bad_ridge_count
        )));
    }
    Ok(complex.tops().to_vec())
}
