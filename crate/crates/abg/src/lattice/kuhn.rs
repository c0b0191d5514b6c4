//! Kuhn triangulations of cubes.
//!
//! The unit cube [0,1]^m splits into m! simplices, one per permutation of
//! the axes: walk from the origin to the opposite corner adding one basis
//! vector at a time in the permutation's order. The same walk between any
//! pair of opposite corners of an axis-aligned cube triangulates that cube,
//! and the result depends only on the unordered corner pair.

use itertools::Itertools;

use crate::complex::{make_complex, SimplicialComplex, Validation};
use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

const MAX_DIM: usize = 7;

/// The Kuhn triangulation of the unit cube [0,1]^m: all 2^m corners as
/// vertices and m! top simplices.
pub fn kuhn_triangulation(m: usize) -> Result<SimplicialComplex> {
    if m < 1 || m > MAX_DIM {
        return Err(Error::DimensionOutOfRange(
            m,
            format!("kuhn triangulation supports 1..={}", MAX_DIM),
        ));
    }
    let zero = RatVec::zeros(m);
    let mut one = RatVec::zeros(m);
    for c in one.0.iter_mut() {
        *c = Rat::ONE;
    }
    let tuples = cube_top_tuples(&zero, &one);
    complex_from_tuples(tuples)
}

/// The Kuhn triangulation of the axis-aligned cube with the given origin
/// and side, walking between the opposite corners `v` and `v_prime`. The
/// simplex set is the same for (v, v_prime) and (v_prime, v).
pub fn cube_triangulation(
    cube_origin: &RatVec,
    side: Rat,
    v: &RatVec,
    v_prime: &RatVec,
) -> Result<SimplicialComplex> {
    let m = cube_origin.dim();
    if !side.is_positive() || v.dim() != m || v_prime.dim() != m {
        return Err(Error::NotOppositeVertices);
    }
    for c in 0..m {
        let lo = cube_origin.0[c];
        let hi = lo + side;
        let pair = (v.0[c], v_prime.0[c]);
        if pair != (lo, hi) && pair != (hi, lo) {
            return Err(Error::NotOppositeVertices);
        }
    }
    if m > MAX_DIM {
        return Err(Error::DimensionOutOfRange(
            m,
            format!("kuhn triangulation supports 1..={}", MAX_DIM),
        ));
    }
    complex_from_tuples(cube_top_tuples(v, v_prime))
}

/// Top simplices of the Kuhn triangulation between opposite corners, as
/// point tuples. Each tuple is sorted and the tuple list is sorted, so the
/// output is canonical and independent of the corner order.
pub(crate) fn cube_top_tuples(v: &RatVec, v_prime: &RatVec) -> Vec<Vec<RatVec>> {
    let m = v.dim();
    let mut out: Vec<Vec<RatVec>> = (0..m)
        .permutations(m)
        .map(|perm| {
            let mut tuple = Vec::with_capacity(m + 1);
            let mut p = v.clone();
            tuple.push(p.clone());
            for &axis in &perm {
                p.0[axis] = v_prime.0[axis];
                tuple.push(p.clone());
            }
            tuple.sort();
            tuple
        })
        .collect();
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len(), (1..=m).product::<usize>());
    out
}

fn complex_from_tuples(tuples: Vec<Vec<RatVec>>) -> Result<SimplicialComplex> {
    let mut points: Vec<RatVec> = tuples.iter().flatten().cloned().collect();
    points.sort();
    points.dedup();
    let index = |p: &RatVec| points.binary_search(p).unwrap() as u32;
    let simplices = tuples
        .iter()
        .map(|t| t.iter().map(index).collect())
        .collect();
    make_complex(points, simplices, Validation::Geometric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::simplex_volume;

    #[test]
    fn unit_interval_and_square() {
        let c = kuhn_triangulation(1).unwrap();
        assert_eq!(c.f_vector(), vec![2, 1]);
        let c = kuhn_triangulation(2).unwrap();
        assert_eq!(c.num_vertices(), 4);
        assert_eq!(c.tops().len(), 2);
        // Both triangles use the main diagonal (0,0)-(1,1).
        for t in c.tops() {
            let pts = c.simplex_points(t);
            assert!(pts.contains(&RatVec::from_ints(&[0, 0])));
            assert!(pts.contains(&RatVec::from_ints(&[1, 1])));
        }
    }

    #[test]
    fn cube_tiles_with_unit_volume() {
        for m in 1..=4 {
            let c = kuhn_triangulation(m).unwrap();
            assert_eq!(c.tops().len(), (1..=m).product::<usize>());
            let total = c
                .tops()
                .iter()
                .map(|t| simplex_volume(&c.simplex_points(t)))
                .fold(Rat::ZERO, |a, b| a + b);
            assert_eq!(total, Rat::ONE);
        }
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            kuhn_triangulation(0),
            Err(Error::DimensionOutOfRange(0, _))
        ));
        assert!(matches!(
            kuhn_triangulation(8),
            Err(Error::DimensionOutOfRange(8, _))
        ));
    }

    #[test]
    fn corner_order_is_irrelevant() {
        let o = RatVec::zeros(3);
        let v = RatVec::zeros(3);
        let mut vp = RatVec::zeros(3);
        for c in vp.0.iter_mut() {
            *c = Rat::HALF;
        }
        let a = cube_triangulation(&o, Rat::HALF, &v, &vp).unwrap();
        let b = cube_triangulation(&o, Rat::HALF, &vp, &v).unwrap();
        assert_eq!(a.tops(), b.tops());
        assert_eq!(a.vertices(), b.vertices());
        let total = a
            .tops()
            .iter()
            .map(|t| simplex_volume(&a.simplex_points(t)))
            .fold(Rat::ZERO, |acc, v| acc + v);
        assert_eq!(total, Rat::new(1, 8));
    }

    #[test]
    fn non_opposite_corners_rejected() {
        let o = RatVec::zeros(2);
        let v = RatVec::from_ints(&[0, 1]);
        let vp = RatVec::from_ints(&[0, 0]);
        assert!(matches!(
            cube_triangulation(&o, Rat::ONE, &v, &vp),
            Err(Error::NotOppositeVertices)
        ));
    }

    #[test]
    fn off_diagonal_corner_pair_matches_unit_kuhn_by_symmetry() {
        // Walking between the other diagonal of the square gives the other
        // (mirrored) triangulation; both are valid and each is canonical for
        // its corner pair.
        let o = RatVec::zeros(2);
        let v = RatVec::from_ints(&[1, 0]);
        let vp = RatVec::from_ints(&[0, 1]);
        let c = cube_triangulation(&o, Rat::ONE, &v, &vp).unwrap();
        assert_eq!(c.tops().len(), 2);
        for t in c.tops() {
            let pts = c.simplex_points(t);
            assert!(pts.contains(&RatVec::from_ints(&[1, 0])));
            assert!(pts.contains(&RatVec::from_ints(&[0, 1])));
        }
    }
}
