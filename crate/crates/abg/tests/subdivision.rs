//! Barycentric subdivision preserves the topology: Euler characteristic
//! and integral homology agree before and after.

use abg::algebra::homology_summary;
use abg::complex::{barycentric_subdivision, make_complex, SimplicialComplex, Validation};
use abg::lattice::kuhn_triangulation;
use abg::rat::RatVec;

fn basis_points(n: usize) -> Vec<RatVec> {
    (0..n)
        .map(|i| {
            let mut c = vec![0i128; n];
            c[i] = 1;
            RatVec::from_ints(&c)
        })
        .collect()
}

fn tetrahedron_boundary() -> SimplicialComplex {
    let tops = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    make_complex(basis_points(4), tops, Validation::Structural).unwrap()
}

fn seven_vertex_torus() -> SimplicialComplex {
    let mut tops = Vec::new();
    for i in 0u32..7 {
        tops.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tops.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    make_complex(basis_points(7), tops, Validation::Structural).unwrap()
}

fn six_vertex_projective_plane() -> SimplicialComplex {
    let tops = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    make_complex(basis_points(6), tops, Validation::Structural).unwrap()
}

fn assert_preserved(c: &SimplicialComplex) {
    let (sub, map) = barycentric_subdivision(c).unwrap();
    assert_eq!(sub.euler_characteristic(), c.euler_characteristic());
    assert_eq!(
        homology_summary(&sub).unwrap(),
        homology_summary(c).unwrap()
    );
    // Every parent index points at a real top and all parents occur.
    let mut seen = vec![false; c.tops().len()];
    for &p in &map.top_parent {
        seen[p as usize] = true;
    }
    assert!(seen.iter().all(|&s| s));
}

#[test]
fn sphere_preserved() {
    assert_preserved(&tetrahedron_boundary());
}

#[test]
fn sphere_preserved_twice() {
    let (once, _) = barycentric_subdivision(&tetrahedron_boundary()).unwrap();
    assert_preserved(&once);
}

#[test]
fn torus_preserved() {
    assert_preserved(&seven_vertex_torus());
}

#[test]
fn projective_plane_preserved() {
    assert_preserved(&six_vertex_projective_plane());
}

#[test]
fn solid_cube_preserved() {
    assert_preserved(&kuhn_triangulation(3).unwrap());
}
