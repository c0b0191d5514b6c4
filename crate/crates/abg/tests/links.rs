//! Every vertex link of the extracted hypersurfaces is a homology circle,
//! which is what being a closed surface demands locally.

use abg::complex::{make_complex, vertex_link_report, SimplicialComplex, Validation};
use abg::lattice::{subdivide_quotient, triangulate_quotient, ConstructionParams, GroupKind};
use abg::neighborhood::{build_neighborhoods, direct_hypersurface, extract_hypersurface};
use abg::rat::RatVec;

fn assert_all_links_are_circles(c: &SimplicialComplex) {
    let all: Vec<u32> = (0..c.num_vertices() as u32).collect();
    for report in vertex_link_report(c, &all).unwrap() {
        let v = report.vertex;
        assert!(report.is_homology_sphere, "vertex {v}");
        assert_eq!(report.link_dim, 1, "vertex {v}");
        assert_eq!(report.betti, vec![1, 1], "vertex {v}");
        assert!(report.torsion_free, "vertex {v}");
    }
}

fn surface(group: GroupKind) -> SimplicialComplex {
    let p = ConstructionParams::new(1, 1, group).unwrap();
    let q = triangulate_quotient(p).unwrap();
    match group {
        GroupKind::G => {
            let sub = subdivide_quotient(&q, false).unwrap();
            direct_hypersurface(&sub).unwrap().complex
        }
        GroupKind::Ghat => {
            let pair = build_neighborhoods(&q, false).unwrap();
            extract_hypersurface(&pair).unwrap().complex
        }
    }
}

#[test]
fn quotient_surface_links() {
    let x = surface(GroupKind::G);
    assert_eq!(x.num_vertices(), 282);
    assert_all_links_are_circles(&x);
}

#[test]
fn cover_surface_links() {
    let x = surface(GroupKind::Ghat);
    assert_eq!(x.num_vertices(), 564);
    assert_all_links_are_circles(&x);
}

#[test]
fn tetrahedron_boundary_links() {
    let points: Vec<RatVec> = (0..4)
        .map(|i| {
            let mut c = vec![0i128; 4];
            c[i] = 1;
            RatVec::from_ints(&c)
        })
        .collect();
    let tops = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    let sphere = make_complex(points, tops, Validation::Structural).unwrap();
    assert_all_links_are_circles(&sphere);
}
