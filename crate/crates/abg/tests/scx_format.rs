//! Round-trip property for the .scx text format.

use proptest::prelude::*;

use abg::complex::{make_complex, SimplicialComplex, Validation};
use abg::rat::{Rat, RatVec};
use abg::scx::{from_scx_str, to_scx_string};

/// A complex over a 3x3x3 grid of rational points, with arbitrary small
/// tops plus a singleton per vertex so every point is referenced.
fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    let top = proptest::collection::btree_set(0u32..27, 1..=4);
    proptest::collection::vec(top, 0..24).prop_map(|tops| {
        let points: Vec<RatVec> = (0..27i128)
            .map(|i| {
                RatVec(vec![
                    Rat::new(i % 3, 2),
                    Rat::from_int((i / 3) % 3),
                    Rat::new(i / 9, 3),
                ])
            })
            .collect();
        let mut simplices: Vec<Vec<u32>> = tops.into_iter().map(|t| t.into_iter().collect()).collect();
        simplices.extend((0..27).map(|v| vec![v]));
        make_complex(points, simplices, Validation::Structural).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scx_round_trip(complex in arb_complex()) {
        let text = to_scx_string(&complex);
        let back = from_scx_str(&text).unwrap();
        prop_assert_eq!(to_scx_string(&back), text);
        prop_assert_eq!(back.num_vertices(), complex.num_vertices());
        for v in 0..complex.num_vertices() {
            prop_assert_eq!(back.vertex(v as u32), complex.vertex(v as u32));
        }
        prop_assert_eq!(back.tops(), complex.tops());
    }
}
