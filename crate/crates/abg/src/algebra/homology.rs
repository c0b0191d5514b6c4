use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

use super::matrix::{gf2_rank, SparseMat};
use super::snf::{smith_normal_form, SnfOutcome};

/// Coefficient ring for homology and cohomology computations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Ring {
    Z,
    Z2,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Z2 => write!(f, "Z2"),
        }
    }
}

/// Homology of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDescriptor {
    pub degree: usize,
    pub ring: Ring,
    pub betti: usize,
    /// Orders of the finite cyclic summands, in divisibility order.
    /// Always empty over `Z2`.
    pub torsion: Vec<BigInt>,
}

/// The boundary maps of a finite chain complex of free modules, together
/// with the cell counts per degree. `boundary(d)` maps degree `d` to `d-1`.
pub struct BoundaryMaps {
    pub cell_counts: Vec<usize>,
    maps: Vec<SparseMat>,
}

impl BoundaryMaps {
    pub fn new(cell_counts: Vec<usize>, maps: Vec<SparseMat>) -> BoundaryMaps {
        debug_assert_eq!(maps.len() + 1, cell_counts.len().max(1));
        for (d, m) in maps.iter().enumerate() {
            debug_assert_eq!(m.rows, cell_counts[d]);
            debug_assert_eq!(m.cols, cell_counts[d + 1]);
        }
        BoundaryMaps { cell_counts, maps }
    }

    pub fn dim(&self) -> usize {
        self.cell_counts.len() - 1
    }

    pub fn boundary(&self, d: usize) -> &SparseMat {
        &self.maps[d - 1]
    }

    /// Verifies that consecutive boundary maps compose to zero.
    pub fn is_chain_complex(&self) -> bool {
        (2..=self.dim()).all(|d| self.boundary(d - 1).multiply(self.boundary(d)).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Boundary matrix from the sorted face lists of adjacent dimensions.
/// Column `j` is the alternating sum of the facets of the `j`-th upper face.
pub fn assemble_boundary(lower: &[Simplex], upper: &[Simplex]) -> SparseMat {
    let columns: Vec<Vec<(u32, i64)>> = upper
        .iter()
        .map(|u| {
            let mut col: Vec<(u32, i64)> = (0..u.vertices().len())
                .map(|i| {
                    let facet = u.facet(i);
                    let row = lower
                        .binary_search(&facet)
                        .expect("facet missing from face table");
                    (row as u32, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect();
    SparseMat::from_columns(lower.len(), columns)
}

/// Boundary maps of a simplicial complex, assembled from its face table.
pub fn boundary_maps_from_complex(complex: &SimplicialComplex) -> BoundaryMaps {
    let table = complex.face_table();
    boundary_maps_from_table(&table)
}

pub fn boundary_maps_from_table(table: &[Vec<Simplex>]) -> BoundaryMaps {
    let counts: Vec<usize> = table.iter().map(Vec::len).collect();
    let maps: Vec<SparseMat> = (1..table.len())
        .map(|d| assemble_boundary(&table[d - 1], &table[d]))
        .collect();
    BoundaryMaps::new(counts, maps)
}

/// Homology in a single degree over the chosen ring.
pub fn homology(maps: &BoundaryMaps, degree: usize, ring: Ring) -> Result<HomologyDescriptor> {
    if degree > maps.dim() {
        return Err(Error::DegreeOutOfRange(degree, maps.dim()));
    }
    let n = maps.cell_counts[degree];
    let (rank_in, torsion) = if degree < maps.dim() {
        match ring {
            Ring::Z => {
                let snf = smith_normal_form(maps.boundary(degree + 1));
                let torsion: Vec<BigInt> = snf
                    .invariant_factors
                    .iter()
                    .filter(|f| !f.is_one())
                    .cloned()
                    .collect();
                (snf.rank, torsion)
            }
            Ring::Z2 => (gf2_rank(maps.boundary(degree + 1)), Vec::new()),
        }
    } else {
        (0, Vec::new())
    };
    let rank_out = if degree > 0 {
        match ring {
            Ring::Z => smith_normal_form(maps.boundary(degree)).rank,
            Ring::Z2 => gf2_rank(maps.boundary(degree)),
        }
    } else {
        0
    };
    let betti = n - rank_out - rank_in;
    Ok(HomologyDescriptor {
        degree,
        ring,
        betti,
        torsion,
    })
}

/// Integral homology in all degrees, computing each Smith normal form once.
pub fn homology_all(maps: &BoundaryMaps) -> Vec<HomologyDescriptor> {
    let dim = maps.dim();
    let snfs: Vec<SnfOutcome> = (1..=dim)
        .map(|d| smith_normal_form(maps.boundary(d)))
        .collect();
    (0..=dim)
        .map(|d| {
            let rank_out = if d > 0 { snfs[d - 1].rank } else { 0 };
            let (rank_in, torsion) = if d < dim {
                let snf = &snfs[d];
                (
                    snf.rank,
                    snf.invariant_factors
                        .iter()
                        .filter(|f| !f.is_one())
                        .cloned()
                        .collect(),
                )
            } else {
                (0, Vec::new())
            };
            HomologyDescriptor {
                degree: d,
                ring: Ring::Z,
                betti: maps.cell_counts[d] - rank_out - rank_in,
                torsion,
            }
        })
        .collect()
}

/// Integral homology of a complex in all degrees.
pub fn homology_summary(complex: &SimplicialComplex) -> Result<Vec<HomologyDescriptor>> {
    let maps = boundary_maps_from_complex(complex);
    debug_assert!(maps.is_chain_complex());
    Ok(homology_all(&maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{make_complex, Validation};
    use crate::rat::RatVec;

    fn sphere2() -> SimplicialComplex {
        make_complex(
            vec![
                RatVec::from_ints(&[0, 0, 0]),
                RatVec::from_ints(&[1, 0, 0]),
                RatVec::from_ints(&[0, 1, 0]),
                RatVec::from_ints(&[0, 0, 1]),
            ],
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            Validation::Geometric,
        )
        .unwrap()
    }

    #[test]
    fn sphere_homology() {
        let maps = boundary_maps_from_complex(&sphere2());
        assert!(maps.is_chain_complex());
        let h = homology_all(&maps);
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 0);
        assert_eq!(h[2].betti, 1);
        assert!(h.iter().all(|d| d.torsion.is_empty()));
        // Mod-2 agrees for a sphere.
        for d in 0..=2 {
            let hd = homology(&maps, d, Ring::Z2).unwrap();
            assert_eq!(hd.betti, h[d].betti);
        }
        assert!(homology(&maps, 3, Ring::Z).is_err());
    }

    #[test]
    fn circle_betti() {
        // Triangle boundary: b0 = b1 = 1.
        let c = make_complex(
            vec![
                RatVec::from_ints(&[0, 0]),
                RatVec::from_ints(&[1, 0]),
                RatVec::from_ints(&[0, 1]),
            ],
            vec![vec![0, 1], vec![0, 2], vec![1, 2]],
            Validation::Geometric,
        )
        .unwrap();
        let maps = boundary_maps_from_complex(&c);
        let h = homology_all(&maps);
        assert_eq!((h[0].betti, h[1].betti), (1, 1));
        assert_eq!(maps.euler_characteristic(), 0);
    }
}
