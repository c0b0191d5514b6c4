//! Cochains on the face table of a complex, coboundary verification, and
//! detection of nonzero cohomology classes.

use crate::complex::{Simplex, VertexId};
use crate::error::{Error, Result};

use super::cover::map_with_sign;
use super::homology::{assemble_boundary, Ring};
use super::matrix::gf2_solvable;
use super::snf::solvable_over_z;

/// A cochain of fixed degree, with one value per face of that degree in the
/// sorted face list. Over `Z2` the values are normalized to 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<i64>,
}

impl Cochain {
    pub fn new(degree: usize, ring: Ring, mut values: Vec<i64>) -> Cochain {
        if ring == Ring::Z2 {
            for v in &mut values {
                *v = v.rem_euclid(2);
            }
        }
        Cochain {
            degree,
            ring,
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

pub fn face_index(faces: &[Simplex], s: &Simplex) -> Result<usize> {
    faces
        .binary_search(s)
        .map_err(|_| Error::SimplexNotInComplex(s.vertices().to_vec()))
}

/// Verifies that the coboundary of `c` vanishes on every face one dimension
/// up: the alternating sum of `c` over facets is zero (even, over `Z2`).
pub fn verify_cocycle(table: &[Vec<Simplex>], c: &Cochain) -> Result<()> {
    let d = c.degree;
    if d + 1 >= table.len() {
        return Ok(()); // no faces one dimension up: trivially closed
    }
    debug_assert_eq!(c.values.len(), table[d].len());
    for upper in &table[d + 1] {
        let mut sum = 0i64;
        for i in 0..=d + 1 {
            let facet = upper.facet(i);
            let idx = face_index(&table[d], &facet)?;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sum += sign * c.values[idx];
        }
        let bad = match c.ring {
            Ring::Z => sum != 0,
            Ring::Z2 => sum % 2 != 0,
        };
        if bad {
            return Err(Error::NotACocycle(upper.vertices().to_vec()));
        }
    }
    Ok(())
}

/// Whether the class of the cocycle is nonzero: there is no cochain one
/// degree down whose coboundary equals `c`. Degree-zero cocycles are nonzero
/// exactly when nonzero as functions.
pub fn cohomology_class_is_nonzero(table: &[Vec<Simplex>], c: &Cochain) -> Result<bool> {
    verify_cocycle(table, c)?;
    let d = c.degree;
    if d == 0 {
        return Ok(!c.is_zero());
    }
    // delta f = c with f on (d-1)-faces: the coefficient matrix is the
    // transpose of the boundary map from degree d to d-1.
    let boundary = assemble_boundary(&table[d - 1], &table[d]);
    let coboundary = boundary.transpose();
    let solvable = match c.ring {
        Ring::Z => solvable_over_z(&coboundary, &c.values),
        Ring::Z2 => {
            let rhs: Vec<bool> = c.values.iter().map(|&v| v % 2 != 0).collect();
            gf2_solvable(&coboundary, &rhs)
        }
    };
    Ok(!solvable)
}

/// Whether two cocycles of the same degree and ring are cohomologous.
pub fn cohomologous(table: &[Vec<Simplex>], a: &Cochain, b: &Cochain) -> Result<bool> {
    if a.ring != b.ring || a.degree != b.degree {
        return Err(Error::RingMismatch(
            "cocycles differ in ring or degree".into(),
        ));
    }
    let diff = Cochain::new(
        a.degree,
        a.ring,
        a.values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| x - y)
            .collect(),
    );
    if diff.is_zero() {
        return Ok(true);
    }
    Ok(!cohomology_class_is_nonzero(table, &diff)?)
}

/// Pullback of a cochain along a simplicial map given by images of vertices.
/// Faces with degenerate image get value zero; nondegenerate images pick up
/// the sign of the vertex-sorting permutation (irrelevant over `Z2`).
pub fn pullback(
    source_table: &[Vec<Simplex>],
    target_table: &[Vec<Simplex>],
    vertex_map: &[VertexId],
    c: &Cochain,
) -> Result<Cochain> {
    let d = c.degree;
    let values = source_table[d]
        .iter()
        .map(|f| {
            let Some((img, sign)) = map_with_sign(f, vertex_map) else {
                return Ok(0);
            };
            let idx = face_index(&target_table[d], &img)?;
            Ok(match c.ring {
                Ring::Z => sign * c.values[idx],
                Ring::Z2 => c.values[idx],
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(Cochain::new(d, c.ring, values))
}

/// Evaluates a cochain against a chain in its own degree, given as
/// (face index, coefficient) pairs.
pub fn evaluate(c: &Cochain, chain: &[(usize, i64)]) -> i64 {
    let total: i64 = chain
        .iter()
        .map(|&(idx, coeff)| coeff * c.values[idx])
        .sum();
    match c.ring {
        Ring::Z => total,
        Ring::Z2 => total.rem_euclid(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{make_complex, Validation};
    use crate::rat::RatVec;

    /// Boundary of a triangle: a circle with 3 edges.
    fn circle() -> Vec<Vec<Simplex>> {
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
        c.face_table()
    }

    #[test]
    fn winding_cocycle_is_nonzero() {
        let table = circle();
        // Edges sorted: {0,1}, {0,2}, {1,2}. Orient the circle 0->1->2->0:
        // traversal uses {0,1} forward (+1), {1,2} forward (+1), {0,2}
        // backward. A 1-cocycle dual to one crossing: value 1 on {0,1} only.
        let c = Cochain::new(1, Ring::Z, vec![1, 0, 0]);
        verify_cocycle(&table, &c).unwrap();
        assert!(cohomology_class_is_nonzero(&table, &c).unwrap());
        // The coboundary of the indicator of vertex 0 is zero on no edge:
        // delta f {0,1} = f(1)-f(0) = -1 etc; it is a coboundary, class zero.
        let cb = Cochain::new(1, Ring::Z, vec![-1, -1, 0]);
        verify_cocycle(&table, &cb).unwrap();
        assert!(!cohomology_class_is_nonzero(&table, &cb).unwrap());
        // And the two differ by a coboundary plus the nonzero class.
        assert!(!cohomologous(&table, &c, &cb).unwrap());
        // Same class, different representative: moving the crossing from
        // edge {0,1} to edge {1,2} adds the coboundary of vertex 1.
        let shifted = Cochain::new(1, Ring::Z, vec![0, 0, 1]);
        assert!(cohomologous(&table, &c, &shifted).unwrap());
        // The coboundary of vertex 2 looks similar but has winding zero.
        let vertex2 = Cochain::new(1, Ring::Z, vec![0, 1, 1]);
        assert!(!cohomologous(&table, &c, &vertex2).unwrap());
    }

    #[test]
    fn filled_triangle_kills_class() {
        let c = make_complex(
            vec![
                RatVec::from_ints(&[0, 0]),
                RatVec::from_ints(&[1, 0]),
                RatVec::from_ints(&[0, 1]),
            ],
            vec![vec![0, 1, 2]],
            Validation::Geometric,
        )
        .unwrap();
        let table = c.face_table();
        // On a disk every 1-cocycle bounds.
        let z = Cochain::new(1, Ring::Z, vec![1, 1, 0]);
        verify_cocycle(&table, &z).unwrap();
        assert!(!cohomology_class_is_nonzero(&table, &z).unwrap());
        // A non-cocycle is rejected.
        let bad = Cochain::new(1, Ring::Z, vec![1, 0, 0]);
        assert!(matches!(
            verify_cocycle(&table, &bad),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn mod2_class_on_circle() {
        let table = circle();
        let c = Cochain::new(1, Ring::Z2, vec![1, 0, 0]);
        verify_cocycle(&table, &c).unwrap();
        assert!(cohomology_class_is_nonzero(&table, &c).unwrap());
        let even = Cochain::new(1, Ring::Z2, vec![1, 1, 0]);
        // 1 on {0,1} and {0,2}: this is the mod-2 coboundary of vertex 0.
        assert!(!cohomology_class_is_nonzero(&table, &even).unwrap());
    }
}
