//! Cup products of simplicial cochains via the front-face/back-face rule on
//! the global vertex order.

use crate::complex::Simplex;
use crate::error::{Error, Result};

use super::cocycle::{face_index, Cochain};
use super::homology::Ring;

/// Cup product of cocycles of degrees p and q: on each (p+q)-face, the
/// product of `a` on the first p+1 vertices and `b` on the last q+1.
pub fn cup_product(table: &[Vec<Simplex>], a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(format!(
            "cup product of {} and {} cochains",
            a.ring, b.ring
        )));
    }
    let (p, q) = (a.degree, b.degree);
    let dim = table.len() - 1;
    if p + q > dim {
        return Err(Error::DegreeOverflow(p + q, dim));
    }
    let values = table[p + q]
        .iter()
        .map(|f| {
            let ids = f.vertices();
            let front = Simplex::from_sorted(ids[..=p].to_vec());
            let back = Simplex::from_sorted(ids[p..].to_vec());
            let fa = a.values[face_index(&table[p], &front)?];
            let fb = b.values[face_index(&table[q], &back)?];
            fa.checked_mul(fb)
                .ok_or_else(|| Error::RingMismatch("cup product value overflow".into()))
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(Cochain::new(p + q, a.ring, values))
}

/// Pairs a top-degree cochain with a fundamental cycle given by one signed
/// coefficient per top face.
pub fn pair_with_class(c: &Cochain, class_signs: &[i64]) -> Result<i64> {
    if c.values.len() != class_signs.len() {
        return Err(Error::RingMismatch(
            "class and cochain live on different face sets".into(),
        ));
    }
    let total: i64 = c
        .values
        .iter()
        .zip(class_signs)
        .map(|(&v, &s)| v * s)
        .sum();
    Ok(match c.ring {
        Ring::Z => total,
        Ring::Z2 => total.rem_euclid(2),
    })
}
