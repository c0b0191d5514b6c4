//! Cubical lattices in odd-dimensional space and their quotient tori.
//!
//! Everything here lives in dimension n = 2k+1. Two translation lattices
//! appear: the full group, generated by L along each of the first 2k axes
//! plus one mixing translation by (1/2, ..., 1/2, 1/2 + L), and its index-2
//! subgroup where the mixing translation is doubled (hence integral). The
//! quotient machinery triangulates the torus by half-integer Kuhn cubes and
//! keeps exact rational lifts for every simplex orbit.

pub mod intersect;
pub mod kuhn;
pub mod oracle;
pub mod quotient;

pub use intersect::mod2_segment_intersection;
pub use kuhn::{cube_triangulation, kuhn_triangulation};
pub use oracle::{cell_count_closed_forms, cubical_cell_count, euler_from_cell_counts};
pub use quotient::{
    skeleton_face_counts, skeleton_subcomplex, subdivide_quotient, triangulate_quotient,
    verify_dual_split, verify_equivariance, verify_fullness, QuotientComplex, Skeleton,
    SubdividedQuotient, TopLifts, TopOrbit,
};

use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

/// Which of the two lattices a construction quotients by.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GroupKind {
    /// Full lattice: the mixing translation itself is a generator. The
    /// quotient hypersurface is non-orientable; the mixing translation swaps
    /// the two skeleta.
    G,
    /// Index-2 sublattice with the mixing translation doubled. All
    /// generators are integral, so integrality of coordinates descends to
    /// the quotient and both skeleta are preserved.
    Ghat,
}

impl std::fmt::Display for GroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupKind::G => "G",
            GroupKind::Ghat => "Ghat",
        })
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupKind> {
        match s {
            "G" => Ok(GroupKind::G),
            "Ghat" => Ok(GroupKind::Ghat),
            other => Err(Error::ParseError(format!(
                "unknown group kind {:?} (expected G or Ghat)",
                other
            ))),
        }
    }
}

/// Size parameters of one construction instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConstructionParams {
    pub k: u32,
    pub l: u32,
    pub group: GroupKind,
}

impl ConstructionParams {
    pub fn new(k: u32, l: u32, group: GroupKind) -> Result<ConstructionParams> {
        if k < 1 {
            return Err(Error::ParamMismatch("k must be at least 1".into()));
        }
        if l < 1 {
            return Err(Error::ParamMismatch("L must be at least 1".into()));
        }
        Ok(ConstructionParams { k, l, group })
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.k as usize + 1
    }

    /// Dimension of the integral skeleton (and of its shifted copy).
    pub fn skeleton_dim(&self) -> usize {
        self.k as usize
    }

    pub fn with_group(&self, group: GroupKind) -> ConstructionParams {
        ConstructionParams { group, ..*self }
    }
}

/// A concrete generating set for one of the two lattices, plus the chart
/// box of canonical representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeBasis {
    pub params: ConstructionParams,
    /// n generators: L e_1, ..., L e_2k, then the mixing translation
    /// (doubled for the index-2 lattice). Only the last generator has a
    /// nonzero final coordinate.
    pub generators: Vec<RatVec>,
}

impl LatticeBasis {
    pub fn new(params: ConstructionParams) -> LatticeBasis {
        let n = params.ambient_dim();
        let l = Rat::from_int(params.l as i128);
        let mut generators = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let mut g = RatVec::zeros(n);
            g.0[i] = l;
            generators.push(g);
        }
        let mixing = mixing_translation(params);
        generators.push(match params.group {
            GroupKind::G => mixing,
            GroupKind::Ghat => mixing.scale(Rat::from_int(2)),
        });
        LatticeBasis { params, generators }
    }

    pub fn ambient_dim(&self) -> usize {
        self.params.ambient_dim()
    }

    /// Height of the chart box in the last coordinate: the last coordinate
    /// of the final generator.
    pub fn last_period(&self) -> Rat {
        *self.generators[self.ambient_dim() - 1]
            .0
            .last()
            .unwrap()
    }

    /// Volume of a fundamental domain, in units of unit cubes.
    pub fn covolume(&self) -> Rat {
        let l = Rat::from_int(self.params.l as i128);
        let mut v = Rat::ONE;
        for _ in 0..self.ambient_dim() - 1 {
            v = v * l;
        }
        v * self.last_period()
    }

    /// The canonical representative of `p` modulo the lattice: reduce the
    /// last coordinate by integer multiples of the final generator, then
    /// each remaining coordinate into [0, L). Idempotent, and the
    /// difference from `p` is always a lattice vector.
    pub fn canonical_rep(&self, p: &RatVec) -> RatVec {
        debug_assert_eq!(p.dim(), self.ambient_dim());
        let n = self.ambient_dim();
        let c = self.last_period();
        let a_last = (p.0[n - 1] / c).floor();
        let mut q = p.sub(&self.generators[n - 1].scale(Rat::from_int(a_last)));
        let l = Rat::from_int(self.params.l as i128);
        for i in 0..n - 1 {
            let a = (q.0[i] / l).floor();
            q.0[i] = q.0[i] - l * Rat::from_int(a);
        }
        q
    }

    /// Integer coordinates of `w` in this basis, or None when `w` is not a
    /// lattice vector. Closed form: only the last generator touches the
    /// last coordinate, and the first 2k generators are axis multiples.
    pub fn decompose(&self, w: &RatVec) -> Option<Vec<i64>> {
        debug_assert_eq!(w.dim(), self.ambient_dim());
        let n = self.ambient_dim();
        let c = self.last_period();
        let a_last = w.0[n - 1] / c;
        if !a_last.is_integral() {
            return None;
        }
        let last = self.generators[n - 1].scale(a_last);
        let l = Rat::from_int(self.params.l as i128);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n - 1 {
            let a = (w.0[i] - last.0[i]) / l;
            if !a.is_integral() {
                return None;
            }
            coeffs.push(a.numer() as i64);
        }
        coeffs.push(a_last.numer() as i64);
        Some(coeffs)
    }

    /// The lattice vector with the given basis coefficients.
    pub fn combine(&self, coeffs: &[i64]) -> RatVec {
        debug_assert_eq!(coeffs.len(), self.ambient_dim());
        let mut v = RatVec::zeros(self.ambient_dim());
        for (g, &a) in self.generators.iter().zip(coeffs) {
            if a != 0 {
                v = v.add(&g.scale(Rat::from_int(a as i128)));
            }
        }
        v
    }

    pub fn contains(&self, w: &RatVec) -> bool {
        self.decompose(w).is_some()
    }
}

/// The translation (1/2, ..., 1/2, 1/2 + L) that mixes the two skeleta.
pub fn mixing_translation(params: ConstructionParams) -> RatVec {
    let n = params.ambient_dim();
    let mut v = RatVec(vec![Rat::HALF; n]);
    v.0[n - 1] = Rat::HALF + Rat::from_int(params.l as i128);
    v
}

/// Whether a point lies in the integral skeleton (at least k+1 integer
/// coordinates) or in its half-shifted copy (at least k+1 coordinates in
/// 1/2 + Z). A point of the half-integer grid lies in exactly one of the
/// two: with 2k+1 coordinates, k+1 integral and k+1 half-integral cannot
/// coexist.
pub fn point_in_skeleton(p: &RatVec, k: usize, shifted: bool) -> bool {
    let needed = k + 1;
    let mut hits = 0;
    for c in &p.0 {
        let on = if shifted {
            c.is_half_integral()
        } else {
            c.is_integral()
        };
        if on {
            hits += 1;
            if hits >= needed {
                return true;
            }
        }
    }
    false
}

/// Whether the affine span of `points` lies inside the (shifted) skeleton:
/// at least k+1 coordinates must be constant across the points and integral
/// (resp. half-integral) there.
pub fn span_in_skeleton(points: &[RatVec], k: usize, shifted: bool) -> bool {
    let dim = points[0].dim();
    let needed = k + 1;
    let mut hits = 0;
    for c in 0..dim {
        let v = points[0].0[c];
        let flat = if shifted {
            v.is_half_integral()
        } else {
            v.is_integral()
        };
        if flat && points[1..].iter().all(|p| p.0[c] == v) {
            hits += 1;
            if hits >= needed {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, l: u32, group: GroupKind) -> ConstructionParams {
        ConstructionParams::new(k, l, group).unwrap()
    }

    #[test]
    fn basis_shapes() {
        let b = LatticeBasis::new(params(1, 1, GroupKind::Ghat));
        assert_eq!(b.generators.len(), 3);
        assert_eq!(b.generators[0], RatVec::from_ints(&[1, 0, 0]));
        assert_eq!(b.generators[2], RatVec::from_ints(&[1, 1, 3]));
        assert_eq!(b.covolume(), Rat::from_int(3));

        let b = LatticeBasis::new(params(1, 1, GroupKind::G));
        assert_eq!(
            b.generators[2],
            RatVec(vec![Rat::HALF, Rat::HALF, Rat::new(3, 2)])
        );
        assert_eq!(b.covolume(), Rat::new(3, 2));

        let b = LatticeBasis::new(params(2, 2, GroupKind::Ghat));
        assert_eq!(b.generators.len(), 5);
        assert_eq!(b.covolume(), Rat::from_int(16 * 5));
    }

    #[test]
    fn canonical_rep_reduces_and_is_idempotent() {
        let b = LatticeBasis::new(params(1, 1, GroupKind::Ghat));
        // An axis generator reduces to the origin.
        assert_eq!(
            b.canonical_rep(&RatVec::from_ints(&[1, 0, 0])),
            RatVec::zeros(3)
        );
        // Reduction along the mixing generator, then axes.
        assert_eq!(
            b.canonical_rep(&RatVec::from_ints(&[0, 0, 3])),
            RatVec::zeros(3)
        );
        let p = RatVec(vec![Rat::new(7, 2), Rat::new(-3, 2), Rat::new(11, 2)]);
        let r = b.canonical_rep(&p);
        assert_eq!(b.canonical_rep(&r), r);
        assert!(b.contains(&p.sub(&r)));
        // Chart box membership.
        assert!(r.0[0] >= Rat::ZERO && r.0[0] < Rat::ONE);
        assert!(r.0[2] >= Rat::ZERO && r.0[2] < Rat::from_int(3));
    }

    #[test]
    fn decompose_round_trips() {
        for group in [GroupKind::G, GroupKind::Ghat] {
            let b = LatticeBasis::new(params(2, 2, group));
            let coeffs = vec![3, -1, 0, 2, -2];
            let w = b.combine(&coeffs);
            assert_eq!(b.decompose(&w), Some(coeffs));
        }
        let b = LatticeBasis::new(params(1, 1, GroupKind::Ghat));
        // The undoubled mixing translation is not in the index-2 lattice.
        assert_eq!(
            b.decompose(&mixing_translation(params(1, 1, GroupKind::Ghat))),
            None
        );
        assert!(LatticeBasis::new(params(1, 1, GroupKind::G))
            .contains(&mixing_translation(params(1, 1, GroupKind::G))));
    }

    #[test]
    fn skeleton_membership() {
        let k = 1;
        let p = RatVec(vec![Rat::ZERO, Rat::HALF, Rat::ONE]);
        assert!(point_in_skeleton(&p, k, false));
        assert!(!point_in_skeleton(&p, k, true));
        let q = RatVec(vec![Rat::HALF, Rat::new(3, 2), Rat::ONE]);
        assert!(point_in_skeleton(&q, k, true));
        // A segment along the last axis at integral first coordinates.
        let a = RatVec::from_ints(&[0, 1, 0]);
        let b = RatVec(vec![Rat::ZERO, Rat::ONE, Rat::HALF]);
        assert!(span_in_skeleton(&[a.clone(), b.clone()], k, false));
        assert!(!span_in_skeleton(&[a, b], k, true));
    }

    #[test]
    fn param_guards() {
        assert!(ConstructionParams::new(0, 1, GroupKind::G).is_err());
        assert!(ConstructionParams::new(1, 0, GroupKind::G).is_err());
    }
}
