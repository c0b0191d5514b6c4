//! Mod-2 intersection counts of segments with a codimension-one complex.
//!
//! Counts transverse crossings exactly. When the segment grazes the complex
//! (hits a face boundary, runs inside a hyperplane), both endpoints are
//! shifted by a tiny common vector and the count is retried; translation
//! preserves the homotopy class of a closed loop, so the parity is
//! unchanged. Arithmetic is exact bignum rational: the deepest perturbation
//! is 2^-32 raised to the ambient dimension, far past fixed-width range.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rat::RatVec;

use super::quotient::TopLifts;

/// Parity of the number of transverse crossings of segment pq with the
/// complex. With `lifts`, tops are placed by their exact lattice lifts and
/// crossings are counted against every lattice translate meeting the
/// segment; without, coordinates are taken as they are.
pub fn mod2_segment_intersection(
    complex: &SimplicialComplex,
    lifts: Option<&TopLifts>,
    p: &RatVec,
    q: &RatVec,
) -> Result<u8> {
    let n = complex.ambient_dim();
    if p.dim() != n || q.dim() != n {
        return Err(Error::DimensionOutOfRange(
            p.dim().max(q.dim()),
            "segment endpoints must live in the ambient space".into(),
        ));
    }
    if complex.dim() + 1 != n {
        return Err(Error::DimensionOutOfRange(
            complex.dim(),
            "crossing counts need codimension-one tops".into(),
        ));
    }

    let p_big = to_big(p);
    let q_big = to_big(q);
    let placements = enumerate_placements(complex, lifts, &p_big, &q_big);

    for x in [&p_big, &q_big] {
        if placements.iter().any(|pts| membership(pts, x).is_some()) {
            return Err(Error::EndpointsOnSurface);
        }
    }

    let dir: Vec<BigRational> = sub(&q_big, &p_big);
    for step in std::iter::once(None).chain((10u32..=32).map(Some)) {
        let start = match step {
            None => p_big.clone(),
            Some(j) => {
                let eps = BigRational::new(BigInt::one(), BigInt::from(2u64) << (j - 1));
                let mut s = p_big.clone();
                let mut scale = eps.clone();
                for c in &mut s {
                    *c += &scale;
                    scale *= &eps;
                }
                s
            }
        };
        if let Some(parity) = parity_pass(&placements, &start, &dir) {
            return Ok(parity);
        }
    }
    Err(Error::PerturbationExhausted)
}

/// All (top, lattice translate) point sets whose bounding box comes within
/// unit margin of the segment's. The margin absorbs every perturbation.
fn enumerate_placements(
    complex: &SimplicialComplex,
    lifts: Option<&TopLifts>,
    p: &[BigRational],
    q: &[BigRational],
) -> Vec<Vec<Vec<BigRational>>> {
    let n = complex.ambient_dim();
    let margin = BigRational::one();
    let mut seg_lo = Vec::with_capacity(n);
    let mut seg_hi = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = minmax(&p[i], &q[i]);
        seg_lo.push(lo - &margin);
        seg_hi.push(hi + &margin);
    }

    let mut out = Vec::new();
    for idx in 0..complex.tops().len() {
        let pts: Vec<Vec<BigRational>> = match lifts {
            Some(tl) => tl.lift(complex, idx).iter().map(|v| to_big(v)).collect(),
            None => complex.tops()[idx]
                .vertices()
                .iter()
                .map(|&v| to_big(complex.vertex(v)))
                .collect(),
        };
        match lifts {
            None => {
                if bbox_meets(&pts, &[], &seg_lo, &seg_hi) {
                    out.push(pts);
                }
            }
            Some(tl) => {
                let gens: Vec<Vec<BigRational>> =
                    tl.basis.generators.iter().map(|g| to_big(g)).collect();
                for gamma in translate_window(&pts, &gens, &seg_lo, &seg_hi) {
                    if bbox_meets(&pts, &gamma, &seg_lo, &seg_hi) {
                        out.push(
                            pts.iter()
                                .map(|pt| {
                                    pt.iter().zip(&gamma).map(|(a, b)| a + b).collect()
                                })
                                .collect(),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Lattice vectors that can bring the point set near the box. Generators
/// are axis multiples except the last, so coefficient windows fall out one
/// coordinate at a time: the last generator alone moves the last
/// coordinate, then each axis generator only moves its own.
fn translate_window(
    pts: &[Vec<BigRational>],
    gens: &[Vec<BigRational>],
    seg_lo: &[BigRational],
    seg_hi: &[BigRational],
) -> Vec<Vec<BigRational>> {
    let n = gens.len();
    let mut lo = pts[0].clone();
    let mut hi = pts[0].clone();
    for pt in &pts[1..] {
        for i in 0..n {
            if pt[i] < lo[i] {
                lo[i] = pt[i].clone();
            }
            if pt[i] > hi[i] {
                hi[i] = pt[i].clone();
            }
        }
    }

    let last_step = &gens[n - 1][n - 1];
    let a_last_min = ceil_div(&(&seg_lo[n - 1] - &hi[n - 1]), last_step);
    let a_last_max = floor_div(&(&seg_hi[n - 1] - &lo[n - 1]), last_step);

    let mut out = Vec::new();
    let mut a_last = a_last_min.clone();
    while a_last <= a_last_max {
        let a_last_rat = BigRational::from_integer(a_last.clone());
        let mut ranges: Vec<(BigInt, BigInt)> = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let drift = &a_last_rat * &gens[n - 1][i];
            let step = &gens[i][i];
            let min = ceil_div(&(&(&seg_lo[i] - &hi[i]) - &drift), step);
            let max = floor_div(&(&(&seg_hi[i] - &lo[i]) - &drift), step);
            ranges.push((min, max));
        }
        let mut counter: Vec<BigInt> = ranges.iter().map(|(min, _)| min.clone()).collect();
        'fill: loop {
            let mut gamma: Vec<BigRational> = vec![BigRational::zero(); n];
            for i in 0..n - 1 {
                let coeff = BigRational::from_integer(counter[i].clone());
                for (gc, g) in gamma.iter_mut().zip(&gens[i]) {
                    *gc += &coeff * g;
                }
            }
            for (gc, g) in gamma.iter_mut().zip(&gens[n - 1]) {
                *gc += &a_last_rat * g;
            }
            out.push(gamma);
            let mut pos = 0;
            loop {
                if pos == n - 1 {
                    break 'fill;
                }
                counter[pos] += 1;
                if counter[pos] <= ranges[pos].1 {
                    break;
                }
                counter[pos] = ranges[pos].0.clone();
                pos += 1;
            }
        }
        a_last += 1;
    }
    out
}

fn bbox_meets(
    pts: &[Vec<BigRational>],
    gamma: &[BigRational],
    seg_lo: &[BigRational],
    seg_hi: &[BigRational],
) -> bool {
    let n = seg_lo.len();
    for i in 0..n {
        let shift = gamma.get(i).cloned().unwrap_or_else(BigRational::zero);
        let mut lo = &pts[0][i] + &shift;
        let mut hi = lo.clone();
        for pt in &pts[1..] {
            let c = &pt[i] + &shift;
            if c < lo {
                lo = c.clone();
            }
            if c > hi {
                hi = c;
            }
        }
        if hi < seg_lo[i] || lo > seg_hi[i] {
            return false;
        }
    }
    true
}

/// One full crossing count; None when any placement is degenerate and the
/// caller should perturb and retry.
fn parity_pass(
    placements: &[Vec<Vec<BigRational>>],
    start: &[BigRational],
    dir: &[BigRational],
) -> Option<u8> {
    let mut parity = 0u8;
    for pts in placements {
        match classify(pts, start, dir) {
            Crossing::Transverse => parity ^= 1,
            Crossing::Disjoint => {}
            Crossing::Degenerate => return None,
        }
    }
    Some(parity)
}

enum Crossing {
    Transverse,
    Disjoint,
    Degenerate,
}

/// Classifies the meeting of segment {start + t dir : t in [0,1]} with the
/// closed simplex on `pts` (n points in n-space). Solves for barycentric
/// weights and t; strict interior solutions are transverse, boundary
/// solutions and singular-but-consistent systems are degenerate.
fn classify(pts: &[Vec<BigRational>], start: &[BigRational], dir: &[BigRational]) -> Crossing {
    let n = start.len();
    debug_assert_eq!(pts.len(), n);
    // Unknowns: n barycentric weights, then t.
    let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    for r in 0..n {
        let mut row: Vec<BigRational> = pts.iter().map(|pt| pt[r].clone()).collect();
        row.push(-&dir[r]);
        row.push(start[r].clone());
        m.push(row);
    }
    let mut last: Vec<BigRational> = vec![BigRational::one(); n];
    last.push(BigRational::zero());
    last.push(BigRational::one());
    m.push(last);

    match gauss_solve(m) {
        SolveOutcome::Inconsistent => Crossing::Disjoint,
        SolveOutcome::Underdetermined => Crossing::Degenerate,
        SolveOutcome::Unique(sol) => {
            let t = &sol[n];
            if t <= &BigRational::zero() || t >= &BigRational::one() {
                if *t == BigRational::zero() || *t == BigRational::one() {
                    // Endpoint exactly on the simplex's hyperplane: only
                    // degenerate if it also touches the simplex.
                    if sol[..n].iter().all(|l| !l.is_negative()) {
                        return Crossing::Degenerate;
                    }
                }
                return Crossing::Disjoint;
            }
            if sol[..n].iter().any(|l| l.is_negative()) {
                Crossing::Disjoint
            } else if sol[..n].iter().any(|l| l.is_zero()) {
                Crossing::Degenerate
            } else {
                Crossing::Transverse
            }
        }
    }
}

enum SolveOutcome {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Gaussian elimination on an m x (m+1) augmented system.
fn gauss_solve(mut a: Vec<Vec<BigRational>>) -> SolveOutcome {
    let m = a.len();
    let mut row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..m {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for c in col..=m {
            a[row][c] *= &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=m {
                    let delta = &f * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    if row < m {
        if (row..m).any(|r| !a[r][m].is_zero()) {
            return SolveOutcome::Inconsistent;
        }
        return SolveOutcome::Underdetermined;
    }
    let mut sol = vec![BigRational::zero(); m];
    for (r, c) in pivots {
        sol[c] = a[r][m].clone();
    }
    SolveOutcome::Unique(sol)
}

/// Barycentric weights of x in the closed simplex, or None when x is
/// outside its affine hull or has a negative weight.
fn membership(pts: &[Vec<BigRational>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = x.len();
    // Overdetermined (n+1) x k system solved by elimination with a
    // consistency check; k = pts.len().
    let k = pts.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    for r in 0..n {
        let mut row: Vec<BigRational> = pts.iter().map(|pt| pt[r].clone()).collect();
        row.push(x[r].clone());
        a.push(row);
    }
    let mut last: Vec<BigRational> = vec![BigRational::one(); k];
    last.push(BigRational::one());
    a.push(last);

    let rows = a.len();
    let mut row = 0;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..k {
        let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for c in col..=k {
            a[row][c] *= &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    let delta = &f * &a[row][c];
                    a[r][c] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if (row..rows).any(|r| !a[r][k].is_zero()) {
        return None; // off the affine hull
    }
    if pivots.len() < k {
        return None; // degenerate point set, treat as no membership
    }
    let mut sol = vec![BigRational::zero(); k];
    for (r, c) in pivots {
        sol[c] = a[r][k].clone();
    }
    sol.iter().all(|l| !l.is_negative()).then_some(sol)
}

fn to_big(v: &RatVec) -> Vec<BigRational> {
    v.0.iter()
        .map(|c| BigRational::new(BigInt::from(c.numer()), BigInt::from(c.denom())))
        .collect()
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn minmax(a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn ceil_div(num: &BigRational, den: &BigRational) -> BigInt {
    (num / den).ceil().to_integer()
}

fn floor_div(num: &BigRational, den: &BigRational) -> BigInt {
    (num / den).floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{make_complex, Validation};
    use crate::rat::Rat;

    fn tetra_boundary() -> SimplicialComplex {
        let vertices = vec![
            RatVec::from_ints(&[0, 0, 0]),
            RatVec::from_ints(&[1, 0, 0]),
            RatVec::from_ints(&[0, 1, 0]),
            RatVec::from_ints(&[0, 0, 1]),
        ];
        let tops = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ];
        make_complex(vertices, tops, Validation::Geometric).unwrap()
    }

    fn rv(coords: &[Rat]) -> RatVec {
        RatVec(coords.to_vec())
    }

    #[test]
    fn inside_to_outside_crosses_once() {
        let sphere = tetra_boundary();
        let p = rv(&[Rat::new(1, 5), Rat::new(1, 6), Rat::new(1, 7)]);
        let q = rv(&[Rat::from_int(2), Rat::from_int(2), Rat::from_int(2)]);
        assert_eq!(mod2_segment_intersection(&sphere, None, &p, &q).unwrap(), 1);
    }

    #[test]
    fn outside_segments_cross_evenly() {
        let sphere = tetra_boundary();
        let p = rv(&[Rat::from_int(2), Rat::from_int(2), Rat::from_int(2)]);
        let q = rv(&[Rat::from_int(3), Rat::new(5, 2), Rat::from_int(2)]);
        assert_eq!(mod2_segment_intersection(&sphere, None, &p, &q).unwrap(), 0);

        // Through and through: enters and leaves.
        let a = rv(&[Rat::from_int(-1), Rat::new(1, 7), Rat::new(1, 9)]);
        let b = rv(&[Rat::from_int(2), Rat::new(1, 7), Rat::new(1, 9)]);
        assert_eq!(mod2_segment_intersection(&sphere, None, &a, &b).unwrap(), 0);
    }

    #[test]
    fn endpoint_on_face_is_rejected() {
        let sphere = tetra_boundary();
        let p = rv(&[Rat::new(1, 3), Rat::new(1, 3), Rat::new(1, 3)]);
        let q = rv(&[Rat::from_int(2), Rat::from_int(2), Rat::from_int(2)]);
        assert!(matches!(
            mod2_segment_intersection(&sphere, None, &p, &q),
            Err(Error::EndpointsOnSurface)
        ));
    }

    #[test]
    fn grazing_segment_resolves_by_perturbation() {
        let sphere = tetra_boundary();
        // The x axis contains a whole edge of the tetrahedron, so the
        // unperturbed pass is degenerate; the shifted segment slides just
        // inside and crosses two faces.
        let p = rv(&[Rat::from_int(-1), Rat::ZERO, Rat::ZERO]);
        let q = rv(&[Rat::from_int(2), Rat::ZERO, Rat::ZERO]);
        assert_eq!(mod2_segment_intersection(&sphere, None, &p, &q).unwrap(), 0);
    }
}
