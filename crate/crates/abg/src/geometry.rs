//! Exact linear algebra over the rationals: rank, determinants, simplex
//! volume, barycentric coordinates, and the arbitrary-precision intersection
//! test used to validate that simplices of a geometric complex meet only
//! along common faces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rat::{Rat, RatVec};

/// Rank of the matrix whose rows are the given vectors.
pub fn rank(rows: &[RatVec]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.0.clone()).collect();
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col] * inv;
            for c in col..cols {
                let sub = m[rank][c] * factor;
                m[r][c] = m[r][c] - sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// True when the points are affinely independent (span a simplex of
/// dimension `points.len() - 1`).
pub fn affinely_independent(points: &[RatVec]) -> bool {
    if points.len() <= 1 {
        return !points.is_empty();
    }
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    rank(&diffs) == points.len() - 1
}

/// Determinant of a square matrix by fraction-free-ish Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = Rat::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::ZERO;
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = det * m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col] * inv;
            for c in col..n {
                let sub = m[col][c] * factor;
                m[r][c] = m[r][c] - sub;
            }
        }
    }
    det
}

/// Euclidean volume of a full-dimensional simplex given by `dim + 1` points:
/// `|det(p_i - p_0)| / dim!`.
pub fn simplex_volume(points: &[RatVec]) -> Rat {
    let dim = points.len() - 1;
    debug_assert_eq!(points[0].dim(), dim, "simplex must be full-dimensional");
    let rows: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).0)
        .collect();
    let mut f = Rat::ONE;
    for i in 2..=dim as i128 {
        f = f * Rat::from_int(i);
    }
    determinant(rows).abs() / f
}

/// Solves the square system `A x = b` over the rationals.
/// Returns `None` when `A` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = m[col][c] * inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col];
            for c in col..=n {
                let sub = m[col][c] * factor;
                m[r][c] = m[r][c] - sub;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

/// Barycentric coordinates of `p` with respect to an affinely independent
/// point set, or `None` when `p` lies outside their affine hull.
///
/// Solved via the augmented system: sum of weights is 1 and the weighted
/// points reproduce `p`. The simplex need not be full-dimensional; the
/// overdetermined system is consistent exactly on the affine hull.
pub fn barycentric_coordinates(points: &[RatVec], p: &RatVec) -> Option<Vec<Rat>> {
    let k = points.len();
    let dim = p.dim();
    debug_assert!(points.iter().all(|q| q.dim() == dim));
    // Rows: one per ambient coordinate plus the normalization row.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim + 1);
    let mut rhs: Vec<Rat> = Vec::with_capacity(dim + 1);
    rows.push(vec![Rat::ONE; k]);
    rhs.push(Rat::ONE);
    for c in 0..dim {
        rows.push(points.iter().map(|q| q.0[c]).collect());
        rhs.push(p.0[c]);
    }
    // Reduce the overdetermined system; inconsistency means p is outside
    // the affine hull.
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        rhs.swap(row, pr);
        let inv = rows[row][col].recip();
        for c in 0..k {
            rows[row][c] = rows[row][c] * inv;
        }
        rhs[row] = rhs[row] * inv;
        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..k {
                let sub = rows[row][c] * factor;
                rows[r][c] = rows[r][c] - sub;
            }
            let sub = rhs[row] * factor;
            rhs[r] = rhs[r] - sub;
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    for r in row..rows.len() {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    // Affine independence means every column is a pivot.
    debug_assert_eq!(pivots.len(), k, "points must be affinely independent");
    let mut coords = vec![Rat::ZERO; k];
    for (r, &col) in pivots.iter().enumerate() {
        coords[col] = rhs[r];
    }
    Some(coords)
}

/// Where a point sits relative to a simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexPosition {
    Outside,
    Boundary,
    Interior,
}

/// Classifies `p` against the simplex spanned by `points`.
pub fn point_in_simplex(points: &[RatVec], p: &RatVec) -> SimplexPosition {
    match barycentric_coordinates(points, p) {
        None => SimplexPosition::Outside,
        Some(coords) => {
            if coords.iter().any(Rat::is_negative) {
                SimplexPosition::Outside
            } else if coords.iter().any(Rat::is_zero) {
                SimplexPosition::Boundary
            } else {
                SimplexPosition::Interior
            }
        }
    }
}

/// Decides whether two simplices intersect in more than the simplex spanned
/// by their shared vertices, i.e. whether they violate the complex gluing
/// condition. Exact: solves the feasibility LP for a common point that uses
/// a non-shared vertex with positive weight, in arbitrary precision.
///
/// Both simplices must be affinely independent point tuples.
pub fn improper_intersection(a: &[RatVec], b: &[RatVec]) -> bool {
    let shared: Vec<usize> = a
        .iter()
        .enumerate()
        .filter(|(_, p)| b.contains(p))
        .map(|(i, _)| i)
        .collect();
    // A common point x = sum s_i a_i = sum t_j b_j with all weights >= 0 and
    // each side summing to 1. The intersection is exactly the shared face iff
    // every such x puts zero weight on all non-shared vertices of both sides.
    // Maximize the total weight on non-shared vertices; improper iff > 0.
    let dim = a[0].dim();
    // Variables: s_0..s_{|a|-1}, t_0..t_{|b|-1}.
    // Equalities: per-coordinate matching, plus the two normalizations.
    let nv = a.len() + b.len();
    let mut eq_rows: Vec<Vec<BigRational>> = Vec::new();
    let mut eq_rhs: Vec<BigRational> = Vec::new();
    let big = |r: Rat| r.to_big();
    for c in 0..dim {
        let mut row = Vec::with_capacity(nv);
        for p in a {
            row.push(big(p.0[c]));
        }
        for q in b {
            row.push(-big(q.0[c]));
        }
        eq_rows.push(row);
        eq_rhs.push(BigRational::zero());
    }
    let mut row = vec![BigRational::zero(); nv];
    for cell in row.iter_mut().take(a.len()) {
        *cell = BigRational::one();
    }
    eq_rows.push(row);
    eq_rhs.push(BigRational::one());
    let mut row = vec![BigRational::zero(); nv];
    for cell in row.iter_mut().skip(a.len()) {
        *cell = BigRational::one();
    }
    eq_rows.push(row);
    eq_rhs.push(BigRational::one());

    let shared_b: Vec<usize> = b
        .iter()
        .enumerate()
        .filter(|(_, p)| a.contains(p))
        .map(|(i, _)| i)
        .collect();
    let mut objective = vec![BigRational::zero(); nv];
    for i in 0..a.len() {
        if !shared.contains(&i) {
            objective[i] = BigRational::one();
        }
    }
    for j in 0..b.len() {
        if !shared_b.contains(&j) {
            objective[a.len() + j] = BigRational::one();
        }
    }
    if objective.iter().all(Zero::is_zero) {
        // Identical vertex sets: the intersection is the shared simplex.
        return false;
    }
    match lp_maximize(&eq_rows, &eq_rhs, &objective) {
        None => false, // infeasible: disjoint simplices
        Some(v) => v.is_positive(),
    }
}

/// Maximizes `c . x` subject to `A x = b`, `x >= 0` via a two-phase simplex
/// method in exact arithmetic. Returns `None` when infeasible. The feasible
/// region here is always bounded (weights sum to fixed totals), so an
/// unbounded tableau indicates a bug.
fn lp_maximize(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Option<BigRational> {
    let m = a.len();
    let n = c.len();
    // Phase 1: add artificial variables, minimize their sum.
    // Tableau columns: n real + m artificial + rhs.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<BigRational> = Vec::with_capacity(n + m + 1);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Phase-1 objective row: minimize sum of artificials == maximize -sum.
    // Start from the raw cost row (+1 on artificials) and subtract each
    // basic row so basic columns carry zero reduced cost.
    let mut obj = vec![BigRational::zero(); n + m + 1];
    for cell in obj.iter_mut().take(n + m).skip(n) {
        *cell = BigRational::one();
    }
    for row in &t {
        for (j, cell) in obj.iter_mut().enumerate() {
            *cell -= &row[j];
        }
    }
    simplex_iterate(&mut t, &mut obj, &mut basis, n + m);
    if !obj[n + m].is_zero() {
        return None;
    }
    // Drive any artificial variables out of the basis; drop their columns.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut obj, &mut basis, i, j);
            }
            // A zero row stays basic-artificial at value zero; harmless.
        }
    }
    for row in &mut t {
        row.drain(n..n + m);
    }
    obj.drain(n..n + m);
    // Phase 2: maximize c.x, i.e. standard reduced-cost row -c adjusted by basis.
    let mut obj2: Vec<BigRational> = c.iter().map(|v| -v.clone()).collect();
    obj2.push(BigRational::zero());
    for i in 0..m {
        if basis[i] < n && !obj2[basis[i]].is_zero() {
            let factor = obj2[basis[i]].clone();
            for j in 0..=n {
                let sub = &t[i][j] * &factor;
                obj2[j] -= sub;
            }
        }
    }
    simplex_iterate(&mut t, &mut obj2, &mut basis, n);
    // The z-row keeps the running objective value in its rhs cell.
    Some(obj2[n].clone())
}

/// Runs simplex pivots until no negative reduced cost remains.
/// Bland's rule guarantees termination.
fn simplex_iterate(
    t: &mut [Vec<BigRational>],
    obj: &mut [BigRational],
    basis: &mut [usize],
    ncols: usize,
) {
    loop {
        let Some(col) = (0..ncols).find(|&j| obj[j].is_negative()) else {
            return;
        };
        let mut best: Option<(BigRational, usize)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[ncols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((r, bi)) => ratio < *r || (ratio == *r && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        let (_, row) = best.expect("unbounded LP in bounded feasibility problem");
        pivot(t, obj, basis, row, col);
    }
}

fn pivot(
    t: &mut [Vec<BigRational>],
    obj: &mut [BigRational],
    basis: &mut [usize],
    row: usize,
    col: usize,
) {
    let inv = t[row][col].clone().recip();
    for cell in t[row].iter_mut() {
        *cell *= &inv;
    }
    for i in 0..t.len() {
        if i == row || t[i][col].is_zero() {
            continue;
        }
        let factor = t[i][col].clone();
        for j in 0..t[row].len() {
            let sub = &t[row][j] * &factor;
            t[i][j] -= sub;
        }
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for j in 0..t[row].len() {
            let sub = &t[row][j] * &factor;
            obj[j] -= sub;
        }
    }
    basis[row] = col;
}

/// Intersection of the segment `[p, q]` with the affine hull of a
/// full-rank point tuple, in arbitrary precision. Returns the segment
/// parameter `t` and the barycentric coordinates of the hit point.
pub fn segment_hull_intersection(
    points: &[Vec<BigRational>],
    p: &[BigRational],
    q: &[BigRational],
) -> Option<(BigRational, Vec<BigRational>)> {
    // Unknowns: barycentric weights w_0..w_k and t, with
    // sum w_i points_i = p + t (q - p), sum w_i = 1.
    let k = points.len();
    let dim = p.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(dim + 1);
    for c in 0..dim {
        let mut row: Vec<BigRational> = points.iter().map(|pt| pt[c].clone()).collect();
        row.push(&p[c] - &q[c]);
        rows.push(row);
        rhs.push(p[c].clone());
    }
    let mut row = vec![BigRational::one(); k];
    row.push(BigRational::zero());
    rows.push(row);
    rhs.push(BigRational::one());
    solve_exact(rows, rhs).map(|mut sol| {
        let t = sol.pop().unwrap();
        (t, sol)
    })
}

/// Gaussian elimination over `BigRational` for a (possibly overdetermined)
/// consistent system; returns `None` for singular or inconsistent systems.
fn solve_exact(
    mut rows: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(pr) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return None; // rank-deficient in the unknowns
        };
        rows.swap(row, pr);
        rhs.swap(row, pr);
        let inv = rows[row][col].clone().recip();
        for c in 0..ncols {
            rows[row][c] *= &inv;
        }
        rhs[row] *= &inv;
        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let sub = &rows[row][c] * &factor;
                rows[r][c] -= sub;
            }
            let sub = &rhs[row] * &factor;
            rhs[r] -= sub;
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    if pivots.len() < ncols {
        return None;
    }
    for r in row..rows.len() {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); ncols];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = rhs[r].clone();
    }
    Some(sol)
}

/// Converts a `RatVec` into arbitrary-precision coordinates.
pub fn to_big_point(v: &RatVec) -> Vec<BigRational> {
    v.0.iter().map(Rat::to_big).collect()
}

#[allow(unused)]
pub fn big_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(coords: &[(i128, i128)]) -> RatVec {
        RatVec(coords.iter().map(|&(n, d)| Rat::new(n, d)).collect())
    }

    #[test]
    fn rank_and_independence() {
        let pts = [
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
        ];
        assert!(affinely_independent(&pts));
        let degenerate = [
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 1]),
            RatVec::from_ints(&[2, 2]),
        ];
        assert!(!affinely_independent(&degenerate));
    }

    #[test]
    fn volume_of_unit_triangle() {
        let pts = [
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
        ];
        assert_eq!(simplex_volume(&pts), Rat::new(1, 2));
    }

    #[test]
    fn barycentric_classification() {
        let tri = [
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
        ];
        let inside = rv(&[(1, 4), (1, 4)]);
        let edge = rv(&[(1, 2), (0, 1)]);
        let outside = rv(&[(2, 1), (2, 1)]);
        assert_eq!(point_in_simplex(&tri, &inside), SimplexPosition::Interior);
        assert_eq!(point_in_simplex(&tri, &edge), SimplexPosition::Boundary);
        assert_eq!(point_in_simplex(&tri, &outside), SimplexPosition::Outside);
        // Point outside the affine hull of a lower-dimensional simplex.
        let seg = [RatVec::from_ints(&[0, 0]), RatVec::from_ints(&[1, 0])];
        assert_eq!(
            point_in_simplex(&seg, &RatVec::from_ints(&[0, 1])),
            SimplexPosition::Outside
        );
    }

    #[test]
    fn improper_intersection_detects_overlap() {
        // Two triangles sharing an edge: proper.
        let a = vec![
            RatVec::from_ints(&[0, 0]),
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
        ];
        let b = vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[0, 1]),
            RatVec::from_ints(&[1, 1]),
        ];
        assert!(!improper_intersection(&a, &b));
        // Overlapping triangles with no shared vertices.
        let c = vec![
            rv(&[(1, 4), (1, 4)]),
            RatVec::from_ints(&[2, 0]),
            RatVec::from_ints(&[0, 2]),
        ];
        assert!(improper_intersection(&a, &c));
        // Disjoint triangles.
        let d = vec![
            RatVec::from_ints(&[5, 5]),
            RatVec::from_ints(&[6, 5]),
            RatVec::from_ints(&[5, 6]),
        ];
        assert!(!improper_intersection(&a, &d));
        // Sharing a vertex only: proper.
        let e = vec![
            RatVec::from_ints(&[1, 0]),
            RatVec::from_ints(&[2, 0]),
            RatVec::from_ints(&[2, 1]),
        ];
        assert!(!improper_intersection(&a, &e));
        // Touching at a non-vertex point: improper.
        let f = vec![
            rv(&[(1, 2), (1, 2)]),
            RatVec::from_ints(&[2, 1]),
            RatVec::from_ints(&[1, 2]),
        ];
        assert!(improper_intersection(&a, &f));
    }

    #[test]
    fn segment_meets_hyperplane() {
        use num_traits::FromPrimitive;
        let tri: Vec<Vec<BigRational>> = [[0, 0, 1], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&c| BigRational::from_i64(c).unwrap())
                    .collect()
            })
            .collect();
        let p: Vec<BigRational> = [0, 0, 0]
            .iter()
            .map(|&c| BigRational::from_i64(c).unwrap())
            .collect();
        let q: Vec<BigRational> = [1, 1, 4]
            .iter()
            .map(|&c| BigRational::from_i64(c).unwrap())
            .collect();
        let (t, w) = segment_hull_intersection(&tri, &p, &q).unwrap();
        assert_eq!(t, BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(w.len(), 3);
        let sum: BigRational = w.iter().cloned().sum();
        assert!(sum.is_one());
    }
}
