//! Smith normal form over the integers.
//!
//! The entry point runs a sparse elimination phase that peels off pivots of
//! absolute value one with a fill-aware greedy order, then finishes the
//! remaining core with a dense arbitrary-precision routine. Boundary
//! matrices of the complexes built here reduce almost entirely in the sparse
//! phase; the dense core carries the torsion.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::SparseMat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfOutcome {
    pub rank: usize,
    /// Nontrivial part of the diagonal: positive, each dividing the next,
    /// one entry per unit of rank.
    pub invariant_factors: Vec<BigInt>,
}

/// Smith normal form of a sparse integer matrix.
pub fn smith_normal_form(mat: &SparseMat) -> SnfOutcome {
    match sparse_phase(mat, None) {
        Ok((units, core, _)) => {
            let core_factors = dense_smith(core);
            let mut invariant_factors = vec![BigInt::from(1); units];
            invariant_factors.extend(core_factors);
            SnfOutcome {
                rank: invariant_factors.len(),
                invariant_factors,
            }
        }
        Err(Overflow) => {
            // Rare fallback: redo everything densely in big integers.
            let factors = dense_smith(to_dense(mat));
            SnfOutcome {
                rank: factors.len(),
                invariant_factors: factors,
            }
        }
    }
}

/// Rank over the rationals.
pub fn rank(mat: &SparseMat) -> usize {
    smith_normal_form(mat).rank
}

/// Whether `mat x = rhs` has an integer solution.
pub fn solvable_over_z(mat: &SparseMat, rhs: &[i64]) -> bool {
    assert_eq!(rhs.len(), mat.rows);
    let rhs128: Vec<i128> = rhs.iter().map(|&v| v as i128).collect();
    match sparse_phase(mat, Some(rhs128)) {
        Ok((_, core, core_rhs)) => dense_solvable(core, core_rhs.unwrap()),
        Err(Overflow) => {
            let core = to_dense(mat);
            let rhs = rhs.iter().map(|&v| BigInt::from(v)).collect();
            dense_solvable(core, rhs)
        }
    }
}

struct Overflow;

type SparseOutcome = (usize, Vec<Vec<BigInt>>, Option<Vec<BigInt>>);

/// Eliminates unit pivots; returns (number of unit pivots, dense core,
/// transformed right-hand side restricted to the surviving rows).
fn sparse_phase(mat: &SparseMat, rhs: Option<Vec<i128>>) -> Result<SparseOutcome, Overflow> {
    let mut cols: Vec<BTreeMap<u32, i128>> = (0..mat.cols)
        .map(|j| {
            mat.column(j)
                .iter()
                .map(|&(r, v)| (r, v as i128))
                .collect()
        })
        .collect();
    let mut rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); mat.rows];
    for (j, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            rows[r as usize].insert(j as u32);
        }
    }
    let mut rhs = rhs;
    let mut col_alive = vec![true; mat.cols];
    let mut row_alive = vec![true; mat.rows];
    let mut units = 0usize;

    // Queue of candidate columns ordered by fill (smaller first); entries go
    // stale as columns change and are skipped when their recorded size no
    // longer matches.
    let mut queue: BinaryHeap<std::cmp::Reverse<(usize, u32)>> = (0..mat.cols as u32)
        .map(|j| std::cmp::Reverse((cols[j as usize].len(), j)))
        .collect();

    while let Some(std::cmp::Reverse((size, j))) = queue.pop() {
        let j = j as usize;
        if !col_alive[j] || cols[j].len() != size || size == 0 {
            continue;
        }
        // Pick the unit entry with the sparsest row, if any.
        let Some((&r, &s)) = cols[j]
            .iter()
            .filter(|&(_, &v)| v == 1 || v == -1)
            .min_by_key(|&(&r, _)| rows[r as usize].len())
        else {
            continue; // no unit entry right now; requeued if it changes
        };
        let r = r as usize;

        // Clear the pivot row with column operations: col_t -= (a/s) col_j.
        let touched: Vec<u32> = rows[r].iter().copied().filter(|&t| t as usize != j).collect();
        let pivot_col: Vec<(u32, i128)> = cols[j].iter().map(|(&i, &v)| (i, v)).collect();
        for t in touched {
            let t = t as usize;
            let a = cols[t][&(r as u32)];
            let q = a / s; // s is a unit
            for &(i, v) in &pivot_col {
                let delta = q.checked_mul(v).ok_or(Overflow)?;
                match cols[t].entry(i) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let nv = e.get().checked_sub(delta).ok_or(Overflow)?;
                        if nv == 0 {
                            e.remove();
                            rows[i as usize].remove(&(t as u32));
                        } else {
                            *e.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert((0i128).checked_sub(delta).ok_or(Overflow)?);
                        rows[i as usize].insert(t as u32);
                    }
                }
            }
            queue.push(std::cmp::Reverse((cols[t].len(), t as u32)));
        }
        // Clear the pivot column with row operations. The pivot row now has a
        // single entry, so only the right-hand side needs updating.
        if let Some(rhs) = rhs.as_mut() {
            let br = rhs[r];
            if br != 0 {
                let col_entries: Vec<(u32, i128)> = cols[j].iter().map(|(&i, &v)| (i, v)).collect();
                for (i, v) in col_entries {
                    if i as usize == r {
                        continue;
                    }
                    let q = v / s;
                    let delta = q.checked_mul(br).ok_or(Overflow)?;
                    rhs[i as usize] = rhs[i as usize].checked_sub(delta).ok_or(Overflow)?;
                }
            }
        }
        for (&i, _) in cols[j].iter() {
            rows[i as usize].remove(&(j as u32));
        }
        cols[j].clear();
        col_alive[j] = false;
        row_alive[r] = false;
        rows[r].clear();
        units += 1;
    }

    // Assemble the dense core from surviving rows and columns.
    let live_rows: Vec<usize> = (0..mat.rows).filter(|&r| row_alive[r]).collect();
    let live_cols: Vec<usize> = (0..mat.cols).filter(|&c| col_alive[c]).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    let mut core = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (p, &c) in live_cols.iter().enumerate() {
        for (&r, &v) in &cols[c] {
            core[row_pos[&(r as usize)]][p] = BigInt::from(v);
        }
    }
    let core_rhs = rhs.map(|rhs| live_rows.iter().map(|&r| BigInt::from(rhs[r])).collect());
    Ok((units, core, core_rhs))
}

fn to_dense(mat: &SparseMat) -> Vec<Vec<BigInt>> {
    let mut dense = vec![vec![BigInt::zero(); mat.cols]; mat.rows];
    for j in 0..mat.cols {
        for &(r, v) in mat.column(j) {
            dense[r as usize][j] = BigInt::from(v);
        }
    }
    dense
}

/// Dense Smith normal form; returns the positive invariant factors in
/// divisibility order. Empty rows and columns contribute nothing.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the working submatrix becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = div_nearest(&a[i][t], &a[t][t]);
                    if !q.is_zero() {
                        for j in t..cols {
                            let sub = &q * &a[t][j];
                            a[i][j] -= sub;
                        }
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = div_nearest(&a[t][j], &a[t][t]);
                    if !q.is_zero() {
                        for row in a.iter_mut().take(rows).skip(t) {
                            let sub = &q * &row[t];
                            row[j] -= sub;
                        }
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; force divisibility of the rest.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for col in t..cols {
                            let add = a[i][col].clone();
                            a[t][col] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Dense Smith normal form with the unimodular transforms: returns
/// (u, diag, v) with `u * a * v` diagonal, `diag` the nonnegative invariant
/// factors including trailing zeros up to min(rows, cols).
pub fn dense_smith_with_transforms(
    mut a: Vec<Vec<BigInt>>,
) -> (Vec<Vec<BigInt>>, Vec<BigInt>, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut a, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = div_nearest(&a[i][t], &a[t][t]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let sub = &q * &a[t][j];
                            a[i][j] -= sub;
                        }
                        for j in 0..rows {
                            let sub = &q * &u[t][j];
                            u[i][j] -= sub;
                        }
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = div_nearest(&a[t][j], &a[t][t]);
                    if !q.is_zero() {
                        for i in 0..rows {
                            let sub = &q * &a[i][t];
                            a[i][j] -= sub;
                        }
                        for i in 0..cols {
                            let sub = &q * &v[i][t];
                            v[i][j] -= sub;
                        }
                    }
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for col in 0..cols {
                            let add = a[i][col].clone();
                            a[t][col] += add;
                        }
                        for col in 0..rows {
                            let add = u[i][col].clone();
                            u[t][col] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    (u, diag, v)
}

/// Integer basis of the kernel of a sparse matrix, one vector of length
/// `mat.cols` per basis element. Dense computation; for moderate sizes.
pub fn integer_kernel_basis(mat: &SparseMat) -> Vec<Vec<BigInt>> {
    let (_, diag, v) = dense_smith_with_transforms(to_dense(mat));
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    (rank..mat.cols)
        .map(|j| (0..mat.cols).map(|i| v[i][j].clone()).collect())
        .collect()
}

/// Rounded division minimizing the remainder's absolute value.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Whether the dense system `a x = rhs` has an integer solution: row-reduce
/// to Smith form carrying the right-hand side through the row operations
/// (column operations substitute variables and do not affect solvability).
fn dense_solvable(mut a: Vec<Vec<BigInt>>, mut rhs: Vec<BigInt>) -> bool {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        rhs.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = div_nearest(&a[i][t], &a[t][t]);
                    if !q.is_zero() {
                        for j in t..cols {
                            let sub = &q * &a[t][j];
                            a[i][j] -= sub;
                        }
                        let sub = &q * &rhs[t];
                        rhs[i] -= sub;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        rhs.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = div_nearest(&a[t][j], &a[t][t]);
                    if !q.is_zero() {
                        for row in a.iter_mut().take(rows).skip(t) {
                            let sub = &q * &row[t];
                            row[j] -= sub;
                        }
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }
    // Pivot rows need divisibility; the rest need a zero right-hand side.
    for i in 0..rows {
        if i < t {
            if !(&rhs[i] % &a[i][i]).is_zero() {
                return false;
            }
        } else if !rhs[i].is_zero() {
            return false;
        }
    }
    true
}
