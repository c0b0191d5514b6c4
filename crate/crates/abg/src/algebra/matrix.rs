/// Column-major sparse integer matrix. Each column holds (row, value) pairs
/// sorted by row, with no zero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Vec<(u32, i64)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> SparseMat {
        SparseMat {
            rows,
            cols,
            entries: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> SparseMat {
        for col in &columns {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|&(r, v)| (r as usize) < rows && v != 0));
        }
        SparseMat {
            rows,
            cols: columns.len(),
            entries: columns,
        }
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.entries[j]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for j in 0..self.cols {
            for &(r, v) in self.column(j) {
                cols[r as usize].push((j as u32, v));
            }
        }
        SparseMat::from_columns(self.cols, cols)
    }

    /// Matrix product `self * other`, for verifying that composites vanish.
    pub fn multiply(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows);
        let mut out = Vec::with_capacity(other.cols);
        for j in 0..other.cols {
            let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
            for &(mid, v) in other.column(j) {
                for &(r, w) in self.column(mid as usize) {
                    let cell = acc.entry(r).or_insert(0);
                    *cell = cell
                        .checked_add(v.checked_mul(w).expect("overflow in sparse product"))
                        .expect("overflow in sparse product");
                }
            }
            out.push(
                acc.into_iter()
                    .filter(|&(_, v)| v != 0)
                    .collect::<Vec<_>>(),
            );
        }
        SparseMat::from_columns(self.rows, out)
    }
}

/// Rank over the field with two elements, by bitset Gaussian elimination.
pub fn gf2_rank(mat: &SparseMat) -> usize {
    gf2_eliminate(mat, None).0
}

/// Whether `mat x = rhs` is solvable over the field with two elements.
pub fn gf2_solvable(mat: &SparseMat, rhs: &[bool]) -> bool {
    assert_eq!(rhs.len(), mat.rows);
    gf2_eliminate(mat, Some(rhs)).1
}

fn gf2_eliminate(mat: &SparseMat, rhs: Option<&[bool]>) -> (usize, bool) {
    let words = mat.rows.div_ceil(64);
    let mut cols: Vec<Vec<u64>> = mat
        .entries
        .iter()
        .filter_map(|col| {
            let mut bits = vec![0u64; words];
            let mut any = false;
            for &(r, v) in col {
                if v % 2 != 0 {
                    bits[r as usize / 64] ^= 1 << (r % 64);
                    any = true;
                }
            }
            any.then_some(bits)
        })
        .collect();
    let mut b: Vec<u64> = vec![0; words];
    let mut has_rhs = false;
    if let Some(rhs) = rhs {
        for (r, &v) in rhs.iter().enumerate() {
            if v {
                b[r / 64] ^= 1 << (r % 64);
                has_rhs = true;
            }
        }
    }
    let mut rank = 0;
    // Eliminate column by column on the lowest set bit.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut col in cols.drain(..) {
        loop {
            let Some(lead) = lowest_bit(&col) else { break };
            match basis.binary_search_by_key(&lead, |e| e.0) {
                Ok(i) => {
                    let other = basis[i].1.clone();
                    xor_into(&mut col, &other);
                }
                Err(i) => {
                    basis.insert(i, (lead, col));
                    rank += 1;
                    break;
                }
            }
        }
    }
    let solvable = if has_rhs {
        loop {
            let Some(lead) = lowest_bit(&b) else {
                break true;
            };
            match basis.binary_search_by_key(&lead, |e| e.0) {
                Ok(i) => {
                    let other = basis[i].1.clone();
                    xor_into(&mut b, &other);
                }
                Err(_) => break false,
            }
        }
    } else {
        true
    };
    (rank, solvable)
}

/// Basis of the kernel over the field with two elements, one indicator
/// vector of length `mat.cols` per basis element.
pub fn gf2_kernel_basis(mat: &SparseMat) -> Vec<Vec<bool>> {
    let words = mat.rows.div_ceil(64);
    let cwords = mat.cols.div_ceil(64);
    // Each working column carries its expression in the original columns.
    let mut basis: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut kernel = Vec::new();
    for j in 0..mat.cols {
        let mut col = vec![0u64; words];
        for &(r, v) in mat.column(j) {
            if v % 2 != 0 {
                col[r as usize / 64] ^= 1 << (r % 64);
            }
        }
        let mut combo = vec![0u64; cwords];
        combo[j / 64] ^= 1 << (j % 64);
        loop {
            let Some(lead) = lowest_bit(&col) else {
                kernel.push((0..mat.cols).map(|i| combo[i / 64] >> (i % 64) & 1 == 1).collect());
                break;
            };
            match basis.binary_search_by_key(&lead, |e| e.0) {
                Ok(i) => {
                    let (other_col, other_combo) = (basis[i].1.clone(), basis[i].2.clone());
                    xor_into(&mut col, &other_col);
                    xor_into(&mut combo, &other_combo);
                }
                Err(i) => {
                    basis.insert(i, (lead, col, combo));
                    break;
                }
            }
        }
    }
    kernel
}

fn lowest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}
