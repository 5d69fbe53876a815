use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

/// Sparse exact integer matrix. Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (&(r, c), &v) in &self.entries {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (&(r, c), &v) in &self.entries {
            m.entries.insert((c, r), v);
        }
        m
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let mut inv = vec![0; self.rows];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let mut m = Self::zeros(self.rows, self.cols);
        for (&(r, c), &v) in &self.entries {
            m.entries.insert((inv[r], c), v);
        }
        m
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    /// Exact product. Panics if an entry leaves the `i64` range.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (&(r, c), &v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for (&(i, k), &a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_default() += a as i128 * b as i128;
                }
            }
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for ((i, j), v) in acc {
            m.set(i, j, i64::try_from(v).expect("matrix product overflows i64"));
        }
        m
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Independent of the Smith normal form code path; used to cross-check ranks.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> =
        m.to_dense().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_zero_removes_entry() {
        let mut m = IntegerMatrix::zeros(2, 2);
        m.set(0, 1, 5);
        assert_eq!(m.nnz(), 1);
        m.set(0, 1, 0);
        assert!(m.is_zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntegerMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = IntegerMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(a.permute_rows(&[1, 0]).to_dense(), vec![vec![3, 4], vec![1, 2]]);
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(rational_rank(&IntegerMatrix::identity(4)), 4);
        assert_eq!(rational_rank(&IntegerMatrix::from_dense(&[vec![2, 4], vec![6, 8]])), 2);
        assert_eq!(rational_rank(&IntegerMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]])), 2);
        assert_eq!(rational_rank(&IntegerMatrix::zeros(3, 0)), 0);
    }
}
