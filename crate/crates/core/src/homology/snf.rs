//! Smith normal form over the integers.
//!
//! Elimination first runs on `i64` with checked arithmetic and restarts on
//! `BigInt` if any intermediate overflows, so results are always exact.
//! Pivots are chosen by minimal absolute value to limit entry growth. The
//! diagonal produced by elimination is then brought into divisibility-chain
//! form with pairwise gcd/lcm replacement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::matrix::IntegerMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of a matrix of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one())
    }
}

impl Serialize for SnfResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.diagonal.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quotient(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

fn min_abs_entry<T: Scalar>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if !v.abs_lt(&a[bi][bj]) => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols<T>(a: &mut [Vec<T>], from_row: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for row in a.iter_mut().skip(from_row) {
            row.swap(c1, c2);
        }
    }
}

/// Reduces `a` to diagonal form by unimodular row and column operations and
/// returns the nonzero diagonal. `None` signals arithmetic overflow.
fn diagonalize<T: Scalar>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, cols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, t, pj);
        loop {
            let pivot_row_nz: Vec<usize> = (t + 1..cols).filter(|&j| !a[t][j].is_zero()).collect();
            let (head, tail) = a.split_at_mut(t + 1);
            let prow = &head[t];
            let p = prow[t].clone();
            let mut clean = true;
            for row in tail.iter_mut() {
                if row[t].is_zero() {
                    continue;
                }
                let q = row[t].quotient(&p)?;
                if !q.is_zero() {
                    row[t] = row[t].sub_mul(&q, &p)?;
                    for &j in &pivot_row_nz {
                        row[j] = row[j].sub_mul(&q, &prow[j])?;
                    }
                }
                clean &= row[t].is_zero();
            }
            let pivot_col_nz: Vec<usize> = (t + 1..rows).filter(|&i| !a[i][t].is_zero()).collect();
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quotient(&p)?;
                if !q.is_zero() {
                    a[t][j] = a[t][j].sub_mul(&q, &p)?;
                    for &i in &pivot_col_nz {
                        let v = a[i][j].sub_mul(&q, &a[i][t])?;
                        a[i][j] = v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // Move the smallest remainder in row t or column t onto the pivot.
            let mut best: Option<(bool, usize)> = None;
            let mut best_val = p.clone();
            for (i, row) in a.iter().enumerate().skip(t + 1) {
                if !row[t].is_zero() && row[t].abs_lt(&best_val) {
                    best_val = row[t].clone();
                    best = Some((true, i));
                }
            }
            for (j, v) in a[t].iter().enumerate().skip(t + 1) {
                if !v.is_zero() && v.abs_lt(&best_val) {
                    best_val = v.clone();
                    best = Some((false, j));
                }
            }
            match best {
                Some((true, i)) => a.swap(t, i),
                Some((false, j)) => swap_cols(&mut a, t, t, j),
                None => unreachable!("nonzero remainder is smaller than the pivot"),
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Some(diag)
}

/// Replaces a diagonal by the equivalent divisibility chain.
fn normalize_chain(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut ones = Vec::new();
    let mut rest = Vec::new();
    for d in diag {
        let d = d.abs();
        if d.is_one() {
            ones.push(d);
        } else {
            rest.push(d);
        }
    }
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut out = Vec::new();
    for d in rest {
        if d.is_one() {
            ones.push(d);
        } else {
            out.push(d);
        }
    }
    ones.extend(out);
    ones
}

/// Smith normal form of a dense `rows x cols` matrix.
pub(crate) fn snf_dense(a: Vec<Vec<i64>>, cols: usize) -> SnfResult {
    let diag = match diagonalize(a.clone(), cols) {
        Some(d) => d.into_iter().map(Scalar::into_big).collect(),
        None => {
            let big: Vec<Vec<BigInt>> = a.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            diagonalize(big, cols).expect("big integer elimination cannot overflow")
        }
    };
    SnfResult { diagonal: normalize_chain(diag) }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    snf_dense(m.to_dense(), m.cols())
}
