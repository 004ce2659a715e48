//! Smith normal form over the integers and rank over prime fields.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// A dense integer matrix with labelled rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels: (0..rows).map(|i| i.to_string()).collect(),
            col_labels: (0..cols).map(|j| j.to_string()).collect(),
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn to_rows<T>(&self, conv: impl Fn(&BigInt) -> Option<T>) -> Option<Vec<Vec<T>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| conv(self.get(i, j))).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d1 | d2 | ... | dr`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Invariant factors and rank of an integer matrix.
///
/// Runs in `i128` and restarts with arbitrary precision if an intermediate
/// entry overflows.
pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let factors = m
        .to_rows(|v| v.to_i128())
        .and_then(|rows| {
            let (units, rest, cols) = eliminate_units(rows)?;
            let mut f = vec![1i128; units];
            f.extend(diagonalize(rest, cols)?);
            Some(f)
        })
        .map(|f| f.into_iter().map(BigInt::from).collect())
        .unwrap_or_else(|| {
            let rows = m.to_rows(|v| Some(v.clone())).expect("BigInt conversion is total");
            diagonalize(rows, m.cols).expect("BigInt arithmetic does not overflow")
        });
    SnfResult { rank: factors.len(), factors }
}

/// Sparse pass that pivots on entries `±1` until none are left. Returns the
/// number of pivots and the remaining rows and columns as a dense block.
fn eliminate_units(dense: Vec<Vec<i128>>) -> Option<(usize, Vec<Vec<i128>>, usize)> {
    let cols = dense.first().map_or(0, Vec::len);
    let mut rows: Vec<BTreeMap<usize, i128>> = dense
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|&(_, v)| v != 0).collect())
        .collect();
    let mut in_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            in_col[j].insert(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut dead_col = vec![false; cols];
    let mut units = 0;
    loop {
        // sparsest row holding a unit, then its sparsest unit column
        let pivot = (0..rows.len())
            .filter(|&i| alive[i])
            .filter_map(|i| {
                let j = rows[i]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .map(|(&j, _)| j)
                    .min_by_key(|&j| in_col[j].len())?;
                Some((rows[i].len(), i, j))
            })
            .min();
        let Some((_, r, c)) = pivot else { break };
        let u = rows[r][&c];
        let pivot_row = std::mem::take(&mut rows[r]);
        for &j in pivot_row.keys() {
            in_col[j].remove(&r);
        }
        let others: Vec<usize> = in_col[c].iter().copied().collect();
        for i in others {
            let q = rows[i][&c].checked_mul(u)?;
            for (&j, &v) in &pivot_row {
                let e = rows[i].get(&j).copied().unwrap_or(0).checked_sub(q.checked_mul(v)?)?;
                if e == 0 {
                    rows[i].remove(&j);
                    in_col[j].remove(&i);
                } else {
                    rows[i].insert(j, e);
                    in_col[j].insert(i);
                }
            }
        }
        alive[r] = false;
        dead_col[c] = true;
        units += 1;
    }
    let keep: Vec<usize> = (0..cols).filter(|&j| !dead_col[j]).collect();
    let rest = (0..rows.len())
        .filter(|&i| alive[i] && !rows[i].is_empty())
        .map(|i| keep.iter().map(|j| rows[i].get(j).copied().unwrap_or(0)).collect())
        .collect();
    Some((units, rest, keep.len()))
}

/// Reduces `a` in place to diagonal form with each pivot dividing the rest,
/// choosing pivots of minimal absolute value. `None` on overflow.
fn diagonalize<T>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>>
where
    T: Clone + Integer + Signed + CheckedAdd + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let pivot = a[t][t].clone();
            let mut residue = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                for j in t..cols {
                    if !a[t][j].is_zero() {
                        let v = a[i][j].checked_sub(&q.checked_mul(&a[t][j])?)?;
                        a[i][j] = v;
                    }
                }
                residue |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let v = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                        row[j] = v;
                    }
                }
                residue |= !a[t][j].is_zero();
            }
            if residue {
                // a smaller remainder sits in row or column t; make it the pivot
                let col = min_abs_entry(&a, t..rows, t..t + 1);
                let row = min_abs_entry(&a, t..t + 1, t..cols);
                let (pi, pj) = match (col, row) {
                    (Some(c), Some(r)) => {
                        if a[c.0][c.1].abs() <= a[r.0][r.1].abs() { c } else { r }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot is nonzero"),
                };
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                continue;
            }
            let pivot = a[t][t].clone();
            if pivot.abs().is_one() {
                break;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = a[t][j].checked_add(&a[i][j])?;
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    Some(factors)
}

fn min_abs_entry<T: Signed + Clone + PartialOrd>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            let v = a[i][j].abs();
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                let one = v.is_one();
                best = Some((i, j, v));
                if one {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_cols<T>(a: &mut [Vec<T>], x: usize, y: usize) {
    if x != y {
        for row in a {
            row.swap(x, y);
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over the field with `p` elements; `p` must be a prime below 2³².
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    assert!(p < 1 << 32 && is_prime(p), "modulus must be a small prime");
    let modulus = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .to_rows(|v| v.mod_floor(&modulus).to_u64())
        .expect("reduced entries fit in u64");
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for j in c..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in c..cols {
                    a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
