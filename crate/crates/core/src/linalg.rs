//! Exact rank of integer matrices.
//!
//! Two independent routes: dense fraction-free (Bareiss) elimination over
//! `BigInt`, and sparse row echelon with content normalisation in checked
//! `i128` that restarts in `BigInt` if a coefficient overflows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank of a dense matrix by Bareiss elimination.
pub fn rank_dense(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !Zero::is_zero(&a[r][col])) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

trait Coeff: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(a: &Self, b: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn abs(&self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Coeff for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        Integer::gcd(a, b)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn comb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        Integer::gcd(a, b)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_unit(&self) -> bool {
        Signed::abs(self) == BigInt::from(1)
    }
}

/// `row <- a*row - b*pivot` on sparse rows, dividing out the content.
fn eliminate<T: Coeff>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let (a, b) = (&pivot[0].1, &row[0].1);
    let g = T::gcd(a, b);
    let (a, b) = (a.div_exact(&g), b.div_exact(&g));
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, T::comb(&a, &row[i - 1].1, &b, &zero)?)
        } else if cj < ci {
            j += 1;
            (cj, T::comb(&a, &zero, &b, &pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ci, T::comb(&a, &row[i - 1].1, &b, &pivot[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    let mut content = T::from_i64(0);
    for (_, v) in &out {
        content = T::gcd(&content, v);
        if content.is_unit() {
            return Some(out);
        }
    }
    if !content.is_zero() {
        let content = content.abs();
        for (_, v) in &mut out {
            *v = v.div_exact(&content);
        }
    }
    Some(out)
}

fn rank_generic<T: Coeff>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for r in rows {
        let mut row: Vec<(usize, T)> = r
            .iter()
            .filter(|e| e.1 != 0)
            .map(|&(c, v)| (c, T::from_i64(v)))
            .collect();
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank of a sparse matrix given by rows (columns must be sorted within each row).
pub fn rank_sparse(rows: &[SparseRow]) -> usize {
    rank_generic::<i128>(rows).unwrap_or_else(|| rank_generic::<BigInt>(rows).expect("BigInt never overflows"))
}

/// Forces the arbitrary-precision path; used to cross-check the fast path.
pub fn rank_sparse_bigint(rows: &[SparseRow]) -> usize {
    rank_generic::<BigInt>(rows).expect("BigInt never overflows")
}

pub fn dense_to_sparse(rows: &[Vec<i64>]) -> Vec<SparseRow> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|e| *e.1 != 0)
                .map(|(c, &v)| (c, v))
                .collect()
        })
        .collect()
}
