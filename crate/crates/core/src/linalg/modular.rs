use std::cmp::Ordering;

use super::{prime::is_prime, RankMethod, RankResult, SparseMatrix};
use crate::error::{Error, Result};

/// Montgomery arithmetic modulo an odd prime below 2^63.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    one: u64,
}

impl Montgomery {
    pub(crate) fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 63);
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            one: r,
        }
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.p
    }

    pub(crate) fn one(&self) -> u64 {
        self.one
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        self.sub(a, self.p - b)
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[cfg(test)]
    pub(crate) fn to_mont(&self, a: u64) -> u64 {
        (((a as u128) << 64) % self.p as u128) as u64
    }

    pub(crate) fn leave_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

type SparseRow = Vec<(u32, u64)>;

/// Row echelon form modulo `p`. Pivot rows are stored in increasing order of
/// their leading column, each scaled so that the leading entry is one.
///
/// The pivot columns are the greedy column basis of the matrix (column `c`
/// is a pivot iff it is independent of columns `< c`), so they do not
/// depend on which row is chosen as pivot within a column.
pub(crate) struct Echelon {
    pub(crate) cols: usize,
    pub(crate) pivot_cols: Vec<usize>,
    rows: Vec<SparseRow>,
    pub(crate) field: Montgomery,
}

impl Echelon {
    pub(crate) fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub(crate) fn free_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().peekable();
        (0..self.cols)
            .filter(|&c| {
                if pivots.peek() == Some(&&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// The kernel vector with a one at free column `free`, zeros on the
    /// other free columns, as canonical residues.
    pub(crate) fn kernel_vector(&self, free: usize) -> Vec<u64> {
        let f = &self.field;
        let mut x = vec![0u64; self.cols];
        x[free] = f.one();
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols).rev() {
            let s = row[1..]
                .iter()
                .fold(0, |acc, &(j, v)| f.add(acc, f.mul(v, x[j as usize])));
            x[pc] = f.neg(s);
        }
        x.into_iter().map(|v| f.leave_mont(v)).collect()
    }
}

/// Sparse elimination that only ever touches rows sharing the current
/// leading column, picking the shortest such row as pivot.
pub(crate) fn echelon(m: &SparseMatrix, field: Montgomery) -> Echelon {
    let one = field.one();
    let mut buckets: Vec<Vec<SparseRow>> = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        let row: SparseRow = m.row(i).iter().map(|&j| (j, one)).collect();
        if let Some(&(lead, _)) = row.first() {
            buckets[lead as usize].push(row);
        }
    }

    let mut pivot_cols = Vec::new();
    let mut rows = Vec::new();
    for c in 0..m.cols() {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let shortest = (0..bucket.len())
            .min_by_key(|&i| bucket[i].len())
            .expect("nonempty bucket");
        let mut pivot = bucket.swap_remove(shortest);
        let scale = field.inv(pivot[0].1);
        if scale != one {
            for e in pivot.iter_mut() {
                e.1 = field.mul(e.1, scale);
            }
        }
        for row in bucket {
            let reduced = eliminate(&row, &pivot, &field);
            if let Some(&(lead, _)) = reduced.first() {
                buckets[lead as usize].push(reduced);
            }
        }
        pivot_cols.push(c);
        rows.push(pivot);
    }
    Echelon {
        cols: m.cols(),
        pivot_cols,
        rows,
        field,
    }
}

/// `row - row[0] * pivot`, both sharing the same leading column and the
/// pivot's leading entry being one. The leading entry cancels.
fn eliminate(row: &SparseRow, pivot: &SparseRow, f: &Montgomery) -> SparseRow {
    let factor = row[0].1;
    let (a, b) = (&row[1..], &pivot[1..]);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, f.neg(f.mul(factor, b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.sub(a[i].1, f.mul(factor, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Rank over `GF(2)` with bit-packed rows.
fn rank_gf2(m: &SparseMatrix) -> usize {
    let words = m.cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            let mut r = vec![0u64; words];
            for &j in m.row(i) {
                r[j as usize / 64] |= 1 << (j % 64);
            }
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut().filter(|r| r[w] & bit != 0) {
            for (x, y) in row[w..].iter_mut().zip(&pivot[w..]) {
                *x ^= y;
            }
        }
        rank += 1;
    }
    rank
}

/// What a modular rank is meant to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankTarget {
    /// Rank over `GF(p)` itself; always certified.
    PrimeField,
    /// Rank over `Q`; certified only when the modular rank is maximal.
    Rationals,
}

pub fn rank_mod_p(m: &SparseMatrix, p: u64, target: RankTarget) -> Result<RankResult> {
    if p >= 1 << 63 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let rank = if p == 2 {
        rank_gf2(m)
    } else {
        echelon(m, Montgomery::new(p)).rank()
    };
    Ok(RankResult {
        rank,
        certified: target == RankTarget::PrimeField || rank == m.max_rank(),
        method: RankMethod::Modular,
    })
}
