use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RankMethod, RankResult, SparseMatrix};

/// Rank over `Q` by fraction-free (Bareiss) elimination on arbitrary
/// precision integers.
///
/// Rows are first stably sorted by their number of nonzeros. The pivot for
/// each column is the first remaining row, in that order, with a nonzero
/// entry. Every intermediate entry is a minor of the input, so the division
/// by the previous pivot is exact.
pub fn rank_exact(m: &SparseMatrix) -> RankResult {
    let mut order: Vec<usize> = (0..m.rows()).collect();
    order.sort_by_key(|&i| m.row(i).len());
    let mut a: Vec<Vec<BigInt>> = order
        .iter()
        .map(|&i| {
            let mut row = vec![BigInt::zero(); m.cols()];
            for &j in m.row(i) {
                row[j as usize] = BigInt::one();
            }
            row
        })
        .collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..row.len() {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    RankResult {
        rank,
        certified: true,
        method: RankMethod::ExactElimination,
    }
}
