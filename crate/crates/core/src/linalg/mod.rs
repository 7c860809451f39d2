//! Exact rank of 0/1 matrices over the rationals and over prime fields.
//!
//! Rank over `GF(p)` never exceeds rank over `Q`, so one modular
//! elimination that reaches `min(rows, cols)` certifies maximal rational
//! rank. A deficient modular rank is only trusted once an exact kernel
//! certificate verifies, or after fraction-free elimination.

mod bareiss;
mod certify;
mod modular;
mod prime;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bareiss::rank_exact;
pub use certify::{kernel_certificate, rank_certified, CertifyOptions, KernelCertificate};
pub use modular::{rank_mod_p, RankTarget};
pub use prime::{is_prime, random_prime};

/// 0/1 matrix stored as sorted column indices of the ones in each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<Vec<u32>>) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::MatrixIndex {
                row: entries.len(),
                col: 0,
                rows,
                cols,
            });
        }
        for (row, list) in entries.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(&col) = list.last() {
                if col as usize >= cols {
                    return Err(Error::MatrixIndex {
                        row,
                        col: col as usize,
                        rows,
                        cols,
                    });
                }
            }
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEntry {
                    row,
                    col: w[0] as usize,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    /// Nonzero entries of `dense` become ones.
    pub fn from_dense<R: AsRef<[u8]>>(dense: &[R]) -> Self {
        let cols = dense.first().map_or(0, |r| r.as_ref().len());
        let entries = dense
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect();
        Self {
            rows: dense.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for &j in row {
                entries[j as usize].push(i as u32);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Number of ones in each column.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cols];
        for row in &self.entries {
            for &j in row {
                counts[j as usize] += 1;
            }
        }
        counts
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.entries
            .iter()
            .map(|row| {
                let mut dense = vec![0; self.cols];
                for &j in row {
                    dense[j as usize] = 1;
                }
                dense
            })
            .collect()
    }

    /// `M v` over the integers.
    pub fn mul_vec(&self, v: &[num_bigint::BigInt]) -> Vec<num_bigint::BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&j| &v[j as usize]).sum())
            .collect()
    }

    /// `min(rows, cols)`
    pub fn max_rank(&self) -> usize {
        self.rows.min(self.cols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    Modular,
    ExactElimination,
    KernelCertificate,
}

impl RankMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMethod::Modular => "modular",
            RankMethod::ExactElimination => "exact-elimination",
            RankMethod::KernelCertificate => "kernel-certificate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub certified: bool,
    pub method: RankMethod,
}
