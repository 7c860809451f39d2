//! Independence polynomials `I(G;t) = sum_k s_k(G) t^k` and their unimodality.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::IntPolynomial;
use crate::vertex_set::VertexSet;

/// Counts independent sets by size with a branch-on-lowest-vertex
/// backtracking search. Exponential; meant as an oracle for small graphs.
pub fn indpoly_enum(g: &Graph) -> IntPolynomial {
    fn walk(g: &Graph, candidates: VertexSet, size: usize, counts: &mut Vec<u64>) {
        let Some(v) = candidates.first() else {
            if counts.len() <= size {
                counts.resize(size + 1, 0);
            }
            counts[size] += 1;
            return;
        };
        let mut without = candidates.clone();
        without.remove(v);
        walk(g, without, size, counts);
        walk(g, candidates.difference(&g.closed_row(v)), size + 1, counts);
    }

    let mut counts = Vec::new();
    walk(g, VertexSet::full(g.n()), 0, &mut counts);
    IntPolynomial::from_u64s(&counts)
}

/// Independence polynomial via `I(G) = I(G \ w) + t I(G \ N[w])` with the
/// product rule over connected components.
///
/// The pivot `w` is a vertex of maximum degree (smallest label on ties).
/// Connected subgraphs are memoized on their relabeled adjacency rows for
/// the duration of one call.
pub fn indpoly_rec(g: &Graph) -> IntPolynomial {
    let mut memo = HashMap::new();
    rec(g, &mut memo)
}

type Memo = HashMap<Vec<Vec<u64>>, IntPolynomial>;

fn rec(g: &Graph, memo: &mut Memo) -> IntPolynomial {
    let n = g.n();
    if n == 0 {
        return IntPolynomial::one();
    }
    let components = g.components();
    if components.len() > 1 {
        return components
            .iter()
            .map(|c| connected(&g.induced(c), memo))
            .product();
    }
    connected(g, memo)
}

fn connected(g: &Graph, memo: &mut Memo) -> IntPolynomial {
    let n = g.n();
    if g.edge_count() == n * (n - 1) / 2 {
        return IntPolynomial::from_u64s(&[1, n as u64]);
    }
    let key: Vec<Vec<u64>> = g.adjacency().iter().map(|r| r.words().to_vec()).collect();
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let pivot = (0..n)
        .max_by_key(|&v| (g.row(v).len(), std::cmp::Reverse(v)))
        .expect("nonempty graph");
    let mut keep = VertexSet::full(n);
    keep.remove(pivot);
    let without = rec(&g.induced(&keep), memo);
    let outside = rec(
        &g.induced(&VertexSet::full(n).difference(&g.closed_row(pivot))),
        memo,
    );
    let p = &without + &outside.shift(1);
    memo.insert(key, p.clone());
    p
}

/// Families with a binomial closed form for the independence polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Path(usize),
    Cycle(usize),
    Ce(usize),
    Pan(usize),
    Bk { m: usize, n: usize },
}

pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn closed_form(kind: ClosedForm) -> Result<IntPolynomial> {
    let domain = |kind: &'static str, n: usize, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain { kind, n })
        }
    };
    let c = binomial;
    let coeffs: Vec<BigUint> = match kind {
        ClosedForm::Path(n) => {
            domain("path", n, n >= 1)?;
            let n = n as i64;
            (0..=(n + 1) / 2).map(|i| c(n + 1 - i, i)).collect()
        }
        ClosedForm::Cycle(n) => {
            domain("cycle", n, n >= 3)?;
            let n = n as i64;
            std::iter::once(BigUint::one())
                .chain((1..=n / 2).map(|i| c(n - i - 1, i - 1) * n as u64 / i as u64))
                .collect()
        }
        ClosedForm::Ce(n) => {
            domain("ce", n, n >= 4)?;
            let n = n as i64;
            (0..=n / 2)
                .map(|i| c(n - i, i) + c(n - i - 2, i - 1))
                .collect()
        }
        ClosedForm::Pan(n) => {
            domain("pan", n, n >= 3)?;
            let n = n as i64;
            (0..=n / 2 + 1)
                .map(|i| c(n - i, i) + c(n - i - 1, i - 1) + c(n - i + 1, i - 1))
                .collect()
        }
        ClosedForm::Bk { m, n } => {
            if m == 0 || n <= m {
                return Err(Error::Constraint {
                    family: "bk",
                    constraint: "requires m >= 1 and n > m".into(),
                });
            }
            let (m, n) = (m as i64, n as i64);
            (0..=n)
                .map(|i| {
                    let pow = (BigUint::one() << i as usize) - 1u32;
                    pow * c(m, i) + c(n, i)
                })
                .collect()
        }
    };
    Ok(IntPolynomial::new(coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodalReport {
    pub is_unimodal: bool,
    pub mode: Option<usize>,
}

/// Unimodality of a coefficient sequence and its mode: the unique `i` with
/// `a_{i-1} < a_i >= a_{i+1} >= .. >= a_n`, taking `a_{-1} = 0`.
///
/// For a unimodal sequence this is the first index attaining the maximum.
/// The zero polynomial has no such index and is reported non-unimodal.
pub fn unimodality_report(p: &IntPolynomial) -> UnimodalReport {
    let a = p.coeffs();
    let none = UnimodalReport {
        is_unimodal: false,
        mode: None,
    };
    if p.is_zero() {
        return none;
    }
    let peak = a
        .iter()
        .enumerate()
        .fold(0, |best, (i, c)| if *c > a[best] { i } else { best });
    let rises = a[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falls = a[peak..].windows(2).all(|w| w[0] >= w[1]);
    if rises && falls {
        UnimodalReport {
            is_unimodal: true,
            mode: Some(peak),
        }
    } else {
        none
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeFamily {
    Path,
    Cycle,
}

/// Mode of `I(P_n;t)` or `I(C_n;t)` in exact integer arithmetic.
///
/// Paths: least `i >= 0` with `5i^2 - (5n+2)i + n^2 - 1 <= 0`, which equals
/// `ceil((5n + 2 - sqrt(5n^2 + 20n + 24)) / 10)`.
/// Cycles: least `i >= 1` with `5i^2 - (5n-4)i + n^2 - 2n + 1 <= 0`, which
/// equals `ceil((5n - 4 - sqrt(5n^2 - 4)) / 10)`.
pub fn mode_formula(family: ModeFamily, n: usize) -> Result<usize> {
    let m = n as i128;
    let (start, quad): (usize, Box<dyn Fn(i128) -> i128>) = match family {
        ModeFamily::Path => {
            if n < 1 {
                return Err(Error::OutOfDomain { kind: "path", n });
            }
            (
                0,
                Box::new(move |i| 5 * i * i - (5 * m + 2) * i + m * m - 1),
            )
        }
        ModeFamily::Cycle => {
            if n < 3 {
                return Err(Error::OutOfDomain { kind: "cycle", n });
            }
            (
                1,
                Box::new(move |i| 5 * i * i - (5 * m - 4) * i + m * m - 2 * m + 1),
            )
        }
    };
    // the smaller root is below n/2, so the scan is bounded
    (start..=n)
        .find(|&i| quad(i as i128) <= 0)
        .ok_or(Error::Inconsistent(format!("no mode found for n = {n}")))
}
