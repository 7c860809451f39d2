//! Graded pieces of `A(G)` and the multiplication maps by `l = x_1 + .. + x_n`.
//!
//! `[A(G)]_k` has the basis of squarefree monomials on `k`-element
//! independent sets. For an independent set `S`, `l * x^S` is the sum of
//! `x^(S + v)` over the vertices `v` outside the closed neighborhood of `S`;
//! every other product vanishes modulo the squares and the edge ideal. For
//! monomial ideals, `l` is a Lefschetz element whenever one exists.

use std::collections::HashMap;
use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indpoly::unimodality_report;
use crate::linalg::{
    random_prime, rank_certified, rank_exact, rank_mod_p, CertifyOptions, RankMethod, RankResult,
    RankTarget, SparseMatrix,
};
use crate::poly::IntPolynomial;
use crate::vertex_set::VertexSet;

/// Default ceiling on `max(h_k, h_{k+1})` for certifying a rank deficiency
/// in characteristic zero.
pub const DEFAULT_MAX_BASIS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    pub fn from_u64(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Self::Zero),
            p if crate::linalg::is_prime(p) && p < 1 << 63 => Ok(Self::Prime(p)),
            p => Err(Error::NotPrime(p)),
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            Self::Zero => 0,
            Self::Prime(p) => p,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u64())
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.as_u64())
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = u64::deserialize(d)?;
        Self::from_u64(c).map_err(serde::de::Error::custom)
    }
}

/// How characteristic-zero ranks are established.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifyMode {
    /// Modular rank, then kernel certificate, then exact elimination.
    #[default]
    Auto,
    /// Fraction-free elimination for every degree.
    Exact,
    /// One modular rank per degree; deficiencies are left uncertified.
    Fast,
}

impl fmt::Display for CertifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertifyMode::Auto => "auto",
            CertifyMode::Exact => "exact",
            CertifyMode::Fast => "fast",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WlpOptions {
    pub characteristic: Characteristic,
    pub certify: CertifyMode,
    pub seed: Option<u64>,
    /// `None` lifts the ceiling entirely.
    pub max_basis: Option<usize>,
}

impl Default for WlpOptions {
    fn default() -> Self {
        Self {
            characteristic: Characteristic::Zero,
            certify: CertifyMode::Auto,
            seed: None,
            max_basis: Some(DEFAULT_MAX_BASIS),
        }
    }
}

impl WlpOptions {
    pub fn with_characteristic(mut self, c: Characteristic) -> Self {
        self.characteristic = c;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_certify(mut self, mode: CertifyMode) -> Self {
        self.certify = mode;
        self
    }

    pub fn with_max_basis(mut self, limit: Option<usize>) -> Self {
        self.max_basis = limit;
        self
    }

    /// Per-degree seed, so results do not depend on scheduling.
    fn degree_seed(&self, k: usize) -> Option<u64> {
        self.seed
            .map(|s| s ^ (k as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sense {
    Injective,
    Surjective,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Injective => "injective",
            Sense::Surjective => "surjective",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBasis {
    pub k: usize,
    /// 0-based independent sets in increasing integer order.
    pub sets: Vec<VertexSet>,
}

/// All graded pieces up to some degree, with reverse lookup.
struct Bases {
    levels: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, u32>>,
}

impl Bases {
    /// Levels `0..=top`, stopping early once a level is empty.
    fn build(g: &Graph, top: usize) -> Self {
        let mut levels = vec![vec![VertexSet::new()]];
        while levels.len() <= top {
            let prev = levels.last().expect("level 0 exists");
            let mut next = Vec::new();
            for set in prev {
                let blocked = set
                    .iter()
                    .fold(VertexSet::new(), |acc, v| acc.union(&g.closed_row(v)));
                let start = set.last().map_or(0, |v| v + 1);
                for v in start..g.n() {
                    if !blocked.contains(v) {
                        let mut bigger = set.clone();
                        bigger.insert(v);
                        next.push(bigger);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            levels.push(next);
        }
        let index = levels
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i as u32))
                    .collect()
            })
            .collect();
        Self { levels, index }
    }

    fn dim(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, Vec::len)
    }

    fn socle_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// Matrix of `l: [A]_k -> [A]_{k+1}`; rows are indexed by degree `k+1`.
    fn matrix(&self, k: usize) -> SparseMatrix {
        let cols = self.dim(k);
        let Some(targets) = self.levels.get(k + 1) else {
            return SparseMatrix::zeros(0, cols);
        };
        let entries = targets
            .iter()
            .map(|t| {
                t.iter()
                    .map(|v| {
                        let mut s = t.clone();
                        s.remove(v);
                        self.index[k][&s]
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::new(targets.len(), cols, entries).expect("basis indices are in range")
    }
}

pub fn degree_basis(g: &Graph, k: usize) -> DegreeBasis {
    let bases = Bases::build(g, k);
    DegreeBasis {
        k,
        sets: bases.levels.get(k).cloned().unwrap_or_default(),
    }
}

/// Matrix of multiplication by `l` from degree `k` to `k + 1`: rows indexed
/// by `degree_basis(g, k + 1)`, columns by `degree_basis(g, k)`, with a one
/// at `(T, S)` iff `S` is contained in `T`.
pub fn lefschetz_matrix(g: &Graph, k: usize) -> SparseMatrix {
    Bases::build(g, k + 1).matrix(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRankRecord {
    pub k: usize,
    pub h_k: usize,
    pub h_k1: usize,
    pub rank: usize,
    pub injective_fail: bool,
    pub surjective_fail: bool,
    pub method: RankMethod,
    pub certified: bool,
}

impl DegreeRankRecord {
    fn new(k: usize, h_k: usize, h_k1: usize, r: RankResult) -> Self {
        Self {
            k,
            h_k,
            h_k1,
            rank: r.rank,
            injective_fail: r.rank < h_k,
            surjective_fail: r.rank < h_k1,
            method: r.method,
            certified: r.certified,
        }
    }

    pub fn has_max_rank(&self) -> bool {
        self.rank >= self.h_k.min(self.h_k1)
    }

    /// The sense the dimensions call for: injective when `h_k <= h_{k+1}`.
    pub fn expected_sense(&self) -> Sense {
        if self.h_k <= self.h_k1 {
            Sense::Injective
        } else {
            Sense::Surjective
        }
    }

    pub fn fails(&self, sense: Sense) -> bool {
        match sense {
            Sense::Injective => self.injective_fail,
            Sense::Surjective => self.surjective_fail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpVerdict {
    pub spec: Option<String>,
    pub characteristic: Characteristic,
    pub has_wlp: bool,
    pub socle_degree: usize,
    pub records: Vec<DegreeRankRecord>,
}

impl WlpVerdict {
    pub fn with_spec(mut self, spec: impl Into<String>) -> Self {
        self.spec = Some(spec.into());
        self
    }

    pub fn hilbert_series(&self) -> IntPolynomial {
        IntPolynomial::from_u64s(
            &self
                .records
                .iter()
                .map(|r| r.h_k as u64)
                .collect::<Vec<_>>(),
        )
    }

    /// Hilbert series of `A / lA`: `h_k - rank(l: [A]_{k-1} -> [A]_k)`.
    pub fn quotient_series(&self) -> IntPolynomial {
        let coeffs: Vec<u64> = self
            .records
            .iter()
            .map(|r| {
                let incoming = r.k.checked_sub(1).map_or(0, |j| self.records[j].rank);
                (r.h_k - incoming) as u64
            })
            .collect();
        IntPolynomial::from_u64s(&coeffs)
    }

    /// Degrees whose map falls short of maximal rank.
    pub fn deficient_degrees(&self) -> Vec<usize> {
        self.records
            .iter()
            .filter(|r| !r.has_max_rank())
            .map(|r| r.k)
            .collect()
    }

    /// Whether every rank is certified for the requested characteristic.
    pub fn certified(&self) -> bool {
        self.records.iter().all(|r| r.certified)
    }
}

fn degree_record(bases: &Bases, k: usize, opts: &WlpOptions) -> Result<DegreeRankRecord> {
    let m = bases.matrix(k);
    let (h_k, h_k1) = (bases.dim(k), bases.dim(k + 1));
    let size = h_k.max(h_k1);
    let over_budget = opts.max_basis.is_some_and(|limit| size > limit);
    let budget_error = || Error::BudgetExceeded {
        degree: k,
        size,
        limit: opts.max_basis.unwrap_or(usize::MAX),
    };
    let mut rng = match opts.degree_seed(k) {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_entropy(),
    };

    let result = match (opts.characteristic, opts.certify) {
        (Characteristic::Prime(p), _) => rank_mod_p(&m, p, RankTarget::PrimeField)?,
        (Characteristic::Zero, CertifyMode::Fast) => {
            rank_mod_p(&m, random_prime(&mut rng), RankTarget::Rationals)?
        }
        (Characteristic::Zero, CertifyMode::Exact) => {
            if over_budget {
                return Err(budget_error());
            }
            rank_exact(&m)
        }
        (Characteristic::Zero, CertifyMode::Auto) => {
            if over_budget {
                let r = rank_mod_p(&m, random_prime(&mut rng), RankTarget::Rationals)?;
                if !r.certified {
                    return Err(budget_error());
                }
                r
            } else {
                let certify = CertifyOptions {
                    seed: Some(rng.next_u64()),
                    max_primes: None,
                };
                rank_certified(&m, &certify)
            }
        }
    };
    Ok(DegreeRankRecord::new(k, h_k, h_k1, result))
}

/// Decides the WLP of `A(G)` from the ranks of `l` in every degree
/// `0..=D`, where the last record is the map into the zero space.
pub fn wlp_check(g: &Graph, opts: &WlpOptions) -> Result<WlpVerdict> {
    let bases = Bases::build(g, g.n() + 1);
    let socle_degree = bases.socle_degree();
    let records = (0..=socle_degree)
        .into_par_iter()
        .map(|k| degree_record(&bases, k, opts))
        .collect::<Result<Vec<_>>>()?;
    let has_wlp = records.iter().all(DegreeRankRecord::has_max_rank);
    let verdict = WlpVerdict {
        spec: None,
        characteristic: opts.characteristic,
        has_wlp,
        socle_degree,
        records,
    };
    if has_wlp && !unimodality_report(&verdict.hilbert_series()).is_unimodal {
        return Err(Error::Inconsistent(
            "maximal rank in every degree with a non-unimodal Hilbert series".into(),
        ));
    }
    Ok(verdict)
}

/// Rank record of the single map `l: [A]_k -> [A]_{k+1}`.
pub fn degree_rank(g: &Graph, k: usize, opts: &WlpOptions) -> Result<DegreeRankRecord> {
    degree_record(&Bases::build(g, k + 1), k, opts)
}

/// Hilbert series of `A(G) / l A(G)`.
pub fn hilbert_quotient(g: &Graph, opts: &WlpOptions) -> Result<IntPolynomial> {
    Ok(wlp_check(g, opts)?.quotient_series())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorWitness {
    /// Both factor maps fail and so does the predicted map of the union.
    Confirmed,
    /// Both factor maps fail but the predicted map of the union does not.
    Refuted,
    /// At least one factor map has the required property; nothing to check.
    Vacuous,
}

impl TensorWitness {
    pub fn holds(self) -> bool {
        self != TensorWitness::Refuted
    }
}

/// Checks failure propagation to `A(g1) (x) A(g2) = A(g1 + g2)`: if `l`
/// fails `sense` on `A(g1)` at degree `i` and on `A(g2)` at degree `j`,
/// it fails on the union at degree `i + j + 1` (surjective) or `i + j`
/// (injective).
pub fn tensor_failure_witness(
    g1: &Graph,
    i: usize,
    g2: &Graph,
    j: usize,
    sense: Sense,
    opts: &WlpOptions,
) -> Result<TensorWitness> {
    let a = degree_rank(g1, i, opts)?;
    let b = degree_rank(g2, j, opts)?;
    for (rec, g) in [(&a, g1), (&b, g2)] {
        if rec.h_k == 0 {
            return Err(Error::DegreeOutOfRange {
                degree: rec.k,
                socle: Bases::build(g, rec.k).socle_degree(),
            });
        }
    }
    if !(a.fails(sense) && b.fails(sense)) {
        return Ok(TensorWitness::Vacuous);
    }
    let degree = match sense {
        Sense::Surjective => i + j + 1,
        Sense::Injective => i + j,
    };
    let union = degree_rank(&g1.disjoint_union(g2), degree, opts)?;
    Ok(if union.fails(sense) {
        TensorWitness::Confirmed
    } else {
        TensorWitness::Refuted
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_spec;

    fn g(spec: &str) -> Graph {
        parse_spec(spec).unwrap()
    }

    fn opts() -> WlpOptions {
        WlpOptions::default().with_seed(11)
    }

    #[test]
    fn bases() {
        let sets = |spec: &str, k| -> Vec<Vec<usize>> {
            degree_basis(&g(spec), k)
                .sets
                .iter()
                .map(|s| s.iter().map(|v| v + 1).collect())
                .collect()
        };
        assert_eq!(sets("path:3", 2), vec![vec![1, 3]]);
        assert!(sets("complete:3", 2).is_empty());
        assert_eq!(sets("empty:2", 1), vec![vec![1], vec![2]]);
        assert_eq!(sets("empty:2", 0), vec![Vec::<usize>::new()]);
        assert!(sets("path:3", 7).is_empty());
    }

    #[test]
    fn matrices() {
        assert_eq!(
            lefschetz_matrix(&g("empty:2"), 0).to_dense(),
            vec![vec![1], vec![1]]
        );
        assert_eq!(
            lefschetz_matrix(&g("path:3"), 1).to_dense(),
            vec![vec![1, 0, 1]]
        );
        let k3 = lefschetz_matrix(&g("complete:3"), 1);
        assert_eq!((k3.rows(), k3.cols()), (0, 3));
    }

    #[test]
    fn quotients() {
        let q = |spec: &str| hilbert_quotient(&g(spec), &opts()).unwrap();
        assert_eq!(q("empty:1"), IntPolynomial::from_u64s(&[1]));
        assert_eq!(q("complete:3"), IntPolynomial::from_u64s(&[1, 2]));
        assert_eq!(q("path:4"), IntPolynomial::from_u64s(&[1, 3]));
    }

    #[test]
    fn top_degree_record() {
        let v = wlp_check(&g("path:3"), &opts()).unwrap();
        let top = v.records.last().unwrap();
        assert_eq!((top.k, top.h_k, top.h_k1, top.rank), (2, 1, 0, 0));
        assert!(top.injective_fail && !top.surjective_fail && top.has_max_rank());
        assert!(v.has_wlp);
    }

    #[test]
    fn small_verdicts() {
        let has = |spec: &str, c| {
            wlp_check(&g(spec), &opts().with_characteristic(c))
                .unwrap()
                .has_wlp
        };
        assert!(has("path:7", Characteristic::Zero));
        assert!(!has("path:8", Characteristic::Zero));
        assert!(!has("empty:5", Characteristic::Prime(3)));
        assert!(has("empty:5", Characteristic::Prime(5)));
        assert!(!has("union(complete:2,complete:2)", Characteristic::Zero));
    }

    #[test]
    fn p8_fails_surjectivity_at_mode() {
        let v = wlp_check(&g("path:8"), &opts()).unwrap();
        assert_eq!(v.deficient_degrees(), vec![2]);
        assert!(v.records[2].surjective_fail);
        assert!(v.certified());
    }

    #[test]
    fn exact_and_fast_modes_agree_on_small_graphs() {
        for spec in ["path:8", "cycle:7", "pan:5", "union(complete:2,complete:3)"] {
            let auto = wlp_check(&g(spec), &opts()).unwrap();
            let exact = wlp_check(&g(spec), &opts().with_certify(CertifyMode::Exact)).unwrap();
            let fast = wlp_check(&g(spec), &opts().with_certify(CertifyMode::Fast)).unwrap();
            let ranks = |v: &WlpVerdict| v.records.iter().map(|r| r.rank).collect::<Vec<_>>();
            assert_eq!(ranks(&auto), ranks(&exact), "{spec}");
            assert_eq!(ranks(&auto), ranks(&fast), "{spec}");
            assert!(exact
                .records
                .iter()
                .all(|r| r.method == RankMethod::ExactElimination));
        }
    }

    #[test]
    fn budget_is_explicit() {
        let limited = opts().with_max_basis(Some(2));
        assert!(matches!(
            wlp_check(&g("path:8"), &limited),
            Err(Error::BudgetExceeded { .. })
        ));
        // maximal-rank degrees never need the budget
        assert!(wlp_check(&g("path:4"), &limited).is_ok());
    }

    #[test]
    fn tensor_examples() {
        let o = opts();
        let k2 = g("complete:2");
        assert_eq!(
            tensor_failure_witness(&k2, 0, &k2, 0, Sense::Surjective, &o).unwrap(),
            TensorWitness::Confirmed
        );
        assert_eq!(
            tensor_failure_witness(&g("path:2"), 0, &g("empty:1"), 0, Sense::Injective, &o)
                .unwrap(),
            TensorWitness::Vacuous
        );
        let p7 = g("path:7");
        assert_eq!(
            tensor_failure_witness(&p7, 4, &p7, 4, Sense::Injective, &o).unwrap(),
            TensorWitness::Confirmed
        );
        assert!(tensor_failure_witness(&p7, 5, &p7, 0, Sense::Injective, &o).is_err());
    }
}
