use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modular::{echelon, Echelon, Montgomery};
use super::{random_prime, rank_exact, RankMethod, RankResult, SparseMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Seed for the random primes; `None` draws from the OS.
    pub seed: Option<u64>,
    /// Cap on primes spent reconstructing kernel vectors. `None` derives the
    /// cap from the Hadamard bound of the matrix.
    pub max_primes: Option<usize>,
}

impl CertifyOptions {
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed: Some(seed),
            max_primes: None,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        match self.seed {
            Some(s) => ChaCha8Rng::seed_from_u64(s),
            None => ChaCha8Rng::from_entropy(),
        }
    }
}

/// Exact witness that a matrix has rank at most `rank`: integer vectors in
/// the right kernel of the matrix (or of its transpose, see `transposed`),
/// each with a nonzero entry on its own free column and zeros on the other
/// free columns, hence independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub rank: usize,
    pub transposed: bool,
    pub free_cols: Vec<usize>,
    pub vectors: Vec<Vec<BigInt>>,
    pub primes_used: usize,
}

impl KernelCertificate {
    /// Re-checks every vector against `m` with exact integer arithmetic.
    pub fn verify(&self, m: &SparseMatrix) -> bool {
        let oriented = if self.transposed {
            m.transpose()
        } else {
            m.clone()
        };
        self.vectors.len() == self.free_cols.len()
            && self.vectors.iter().zip(&self.free_cols).all(|(v, &f)| {
                v.len() == oriented.cols()
                    && !v[f].is_zero()
                    && self.free_cols.iter().all(|&g| g == f || v[g].is_zero())
                    && oriented.mul_vec(v).iter().all(Zero::is_zero)
            })
    }
}

/// Rank over `Q`, always certified.
///
/// A random ~62-bit prime is tried first; maximal modular rank settles it.
/// Otherwise the modular kernel is lifted to exact integer vectors by CRT
/// and rational reconstruction and checked by multiplication, which bounds
/// the rank from above. If that fails within the prime budget the rank
/// comes from fraction-free elimination.
pub fn rank_certified(m: &SparseMatrix, opts: &CertifyOptions) -> RankResult {
    let mut rng = opts.rng();
    let transposed = m.cols() > m.rows();
    let oriented = if transposed { m.transpose() } else { m.clone() };
    let first = echelon(&oriented, Montgomery::new(random_prime(&mut rng)));
    if first.rank() == oriented.cols() {
        return RankResult {
            rank: first.rank(),
            certified: true,
            method: RankMethod::Modular,
        };
    }
    match lift_kernel(&oriented, &mut rng, first, None, opts.max_primes) {
        Some(cert) => RankResult {
            rank: cert.rank,
            certified: true,
            method: RankMethod::KernelCertificate,
        },
        None => rank_exact(m),
    }
}

/// Lifts kernel vectors of `m` (if `cols <= rows`) or of its transpose to
/// verified integer vectors. With `limit`, only that many vectors are
/// produced; the certificate then proves a rank deficiency of at least
/// `limit` rather than the exact rank.
pub fn kernel_certificate(
    m: &SparseMatrix,
    opts: &CertifyOptions,
    limit: Option<usize>,
) -> Option<KernelCertificate> {
    let mut rng = opts.rng();
    let transposed = m.cols() > m.rows();
    let oriented = if transposed { m.transpose() } else { m.clone() };
    let first = echelon(&oriented, Montgomery::new(random_prime(&mut rng)));
    let mut cert = lift_kernel(&oriented, &mut rng, first, limit, opts.max_primes)?;
    cert.transposed = transposed;
    Some(cert)
}

/// Residues of the kernel vectors on the pivot columns, combined by CRT.
struct Accumulator {
    pivot_cols: Vec<usize>,
    free_cols: Vec<usize>,
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

impl Accumulator {
    fn start(e: &Echelon, limit: Option<usize>) -> Self {
        let mut free_cols = e.free_cols();
        if let Some(l) = limit {
            free_cols.truncate(l);
        }
        let residues = free_cols
            .iter()
            .map(|&f| {
                let x = e.kernel_vector(f);
                e.pivot_cols.iter().map(|&c| BigInt::from(x[c])).collect()
            })
            .collect();
        Self {
            pivot_cols: e.pivot_cols.clone(),
            free_cols,
            residues,
            modulus: BigInt::from(e.field.modulus()),
        }
    }

    fn absorb(&mut self, e: &Echelon) {
        let p = e.field.modulus();
        let m_mod_p = (&self.modulus % p)
            .to_u64_digits()
            .1
            .first()
            .copied()
            .unwrap_or(0);
        let m_inv = inv_mod(m_mod_p, p);
        for (vec, &f) in self.residues.iter_mut().zip(&self.free_cols) {
            let x = e.kernel_vector(f);
            for (acc, &c) in vec.iter_mut().zip(&self.pivot_cols) {
                let acc_mod_p = (&*acc % p).to_u64_digits().1.first().copied().unwrap_or(0);
                let diff = (x[c] as u128 + p as u128 - acc_mod_p as u128) % p as u128;
                let t = (diff * m_inv as u128 % p as u128) as u64;
                if t != 0 {
                    *acc += &self.modulus * t;
                }
            }
        }
        self.modulus *= p;
    }

    /// Reconstructs and verifies every vector; `None` if any fails.
    fn try_lift(&self, m: &SparseMatrix) -> Option<Vec<Vec<BigInt>>> {
        self.residues
            .iter()
            .zip(&self.free_cols)
            .map(|(res, &f)| {
                let v = reconstruct_vector(res, &self.modulus, &self.pivot_cols, f, m.cols())?;
                m.mul_vec(&v).iter().all(Zero::is_zero).then_some(v)
            })
            .collect()
    }
}

fn lift_kernel(
    m: &SparseMatrix,
    rng: &mut ChaCha8Rng,
    first: Echelon,
    limit: Option<usize>,
    max_primes: Option<usize>,
) -> Option<KernelCertificate> {
    let budget = max_primes.unwrap_or_else(|| hadamard_prime_budget(m));
    let mut acc = Accumulator::start(&first, limit);
    let mut rank = first.rank();
    let mut primes_used = 1;
    loop {
        if acc.free_cols.is_empty() {
            // full column rank: nothing to lift, the modular rank is exact
            return (rank == m.cols()).then(|| KernelCertificate {
                rank,
                transposed: false,
                free_cols: Vec::new(),
                vectors: Vec::new(),
                primes_used,
            });
        }
        if let Some(vectors) = acc.try_lift(m) {
            return Some(KernelCertificate {
                rank,
                transposed: false,
                free_cols: acc.free_cols.clone(),
                vectors,
                primes_used,
            });
        }
        if primes_used >= budget {
            return None;
        }
        let e = echelon(m, Montgomery::new(random_prime(rng)));
        primes_used += 1;
        let better = e.rank() > rank || (e.rank() == rank && e.pivot_cols < acc.pivot_cols);
        if better {
            // the earlier primes were unlucky
            rank = e.rank();
            acc = Accumulator::start(&e, limit);
        } else if e.pivot_cols == acc.pivot_cols {
            acc.absorb(&e);
        }
    }
}

/// Primes of ~61 bits needed to reconstruct fractions whose numerator and
/// denominator are minors of `m`, plus slack.
fn hadamard_prime_budget(m: &SparseMatrix) -> usize {
    let log_norms = |counts: Vec<usize>| -> f64 {
        let mut logs: Vec<f64> = counts
            .into_iter()
            .filter(|&c| c > 0)
            .map(|c| 0.5 * (c as f64).log2())
            .collect();
        logs.sort_by(|a, b| b.total_cmp(a));
        logs.iter().take(m.rows().min(m.cols())).sum()
    };
    let by_rows = log_norms((0..m.rows()).map(|i| m.row(i).len()).collect());
    let by_cols = log_norms(m.column_counts());
    let bits = 2.0 * by_rows.min(by_cols) + 2.0;
    (bits / 61.0).ceil() as usize + 2
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

/// Finds `num / den` congruent to `x` modulo `modulus` with both below
/// `sqrt(modulus / 2)` in absolute value.
fn rational_reconstruction(x: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (modulus >> 1u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), x.mod_floor(modulus));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Rebuilds the integer kernel vector for free column `free` from residues
/// on the pivot columns, clearing denominators and content.
fn reconstruct_vector(
    residues: &[BigInt],
    modulus: &BigInt,
    pivot_cols: &[usize],
    free: usize,
    cols: usize,
) -> Option<Vec<BigInt>> {
    // running common denominator keeps most reconstructions integral
    let mut common = BigInt::one();
    let mut fracs = Vec::with_capacity(residues.len());
    for r in residues {
        let scaled = (r * &common).mod_floor(modulus);
        let (num, den) = rational_reconstruction(&scaled, modulus)?;
        common *= &den;
        fracs.push((num, common.clone()));
    }
    let mut v = vec![BigInt::zero(); cols];
    v[free] = common.clone();
    for ((num, den), &c) in fracs.into_iter().zip(pivot_cols) {
        v[c] = num * (&common / den);
    }
    let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if content > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &content;
        }
    }
    Some(v)
}
