use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial in `t` with nonnegative arbitrary-precision coefficients,
/// stored lowest degree first with no trailing zeros (the zero polynomial
/// is the single coefficient `0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigUint>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        Self { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_u64s(&[1])
    }

    /// `1 + t`
    pub fn one_plus_t() -> Self {
        Self::from_u64s(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigUint::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval(&self, t: u64) -> BigUint {
        let t = BigUint::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * &t + c)
    }

    /// Coefficients as `u64`, if they all fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| u64::try_from(c).ok()).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..len)
                .map(|k| {
                    let mut c = self.coeff(k);
                    if let Some(d) = rhs.coeffs.get(k) {
                        c += d;
                    }
                    c
                })
                .collect(),
        )
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * &p)
    }
}

/// Renders as `1 + 6t + 10t^2 + 4t^3`, omitting zero terms.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let shown = if c.is_one() && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{shown}t")?,
                _ => write!(f, "{shown}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: array of decimal strings, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let digits = Vec::<String>::deserialize(deserializer)?;
        let coeffs = digits
            .iter()
            .map(|s| {
                s.parse::<BigUint>()
                    .map_err(|_| D::Error::custom(format!("`{s}` is not a nonnegative integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}
