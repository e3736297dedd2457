//! Inclusion–exclusion (pseudocyclotomic) polynomials over pairwise coprime parts.
//!
//! For parts `p_1, ..., p_k` the polynomial is
//! `Π_{I ⊆ [k]} (x^(Π_{i∈I} p_i) - 1)^((-1)^(k-|I|))`. With prime parts it is an
//! ordinary cyclotomic polynomial; in general it is a product of cyclotomic
//! polynomials, one for each choice of divisors `m_i | p_i` with `m_i > 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycloIndex;
use crate::intpoly::IntPolynomial;
use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PseudoError {
    #[error("parts {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("parts must be positive")]
    ZeroPart,
    #[error("a part equal to 1 has no divisors greater than 1")]
    UnitPart,
    #[error("cannot parse parts: {0}")]
    Parse(String),
}

/// Pairwise coprime positive parts. Outputs never depend on their order; the
/// order given by the caller is kept only for display.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PseudoParts {
    given: Vec<u64>,
    sorted: Vec<u64>,
}

impl PseudoParts {
    pub fn new(parts: Vec<u64>) -> Result<Self, PseudoError> {
        if parts.contains(&0) {
            return Err(PseudoError::ZeroPart);
        }
        for (i, &a) in parts.iter().enumerate() {
            for &b in &parts[i + 1..] {
                if numtheory::gcd(a, b) != 1 {
                    return Err(PseudoError::NotCoprime(a, b));
                }
            }
        }
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        Ok(PseudoParts {
            given: parts,
            sorted,
        })
    }

    /// Parts in ascending order.
    pub fn parts(&self) -> &[u64] {
        &self.sorted
    }

    /// Parts in the order they were supplied.
    pub fn given(&self) -> &[u64] {
        &self.given
    }

    pub fn product(&self) -> u64 {
        self.sorted.iter().product()
    }

    /// `Π (p_i - 1)`.
    pub fn degree(&self) -> u64 {
        self.sorted.iter().map(|p| p - 1).product()
    }

    /// The same parts with `extra` appended.
    pub fn with(&self, extra: u64) -> Result<Self, PseudoError> {
        let mut v = self.given.clone();
        v.push(extra);
        Self::new(v)
    }
}

impl TryFrom<Vec<u64>> for PseudoParts {
    type Error = PseudoError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<PseudoParts> for Vec<u64> {
    fn from(p: PseudoParts) -> Self {
        p.given
    }
}

impl fmt::Display for PseudoParts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.given.iter().map(u64::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for PseudoParts {
    type Err = PseudoError;

    /// Comma separated, e.g. `3,5,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| PseudoError::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }
}

/// Products `Π_{i∈I} p_i` over subsets `I`, split by the parity of `k - |I|`.
fn subset_products(parts: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let k = parts.len();
    let (mut num, mut den) = (Vec::new(), Vec::new());
    for mask in 0u32..(1 << k) {
        let prod: u64 = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).product();
        if (k - mask.count_ones() as usize) % 2 == 0 {
            num.push(prod);
        } else {
            den.push(prod);
        }
    }
    (num, den)
}

/// `(x^d - 1) * a`.
fn times_binomial(a: &IntPolynomial, d: u64) -> IntPolynomial {
    a.shift(d as usize).sub(a)
}

pub fn pseudo_phi(parts: &PseudoParts) -> IntPolynomial {
    if parts.parts().contains(&1) {
        return IntPolynomial::one();
    }
    let (num, mut den) = subset_products(parts.parts());
    let mut acc = IntPolynomial::one();
    for d in num {
        acc = times_binomial(&acc, d);
    }
    den.sort_unstable();
    for d in den {
        acc = acc
            .exact_div(&IntPolynomial::x_pow_minus_one(d as usize))
            .expect("inclusion-exclusion quotient is exact");
    }
    acc
}

/// `(x^(Π p_i) - 1) / pseudo_phi(parts)`.
pub fn pseudo_psi(parts: &PseudoParts) -> IntPolynomial {
    IntPolynomial::x_pow_minus_one(parts.product() as usize)
        .exact_div(&pseudo_phi(parts))
        .expect("pseudo_phi divides x^N - 1")
}

/// The cyclotomic indices `m_1 ⋯ m_k` with `m_i | p_i`, `m_i > 1`, ascending.
pub fn pseudo_factorization(parts: &PseudoParts) -> Result<Vec<CycloIndex>, PseudoError> {
    if parts.parts().contains(&1) {
        return Err(PseudoError::UnitPart);
    }
    let mut indices = vec![1u64];
    for &p in parts.parts() {
        let divs: Vec<u64> = numtheory::divisors(p).into_iter().filter(|&d| d > 1).collect();
        indices = indices
            .iter()
            .flat_map(|&acc| divs.iter().map(move |&d| acc * d))
            .collect();
    }
    indices.sort_unstable();
    Ok(indices
        .into_iter()
        .map(|n| CycloIndex::new(n).expect("positive"))
        .collect())
}
