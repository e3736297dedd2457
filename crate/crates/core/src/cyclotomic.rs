//! Cyclotomic polynomials `Φ_n` and inverse cyclotomic polynomials `Ψ_n`.
//!
//! Every algorithm works on the squarefree kernel `m = rad(n)` and expands
//! with `Φ_n(x) = Φ_m(x^(n/m))`. Four independent routes are provided so that
//! they can be checked against each other:
//!
//! * [`PhiAlgorithm::MobiusProduct`]: the Möbius product of `(1 - x^d)^μ(m/d)`
//!   evaluated as a truncated power series.
//! * [`PhiAlgorithm::RecursiveQuotient`]: `Φ_np(x) = Φ_n(x^p) / Φ_n(x)` by
//!   exact division, one prime at a time.
//! * [`PhiAlgorithm::SparseSeries`]: `Φ_np = -Ψ_n(x) Φ_n(x^p) / (1 - x^n)`,
//!   where the first product is sparse and the series division is a strided
//!   prefix sum, so each step is roughly linear in the output degree.
//! * [`PhiAlgorithm::GcdOfSparse`]: the gcd over Q of `Φ_p(x^(m/p))` for the
//!   primes `p | m`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intpoly::IntPolynomial;
use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("n must be positive")]
    NonPositive,
    #[error("unknown algorithm {0:?} (expected mobius, recursive, sparse or gcd)")]
    UnknownAlgorithm(String),
}

/// A positive integer together with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloIndex {
    pub n: u64,
    pub prime_factorization: Vec<(u64, u32)>,
    pub radical: u64,
    /// Number of distinct odd primes dividing `n`.
    pub odd_part_order: usize,
}

impl CycloIndex {
    pub fn new(n: u64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::NonPositive);
        }
        let prime_factorization = numtheory::factorize(n);
        let radical = prime_factorization.iter().map(|&(p, _)| p).product();
        let odd_part_order = prime_factorization.iter().filter(|&&(p, _)| p != 2).count();
        Ok(CycloIndex {
            n,
            prime_factorization,
            radical,
            odd_part_order,
        })
    }

    pub fn primes(&self) -> Vec<u64> {
        self.prime_factorization.iter().map(|&(p, _)| p).collect()
    }

    /// `φ(n)`, the degree of `Φ_n`.
    pub fn phi_degree(&self) -> u64 {
        self.prime_factorization
            .iter()
            .fold(self.n, |acc, &(p, _)| acc / p * (p - 1))
    }
}

impl fmt::Display for CycloIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiAlgorithm {
    MobiusProduct,
    RecursiveQuotient,
    SparseSeries,
    GcdOfSparse,
}

impl PhiAlgorithm {
    pub const ALL: [PhiAlgorithm; 4] = [
        PhiAlgorithm::MobiusProduct,
        PhiAlgorithm::RecursiveQuotient,
        PhiAlgorithm::SparseSeries,
        PhiAlgorithm::GcdOfSparse,
    ];

    /// The route `phi` takes when no algorithm is requested.
    pub fn default_for(n: u64) -> Self {
        if numtheory::distinct_primes(n).len() >= 2 {
            PhiAlgorithm::SparseSeries
        } else {
            PhiAlgorithm::MobiusProduct
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhiAlgorithm::MobiusProduct => "mobius",
            PhiAlgorithm::RecursiveQuotient => "recursive",
            PhiAlgorithm::SparseSeries => "sparse",
            PhiAlgorithm::GcdOfSparse => "gcd",
        }
    }
}

impl FromStr for PhiAlgorithm {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PhiAlgorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| CycloError::UnknownAlgorithm(s.to_string()))
    }
}

impl fmt::Display for PhiAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(rad(n), n / rad(n))`.
pub fn radical_reduce(n: u64) -> (u64, u64) {
    assert!(n >= 1, "n must be positive");
    let m = numtheory::radical(n);
    (m, n / m)
}

/// Squarefree results up to this degree are memoized.
const CACHE_MAX_DEGREE: u64 = 1 << 12;

type PhiCache = RwLock<HashMap<u64, Arc<IntPolynomial>>>;

fn cache() -> &'static PhiCache {
    static CACHE: OnceLock<PhiCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_n` by the default route, memoized on the squarefree kernel.
pub fn phi(n: u64) -> IntPolynomial {
    let (m, k) = radical_reduce(n);
    cached_squarefree(m).substitute_power(k as usize)
}

fn cached_squarefree(m: u64) -> Arc<IntPolynomial> {
    if let Some(hit) = cache().read().unwrap().get(&m) {
        return hit.clone();
    }
    let value = Arc::new(phi_squarefree(m, PhiAlgorithm::default_for(m)));
    if numtheory::totient(m) <= CACHE_MAX_DEGREE {
        cache().write().unwrap().insert(m, value.clone());
    }
    value
}

/// `Φ_n` by a specific algorithm, bypassing the memo cache.
pub fn phi_with(n: u64, alg: PhiAlgorithm) -> IntPolynomial {
    let (m, k) = radical_reduce(n);
    phi_squarefree(m, alg).substitute_power(k as usize)
}

fn phi_squarefree(m: u64, alg: PhiAlgorithm) -> IntPolynomial {
    if m == 1 {
        return IntPolynomial::from_coeffs(vec![-1, 1]);
    }
    match alg {
        PhiAlgorithm::MobiusProduct => mobius_product(m),
        PhiAlgorithm::RecursiveQuotient => recursive_quotient(m),
        PhiAlgorithm::SparseSeries => sparse_chain(m, false, None).0,
        PhiAlgorithm::GcdOfSparse => gcd_of_sparse(m),
    }
}

fn mobius_product(m: u64) -> IntPolynomial {
    let limit = numtheory::totient(m) as usize;
    let divisors = numtheory::divisors(m);
    // Numerator factors first so the series stays a polynomial throughout.
    let mut acc = IntPolynomial::one();
    for &d in &divisors {
        if numtheory::mobius(m / d) == 1 {
            acc = acc.mul_one_minus_x_pow(d as usize, limit);
        }
    }
    for &d in &divisors {
        if numtheory::mobius(m / d) == -1 {
            acc = acc.div_one_minus_x_pow(d as usize, limit);
        }
    }
    acc
}

fn recursive_quotient(m: u64) -> IntPolynomial {
    let primes = numtheory::distinct_primes(m);
    let mut acc = IntPolynomial::geometric(1, primes[0] as usize);
    for &p in &primes[1..] {
        acc = acc
            .substitute_power(p as usize)
            .exact_div(&acc)
            .expect("Φ_n(x) divides Φ_n(x^p)");
    }
    acc
}

/// `(Φ_m, Ψ_m)` for squarefree `m > 1`. `Ψ_m` is only meaningful when
/// requested, and `limit` truncates the final `Φ_m`.
fn sparse_chain(m: u64, want_psi: bool, limit: Option<usize>) -> (IntPolynomial, IntPolynomial) {
    let primes = numtheory::distinct_primes(m);
    let mut n = primes[0];
    let mut phi = IntPolynomial::geometric(1, n as usize);
    let mut psi = IntPolynomial::from_coeffs(vec![-1, 1]);
    for (i, &p) in primes.iter().enumerate().skip(1) {
        let np = n * p;
        let last = i + 1 == primes.len();
        let mut deg = (numtheory::totient(n) * (p - 1)) as usize;
        if last {
            deg = deg.min(limit.unwrap_or(usize::MAX));
        }
        let lifted = phi.substitute_power(p as usize);
        let next_phi = psi
            .mul_truncated(&lifted, deg)
            .div_one_minus_x_pow(n as usize, deg)
            .neg();
        if !last || want_psi {
            psi = psi.substitute_power(p as usize).mul(&phi);
        }
        phi = next_phi;
        n = np;
    }
    (phi, psi)
}

fn gcd_of_sparse(m: u64) -> IntPolynomial {
    let primes = numtheory::distinct_primes(m);
    if primes.len() == 1 {
        return IntPolynomial::geometric(1, m as usize);
    }
    let mut parts: Vec<IntPolynomial> = primes
        .iter()
        .map(|&p| IntPolynomial::geometric((m / p) as usize, p as usize))
        .collect();
    // Low-degree inputs first keeps the remainder sequence short.
    parts.sort_by_key(|f| f.len());
    let mut acc = parts[0].clone();
    for f in &parts[1..] {
        acc = acc.gcd(f);
    }
    acc
}

/// The terms of `Φ_n` of degree at most `limit`. For squarefree kernels of
/// order at least two the final series step is truncated, so asking for
/// half the degree costs about half the work.
pub fn phi_prefix(n: u64, limit: usize) -> IntPolynomial {
    let (m, k) = radical_reduce(n);
    let k = k as usize;
    let base = if let Some(hit) = cache().read().unwrap().get(&m) {
        hit.truncate(limit / k)
    } else if numtheory::distinct_primes(m).len() >= 2 {
        sparse_chain(m, false, Some(limit / k)).0
    } else {
        phi_squarefree(m, PhiAlgorithm::MobiusProduct).truncate(limit / k)
    };
    base.substitute_power(k).truncate(limit)
}

/// `Ψ_n = (x^n - 1) / Φ_n`.
pub fn psi(n: u64) -> IntPolynomial {
    let (m, k) = radical_reduce(n);
    // (x^(mk) - 1) / Φ_m(x^k) = Ψ_m(x^k)
    psi_squarefree(m).substitute_power(k as usize)
}

fn psi_squarefree(m: u64) -> IntPolynomial {
    match m {
        1 => IntPolynomial::one(),
        _ if numtheory::is_prime(m) => IntPolynomial::from_coeffs(vec![-1, 1]),
        _ => sparse_chain(m, true, None).1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(v.to_vec())
    }

    #[test]
    fn small_values_all_algorithms() {
        for alg in PhiAlgorithm::ALL {
            assert_eq!(phi_with(1, alg), p(&[-1, 1]), "{alg}");
            assert_eq!(phi_with(2, alg), p(&[1, 1]), "{alg}");
            assert_eq!(phi_with(5, alg), p(&[1, 1, 1, 1, 1]), "{alg}");
            assert_eq!(phi_with(12, alg), p(&[1, 0, -1, 0, 1]), "{alg}");
            assert_eq!(phi_with(15, alg), p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]), "{alg}");
            assert_eq!(phi_with(30, alg), p(&[1, 1, 0, -1, -1, -1, 0, 1, 1]), "{alg}");
        }
    }

    #[test]
    fn phi105_has_minus_two() {
        let f = phi(105);
        assert_eq!(f.len(), 49);
        assert_eq!(f.coeff_i64(7), Some(-2));
        assert_eq!(f.height(), 2.into());
    }

    #[test]
    fn prefix_matches_full() {
        for n in [1u64, 7, 12, 105, 210, 1155, 3 * 5 * 7 * 11 * 13] {
            let full = phi(n);
            for limit in [0usize, 3, full.len() / 2, full.len() + 5] {
                assert_eq!(phi_prefix(n, limit), full.truncate(limit), "n={n} limit={limit}");
            }
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(1), p(&[1]));
        assert_eq!(psi(7), p(&[-1, 1]));
        assert_eq!(psi(15), p(&[-1, -1, -1, 0, 0, 1, 1, 1]));
        for n in [6u64, 12, 30, 105, 210, 9] {
            assert_eq!(phi(n).mul(&psi(n)), IntPolynomial::x_pow_minus_one(n as usize), "n={n}");
        }
    }

    #[test]
    fn radical_reduction() {
        assert_eq!(radical_reduce(12), (6, 2));
        assert_eq!(radical_reduce(105), (105, 1));
        assert_eq!(radical_reduce(1), (1, 1));
    }

    #[test]
    fn index_metadata() {
        let c = CycloIndex::new(210).unwrap();
        assert_eq!(c.odd_part_order, 3);
        assert_eq!(c.radical, 210);
        assert_eq!(c.phi_degree(), 48);
        assert_eq!(CycloIndex::new(0), Err(CycloError::NonPositive));
        assert_eq!("gcd".parse::<PhiAlgorithm>().unwrap(), PhiAlgorithm::GcdOfSparse);
        assert!("fft".parse::<PhiAlgorithm>().is_err());
    }
}
