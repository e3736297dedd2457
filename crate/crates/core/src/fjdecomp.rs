//! Residue-class decomposition of `Φ_np`.
//!
//! For a prime `p ∤ n` write `f = Φ_np`, `g = Φ_p(x^n)` and `h = Φ_n(x^p)`.
//! Splitting the exponents of `f` by their class modulo `p` gives the family
//! `F_0, ..., F_(p-1)` with `f(x) = Σ x^j F_j(x^p)`. The family is extended to
//! every integer index by `F_j = x F_(j+p)`, so `x^j F_j(x^p)` depends only on
//! `j mod p`. This module builds the family, the Bézout pair behind it, the
//! `F*_j` reparameterization for `p > n`, and the periodicity comparison of
//! coefficient sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic;
use crate::intpoly::{IntPolynomial, LaurentPolynomial, PolyError};
use crate::numtheory;
use crate::pseudocyclo::{self, PseudoError, PseudoParts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FjError {
    #[error("n must be positive")]
    NonPositive,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} divides {n}")]
    NotCoprimeIndex { n: u64, p: u64 },
    #[error("requires p > n (n = {n}, p = {p})")]
    RequiresLargeP { n: u64, p: u64 },
    #[error("Bezout coefficients for n = {n}, p = {p} are not integral")]
    IntegralityFailure { n: u64, p: u64 },
    #[error("{s} is not congruent to ±{t} modulo {n}")]
    HypothesisViolated { n: u64, s: u64, t: u64 },
    #[error(transparent)]
    Pseudo(#[from] PseudoError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_pair(n: u64, p: u64) -> Result<(), FjError> {
    if n == 0 {
        return Err(FjError::NonPositive);
    }
    if !numtheory::is_prime(p) {
        return Err(FjError::NotPrime(p));
    }
    if n % p == 0 {
        return Err(FjError::NotCoprimeIndex { n, p });
    }
    Ok(())
}

/// `t mod Φ_n`, using `x^n ≡ 1` to fold before the remainder.
fn reduce_mod_phi(t: &IntPolynomial, n: u64, phi_n: &IntPolynomial) -> IntPolynomial {
    t.fold_mod_x_pow_minus_one(n as usize)
        .rem(phi_n)
        .expect("Φ_n is monic")
}

/// The unique minimal-degree pair with `Φ_np = a·Φ_p(x^n) + b·Φ_n(x^p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutSplit {
    pub n: u64,
    pub p: u64,
    pub a: IntPolynomial,
    pub b: IntPolynomial,
}

impl BezoutSplit {
    pub fn f(&self) -> IntPolynomial {
        cyclotomic::phi(self.n * self.p)
    }

    pub fn g(&self) -> IntPolynomial {
        IntPolynomial::geometric(self.n as usize, self.p as usize)
    }

    pub fn h(&self) -> IntPolynomial {
        cyclotomic::phi(self.n).substitute_power(self.p as usize)
    }
}

/// Inverse of `u` modulo the monic `m`, by a fraction-free extended Euclid.
///
/// The remainder sequence keeps `r_i ≡ s_i·u (mod m)` with integer
/// polynomials, dividing each pair by its joint content. When `r` reaches a
/// nonzero constant `c`, the rational inverse is `s / c`; `None` means some
/// coefficient of `s mod m` is not divisible by `c`.
fn inverse_mod(u: &IntPolynomial, m: &IntPolynomial) -> Option<IntPolynomial> {
    let (mut r0, mut s0) = (m.clone(), IntPolynomial::zero());
    let (mut r1, mut s1) = (u.clone(), IntPolynomial::one());
    while r1.len() > 1 {
        let (q, r, mult) = r0.pseudo_div_rem(&r1).ok()?;
        let s = s0.mul(&IntPolynomial::from_big_coeffs(vec![mult])).sub(&q.mul(&s1));
        let content = r.content().gcd(&s.content());
        let (r, s) = if content > BigInt::one() {
            (divide_content(&r, &content), divide_content(&s, &content))
        } else {
            (r, s)
        };
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        if r1.is_zero() {
            return None;
        }
    }
    let c = r1.constant_term();
    let s = s1.rem(m).ok()?;
    let mut out = Vec::with_capacity(s.len());
    for coeff in s.to_big_vec() {
        let (quot, rem) = coeff.div_rem(&c);
        if !rem.is_zero() {
            return None;
        }
        out.push(quot);
    }
    Some(IntPolynomial::from_big_coeffs(out))
}

fn divide_content(p: &IntPolynomial, c: &BigInt) -> IntPolynomial {
    IntPolynomial::from_big_coeffs(p.to_big_vec().into_iter().map(|x| x / c).collect())
}

pub fn bezout_split(n: u64, p: u64) -> Result<BezoutSplit, FjError> {
    check_pair(n, p)?;
    let phi_n = cyclotomic::phi(n);
    // g / f = Π_{d | n, d < n} Φ_pd, and h / f = Φ_n. Reduce the first
    // cofactor modulo the second factor by factor.
    let mut u = IntPolynomial::one();
    for d in numtheory::divisors(n) {
        if d < n {
            let factor = reduce_mod_phi(&cyclotomic::phi(p * d), n, &phi_n);
            u = reduce_mod_phi(&u.mul(&factor), n, &phi_n);
        }
    }
    let a = if phi_n.len() <= 1 {
        IntPolynomial::zero()
    } else {
        inverse_mod(&u, &phi_n).ok_or(FjError::IntegralityFailure { n, p })?
    };
    let f = cyclotomic::phi(n * p);
    let g = IntPolynomial::geometric(n as usize, p as usize);
    let h = phi_n.substitute_power(p as usize);
    let ag = a.mul_truncated(&g, usize::MAX - 1);
    let b = f
        .sub(&ag)
        .exact_div(&h)
        .map_err(|_| FjError::IntegralityFailure { n, p })?;
    Ok(BezoutSplit { n, p, a, b })
}

/// `F_0, ..., F_(p-1)` for the pair `(n, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FjFamily {
    pub n: u64,
    pub p: u64,
    pub members: Vec<IntPolynomial>,
}

impl FjFamily {
    pub fn get(&self, j: usize) -> &IntPolynomial {
        &self.members[j]
    }

    /// `Σ x^j F_j(x^p)`, which equals `Φ_np`.
    pub fn reassemble(&self) -> IntPolynomial {
        let p = self.p as usize;
        let len = self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(j, m)| (m.len() - 1) * p + j + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![BigInt::zero(); len];
        for (j, m) in self.members.iter().enumerate() {
            for (i, c) in m.to_big_vec().into_iter().enumerate() {
                out[i * p + j] = c;
            }
        }
        IntPolynomial::from_big_coeffs(out)
    }

    /// Upper bound on `deg F_j`: `φ(n) - ⌈(φ(n) + j) / p⌉`.
    pub fn degree_bound(&self, j: u64) -> i64 {
        let phi = numtheory::totient(self.n);
        phi as i64 - (phi + j).div_ceil(self.p) as i64
    }
}

pub fn fj_family(n: u64, p: u64) -> Result<FjFamily, FjError> {
    check_pair(n, p)?;
    let f = cyclotomic::phi(n * p);
    let members = (0..p as i64)
        .map(|j| f.extract_residue(p, j).expect("j < p"))
        .collect();
    Ok(FjFamily { n, p, members })
}

/// `F_j` for any integer `j`: `x^(-⌊j/p⌋) F_(j mod p)`.
pub fn fj_extended(family: &FjFamily, j: i64) -> LaurentPolynomial {
    let p = family.p as i64;
    let base = &family.members[j.rem_euclid(p) as usize];
    LaurentPolynomial::new(-j.div_euclid(p), base.clone())
}

/// `G_j`: residue classes of `a·g` modulo `p`.
pub fn gj_family(split: &BezoutSplit) -> Vec<IntPolynomial> {
    let ag = split.a.mul_truncated(&split.g(), usize::MAX - 1);
    (0..split.p as i64)
        .map(|j| ag.extract_residue(split.p, j).expect("j < p"))
        .collect()
}

/// Residue class `j` modulo the last part `w` of `Φ̃_{parts, w}`.
pub fn pseudo_fj(parts: &PseudoParts, w: u64, j: i64) -> Result<IntPolynomial, FjError> {
    let full = parts.with(w)?;
    Ok(pseudocyclo::pseudo_phi(&full).extract_residue(w, j)?)
}

/// `F_0` for `(n, p)` with `p > n`, read off the smaller pseudocyclotomic
/// `Φ̃_{p_1, ..., p_k, w}` where `w = p mod n` and `n = p_1 ⋯ p_k`.
pub fn f0_fast(primes: &[u64], p: u64) -> Result<IntPolynomial, FjError> {
    let n: u64 = primes.iter().product();
    check_pair(n, p)?;
    if p < n {
        return Err(FjError::RequiresLargeP { n, p });
    }
    if n == 1 {
        // Φ_p = Σ x^j, so every slice is 1.
        return Ok(IntPolynomial::one());
    }
    let w = p % n;
    pseudo_fj(&PseudoParts::new(primes.to_vec())?, w, 0)
}

/// `F*_j ≡ x^j F_0 (mod Φ_n)` with degree below `φ(n)`, for `0 ≤ j < n`.
pub fn fstar_family(n: u64, p: u64) -> Result<Vec<IntPolynomial>, FjError> {
    check_pair(n, p)?;
    if p < n {
        return Err(FjError::RequiresLargeP { n, p });
    }
    let f0 = if numtheory::is_squarefree(n) {
        f0_fast(&numtheory::distinct_primes(n), p)?
    } else {
        fj_family(n, p)?.members.swap_remove(0)
    };
    let phi_n = cyclotomic::phi(n);
    Ok((0..n)
        .map(|j| reduce_mod_phi(&f0.shift(j as usize), n, &phi_n))
        .collect())
}

/// `F_j(0) = -Φ_n(0) [x^j] Ψ_n` for `0 ≤ j < n`, valid for every prime
/// `p > n`. `Φ_n(0) = 1` except at `n = 1`.
pub fn fj_constant_terms(n: u64) -> Vec<BigInt> {
    let psi = cyclotomic::psi(n);
    let c0 = cyclotomic::phi(n).constant_term();
    (0..n as usize).map(|j| -&c0 * psi.coeff(j)).collect()
}

/// The index whose `F` has the same coefficient set as `F_j`, by reciprocity
/// of `Φ_np`.
pub fn reciprocity_partner(n: u64, p: u64, j: u64) -> u64 {
    let z = (p - numtheory::totient(n) % p) % p;
    if j <= z {
        z - j
    } else {
        p + z - j
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    Negated,
    SubsetForward,
    NotComparable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    /// `+1` when `s ≡ t`, `-1` when `s ≡ -t` (mod n); `+1` if both hold.
    pub sign: i8,
    pub v_ns: BTreeSet<BigInt>,
    pub v_nt: BTreeSet<BigInt>,
    pub observed: Relation,
    /// What the periodicity theorems assert for this `(n, s, t)`, if anything.
    pub predicted: Option<Relation>,
}

impl PeriodicityReport {
    /// Whether the computed sets satisfy the predicted relation.
    pub fn agrees_with_prediction(&self) -> bool {
        let target = signed(&self.v_nt, self.sign);
        match self.predicted {
            None | Some(Relation::NotComparable) => true,
            Some(Relation::Equal) | Some(Relation::Negated) => self.v_ns == target,
            Some(Relation::SubsetForward) => self.v_ns.is_subset(&target),
        }
    }
}

fn signed(v: &BTreeSet<BigInt>, sign: i8) -> BTreeSet<BigInt> {
    if sign < 0 {
        v.iter().map(|c| -c).collect()
    } else {
        v.clone()
    }
}

pub fn periodicity_compare(n: u64, s: u64, t: u64) -> Result<PeriodicityReport, FjError> {
    if n == 0 {
        return Err(FjError::NonPositive);
    }
    for x in [s, t] {
        if !numtheory::is_prime(x) {
            return Err(FjError::NotPrime(x));
        }
        if n % x == 0 {
            return Err(FjError::NotCoprimeIndex { n, p: x });
        }
    }
    let plus = s % n == t % n;
    let minus = (s + t) % n == 0;
    if !plus && !minus {
        return Err(FjError::HypothesisViolated { n, s, t });
    }
    let sign: i8 = if plus { 1 } else { -1 };
    let v_ns = cyclotomic::phi(n * s).coeff_set();
    let v_nt = cyclotomic::phi(n * t).coeff_set();
    let neg_nt = signed(&v_nt, -1);

    let (first, first_rel, second, second_rel) = if plus {
        (&v_nt, Relation::Equal, &neg_nt, Relation::Negated)
    } else {
        (&neg_nt, Relation::Negated, &v_nt, Relation::Equal)
    };
    let observed = if v_ns == *first {
        first_rel
    } else if v_ns == *second {
        second_rel
    } else if v_ns.is_subset(first) || v_ns.is_subset(second) {
        Relation::SubsetForward
    } else {
        Relation::NotComparable
    };

    let threshold = n - numtheory::totient(n);
    let exact = if plus { Relation::Equal } else { Relation::Negated };
    let predicted = if s > threshold && t > threshold {
        Some(exact)
    } else if t > threshold {
        Some(Relation::SubsetForward)
    } else {
        None
    };
    Ok(PeriodicityReport {
        n,
        s,
        t,
        sign,
        v_ns,
        v_nt,
        observed,
        predicted,
    })
}
