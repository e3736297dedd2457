//! Structure of binary (pseudo)cyclotomic polynomials `Φ_pq`.
//!
//! The L diagram places the residue of `ap + bq (mod pq)` at column `a`, row
//! `b`. With `μ = p⁻¹ mod q` and `λ = q⁻¹ mod p`, exponents in the lower left
//! quadrant (`a < μ`, `b < λ`) carry `+1` in `Φ_pq` and exponents in the upper
//! right quadrant carry `-1`. Everything here holds for coprime `p, q`, not
//! just primes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic;
use crate::intpoly::{IntPolynomial, LaurentPolynomial};
use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinaryError {
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("p and q must both exceed 1")]
    TooSmall,
    #[error("l = {l} is outside [1, {max}]")]
    LOutOfRange { l: u64, max: u64 },
    #[error("binomial exponents must satisfy a < b")]
    BadExponents,
    #[error("modulus index must be at least 2")]
    BadModulus,
}

fn check_pair(p: u64, q: u64) -> Result<(), BinaryError> {
    if p <= 1 || q <= 1 {
        return Err(BinaryError::TooSmall);
    }
    if numtheory::gcd(p, q) != 1 {
        return Err(BinaryError::NotCoprime(p, q));
    }
    Ok(())
}

/// Corner of the L diagram: `pμ + qλ = pq + 1`, `1 ≤ μ < q`, `1 ≤ λ < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LCorner {
    pub p: u64,
    pub q: u64,
    pub mu: u64,
    pub lambda: u64,
}

/// Corner for the `l`-staircase: `pμ + qλ = pq + l`, `1 ≤ μ ≤ q`, `1 ≤ λ ≤ p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseCorner {
    pub p: u64,
    pub q: u64,
    pub l: u64,
    pub mu: u64,
    pub lambda: u64,
}

pub fn crt_corner(p: u64, q: u64) -> Result<LCorner, BinaryError> {
    check_pair(p, q)?;
    let mu = numtheory::mod_inverse(p as i64, q as i64).expect("coprime") as u64;
    let lambda = numtheory::mod_inverse(q as i64, p as i64).expect("coprime") as u64;
    Ok(LCorner { p, q, mu, lambda })
}

pub fn staircase_corner(p: u64, q: u64, l: u64) -> Result<StaircaseCorner, BinaryError> {
    check_pair(p, q)?;
    if l == 0 || l > p + q - 1 {
        return Err(BinaryError::LOutOfRange { l, max: p + q - 1 });
    }
    let inv = numtheory::mod_inverse(p as i64, q as i64).expect("coprime") as u64;
    let mut mu = (l % q) * inv % q;
    if mu == 0 {
        mu = q;
    }
    let lambda = (p * q + l - mu * p) / q;
    debug_assert!((1..=p).contains(&lambda));
    Ok(StaircaseCorner { p, q, l, mu, lambda })
}

/// The two-rectangle formula: `A(x^p) B(x^q) - x^shift C(x^p) D(x^q)` with
/// geometric factors of the given lengths.
fn two_rectangles(p: u64, q: u64, mu: u64, lambda: u64, shift: u64) -> IntPolynomial {
    let (p, q, mu, lambda) = (p as usize, q as usize, mu as usize, lambda as usize);
    let lower = IntPolynomial::geometric(p, mu).mul(&IntPolynomial::geometric(q, lambda));
    let upper = IntPolynomial::geometric(p, q - mu)
        .mul(&IntPolynomial::geometric(q, p - lambda))
        .shift(shift as usize);
    lower.sub(&upper)
}

/// `Φ̃_{p,q}` assembled from the L diagram quadrants.
pub fn binary_phi_explicit(p: u64, q: u64) -> Result<IntPolynomial, BinaryError> {
    let c = crt_corner(p, q)?;
    Ok(two_rectangles(p, q, c.mu, c.lambda, 1))
}

/// `(1 + x + ... + x^(l-1)) Φ̃_{p,q}` assembled from the staircase corner.
pub fn staircase_multiple(p: u64, q: u64, l: u64) -> Result<IntPolynomial, BinaryError> {
    let c = staircase_corner(p, q, l)?;
    Ok(two_rectangles(p, q, c.mu, c.lambda, l))
}

/// The `p × q` residue grid. `residues[b][a] = (ap + bq) mod pq`, row 0 at the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LDiagram {
    pub rows: u64,
    pub cols: u64,
    pub residues: Vec<Vec<u64>>,
    pub mu: u64,
    pub lambda: u64,
}

pub fn ldiagram(p: u64, q: u64) -> Result<LDiagram, BinaryError> {
    let c = crt_corner(p, q)?;
    let residues = (0..p)
        .map(|b| (0..q).map(|a| (a * p + b * q) % (p * q)).collect())
        .collect();
    Ok(LDiagram {
        rows: p,
        cols: q,
        residues,
        mu: c.mu,
        lambda: c.lambda,
    })
}

impl fmt::Display for LDiagram {
    /// Top row first. A `|` column sits left of column `μ` and a dashed line
    /// below row `λ`, crossing at `+`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.rows * self.cols - 1).to_string().len();
        let mu = self.mu as usize;
        let cells = |row: &[u64], range: std::ops::Range<usize>| -> String {
            row[range]
                .iter()
                .map(|r| format!("{r:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for b in (0..self.rows as usize).rev() {
            let row = &self.residues[b];
            let left = cells(row, 0..mu);
            let right = cells(row, mu..row.len());
            writeln!(f, "{left} | {right}")?;
            if b == self.lambda as usize {
                writeln!(
                    f,
                    "{}+{}",
                    "-".repeat(left.chars().count() + 1),
                    "-".repeat(right.chars().count() + 1)
                )?;
            }
        }
        Ok(())
    }
}

/// `e_b`: the terms of degree at most `b`.
pub fn prefix_truncation(phi: &IntPolynomial, b: usize) -> IntPolynomial {
    phi.truncate(b)
}

/// The representative of `t` modulo `Φ_n` of degree below `φ(n)`.
pub fn mod_phi_reduce(t: &LaurentPolynomial, n: u64) -> Result<IntPolynomial, BinaryError> {
    if n < 2 {
        return Err(BinaryError::BadModulus);
    }
    Ok(t.reduce_mod_cyclic(&cyclotomic::phi(n), n)
        .expect("Φ_n is monic and divides x^n - 1"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenCheck {
    pub is_forbidden: bool,
    /// Smallest exponent whose coefficient has absolute value at least 2.
    pub witness: Option<usize>,
    pub product: IntPolynomial,
}

/// Expands `(x^a + sign·x^b) Φ̃_{p,q}` and reports whether it fails to be flat.
pub fn forbidden_binomial(p: u64, q: u64, a: usize, b: usize, sign: i8) -> Result<ForbiddenCheck, BinaryError> {
    check_pair(p, q)?;
    if a >= b {
        return Err(BinaryError::BadExponents);
    }
    let binomial = IntPolynomial::monomial(1, a).add(&IntPolynomial::monomial(sign.signum() as i64, b));
    let product = binomial.mul(&binary_phi_explicit(p, q)?);
    let witness = (0..product.len()).find(|&k| product.coeff_i64(k).map_or(true, |c| c.abs() >= 2));
    Ok(ForbiddenCheck {
        is_forbidden: witness.is_some(),
        witness,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPolynomial {
        IntPolynomial::from_coeffs(v.to_vec())
    }

    #[test]
    fn corners() {
        let c = crt_corner(3, 5).unwrap();
        assert_eq!((c.mu, c.lambda), (2, 2));
        let c = crt_corner(5, 7).unwrap();
        assert_eq!((c.mu, c.lambda), (3, 3));
        let c = crt_corner(2, 3).unwrap();
        assert_eq!((c.mu, c.lambda), (2, 1));
        assert_eq!(crt_corner(4, 6), Err(BinaryError::NotCoprime(4, 6)));
        let s = staircase_corner(3, 5, 2).unwrap();
        assert_eq!((s.mu, s.lambda), (4, 1));
        assert_eq!(staircase_corner(3, 5, 8), Err(BinaryError::LOutOfRange { l: 8, max: 7 }));
    }

    #[test]
    fn explicit_binary() {
        assert_eq!(binary_phi_explicit(3, 5).unwrap(), cyclotomic::phi(15));
        assert_eq!(binary_phi_explicit(5, 7).unwrap(), cyclotomic::phi(35));
        assert_eq!(staircase_multiple(3, 5, 1).unwrap(), cyclotomic::phi(15));
        assert_eq!(staircase_multiple(3, 5, 2).unwrap(), p(&[1, 0, -1, 1, 0, 0, 1, -1, 0, 1]));
    }

    #[test]
    fn ldiagram_5_7() {
        let d = ldiagram(5, 7).unwrap();
        assert_eq!(d.residues[0], vec![0, 5, 10, 15, 20, 25, 30]);
        let expected = "\
28 33  3 |  8 13 18 23
21 26 31 |  1  6 11 16
---------+------------
14 19 24 | 29 34  4  9
 7 12 17 | 22 27 32  2
 0  5 10 | 15 20 25 30
";
        assert_eq!(d.to_string(), expected);
        let d = ldiagram(2, 3).unwrap();
        assert_eq!(d.residues[0], vec![0, 2, 4]);
        assert_eq!(d.to_string(), "3 5 | 1\n----+--\n0 2 | 4\n");
    }

    #[test]
    fn truncation_and_reduction() {
        let phi15 = cyclotomic::phi(15);
        assert_eq!(prefix_truncation(&phi15, 0), p(&[1]));
        assert_eq!(prefix_truncation(&phi15, 5), p(&[1, -1, 0, 1, -1, 1]));
        assert_eq!(prefix_truncation(&cyclotomic::phi(105), 5), p(&[1, 1, 1, 0, 0, -1]));
        let r = mod_phi_reduce(&LaurentPolynomial::monomial(3), 15).unwrap();
        assert_eq!(r, p(&[0, 0, 0, 1]));
        let r = mod_phi_reduce(&LaurentPolynomial::monomial(8), 15).unwrap();
        assert_eq!(r, p(&[-1, 1, 0, -1, 1, -1, 0, 1]));
    }

    #[test]
    fn forbidden() {
        let f = forbidden_binomial(3, 5, 0, 1, -1).unwrap();
        assert!(f.is_forbidden);
        assert_eq!(f.witness, Some(1));
        assert!(!forbidden_binomial(3, 5, 0, 1, 1).unwrap().is_forbidden);
        let f = forbidden_binomial(3, 7, 0, 4, 1).unwrap();
        assert_eq!(f.witness, Some(8));
        assert_eq!(f.product.coeff_i64(8), Some(-2));
        assert_eq!(forbidden_binomial(3, 5, 2, 2, 1).unwrap_err(), BinaryError::BadExponents);
    }
}
