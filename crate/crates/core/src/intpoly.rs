//! Dense polynomials with exact integer coefficients.
//!
//! Coefficients live in `i64` while they fit. Every arithmetic routine runs a
//! checked 64-bit pass first and, on overflow, reruns the same operation over
//! [`BigInt`]. Results are normalized back to the 64-bit form whenever all
//! coefficients fit, so two equal polynomials always have equal
//! representations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the dividend exactly")]
    RemainderNonzero,
    #[error("residue index {j} is outside [0, {m})")]
    IndexOutOfRange { j: i64, m: u64 },
    #[error("modulus must be positive")]
    InvalidModulus,
    #[error("divisor leading coefficient must be 1 or -1")]
    NonUnitLeading,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders strictly below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug)]
struct Overflow;

enum Quot<T> {
    Exact(T),
    Inexact,
}

/// Coefficient arithmetic with overflow reporting. `BigInt` never overflows.
trait Coeff: Clone + PartialEq + Zero {
    fn add_c(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub_c(&self, o: &Self) -> Result<Self, Overflow>;
    fn mul_c(&self, o: &Self) -> Result<Self, Overflow>;
    fn neg_c(&self) -> Result<Self, Overflow>;
    fn div_c(&self, d: &Self) -> Result<Quot<Self>, Overflow>;
}

impl Coeff for i64 {
    fn add_c(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub_c(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul_c(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg_c(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_c(&self, d: &Self) -> Result<Quot<Self>, Overflow> {
        if self.checked_rem(*d).ok_or(Overflow)? != 0 {
            return Ok(Quot::Inexact);
        }
        Ok(Quot::Exact(self.checked_div(*d).ok_or(Overflow)?))
    }
}

impl Coeff for BigInt {
    fn add_c(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self + o)
    }
    fn sub_c(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn mul_c(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn neg_c(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn div_c(&self, d: &Self) -> Result<Quot<Self>, Overflow> {
        let (q, r) = self.div_rem(d);
        Ok(if r.is_zero() { Quot::Exact(q) } else { Quot::Inexact })
    }
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_generic<T: Coeff>(a: &[T], b: &[T], negate_b: bool) -> Result<Vec<T>, Overflow> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(T::zero);
        let c = match b.get(i) {
            Some(y) if negate_b => x.sub_c(y)?,
            Some(y) => x.add_c(y)?,
            None => x,
        };
        out.push(c);
    }
    trim(&mut out);
    Ok(out)
}

fn mul_generic<T: Coeff>(a: &[T], b: &[T]) -> Result<Vec<T>, Overflow> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add_c(&x.mul_c(y)?)?;
        }
    }
    trim(&mut out);
    Ok(out)
}

enum DivFailure {
    Overflow,
    NotDivisible,
}

impl From<Overflow> for DivFailure {
    fn from(_: Overflow) -> Self {
        DivFailure::Overflow
    }
}

/// Long division over Z. When `require_unit_lead` is false every quotient
/// coefficient must divide exactly; the remainder is returned either way.
fn div_rem_generic<T: Coeff>(a: &[T], b: &[T]) -> Result<(Vec<T>, Vec<T>), DivFailure> {
    debug_assert!(!b.is_empty());
    if a.len() < b.len() {
        return Ok((Vec::new(), a.to_vec()));
    }
    let db = b.len() - 1;
    let lead = &b[db];
    let support: Vec<(usize, &T)> = b[..db]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut rem = a.to_vec();
    let mut quot = vec![T::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let q = match top.div_c(lead)? {
            Quot::Exact(q) => q,
            Quot::Inexact => return Err(DivFailure::NotDivisible),
        };
        for &(i, c) in &support {
            rem[k + i] = rem[k + i].sub_c(&q.mul_c(c)?)?;
        }
        rem[k + db] = T::zero();
        quot[k] = q;
    }
    trim(&mut quot);
    trim(&mut rem);
    Ok((quot, rem))
}

/// Multiply by `1 - x^d`, keeping only degrees `<= limit`.
fn mul_binomial_generic<T: Coeff>(a: &[T], d: usize, limit: usize) -> Result<Vec<T>, Overflow> {
    let len = (a.len() + d).min(limit + 1);
    let mut out: Vec<T> = a.iter().take(len).cloned().collect();
    out.resize(len, T::zero());
    for i in (d..len).rev() {
        if let Some(src) = a.get(i - d) {
            if !src.is_zero() {
                out[i] = out[i].sub_c(src)?;
            }
        }
    }
    trim(&mut out);
    Ok(out)
}

/// Multiply by the power series `1/(1 - x^d)`, keeping degrees `<= limit`.
fn div_binomial_generic<T: Coeff>(a: &[T], d: usize, limit: usize) -> Result<Vec<T>, Overflow> {
    let len = limit + 1;
    let mut out: Vec<T> = a.iter().take(len).cloned().collect();
    out.resize(len, T::zero());
    for i in d..len {
        if !out[i - d].is_zero() {
            out[i] = out[i].add_c(&out[i - d])?;
        }
    }
    trim(&mut out);
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// Dense polynomial over Z. Index `i` of the coefficient vector holds the
/// coefficient of `x^i`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    repr: Repr,
}

impl Default for IntPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial {
            repr: Repr::Small(Vec::new()),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        trim(&mut coeffs);
        IntPolynomial {
            repr: Repr::Small(coeffs),
        }
    }

    pub fn from_big_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        let small: Option<Vec<i64>> = coeffs.iter().map(|c| c.to_i64()).collect();
        match small {
            Some(v) => IntPolynomial {
                repr: Repr::Small(v),
            },
            None => IntPolynomial {
                repr: Repr::Big(coeffs),
            },
        }
    }

    /// `c * x^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[0] -= 1;
        v[k] += 1;
        Self::from_coeffs(v)
    }

    /// `1 + x^step + x^(2 step) + ... ` with `terms` summands (zero when `terms == 0`).
    pub fn geometric(step: usize, terms: usize) -> Self {
        if terms == 0 {
            return Self::zero();
        }
        let mut v = vec![0; step * (terms - 1) + 1];
        for i in 0..terms {
            v[i * step] += 1;
        }
        Self::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.len(),
            Repr::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> Degree {
        match self.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// The coefficients as `i64`, if every one of them fits.
    pub fn as_small(&self) -> Option<&[i64]> {
        match &self.repr {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_big_vec(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Repr::Big(v) => v.clone(),
        }
    }

    /// `[x^k]`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        match &self.repr {
            Repr::Small(v) => v.get(k).map_or_else(BigInt::zero, |&c| BigInt::from(c)),
            Repr::Big(v) => v.get(k).cloned().unwrap_or_else(BigInt::zero),
        }
    }

    pub fn coeff_i64(&self, k: usize) -> Option<i64> {
        match &self.repr {
            Repr::Small(v) => Some(v.get(k).copied().unwrap_or(0)),
            Repr::Big(v) => v.get(k).map_or(Some(0), |c| c.to_i64()),
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        match self.len() {
            0 => BigInt::zero(),
            n => self.coeff(n - 1),
        }
    }

    /// `(exponent, coefficient)` for every nonzero term, by increasing exponent.
    pub fn terms(&self) -> Vec<(usize, BigInt)> {
        self.to_big_vec()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Runs `small` on the 64-bit form; on overflow (or if either input is
    /// already big) runs `big` on the arbitrary-precision form.
    fn binary_op(
        &self,
        other: &Self,
        small: impl Fn(&[i64], &[i64]) -> Result<Vec<i64>, Overflow>,
        big: impl Fn(&[BigInt], &[BigInt]) -> Result<Vec<BigInt>, Overflow>,
    ) -> Self {
        if let (Some(a), Some(b)) = (self.as_small(), other.as_small()) {
            if let Ok(v) = small(a, b) {
                return Self::from_coeffs(v);
            }
        }
        let v = big(&self.to_big_vec(), &other.to_big_vec()).expect("bigint arithmetic cannot overflow");
        Self::from_big_coeffs(v)
    }

    fn unary_op(
        &self,
        small: impl Fn(&[i64]) -> Result<Vec<i64>, Overflow>,
        big: impl Fn(&[BigInt]) -> Result<Vec<BigInt>, Overflow>,
    ) -> Self {
        if let Some(a) = self.as_small() {
            if let Ok(v) = small(a) {
                return Self::from_coeffs(v);
            }
        }
        let v = big(&self.to_big_vec()).expect("bigint arithmetic cannot overflow");
        Self::from_big_coeffs(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary_op(other, |a, b| add_generic(a, b, false), |a, b| add_generic(a, b, false))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binary_op(other, |a, b| add_generic(a, b, true), |a, b| add_generic(a, b, true))
    }

    pub fn neg(&self) -> Self {
        self.unary_op(
            |a| a.iter().map(|c| c.neg_c()).collect(),
            |a| a.iter().map(|c| c.neg_c()).collect(),
        )
    }

    /// Schoolbook convolution. The 64-bit pass runs unchecked when a
    /// coefficient bound proves no intermediate can overflow.
    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.as_small(), other.as_small()) {
            if let Some(v) = mul_small_unchecked(a, b) {
                return Self::from_coeffs(v);
            }
        }
        self.binary_op(other, mul_generic, mul_generic)
    }

    /// Product truncated to degrees `<= limit`, touching only nonzero terms.
    /// Cheap when either factor is sparse, e.g. `p(x^k)`.
    pub fn mul_truncated(&self, other: &Self, limit: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.len() + other.len() - 1).min(limit + 1);
        if let (Some(a), Some(b)) = (self.as_small(), other.as_small()) {
            let ta: Vec<(usize, i64)> = a.iter().copied().enumerate().filter(|t| t.1 != 0).collect();
            let tb: Vec<(usize, i64)> = b.iter().copied().enumerate().filter(|t| t.1 != 0).collect();
            let max_a = ta.iter().map(|t| t.1.unsigned_abs() as u128).max().unwrap_or(0);
            let max_b = tb.iter().map(|t| t.1.unsigned_abs() as u128).max().unwrap_or(0);
            let bound = max_a * max_b * ta.len().min(tb.len()) as u128;
            if bound <= i64::MAX as u128 {
                let mut out = vec![0i64; len];
                for &(i, x) in &ta {
                    for &(j, y) in &tb {
                        if i + j >= len {
                            break;
                        }
                        out[i + j] += x * y;
                    }
                }
                return Self::from_coeffs(out);
            }
        }
        let a = self.to_big_vec();
        let b = other.to_big_vec();
        let tb: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|t| !t.1.is_zero()).collect();
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().filter(|t| !t.1.is_zero()) {
            for &(j, y) in &tb {
                if i + j >= len {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        Self::from_big_coeffs(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        self.unary_op(
            |a| a.iter().map(|x| x.mul_c(&c)).collect(),
            |a| {
                let c = BigInt::from(c);
                a.iter().map(|x| x.mul_c(&c)).collect()
            },
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        match &self.repr {
            Repr::Small(v) => {
                let mut out = vec![0; k];
                out.extend_from_slice(v);
                Self::from_coeffs(out)
            }
            Repr::Big(v) => {
                let mut out = vec![BigInt::zero(); k];
                out.extend(v.iter().cloned());
                Self::from_big_coeffs(out)
            }
        }
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if let (Some(a), Some(b)) = (self.as_small(), divisor.as_small()) {
            match div_rem_generic(a, b) {
                Ok((q, r)) if r.is_empty() => return Ok(Self::from_coeffs(q)),
                Ok(_) | Err(DivFailure::NotDivisible) => return Err(PolyError::RemainderNonzero),
                Err(DivFailure::Overflow) => {}
            }
        }
        match div_rem_generic(&self.to_big_vec(), &divisor.to_big_vec()) {
            Ok((q, r)) if r.is_empty() => Ok(Self::from_big_coeffs(q)),
            _ => Err(PolyError::RemainderNonzero),
        }
    }

    /// Quotient and remainder by a divisor whose leading coefficient is a unit.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if !divisor.leading_coeff().abs().is_one() {
            return Err(PolyError::NonUnitLeading);
        }
        if let (Some(a), Some(b)) = (self.as_small(), divisor.as_small()) {
            if let Ok((q, r)) = div_rem_generic(a, b) {
                return Ok((Self::from_coeffs(q), Self::from_coeffs(r)));
            }
        }
        match div_rem_generic(&self.to_big_vec(), &divisor.to_big_vec()) {
            Ok((q, r)) => Ok((Self::from_big_coeffs(q), Self::from_big_coeffs(r))),
            Err(_) => unreachable!("unit leading coefficient always divides"),
        }
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Multiply by `1 - x^d` as a power series truncated to degree `<= limit`.
    pub fn mul_one_minus_x_pow(&self, d: usize, limit: usize) -> Self {
        self.unary_op(
            |a| mul_binomial_generic(a, d, limit),
            |a| mul_binomial_generic(a, d, limit),
        )
    }

    /// Multiply by `1/(1 - x^d)` as a power series truncated to degree `<= limit`.
    pub fn div_one_minus_x_pow(&self, d: usize, limit: usize) -> Self {
        assert!(d > 0, "1 - x^0 is not invertible");
        self.unary_op(
            |a| div_binomial_generic(a, d, limit),
            |a| div_binomial_generic(a, d, limit),
        )
    }

    /// Largest absolute value of a coefficient; 0 for the zero polynomial.
    pub fn height(&self) -> BigInt {
        match &self.repr {
            Repr::Small(v) => BigInt::from(v.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)),
            Repr::Big(v) => v.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero),
        }
    }

    /// Every coefficient value, including the zero that sits beyond the degree.
    pub fn coeff_set(&self) -> BTreeSet<BigInt> {
        let mut set: BTreeSet<BigInt> = self.to_big_vec().into_iter().collect();
        set.insert(BigInt::zero());
        set
    }

    pub fn is_reciprocal(&self) -> bool {
        match &self.repr {
            Repr::Small(v) => v.iter().eq(v.iter().rev()),
            Repr::Big(v) => v.iter().eq(v.iter().rev()),
        }
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        if k == 1 || self.len() <= 1 {
            return self.clone();
        }
        let len = (self.len() - 1) * k + 1;
        match &self.repr {
            Repr::Small(v) => {
                let mut out = vec![0; len];
                for (i, &c) in v.iter().enumerate() {
                    out[i * k] = c;
                }
                Self::from_coeffs(out)
            }
            Repr::Big(v) => {
                let mut out = vec![BigInt::zero(); len];
                for (i, c) in v.iter().enumerate() {
                    out[i * k] = c.clone();
                }
                Self::from_big_coeffs(out)
            }
        }
    }

    /// `p(-x)`.
    pub fn substitute_neg(&self) -> Self {
        self.unary_op(
            |a| {
                a.iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { c.neg_c() } else { Ok(*c) })
                    .collect()
            },
            |a| {
                a.iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { c.neg_c() } else { Ok(c.clone()) })
                    .collect()
            },
        )
    }

    /// `sum_i x^i [x^(i m + j)] p`: the slice of exponents congruent to `j` mod `m`.
    pub fn extract_residue(&self, m: u64, j: i64) -> Result<Self, PolyError> {
        if m == 0 {
            return Err(PolyError::InvalidModulus);
        }
        if j < 0 || j as u64 >= m {
            return Err(PolyError::IndexOutOfRange { j, m });
        }
        let (m, j) = (m as usize, j as usize);
        Ok(match &self.repr {
            Repr::Small(v) => Self::from_coeffs(v.iter().skip(j).step_by(m).copied().collect()),
            Repr::Big(v) => Self::from_big_coeffs(v.iter().skip(j).step_by(m).cloned().collect()),
        })
    }

    /// Keep only the terms of degree `<= b`.
    pub fn truncate(&self, b: usize) -> Self {
        match &self.repr {
            Repr::Small(v) => Self::from_coeffs(v.iter().take(b + 1).copied().collect()),
            Repr::Big(v) => Self::from_big_coeffs(v.iter().take(b + 1).cloned().collect()),
        }
    }

    /// Fold exponents modulo `n`, i.e. reduce modulo `x^n - 1`.
    pub fn fold_mod_x_pow_minus_one(&self, n: usize) -> Self {
        assert!(n > 0);
        if self.len() <= n {
            return self.clone();
        }
        match &self.repr {
            Repr::Small(v) => {
                let mut out = vec![0i64; n];
                let mut ok = true;
                for (i, &c) in v.iter().enumerate() {
                    match out[i % n].checked_add(c) {
                        Some(s) => out[i % n] = s,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    return Self::from_coeffs(out);
                }
                self.fold_big(n)
            }
            Repr::Big(_) => self.fold_big(n),
        }
    }

    fn fold_big(&self, n: usize) -> Self {
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.to_big_vec().into_iter().enumerate() {
            out[i % n] += c;
        }
        Self::from_big_coeffs(out)
    }

    pub fn reverse(&self) -> Self {
        match &self.repr {
            Repr::Small(v) => Self::from_coeffs(v.iter().rev().copied().collect()),
            Repr::Big(v) => Self::from_big_coeffs(v.iter().rev().cloned().collect()),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.to_big_vec()
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.to_big_vec()
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let v: Vec<BigInt> = self.to_big_vec().into_iter().map(|x| x / &c).collect();
        Self::from_big_coeffs(v)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let lead = divisor.leading_coeff();
        if lead.abs().is_one() {
            return self.rem(divisor);
        }
        let a = self.to_big_vec();
        let b = divisor.to_big_vec();
        if a.len() < b.len() {
            return Ok(self.clone());
        }
        let db = b.len() - 1;
        let mut rem = a;
        let mut steps = 0usize;
        let total = rem.len() - db;
        while rem.len() > db {
            let top = rem.last().cloned().unwrap();
            let k = rem.len() - 1 - db;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (i, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + i] -= &top * c;
                }
            }
            steps += 1;
            trim(&mut rem);
        }
        for _ in steps..total {
            for c in rem.iter_mut() {
                *c *= &lead;
            }
        }
        Ok(Self::from_big_coeffs(rem))
    }

    /// Fraction-free division: returns `(q, r, m)` with `m·self = q·divisor + r`,
    /// `deg r < deg divisor`, and `m` a power of the divisor's leading
    /// coefficient (1 when that coefficient is a unit).
    pub fn pseudo_div_rem(&self, divisor: &Self) -> Result<(Self, Self, BigInt), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let lead = divisor.leading_coeff();
        if lead.abs().is_one() {
            let (q, r) = self.div_rem(divisor)?;
            return Ok((q, r, BigInt::one()));
        }
        let b = divisor.to_big_vec();
        let db = b.len() - 1;
        let mut rem = self.to_big_vec();
        let mut quot: Vec<BigInt> = vec![BigInt::zero(); rem.len().saturating_sub(db)];
        let mut mult = BigInt::one();
        while rem.len() > db {
            let top = rem.last().cloned().unwrap();
            let k = rem.len() - 1 - db;
            for c in rem.iter_mut().chain(quot.iter_mut()) {
                *c *= &lead;
            }
            mult *= &lead;
            quot[k] += &top;
            for (i, c) in b.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + i] -= &top * c;
                }
            }
            trim(&mut rem);
        }
        Ok((Self::from_big_coeffs(quot), Self::from_big_coeffs(rem), mult))
    }

    /// Greatest common divisor over Q, returned primitive with positive
    /// leading coefficient (so a monic gcd comes back monic). Primitive PRS.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.len() >= other.len() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Human-oriented rendering with unicode superscripts, highest degree first,
    /// e.g. `x²-x+1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.terms().into_iter().rev() {
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if k >= 1 {
                out.push('x');
            }
            if k >= 2 {
                out.push_str(&superscript(k));
            }
        }
        out
    }
}

fn mul_small_unchecked(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let max_a = a.iter().map(|c| c.unsigned_abs()).max()? as u128;
    let max_b = b.iter().map(|c| c.unsigned_abs()).max()? as u128;
    let terms = a.len().min(b.len()) as u128;
    if max_a.checked_mul(max_b)?.checked_mul(terms)? > i64::MAX as u128 {
        return None;
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    trim(&mut out);
    Some(out)
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl fmt::Display for IntPolynomial {
    /// Canonical text: coefficients from degree 0 upward, space separated.
    /// The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        match &self.repr {
            Repr::Small(v) => {
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
            }
            Repr::Big(v) => {
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial[{self}]")
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split_whitespace()
            .map(|t| BigInt::from_str(t).map_err(|_| PolyError::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_big_coeffs(coeffs))
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        match &self.repr {
            Repr::Small(v) => {
                for c in v {
                    seq.serialize_element(c)?;
                }
            }
            Repr::Big(v) => {
                for c in v {
                    match c.to_i64() {
                        Some(x) => seq.serialize_element(&x)?,
                        None => seq.serialize_element(&c.to_string())?,
                    }
                }
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_seq(CoeffSeqVisitor)
    }
}

/// JSON integer, or a decimal string for values outside the 64-bit range.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Int(i64),
    Text(String),
}

impl JsonInt {
    fn into_big<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            JsonInt::Int(x) => Ok(BigInt::from(x)),
            JsonInt::Text(s) => BigInt::from_str(&s).map_err(|_| E::custom(format!("bad integer string {s:?}"))),
        }
    }
}

struct CoeffSeqVisitor;

impl<'de> Visitor<'de> for CoeffSeqVisitor {
    type Value = IntPolynomial;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of integers or decimal strings")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
        let mut out = Vec::new();
        while let Some(v) = seq.next_element::<JsonInt>()? {
            out.push(v.into_big()?);
        }
        Ok(IntPolynomial::from_big_coeffs(out))
    }
}

/// Serialize an exact integer as a JSON number when it fits in 64 bits and as
/// a decimal string otherwise.
pub fn serialize_exact<S: Serializer>(x: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => serializer.serialize_i64(v),
        None => serializer.serialize_str(&x.to_string()),
    }
}

pub fn deserialize_exact<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    JsonInt::deserialize(deserializer)?.into_big()
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                IntPolynomial::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::neg(self)
    }
}


/// Polynomial in `x` and `x^-1`: `x^offset * body`. Canonical form keeps a
/// nonzero constant term in `body` (the zero value has offset 0).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    offset: i64,
    body: IntPolynomial,
}

impl LaurentPolynomial {
    pub fn new(offset: i64, body: IntPolynomial) -> Self {
        if body.is_zero() {
            return LaurentPolynomial {
                offset: 0,
                body,
            };
        }
        let lead_zeros = (0..body.len())
            .find(|&i| body.coeff_i64(i) != Some(0))
            .unwrap_or(0);
        if lead_zeros == 0 {
            return LaurentPolynomial { offset, body };
        }
        let stripped = match &body.repr {
            Repr::Small(v) => IntPolynomial::from_coeffs(v[lead_zeros..].to_vec()),
            Repr::Big(v) => IntPolynomial::from_big_coeffs(v[lead_zeros..].to_vec()),
        };
        LaurentPolynomial {
            offset: offset + lead_zeros as i64,
            body: stripped,
        }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self::new(0, p)
    }

    /// `x^k` for any integer `k`.
    pub fn monomial(k: i64) -> Self {
        Self::new(k, IntPolynomial::one())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn body(&self) -> &IntPolynomial {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.offset;
        if i < 0 {
            BigInt::zero()
        } else {
            self.body.coeff(i as usize)
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.offset + k, self.body.clone())
    }

    /// The polynomial value, if no negative exponent is present.
    pub fn to_polynomial(&self) -> Option<IntPolynomial> {
        match self.offset.cmp(&0) {
            Ordering::Less => None,
            _ => Some(self.body.shift(self.offset as usize)),
        }
    }

    fn aligned(&self, other: &Self) -> (i64, IntPolynomial, IntPolynomial) {
        let base = self.offset.min(other.offset);
        (
            base,
            self.body.shift((self.offset - base) as usize),
            other.body.shift((other.offset - base) as usize),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (base, a, b) = self.aligned(other);
        Self::new(base, a.add(&b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (base, a, b) = self.aligned(other);
        Self::new(base, a.sub(&b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.offset + other.offset, self.body.mul(&other.body))
    }

    /// The unique polynomial of degree `< deg modulus` congruent to `self`
    /// modulo `modulus`, where `modulus` is monic (up to sign) and divides
    /// `x^period - 1`. Negative exponents are lifted by multiples of
    /// `period`, which is sound because `x^period` is 1 modulo `modulus`.
    pub fn reduce_mod_cyclic(&self, modulus: &IntPolynomial, period: u64) -> Result<IntPolynomial, PolyError> {
        if period == 0 {
            return Err(PolyError::InvalidModulus);
        }
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let period_i = period as i64;
        let lifted = self.offset.rem_euclid(period_i) as usize;
        let folded = self
            .body
            .shift(lifted)
            .fold_mod_x_pow_minus_one(period as usize);
        folded.rem(modulus)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "{}", self.body)
        } else {
            write!(f, "x^{}*[{}]", self.offset, self.body)
        }
    }
}
