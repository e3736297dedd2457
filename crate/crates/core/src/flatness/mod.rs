//! Heights, coefficient sets and a theorem-backed flatness classifier.
//!
//! `A(n)` only depends on the odd part of `rad(n)`, and `Φ_n` is reciprocal
//! for `n > 1`, so every height here is read off the first half of
//! `Φ_m` for the odd squarefree kernel `m`.

mod classify;
mod journal;
mod scan;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic;
use crate::numtheory;

pub use classify::{classify, least_residue, Citation, FlatError, Status, Verdict};
pub use journal::{HeightCache, HeightRecord, Journal, JournalError};
pub use scan::{
    replay, scan, soundness_sweep, Conjecture, Counterexample, HeightValue, ScanError, ScanOptions, ScanReport,
    SoundnessReport, Subject,
};

/// Product of the odd primes among `factors`.
fn odd_kernel(factors: &[u64]) -> u64 {
    debug_assert!(factors.iter().all(|&p| numtheory::is_prime(p)), "factors must be primes");
    let mut odd: Vec<u64> = factors.iter().copied().filter(|&p| p != 2).collect();
    odd.sort_unstable();
    odd.dedup();
    odd.iter().product()
}

/// The coefficients of `Φ_m` up to the middle degree, enough for any
/// coefficient statistic when `m > 1`.
fn half_phi(m: u64) -> crate::IntPolynomial {
    cyclotomic::phi_prefix(m, (numtheory::totient(m) / 2) as usize)
}

/// `A(n)` for `n` with the given distinct prime factors. Multiplying `n` by
/// powers of its primes or by 2 does not change the height, so `2` may be
/// listed or omitted.
pub fn height_of(factors: &[u64]) -> BigInt {
    let m = odd_kernel(factors);
    if m == 1 {
        return BigInt::one();
    }
    half_phi(m).height()
}

/// `A(n)` from `n` itself.
pub fn height_of_n(n: u64) -> BigInt {
    height_of(&numtheory::distinct_primes(n))
}

/// `V_n`, including 0. Unlike the height, the set can change sign under
/// `n -> 2n`, so a factor of 2 is honoured.
pub fn coefficient_set_of(factors: &[u64]) -> BTreeSet<BigInt> {
    let m = odd_kernel(factors);
    let n = if factors.contains(&2) { 2 * m } else { m };
    if n <= 2 {
        return cyclotomic::phi(n).coeff_set();
    }
    cyclotomic::phi_prefix(n, (numtheory::totient(n) / 2) as usize).coeff_set()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> BTreeSet<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn heights() {
        assert_eq!(height_of(&[3, 5, 7]), BigInt::from(2));
        assert_eq!(height_of(&[5, 7]), BigInt::one());
        assert_eq!(height_of(&[5, 13, 73]), BigInt::from(3));
        assert_eq!(height_of(&[2, 3, 5, 7]), BigInt::from(2));
        assert_eq!(height_of(&[]), BigInt::one());
        assert_eq!(height_of_n(4 * 9 * 5 * 7), BigInt::from(2));
    }

    #[test]
    fn coefficient_sets() {
        assert_eq!(coefficient_set_of(&[3, 5, 17]), set(&[-1, 0, 1, 2]));
        assert_eq!(coefficient_set_of(&[3, 5, 2]), set(&[-1, 0, 1]));
        assert_eq!(coefficient_set_of(&[7]), set(&[0, 1]));
        assert_eq!(coefficient_set_of(&[]), set(&[-1, 0, 1]));
        assert_eq!(coefficient_set_of(&[2]), set(&[0, 1]));
        assert_eq!(coefficient_set_of(&[2, 7]), set(&[-1, 0, 1]));
        // Φ_210(x) = Φ_105(-x) keeps the -2 at an odd degree and turns it into 2.
        assert_eq!(coefficient_set_of(&[2, 3, 5, 7]), cyclotomic::phi(210).coeff_set());
    }
}
