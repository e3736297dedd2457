use cycloforge::binary::{
    binary_phi_explicit, crt_corner, forbidden_binomial, ldiagram, mod_phi_reduce, prefix_truncation,
    staircase_corner, staircase_multiple, BinaryError,
};
use cycloforge::numtheory::gcd;
use cycloforge::{phi, pseudo_phi, IntPolynomial, LaurentPolynomial, PseudoParts};
use num_bigint::BigInt;
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (2u64..40, 2u64..40).prop_filter("coprime, distinct", |&(p, q)| p != q && gcd(p, q) == 1)
}

/// Signs of the nonzero coefficients, low degree first.
fn signs(f: &IntPolynomial) -> Vec<i64> {
    (0..f.len()).filter_map(|k| f.coeff_i64(k)).filter(|&c| c != 0).collect()
}

#[test]
fn residue_grid_for_five_seven() {
    let d = ldiagram(5, 7).unwrap();
    assert_eq!((d.mu, d.lambda), (3, 3));
    let top_down: Vec<Vec<u64>> = d.residues.iter().rev().cloned().collect();
    assert_eq!(
        top_down,
        vec![
            vec![28, 33, 3, 8, 13, 18, 23],
            vec![21, 26, 31, 1, 6, 11, 16],
            vec![14, 19, 24, 29, 34, 4, 9],
            vec![7, 12, 17, 22, 27, 32, 2],
            vec![0, 5, 10, 15, 20, 25, 30],
        ]
    );
    let f = phi(35);
    for (b, row) in d.residues.iter().enumerate() {
        for (a, &k) in row.iter().enumerate() {
            let expected = match ((a as u64) < d.mu, (b as u64) < d.lambda) {
                (true, true) => 1,
                (false, false) => -1,
                _ => 0,
            };
            assert_eq!(f.coeff(k as usize), BigInt::from(expected), "x^{k}");
        }
    }
    let text = d.to_string();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().nth(1).unwrap().starts_with("21 26 31 |  1"));
    assert!(text.lines().nth(2).unwrap().contains('+'));
}

#[test]
fn corner_examples() {
    let c = crt_corner(3, 5).unwrap();
    assert_eq!((c.mu, c.lambda), (2, 2));
    assert_eq!(3 * c.mu + 5 * c.lambda, 16);
    assert_eq!(crt_corner(3, 6), Err(BinaryError::NotCoprime(3, 6)));
    assert_eq!(crt_corner(1, 6), Err(BinaryError::TooSmall));
    assert!(matches!(staircase_corner(3, 5, 8), Err(BinaryError::LOutOfRange { l: 8, max: 7 })));
    assert!(staircase_corner(3, 5, 0).is_err());
}

#[test]
fn binary_cyclotomic_is_flat_and_alternates() {
    let primes: Vec<u64> = (3..2000).filter(|&p| cycloforge::numtheory::is_prime(p)).collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in primes[i + 1..].iter().take_while(|&&q| p * q <= 5000) {
            let f = phi(p * q);
            assert_eq!(f.height(), BigInt::from(1), "A({p}·{q})");
            let s = signs(&f);
            assert!(s.windows(2).all(|w| w[0] == -w[1]), "alternation for {p}·{q}");
            assert_eq!((s.first(), s.last()), (Some(&1), Some(&1)));
        }
    }
}

#[test]
fn forbidden_binomial_examples() {
    // Every binomial of low degree against Φ_15, checked by direct expansion.
    let f = phi(15);
    for a in 0..8usize {
        for b in (a + 1)..12 {
            for sign in [1i8, -1] {
                let check = forbidden_binomial(3, 5, a, b, sign).unwrap();
                let binomial = IntPolynomial::monomial(1, a).add(&IntPolynomial::monomial(sign as i64, b));
                let direct = binomial.mul(&f);
                assert_eq!(check.product, direct);
                assert_eq!(check.is_forbidden, direct.height() > BigInt::from(1));
            }
        }
    }
    assert_eq!(forbidden_binomial(3, 5, 2, 2, 1).unwrap_err(), BinaryError::BadExponents);
}

#[test]
fn mod_phi_reduce_examples() {
    // x^n ≡ 1 and x^-1 ≡ x^(n-1) modulo Φ_n.
    for n in [5u64, 15, 21, 35] {
        let one = mod_phi_reduce(&LaurentPolynomial::monomial(n as i64), n).unwrap();
        assert_eq!(one, IntPolynomial::one());
        let inv = mod_phi_reduce(&LaurentPolynomial::monomial(-1), n).unwrap();
        let direct = IntPolynomial::monomial(1, n as usize - 1).rem(&phi(n)).unwrap();
        assert_eq!(inv, direct);
    }
    assert_eq!(
        mod_phi_reduce(&LaurentPolynomial::monomial(0), 1).unwrap_err(),
        BinaryError::BadModulus
    );
}

proptest! {
    #[test]
    fn explicit_form_matches_inclusion_exclusion((p, q) in coprime_pair()) {
        let direct = pseudo_phi(&PseudoParts::new(vec![p, q]).unwrap());
        prop_assert_eq!(binary_phi_explicit(p, q).unwrap(), direct.clone());
        prop_assert!(direct.height() <= BigInt::from(1));
        let s = signs(&direct);
        prop_assert!(s.windows(2).all(|w| w[0] == -w[1]));
    }

    #[test]
    fn corner_identity((p, q) in coprime_pair()) {
        let c = crt_corner(p, q).unwrap();
        prop_assert_eq!(p * c.mu + q * c.lambda, p * q + 1);
        prop_assert!((1..q).contains(&c.mu) && (1..p).contains(&c.lambda));
    }

    #[test]
    fn staircase_is_geometric_multiple((p, q) in coprime_pair(), l_seed in 0u64..1000) {
        let l = 1 + l_seed % (p + q - 1);
        let c = staircase_corner(p, q, l).unwrap();
        prop_assert_eq!(p * c.mu + q * c.lambda, p * q + l);
        let base = pseudo_phi(&PseudoParts::new(vec![p, q]).unwrap());
        let expected = IntPolynomial::geometric(1, l as usize).mul(&base);
        prop_assert_eq!(staircase_multiple(p, q, l).unwrap(), expected);
    }

    #[test]
    fn grid_is_a_permutation((p, q) in coprime_pair()) {
        let d = ldiagram(p, q).unwrap();
        let mut all: Vec<u64> = d.residues.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..p * q).collect::<Vec<_>>());
    }

    #[test]
    fn truncation_keeps_low_terms((p, q) in coprime_pair(), b in 0usize..200) {
        let f = binary_phi_explicit(p, q).unwrap();
        let e = prefix_truncation(&f, b);
        for k in 0..f.len().max(b + 2) {
            let expect = if k <= b { f.coeff(k) } else { BigInt::from(0) };
            prop_assert_eq!(e.coeff(k), expect);
        }
    }
}
