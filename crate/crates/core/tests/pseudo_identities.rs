use cycloforge::numtheory::{gcd, is_prime};
use cycloforge::pseudocyclo::pseudo_factorization;
use cycloforge::{phi, pseudo_phi, pseudo_psi, IntPolynomial, PseudoParts};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// `Φ̃` by the recursive quotient `Φ̃_{..,p}(x) = Φ̃_{..}(x^p) / Φ̃_{..}(x)`.
fn recursive(parts: &[u64]) -> IntPolynomial {
    parts.iter().fold(IntPolynomial::from_coeffs(vec![-1, 1]), |acc, &p| {
        acc.substitute_power(p as usize).exact_div(&acc).unwrap()
    })
}

/// Up to `k` pairwise coprime parts in `2..=max` with product at most `cap`.
fn coprime_parts(k: usize, max: u64, cap: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2..=max, 1..=k).prop_map(move |raw| {
        let mut out: Vec<u64> = Vec::new();
        for x in raw {
            let prod: u64 = out.iter().product();
            if out.iter().all(|&y| gcd(x, y) == 1) && prod * x <= cap {
                out.push(x);
            }
        }
        out
    })
}

fn pp(v: &[u64]) -> PseudoParts {
    PseudoParts::new(v.to_vec()).unwrap()
}

proptest! {
    #[test]
    fn product_formula_matches_recursion(parts in coprime_parts(4, 40, 3000)) {
        prop_assert_eq!(pseudo_phi(&pp(&parts)), recursive(&parts));
    }

    #[test]
    fn order_of_parts_is_irrelevant(mut parts in coprime_parts(4, 30, 3000)) {
        let f = pseudo_phi(&pp(&parts));
        parts.reverse();
        prop_assert_eq!(pseudo_phi(&pp(&parts)), f.clone());
        parts.rotate_left(1);
        prop_assert_eq!(pseudo_phi(&pp(&parts)), f);
    }

    #[test]
    fn degree_reciprocity_and_values(parts in coprime_parts(4, 40, 3000)) {
        let f = pseudo_phi(&pp(&parts));
        let degree: u64 = parts.iter().map(|p| p - 1).product();
        prop_assert_eq!(f.len() as u64 - 1, degree);
        prop_assert!(f.is_reciprocal());
        prop_assert!(f.eval(&BigInt::zero()).is_one());
        let at_one = if parts.len() == 1 { parts[0] } else { 1 };
        prop_assert_eq!(f.eval(&BigInt::one()), BigInt::from(at_one));
    }

    #[test]
    fn factors_into_cyclotomics(parts in coprime_parts(3, 30, 2000)) {
        let factors = pseudo_factorization(&pp(&parts)).unwrap();
        let product = factors.iter().fold(IntPolynomial::one(), |acc, c| acc.mul(&phi(c.n)));
        prop_assert_eq!(product, pseudo_phi(&pp(&parts)));
    }

    #[test]
    fn inverse_times_phi_is_binomial(parts in coprime_parts(3, 30, 2000)) {
        let p = pp(&parts);
        let n = parts.iter().product::<u64>() as usize;
        prop_assert_eq!(pseudo_psi(&p).mul(&pseudo_phi(&p)), IntPolynomial::x_pow_minus_one(n));
        prop_assert_eq!(pseudo_psi(&p).constant_term(), BigInt::from(-1));
    }

    #[test]
    fn unit_part_gives_one(parts in coprime_parts(3, 30, 2000)) {
        let mut with_one = parts.clone();
        with_one.push(1);
        prop_assert_eq!(pseudo_phi(&pp(&with_one)), IntPolynomial::one());
    }
}

#[test]
fn prime_parts_give_cyclotomic() {
    let primes: Vec<u64> = (2..60).filter(|&p| is_prime(p)).collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            assert_eq!(pseudo_phi(&pp(&[p, q])), phi(p * q));
            for &r in primes.iter().filter(|&&r| r > q && p * q * r < 4000) {
                assert_eq!(pseudo_phi(&pp(&[p, q, r])), phi(p * q * r), "({p},{q},{r})");
            }
        }
    }
}

#[test]
fn small_forms() {
    assert_eq!(pseudo_phi(&pp(&[])), IntPolynomial::from_coeffs(vec![-1, 1]));
    for p in 2..20 {
        assert_eq!(pseudo_phi(&pp(&[p])), IntPolynomial::geometric(1, p as usize));
    }
    // Ψ̃_{p,q} = -(1 + ... + x^(p-1)) + x^q (1 + ... + x^(p-1)) for p < q
    for (p, q) in [(4u64, 9u64), (8, 9), (9, 10), (4, 15), (6, 25)] {
        let block = IntPolynomial::geometric(1, p as usize);
        assert_eq!(pseudo_psi(&pp(&[p, q])), block.shift(q as usize).sub(&block), "({p},{q})");
    }
}

#[test]
fn parts_parsing_and_validation() {
    let p: PseudoParts = "9, 4,25".parse().unwrap();
    assert_eq!(p.parts(), &[4, 9, 25]);
    assert_eq!(p.given(), &[9, 4, 25]);
    assert_eq!(p.to_string(), "9,4,25");
    assert_eq!(p.product(), 900);
    assert!("4,6".parse::<PseudoParts>().is_err());
    assert!("4,0".parse::<PseudoParts>().is_err());
    assert!("4,x".parse::<PseudoParts>().is_err());
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(json, "[9,4,25]");
    assert_eq!(serde_json::from_str::<PseudoParts>(&json).unwrap(), p);
    assert!(serde_json::from_str::<PseudoParts>("[2,4]").is_err());
}

#[test]
fn comma_placement_matters() {
    // Φ̃_{3,5} is Φ_15, while Φ̃_{15} is 1 + x + ... + x^14.
    assert_eq!(pseudo_phi(&pp(&[3, 5])), phi(15));
    assert_ne!(pseudo_phi(&pp(&[15])), phi(15));
}
