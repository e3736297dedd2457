use cycloforge::IntPolynomial;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn poly(max_len: usize, max_abs: i64) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-max_abs..=max_abs, 0..max_len).prop_map(IntPolynomial::from_coeffs)
}

fn nonzero_poly(max_len: usize, max_abs: i64) -> impl Strategy<Value = IntPolynomial> {
    poly(max_len, max_abs).prop_filter("nonzero", |p| !p.is_zero())
}

/// Schoolbook product over BigInt, written without any library shortcuts.
fn naive_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (a, b) = (a.to_big_vec(), b.to_big_vec());
    if a.is_empty() || b.is_empty() {
        return IntPolynomial::zero();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntPolynomial::from_big_coeffs(out)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #[test]
    fn add_sub_inverse(a in poly(40, 1000), b in poly(40, 1000)) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.sub(&a), IntPolynomial::zero());
        prop_assert_eq!(a.add(&a.neg()), IntPolynomial::zero());
    }

    #[test]
    fn mul_matches_schoolbook(a in poly(30, 1 << 40), b in poly(30, 1 << 40)) {
        prop_assert_eq!(a.mul(&b), naive_mul(&a, &b));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_is_a_ring_product(a in poly(15, 50), b in poly(15, 50), c in poly(15, 50)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(20, 100), b in poly(20, 100), x in -5i64..=5) {
        let x = big(x);
        prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.add(&b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn exact_div_undoes_mul(a in poly(30, 1000), b in nonzero_poly(20, 1000)) {
        prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn div_rem_reconstructs(a in poly(40, 1000), k in 1usize..20, tail in poly(19, 1000)) {
        // Monic divisor so the quotient stays integral.
        let divisor = tail.truncate(k - 1).add(&IntPolynomial::monomial(1, k));
        let (q, r) = a.div_rem(&divisor).unwrap();
        prop_assert_eq!(q.mul(&divisor).add(&r), a);
        prop_assert!(r.len() < divisor.len());
    }

    #[test]
    fn mul_truncated_is_prefix(a in poly(30, 100), b in poly(30, 100), limit in 0usize..70) {
        prop_assert_eq!(a.mul_truncated(&b, limit), a.mul(&b).truncate(limit));
    }

    #[test]
    fn substitute_power_composes(a in poly(20, 100), j in 1usize..5, k in 1usize..5, x in -3i64..=3) {
        prop_assert_eq!(a.substitute_power(j).substitute_power(k), a.substitute_power(j * k));
        let x = big(x);
        prop_assert_eq!(a.substitute_power(j).eval(&x), a.eval(&x.pow(j as u32)));
    }

    #[test]
    fn substitute_neg_is_involution(a in poly(30, 1000), x in -4i64..=4) {
        prop_assert_eq!(a.substitute_neg().substitute_neg(), a.clone());
        prop_assert_eq!(a.substitute_neg().eval(&big(x)), a.eval(&big(-x)));
    }

    #[test]
    fn reverse_twice_restores_when_constant_nonzero(a in nonzero_poly(30, 100)) {
        prop_assume!(!a.constant_term().is_zero());
        prop_assert_eq!(a.reverse().reverse(), a);
    }

    #[test]
    fn residue_classes_reassemble(a in poly(60, 100), m in 1u64..8) {
        let mut sum = IntPolynomial::zero();
        for j in 0..m as i64 {
            let slice = a.extract_residue(m, j).unwrap();
            sum = sum.add(&slice.substitute_power(m as usize).shift(j as usize));
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn fold_is_congruent_mod_x_pow_minus_one(a in poly(60, 100), n in 1usize..20) {
        let folded = a.fold_mod_x_pow_minus_one(n);
        prop_assert!(folded.len() <= n);
        let diff = a.sub(&folded);
        prop_assert!(diff.rem(&IntPolynomial::x_pow_minus_one(n)).unwrap().is_zero());
    }

    #[test]
    fn gcd_of_products_contains_common_factor(a in nonzero_poly(8, 9), b in nonzero_poly(8, 9), c in nonzero_poly(8, 9)) {
        let g = a.mul(&c).gcd(&b.mul(&c));
        // The gcd is primitive, so it absorbs the primitive part of c.
        prop_assert!(g.pseudo_rem(&c.primitive_part()).unwrap().is_zero());
        prop_assert!(a.mul(&c).pseudo_rem(&g).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip(a in poly(40, i64::MAX)) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<IntPolynomial>().unwrap(), a);
    }

    #[test]
    fn json_round_trip(a in poly(20, i64::MAX), b in poly(20, i64::MAX)) {
        // The product overflows 64 bits, exercising the string encoding.
        let p = a.mul(&b);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), p);
    }

    #[test]
    fn height_and_coeff_set_agree(a in poly(40, 1000)) {
        let set = a.coeff_set();
        let max_abs = set.iter().map(|c| c.magnitude().clone()).max().map(BigInt::from).unwrap_or_default();
        prop_assert_eq!(a.height(), max_abs);
        if a.len() > 0 {
            prop_assert!(set.contains(&a.leading_coeff()));
        }
    }
}

#[test]
fn overflow_escalates_exactly() {
    let a = IntPolynomial::from_coeffs(vec![i64::MAX, i64::MAX]);
    let sq = a.mul(&a);
    let m = big(i64::MAX);
    assert_eq!(sq.to_big_vec(), vec![&m * &m, big(2) * &m * &m, &m * &m]);
    assert_eq!(sq.exact_div(&a).unwrap(), a);
    let sum = a.add(&a);
    assert_eq!(sum.coeff(0), big(2) * &m);
    assert_eq!(sum.coeff_i64(0), None);
}

#[test]
fn canonical_text_examples() {
    assert_eq!(IntPolynomial::from_coeffs(vec![1, -1, 1]).to_string(), "1 -1 1");
    assert_eq!(IntPolynomial::zero().to_string(), "0");
    assert_eq!("0".parse::<IntPolynomial>().unwrap(), IntPolynomial::zero());
    assert_eq!(" 1  0 -2 ".parse::<IntPolynomial>().unwrap(), IntPolynomial::from_coeffs(vec![1, 0, -2]));
    assert!("1 x 2".parse::<IntPolynomial>().is_err());
    assert_eq!(serde_json::to_string(&IntPolynomial::from_coeffs(vec![-1, 0, 3])).unwrap(), "[-1,0,3]");
}
