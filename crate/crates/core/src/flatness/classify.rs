use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("factors must be distinct odd primes in ascending order, got {0:?}")]
    NotSortedDistinctOddPrimes(Vec<u64>),
    #[error("the classifier covers at most five odd primes, got {0}")]
    TooManyFactors(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Flat,
    NotFlat,
    HeightExactly2,
    BoundOnly,
    TheoremSilent,
}

impl Status {
    /// Whether the status pins down flatness (or the height) exactly.
    pub fn is_definite(self) -> bool {
        matches!(self, Status::Flat | Status::NotFlat | Status::HeightExactly2)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The result that justifies a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Citation {
    /// `Φ_1 = x - 1` and prime indices have only 0/1 coefficients.
    Trivial,
    /// Binary cyclotomic polynomials are flat.
    Binary,
    /// `r ≡ ±1 (mod pq)`.
    ROne,
    /// `r ≡ ±2 (mod pq)`, flat exactly when `q ≡ 1 (mod p)`.
    RTwo,
    /// Height 2 when `r ≡ ±2 (mod pq)` and `q ≢ 1 (mod p)`.
    RTwoHeight,
    /// `w | p - 1`, `q ≡ 1 (mod pw)`, `r ≡ ±w (mod pq)` with `w ≥ 3`.
    BroadhurstII,
    /// A forbidden binomial forces a coefficient of size 2.
    ForbiddenBinomial,
    /// `A(pqr) ≤ |w|`.
    WBound,
    /// The quaternary chain `r ≡ ±1 (mod pq)`, `s ≡ ±1 (mod pqr)`.
    QuaternaryChain,
    /// The quinary chain of three `±1` congruences.
    QuinaryChain,
    None,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::Trivial => "trivial",
            Citation::Binary => "binary",
            Citation::ROne => "r±1",
            Citation::RTwo => "r±2",
            Citation::RTwoHeight => "r±2-height2",
            Citation::BroadhurstII => "broadhurst-II",
            Citation::ForbiddenBinomial => "forbidden-binomial",
            Citation::WBound => "|w|-bound",
            Citation::QuaternaryChain => "pqrs-chain",
            Citation::QuinaryChain => "pqrst-chain",
            Citation::None => "none",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub citation: Citation,
    /// `|w|` for `BoundOnly`; also set for Broadhurst-II and the forbidden
    /// binomial rule, where it records the `w` used.
    pub bound: Option<u64>,
    pub detail: String,
}

impl Verdict {
    fn new(status: Status, citation: Citation, bound: Option<u64>, detail: String) -> Self {
        Verdict {
            status,
            citation,
            bound,
            detail,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} theorem={}", self.status, self.citation)?;
        match (self.status, self.bound) {
            (Status::BoundOnly, Some(b)) => write!(f, " bound={b}"),
            (_, Some(w)) => write!(f, " w={w}"),
            _ => Ok(()),
        }
    }
}

/// `w` with `r ≡ w (mod m)` and `|w|` minimal.
pub fn least_residue(r: u64, m: u64) -> i64 {
    numtheory::least_abs_residue((r % m) as i64, m as i64)
}

fn is_pm_one(a: u64, m: u64) -> bool {
    least_residue(a, m).abs() == 1
}

fn is_minus_one(a: u64, m: u64) -> bool {
    a % m == m - 1
}

/// Classifies `Φ_n` for `n` the product of `factors` using only proved
/// results. Cases no rule covers come back as `BoundOnly` or
/// `TheoremSilent`; nothing here computes a polynomial.
pub fn classify(factors: &[u64]) -> Result<Verdict, FlatError> {
    let valid = factors.windows(2).all(|w| w[0] < w[1])
        && factors.iter().all(|&p| p > 2 && numtheory::is_prime(p));
    if !valid {
        return Err(FlatError::NotSortedDistinctOddPrimes(factors.to_vec()));
    }
    match *factors {
        [] | [_] => Ok(Verdict::new(
            Status::Flat,
            Citation::Trivial,
            None,
            "at most one prime: coefficients lie in {-1, 0, 1}".into(),
        )),
        [_, _] => Ok(Verdict::new(
            Status::Flat,
            Citation::Binary,
            None,
            "binary cyclotomic polynomials are flat".into(),
        )),
        [p, q, r] => Ok(ternary(p, q, r)),
        [p, q, r, s] => Ok(quaternary(p, q, r, s)),
        [p, q, r, s, t] => Ok(quinary(p, q, r, s, t)),
        _ => Err(FlatError::TooManyFactors(factors.len())),
    }
}

fn ternary(p: u64, q: u64, r: u64) -> Verdict {
    let pq = p * q;
    let w = least_residue(r, pq);
    let aw = w.unsigned_abs();
    if aw == 1 {
        return Verdict::new(Status::Flat, Citation::ROne, None, format!("{r} ≡ {w} (mod {pq})"));
    }
    if aw == 2 {
        return if q % p == 1 {
            Verdict::new(
                Status::Flat,
                Citation::RTwo,
                None,
                format!("{r} ≡ {w} (mod {pq}) and {q} ≡ 1 (mod {p})"),
            )
        } else {
            Verdict::new(
                Status::HeightExactly2,
                Citation::RTwoHeight,
                None,
                format!("{r} ≡ {w} (mod {pq}) and {q} ≢ 1 (mod {p})"),
            )
        };
    }
    // Broadhurst-II: w | p - 1 and q ≡ 1 (mod pw). Since w < p ≤ pq/2 the
    // congruence r ≡ ±w pins w to |least residue|.
    if (p - 1) % aw == 0 && q % (p * aw) == 1 {
        return Verdict::new(
            Status::Flat,
            Citation::BroadhurstII,
            Some(aw),
            format!("{r} ≡ {w} (mod {pq}), {p} ≡ 1 (mod {aw}), {q} ≡ 1 (mod {})", p * aw),
        );
    }
    if r > pq && q - p < aw && aw < q + p && aw != q {
        return Verdict::new(
            Status::NotFlat,
            Citation::ForbiddenBinomial,
            Some(aw),
            format!("{r} ≡ {w} (mod {pq}) with {} < {aw} < {}", q - p, q + p),
        );
    }
    Verdict::new(
        Status::BoundOnly,
        Citation::WBound,
        Some(aw),
        format!("{r} ≡ {w} (mod {pq}), so A ≤ {aw}"),
    )
}

fn quaternary(p: u64, q: u64, r: u64, s: u64) -> Verdict {
    let chain = is_pm_one(r, p * q) && is_pm_one(s, p * q * r);
    if !chain {
        return silent("the ±1 congruence chain fails");
    }
    if is_minus_one(q, p) {
        Verdict::new(
            Status::Flat,
            Citation::QuaternaryChain,
            None,
            format!("chain holds and {q} ≡ -1 (mod {p})"),
        )
    } else {
        Verdict::new(
            Status::NotFlat,
            Citation::QuaternaryChain,
            None,
            format!("chain holds and {q} ≢ -1 (mod {p})"),
        )
    }
}

fn quinary(p: u64, q: u64, r: u64, s: u64, t: u64) -> Verdict {
    let pq = p * q;
    let chain = is_pm_one(r, pq) && is_pm_one(s, pq * r) && is_pm_one(t, pq * r * s);
    if chain {
        Verdict::new(Status::NotFlat, Citation::QuinaryChain, None, "the ±1 congruence chain holds".into())
    } else {
        silent("the ±1 congruence chain fails")
    }
}

fn silent(detail: &str) -> Verdict {
    Verdict::new(Status::TheoremSilent, Citation::None, None, detail.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &[u64]) -> Verdict {
        classify(f).unwrap()
    }

    #[test]
    fn worked_examples() {
        let r = v(&[3, 5, 31]);
        assert_eq!((r.status, r.citation), (Status::Flat, Citation::ROne));
        assert_eq!(r.to_string(), "Flat theorem=r±1");
        assert_eq!(v(&[3, 5, 17]).status, Status::HeightExactly2);
        let r = v(&[7, 43, 599]);
        assert_eq!((r.status, r.citation, r.bound), (Status::Flat, Citation::BroadhurstII, Some(3)));
        let r = v(&[3, 5, 31, 929]);
        assert_eq!((r.status, r.citation), (Status::Flat, Citation::QuaternaryChain));
        let r = v(&[5, 7, 71, 4969]);
        assert_eq!((r.status, r.citation), (Status::NotFlat, Citation::QuaternaryChain));
        let r = v(&[3, 11, 41]);
        assert_eq!((r.status, r.bound), (Status::BoundOnly, Some(8)));
        assert_eq!(r.to_string(), "BoundOnly theorem=|w|-bound bound=8");
    }

    #[test]
    fn small_orders_and_errors() {
        assert_eq!(v(&[]).status, Status::Flat);
        assert_eq!(v(&[13]).status, Status::Flat);
        assert_eq!(v(&[3, 5]).citation, Citation::Binary);
        assert_eq!(v(&[3, 5, 7, 11]).status, Status::TheoremSilent);
        assert_eq!(v(&[3, 5, 7, 11, 13]).status, Status::TheoremSilent);
        assert!(classify(&[5, 3]).is_err());
        assert!(classify(&[2, 3]).is_err());
        assert!(classify(&[3, 9]).is_err());
        assert!(classify(&[3, 3]).is_err());
        assert_eq!(
            classify(&[3, 5, 7, 11, 13, 17]),
            Err(FlatError::TooManyFactors(6))
        );
    }

    #[test]
    fn forbidden_binomial_rule() {
        // 3·7 = 21, 29 ≡ 8 (mod 21); 7 - 3 < 8 < 7 + 3 and 29 > 21.
        let r = v(&[3, 7, 29]);
        assert_eq!((r.status, r.citation, r.bound), (Status::NotFlat, Citation::ForbiddenBinomial, Some(8)));
        // r < pq: the rule does not apply.
        assert_eq!(v(&[3, 7, 11]).status, Status::BoundOnly);
    }
}
