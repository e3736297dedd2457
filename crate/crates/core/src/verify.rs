//! Named bundles of identity checks, each run over a default range.
//!
//! Every check recomputes both sides independently and records how many
//! cases it looked at and the first few that failed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binary;
use crate::cyclotomic::phi;
use crate::fjdecomp::{self, Relation};
use crate::flatness::{self, Conjecture, ScanOptions, Status};
use crate::intpoly::{IntPolynomial, LaurentPolynomial};
use crate::numtheory;
use crate::pseudocyclo::{pseudo_factorization, pseudo_phi, PseudoParts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?} (expected binary, fj, periodicity, pseudo, classifier-soundness or paper-table)")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Binary,
    Fj,
    Periodicity,
    Pseudo,
    ClassifierSoundness,
    PaperTable,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Binary,
        Suite::Fj,
        Suite::Periodicity,
        Suite::Pseudo,
        Suite::ClassifierSoundness,
        Suite::PaperTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Binary => "binary",
            Suite::Fj => "fj",
            Suite::Periodicity => "periodicity",
            Suite::Pseudo => "pseudo",
            Suite::ClassifierSoundness => "classifier-soundness",
            Suite::PaperTable => "paper-table",
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Overrides the suite's main range.
    pub max: Option<u64>,
    /// Restricts the periodicity suite to one `n`.
    pub n: Option<u64>,
    /// Largest prime used by the periodicity suite.
    pub smax: Option<u64>,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max: None,
            n: None,
            smax: None,
            workers: 1,
        }
    }
}

/// Outcome of one property over its range.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 5 {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {}: {} cases, {} failed", c.name, c.cases, c.failed)?;
            for e in &c.examples {
                writeln!(f, "    {e}")?;
            }
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "suite {}: {verdict}", self.suite)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Binary => binary_suite(opts.max.unwrap_or(5000)),
        Suite::Fj => fj_suite(opts.max.unwrap_or(200), 100),
        Suite::Periodicity => {
            let ns = match opts.n {
                Some(n) => vec![n],
                None => vec![15, 21, 33, 35],
            };
            periodicity_suite(&ns, opts.smax.unwrap_or(300))
        }
        Suite::Pseudo => pseudo_suite(opts.max.unwrap_or(1000), 20_000),
        Suite::ClassifierSoundness => soundness_suite(opts.max.unwrap_or(30_000), opts.workers),
        Suite::PaperTable => paper_table_suite(opts.max.unwrap_or(20_000), opts.workers),
    };
    SuiteReport {
        suite: suite.name().to_string(),
        checks,
        elapsed: start.elapsed().as_secs_f64(),
    }
}

// ----- helpers ----------------------------------------------------------------

fn odd_primes(limit: u64) -> Vec<u64> {
    numtheory::primes_up_to(limit).into_iter().filter(|&p| p > 2).collect()
}

/// Nonzero coefficients alternate in sign, starting positive.
fn alternates(f: &IntPolynomial) -> bool {
    let mut expect_positive = true;
    for (_, c) in f.terms() {
        if c.is_positive() != expect_positive {
            return false;
        }
        expect_positive = !expect_positive;
    }
    true
}

fn negate(v: &BTreeSet<BigInt>) -> BTreeSet<BigInt> {
    v.iter().map(|c| -c).collect()
}

/// `Σ_{i<terms} x^(step·i)`, or zero when `terms` is zero.
fn geo(step: u64, terms: u64) -> IntPolynomial {
    if terms == 0 {
        IntPolynomial::zero()
    } else {
        IntPolynomial::geometric(step as usize, terms as usize)
    }
}

/// Coprime tuples of `k` parts, each at least 2, ascending, with product `≤ bound`.
fn coprime_tuples(k: usize, bound: u64) -> Vec<Vec<u64>> {
    fn go(k: usize, bound: u64, start: u64, prod: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let left = (k - cur.len()) as u32;
        let mut x = start;
        while x.checked_pow(left).is_some_and(|v| v.saturating_mul(prod) <= bound) {
            if cur.iter().all(|&c| numtheory::gcd(c, x) == 1) {
                cur.push(x);
                go(k, bound, x + 1, prod * x, cur, out);
                cur.pop();
            }
            x += 1;
        }
    }
    let mut out = Vec::new();
    go(k, bound, 2, 1, &mut Vec::new(), &mut out);
    out
}

fn parts(v: &[u64]) -> PseudoParts {
    PseudoParts::new(v.to_vec()).expect("coprime by construction")
}

fn reduces_to_zero(t: &LaurentPolynomial, modulus: &IntPolynomial, period: u64) -> bool {
    t.reduce_mod_cyclic(modulus, period).map(|r| r.is_zero()).unwrap_or(false)
}

// ----- binary -------------------------------------------------------------------

fn binary_suite(max: u64) -> Vec<Check> {
    let mut flat = Check::new("A(pq) = 1 for odd primes");
    let mut alt = Check::new("nonzero coefficients of Φ_pq alternate in sign");
    let mut ldiag = Check::new("L-diagram two-rectangle formula equals Φ_pq");
    let mut coprime = Check::new("L-diagram formula for coprime p, q");
    let mut stair = Check::new("staircase formula for q = kp + 1");
    let mut stair_gen = Check::new("staircase multiple (1 + ... + x^(l-1)) Φ̃_{p,q}");

    let primes = odd_primes(max / 3 + 1);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q > max {
                break;
            }
            let f = phi(p * q);
            flat.case(f.height().is_one(), || format!("A({}) = {}", p * q, f.height()));
            alt.case(alternates(&f), || format!("Φ_{} does not alternate", p * q));
            let explicit = binary::binary_phi_explicit(p, q).expect("distinct primes");
            ldiag.case(explicit == f, || format!("formula differs for ({p},{q})"));
        }
    }

    let small = max.min(1000);
    for t in coprime_tuples(2, small) {
        let (p, q) = (t[0], t[1]);
        let explicit = binary::binary_phi_explicit(p, q).expect("coprime");
        coprime.case(explicit == pseudo_phi(&parts(&t)), || format!("formula differs for ({p},{q})"));
    }

    // (1 + ... + x^(l-1)) Φ̃_{p,q} = (1 + x^p + ... + x^(p(q-kl-1)))(1 + x^q + ... + x^(q(l-1)))
    //                              - x^l (1 + x^p + ... + x^(p(kl-1)))(1 + x^q + ... + x^(q(p-l-1)))
    for p in 2..=small {
        for k in 1.. {
            let q = k * p + 1;
            if p * q > small {
                break;
            }
            let base = pseudo_phi(&parts(&[p, q]));
            for l in 1..=p {
                let lhs = IntPolynomial::geometric(1, l as usize).mul(&base);
                let rhs = geo(p, q - k * l)
                    .mul(&geo(q, l))
                    .sub(&geo(p, k * l).mul(&geo(q, p - l)).shift(l as usize));
                stair.case(lhs == rhs, || format!("(p,q,l) = ({p},{q},{l})"));
            }
        }
    }
    for t in coprime_tuples(2, small.min(300)) {
        let (p, q) = (t[0], t[1]);
        let base = pseudo_phi(&parts(&t));
        for l in 1..p + q {
            let lhs = IntPolynomial::geometric(1, l as usize).mul(&base);
            let rhs = binary::staircase_multiple(p, q, l).expect("l in range");
            stair_gen.case(lhs == rhs, || format!("(p,q,l) = ({p},{q},{l})"));
        }
    }
    vec![flat, alt, ldiag, coprime, stair, stair_gen]
}

// ----- F_j ----------------------------------------------------------------------

fn fj_suite(nmax: u64, pmax: u64) -> Vec<Check> {
    let mut reassembly = Check::new("Σ x^j F_j(x^p) = Φ_np");
    let mut degree = Check::new("deg F_j ≤ φ(n) - (φ(n) + j)/p");
    let mut f0 = Check::new("F_0(0) = 1");
    let mut bezout = Check::new("Φ_np = a g + b h with deg a < φ(n), deg b < (n - φ(n))(p - 1)");
    let mut fg = Check::new("F_j ≡ G_j (mod Φ_n)");
    let mut ff = Check::new("F_j = F_(n+j) for 1 - φ(n) ≤ j < p - n");
    let mut ff_mod = Check::new("F_j ≡ F_(n+j) (mod Φ_n) for j < p - n");
    let mut first_n = Check::new("V_np is the union of V(F_j) over j < n");
    let mut recip = Check::new("V(F_j) matches its reciprocity partner");
    let mut fast = Check::new("f0_fast equals F_0 for p > n");
    let mut constants = Check::new("F_j(0) = -[x^j] Ψ_n for p > n");
    let mut star = Check::new("F*_j = x F*_(j-1) + F*_j(0) Φ_n");
    let mut star_set = Check::new("{F*_j} = {F_j : j < n} for p > n");

    let primes = numtheory::primes_up_to(pmax);
    for n in 1..=nmax {
        if !numtheory::is_squarefree(n) {
            continue;
        }
        let phin = numtheory::totient(n);
        let phi_n = phi(n);
        for &p in &primes {
            if n % p == 0 {
                continue;
            }
            let tag = || format!("(n,p) = ({n},{p})");
            let fam = fjdecomp::fj_family(n, p).expect("valid pair");
            let f = phi(n * p);
            reassembly.case(fam.reassemble() == f, tag);
            for j in 0..p {
                let m = fam.get(j as usize);
                let ok = m.degree().finite().map_or(true, |d| d as i64 <= fam.degree_bound(j));
                degree.case(ok, || format!("(n,p,j) = ({n},{p},{j})"));
            }
            f0.case(fam.get(0).constant_term().is_one(), tag);

            match fjdecomp::bezout_split(n, p) {
                Ok(split) => {
                    let sum = split.a.mul(&split.g()).add(&split.b.mul(&split.h()));
                    let deg_ok = (split.a.len() as u64) <= phin
                        && (split.b.len() as u64) <= (n - phin) * (p - 1);
                    bezout.case(sum == f && deg_ok, tag);
                    let g = fjdecomp::gj_family(&split);
                    for j in 0..p as usize {
                        let diff = LaurentPolynomial::from_poly(fam.get(j).sub(&g[j]));
                        fg.case(reduces_to_zero(&diff, &phi_n, n), || format!("(n,p,j) = ({n},{p},{j})"));
                    }
                }
                Err(e) => bezout.case(false, || format!("{}: {e}", tag())),
            }

            let (ni, pi, phii) = (n as i64, p as i64, phin as i64);
            for j in (1 - phii - pi)..(pi - ni) {
                let a = fjdecomp::fj_extended(&fam, j);
                let b = fjdecomp::fj_extended(&fam, ni + j);
                if j >= 1 - phii {
                    ff.case(a == b, || format!("(n,p,j) = ({n},{p},{j})"));
                }
                ff_mod.case(reduces_to_zero(&a.sub(&b), &phi_n, n), || format!("(n,p,j) = ({n},{p},{j})"));
            }

            let sets: Vec<BTreeSet<BigInt>> = fam.members.iter().map(IntPolynomial::coeff_set).collect();
            for j in 0..p {
                let partner = fjdecomp::reciprocity_partner(n, p, j);
                recip.case(sets[j as usize] == sets[partner as usize], || format!("(n,p,j) = ({n},{p},{j})"));
            }

            if p > n {
                let union: BTreeSet<BigInt> = sets[..n as usize].iter().flatten().cloned().collect();
                first_n.case(union == f.coeff_set(), tag);
                let fast0 = fjdecomp::f0_fast(&numtheory::distinct_primes(n), p).expect("p > n");
                fast.case(&fast0 == fam.get(0), tag);
                let c = fjdecomp::fj_constant_terms(n);
                for j in 0..n as usize {
                    constants.case(c[j] == fam.get(j).constant_term(), || format!("(n,p,j) = ({n},{p},{j})"));
                }
                let stars = fjdecomp::fstar_family(n, p).expect("p > n");
                for j in 0..n as usize {
                    let prev = &stars[(j + n as usize - 1) % n as usize];
                    // F*_j(0) / Φ_n(0), with Φ_n(0) = ±1.
                    let c0 = stars[j].constant_term() * phi_n.constant_term();
                    let rhs = prev.shift(1).add(&phi_n.mul(&IntPolynomial::from_big_coeffs(vec![c0])));
                    star.case(rhs == stars[j], || format!("(n,p,j) = ({n},{p},{j})"));
                }
                let a: BTreeSet<String> = stars.iter().map(IntPolynomial::to_string).collect();
                let b: BTreeSet<String> = fam.members[..n as usize].iter().map(IntPolynomial::to_string).collect();
                star_set.case(a == b, tag);
            }
        }
    }
    vec![
        reassembly, degree, f0, bezout, fg, ff, ff_mod, first_n, recip, fast, constants, star, star_set,
    ]
}

// ----- periodicity ----------------------------------------------------------------

fn periodicity_suite(ns: &[u64], smax: u64) -> Vec<Check> {
    let mut exact = Check::new("V_ns = ±V_nt with the predicted sign above n - φ(n)");
    let mut monotone = Check::new("V_ns ⊆ ±V_nt and A(ns) ≤ A(nt) when t > n - φ(n)");
    let mut example = Check::new("n = 15, s = 2, t = 17 gives a strict subset");

    let primes = numtheory::primes_up_to(smax);
    for &n in ns {
        let threshold = n - numtheory::totient(n);
        let usable: Vec<u64> = primes.iter().copied().filter(|&s| n % s != 0).collect();
        for &s in &usable {
            for &t in &usable {
                if s == t || (s % n != t % n && (s + t) % n != 0) {
                    continue;
                }
                let r = fjdecomp::periodicity_compare(n, s, t).expect("hypotheses checked");
                let target = if r.sign < 0 { negate(&r.v_nt) } else { r.v_nt.clone() };
                if s > threshold && t > threshold {
                    let expected = if r.sign < 0 { Relation::Negated } else { Relation::Equal };
                    exact.case(r.v_ns == target && r.observed == expected, || {
                        format!("(n,s,t) = ({n},{s},{t}): {:?}", r.observed)
                    });
                }
                if t > threshold {
                    let ok = r.v_ns.is_subset(&target) && max_abs(&r.v_ns) <= max_abs(&r.v_nt);
                    monotone.case(ok, || format!("(n,s,t) = ({n},{s},{t})"));
                }
            }
        }
    }
    if ns.contains(&15) && smax >= 17 {
        let r = fjdecomp::periodicity_compare(15, 2, 17).expect("valid");
        let strict = r.v_ns.is_subset(&r.v_nt) && r.v_ns != r.v_nt && r.v_ns != negate(&r.v_nt);
        example.case(strict && r.observed == Relation::SubsetForward, || format!("{:?} vs {:?}", r.v_ns, r.v_nt));
    }
    let mut out = vec![exact, monotone];
    if example.cases > 0 {
        out.push(example);
    }
    out
}

fn max_abs(v: &BTreeSet<BigInt>) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_default()
}

// ----- pseudocyclotomic -------------------------------------------------------------

fn pseudo_suite(max: u64, triple_max: u64) -> Vec<Check> {
    let mut product = Check::new("Φ̃ equals the product of its cyclotomic factors");
    let mut gcd = Check::new("Φ̃ is the gcd of the Φ̃_(p_i)(x^(n/p_i))");
    let mut npcor = Check::new("Φ̃_{..,p} = gcd(Φ̃_p(x^n), Φ̃_{..}(x^p))");
    let mut r1 = Check::new("Φ̃_{p,q,r} is flat when r ≡ ±1 (mod pq)");
    let mut r2 = Check::new("r ≡ ±2 (mod pq): Φ̃_{p,q,r} flat iff q ≡ 1 (mod p)");
    let mut pqrs = Check::new("±1 chain: Φ̃_{p,q,r,s} flat iff q ≡ -1 (mod p) or p ≡ -1 (mod q)");
    let mut ff = Check::new("F̃_(s,j) = F̃_(t,j) for s ≡ t (mod n), j < s");
    let mut per = Check::new("V(Φ̃_{..,s}) = ±V(Φ̃_{..,t}) above the threshold");
    let mut small_w = Check::new("F_(n,p,j) = F̃_(w,j) for j < w, p ≡ w (mod n)");
    let mut pm1 = Check::new("F̃_j ≡ x^-j or -x^(j+φ) modulo Φ̃ when p ≡ ±1");

    for k in 1..=4 {
        for t in coprime_tuples(k, max) {
            let pp = parts(&t);
            let f = pseudo_phi(&pp);
            let factors = pseudo_factorization(&pp).expect("parts exceed 1");
            let prod = factors
                .iter()
                .fold(IntPolynomial::one(), |acc, c| acc.mul(&phi(c.n)));
            product.case(prod == f, || format!("parts {t:?}"));

            let n = pp.product();
            let g = t
                .iter()
                .map(|&p| IntPolynomial::geometric((n / p) as usize, p as usize))
                .reduce(|a, b| a.gcd(&b))
                .expect("k ≥ 1");
            gcd.case(g == f, || format!("parts {t:?}"));

            if k >= 2 {
                let (head, last) = t.split_at(k - 1);
                let m: u64 = head.iter().product();
                let p = last[0];
                let lifted = pseudo_phi(&parts(head)).substitute_power(p as usize);
                let g = IntPolynomial::geometric(m as usize, p as usize).gcd(&lifted);
                npcor.case(g == f, || format!("parts {t:?}"));
            }
        }
    }

    for t in coprime_tuples(3, triple_max) {
        let (p, q, r) = (t[0], t[1], t[2]);
        let w = numtheory::least_abs_residue((r % (p * q)) as i64, (p * q) as i64).abs();
        if w == 1 {
            let h = pseudo_phi(&parts(&t)).height();
            r1.case(h.is_one(), || format!("{t:?}: height {h}"));
        } else if w == 2 {
            let flat = pseudo_phi(&parts(&t)).height().is_one();
            r2.case(flat == (q % p == 1), || format!("{t:?}: flat = {flat}"));
        }
    }

    for pq in coprime_tuples(2, 60) {
        let (p, q) = (pq[0], pq[1]);
        for r in chain(p * q, 200_000 / (p * q)) {
            if numtheory::gcd(r, p * q) != 1 {
                continue;
            }
            for s in chain(p * q * r, 200_000 / (p * q * r) + 1) {
                if numtheory::gcd(s, p * q * r) != 1 || p * q * r * s > 200_000 {
                    continue;
                }
                let flat = pseudo_phi(&parts(&[p, q, r, s])).height().is_one();
                let predicted = q % p == p - 1 || p % q == q - 1;
                pqrs.case(flat == predicted, || format!("({p},{q},{r},{s}): flat = {flat}"));
            }
        }
    }

    for t in coprime_tuples(2, 35) {
        let base = parts(&t);
        let n = base.product();
        let threshold = n - base.degree();
        let coprime: Vec<u64> = (2..=3 * n).filter(|&s| numtheory::gcd(s, n) == 1).collect();
        for &s in &coprime {
            for &t2 in &coprime {
                if t2 <= s {
                    continue;
                }
                if s % n == t2 % n {
                    for j in 0..s as i64 {
                        let a = fjdecomp::pseudo_fj(&base, s, j).expect("coprime");
                        let b = fjdecomp::pseudo_fj(&base, t2, j).expect("coprime");
                        ff.case(a == b, || format!("{t:?}, s = {s}, t = {t2}, j = {j}"));
                    }
                }
                if s > threshold && (s % n == t2 % n || (s + t2) % n == 0) {
                    let vs = pseudo_phi(&base.with(s).expect("coprime")).coeff_set();
                    let vt = pseudo_phi(&base.with(t2).expect("coprime")).coeff_set();
                    let target = if s % n == t2 % n { vt } else { negate(&vt) };
                    per.case(vs == target, || format!("{t:?}, s = {s}, t = {t2}"));
                }
            }
        }
        for p in (n + 1)..=(4 * n) {
            if numtheory::gcd(p, n) != 1 {
                continue;
            }
            let phi_tilde = pseudo_phi(&base);
            let r = p % n;
            let phis = base.degree() as i64;
            if r == 1 || r == n - 1 {
                for j in 0..p as i64 {
                    let f = LaurentPolynomial::from_poly(fjdecomp::pseudo_fj(&base, p, j).expect("coprime"));
                    let expect = if r == 1 {
                        LaurentPolynomial::monomial(-j)
                    } else {
                        LaurentPolynomial::new(j + phis, IntPolynomial::constant(-1))
                    };
                    pm1.case(reduces_to_zero(&f.sub(&expect), &phi_tilde, n), || {
                        format!("{t:?}, p = {p}, j = {j}")
                    });
                }
            }
        }
    }

    for n in [15u64, 21, 35, 105] {
        let primes = numtheory::distinct_primes(n);
        for p in numtheory::primes_up_to(6 * n) {
            if p <= n {
                continue;
            }
            let w = p % n;
            let fam = fjdecomp::fj_family(n, p).expect("p ∤ n");
            for j in 0..w {
                let tilde = fjdecomp::pseudo_fj(&parts(&primes), w, j as i64).expect("coprime");
                small_w.case(&tilde == fam.get(j as usize), || format!("(n,p,j) = ({n},{p},{j})"));
            }
        }
    }

    vec![product, gcd, npcor, r1, r2, pqrs, ff, per, small_w, pm1]
}

/// `k m ± 1` for `k ≥ 1`, below `limit`.
fn chain(m: u64, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * m - 1 < limit {
        for r in [k * m - 1, k * m + 1] {
            if r > 1 && r < limit {
                out.push(r);
            }
        }
        k += 1;
    }
    out
}

// ----- classifier and table --------------------------------------------------------

fn soundness_suite(max: u64, workers: usize) -> Vec<Check> {
    let mut sweep = Check::new("classifier verdicts match heights for odd ternary n");
    let report = flatness::soundness_sweep(max, workers);
    sweep.cases = report.checked;
    sweep.failed = report.failures.len();
    sweep.examples = report.failures.iter().take(5).cloned().collect();

    let mut spot = Check::new("worked examples");
    let cases: [(&[u64], Status, i64); 4] = [
        (&[3, 11, 41], Status::BoundOnly, 1),
        (&[3, 7, 29], Status::NotFlat, 2),
        (&[7, 43, 599], Status::Flat, 1),
        (&[3, 5, 17], Status::HeightExactly2, 2),
    ];
    for (f, status, h) in cases {
        let v = flatness::classify(f).expect("valid");
        let a = flatness::height_of(f);
        spot.case(v.status == status && a == BigInt::from(h), || format!("{f:?}: {v} with A = {a}"));
    }
    vec![sweep, spot]
}

/// `(n, A(n), A(3n))` for every odd `n < 20000` with `A(3n) < A(n)`.
pub const HEIGHT_DROP_TABLE: [(u64, u64, u64); 11] = [
    (4745, 3, 2),
    (7469, 4, 3),
    (10439, 6, 4),
    (14231, 4, 3),
    (14443, 5, 4),
    (14707, 4, 3),
    (16027, 5, 4),
    (16523, 6, 4),
    (18791, 5, 4),
    (19129, 6, 5),
    (19499, 8, 7),
];

fn paper_table_suite(bound: u64, workers: usize) -> Vec<Check> {
    let opts = ScanOptions::new(bound).workers(workers);
    let mut rows = Check::new("A(3n) < A(n) rows");
    let report = flatness::scan(Conjecture::HeightDrop(3), &opts).expect("valid scan");
    let found: Vec<(u64, u64, u64)> = report
        .counterexamples
        .iter()
        .map(|c| {
            let h: Vec<u64> = c.values.iter().map(|v| u64::try_from(&v.height).expect("small")).collect();
            (c.values[0].subject.n(), h[0], h[1])
        })
        .collect();
    let expected: Vec<(u64, u64, u64)> = HEIGHT_DROP_TABLE.iter().copied().filter(|r| r.0 < bound).collect();
    rows.case(report.complete && found == expected, || format!("found {found:?}"));
    for r in &expected {
        rows.case(found.contains(r), || format!("missing {r:?}"));
    }
    let mut five = Check::new("no n with A(5n) < A(n)");
    let report = flatness::scan(Conjecture::NpMonotonic(5), &opts).expect("valid scan");
    five.case(report.complete && report.counterexamples.is_empty(), || {
        format!("{} hits", report.counterexamples.len())
    });
    let mut replay = Check::new("recorded heights replay");
    let report = flatness::scan(Conjecture::HeightDrop(3), &ScanOptions::new(bound.min(5000))).expect("valid scan");
    replay.case(flatness::replay(&report).is_empty(), || "mismatch".into());
    vec![rows, five, replay]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nosuch".parse::<Suite>().is_err());
    }

    #[test]
    fn coprime_enumeration() {
        assert_eq!(coprime_tuples(2, 12), vec![vec![2, 3], vec![2, 5], vec![3, 4]]);
        assert!(coprime_tuples(3, 29).is_empty());
        assert_eq!(coprime_tuples(3, 30), vec![vec![2, 3, 5]]);
    }

    #[test]
    fn alternation() {
        assert!(alternates(&phi(15)));
        assert!(!alternates(&phi(105)));
    }

    #[test]
    fn small_suites_pass() {
        let r = run_suite(Suite::Binary, &VerifyOptions { max: Some(300), ..Default::default() });
        assert!(r.passed(), "{r}");
        let r = run_suite(Suite::Fj, &VerifyOptions { max: Some(15), ..Default::default() });
        assert!(r.passed(), "{r}");
    }
}
