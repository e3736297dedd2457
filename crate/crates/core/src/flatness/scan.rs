//! Conjecture scans over ranges of `n` or tuples of parts.
//!
//! A scan first lists its work items (one per `n` or tuple, in a fixed
//! order), drops the ones whose hypotheses or conclusions settle them by
//! congruences alone, then hands fixed-width chunks of the rest to a worker
//! pool. Fresh heights go through one writer thread into the journal, so an
//! interrupted scan picks up where it left off.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::classify::{classify, least_residue, Status};
use super::journal::{HeightCache, HeightRecord, Journal, JournalError};
use super::height_of;
use crate::intpoly::{deserialize_exact, serialize_exact};
use crate::numtheory;
use crate::pseudocyclo::{pseudo_phi, PseudoParts};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("unknown conjecture {0:?}")]
    UnknownConjecture(String),
    #[error("bound must be positive")]
    ZeroBound,
    #[error(transparent)]
    Journal(#[from] JournalError),
    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

/// The statements a scan can look for violations of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conjecture {
    /// Flat ternary `pqr` has `q ≡ ±1 (mod p)` or `r ≡ ±1 (mod pq)`.
    NotFlat,
    /// The extra congruences forced on flat ternary `pqr` when `p ≢ 1 (mod w)`.
    BroadhurstIII,
    /// Flat quaternary `pqrs` satisfies the full `±1` chain with `q ≡ -1 (mod p)`.
    PqrsAllFlat,
    /// The `±1` chain with `q ≢ -1 (mod p)` gives height exactly 2.
    Pqrs2,
    /// No quinary cyclotomic polynomial is flat.
    PqrstNotFlat,
    /// `A(n) > 1` implies `A(nP) > 1`.
    NpGtN(u64),
    /// Hits are `n` with `A(nP) < A(n)`.
    HeightDrop(u64),
    /// Same search as [`Conjecture::HeightDrop`], under its alternate name.
    NpMonotonic(u64),
    /// [`Conjecture::NotFlat`] for inclusion-exclusion triples.
    PseudoNotFlat,
    /// [`Conjecture::BroadhurstIII`] for inclusion-exclusion triples.
    PseudoBroadhurstIII,
}

impl Conjecture {
    pub fn tag(&self) -> String {
        match self {
            Conjecture::NotFlat => "notflat".into(),
            Conjecture::BroadhurstIII => "broadhurst3".into(),
            Conjecture::PqrsAllFlat => "pqrsallflat".into(),
            Conjecture::Pqrs2 => "pqrs2".into(),
            Conjecture::PqrstNotFlat => "pqrstnotflat".into(),
            Conjecture::NpGtN(p) => format!("np_gt_n_p{p}"),
            Conjecture::HeightDrop(p) => format!("height_drop_p{p}"),
            Conjecture::NpMonotonic(p) => format!("np_monotonic_p{p}"),
            Conjecture::PseudoNotFlat => "pseudo_notflat".into(),
            Conjecture::PseudoBroadhurstIII => "pseudo_broadhurst3".into(),
        }
    }

    /// Every accepted tag, with `P` standing for a prime.
    pub const TAGS: [&'static str; 10] = [
        "notflat",
        "broadhurst3",
        "pqrsallflat",
        "pqrs2",
        "pqrstnotflat",
        "np_gt_n_pP",
        "height_drop_pP",
        "np_monotonic_pP",
        "pseudo_notflat",
        "pseudo_broadhurst3",
    ];

    /// A bound that finishes in seconds to minutes on a desktop.
    pub fn default_bound(&self) -> u64 {
        match self {
            Conjecture::NotFlat | Conjecture::BroadhurstIII => 100_000,
            Conjecture::PqrsAllFlat => 100_000,
            Conjecture::Pqrs2 => 10_000_000,
            Conjecture::PqrstNotFlat => 300_000,
            Conjecture::NpGtN(_) | Conjecture::HeightDrop(_) | Conjecture::NpMonotonic(_) => 20_000,
            Conjecture::PseudoNotFlat | Conjecture::PseudoBroadhurstIII => 20_000,
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Conjecture {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fixed = match s {
            "notflat" => Some(Conjecture::NotFlat),
            "broadhurst3" => Some(Conjecture::BroadhurstIII),
            "pqrsallflat" => Some(Conjecture::PqrsAllFlat),
            "pqrs2" => Some(Conjecture::Pqrs2),
            "pqrstnotflat" => Some(Conjecture::PqrstNotFlat),
            "pseudo_notflat" => Some(Conjecture::PseudoNotFlat),
            "pseudo_broadhurst3" => Some(Conjecture::PseudoBroadhurstIII),
            _ => None,
        };
        if let Some(c) = fixed {
            return Ok(c);
        }
        let with_prime = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|t| t.parse::<u64>().ok())
                .filter(|&p| numtheory::is_prime(p))
        };
        if let Some(p) = with_prime("np_gt_n_p") {
            Ok(Conjecture::NpGtN(p))
        } else if let Some(p) = with_prime("height_drop_p") {
            Ok(Conjecture::HeightDrop(p))
        } else if let Some(p) = with_prime("np_monotonic_p") {
            Ok(Conjecture::NpMonotonic(p))
        } else {
            Err(ScanError::UnknownConjecture(s.to_string()))
        }
    }
}

/// A polynomial whose height a scan needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "factors", rename_all = "lowercase")]
pub enum Subject {
    /// `Φ_n` for `n` the product of these distinct primes, ascending.
    Cyclotomic(Vec<u64>),
    /// The inclusion-exclusion polynomial of these coprime parts, ascending.
    Pseudo(Vec<u64>),
}

impl Subject {
    fn factors(&self) -> &[u64] {
        match self {
            Subject::Cyclotomic(f) | Subject::Pseudo(f) => f,
        }
    }

    fn is_pseudo(&self) -> bool {
        matches!(self, Subject::Pseudo(_))
    }

    pub fn n(&self) -> u64 {
        self.factors().iter().product()
    }

    /// `Π (p_i - 1)`, which is `φ(n)` in the cyclotomic case.
    pub fn degree(&self) -> u64 {
        self.factors().iter().map(|p| p - 1).product()
    }

    pub fn height(&self) -> BigInt {
        match self {
            Subject::Cyclotomic(f) => height_of(f),
            Subject::Pseudo(f) => pseudo_phi(&PseudoParts::new(f.clone()).expect("scan parts are coprime")).height(),
        }
    }

    fn record(&self, height: BigInt) -> HeightRecord {
        HeightRecord {
            n: self.n(),
            factors: self.factors().to_vec(),
            degree: self.degree(),
            height,
            pseudo: self.is_pseudo(),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Cyclotomic(_) => write!(f, "A({})", self.n()),
            Subject::Pseudo(parts) => {
                let t: Vec<String> = parts.iter().map(u64::to_string).collect();
                write!(f, "A~({})", t.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightValue {
    pub subject: Subject,
    #[serde(serialize_with = "serialize_exact", deserialize_with = "deserialize_exact")]
    pub height: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position among the items that needed heights, in enumeration order.
    pub id: usize,
    pub n_or_tuple: String,
    pub values: Vec<HeightValue>,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub conjecture: String,
    /// Inclusive range of `n` (or of tuple products) covered.
    pub range_checked: (u64, u64),
    pub counterexamples: Vec<Counterexample>,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub complete: bool,
    /// Items enumerated, including those settled by congruences.
    pub items: usize,
    /// Items that needed at least one height.
    pub items_evaluated: usize,
    pub heights_computed: usize,
    pub cache_hits: usize,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Columns `id, n_or_tuple, height_values, verdict`; heights are joined
    /// as `A(n)=h` with `;`.
    pub fn to_csv(&self) -> Result<String, ScanError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "n_or_tuple", "height_values", "verdict"])?;
        for c in &self.counterexamples {
            let values: Vec<String> = c.values.iter().map(|v| format!("{}={}", v.subject, v.height)).collect();
            w.write_record([c.id.to_string(), c.n_or_tuple.clone(), values.join(";"), c.verdict.clone()])?;
        }
        let bytes = w.into_inner().map_err(|e| ScanError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Recomputes every recorded height; returns the mismatches as
/// `(id, subject, recorded, recomputed)`.
pub fn replay(report: &ScanReport) -> Vec<(usize, Subject, BigInt, BigInt)> {
    let mut bad = Vec::new();
    for c in &report.counterexamples {
        for v in &c.values {
            let h = v.subject.height();
            if h != v.height {
                bad.push((c.id, v.subject.clone(), v.height.clone(), h));
            }
        }
    }
    bad
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub bound: u64,
    pub workers: usize,
    /// Items per chunk.
    pub chunk_size: usize,
    pub journal: Option<PathBuf>,
    /// Stop claiming chunks after this many; the report is then incomplete.
    pub stop_after_chunks: Option<usize>,
}

impl ScanOptions {
    pub fn new(bound: u64) -> Self {
        ScanOptions {
            bound,
            workers: 1,
            chunk_size: 64,
            journal: None,
            stop_after_chunks: None,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn journal(mut self, path: impl Into<PathBuf>) -> Self {
        self.journal = Some(path.into());
        self
    }
}

/// One unit of work: the heights it needs and how to judge them.
struct Item {
    id: usize,
    label: String,
    subjects: Vec<Subject>,
}

// ----- enumeration ---------------------------------------------------------

/// Ascending tuples of `k` distinct elements of `pool` with product below `bound`.
fn tuples(pool: &[u64], k: usize, bound: u64) -> Vec<Vec<u64>> {
    fn go(pool: &[u64], k: usize, bound: u64, start: usize, prod: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let left = (k - cur.len()) as u32;
        for i in start..pool.len() {
            let x = pool[i];
            // The remaining factors are all at least x.
            match x.checked_pow(left).and_then(|v| v.checked_mul(prod)) {
                Some(v) if v < bound => {}
                _ => break,
            }
            cur.push(x);
            go(pool, k, bound, i + 1, prod * x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, bound, 0, 1, &mut Vec::new(), &mut out);
    out
}

fn odd_primes_below(limit: u64) -> Vec<u64> {
    numtheory::primes_up_to(limit).into_iter().filter(|&p| p > 2).collect()
}

fn tuple_label(t: &[u64]) -> String {
    let s: Vec<String> = t.iter().map(u64::to_string).collect();
    format!("({})", s.join(","))
}

fn is_pm_one(a: u64, m: u64) -> bool {
    m <= 2 || least_residue(a, m).abs() == 1
}

/// Consequences a flat ternary triple must satisfy, or `None` when the
/// hypothesis `p ≢ 1 (mod w)` does not hold.
fn broadhurst3_holds(p: u64, q: u64, r: u64, pseudo: bool) -> Option<bool> {
    let w = least_residue(r, p * q).unsigned_abs();
    if p % w == 1 % w {
        return None;
    }
    let mut ok = w > p && q > p * p - p && is_pm_one(q, p) && is_pm_one(w, p);
    if ok && w % p == 1 % p {
        let wp = w * p;
        ok = if pseudo { q % wp != 1 % wp } else { !is_pm_one(q, wp) };
    }
    Some(ok)
}

/// Items for a scan, before any height is computed, plus the count of
/// enumerated cases settled without one.
fn enumerate(conj: Conjecture, bound: u64) -> (Vec<Item>, usize) {
    let mut items = Vec::new();
    let mut settled = 0usize;
    let push = |label: String, subjects: Vec<Subject>, items: &mut Vec<Item>| {
        let id = items.len();
        items.push(Item { id, label, subjects });
    };
    match conj {
        Conjecture::NotFlat | Conjecture::BroadhurstIII => {
            for t in tuples(&odd_primes_below(bound / 15 + 1), 3, bound) {
                let (p, q, r) = (t[0], t[1], t[2]);
                let needs_height = match conj {
                    Conjecture::NotFlat => !(is_pm_one(q, p) || is_pm_one(r, p * q)),
                    _ => broadhurst3_holds(p, q, r, false) == Some(false),
                };
                if needs_height {
                    push(tuple_label(&t), vec![Subject::Cyclotomic(t)], &mut items);
                } else {
                    settled += 1;
                }
            }
        }
        Conjecture::PqrsAllFlat | Conjecture::Pqrs2 => {
            let pool = if conj == Conjecture::Pqrs2 {
                odd_primes_below(integer_cbrt(bound) + 1)
            } else {
                odd_primes_below(bound / 105 + 1)
            };
            let mut candidates = Vec::new();
            if conj == Conjecture::Pqrs2 {
                // Build the chain directly: r ≡ ±1 (mod pq), s ≡ ±1 (mod pqr).
                for pq in tuples(&pool, 2, bound) {
                    let (p, q) = (pq[0], pq[1]);
                    if q % p == p - 1 {
                        continue;
                    }
                    for r in chain_primes(p * q, q, bound / (p * q)) {
                        let pqr = p * q * r;
                        for s in chain_primes(pqr, r, (bound - 1) / pqr + 1) {
                            if pqr * s < bound {
                                candidates.push(vec![p, q, r, s]);
                            }
                        }
                    }
                }
                candidates.sort();
            } else {
                candidates = tuples(&pool, 4, bound);
            }
            for t in candidates {
                let (p, q, r, s) = (t[0], t[1], t[2], t[3]);
                let needs_height = match conj {
                    Conjecture::PqrsAllFlat => {
                        !(q % p == p - 1 && is_pm_one(r, p * q) && is_pm_one(s, p * q * r))
                    }
                    _ => true,
                };
                if needs_height {
                    push(tuple_label(&t), vec![Subject::Cyclotomic(t)], &mut items);
                } else {
                    settled += 1;
                }
            }
        }
        Conjecture::PqrstNotFlat => {
            for t in tuples(&odd_primes_below(bound / 1155 + 1), 5, bound) {
                push(tuple_label(&t), vec![Subject::Cyclotomic(t)], &mut items);
            }
        }
        Conjecture::NpGtN(big_p) | Conjecture::HeightDrop(big_p) | Conjecture::NpMonotonic(big_p) => {
            // Odd squarefree n, coprime to P. Fewer than three odd primes
            // means A(n) = 1, which can be neither a drop nor a violation.
            for n in (3..bound).step_by(2) {
                if n % big_p == 0 {
                    continue;
                }
                let f = numtheory::factorize(n);
                if f.iter().any(|&(_, e)| e > 1) {
                    continue;
                }
                if f.len() < 3 {
                    settled += 1;
                    continue;
                }
                let primes: Vec<u64> = f.iter().map(|&(p, _)| p).collect();
                let mut with_p = primes.clone();
                with_p.push(big_p);
                with_p.sort_unstable();
                push(n.to_string(), vec![Subject::Cyclotomic(primes), Subject::Cyclotomic(with_p)], &mut items);
            }
        }
        Conjecture::PseudoNotFlat | Conjecture::PseudoBroadhurstIII => {
            // A part equal to 2 gives ±Φ̃_{q,r}(-x), which is always flat, so
            // parts start at 3 as the prime versions start at odd primes.
            for p in 3.. {
                if p * (p + 1) * (p + 2) >= bound {
                    break;
                }
                for q in p + 1.. {
                    if p * q * (q + 1) >= bound {
                        break;
                    }
                    if numtheory::gcd(p, q) != 1 {
                        continue;
                    }
                    for r in q + 1..=(bound - 1) / (p * q) {
                        if numtheory::gcd(r, p * q) != 1 {
                            continue;
                        }
                        let needs_height = match conj {
                            Conjecture::PseudoNotFlat => !(is_pm_one(q, p) || is_pm_one(r, p * q)),
                            _ => broadhurst3_holds(p, q, r, true) == Some(false),
                        };
                        if needs_height {
                            push(tuple_label(&[p, q, r]), vec![Subject::Pseudo(vec![p, q, r])], &mut items);
                        } else {
                            settled += 1;
                        }
                    }
                }
            }
        }
    }
    (items, settled)
}

fn integer_cbrt(n: u64) -> u64 {
    let mut x = (n as f64).cbrt() as u64;
    while x * x * x > n {
        x -= 1;
    }
    while (x + 1).pow(3) <= n {
        x += 1;
    }
    x
}

/// Primes `r > floor` with `r ≡ ±1 (mod m)` and `r < limit`.
fn chain_primes(m: u64, floor: u64, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * m - 1 < limit {
        for r in [k * m - 1, k * m + 1] {
            if r > floor && r < limit && numtheory::is_prime(r) {
                out.push(r);
            }
        }
        k += 1;
    }
    out
}

/// `Some(verdict)` when the heights make the item a counterexample or hit.
fn judge(conj: Conjecture, subjects: &[Subject], heights: &[BigInt]) -> Option<String> {
    let one = BigInt::one();
    match conj {
        Conjecture::NotFlat
        | Conjecture::BroadhurstIII
        | Conjecture::PqrsAllFlat
        | Conjecture::PqrstNotFlat
        | Conjecture::PseudoNotFlat
        | Conjecture::PseudoBroadhurstIII => (heights[0] == one).then(|| "flat: violates conclusion".to_string()),
        Conjecture::Pqrs2 => (heights[0] != BigInt::from(2)).then(|| format!("height {} != 2", heights[0])),
        Conjecture::NpGtN(_) => (heights[0] > one && heights[1] == one)
            .then(|| format!("{} > 1 but {} = 1", subjects[0], subjects[1])),
        Conjecture::HeightDrop(_) | Conjecture::NpMonotonic(_) => {
            (heights[1] < heights[0]).then(|| format!("{} < {}", subjects[1], subjects[0]))
        }
    }
}

// ----- execution -----------------------------------------------------------

/// Runs `work` over chunks of `items` on `workers` threads. Chunks are
/// claimed through an atomic counter; results come back sorted by chunk.
fn run_pool<T: Sync, R: Send>(
    items: &[T],
    chunk_size: usize,
    workers: usize,
    stop_after_chunks: Option<usize>,
    work: impl Fn(&[T]) -> R + Sync,
) -> (Vec<R>, bool) {
    let chunks: Vec<&[T]> = items.chunks(chunk_size.max(1)).collect();
    let limit = stop_after_chunks.unwrap_or(usize::MAX).min(chunks.len());
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, R)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers.max(1))
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= limit {
                            break;
                        }
                        mine.push((i, work(chunks[i])));
                    }
                    mine
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
    });
    done.sort_by_key(|(i, _)| *i);
    let complete = limit == chunks.len();
    (done.into_iter().map(|(_, r)| r).collect(), complete)
}

struct ChunkOutcome {
    found: Vec<Counterexample>,
    computed: usize,
    hits: usize,
}

pub fn scan(conj: Conjecture, opts: &ScanOptions) -> Result<ScanReport, ScanError> {
    if opts.bound == 0 {
        return Err(ScanError::ZeroBound);
    }
    let start = Instant::now();
    let (items, settled) = enumerate(conj, opts.bound);

    let (journal, cache) = match &opts.journal {
        Some(path) => {
            let (j, c) = Journal::open(path)?;
            (Some(j), c)
        }
        None => (None, HeightCache::default()),
    };

    let (tx, rx) = mpsc::channel::<Vec<HeightRecord>>();
    let writer = journal.map(|mut j| {
        thread::spawn(move || -> Result<(), JournalError> {
            for batch in rx {
                j.append(&batch)?;
            }
            Ok(())
        })
    });

    let cache = &cache;
    let (outcomes, complete) = run_pool(&items, opts.chunk_size, opts.workers, opts.stop_after_chunks, |chunk| {
        let mut out = ChunkOutcome {
            found: Vec::new(),
            computed: 0,
            hits: 0,
        };
        let mut fresh = Vec::new();
        for item in chunk {
            let heights: Vec<BigInt> = item
                .subjects
                .iter()
                .map(|s| match cache.get(s.is_pseudo(), s.factors()) {
                    Some(h) => {
                        out.hits += 1;
                        h.clone()
                    }
                    None => {
                        out.computed += 1;
                        let h = s.height();
                        fresh.push(s.record(h.clone()));
                        h
                    }
                })
                .collect();
            if let Some(verdict) = judge(conj, &item.subjects, &heights) {
                out.found.push(Counterexample {
                    id: item.id,
                    n_or_tuple: item.label.clone(),
                    values: item
                        .subjects
                        .iter()
                        .zip(heights)
                        .map(|(s, h)| HeightValue {
                            subject: s.clone(),
                            height: h,
                        })
                        .collect(),
                    verdict,
                });
            }
        }
        if !fresh.is_empty() {
            // The writer may have stopped on an I/O error; that surfaces below.
            let _ = tx.send(fresh);
        }
        out
    });
    drop(tx);
    if let Some(w) = writer {
        w.join().expect("journal writer panicked")?;
    }

    let evaluated_chunks = outcomes.len();
    let items_evaluated = items
        .chunks(opts.chunk_size.max(1))
        .take(evaluated_chunks)
        .map(<[Item]>::len)
        .sum();
    let mut report = ScanReport {
        conjecture: conj.tag(),
        range_checked: (1, opts.bound - 1),
        counterexamples: Vec::new(),
        elapsed: 0.0,
        complete,
        items: items.len() + settled,
        items_evaluated,
        heights_computed: 0,
        cache_hits: 0,
    };
    for o in outcomes {
        report.counterexamples.extend(o.found);
        report.heights_computed += o.computed;
        report.cache_hits += o.hits;
    }
    report.elapsed = start.elapsed().as_secs_f64();
    Ok(report)
}

// ----- classifier soundness ------------------------------------------------

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub bound: u64,
    pub checked: usize,
    /// Verdict counts keyed by status name.
    pub by_status: BTreeMap<String, usize>,
    /// Human-readable descriptions of every disagreement.
    pub failures: Vec<String>,
    pub elapsed: f64,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `classify` with actual heights for every odd ternary `pqr ≤ bound`:
/// definite verdicts must match exactly and `A(pqr) ≤ |w|` must hold for all.
pub fn soundness_sweep(bound: u64, workers: usize) -> SoundnessReport {
    let start = Instant::now();
    let triples = tuples(&odd_primes_below(bound / 15 + 1), 3, bound + 1);
    let (chunks, _) = run_pool(&triples, 32, workers, None, |chunk| {
        chunk
            .iter()
            .map(|t| {
                let verdict = classify(t).expect("odd prime triples are valid");
                let h = height_of(t);
                let w = least_residue(t[2], t[0] * t[1]).unsigned_abs();
                let mut problems = Vec::new();
                let ok = match verdict.status {
                    Status::Flat => h == BigInt::one(),
                    Status::NotFlat => h > BigInt::one(),
                    Status::HeightExactly2 => h == BigInt::from(2),
                    Status::BoundOnly => verdict.bound.is_some_and(|b| h <= BigInt::from(b)),
                    Status::TheoremSilent => true,
                };
                if !ok {
                    problems.push(format!("{}: {verdict} but A = {h}", tuple_label(t)));
                }
                if h > BigInt::from(w) {
                    problems.push(format!("{}: A = {h} exceeds |w| = {w}", tuple_label(t)));
                }
                (verdict.status, problems)
            })
            .collect::<Vec<_>>()
    });
    let mut report = SoundnessReport {
        bound,
        ..Default::default()
    };
    for (status, problems) in chunks.into_iter().flatten() {
        report.checked += 1;
        *report.by_status.entry(status.to_string()).or_default() += 1;
        report.failures.extend(problems);
    }
    report.elapsed = start.elapsed().as_secs_f64();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for tag in ["notflat", "broadhurst3", "pqrsallflat", "pqrs2", "pqrstnotflat", "np_gt_n_p3",
            "height_drop_p3", "np_monotonic_p5", "pseudo_notflat", "pseudo_broadhurst3"]
        {
            assert_eq!(tag.parse::<Conjecture>().unwrap().tag(), tag);
        }
        assert!(matches!("height_drop_p4".parse::<Conjecture>(), Err(ScanError::UnknownConjecture(_))));
        assert!(matches!("nosuch".parse::<Conjecture>(), Err(ScanError::UnknownConjecture(_))));
    }

    #[test]
    fn tuple_enumeration() {
        let t = tuples(&[3, 5, 7, 11], 3, 106);
        assert_eq!(t, vec![vec![3, 5, 7]]);
        assert_eq!(tuples(&[3, 5, 7, 11], 2, 36).len(), 4);
        assert_eq!(chain_primes(15, 5, 100), vec![29, 31, 59, 61, 89]);
    }

    #[test]
    fn broadhurst3_predicate() {
        // w = 1 divides everything: hypothesis fails.
        assert_eq!(broadhurst3_holds(3, 5, 31, false), None);
        // 3·7·29: w = 8 > 3, 7 > 6, 7 ≡ 1 and 8 ≡ -1 (mod 3), so the
        // conclusion holds even though A = 2.
        assert_eq!(broadhurst3_holds(3, 7, 29, false), Some(true));
        // (3,5,17): w = 2, 3 ≡ 1 (mod 2): hypothesis fails.
        assert_eq!(broadhurst3_holds(3, 5, 17, false), None);
    }

    #[test]
    fn small_drop_scan() {
        let report = scan(Conjecture::HeightDrop(3), &ScanOptions::new(5000)).unwrap();
        assert!(report.complete);
        let rows: Vec<(String, Vec<BigInt>)> = report
            .counterexamples
            .iter()
            .map(|c| (c.n_or_tuple.clone(), c.values.iter().map(|v| v.height.clone()).collect()))
            .collect();
        assert_eq!(rows, vec![("4745".to_string(), vec![BigInt::from(3), BigInt::from(2)])]);
        assert!(replay(&report).is_empty());
    }
}
