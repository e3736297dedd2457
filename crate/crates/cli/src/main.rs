//! `cycloforge` command-line interface.
//!
//! Exit status: 0 on success, 1 on a domain error (one `error: ...` line on
//! stderr), 2 on a usage error. Stdout depends only on the arguments; run
//! times and cache statistics go to stderr under `--timing`.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use cycloforge::binary;
use cycloforge::fjdecomp;
use cycloforge::flatness::{self, Conjecture, ScanOptions, ScanReport};
use cycloforge::numtheory;
use cycloforge::verify::{self, Suite, VerifyOptions};
use cycloforge::{phi_with, CycloIndex, IntPolynomial, PhiAlgorithm, PseudoParts};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Largest index `phi`, `psi`, `height` and `vset` accept without `--force`.
const LARGE_N: u64 = 10_000_000;

#[derive(Parser)]
#[command(name = "cycloforge", version, about = "Exact cyclotomic and inclusion-exclusion polynomials")]
struct Cli {
    /// Output format for polynomial results.
    #[arg(long, value_enum, default_value_t = Format::Coeffs, global = true)]
    format: Format,
    /// Report run time (and scan cache statistics) on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Coefficients from degree 0 upward, space separated.
    Coeffs,
    Json,
    /// Highest degree first with unicode exponents.
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclotomic polynomial Φ_n.
    Phi {
        #[arg(long)]
        n: u64,
        /// mobius, recursive, sparse or gcd; the default depends on n.
        #[arg(long)]
        alg: Option<PhiAlgorithm>,
        /// Allow n above 10^7.
        #[arg(long)]
        force: bool,
    },
    /// Inverse cyclotomic polynomial Ψ_n = (x^n - 1) / Φ_n.
    Psi {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        force: bool,
    },
    /// Inclusion-exclusion polynomial of pairwise coprime parts.
    Pseudo {
        /// Comma separated, e.g. 4,9,25.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u64>,
        /// Print the inverse polynomial instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Height: the largest coefficient in absolute value.
    #[command(group(ArgGroup::new("index").required(true).args(["n", "factors", "parts"])))]
    Height {
        #[arg(long)]
        n: Option<u64>,
        /// Distinct primes whose product is the index.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<u64>,
        /// Parts of an inclusion-exclusion polynomial.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u64>,
        #[arg(long)]
        force: bool,
    },
    /// Set of coefficients of Φ_n, including 0.
    Vset {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        force: bool,
    },
    /// Residue-class slices F_j of Φ_np modulo p.
    Fj {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        /// A single index; any integer, using F_j = x F_(j+p).
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i64>,
    },
    /// F*_j for 0 ≤ j < n, for a prime p > n.
    Fstar {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Bézout pair with Φ_np = a Φ_p(x^n) + b Φ_n(x^p).
    Bezout {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Residue grid of the binary polynomial Φ_pq.
    Ldiagram {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// (1 + x + ... + x^(l-1)) Φ_pq from its staircase corner.
    Staircase {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: u64,
    },
    /// Flatness verdict from proved results only.
    Classify {
        /// Ascending distinct odd primes.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<u64>,
        /// Compute the height when no result settles the case.
        #[arg(long)]
        brute: bool,
    },
    /// Run a named verification suite.
    Verify {
        /// binary, fj, periodicity, pseudo, classifier-soundness or paper-table.
        #[arg(long)]
        suite: Suite,
        /// Override the suite's main range.
        #[arg(long)]
        max: Option<u64>,
        /// Restrict the periodicity suite to one n.
        #[arg(long)]
        n: Option<u64>,
        /// Largest prime used by the periodicity suite.
        #[arg(long)]
        smax: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Search a range for counterexamples to a conjecture.
    Scan {
        /// notflat, broadhurst3, pqrsallflat, pqrs2, pqrstnotflat,
        /// np_gt_n_pP, height_drop_pP, np_monotonic_pP, pseudo_notflat or
        /// pseudo_broadhurst3 (P a prime).
        #[arg(long)]
        conjecture: Conjecture,
        /// Exclusive upper bound on n or on the tuple product.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Height journal; heights already present are not recomputed.
        #[arg(long, default_value = "cycloforge-cache.jsonl")]
        cache: PathBuf,
        #[arg(long)]
        no_cache: bool,
        /// Write counterexamples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// A domain error: reported on one line, exit status 1.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn fail<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(msg.into()))
}

fn check_index(n: u64, force: bool) -> Result<(), Failure> {
    CycloIndex::new(n)?;
    if n > LARGE_N && !force {
        return fail(format!("n = {n} exceeds 10^7; pass --force to compute it anyway"));
    }
    Ok(())
}

fn render(p: &IntPolynomial, format: Format, fields: Value) -> String {
    match format {
        Format::Coeffs => p.to_string(),
        Format::Pretty => p.pretty(),
        Format::Json => {
            let mut obj = fields;
            obj["degree"] = json!(p.degree().finite());
            obj["coefficients"] = serde_json::to_value(p).expect("polynomials serialize");
            obj.to_string()
        }
    }
}

fn render_family(label: &str, members: &[IntPolynomial], format: Format, fields: Value) -> String {
    match format {
        Format::Json => {
            let mut obj = fields;
            obj["members"] = serde_json::to_value(members).expect("polynomials serialize");
            obj.to_string()
        }
        _ => members
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let body = if format == Format::Pretty { m.pretty() } else { m.to_string() };
                format!("{label}_{j}: {body}")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn join<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn distinct_primes_product(factors: &[u64]) -> Result<u64, Failure> {
    let sorted: BTreeSet<u64> = factors.iter().copied().collect();
    if sorted.len() != factors.len() || !factors.iter().all(|&p| numtheory::is_prime(p)) {
        return fail(format!("factors must be distinct primes, got {}", join(factors, ",")));
    }
    factors
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .map_or_else(|| fail("product of factors overflows 64 bits"), Ok)
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Phi { n, alg, force } => {
            check_index(*n, *force)?;
            let alg = alg.unwrap_or_else(|| PhiAlgorithm::default_for(*n));
            let p = if alg == PhiAlgorithm::default_for(*n) {
                cycloforge::phi(*n)
            } else {
                phi_with(*n, alg)
            };
            Ok(render(&p, format, json!({ "n": n })))
        }
        Command::Psi { n, force } => {
            check_index(*n, *force)?;
            Ok(render(&cycloforge::psi(*n), format, json!({ "n": n })))
        }
        Command::Pseudo { parts, inverse } => {
            let pp = PseudoParts::new(parts.clone())?;
            let p = if *inverse {
                cycloforge::pseudo_psi(&pp)
            } else {
                cycloforge::pseudo_phi(&pp)
            };
            Ok(render(&p, format, json!({ "parts": pp.given(), "inverse": inverse })))
        }
        Command::Height { n, factors, parts, force } => {
            let (label, h, fields) = if !parts.is_empty() {
                let pp = PseudoParts::new(parts.clone())?;
                let h = cycloforge::pseudo_phi(&pp).height();
                (format!("A~({pp})"), h, json!({ "parts": pp.given() }))
            } else {
                let n = match n {
                    Some(n) => *n,
                    None => distinct_primes_product(factors)?,
                };
                check_index(n, *force)?;
                (format!("A({n})"), flatness::height_of_n(n), json!({ "n": n }))
            };
            Ok(match format {
                Format::Coeffs => h.to_string(),
                Format::Pretty => format!("{label} = {h}"),
                Format::Json => {
                    let mut obj = fields;
                    obj["height"] = exact_json(&h);
                    obj.to_string()
                }
            })
        }
        Command::Vset { n, force } => {
            check_index(*n, *force)?;
            let set = flatness::coefficient_set_of(&numtheory::distinct_primes(*n))
                .into_iter()
                .collect::<Vec<_>>();
            // Non-squarefree n only spread the same coefficients further apart.
            Ok(match format {
                Format::Json => json!({ "n": n, "values": set.iter().map(exact_json).collect::<Vec<_>>() }).to_string(),
                Format::Pretty => format!("{{{}}}", join(&set, ", ")),
                Format::Coeffs => join(&set, " "),
            })
        }
        Command::Fj { n, p, j } => {
            let fam = fjdecomp::fj_family(*n, *p)?;
            match j {
                None => Ok(render_family("F", &fam.members, format, json!({ "n": n, "p": p }))),
                Some(j) => {
                    let f = fjdecomp::fj_extended(&fam, *j);
                    Ok(match format {
                        Format::Json => json!({ "n": n, "p": p, "j": j, "value": f }).to_string(),
                        _ => f.to_string(),
                    })
                }
            }
        }
        Command::Fstar { n, p } => {
            let stars = fjdecomp::fstar_family(*n, *p)?;
            Ok(render_family("F*", &stars, format, json!({ "n": n, "p": p })))
        }
        Command::Bezout { n, p } => {
            let split = fjdecomp::bezout_split(*n, *p)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&split)?,
                Format::Pretty => format!("a = {}\nb = {}", split.a.pretty(), split.b.pretty()),
                Format::Coeffs => format!("a: {}\nb: {}", split.a, split.b),
            })
        }
        Command::Ldiagram { p, q } => {
            let d = binary::ldiagram(*p, *q)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&d)?,
                _ => d.to_string().trim_end().to_string(),
            })
        }
        Command::Staircase { p, q, l } => {
            let c = binary::staircase_corner(*p, *q, *l)?;
            let poly = binary::staircase_multiple(*p, *q, *l)?;
            Ok(match format {
                Format::Json => {
                    json!({ "corner": c, "coefficients": serde_json::to_value(&poly)? }).to_string()
                }
                Format::Pretty => format!("mu={} lambda={}\n{}", c.mu, c.lambda, poly.pretty()),
                Format::Coeffs => format!("mu={} lambda={}\n{poly}", c.mu, c.lambda),
            })
        }
        Command::Classify { factors, brute } => {
            let verdict = flatness::classify(factors)?;
            let brute_height = (*brute && !verdict.status.is_definite()).then(|| flatness::height_of(factors));
            Ok(match format {
                Format::Json => {
                    let mut obj = json!({ "factors": factors, "verdict": verdict, "display": verdict.to_string() });
                    if let Some(h) = &brute_height {
                        obj["brute_height"] = exact_json(h);
                    }
                    obj.to_string()
                }
                _ => match brute_height {
                    Some(h) => format!("{verdict}\nbrute height={h}"),
                    None => verdict.to_string(),
                },
            })
        }
        Command::Verify { suite, max, n, smax, jobs } => {
            let opts = VerifyOptions {
                max: *max,
                n: *n,
                smax: *smax,
                workers: (*jobs).max(1),
            };
            let mut report = verify::run_suite(*suite, &opts);
            if cli.timing {
                eprintln!("suite {}: {:.3} s", report.suite, report.elapsed);
            } else {
                report.elapsed = 0.0;
            }
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)?,
                _ => report.to_string().trim_end().to_string(),
            };
            if report.passed() {
                Ok(text)
            } else {
                emit(&text);
                fail(format!("suite {} failed", report.suite))
            }
        }
        Command::Scan {
            conjecture,
            bound,
            jobs,
            cache,
            no_cache,
            csv,
            json,
        } => {
            let mut opts = ScanOptions::new(bound.unwrap_or_else(|| conjecture.default_bound())).workers(*jobs);
            if !no_cache {
                opts = opts.journal(cache);
            }
            let report = flatness::scan(*conjecture, &opts)?;
            if let Some(path) = csv {
                std::fs::write(path, report.to_csv()?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            if let Some(path) = json {
                std::fs::write(path, report.to_json()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            if cli.timing {
                eprintln!(
                    "scan {}: {:.3} s, {} heights computed, {} cache hits",
                    report.conjecture, report.elapsed, report.heights_computed, report.cache_hits
                );
            }
            Ok(scan_summary(&report, format))
        }
    }
}

fn exact_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Scan output without the run-dependent fields (time, cache use).
fn scan_summary(report: &ScanReport, format: Format) -> String {
    if format == Format::Json {
        let mut stable = report.clone();
        stable.elapsed = 0.0;
        stable.heights_computed = 0;
        stable.cache_hits = 0;
        return stable.to_json();
    }
    let (lo, hi) = report.range_checked;
    let mut lines = vec![
        format!("conjecture {}", report.conjecture),
        format!("range {lo}..={hi}"),
        format!("items {} evaluated {}", report.items, report.items_evaluated),
        format!("counterexamples {}", report.counterexamples.len()),
    ];
    for c in &report.counterexamples {
        let values = join(c.values.iter().map(|v| format!("{}={}", v.subject, v.height)), " ");
        lines.push(format!("  {} {values} {}", c.n_or_tuple, c.verdict));
    }
    lines.join("\n")
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("time: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
