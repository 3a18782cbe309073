//! The `tropls` command line.
//!
//! Exit codes: 0 success, 2 negative verdict (invalid vector, violated bound,
//! nonzero residual, non-transverse), 3 parse error, 4 invalid argument or
//! other domain error, 5 exhausted retry budget, 1 internal invariant.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::json::{from_json, to_json, to_json_pretty};
use crate::matroid::Matroid;
use crate::plucker::{corank_vector, hyperplane, stable_intersection, PlueckerVector, Validity};
use crate::rational::{Point, Rat};
use crate::scan::{conjecture_scan, worker_count, Family};
use crate::sptree::{fvector_formula, mu, total_face_bound, tree_space, TreeDoc};
use crate::stable::{generic_stable_intersection, transversality};
use crate::subdivision::{loop_free_face_count, Subdivision};
use crate::subset::{binomial, Subset};
use crate::tutte::{beta, tutte, tutte_decomposition_check};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "tropls", version, about = "Exact computations with tropical linear spaces")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the tropical Plücker relations; prints a failing relation if any.
    Validate { input: String },
    /// Facets, interior faces, bounded f-vector and dual vertices.
    Subdivide { input: String },
    /// Bounded f-vector against the conjectured bound.
    Fvector {
        input: String,
        /// Also count all faces of the tropical linear space.
        #[arg(long)]
        total: bool,
    },
    /// The dual vector `p⊥`.
    Dual { input: String },
    /// The minor `p \ S / T`.
    Minor {
        input: String,
        #[arg(long, default_value = "[]")]
        delete: String,
        #[arg(long, default_value = "[]")]
        contract: String,
    },
    /// The vector of `L(p) + v`.
    Translate {
        input: String,
        /// Comma separated rationals, e.g. `1,0,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Stable intersection, optionally after a generic translation of the second space.
    StableIntersect {
        input: String,
        other: String,
        #[arg(long)]
        generic: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The tropical hyperplane with coefficients `c`.
    Hyperplane {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// The corank vector `p_I = -rank(I)` of a loop-free matroid.
    Corank { input: String },
    /// `τ^d` of a weighted tree.
    Treespace {
        input: String,
        #[arg(long)]
        d: usize,
    },
    /// The series-parallel matroid of a coloured tree.
    SpMatroid { input: String },
    /// Tutte polynomial of a matroid.
    Tutte { input: String },
    /// Residual of the Tutte decomposition over the interior faces of `D_p`.
    TutteLemma { input: String },
    /// Seeded scan of generated spaces against the f-vector bounds.
    ConjectureScan {
        #[arg(long)]
        family: String,
        /// A value or an inclusive range `a..b`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Print the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 3,
        Error::Resource { .. } => 5,
        Error::Invariant(_) => 1,
        _ => 4,
    }
}

fn error_json(e: &Error) -> String {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    match e {
        Error::Parse { offset, .. } => v["offset"] = json!(offset),
        Error::Resource { attempts, seed } => {
            v["attempts"] = json!(attempts);
            v["seed"] = json!(seed);
        }
        _ => {}
    }
    v.to_string()
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::invalid(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn parse_rats(text: &str) -> Result<Vec<Rat>> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .trim_matches('"')
                .parse::<Rat>()
                .map_err(|_| Error::invalid(format!("{s:?} is not a rational number")))
        })
        .collect()
}

fn parse_subset(text: &str, n: usize) -> Result<Subset> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let elements: Vec<usize> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::invalid(format!("{s:?} is not an element"))))
            .collect::<Result<_>>()?
    };
    let mut sorted = elements.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != elements.len() {
        return Err(Error::invalid(format!("{text} repeats an element")));
    }
    Subset::from_elements(n, &sorted)
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::invalid(format!("{text:?} is neither a number nor a range a..b"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

fn load_vector(path: &str) -> Result<PlueckerVector> {
    from_json(&read_input(path)?)
}

fn load_matroid(path: &str) -> Result<Matroid> {
    from_json(&read_input(path)?)
}

fn load_tree(path: &str) -> Result<TreeDoc> {
    from_json(&read_input(path)?)
}

/// Output text and exit code of a successful run.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    let emit = |v: &serde_json::Value| if cli.pretty { to_json_pretty(v) } else { to_json(v) };
    let out = match cli.command {
        Command::Validate { input } => {
            let p = load_vector(&input)?;
            match p.validate() {
                Validity::Valid => Outcome::ok(emit(&json!({ "verdict": "valid" }))),
                Validity::Invalid(w) => Outcome {
                    text: emit(&json!({ "verdict": "invalid", "witness": w })),
                    code: 2,
                },
            }
        }
        Command::Subdivide { input } => {
            let sd = Subdivision::new(&load_vector(&input)?)?;
            Outcome::ok(emit(&serde_json::to_value(&sd).expect("serializable")))
        }
        Command::Fvector { input, total } => {
            let p = load_vector(&input)?;
            let (n, d) = (p.n(), p.d());
            let f = Subdivision::new(&p)?.bounded_f_vector();
            let bound: Vec<u64> = (1..=f.len()).map(|i| fvector_formula(i, d, n)).collect();
            let mut violated = f.iter().zip(&bound).any(|(a, b)| a > b);
            let show = |v: &[u64]| format!("[{}]", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            let mut text = format!("f={} bound={} tight={}", show(&f), show(&bound), f == bound);
            if total {
                let g = loop_free_face_count(&p)?;
                let gb: Vec<u64> = (1..=g.len()).map(|i| total_face_bound(i, d, n)).collect();
                violated |= g.iter().zip(&gb).any(|(a, b)| a > b);
                text.push_str(&format!("\ntotal={} bound={} tight={}", show(&g), show(&gb), g == gb));
            }
            Outcome { text, code: if violated { 2 } else { 0 } }
        }
        Command::Dual { input } => Outcome::ok(emit(&serde_json::to_value(load_vector(&input)?.dualize()).expect("serializable"))),
        Command::Minor { input, delete, contract } => {
            let p = load_vector(&input)?;
            let m = p.minor(parse_subset(&delete, p.n())?, parse_subset(&contract, p.n())?)?;
            Outcome::ok(emit(&serde_json::to_value(m).expect("serializable")))
        }
        Command::Translate { input, v } => {
            let p = load_vector(&input)?;
            let t = p.translate(&Point(parse_rats(&v)?))?;
            Outcome::ok(emit(&serde_json::to_value(t).expect("serializable")))
        }
        Command::StableIntersect { input, other, generic, seed } => {
            let p = load_vector(&input)?;
            let p2 = load_vector(&other)?;
            if generic {
                let seed = seed.unwrap_or(DEFAULT_SEED);
                let (q, cert) = generic_stable_intersection(&p, &p2, seed)?;
                Outcome::ok(emit(&json!({ "q": q, "seed": seed, "v": cert.v, "certificate": cert })))
            } else {
                if seed.is_some() {
                    return Err(Error::invalid("--seed only applies with --generic"));
                }
                let q = stable_intersection(&p, &p2)?;
                let check = transversality(&p, &p2, &Point::zero(p.n()))?;
                Outcome::ok(emit(&json!({ "q": q, "transversality": check })))
            }
        }
        Command::Hyperplane { c } => Outcome::ok(emit(&serde_json::to_value(hyperplane(&parse_rats(&c)?)?).expect("serializable"))),
        Command::Corank { input } => {
            let p = corank_vector(&load_matroid(&input)?)?;
            Outcome::ok(emit(&serde_json::to_value(p).expect("serializable")))
        }
        Command::Treespace { input, d } => {
            let w = load_tree(&input)?.to_weighted()?;
            Outcome::ok(emit(&serde_json::to_value(tree_space(&w, d)?).expect("serializable")))
        }
        Command::SpMatroid { input } => {
            let ct = load_tree(&input)?.to_colored()?;
            let m = mu(&ct, ct.rank())?;
            let b = beta(&m)?;
            Outcome::ok(emit(&json!({ "matroid": m, "beta": b })))
        }
        Command::Tutte { input } => {
            let m = load_matroid(&input)?;
            let t = tutte(&m)?;
            let b = beta(&m)?;
            Outcome::ok(emit(&json!({ "tutte": t, "text": t.render("z", "w"), "beta": b })))
        }
        Command::TutteLemma { input } => {
            let p = load_vector(&input)?;
            let (n, d) = (p.n(), p.d());
            let sd = Subdivision::new(&p)?;
            let (zero, residual) = tutte_decomposition_check(&Matroid::uniform(d, n), &sd.interior_with_dims())?;
            let beta_sum: u64 = sd.facet_matroids().map(beta).sum::<Result<u64>>()?;
            let expected = if n >= 2 && d >= 1 { binomial(n - 2, d - 1) } else { 0 };
            let text = emit(&json!({
                "residual": residual,
                "zero": zero,
                "beta_sum": beta_sum,
                "expected_beta_sum": expected,
            }));
            Outcome { text, code: if zero && beta_sum == expected { 0 } else { 2 } }
        }
        Command::ConjectureScan { family, n, d, seed, count, json } => {
            let family: Family = family.parse()?;
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let report = conjecture_scan(family, &parse_range(&n)?, &parse_range(&d)?, seed, count, worker_count()?)?;
            let violations = report.violations();
            let text = if json {
                emit(&serde_json::to_value(&report).expect("serializable"))
            } else {
                let mut lines = vec![format!("family={} seed={} instances={}", report.family, seed, report.rows.len())];
                lines.extend(report.rows.iter().map(ToString::to_string));
                lines.push(format!("violations={violations}"));
                lines.join("\n")
            };
            Outcome { text, code: if violations > 0 { 2 } else { 0 } }
        }
    };
    Ok(out)
}

/// Run the command line on `args` (program name first), writing to the given
/// streams, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = Error::invalid(e.to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", error_json(&err));
            return exit_code(&err);
        }
    };
    match execute(cli) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.text);
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}
