//! `seifert`: invariants of Seifert fibered homology spheres and of `1/m`
//! surgeries on their fibers.

mod cache;
mod report;

use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use seifert_core::alexander::{alexander_fiber, fox_milnor_verdict};
use seifert_core::error::Error;
use seifert_core::lattice::d_of_manifold;
use seifert_core::plumbing::plumbing_graph;
use seifert_core::seifert::{
    default_fiber, fiber_index_by_order, from_multiplicities, parse_orders, Multiplicities,
    OrientedSeifert, SeifertInvariants, Sign,
};
use seifert_core::surgery::{d_survey_with, surger_fiber};

use cache::DCache;

#[derive(Parser, Debug)]
#[command(
    name = "seifert",
    version,
    about = "Invariants of Seifert fibered homology spheres and surgeries on their fibers",
    after_help = "Multiplicities are given as comma-separated positive integers, e.g. 2,3,5.\n\
                  The fiber defaults to the largest order; --fiber-order 1 selects a regular fiber.\n\
                  The d-invariant cache is used with --cache or when SEIFERT_D_CACHE is set; its path is\n\
                  --cache=PATH, else $SEIFERT_D_CACHE, else $XDG_CACHE_HOME/seifert/d-cache.jsonl\n\
                  (or ~/.cache/seifert/d-cache.jsonl).\n\
                  Exit status: 0 success, 2 invalid input, 3 internal invariant violation."
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Use the persistent d-invariant cache, optionally at PATH.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1, require_equals = true)]
    cache: Option<Option<PathBuf>>,

    /// Recompute every cache hit and fail on a mismatch.
    #[arg(long, global = true)]
    verify: bool,

    /// Add elapsed time to reports and d output.
    #[arg(long, global = true)]
    timing: bool,

    /// Order of the fiber to operate on (1 for a regular fiber).
    #[arg(long, global = true, value_name = "K")]
    fiber_order: Option<BigInt>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seifert invariants e, (a_j, b_j).
    Invariants { tuple: String },
    /// Plumbing graph and intersection lattice.
    Plumb {
        tuple: String,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Heegaard Floer d-invariant.
    D { tuple: String },
    /// 1/m surgery on the selected fiber.
    Surger {
        tuple: String,
        /// Surgery coefficient 1/m.
        #[arg(long, value_name = "1/M", allow_hyphen_values = true)]
        coef: String,
    },
    /// d-invariants of 1/m surgeries for m in a range.
    Survey {
        tuple: String,
        /// Inclusive range lo..hi.
        #[arg(long, value_name = "LO..HI", allow_hyphen_values = true, default_value = "-4..4")]
        range: String,
    },
    /// Alexander polynomial of the selected fiber and its Fox-Milnor verdict.
    Alexander { tuple: String },
    /// Combined report: e, d, plumbing rank, Alexander data, witness.
    Report { tuple: String },
    /// One report per line of FILE, as JSON lines. Lines hold a tuple and an
    /// optional fiber order; blank lines and lines starting with '#' are skipped.
    Batch { file: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
    Io(String),
    CacheMismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) | CliError::Io(s) => f.write_str(s),
            CliError::CacheMismatch(s) => write!(f, "cache mismatch: {s}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            CliError::CacheMismatch(_) => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        if self.exit_code() == 3 {
            "internal"
        } else {
            "invalid_input"
        }
    }
}

/// A parsed tuple with its fiber moved to the last slot.
pub struct Selection {
    pub input: String,
    pub fiber: BigInt,
    pub multiplicities: Multiplicities,
}

impl Selection {
    fn parse(tuple: &str, fiber: Option<&BigInt>) -> Result<Self, CliError> {
        let orders = parse_orders(tuple)?;
        let fiber = fiber.cloned().unwrap_or_else(|| default_fiber(&orders));
        let sel = fiber_index_by_order(&orders, &fiber)?;
        Ok(Selection {
            input: tuple.to_string(),
            fiber,
            multiplicities: sel.multiplicities,
        })
    }

    pub fn invariants(&self) -> Result<SeifertInvariants, CliError> {
        Ok(from_multiplicities(&self.multiplicities)?)
    }

    fn oriented(&self) -> Result<OrientedSeifert, CliError> {
        Ok(OrientedSeifert::new(Sign::Positive, self.invariants()?))
    }
}

pub struct Context {
    cache: Option<DCache>,
    pub timing: bool,
}

impl Context {
    pub fn d_value(&self, y: &OrientedSeifert) -> Result<i64, CliError> {
        let compute = |y: &OrientedSeifert| d_of_manifold(y).map_err(CliError::from);
        match &self.cache {
            Some(c) => c.get_or_compute(y, compute),
            None => compute(y),
        }
    }
}

fn parse_coef(s: &str) -> Result<BigInt, CliError> {
    let bad = || CliError::Input(format!("surgery coefficient {s:?} is not of the form 1/m"));
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if p == BigInt::from(1) {
        Ok(q)
    } else if p == BigInt::from(-1) {
        Ok(-q)
    } else {
        Err(bad())
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Input(format!("range {s:?} is not of the form lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// JSON integer, or a decimal string when it does not fit in 64 bits.
fn int(x: &BigInt) -> serde_json::Value {
    seifert_core::serde_int::serialize(x, serde_json::value::Serializer).expect("integer serializes")
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

fn run(cli: &Cli, ctx: &Context) -> Result<String, CliError> {
    let fiber = cli.fiber_order.as_ref();
    match &cli.command {
        Command::Invariants { tuple } => {
            let y = Selection::parse(tuple, fiber)?.oriented()?;
            Ok(if cli.json {
                to_json(&y)
            } else {
                format!("{y}: {}", y.invariants())
            })
        }
        Command::Plumb { tuple, dot } => {
            let g = plumbing_graph(&Selection::parse(tuple, fiber)?.invariants()?)?;
            if *dot {
                return Ok(g.to_dot().trim_end().to_string());
            }
            let lattice = g.gram_matrix()?;
            Ok(if cli.json {
                to_json(&json!({ "graph": g, "lattice": lattice }))
            } else {
                let arms: Vec<String> = g.arms.iter().map(|a| format!("{a:?}")).collect();
                format!(
                    "central weight {}; arms {}; rank {}",
                    g.central_weight,
                    arms.join(" "),
                    g.rank()
                )
            })
        }
        Command::D { tuple } => {
            let start = Instant::now();
            let y = Selection::parse(tuple, fiber)?.oriented()?;
            let d = ctx.d_value(&y)?;
            let ms = ctx.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
            Ok(if cli.json {
                let mut v = json!({ "manifold": y.to_string(), "d": d });
                if let Some(ms) = ms {
                    v["timing_ms"] = json!(ms);
                }
                to_json(&v)
            } else {
                let mut s = format!("d({y}) = {d}");
                if let Some(ms) = ms {
                    s += &format!(" ({ms:.1} ms)");
                }
                s
            })
        }
        Command::Surger { tuple, coef } => {
            let m = parse_coef(coef)?;
            let sel = Selection::parse(tuple, fiber)?;
            let y = sel.invariants()?;
            let s = surger_fiber(&y, &m)?;
            Ok(if cli.json {
                to_json(&json!({
                    "input": sel.input,
                    "fiber_order": int(&sel.fiber),
                    "m": int(&m),
                    "result": s.result,
                    "core_fiber_order": int(&s.core_fiber_order),
                }))
            } else {
                format!(
                    "1/{m} surgery on the fiber of order {} of Σ({}) gives {}: {}; core fiber order {}",
                    sel.fiber,
                    sel.multiplicities,
                    s.result,
                    s.result.invariants(),
                    s.core_fiber_order
                )
            })
        }
        Command::Survey { tuple, range } => {
            let range = parse_range(range)?;
            let sel = Selection::parse(tuple, fiber)?;
            let y = sel.invariants()?;
            let failure = std::sync::Mutex::new(None);
            let survey = d_survey_with(&y, range.clone(), |r| {
                ctx.d_value(r).map_err(|e| {
                    let msg = e.to_string();
                    failure.lock().expect("poisoned").get_or_insert(e);
                    Error::Internal(msg)
                })
            });
            if let Some(e) = failure.into_inner().expect("poisoned") {
                return Err(e);
            }
            let survey = survey?;
            if survey.cardinality() > 2 {
                return Err(Error::Internal(format!(
                    "surgeries on a fiber gave more than two d values: {:?}",
                    survey.values
                ))
                .into());
            }
            Ok(if cli.json {
                let rows: Vec<_> = survey.rows.iter().map(|&(m, d)| json!({ "m": m, "d": d })).collect();
                to_json(&json!({
                    "input": sel.input,
                    "fiber_order": int(&sel.fiber),
                    "range": [range.start(), range.end()],
                    "rows": rows,
                    "values": survey.values,
                    "cardinality": survey.cardinality(),
                }))
            } else {
                let mut out = format!("1/m surgeries on the fiber of order {} of Σ({})\n", sel.fiber, sel.multiplicities);
                out += "m\td\n";
                for (m, d) in &survey.rows {
                    out += &format!("{m}\t{d}\n");
                }
                let values: Vec<String> = survey.values.iter().map(i64::to_string).collect();
                out += &format!("values {{{}}}, cardinality {}", values.join(", "), survey.cardinality());
                out
            })
        }
        Command::Alexander { tuple } => {
            let sel = Selection::parse(tuple, fiber)?;
            let p = alexander_fiber(&sel.multiplicities)?;
            let verdict = fox_milnor_verdict(&p)?;
            Ok(if cli.json {
                to_json(&json!({
                    "input": sel.input,
                    "fiber_order": int(&sel.fiber),
                    "polynomial": p,
                    "display": p.to_string(),
                    "degree": p.degree().unwrap_or(0),
                    "verdict": verdict,
                }))
            } else {
                format!(
                    "Δ(t) = {p} (degree {})\n{}: {}",
                    p.degree().unwrap_or(0),
                    if verdict.is_obstructed() { "obstructed" } else { "no obstruction" },
                    verdict.reason()
                )
            })
        }
        Command::Report { tuple } => {
            let r = report::build(ctx, &Selection::parse(tuple, fiber)?)?;
            Ok(if cli.json {
                to_json(&r)
            } else {
                report::markdown(&r).trim_end().to_string()
            })
        }
        Command::Batch { file } => unreachable!("batch is handled by run_batch: {}", file.display()),
    }
}

/// Runs every line of the batch file; returns the output and the worst
/// exit code among the lines.
fn run_batch(file: &PathBuf, fiber: Option<&BigInt>, ctx: &Context) -> Result<(String, u8), CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(String, u8)> = lines
        .par_iter()
        .map(|&(no, line)| {
            let record = (|| {
                let mut parts = line.split_whitespace();
                let tuple = parts.next().unwrap_or_default();
                let line_fiber = parts
                    .next()
                    .map(|k| {
                        k.parse::<BigInt>()
                            .map_err(|_| CliError::Input(format!("bad fiber order {k:?}")))
                    })
                    .transpose()?;
                if let Some(extra) = parts.next() {
                    return Err(CliError::Input(format!("unexpected {extra:?}")));
                }
                let sel = Selection::parse(tuple, line_fiber.as_ref().or(fiber))?;
                report::build(ctx, &sel)
            })();
            match record {
                Ok(r) => (to_json(&r), 0),
                Err(e) => (
                    to_json(&json!({
                        "line": no,
                        "input": line,
                        "error": e.to_string(),
                        "kind": e.kind(),
                    })),
                    e.exit_code(),
                ),
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    let out = results.into_iter().map(|r| r.0).collect::<Vec<_>>().join("\n");
    Ok((out, code))
}

fn open_cache(cli: &Cli) -> Result<Option<DCache>, CliError> {
    let env = std::env::var_os(cache::CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let path = match (&cli.cache, env) {
        (Some(Some(p)), _) => p.clone(),
        (_, Some(p)) => p,
        (Some(None), None) => cache::default_path()
            .ok_or_else(|| CliError::Io("no cache location: set SEIFERT_D_CACHE or HOME".into()))?,
        (None, None) => return Ok(None),
    };
    DCache::open(&path, cli.verify).map(Some)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = open_cache(&cli).and_then(|cache| {
        let ctx = Context {
            cache,
            timing: cli.timing,
        };
        match &cli.command {
            Command::Batch { file } => run_batch(file, cli.fiber_order.as_ref(), &ctx),
            _ => run(&cli, &ctx).map(|s| (s, 0)),
        }
    });
    match outcome {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if !out.is_empty() {
                let _ = writeln!(stdout, "{out}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert_eq!(parse_coef("1/3").unwrap(), BigInt::from(3));
        assert_eq!(parse_coef("1/-1").unwrap(), BigInt::from(-1));
        assert_eq!(parse_coef("-1/2").unwrap(), BigInt::from(-2));
        assert_eq!(parse_coef("1/0").unwrap(), BigInt::from(0));
        for bad in ["2/3", "1", "1/x", "/3", ""] {
            assert!(parse_coef(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-4..4").unwrap(), -4..=4);
        assert_eq!(parse_range("0..=2").unwrap(), 0..=2);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("1-3").is_err());
    }

    #[test]
    fn selections() {
        let s = Selection::parse("5,2,3", None).unwrap();
        assert_eq!(s.multiplicities.to_string(), "2,3,5");
        let s = Selection::parse("5,2,3", Some(&BigInt::from(2))).unwrap();
        assert_eq!(s.multiplicities.to_string(), "3,5,2");
        let s = Selection::parse("2,3,5", Some(&BigInt::from(1))).unwrap();
        assert_eq!(s.multiplicities.to_string(), "2,3,5,1");
        assert!(Selection::parse("2,3,5", Some(&BigInt::from(7))).is_err());
        assert!(Selection::parse("2,4,5", None).is_err());
        assert!(Selection::parse("2, 3", None).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::NotCoprime(2.into(), 4.into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::Internal("x".into())).exit_code(), 3);
        assert_eq!(CliError::CacheMismatch("x".into()).exit_code(), 3);
    }
}
