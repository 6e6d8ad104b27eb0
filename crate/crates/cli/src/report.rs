//! The combined homology-cobordism and sliceness record for one fiber.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use seifert_core::alexander::{alexander_fiber, fox_milnor_verdict, IntegerPolynomial, Verdict};
use seifert_core::error::Error;
use seifert_core::plumbing::plumbing_graph;
use seifert_core::seifert::{OrientedSeifert, Sign};
use seifert_core::surgery::{infinite_order_witness, Witness};

use crate::{CliError, Context, Selection};

#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub input: String,
    #[serde(serialize_with = "seifert_core::serde_int::serialize")]
    pub fiber_order: BigInt,
    pub invariants: OrientedSeifert,
    #[serde(serialize_with = "seifert_core::serde_int::serialize")]
    pub e: BigInt,
    pub d: i64,
    pub plumbing_rank: usize,
    pub alexander: IntegerPolynomial,
    pub alexander_degree: usize,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn build(ctx: &Context, sel: &Selection) -> Result<ReportRecord, CliError> {
    let start = Instant::now();
    let inv = sel.invariants()?;
    let oriented = OrientedSeifert::new(Sign::Positive, inv.clone());
    let rank = plumbing_graph(&inv)?.rank();
    let d = ctx.d_value(&oriented)?;
    let alexander = alexander_fiber(&sel.multiplicities)?;
    let verdict = fox_milnor_verdict(&alexander)?;
    let (witness, witness_note) = match infinite_order_witness(&inv) {
        Ok(w) => (Some(w), None),
        Err(Error::UnknotInS3) => (None, Some(Error::UnknotInS3.to_string())),
        Err(e) => return Err(e.into()),
    };
    Ok(ReportRecord {
        input: sel.input.clone(),
        fiber_order: sel.fiber.clone(),
        e: inv.e.clone(),
        invariants: oriented,
        d,
        plumbing_rank: rank,
        alexander_degree: alexander.degree().unwrap_or(0),
        alexander,
        verdict,
        witness,
        witness_note,
        timing_ms: ctx.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    })
}

pub fn markdown(r: &ReportRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}, fiber of order {}", r.invariants, r.fiber_order);
    let _ = writeln!(out);
    let _ = writeln!(out, "| quantity | value |");
    let _ = writeln!(out, "|---|---|");
    let mut row = |k: &str, v: String| {
        let _ = writeln!(out, "| {k} | {v} |");
    };
    row("Seifert invariants", r.invariants.invariants().to_string());
    row("central invariant e", r.e.to_string());
    row("d-invariant", r.d.to_string());
    row("plumbing rank", r.plumbing_rank.to_string());
    row("Alexander polynomial", r.alexander.to_string());
    row("Alexander degree", r.alexander_degree.to_string());
    row(
        "slice verdict",
        if r.verdict.is_obstructed() { "obstructed" } else { "no obstruction" }.to_string(),
    );
    match &r.witness {
        Some(w) if w.m.is_zero() => row(
            "infinite-order witness",
            format!("{} itself (central invariant {})", w.result, w.central),
        ),
        Some(w) => row(
            "infinite-order witness",
            format!("1/{} surgery gives {} (central invariant {})", w.m, w.result, w.central),
        ),
        None => row("infinite-order witness", "none".to_string()),
    }
    if let Some(t) = r.timing_ms {
        row("time (ms)", format!("{t:.1}"));
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "Verdict: {}.", r.verdict.reason());
    match (&r.witness, &r.witness_note) {
        (Some(w), _) => {
            let _ = writeln!(out, "Witness: {}.", w.justification);
        }
        (None, Some(note)) => {
            let _ = writeln!(out, "Witness: {note}.");
        }
        (None, None) => {}
    }
    out
}
