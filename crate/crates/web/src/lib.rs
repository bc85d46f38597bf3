//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain numbers and strings and returns a JSON document.
//! The `*_json` functions hold the logic and run natively, which is how they
//! are tested; the exported wrappers only turn errors into JS exceptions.

use permutiple::euler::for_each_string;
use permutiple::{
    build_hs_multigraph, build_mother_graph, condition_report, count_circuits, enumerate_cycles,
    string_to_witness, union_images, value, verify_witness, ConditionReport, CycleMultiset, DigitPair,
    DigitVec, EnumerationOptions, Error, Params, PermutipleWitness, VerificationReport,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Cycle enumeration limit for the page. (4,10) has 986 cycles, (8,9)
/// already has 48916.
pub const CYCLE_CAP: usize = 20_000;

#[derive(Serialize)]
struct Multiedge {
    from: u32,
    to: u32,
    label: DigitPair,
    copy: usize,
}

#[derive(Serialize)]
struct Explore {
    n: u32,
    b: u32,
    edges: Vec<DigitPair>,
    cycles: Vec<Vec<DigitPair>>,
    states: u32,
    multiedges: Vec<Multiedge>,
}

#[derive(Serialize)]
struct Witness {
    digits: Vec<u32>,
    permuted: Vec<u32>,
    carries: Vec<u32>,
    value: String,
    multiplicand: String,
}

impl From<&PermutipleWitness> for Witness {
    fn from(w: &PermutipleWitness) -> Self {
        Witness {
            digits: w.digits.msd_first(),
            permuted: w.permuted.msd_first(),
            carries: w.carries.as_slice().to_vec(),
            value: value(&w.digits).to_string(),
            multiplicand: value(&w.permuted).to_string(),
        }
    }
}

#[derive(Serialize)]
struct Row {
    string: String,
    witness: Witness,
}

#[derive(Serialize)]
struct Strings {
    report: ConditionReport,
    multiedges: Vec<Multiedge>,
    label_distinct: String,
    edge_sequences_from_zero: String,
    strings: Vec<Row>,
    truncated: bool,
}

#[derive(Serialize)]
struct Verify {
    witness: Witness,
    report: VerificationReport,
}

fn multiedges(g: &permutiple::HSMultigraph) -> Vec<Multiedge> {
    g.numbered()
        .map(|(e, copy)| Multiedge { from: e.from, to: e.to, label: e.label, copy })
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("documents serialize")
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("{t:?} is not a number")))
        .collect()
}

/// Mother graph edges, its canonical cycles and the full multigraph.
pub fn explore_json(n: u32, b: u32) -> Result<String, String> {
    let p = Params::new(n, b).map_err(|e| e.to_string())?;
    let m = build_mother_graph(p);
    let inv = enumerate_cycles(&m, CYCLE_CAP).map_err(|e| e.to_string())?;
    let delta = build_hs_multigraph(p);
    Ok(to_json(&Explore {
        n,
        b,
        edges: m.edges().to_vec(),
        cycles: inv.cycles().iter().map(|c| c.edges().to_vec()).collect(),
        states: delta.state_count(),
        multiedges: multiedges(&delta),
    }))
}

/// Condition report, circuit counts and up to `limit` strings for a
/// multiset of canonical cycle indices such as `"3,3"`.
pub fn strings_json(n: u32, b: u32, cycles: &str, limit: usize) -> Result<String, String> {
    let p = Params::new(n, b).map_err(|e| e.to_string())?;
    let indices = parse_list(cycles)?;
    if indices.is_empty() {
        return Err("pick at least one cycle".into());
    }
    let inv = enumerate_cycles(&build_mother_graph(p), CYCLE_CAP).map_err(|e| e.to_string())?;
    let ms = CycleMultiset::from_indices(indices.iter().map(|&i| i as usize));
    let g = union_images(&ms, &inv).map_err(|e| e.to_string())?;
    let report = condition_report(&g);
    let counts = count_circuits(&g);

    let opts = EnumerationOptions { cap: limit, ..EnumerationOptions::default() };
    let mut found = Vec::new();
    let truncated = match for_each_string(&g, opts, |s| found.push(s)) {
        Ok(_) => false,
        Err(Error::StringCapExceeded { .. }) => true,
        Err(e) => return Err(e.to_string()),
    };
    let mut strings = Vec::with_capacity(found.len());
    for s in &found {
        let w = string_to_witness(s, p).map_err(|e| e.to_string())?;
        strings.push(Row { string: s.to_string(), witness: (&w).into() });
    }
    let zero = || "0".to_string();
    Ok(to_json(&Strings {
        multiedges: multiedges(&g),
        label_distinct: if report.verdict { counts.label_distinct.to_string() } else { zero() },
        edge_sequences_from_zero: if report.verdict { counts.edge_sequences_from_zero.to_string() } else { zero() },
        report,
        strings,
        truncated,
    }))
}

/// Checks `digits = n * permuted`, both msd-first lists.
pub fn verify_json(n: u32, b: u32, digits: &str, permuted: &str) -> Result<String, String> {
    let p = Params::new(n, b).map_err(|e| e.to_string())?;
    let d = DigitVec::from_msd(&parse_list(digits)?, b).map_err(|e| e.to_string())?;
    let q = DigitVec::from_msd(&parse_list(permuted)?, b).map_err(|e| e.to_string())?;
    let w = PermutipleWitness::new(p, d, q).map_err(|e| e.to_string())?.with_derived_sigma();
    Ok(to_json(&Verify { witness: (&w).into(), report: verify_witness(&w) }))
}

#[wasm_bindgen]
pub fn explore(n: u32, b: u32) -> Result<String, JsError> {
    explore_json(n, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn strings(n: u32, b: u32, cycles: &str, limit: usize) -> Result<String, JsError> {
    strings_json(n, b, cycles, limit).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(n: u32, b: u32, digits: &str, permuted: &str) -> Result<String, JsError> {
    verify_json(n, b, digits, permuted).map_err(|e| JsError::new(&e))
}
