//! JSON documents written by each subcommand. Every document opens with
//! `params`; big integers are decimal strings.

use permutiple::{
    ConditionReport, CycleInventory, DigitPair, HSMultigraph, Params, PermutipleWitness,
    VerificationReport,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsOut {
    pub n: u32,
    pub b: u32,
}

impl From<Params> for ParamsOut {
    fn from(p: Params) -> Self {
        ParamsOut { n: p.n(), b: p.b() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotherDoc {
    pub params: ParamsOut,
    pub edges: Vec<DigitPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleOut {
    pub index: usize,
    pub length: usize,
    pub edges: Vec<DigitPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesDoc {
    pub params: ParamsOut,
    pub cycles: Vec<CycleOut>,
}

impl CyclesDoc {
    pub fn new(inv: &CycleInventory) -> Self {
        let cycles = inv
            .cycles()
            .iter()
            .enumerate()
            .map(|(index, c)| CycleOut { index, length: c.len(), edges: c.edges().to_vec() })
            .collect();
        CyclesDoc { params: inv.params().into(), cycles }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiedgeOut {
    pub from: u32,
    pub to: u32,
    pub label: DigitPair,
    /// Which parallel copy of this label, from 0.
    pub copy: usize,
}

pub fn multiedges(g: &HSMultigraph) -> Vec<MultiedgeOut> {
    g.numbered()
        .map(|(e, copy)| MultiedgeOut { from: e.from, to: e.to, label: e.label, copy })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigraphDoc {
    pub params: ParamsOut,
    pub states: u32,
    pub multiedges: Vec<MultiedgeOut>,
}

impl MultigraphDoc {
    pub fn new(g: &HSMultigraph) -> Self {
        MultigraphDoc { params: g.params().into(), states: g.state_count(), multiedges: multiedges(g) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageDoc {
    pub params: ParamsOut,
    pub cycle: CycleOut,
    pub multiedges: Vec<MultiedgeOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub params: ParamsOut,
    pub cycles: Vec<usize>,
    pub multiedges: Vec<MultiedgeOut>,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    /// Msd-first.
    pub digits: Vec<u32>,
    /// Msd-first.
    pub permuted: Vec<u32>,
    /// Lsd-first, `c_0` through `c_len`.
    pub carries: Vec<u32>,
    pub value: String,
    pub multiplicand: String,
}

impl From<&PermutipleWitness> for WitnessOut {
    fn from(w: &PermutipleWitness) -> Self {
        WitnessOut {
            digits: w.digits.msd_first(),
            permuted: w.permuted.msd_first(),
            carries: w.carries.as_slice().to_vec(),
            value: permutiple::value(&w.digits).to_string(),
            multiplicand: permutiple::value(&w.permuted).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringOut {
    pub string: Vec<DigitPair>,
    pub witness: WitnessOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsOut {
    pub edge_sequences_from_zero: String,
    pub label_distinct: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringsDoc {
    pub params: ParamsOut,
    pub cycles: Vec<usize>,
    pub report: ConditionReport,
    pub counts: CountsOut,
    pub dedup: permutiple::DedupMode,
    pub leading_zero: permutiple::LeadingZeroPolicy,
    pub strings: Vec<StringOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub params: ParamsOut,
    pub witness: WitnessOut,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub params: ParamsOut,
    pub len: usize,
    pub results: Vec<WitnessOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalintiplesDoc {
    pub params: ParamsOut,
    pub len: usize,
    pub count: u64,
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivDoc {
    pub params: ParamsOut,
    pub len: usize,
    pub agrees: bool,
    pub graph_side_sound: bool,
    pub multisets_examined: usize,
    pub multisets_accepted: usize,
    pub graph_values: Vec<String>,
    pub brute_values: Vec<String>,
    pub only_graph: Vec<String>,
    pub only_brute: Vec<String>,
}
