//! The `(n, b)`-mother graph: every digit pairing a permutiple may use.
//!
//! Vertices are the digits `0..b`; `(d1, d2)` is an edge when
//! `(d1 + (b - n) * d2) mod b <= n - 1`. The graph of any permutiple is a
//! union of elementary cycles of this graph, so the cycle inventory is the
//! raw material for generating new permutiples.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digits::{Params, PermutipleWitness};
use crate::error::{Error, Result};

/// Default upper bound on the number of cycles [`enumerate_cycles`] may return.
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// An ordered digit pair `(d1, d2)`: position `j` of a permutiple pairs its
/// digit with the digit of the multiplicand at the same position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct DigitPair {
    pub d1: u32,
    pub d2: u32,
}

impl DigitPair {
    pub const fn new(d1: u32, d2: u32) -> Self {
        DigitPair { d1, d2 }
    }
}

impl From<(u32, u32)> for DigitPair {
    fn from((d1, d2): (u32, u32)) -> Self {
        DigitPair { d1, d2 }
    }
}

impl From<[u32; 2]> for DigitPair {
    fn from([d1, d2]: [u32; 2]) -> Self {
        DigitPair { d1, d2 }
    }
}

impl From<DigitPair> for [u32; 2] {
    fn from(p: DigitPair) -> Self {
        [p.d1, p.d2]
    }
}

impl fmt::Display for DigitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Least non-negative residue of `d1 + (b - n) * d2` modulo `b`.
///
/// For a mother-graph edge this is also the carry entering the position.
pub(crate) fn residue(pair: DigitPair, p: Params) -> u32 {
    let b = u64::from(p.b());
    ((u64::from(pair.d1) + (b - u64::from(p.n())) * u64::from(pair.d2)) % b) as u32
}

pub fn edge_allowed(pair: DigitPair, p: Params) -> bool {
    pair.d1 < p.b() && pair.d2 < p.b() && residue(pair, p) < p.n()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotherGraph {
    params: Params,
    edges: Vec<DigitPair>,
}

impl MotherGraph {
    pub fn params(&self) -> Params {
        self.params
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[DigitPair] {
        &self.edges
    }

    pub fn contains(&self, pair: DigitPair) -> bool {
        self.edges.binary_search(&pair).is_ok()
    }

    pub fn successors(&self, d: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().filter(move |e| e.d1 == d).map(|e| e.d2)
    }
}

pub fn build_mother_graph(p: Params) -> MotherGraph {
    let edges = (0..p.b())
        .flat_map(|d1| (0..p.b()).map(move |d2| DigitPair::new(d1, d2)))
        .filter(|&pair| edge_allowed(pair, p))
        .collect();
    MotherGraph { params: p, edges }
}

/// An elementary directed cycle, rotated to start at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<DigitPair>", into = "Vec<DigitPair>")]
pub struct Cycle {
    edges: Vec<DigitPair>,
}

impl Cycle {
    /// Validates that `edges` close up into an elementary cycle given in
    /// traversal order (any rotation) and canonicalizes the rotation.
    pub fn from_edges(edges: Vec<DigitPair>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::MalformedCycle("no edges".into()));
        }
        let len = edges.len();
        for i in 0..len {
            let next = edges[(i + 1) % len];
            if edges[i].d2 != next.d1 {
                return Err(Error::MalformedCycle(format!(
                    "{} is not followed by an edge leaving {}",
                    edges[i], edges[i].d2
                )));
            }
        }
        let mut seen = BTreeSet::new();
        if let Some(e) = edges.iter().find(|e| !seen.insert(e.d1)) {
            return Err(Error::MalformedCycle(format!("vertex {} repeats", e.d1)));
        }
        Ok(Self::canonical(edges))
    }

    /// From a closed vertex walk `v0 v1 ... vk` (without repeating `v0`).
    pub fn from_vertices(vertices: &[u32]) -> Result<Self> {
        let len = vertices.len();
        Self::from_edges(
            (0..len)
                .map(|i| DigitPair::new(vertices[i], vertices[(i + 1) % len]))
                .collect(),
        )
    }

    fn canonical(mut edges: Vec<DigitPair>) -> Self {
        let start = edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| e.d1)
            .map(|(i, _)| i)
            .unwrap_or(0);
        edges.rotate_left(start);
        Cycle { edges }
    }

    pub fn edges(&self) -> &[DigitPair] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().map(|e| e.d1)
    }

    fn order_key(&self) -> (usize, &[DigitPair]) {
        (self.edges.len(), &self.edges)
    }
}

impl TryFrom<Vec<DigitPair>> for Cycle {
    type Error = Error;

    fn try_from(edges: Vec<DigitPair>) -> Result<Self> {
        Cycle::from_edges(edges)
    }
}

impl From<Cycle> for Vec<DigitPair> {
    fn from(c: Cycle) -> Self {
        c.edges
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter cycles first, then lexicographic on the canonical edge sequence.
impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// All elementary cycles of a mother graph in canonical order. A cycle's
/// index is its position in this list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInventory {
    params: Params,
    cycles: Vec<Cycle>,
}

impl CycleInventory {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn get(&self, index: usize) -> Result<&Cycle> {
        self.cycles.get(index).ok_or(Error::UnknownCycleIndex {
            index,
            len: self.cycles.len(),
        })
    }

    pub fn index_of(&self, cycle: &Cycle) -> Option<usize> {
        self.cycles.binary_search(cycle).ok()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// Every elementary cycle of `m`, self-loops included, in canonical order.
///
/// Errors instead of truncating when more than `cap` cycles exist.
pub fn enumerate_cycles(m: &MotherGraph, cap: usize) -> Result<CycleInventory> {
    Ok(CycleInventory {
        params: m.params,
        cycles: elementary_cycles(m.params.b(), &m.edges, cap)?,
    })
}

/// Johnson's algorithm over the digit vertices `0..vertex_count`, restricted
/// at each start vertex `s` to vertices `>= s`, so every cycle is found once,
/// from its smallest vertex.
pub(crate) fn elementary_cycles(
    vertex_count: u32,
    edges: &[DigitPair],
    cap: usize,
) -> Result<Vec<Cycle>> {
    let n = vertex_count as usize;
    let mut adjacency = vec![Vec::new(); n];
    for e in edges {
        adjacency[e.d1 as usize].push(e.d2 as usize);
    }
    for targets in &mut adjacency {
        targets.sort_unstable();
        targets.dedup();
    }

    let mut search = Johnson {
        adjacency,
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        stack: Vec::new(),
        found: Vec::new(),
        cap,
        start: 0,
    };
    for start in 0..n {
        search.start = start;
        search.blocked.iter_mut().for_each(|b| *b = false);
        search.blocked_by.iter_mut().for_each(Vec::clear);
        search.circuit(start)?;
    }

    let mut cycles = search.found;
    cycles.sort();
    Ok(cycles)
}

struct Johnson {
    adjacency: Vec<Vec<usize>>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    found: Vec<Cycle>,
    cap: usize,
    start: usize,
}

impl Johnson {
    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;

        for i in 0..self.adjacency[v].len() {
            let w = self.adjacency[v][i];
            if w < self.start {
                continue;
            }
            if w == self.start {
                if self.found.len() == self.cap {
                    return Err(Error::CycleCapExceeded { cap: self.cap });
                }
                let vertices: Vec<u32> = self.stack.iter().map(|&x| x as u32).collect();
                self.found.push(Cycle::from_vertices(&vertices).expect("stack is a simple path"));
                closed = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                closed = true;
            }
        }

        if closed {
            self.unblock(v);
        } else {
            for i in 0..self.adjacency[v].len() {
                let w = self.adjacency[v][i];
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        Ok(closed)
    }

    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.blocked_by[u]);
        }
    }
}

/// The graph of a permutiple, or of a whole permutiple class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassGraph {
    edges: BTreeSet<DigitPair>,
}

impl ClassGraph {
    /// Keeps only the pairs that are mother-graph edges; returns the
    /// offending pair otherwise.
    pub fn new(edges: impl IntoIterator<Item = DigitPair>, p: Params) -> Result<Self> {
        let edges: BTreeSet<DigitPair> = edges.into_iter().collect();
        if let Some(&bad) = edges.iter().find(|&&e| !edge_allowed(e, p)) {
            return Err(Error::RejectedInput(bad));
        }
        Ok(ClassGraph { edges })
    }

    pub fn edges(&self) -> impl Iterator<Item = DigitPair> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, pair: DigitPair) -> bool {
        self.edges.contains(&pair)
    }

    pub fn is_subgraph_of(&self, other: &ClassGraph) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Elementary cycles of this graph, canonically ordered.
    pub fn cycles(&self, p: Params, cap: usize) -> Result<Vec<Cycle>> {
        let edges: Vec<DigitPair> = self.edges.iter().copied().collect();
        elementary_cycles(p.b(), &edges, cap)
    }
}

/// `{(digits[j], permuted[j])}` for a witness.
///
/// Pairs failing the edge inequality are kept as-is; they only occur for
/// witnesses that do not verify.
pub fn graph_of_witness(w: &PermutipleWitness) -> ClassGraph {
    ClassGraph {
        edges: witness_pairs(w).collect(),
    }
}

pub(crate) fn witness_pairs(w: &PermutipleWitness) -> impl Iterator<Item = DigitPair> + '_ {
    w.digits
        .lsd_first()
        .iter()
        .zip(w.permuted.lsd_first())
        .map(|(&d1, &d2)| DigitPair::new(d1, d2))
}

/// Whether `w` belongs to the class whose graph is `class`.
pub fn is_in_class(w: &PermutipleWitness, class: &ClassGraph) -> bool {
    graph_of_witness(w).is_subgraph_of(class)
}

/// Splits an edge multiset into elementary cycles, or `None` when the
/// multiset is not a disjoint union of cycles (some vertex is unbalanced).
pub fn cycle_decomposition(edges: &[DigitPair]) -> Option<Vec<Cycle>> {
    let mut remaining: Vec<DigitPair> = edges.to_vec();
    remaining.sort_unstable();
    let mut cycles = Vec::new();
    while let Some(&first) = remaining.first() {
        // walk until a vertex repeats, then cut the closed part off
        let mut path: Vec<DigitPair> = Vec::new();
        let mut at = first.d1;
        loop {
            if let Some(pos) = path.iter().position(|e| e.d1 == at) {
                let cycle: Vec<DigitPair> = path.drain(pos..).collect();
                remaining.append(&mut path);
                remaining.sort_unstable();
                cycles.push(Cycle::from_edges(cycle).ok()?);
                break;
            }
            let i = remaining.iter().position(|e| e.d1 == at)?;
            let edge = remaining.remove(i);
            path.push(edge);
            at = edge.d2;
        }
    }
    cycles.sort();
    Some(cycles)
}
