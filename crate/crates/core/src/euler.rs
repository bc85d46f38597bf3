//! Eulerian circuits on unions of cycle multi-images.
//!
//! A multiset of mother-graph cycles can be ordered into a permutiple string
//! exactly when the union of their multi-images contains state 0, is
//! strongly connected, and has equal in- and outdegree at every state. The
//! strings themselves are the label sequences of Eulerian circuits that
//! start and end at state 0.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::value;
use crate::error::{Error, Result};
use crate::mothergraph::DigitPair;
use crate::statemachine::{string_to_witness, HSMultigraph, LabeledMultiedge, PermutipleString};

pub const DEFAULT_STRING_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub contains_zero: bool,
    /// Over the states of positive degree.
    pub strongly_connected: bool,
    pub balanced: bool,
    /// Indegree minus outdegree, per state.
    pub deltas: Vec<i64>,
    pub verdict: bool,
}

pub fn condition_report(g: &HSMultigraph) -> ConditionReport {
    let states = g.state_count() as usize;
    let mut deltas = vec![0i64; states];
    let mut degree = vec![0usize; states];
    for e in g.multiedges() {
        deltas[e.to as usize] += 1;
        deltas[e.from as usize] -= 1;
        degree[e.to as usize] += 1;
        degree[e.from as usize] += 1;
    }
    let contains_zero = degree[0] > 0;
    let balanced = deltas.iter().all(|&d| d == 0);
    let strongly_connected = is_strongly_connected(g, &degree);
    ConditionReport {
        contains_zero,
        strongly_connected,
        balanced,
        deltas,
        verdict: contains_zero && strongly_connected && balanced,
    }
}

/// Every state of positive degree reaches, and is reached from, one of them.
fn is_strongly_connected(g: &HSMultigraph, degree: &[usize]) -> bool {
    let Some(root) = degree.iter().position(|&d| d > 0) else {
        return true;
    };
    let reach = |forward: bool| {
        let mut seen = vec![false; degree.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for e in g.multiedges() {
                let (a, b) = if forward { (e.from, e.to) } else { (e.to, e.from) };
                if a as usize == v && !seen[b as usize] {
                    seen[b as usize] = true;
                    stack.push(b as usize);
                }
            }
        }
        seen
    };
    let (fwd, bwd) = (reach(true), reach(false));
    (0..degree.len()).all(|v| degree[v] == 0 || (fwd[v] && bwd[v]))
}

/// One Eulerian circuit from state 0 (Hierholzer), or `None` if the
/// multiedges cannot all be used in a single closed walk from state 0.
pub fn eulerian_circuit(g: &HSMultigraph) -> Option<Vec<LabeledMultiedge>> {
    if g.is_empty() {
        return None;
    }
    let states = g.state_count() as usize;
    let mut out: Vec<Vec<LabeledMultiedge>> = vec![Vec::new(); states];
    for e in g.multiedges().iter().rev() {
        out[e.from as usize].push(*e);
    }
    let mut stack: Vec<(u32, Option<LabeledMultiedge>)> = vec![(0, None)];
    let mut circuit = Vec::with_capacity(g.len());
    while let Some(&(v, via)) = stack.last() {
        match out[v as usize].pop() {
            Some(e) => stack.push((e.to, Some(e))),
            None => {
                stack.pop();
                circuit.extend(via);
            }
        }
    }
    circuit.reverse();
    let closed = circuit.len() == g.len()
        && circuit.first().map(|e| e.from) == Some(0)
        && circuit.last().map(|e| e.to) == Some(0)
        && circuit.windows(2).all(|w| w[0].to == w[1].from);
    closed.then_some(circuit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Distinct label sequences; parallel copies of a label are interchangeable.
    #[default]
    LabelDistinct,
    /// Additionally drop strings whose number was already produced.
    NumericallyDistinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeadingZeroPolicy {
    #[default]
    Allow,
    /// Drop strings whose most significant digit (the last `d1`) is zero.
    Forbid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub dedup: DedupMode,
    pub leading_zero: LeadingZeroPolicy,
    /// Maximum number of strings to emit; more is an error.
    pub cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            dedup: DedupMode::LabelDistinct,
            leading_zero: LeadingZeroPolicy::Allow,
            cap: DEFAULT_STRING_CAP,
        }
    }
}

/// All Eulerian circuits from state 0, as strings, in depth-first order over
/// outgoing label groups sorted by `(to, label)`.
pub fn enumerate_strings(g: &HSMultigraph, opts: EnumerationOptions) -> Result<Vec<PermutipleString>> {
    let mut out = Vec::new();
    for_each_string(g, opts, |s| out.push(s))?;
    Ok(out)
}

/// Streaming form of [`enumerate_strings`].
pub fn for_each_string(
    g: &HSMultigraph,
    opts: EnumerationOptions,
    mut emit: impl FnMut(PermutipleString),
) -> Result<usize> {
    let cap = opts.cap.max(1);
    if !condition_report(g).verdict {
        return Ok(0);
    }
    let mut seen_values = BTreeSet::new();
    let mut emitted = 0usize;
    let p = g.params();
    let mut failure = None;
    label_circuits(g, &mut |labels| {
        if opts.leading_zero == LeadingZeroPolicy::Forbid && labels.last().map(|e| e.d1) == Some(0) {
            return true;
        }
        let s = PermutipleString::new(labels.to_vec());
        if opts.dedup == DedupMode::NumericallyDistinct {
            let w = string_to_witness(&s, p).expect("Eulerian circuits from 0 are L-walks");
            if !seen_values.insert(value(&w.digits)) {
                return true;
            }
        }
        if emitted == cap {
            failure = Some(Error::StringCapExceeded { cap });
            return false;
        }
        emitted += 1;
        emit(s);
        true
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(emitted),
    }
}

/// Outgoing label groups of one state: `(to, label, remaining copies)`.
type Groups = Vec<Vec<(u32, DigitPair, usize)>>;

fn label_groups(g: &HSMultigraph) -> Groups {
    let mut groups: Groups = vec![Vec::new(); g.state_count() as usize];
    let mut counts: BTreeMap<(u32, u32, DigitPair), usize> = BTreeMap::new();
    for e in g.multiedges() {
        *counts.entry((e.from, e.to, e.label)).or_insert(0) += 1;
    }
    for ((from, to, label), k) in counts {
        groups[from as usize].push((to, label, k));
    }
    groups
}

/// Depth-first search over label groups; `visit` returns `false` to stop.
fn label_circuits(g: &HSMultigraph, visit: &mut dyn FnMut(&[DigitPair]) -> bool) {
    fn dfs(
        state: u32,
        groups: &mut Groups,
        left: usize,
        path: &mut Vec<DigitPair>,
        visit: &mut dyn FnMut(&[DigitPair]) -> bool,
    ) -> bool {
        if left == 0 {
            return state != 0 || visit(path);
        }
        for i in 0..groups[state as usize].len() {
            let (to, label, k) = groups[state as usize][i];
            if k == 0 {
                continue;
            }
            groups[state as usize][i].2 -= 1;
            path.push(label);
            let go_on = dfs(to, groups, left - 1, path, visit);
            path.pop();
            groups[state as usize][i].2 += 1;
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut groups = label_groups(g);
    dfs(0, &mut groups, g.len(), &mut Vec::new(), visit);
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitCounts {
    /// Circuits from state 0 as sequences of individual multiedges.
    pub edge_sequences_from_zero: BigUint,
    /// Distinct label sequences among them.
    pub label_distinct: BigUint,
}

impl CircuitCounts {
    fn zero() -> Self {
        CircuitCounts {
            edge_sequences_from_zero: BigUint::zero(),
            label_distinct: BigUint::zero(),
        }
    }
}

/// Counts Eulerian circuits with the arborescence product: the number of
/// cyclic circuits is `t(G) * prod_v (outdeg(v) - 1)!`, where `t(G)` counts
/// spanning arborescences oriented towards state 0. Rooting at state 0
/// multiplies by `outdeg(0)`; dividing by the factorials of the label
/// multiplicities merges interchangeable copies.
pub fn count_circuits(g: &HSMultigraph) -> CircuitCounts {
    if !condition_report(g).verdict {
        return CircuitCounts::zero();
    }
    let states = g.state_count() as usize;
    let active: Vec<usize> = (0..states)
        .filter(|&v| g.out_degree(v as u32) > 0)
        .collect();
    let position = |v: usize| active.iter().position(|&a| a == v).expect("active state");

    // Laplacian (outdegree minus adjacency) over active states, loops cancel
    let k = active.len();
    let mut laplacian = vec![vec![BigInt::zero(); k]; k];
    for e in g.multiedges() {
        if e.from != e.to {
            let (i, j) = (position(e.from as usize), position(e.to as usize));
            laplacian[i][i] += 1;
            laplacian[i][j] -= 1;
        }
    }
    let root = position(0);
    let minor: Vec<Vec<BigInt>> = (0..k)
        .filter(|&i| i != root)
        .map(|i| {
            (0..k)
                .filter(|&j| j != root)
                .map(|j| laplacian[i][j].clone())
                .collect()
        })
        .collect();
    let arborescences = determinant(minor)
        .to_biguint()
        .expect("arborescence count is non-negative");

    let mut cyclic = arborescences;
    for &v in &active {
        cyclic *= factorial(g.out_degree(v as u32) - 1);
    }
    let edge_sequences_from_zero = cyclic * g.out_degree(0);
    let copies: BigUint = g.label_counts().values().map(|&m| factorial(m)).product();
    let label_distinct = &edge_sequences_from_zero / copies;
    CircuitCounts {
        edge_sequences_from_zero,
        label_distinct,
    }
}

/// Counts the same quantities by exhaustive search, treating parallel
/// copies as distinct for the first count. Returns `None` when the search
/// would visit more than `limit` complete circuits.
pub fn count_circuits_by_search(g: &HSMultigraph, limit: u64) -> Option<CircuitCounts> {
    let mut used = vec![false; g.len()];
    let mut edge_sequences = 0u64;
    fn dfs(
        state: u32,
        g: &HSMultigraph,
        used: &mut [bool],
        left: usize,
        found: &mut u64,
        limit: u64,
    ) -> bool {
        if left == 0 {
            if state == 0 {
                *found += 1;
            }
            return *found <= limit;
        }
        for i in 0..g.len() {
            let e = g.multiedges()[i];
            if !used[i] && e.from == state {
                used[i] = true;
                let go_on = dfs(e.to, g, used, left - 1, found, limit);
                used[i] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    if g.is_empty() {
        return Some(CircuitCounts::zero());
    }
    if !dfs(0, g, &mut used, g.len(), &mut edge_sequences, limit) {
        return None;
    }
    let mut distinct = BTreeSet::new();
    let mut over = false;
    label_circuits(g, &mut |labels| {
        distinct.insert(labels.to_vec());
        over = distinct.len() as u64 > limit;
        !over
    });
    if over {
        return None;
    }
    Some(CircuitCounts {
        edge_sequences_from_zero: BigUint::from(edge_sequences),
        label_distinct: BigUint::from(distinct.len()),
    })
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

/// Fraction-free Gaussian elimination (Bareiss); exact over the integers.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        if a[col][col].is_zero() {
            match (col + 1..k).find(|&r| !a[r][col].is_zero()) {
                Some(r) => {
                    a.swap(col, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let v = (&a[i][j] * &a[col][col] - &a[i][col] * &a[col][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * &a[k - 1][k - 1]
}
