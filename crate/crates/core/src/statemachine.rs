//! The carry state machine and its labeled multigraph.
//!
//! States are the carries `0..n`. Each mother-graph edge `(d1, d2)` induces
//! exactly one transition `c1 -> c2` with `b*c2 - c1 = n*d2 - d1`, so the
//! machine is stored as a multigraph carrying one labeled multiedge per
//! input. Unions of cycle multi-images keep label multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digits::{CarrySeq, DigitVec, Params, PermutipleWitness};
use crate::error::{Error, Result};
use crate::mothergraph::{
    build_mother_graph, edge_allowed, residue, Cycle, CycleInventory, DigitPair,
};

/// The unique carry transition `(c1, c2)` induced by a mother-graph edge.
pub fn transition(pair: DigitPair, p: Params) -> Result<(u32, u32)> {
    if !edge_allowed(pair, p) {
        return Err(Error::RejectedInput(pair));
    }
    let c1 = residue(pair, p);
    let numerator = p.n() * pair.d2 + c1 - pair.d1;
    debug_assert_eq!(numerator % p.b(), 0);
    Ok((c1, numerator / p.b()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledMultiedge {
    pub from: u32,
    pub to: u32,
    pub label: DigitPair,
}

impl LabeledMultiedge {
    pub fn for_input(label: DigitPair, p: Params) -> Result<Self> {
        let (from, to) = transition(label, p)?;
        Ok(LabeledMultiedge { from, to, label })
    }
}

impl fmt::Display for LabeledMultiedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -{}-> {}", self.from, self.label, self.to)
    }
}

/// A multigraph over the carry states `0..n`.
///
/// Multiedges are kept sorted by `(from, to, label)`; parallel copies of one
/// label sit next to each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSMultigraph {
    params: Params,
    multiedges: Vec<LabeledMultiedge>,
}

impl HSMultigraph {
    pub fn empty(params: Params) -> Self {
        HSMultigraph {
            params,
            multiedges: Vec::new(),
        }
    }

    /// One multiedge per input label, repeated labels kept.
    pub fn from_labels(labels: impl IntoIterator<Item = DigitPair>, p: Params) -> Result<Self> {
        let mut multiedges = labels
            .into_iter()
            .map(|label| LabeledMultiedge::for_input(label, p))
            .collect::<Result<Vec<_>>>()?;
        multiedges.sort_unstable();
        Ok(HSMultigraph {
            params: p,
            multiedges,
        })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn state_count(&self) -> u32 {
        self.params.n()
    }

    pub fn multiedges(&self) -> &[LabeledMultiedge] {
        &self.multiedges
    }

    pub fn len(&self) -> usize {
        self.multiedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiedges.is_empty()
    }

    /// Multiedges paired with their copy index among equal labels, in the
    /// canonical `(from, to, label, copy)` order.
    pub fn numbered(&self) -> impl Iterator<Item = (LabeledMultiedge, usize)> + '_ {
        self.multiedges.iter().enumerate().map(|(i, e)| {
            let copy = self.multiedges[..i]
                .iter()
                .rev()
                .take_while(|prev| *prev == e)
                .count();
            (*e, copy)
        })
    }

    /// Multiplicity of each label.
    pub fn label_counts(&self) -> BTreeMap<DigitPair, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.multiedges {
            *counts.entry(e.label).or_insert(0) += 1;
        }
        counts
    }

    pub fn out_degree(&self, state: u32) -> usize {
        self.multiedges.iter().filter(|e| e.from == state).count()
    }

    pub fn in_degree(&self, state: u32) -> usize {
        self.multiedges.iter().filter(|e| e.to == state).count()
    }

    /// Multiset union.
    pub fn union(&self, other: &HSMultigraph) -> HSMultigraph {
        assert_eq!(self.params, other.params, "union across different parameters");
        let mut multiedges = self.multiedges.clone();
        multiedges.extend_from_slice(&other.multiedges);
        multiedges.sort_unstable();
        HSMultigraph {
            params: self.params,
            multiedges,
        }
    }

    /// Collapses parallel multiedges into one edge per `(c1, c2)` carrying
    /// the collection of its labels, the state-diagram view of the machine.
    pub fn grouped(&self) -> BTreeMap<(u32, u32), Vec<DigitPair>> {
        let mut groups: BTreeMap<(u32, u32), Vec<DigitPair>> = BTreeMap::new();
        for e in &self.multiedges {
            groups.entry((e.from, e.to)).or_default().push(e.label);
        }
        groups
    }
}

/// The full multigraph: one multiedge per mother-graph edge.
pub fn build_hs_multigraph(p: Params) -> HSMultigraph {
    HSMultigraph::from_labels(build_mother_graph(p).edges().iter().copied(), p)
        .expect("mother-graph edges are admissible inputs")
}

/// The multiedges induced by the edges of one cycle.
pub fn cycle_multi_image(c: &Cycle, p: Params) -> Result<HSMultigraph> {
    HSMultigraph::from_labels(c.edges().iter().copied(), p)
}

/// Cycle multiplicities keyed by canonical cycle index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleMultiset {
    counts: BTreeMap<usize, usize>,
}

impl CycleMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, times: usize) {
        if times > 0 {
            *self.counts.entry(index).or_insert(0) += times;
        }
    }

    /// Indices may repeat: `[3, 3]` is two copies of cycle 3.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut ms = Self::new();
        for i in indices {
            ms.add(i, 1);
        }
        ms
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// Indices with repetition, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.counts
            .iter()
            .flat_map(|(&i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of multiplicity times cycle length.
    pub fn total_edges(&self, inventory: &CycleInventory) -> Result<usize> {
        self.counts
            .iter()
            .map(|(&i, &k)| Ok(inventory.get(i)?.len() * k))
            .sum()
    }

    /// Every multiset of inventory cycles whose edge total is exactly `total`.
    pub fn all_with_total(inventory: &CycleInventory, total: usize) -> Vec<CycleMultiset> {
        fn extend(
            lengths: &[usize],
            from: usize,
            left: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<CycleMultiset>,
        ) {
            if left == 0 {
                out.push(CycleMultiset::from_indices(current.iter().copied()));
                return;
            }
            for i in from..lengths.len() {
                if lengths[i] <= left {
                    current.push(i);
                    extend(lengths, i, left - lengths[i], current, out);
                    current.pop();
                }
            }
        }
        let lengths: Vec<usize> = inventory.cycles().iter().map(Cycle::len).collect();
        let mut out = Vec::new();
        if total > 0 {
            extend(&lengths, 0, total, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for CycleMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| format!("C{i}")).collect();
        write!(f, "{{{}}}", parts.join(" + "))
    }
}

/// The multigraph union of the multi-images of the cycles in `ms`.
pub fn union_images(ms: &CycleMultiset, inventory: &CycleInventory) -> Result<HSMultigraph> {
    let mut cycles = Vec::new();
    for (&i, &k) in ms.counts() {
        let c = inventory.get(i)?;
        cycles.extend(std::iter::repeat_n(c, k));
    }
    union_of_cycles(cycles, inventory.params())
}

/// Same as [`union_images`] for cycles given by content.
pub fn union_of_cycles<'a>(
    cycles: impl IntoIterator<Item = &'a Cycle>,
    p: Params,
) -> Result<HSMultigraph> {
    HSMultigraph::from_labels(
        cycles.into_iter().flat_map(|c| c.edges().iter().copied()),
        p,
    )
}

/// Inputs in least-significant-first order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PermutipleString {
    pairs: Vec<DigitPair>,
}

impl PermutipleString {
    pub fn new(pairs: Vec<DigitPair>) -> Self {
        PermutipleString { pairs }
    }

    pub fn pairs(&self) -> &[DigitPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The state walk induced by chaining transitions, or the reason it breaks.
    pub fn walk(&self, p: Params) -> Result<Vec<u32>> {
        if self.pairs.is_empty() {
            return Err(Error::NotAnLWalk("empty string".into()));
        }
        let mut states = vec![0];
        for (j, &pair) in self.pairs.iter().enumerate() {
            let (c1, c2) = transition(pair, p)?;
            let at = *states.last().expect("non-empty");
            if c1 != at {
                return Err(Error::NotAnLWalk(format!(
                    "input {pair} at position {j} leaves state {c1}, but the walk is in state {at}"
                )));
            }
            states.push(c2);
        }
        match states.last() {
            Some(0) => Ok(states),
            Some(c) => Err(Error::NotAnLWalk(format!("walk ends in state {c}"))),
            None => unreachable!(),
        }
    }
}

impl fmt::Display for PermutipleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pair in &self.pairs {
            write!(f, "{pair}")?;
        }
        Ok(())
    }
}

impl FromIterator<DigitPair> for PermutipleString {
    fn from_iter<I: IntoIterator<Item = DigitPair>>(iter: I) -> Self {
        PermutipleString::new(iter.into_iter().collect())
    }
}

/// Reads an L-walk back as a permutiple: first components are the number,
/// second components its multiplicand, position 0 least significant.
pub fn string_to_witness(s: &PermutipleString, p: Params) -> Result<PermutipleWitness> {
    let states = s.walk(p)?;
    let digits = DigitVec::from_lsd(s.pairs.iter().map(|e| e.d1).collect(), p.b())?;
    let permuted = DigitVec::from_lsd(s.pairs.iter().map(|e| e.d2).collect(), p.b())?;
    let witness = PermutipleWitness {
        params: p,
        digits,
        permuted,
        carries: CarrySeq(states),
        sigma: None,
    };
    Ok(witness.with_derived_sigma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::{value, verify_witness};
    use crate::mothergraph::{enumerate_cycles, DEFAULT_CYCLE_CAP};
    use num_bigint::BigUint;

    fn params(n: u32, b: u32) -> Params {
        Params::new(n, b).unwrap()
    }

    fn pair(d1: u32, d2: u32) -> DigitPair {
        DigitPair::new(d1, d2)
    }

    fn string(list: &[(u32, u32)]) -> PermutipleString {
        list.iter().map(|&p| DigitPair::from(p)).collect()
    }

    fn cycle(list: &[(u32, u32)]) -> Cycle {
        Cycle::from_edges(list.iter().map(|&p| p.into()).collect()).unwrap()
    }

    #[test]
    fn transition_examples() {
        assert_eq!(transition(pair(9, 9), params(4, 10)), Ok((3, 3)));
        assert_eq!(transition(pair(2, 8), params(4, 10)), Ok((0, 3)));
        for p in Params::all_up_to(9) {
            assert_eq!(transition(pair(0, 0), p), Ok((0, 0)));
        }
        assert_eq!(
            transition(pair(2, 0), params(2, 4)),
            Err(Error::RejectedInput(pair(2, 0)))
        );
    }

    #[test]
    fn transitions_exist_unique_and_bounded() {
        for p in Params::all_up_to(12) {
            let m = build_mother_graph(p);
            let delta = build_hs_multigraph(p);
            assert_eq!(delta.len(), m.edges().len());
            assert!(delta.label_counts().values().all(|&k| k == 1));
            for e in delta.multiedges() {
                assert!(e.from < p.n() && e.to < p.n());
                let lhs = i64::from(p.b()) * i64::from(e.to) - i64::from(e.from);
                let rhs = i64::from(p.n()) * i64::from(e.label.d2) - i64::from(e.label.d1);
                assert_eq!(lhs, rhs);
                // no other carry pair solves the equation for this label
                for c1 in 0..p.n() {
                    for c2 in 0..p.n() {
                        let other = i64::from(p.b()) * i64::from(c2) - i64::from(c1);
                        assert_eq!(other == rhs, (c1, c2) == (e.from, e.to));
                    }
                }
            }
        }
    }

    #[test]
    fn delta_2_4() {
        let g = build_hs_multigraph(params(2, 4)).grouped();
        let expected: BTreeMap<(u32, u32), Vec<DigitPair>> = [
            ((0, 0), vec![pair(0, 0), pair(2, 1)]),
            ((0, 1), vec![pair(0, 2), pair(2, 3)]),
            ((1, 0), vec![pair(1, 0), pair(3, 1)]),
            ((1, 1), vec![pair(1, 2), pair(3, 3)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn delta_4_10_size() {
        let g = build_hs_multigraph(params(4, 10));
        assert_eq!(g.len(), 40);
        assert!(g.multiedges().iter().all(|e| e.from < 4 && e.to < 4));
    }

    #[test]
    fn multi_images() {
        let p = params(2, 4);
        let img = cycle_multi_image(&cycle(&[(0, 2), (2, 1), (1, 0)]), p).unwrap();
        assert_eq!(
            img.multiedges(),
            &[
                LabeledMultiedge { from: 0, to: 0, label: pair(2, 1) },
                LabeledMultiedge { from: 0, to: 1, label: pair(0, 2) },
                LabeledMultiedge { from: 1, to: 0, label: pair(1, 0) },
            ]
        );
        let img = cycle_multi_image(&cycle(&[(0, 0)]), p).unwrap();
        assert_eq!(img.multiedges(), &[LabeledMultiedge { from: 0, to: 0, label: pair(0, 0) }]);
        let img = cycle_multi_image(&cycle(&[(9, 9)]), params(4, 10)).unwrap();
        assert_eq!(img.multiedges(), &[LabeledMultiedge { from: 3, to: 3, label: pair(9, 9) }]);
        assert_eq!(
            cycle_multi_image(&cycle(&[(2, 0), (0, 2)]), p),
            Err(Error::RejectedInput(pair(2, 0)))
        );
    }

    #[test]
    fn unions() {
        let p = params(2, 4);
        let inv = enumerate_cycles(&build_mother_graph(p), DEFAULT_CYCLE_CAP).unwrap();
        let g = union_images(&CycleMultiset::from_indices([2, 3]), &inv).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.label_counts()[&pair(2, 1)], 2);
        let loops: Vec<_> = g.numbered().filter(|(e, _)| e.label == pair(2, 1)).collect();
        assert_eq!(loops.iter().map(|(_, c)| *c).collect::<Vec<_>>(), vec![0, 1]);
        assert!(loops.iter().all(|(e, _)| e.from == 0 && e.to == 0));

        let g = union_images(&CycleMultiset::from_indices([3, 3]), &inv).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.label_counts().values().all(|&k| k == 2));

        assert!(union_images(&CycleMultiset::new(), &inv).unwrap().is_empty());
        assert_eq!(
            union_images(&CycleMultiset::from_indices([9]), &inv),
            Err(Error::UnknownCycleIndex { index: 9, len: 6 })
        );
    }

    #[test]
    fn union_is_commutative_and_associative() {
        let p = params(3, 5);
        let inv = enumerate_cycles(&build_mother_graph(p), DEFAULT_CYCLE_CAP).unwrap();
        let img = |i: usize| cycle_multi_image(inv.get(i).unwrap(), p).unwrap();
        for (a, b, c) in [(0, 3, 7), (1, 1, 5), (2, 8, 8)] {
            let (a, b, c) = (img(a), img(b), img(c));
            assert_eq!(a.union(&b), b.union(&a));
            assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
        }
    }

    #[test]
    fn multi_image_labels_equal_cycle_edges() {
        for p in Params::all_up_to(6) {
            let inv = enumerate_cycles(&build_mother_graph(p), DEFAULT_CYCLE_CAP).unwrap();
            for c in inv.cycles() {
                let img = cycle_multi_image(c, p).unwrap();
                let mut labels: Vec<DigitPair> = img.multiedges().iter().map(|e| e.label).collect();
                let mut edges = c.edges().to_vec();
                labels.sort();
                edges.sort();
                assert_eq!(labels, edges);
            }
        }
    }

    #[test]
    fn multisets_by_total() {
        let inv = enumerate_cycles(&build_mother_graph(params(2, 4)), DEFAULT_CYCLE_CAP).unwrap();
        // lengths 1,1,2,3,3,4
        let twos = CycleMultiset::all_with_total(&inv, 2);
        assert_eq!(twos.len(), 4); // {0,0} {0,1} {1,1} {2}
        for ms in CycleMultiset::all_with_total(&inv, 5) {
            assert_eq!(ms.total_edges(&inv).unwrap(), 5);
        }
        assert!(CycleMultiset::all_with_total(&inv, 0).is_empty());
    }

    #[test]
    fn string_to_witness_examples() {
        let p = params(4, 10);
        let s = string(&[(8, 2), (8, 2), (2, 8), (9, 9), (1, 7), (1, 7), (7, 1), (2, 8), (7, 1)]);
        let w = string_to_witness(&s, p).unwrap();
        assert_eq!(w.digits.msd_first(), vec![7, 2, 7, 1, 1, 9, 2, 8, 8]);
        assert_eq!(w.permuted.msd_first(), vec![1, 8, 1, 7, 7, 9, 8, 2, 2]);
        assert_eq!(value(&w.digits), BigUint::from(727_119_288u32));
        assert!(verify_witness(&w).is_permutiple);

        let p = params(2, 4);
        let w = string_to_witness(&string(&[(2, 1), (0, 2), (1, 2), (1, 0), (2, 1)]), p).unwrap();
        assert_eq!(w.digits.msd_first(), vec![2, 1, 1, 0, 2]);
        assert_eq!(w.permuted.msd_first(), vec![1, 0, 2, 2, 1]);
        assert!(verify_witness(&w).is_permutiple);

        let w = string_to_witness(&string(&[(0, 0)]), p).unwrap();
        assert_eq!(w.digits.msd_first(), vec![0]);
        assert_eq!(w.carries.0, vec![0, 0]);
        assert!(verify_witness(&w).is_permutiple);
    }

    #[test]
    fn string_to_witness_rejects_broken_walks() {
        let p = params(2, 4);
        // 0 -> 1 and never back
        assert!(matches!(
            string_to_witness(&string(&[(0, 2)]), p),
            Err(Error::NotAnLWalk(_))
        ));
        // starts at state 1
        assert!(matches!(
            string_to_witness(&string(&[(1, 0), (0, 2)]), p),
            Err(Error::NotAnLWalk(_))
        ));
        assert!(matches!(
            string_to_witness(&PermutipleString::new(vec![]), p),
            Err(Error::NotAnLWalk(_))
        ));
        assert_eq!(
            string_to_witness(&string(&[(2, 0)]), p),
            Err(Error::RejectedInput(pair(2, 0)))
        );
    }

    #[test]
    fn chained_transitions_match_carry_sequence() {
        use crate::digits::carry_sequence;
        let p = params(3, 4);
        let s = string(&[(1, 3), (0, 2), (1, 1), (1, 0), (3, 1), (2, 2), (2, 3), (0, 2), (2, 0), (3, 1)]);
        let w = string_to_witness(&s, p).unwrap();
        assert_eq!(carry_sequence(&w.digits, &w.permuted, p).unwrap(), w.carries);
    }
}
