//! Brute-force ground truth, independent of the graph pipeline.
//!
//! Searches scan numbers of a fixed length directly against the definition.
//! An `len`-digit number has a nonzero leading digit; its multiplicand is
//! padded with leading zeros to `len` digits.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::digits::{value, DigitVec, Params, PermutipleWitness};
use crate::error::{Error, Result};
use crate::euler::{
    condition_report, for_each_string, DedupMode, EnumerationOptions, LeadingZeroPolicy,
};
use crate::mothergraph::{build_mother_graph, enumerate_cycles};
use crate::statemachine::{string_to_witness, union_images, CycleMultiset};

/// Default limit on the number of candidates a scan may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 10_000_000;

/// Limits for [`equivalence_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub scan: u64,
    pub cycles: usize,
    pub strings: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            scan: DEFAULT_SCAN_BUDGET,
            cycles: crate::mothergraph::DEFAULT_CYCLE_CAP,
            strings: crate::euler::DEFAULT_STRING_CAP,
        }
    }
}

/// `[b^(len-1), b^len)` as machine integers, if the scan fits the budget.
fn length_range(b: u32, len: usize, budget: u64) -> Result<(u64, u64)> {
    if len == 0 {
        return Err(Error::InvalidLength(len));
    }
    let over = || Error::BudgetExceeded {
        needed: BigUint::from(b).pow(len as u32).to_string(),
        budget,
    };
    let mut hi = 1u64;
    for _ in 0..len {
        hi = hi.checked_mul(u64::from(b)).ok_or_else(over)?;
    }
    if hi > budget {
        return Err(over());
    }
    Ok((hi / u64::from(b), hi))
}

fn fill_digits(mut m: u64, b: u64, out: &mut [u32]) {
    for d in out.iter_mut() {
        *d = (m % b) as u32;
        m /= b;
    }
}

/// Every `len`-digit `m` with `n | m` whose multiplicand `m / n` is a
/// rearrangement of the digits of `m`, in increasing order.
pub fn brute_force_search(p: Params, len: usize, budget: u64) -> Result<Vec<PermutipleWitness>> {
    let (lo, hi) = length_range(p.b(), len, budget)?;
    let (n, b) = (u64::from(p.n()), u64::from(p.b()));
    let mut digits = vec![0u32; len];
    let mut permuted = vec![0u32; len];
    let mut counts = vec![0i32; p.b() as usize];
    let mut found = Vec::new();
    for q in lo.div_ceil(n)..hi.div_ceil(n) {
        let m = q * n;
        fill_digits(m, b, &mut digits);
        fill_digits(q, b, &mut permuted);
        counts.iter_mut().for_each(|c| *c = 0);
        for (&d, &e) in digits.iter().zip(&permuted) {
            counts[d as usize] += 1;
            counts[e as usize] -= 1;
        }
        if counts.iter().all(|&c| c == 0) {
            let w = PermutipleWitness::new(
                p,
                DigitVec::from_lsd(digits.clone(), p.b())?,
                DigitVec::from_lsd(permuted.clone(), p.b())?,
            )?;
            found.push(w.with_derived_sigma());
        }
    }
    Ok(found)
}

/// Number of `len`-digit `m` with `m = n * reverse(m)`, reversal taken on
/// the `len`-digit padding. Scans the multiplicand.
pub fn palintiple_count(p: Params, len: usize, budget: u64) -> Result<u64> {
    Ok(palintiples(p, len, budget)?.len() as u64)
}

/// The palintiples themselves, in increasing order.
pub fn palintiples(p: Params, len: usize, budget: u64) -> Result<Vec<u64>> {
    if len < 2 {
        return Err(Error::InvalidLength(len));
    }
    let (lo, hi) = length_range(p.b(), len, budget)?;
    let (n, b) = (u64::from(p.n()), u64::from(p.b()));
    let mut digits = vec![0u32; len];
    let mut permuted = vec![0u32; len];
    let mut found = Vec::new();
    for q in lo.div_ceil(n)..hi.div_ceil(n) {
        let m = q * n;
        fill_digits(m, b, &mut digits);
        fill_digits(q, b, &mut permuted);
        if digits.iter().eq(permuted.iter().rev()) {
            found.push(m);
        }
    }
    Ok(found)
}

/// Comparison of the graph pipeline against the brute-force scan at one
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub params: Params,
    pub len: usize,
    /// Values produced by Eulerian circuits on accepted cycle-multiset unions.
    pub graph_values: BTreeSet<BigUint>,
    /// Values found by exhaustive search.
    pub brute_values: BTreeSet<BigUint>,
    pub only_graph: BTreeSet<BigUint>,
    pub only_brute: BTreeSet<BigUint>,
    pub multisets_examined: usize,
    pub multisets_accepted: usize,
    /// Every graph-side string converted to a verifying witness.
    pub graph_side_sound: bool,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.only_graph.is_empty() && self.only_brute.is_empty()
    }
}

/// Runs both routes at length `len`: every multiset of canonical cycles with
/// `len` edges in total, filtered by the condition report and enumerated
/// with leading zeros forbidden, against [`brute_force_search`].
pub fn equivalence_check(p: Params, len: usize, budgets: Budgets) -> Result<EquivalenceReport> {
    let brute_values: BTreeSet<BigUint> = brute_force_search(p, len, budgets.scan)?
        .iter()
        .map(|w| value(&w.digits))
        .collect();

    let inventory = enumerate_cycles(&build_mother_graph(p), budgets.cycles)?;
    let opts = EnumerationOptions {
        dedup: DedupMode::LabelDistinct,
        leading_zero: LeadingZeroPolicy::Forbid,
        cap: budgets.strings,
    };
    let multisets = CycleMultiset::all_with_total(&inventory, len);
    let mut graph_values = BTreeSet::new();
    let mut multisets_accepted = 0;
    let mut graph_side_sound = true;
    for ms in &multisets {
        let g = union_images(ms, &inventory)?;
        if !condition_report(&g).verdict {
            continue;
        }
        multisets_accepted += 1;
        for_each_string(&g, opts, |s| match string_to_witness(&s, p) {
            Ok(w) => {
                graph_side_sound &= crate::digits::verify_witness(&w).is_permutiple;
                graph_values.insert(value(&w.digits));
            }
            Err(_) => graph_side_sound = false,
        })?;
    }

    let only_graph = graph_values.difference(&brute_values).cloned().collect();
    let only_brute = brute_values.difference(&graph_values).cloned().collect();
    Ok(EquivalenceReport {
        params: p,
        len,
        graph_values,
        brute_values,
        only_graph,
        only_brute,
        multisets_examined: multisets.len(),
        multisets_accepted,
        graph_side_sound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::verify_witness;
    use crate::mothergraph::{cycle_decomposition, graph_of_witness, witness_pairs, DigitPair};

    fn params(n: u32, b: u32) -> Params {
        Params::new(n, b).unwrap()
    }

    #[test]
    fn search_2_4_len_3() {
        let found = brute_force_search(params(2, 4), 3, DEFAULT_SCAN_BUDGET).unwrap();
        let shown: Vec<Vec<u32>> = found.iter().map(|w| w.digits.msd_first()).collect();
        assert_eq!(shown, vec![vec![1, 0, 2], vec![2, 1, 0], vec![3, 1, 2]]);
        assert!(found.iter().all(|w| verify_witness(w).is_permutiple));
    }

    #[test]
    fn search_4_10_len_5_has_87912() {
        let found = brute_force_search(params(4, 10), 5, DEFAULT_SCAN_BUDGET).unwrap();
        assert!(found.iter().any(|w| value(&w.digits) == BigUint::from(87912u32)));
        // the whole class of 87912 shows up
        for m in [87912u32, 87192, 79128, 71928] {
            assert!(found.iter().any(|w| value(&w.digits) == BigUint::from(m)), "{m}");
        }
    }

    #[test]
    fn search_len_1_is_empty() {
        assert!(brute_force_search(params(2, 4), 1, DEFAULT_SCAN_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn budgets_are_errors() {
        assert!(matches!(
            brute_force_search(params(4, 10), 8, 1_000_000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            palintiple_count(params(4, 10), 30, u64::MAX),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(
            brute_force_search(params(2, 4), 0, 10),
            Err(Error::InvalidLength(0))
        );
        assert_eq!(palintiple_count(params(2, 4), 1, 10), Err(Error::InvalidLength(1)));
    }

    #[test]
    fn palintiple_counts_4_10() {
        assert_eq!(palintiples(params(4, 10), 5, DEFAULT_SCAN_BUDGET).unwrap(), vec![87912]);
        assert_eq!(palintiples(params(4, 10), 4, DEFAULT_SCAN_BUDGET).unwrap(), vec![8712]);
        assert_eq!(palintiple_count(params(4, 10), 6, DEFAULT_SCAN_BUDGET).unwrap(), 1);
        assert_eq!(palintiples(params(9, 10), 5, DEFAULT_SCAN_BUDGET).unwrap(), vec![98901]);
    }

    #[test]
    fn equivalence_small() {
        for (n, b, len) in [(2, 4, 5), (3, 4, 4), (2, 4, 2)] {
            let r = equivalence_check(params(n, b), len, Budgets::default()).unwrap();
            assert!(r.agrees(), "{r:?}");
            assert!(r.graph_side_sound);
        }
        let r = equivalence_check(params(2, 4), 2, Budgets::default()).unwrap();
        assert!(r.graph_values.is_empty() && r.brute_values.is_empty());
        let r = equivalence_check(params(2, 4), 5, Budgets::default()).unwrap();
        // (2,1,1,0,2)_4, (1,1,0,2,2)_4, (2,2,1,1,0)_4
        for m in [594u32, 330, 660] {
            assert!(r.graph_values.contains(&BigUint::from(m)));
        }
    }

    #[test]
    fn brute_force_graphs_are_unions_of_mother_cycles() {
        for p in [params(2, 4), params(3, 4), params(2, 5), params(3, 5), params(4, 10)] {
            let m = build_mother_graph(p);
            let inv = enumerate_cycles(&m, 100_000).unwrap();
            for w in brute_force_search(p, 5, DEFAULT_SCAN_BUDGET).unwrap() {
                assert!(graph_of_witness(&w).edges().all(|e| m.contains(e)));
                let pairs: Vec<DigitPair> = witness_pairs(&w).collect();
                let cycles = cycle_decomposition(&pairs).expect("balanced edge multiset");
                assert!(cycles.iter().all(|c| inv.index_of(c).is_some()));
            }
        }
    }
}
