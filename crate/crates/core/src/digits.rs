//! Exact base-`b` digit arithmetic and permutiple witnesses.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplier `n` and base `b`, with `1 < n < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    n: u32,
    b: u32,
}

impl Params {
    pub fn new(n: u32, b: u32) -> Result<Self> {
        if n > 1 && n < b {
            Ok(Params { n, b })
        } else {
            Err(Error::InvalidParams { n, b })
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Every valid parameter pair with `b <= max_base`.
    pub fn all_up_to(max_base: u32) -> impl Iterator<Item = Params> {
        (3..=max_base).flat_map(|b| (2..b).map(move |n| Params { n, b }))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.b)
    }
}

/// A non-empty digit vector in a fixed base, least-significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVec {
    digits: Vec<u32>,
    base: u32,
}

impl DigitVec {
    /// Builds from digits ordered least-significant first.
    pub fn from_lsd(digits: Vec<u32>, base: u32) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigits);
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(DigitVec { digits, base })
    }

    /// Builds from digits written the usual way, most-significant first.
    pub fn from_msd(digits: &[u32], base: u32) -> Result<Self> {
        Self::from_lsd(digits.iter().rev().copied().collect(), base)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit at position `j`, the coefficient of `b^j`.
    pub fn get(&self, j: usize) -> u32 {
        self.digits[j]
    }

    pub fn lsd_first(&self) -> &[u32] {
        &self.digits
    }

    pub fn msd_first(&self) -> Vec<u32> {
        self.digits.iter().rev().copied().collect()
    }

    /// Occurrence count of each digit value.
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.base as usize];
        for &d in &self.digits {
            counts[d as usize] += 1;
        }
        counts
    }

    pub fn leading_digit(&self) -> u32 {
        *self.digits.last().expect("non-empty")
    }
}

impl fmt::Display for DigitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")_{}", self.base)
    }
}

/// Carries `c_0 ..= c_len` of a single-digit multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarrySeq(pub Vec<u32>);

impl CarrySeq {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn last(&self) -> u32 {
        *self.0.last().expect("carry sequence holds c_0")
    }
}

/// `sum_j v[j] * b^j`.
pub fn value(v: &DigitVec) -> BigUint {
    v.digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &d| acc * v.base + d)
}

/// Inverse of [`value`], padding with leading zeros to `width` digits.
pub fn digits_of(m: &BigUint, base: u32, width: usize) -> Result<DigitVec> {
    if width == 0 {
        return Err(Error::EmptyDigits);
    }
    if base < 2 {
        return Err(Error::DigitOutOfRange { digit: 0, base });
    }
    let mut rest = m.clone();
    let mut digits = Vec::with_capacity(width);
    for _ in 0..width {
        let d = (&rest % base).to_u32_digits().first().copied().unwrap_or(0);
        digits.push(d);
        rest /= base;
    }
    if !rest.is_zero() {
        return Err(Error::Overflow {
            value: m.to_string(),
            base,
            width,
        });
    }
    Ok(DigitVec { digits, base })
}

/// Solves `b*c_{j+1} - c_j = n*permuted[j] - digits[j]` position by position
/// starting from `c_0 = 0`.
///
/// Fails as soon as a carry is non-integral or leaves `[0, n-1]`. The final
/// carry is returned as computed; callers decide whether it must be zero.
pub fn carry_sequence(digits: &DigitVec, permuted: &DigitVec, p: Params) -> Result<CarrySeq> {
    check_alignment(digits, permuted, p)?;
    let (n, b) = (i64::from(p.n), i64::from(p.b));
    let mut carries = Vec::with_capacity(digits.len() + 1);
    let mut carry = 0i64;
    carries.push(0);
    for j in 0..digits.len() {
        let numerator = n * i64::from(permuted.get(j)) - i64::from(digits.get(j)) + carry;
        if numerator.rem_euclid(b) != 0 {
            return Err(Error::NonIntegralCarry { position: j + 1 });
        }
        carry = numerator.div_euclid(b);
        if !(0..n).contains(&carry) {
            return Err(Error::CarryOutOfRange {
                position: j + 1,
                carry,
            });
        }
        carries.push(carry as u32);
    }
    Ok(CarrySeq(carries))
}

fn check_alignment(digits: &DigitVec, permuted: &DigitVec, p: Params) -> Result<()> {
    if digits.len() != permuted.len() {
        return Err(Error::LengthMismatch {
            left: digits.len(),
            right: permuted.len(),
        });
    }
    for base in [digits.base, permuted.base] {
        if base != p.b {
            return Err(Error::BaseMismatch {
                left: p.b,
                right: base,
            });
        }
    }
    Ok(())
}

/// A claimed relation `value(digits) = n * value(permuted)` together with
/// the carries of the multiplication `n * permuted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutipleWitness {
    pub params: Params,
    pub digits: DigitVec,
    pub permuted: DigitVec,
    pub carries: CarrySeq,
    /// `permuted[j] = digits[sigma[j]]` when present.
    pub sigma: Option<Vec<usize>>,
}

impl PermutipleWitness {
    /// Pairs `digits` with `permuted`, recording the schoolbook carries of
    /// `n * permuted`. Never fails on equal-length inputs in the right base;
    /// whether the claim holds is left to [`verify_witness`].
    pub fn new(params: Params, digits: DigitVec, permuted: DigitVec) -> Result<Self> {
        check_alignment(&digits, &permuted, params)?;
        let mut carries = Vec::with_capacity(digits.len() + 1);
        let mut carry = 0u64;
        carries.push(0);
        for &d in permuted.lsd_first() {
            carry = (u64::from(params.n) * u64::from(d) + carry) / u64::from(params.b);
            carries.push(carry as u32);
        }
        Ok(PermutipleWitness {
            params,
            digits,
            permuted,
            carries: CarrySeq(carries),
            sigma: None,
        })
    }

    pub fn with_sigma(mut self, sigma: Vec<usize>) -> Self {
        self.sigma = Some(sigma);
        self
    }

    /// Attaches one index mapping consistent with the digits, if any exists.
    pub fn with_derived_sigma(self) -> Self {
        match derive_sigma(&self.digits, &self.permuted) {
            Some(sigma) => self.with_sigma(sigma),
            None => self,
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PermutipleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}*{}", self.digits, self.params.n, self.permuted)
    }
}

/// Some `sigma` with `permuted[j] = digits[sigma[j]]`, matching equal digits
/// in order of position.
pub fn derive_sigma(digits: &DigitVec, permuted: &DigitVec) -> Option<Vec<usize>> {
    if digits.len() != permuted.len() || digits.base != permuted.base {
        return None;
    }
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); digits.base as usize];
    for (j, &d) in digits.digits.iter().enumerate().rev() {
        positions[d as usize].push(j);
    }
    permuted
        .digits
        .iter()
        .map(|&d| positions[d as usize].pop())
        .collect()
}

/// Outcome of [`verify_witness`]; every check is reported individually.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub multiset_equal: bool,
    pub value_relation: bool,
    pub carry_recurrence: bool,
    pub final_carry_zero: bool,
    pub carries_bounded: bool,
    /// `None` when the witness carries no index mapping.
    pub sigma_valid: Option<bool>,
    pub is_permutiple: bool,
}

pub fn verify_witness(w: &PermutipleWitness) -> VerificationReport {
    let p = w.params;
    let aligned = check_alignment(&w.digits, &w.permuted, p).is_ok();
    let multiset_equal = aligned && w.digits.histogram() == w.permuted.histogram();
    let value_relation = aligned && value(&w.digits) == value(&w.permuted) * p.n;

    let carries = w.carries.as_slice();
    let carry_recurrence = aligned
        && carries.len() == w.digits.len() + 1
        && carries[0] == 0
        && (0..w.digits.len()).all(|j| {
            let lhs = i64::from(p.b) * i64::from(carries[j + 1]) - i64::from(carries[j]);
            let rhs = i64::from(p.n) * i64::from(w.permuted.get(j)) - i64::from(w.digits.get(j));
            lhs == rhs
        });
    let final_carry_zero = carries.last() == Some(&0);
    let carries_bounded = carries.iter().all(|&c| c < p.n);

    let sigma_valid = w.sigma.as_ref().map(|sigma| {
        let len = w.digits.len();
        let mut seen = vec![false; len];
        aligned
            && sigma.len() == len
            && sigma.iter().enumerate().all(|(j, &s)| {
                s < len && !std::mem::replace(&mut seen[s], true) && w.permuted.get(j) == w.digits.get(s)
            })
    });

    let is_permutiple = multiset_equal
        && value_relation
        && carry_recurrence
        && final_carry_zero
        && carries_bounded
        && sigma_valid.unwrap_or(true);

    VerificationReport {
        multiset_equal,
        value_relation,
        carry_recurrence,
        final_carry_zero,
        carries_bounded,
        sigma_valid,
        is_permutiple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn msd(digits: &[u32], base: u32) -> DigitVec {
        DigitVec::from_msd(digits, base).unwrap()
    }

    fn params(n: u32, b: u32) -> Params {
        Params::new(n, b).unwrap()
    }

    #[test]
    fn params_bounds() {
        assert!(Params::new(2, 4).is_ok());
        assert_eq!(Params::new(1, 4), Err(Error::InvalidParams { n: 1, b: 4 }));
        assert!(Params::new(4, 4).is_err());
        assert!(Params::new(2, 2).is_err());
        assert_eq!(Params::all_up_to(4).count(), 1 + 2);
    }

    #[test]
    fn digit_vec_rejects_bad_digits() {
        assert_eq!(DigitVec::from_lsd(vec![], 4), Err(Error::EmptyDigits));
        assert_eq!(
            DigitVec::from_msd(&[1, 4], 4),
            Err(Error::DigitOutOfRange { digit: 4, base: 4 })
        );
        assert_eq!(msd(&[8, 7, 9, 1, 2], 10).to_string(), "(8,7,9,1,2)_10");
    }

    #[test]
    fn value_examples() {
        assert_eq!(value(&msd(&[8, 7, 9, 1, 2], 10)), BigUint::from(87912u32));
        assert_eq!(value(&msd(&[0], 4)), BigUint::zero());
        assert_eq!(value(&msd(&[1, 0, 2], 4)), BigUint::from(18u32));
    }

    #[test]
    fn digits_of_examples() {
        assert_eq!(
            digits_of(&BigUint::from(87912u32), 10, 5).unwrap(),
            msd(&[8, 7, 9, 1, 2], 10)
        );
        assert_eq!(digits_of(&BigUint::from(9u32), 4, 3).unwrap(), msd(&[0, 2, 1], 4));
        assert_eq!(digits_of(&BigUint::zero(), 4, 1).unwrap(), msd(&[0], 4));
        assert!(matches!(
            digits_of(&BigUint::from(64u32), 4, 3),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn carry_sequence_examples() {
        let c = carry_sequence(&msd(&[8, 7, 9, 1, 2], 10), &msd(&[2, 1, 9, 7, 8], 10), params(4, 10));
        assert_eq!(c.unwrap().0, vec![0, 3, 3, 3, 0, 0]);
        let c = carry_sequence(&msd(&[0], 4), &msd(&[0], 4), params(2, 4));
        assert_eq!(c.unwrap().0, vec![0, 0]);
        let c = carry_sequence(&msd(&[1, 0, 2], 4), &msd(&[0, 2, 1], 4), params(2, 4));
        assert_eq!(c.unwrap().0, vec![0, 0, 1, 0]);
    }

    #[test]
    fn carry_sequence_errors() {
        let p = params(2, 10);
        // 2*1 - 2 = 0, then 2*2 - 1 = 3 is not divisible by 10
        assert_eq!(
            carry_sequence(&msd(&[1, 2], 10), &msd(&[2, 1], 10), p),
            Err(Error::NonIntegralCarry { position: 2 })
        );
        // 2*2 - 0 = 4 gives carry 1; then 2*0 - 3 + 1 = -2
        let p = params(2, 4);
        assert_eq!(
            carry_sequence(&msd(&[3, 0], 4), &msd(&[0, 2], 4), p),
            Err(Error::NonIntegralCarry { position: 2 })
        );
        assert!(matches!(
            carry_sequence(&msd(&[0, 0], 4), &msd(&[0], 4), p),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            carry_sequence(&msd(&[0], 5), &msd(&[0], 5), p),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let w = PermutipleWitness::new(params(4, 10), msd(&[8, 7, 9, 1, 2], 10), msd(&[2, 1, 9, 7, 8], 10))
            .unwrap()
            .with_derived_sigma();
        let r = verify_witness(&w);
        assert!(r.is_permutiple, "{r:?}");
        assert_eq!(r.sigma_valid, Some(true));

        let w = PermutipleWitness::new(params(4, 10), msd(&[8, 7, 1, 9, 2], 10), msd(&[2, 1, 7, 9, 8], 10)).unwrap();
        assert!(verify_witness(&w).is_permutiple);

        let w = PermutipleWitness::new(params(2, 10), msd(&[1, 2], 10), msd(&[2, 1], 10)).unwrap();
        let r = verify_witness(&w);
        assert!(!r.is_permutiple);
        assert!(!r.value_relation);
        assert!(r.multiset_equal);
    }

    #[test]
    fn verify_checks_sigma_exactly() {
        let w = PermutipleWitness::new(params(4, 10), msd(&[8, 7, 9, 1, 2], 10), msd(&[2, 1, 9, 7, 8], 10))
            .unwrap();
        // identity mapping is wrong here
        let bad = w.clone().with_sigma(vec![0, 1, 2, 3, 4]);
        let r = verify_witness(&bad);
        assert_eq!(r.sigma_valid, Some(false));
        assert!(!r.is_permutiple);
        // reversal is the right one (87912 is a palintiple)
        let good = w.with_sigma(vec![4, 3, 2, 1, 0]);
        assert!(verify_witness(&good).is_permutiple);
        // not a bijection
        let w = PermutipleWitness::new(params(2, 4), msd(&[0, 0], 4), msd(&[0, 0], 4)).unwrap();
        assert_eq!(verify_witness(&w.with_sigma(vec![0, 0])).sigma_valid, Some(false));
    }

    #[test]
    fn tampered_carries_fail() {
        let mut w = PermutipleWitness::new(params(4, 10), msd(&[8, 7, 9, 1, 2], 10), msd(&[2, 1, 9, 7, 8], 10))
            .unwrap();
        w.carries.0[2] = 2;
        let r = verify_witness(&w);
        assert!(!r.carry_recurrence);
        assert!(!r.is_permutiple);
        w.carries.0[2] = 7;
        assert!(!verify_witness(&w).carries_bounded);
    }

    fn digit_vec_strategy() -> impl Strategy<Value = DigitVec> {
        (2u32..=12).prop_flat_map(|b| {
            prop::collection::vec(0..b, 1..10).prop_map(move |d| DigitVec::from_lsd(d, b).unwrap())
        })
    }

    proptest! {
        #[test]
        fn digits_of_round_trips(v in digit_vec_strategy()) {
            prop_assert_eq!(digits_of(&value(&v), v.base(), v.len()).unwrap(), v);
        }

        #[test]
        fn closed_carry_chain_implies_value_relation(
            (n, b, digits, permuted) in (3u32..=8).prop_flat_map(|b| {
                (2..b, Just(b), prop::collection::vec(0..b, 1..6), prop::collection::vec(0..b, 1..6))
            })
        ) {
            let len = digits.len().min(permuted.len());
            let p = Params::new(n, b).unwrap();
            let d = DigitVec::from_lsd(digits[..len].to_vec(), b).unwrap();
            let q = DigitVec::from_lsd(permuted[..len].to_vec(), b).unwrap();
            if let Ok(c) = carry_sequence(&d, &q, p) {
                if c.last() == 0 {
                    prop_assert_eq!(value(&d), value(&q) * n);
                }
            }
            // and conversely
            if value(&d) == value(&q) * n {
                let c = carry_sequence(&d, &q, p).unwrap();
                prop_assert_eq!(c.last(), 0);
                let w = PermutipleWitness::new(p, d, q).unwrap();
                prop_assert_eq!(w.carries, c);
            }
        }
    }
}
