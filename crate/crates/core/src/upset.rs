//! Exact algebra of ultimately periodic subsets of ℕ.
//!
//! An [`UpSet`] is stored as a finite `prefix` of membership bits followed by a
//! nonempty `period` that repeats forever. Values are always kept in canonical
//! form (minimal period, then minimal prefix), so two values denote the same
//! set exactly when they compare equal.
//!
//! The textual notation is `P|Q` with `P` and `Q` bit strings: `|10` is the
//! set of even numbers, `10|1` is ℕ without 1, `|0` is the empty set.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpSetError {
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("unexpected character {0:?} in set notation (expected 0, 1 or '|')")]
    BadChar(char),
    #[error("set notation {0:?} has no '|' separator")]
    MissingSeparator(String),
}

/// Set-theoretic relation between two sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    ProperSubset,
    ProperSuperset,
    Incomparable,
}

/// Pointwise Boolean combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

impl SetOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersection => a && b,
            SetOp::Difference => a && !b,
        }
    }
}

impl FromStr for SetOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "union" => Ok(SetOp::Union),
            "intersection" => Ok(SetOp::Intersection),
            "difference" => Ok(SetOp::Difference),
            other => Err(format!("unknown set operation {other:?}")),
        }
    }
}

/// An ultimately periodic subset of ℕ in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpSet {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl UpSet {
    /// Normalizes `(prefix, period)` into canonical form.
    pub fn new(mut prefix: Vec<bool>, mut period: Vec<bool>) -> Result<Self, UpSetError> {
        if period.is_empty() {
            return Err(UpSetError::EmptyPeriod);
        }
        let len = period.len();
        if let Some(d) = (1..=len)
            .filter(|d| len.is_multiple_of(*d))
            .find(|&d| (d..len).all(|i| period[i] == period[i - d]))
        {
            period.truncate(d);
        }
        while prefix.last().is_some_and(|last| Some(last) == period.last()) {
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(UpSet { prefix, period })
    }

    pub fn empty() -> Self {
        UpSet { prefix: Vec::new(), period: vec![false] }
    }

    pub fn full() -> Self {
        UpSet { prefix: Vec::new(), period: vec![true] }
    }

    /// The finite set containing exactly `elements`.
    pub fn finite<I: IntoIterator<Item = u64>>(elements: I) -> Self {
        let elements: BTreeSet<u64> = elements.into_iter().collect();
        let Some(&max) = elements.last() else {
            return Self::empty();
        };
        let prefix = (0..=max).map(|x| elements.contains(&x)).collect();
        Self::new(prefix, vec![false]).expect("nonempty period")
    }

    /// ℕ with the given elements removed.
    pub fn cofinite<I: IntoIterator<Item = u64>>(removed: I) -> Self {
        Self::finite(removed).complement()
    }

    /// `{0, 1, …, n}`.
    pub fn segment(n: u64) -> Self {
        Self::finite(0..=n)
    }

    /// `{offset + k·step : k ∈ ℕ}`; `step` must be positive.
    pub fn progression(offset: u64, step: u64) -> Self {
        assert!(step > 0, "progression step must be positive");
        let prefix = vec![false; offset as usize];
        let mut period = vec![false; step as usize];
        period[0] = true;
        Self::new(prefix, period).expect("nonempty period")
    }

    /// Builds a set from a membership predicate that is known to be periodic
    /// with the given period from `preperiod` onwards.
    pub fn from_fn(preperiod: usize, period: usize, member: impl Fn(u64) -> bool) -> Self {
        let bits: Vec<bool> = (0..(preperiod + period) as u64).map(member).collect();
        let (prefix, period) = bits.split_at(preperiod);
        Self::new(prefix.to_vec(), period.to_vec()).expect("period must be nonempty")
    }

    pub fn prefix_bits(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period_bits(&self) -> &[bool] {
        &self.period
    }

    pub fn contains(&self, x: u64) -> bool {
        let p = self.prefix.len() as u64;
        if x < p {
            self.prefix[x as usize]
        } else {
            self.period[((x - p) % self.period.len() as u64) as usize]
        }
    }

    /// Length of a window that decides every relation between `self` and `other`:
    /// the aligned prefix plus one common cycle.
    fn window(&self, other: &UpSet) -> (usize, usize) {
        let pre = self.prefix.len().max(other.prefix.len());
        let cycle = lcm(self.period.len(), other.period.len());
        (pre, cycle)
    }

    pub fn combine(op: SetOp, a: &UpSet, b: &UpSet) -> UpSet {
        let (pre, cycle) = a.window(b);
        UpSet::from_fn(pre, cycle, |x| op.apply(a.contains(x), b.contains(x)))
    }

    pub fn union(&self, other: &UpSet) -> UpSet {
        Self::combine(SetOp::Union, self, other)
    }

    pub fn intersection(&self, other: &UpSet) -> UpSet {
        Self::combine(SetOp::Intersection, self, other)
    }

    pub fn difference(&self, other: &UpSet) -> UpSet {
        Self::combine(SetOp::Difference, self, other)
    }

    pub fn complement(&self) -> UpSet {
        UpSet {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            period: self.period.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &UpSet) -> bool {
        let (pre, cycle) = self.window(other);
        (0..(pre + cycle) as u64).all(|x| !self.contains(x) || other.contains(x))
    }

    pub fn is_proper_superset(&self, other: &UpSet) -> bool {
        self != other && other.is_subset(self)
    }

    pub fn relate(&self, other: &UpSet) -> Relation {
        match (self.is_subset(other), other.is_subset(self)) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::ProperSubset,
            (false, true) => Relation::ProperSuperset,
            (false, false) => Relation::Incomparable,
        }
    }

    /// Canonical periods of finite sets are all zeros, i.e. exactly `0`.
    pub fn is_finite(&self) -> bool {
        self.period == [false]
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.prefix.is_empty() && self.period == [true]
    }

    /// Members `x ≤ bound` in increasing order.
    pub fn elements_upto(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    /// All members of a finite set; `None` for infinite sets.
    pub fn finite_elements(&self) -> Option<Vec<u64>> {
        self.is_finite().then(|| {
            (0..self.prefix.len() as u64)
                .filter(|&x| self.contains(x))
                .collect()
        })
    }

    pub fn min_element(&self) -> Option<u64> {
        let end = (self.prefix.len() + self.period.len()) as u64;
        (0..end).find(|&x| self.contains(x))
    }

    /// Smallest member of `self ∖ other`, if any.
    pub fn first_difference(&self, other: &UpSet) -> Option<u64> {
        self.difference(other).min_element()
    }
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "{}|{}", bits(&self.prefix), bits(&self.period))
    }
}

impl fmt::Debug for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for UpSet {
    type Err = UpSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(c) = s.chars().find(|c| !matches!(c, '0' | '1' | '|')) {
            return Err(UpSetError::BadChar(c));
        }
        let (prefix, period) = s
            .split_once('|')
            .ok_or_else(|| UpSetError::MissingSeparator(s.to_string()))?;
        if period.contains('|') {
            return Err(UpSetError::BadChar('|'));
        }
        let bits = |t: &str| t.chars().map(|c| c == '1').collect::<Vec<_>>();
        UpSet::new(bits(prefix), bits(period))
    }
}

impl Serialize for UpSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UpSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UpSet {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(UpSet::new(vec![], vec![true, false, true, false]).unwrap(), up("|10"));
        assert_eq!(up("|1010").to_string(), "|10");
        assert_eq!(up("1|1"), UpSet::full());
        assert_eq!(up("110010|1010").to_string(), "110|01");
        assert_eq!(UpSet::new(vec![true], vec![]), Err(UpSetError::EmptyPeriod));
    }

    #[test]
    fn membership() {
        assert!(up("|10").contains(4));
        assert!(!up("10|1").contains(1));
        let y1 = up("1011|0");
        assert!(y1.contains(3));
        assert_eq!(y1.elements_upto(10), vec![0, 2, 3]);
    }

    #[test]
    fn relations() {
        assert_eq!(up("|10").relate(&up("|1")), Relation::ProperSubset);
        assert_eq!(up("|10").relate(&up("|10")), Relation::Equal);
        assert_eq!(up("|10").relate(&up("01|01")), Relation::Incomparable);
        assert_eq!(up("|1").relate(&up("|10")), Relation::ProperSuperset);
    }

    #[test]
    fn combinations() {
        assert_eq!(up("|10").union(&up("|01")), UpSet::full());
        assert_eq!(up("|1").difference(&up("01|0")), up("10|1"));
        assert_eq!(up("|100").intersection(&up("|10")).to_string(), "|100000");
        assert_eq!(UpSet::full().complement(), UpSet::empty());
        assert_eq!(up("|10").complement(), up("|01"));
        assert_eq!(up("110|0").complement(), up("001|1"));
    }

    #[test]
    fn bounded_and_finiteness() {
        assert_eq!(up("|10").elements_upto(5), vec![0, 2, 4]);
        assert!(up("|0").elements_upto(100).is_empty());
        let z12 = UpSet::finite([0, 2, 3, 4]);
        assert_eq!(z12.elements_upto(10), vec![0, 2, 3, 4]);
        assert!(z12.is_finite());
        assert!(!up("|10").is_finite());
        assert_eq!(z12.finite_elements(), Some(vec![0, 2, 3, 4]));
        assert!(UpSet::empty().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!("1|".parse::<UpSet>(), Err(UpSetError::EmptyPeriod));
        assert_eq!("12|0".parse::<UpSet>(), Err(UpSetError::BadChar('2')));
        assert!(matches!("101".parse::<UpSet>(), Err(UpSetError::MissingSeparator(_))));
        assert_eq!("1|0|1".parse::<UpSet>(), Err(UpSetError::BadChar('|')));
    }

    #[test]
    fn constructors() {
        assert_eq!(UpSet::progression(0, 2), up("|10"));
        assert_eq!(UpSet::progression(1, 3).elements_upto(10), vec![1, 4, 7, 10]);
        assert_eq!(UpSet::segment(2), up("111|0"));
        assert_eq!(UpSet::cofinite([1]), up("10|1"));
        assert_eq!(UpSet::finite([]), UpSet::empty());
    }
}
