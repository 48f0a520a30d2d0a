//! Hypotheses: labeled ultimately periodic sets with a staged enumeration.
//!
//! The staged set at `t` is `{x ∈ ext : x ≤ t ∧ d(x) ≤ t}` where `d` is the
//! delay schedule, an affine default with finitely many overrides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::evidence::Labeled;
use crate::upset::{UpSet, UpSetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("delay override {delay} for {x} is below {x}")]
    OverrideBelowValue { x: u64, delay: u64 },
    #[error("delay override for {0}, which is not a member of the extension")]
    OverrideOnNonMember(u64),
    #[error("delay slope must be at least 1")]
    ZeroSlope,
    #[error("malformed hypothesis {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Set(#[from] UpSetError),
}

/// The syntactic identity of a hypothesis.
///
/// Learners derive labels by hashing what produced them, so equal inputs give
/// equal labels across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub u64);

impl Label {
    /// Reserved for the empty conjecture that starts iterative runs.
    pub const INITIAL: Label = Label(u64::MAX);

    /// A label determined by a list of byte strings.
    pub fn derive(parts: &[&[u8]]) -> Label {
        let mut hasher = Sha256::new();
        for part in parts {
            hasher.update((part.len() as u64).to_le_bytes());
            hasher.update(part);
        }
        let digest = hasher.finalize();
        let mut bytes = [0u8; 8];
        bytes.copy_from_slice(&digest[..8]);
        // keep clear of small labels (used literally, e.g. by maxpos) and INITIAL
        Label((u64::from_le_bytes(bytes) | 1 << 62) & !(1 << 63))
    }

    /// The label a purely semantic learner gives to `set`.
    pub fn for_set(set: &UpSet) -> Label {
        Label::derive(&[b"set", set.to_string().as_bytes()])
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `d(x) = max(x, slope·x + offset)` unless `x` has an override.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DelaySchedule {
    slope: u64,
    offset: u64,
    overrides: BTreeMap<u64, u64>,
}

impl Default for DelaySchedule {
    fn default() -> Self {
        DelaySchedule { slope: 1, offset: 0, overrides: BTreeMap::new() }
    }
}

impl DelaySchedule {
    pub fn affine(slope: u64, offset: u64) -> Result<Self, HypothesisError> {
        if slope == 0 {
            return Err(HypothesisError::ZeroSlope);
        }
        Ok(DelaySchedule { slope, offset, overrides: BTreeMap::new() })
    }

    pub fn slope(&self) -> u64 {
        self.slope
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn overrides(&self) -> &BTreeMap<u64, u64> {
        &self.overrides
    }

    pub fn delay(&self, x: u64) -> u64 {
        match self.overrides.get(&x) {
            Some(&t) => t,
            None => x.max(self.slope.saturating_mul(x).saturating_add(self.offset)),
        }
    }
}

impl fmt::Display for DelaySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.slope, self.offset)?;
        for (x, t) in &self.overrides {
            write!(f, ";{x}→{t}")?;
        }
        Ok(())
    }
}

/// Anything that can answer membership queries over ℕ.
pub trait Membership {
    fn has(&self, x: u64) -> bool;
}

impl Membership for UpSet {
    fn has(&self, x: u64) -> bool {
        self.contains(x)
    }
}

impl Membership for BTreeSet<u64> {
    fn has(&self, x: u64) -> bool {
        self.contains(&x)
    }
}

/// Cons: `pos(d) ⊆ s` and `neg(d) ∩ s = ∅`.
pub fn consistent<S: Membership + ?Sized>(s: &S, d: &impl Labeled) -> bool {
    d.examples().all(|e| s.has(e.value) == e.positive)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    label: Label,
    extension: UpSet,
    delay: DelaySchedule,
}

impl Hypothesis {
    /// A hypothesis with the default schedule `d(x) = x`.
    pub fn new(label: Label, extension: UpSet) -> Self {
        Hypothesis { label, extension, delay: DelaySchedule::default() }
    }

    /// The hypothesis a semantic learner outputs for `extension`.
    pub fn for_set(extension: UpSet) -> Self {
        Hypothesis::new(Label::for_set(&extension), extension)
    }

    /// The empty conjecture with the reserved label.
    pub fn initial() -> Self {
        Hypothesis::new(Label::INITIAL, UpSet::empty())
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn extension(&self) -> &UpSet {
        &self.extension
    }

    pub fn delay(&self) -> &DelaySchedule {
        &self.delay
    }

    pub fn delay_of(&self, x: u64) -> u64 {
        self.delay.delay(x)
    }

    pub fn relabeled(&self, label: Label) -> Self {
        Hypothesis { label, ..self.clone() }
    }

    /// Replaces the schedule; overrides must sit on members and not below them.
    pub fn with_delay(
        &self,
        overrides: impl IntoIterator<Item = (u64, u64)>,
        slope: u64,
        offset: u64,
    ) -> Result<Self, HypothesisError> {
        let mut delay = DelaySchedule::affine(slope, offset)?;
        for (x, t) in overrides {
            if !self.extension.contains(x) {
                return Err(HypothesisError::OverrideOnNonMember(x));
            }
            if t < x {
                return Err(HypothesisError::OverrideBelowValue { x, delay: t });
            }
            delay.overrides.insert(x, t);
        }
        Ok(Hypothesis { delay, ..self.clone() })
    }

    /// W^t: members `x ≤ t` whose delay is at most `t`.
    pub fn stage_enumerate(&self, t: u64) -> BTreeSet<u64> {
        self.extension
            .elements_upto(t)
            .into_iter()
            .filter(|&x| self.delay.delay(x) <= t)
            .collect()
    }

    pub fn is_consistent_with(&self, d: &impl Labeled) -> bool {
        consistent(&self.extension, d)
    }

    /// ≡_W: equal extensions, whatever the labels and schedules.
    pub fn sem_equiv(&self, other: &Hypothesis) -> bool {
        self.extension == other.extension
    }
}

pub fn sem_equiv(a: &Hypothesis, b: &Hypothesis) -> bool {
    a.sem_equiv(b)
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "label={} ext={} delay={}", self.label, self.extension, self.delay)
    }
}

impl fmt::Debug for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}:{:?}", self.label, self.extension)
    }
}

impl FromStr for Hypothesis {
    type Err = HypothesisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HypothesisError::Malformed(s.to_string());
        let mut label = None;
        let mut extension = None;
        let mut delay = None;
        for field in s.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "label" => label = Some(Label(value.parse().map_err(|_| bad())?)),
                "ext" => extension = Some(value.parse::<UpSet>()?),
                "delay" => delay = Some(value.to_string()),
                _ => return Err(bad()),
            }
        }
        let hyp = Hypothesis::new(label.ok_or_else(bad)?, extension.ok_or_else(bad)?);
        let Some(delay) = delay else { return Ok(hyp) };
        let mut parts = delay.split(';');
        let (a, b) = parts.next().and_then(|p| p.split_once(',')).ok_or_else(bad)?;
        let slope = a.parse().map_err(|_| bad())?;
        let offset = b.parse().map_err(|_| bad())?;
        let overrides = parts
            .map(|p| {
                let (x, t) = p.split_once('→').or_else(|| p.split_once("->")).ok_or_else(bad)?;
                Ok((x.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(u64, u64)>, HypothesisError>>()?;
        hyp.with_delay(overrides, slope, offset)
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Hypothesis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{DataSequence, Example};

    fn evens() -> UpSet {
        "|10".parse().unwrap()
    }

    fn seq(s: &str) -> DataSequence {
        s.parse().unwrap()
    }

    #[test]
    fn staged_sets() {
        let h = Hypothesis::new(Label(0), evens());
        assert_eq!(h.stage_enumerate(4), BTreeSet::from([0, 2, 4]));
        let slow = h.with_delay([(2, 7)], 1, 0).unwrap();
        assert_eq!(slow.stage_enumerate(4), BTreeSet::from([0, 4]));
        let late = Hypothesis::new(Label(0), UpSet::finite([10]));
        assert!(late.stage_enumerate(9).is_empty());
    }

    #[test]
    fn with_delay_rules() {
        let n = Hypothesis::new(Label(1), UpSet::full());
        let same = n.with_delay([(0, 0)], 1, 0).unwrap();
        for t in 0..20 {
            assert_eq!(same.stage_enumerate(t), n.stage_enumerate(t));
        }
        let h = Hypothesis::new(Label(1), evens());
        assert!(!h.with_delay([(6, 100)], 1, 0).unwrap().stage_enumerate(99).contains(&6));
        assert_eq!(h.with_delay([], 2, 0).unwrap().stage_enumerate(5), BTreeSet::from([0, 2]));
        assert_eq!(
            h.with_delay([(4, 3)], 1, 0),
            Err(HypothesisError::OverrideBelowValue { x: 4, delay: 3 })
        );
        assert_eq!(h.with_delay([(3, 9)], 1, 0), Err(HypothesisError::OverrideOnNonMember(3)));
        assert_eq!(h.with_delay([], 0, 0), Err(HypothesisError::ZeroSlope));
    }

    #[test]
    fn consistency() {
        assert!(consistent(&evens(), &seq("0:+,1:-")));
        assert!(!consistent(&evens(), &seq("1:+")));
        assert!(!consistent(&BTreeSet::from([0, 4]), &seq("0:+,2:+")));
        assert!(consistent(&BTreeSet::new(), &DataSequence::empty()));
        let d = crate::evidence::DataSet::new([Example::neg(2)]).unwrap();
        assert!(!consistent(&evens(), &d));
    }

    #[test]
    fn semantic_equivalence() {
        let a = Hypothesis::new(Label(3), evens());
        let b = Hypothesis::new(Label(9), evens());
        assert!(sem_equiv(&a, &b));
        assert!(!sem_equiv(&a, &Hypothesis::new(Label(3), "|01".parse().unwrap())));
        assert!(sem_equiv(&a, &b.with_delay([(4, 40)], 3, 1).unwrap()));
    }

    #[test]
    fn text_form() {
        let h: Hypothesis = "label=7 ext=|10 delay=2,1;4→30".parse().unwrap();
        assert_eq!(h.label(), Label(7));
        assert_eq!(h.delay_of(4), 30);
        assert_eq!(h.delay_of(2), 5);
        assert_eq!(h.to_string().parse::<Hypothesis>().unwrap(), h);
        assert_eq!("label=7 ext=|10 delay=1,0;2->3".parse::<Hypothesis>().unwrap().delay_of(2), 3);
        assert!("label=x ext=|10".parse::<Hypothesis>().is_err());
        assert!("label=1 ext=1|".parse::<Hypothesis>().is_err());
    }

    #[test]
    fn derived_labels_are_stable_and_unreserved() {
        let a = Label::for_set(&evens());
        assert_eq!(a, Label::for_set(&evens()));
        assert_ne!(a, Label::for_set(&UpSet::full()));
        assert_ne!(a, Label::INITIAL);
        assert!(a.0 >= 1 << 62);
    }
}
