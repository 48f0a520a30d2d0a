//! Labeled examples, finite data sequences and data sets, and informants.
//!
//! Every finite sequence in this crate is label-consistent: no value ever
//! appears with both labels. Informants are infinite, deterministic streams
//! described by a target set plus a schedule; only finite prefixes are ever
//! materialized.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvidenceError {
    #[error("value {0} appears with both labels")]
    Contradiction(u64),
    #[error("example {0} has the wrong label for the target {1}")]
    WrongLabel(Example, UpSet),
    #[error("malformed example {0:?} (expected `x:+` or `x:-`)")]
    MalformedExample(String),
    #[error("malformed schedule directive {0:?}")]
    MalformedDirective(String),
    #[error("shuffle block size must be positive")]
    ZeroBlock,
}

/// A labeled example `(value, label)`; `positive` is label 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Example {
    pub value: u64,
    pub positive: bool,
}

impl Example {
    pub fn new(value: u64, positive: bool) -> Self {
        Example { value, positive }
    }

    pub fn pos(value: u64) -> Self {
        Example::new(value, true)
    }

    pub fn neg(value: u64) -> Self {
        Example::new(value, false)
    }

    /// The example for `value` as labeled by `target`.
    pub fn labeled_by(target: &UpSet, value: u64) -> Self {
        Example::new(value, target.contains(value))
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.value, if self.positive { '+' } else { '-' })
    }
}

impl FromStr for Example {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EvidenceError::MalformedExample(s.to_string());
        let (value, label) = s.trim().split_once(':').ok_or_else(bad)?;
        let value = value.trim().parse().map_err(|_| bad())?;
        match label.trim() {
            "+" => Ok(Example::pos(value)),
            "-" => Ok(Example::neg(value)),
            _ => Err(bad()),
        }
    }
}

/// Projections shared by sequences and sets of examples.
pub trait Labeled {
    fn examples(&self) -> Box<dyn Iterator<Item = Example> + '_>;

    fn pos(&self) -> BTreeSet<u64> {
        self.examples().filter(|e| e.positive).map(|e| e.value).collect()
    }

    fn neg(&self) -> BTreeSet<u64> {
        self.examples().filter(|e| !e.positive).map(|e| e.value).collect()
    }

    fn outline(&self) -> BTreeSet<u64> {
        self.examples().map(|e| e.value).collect()
    }

    fn content(&self) -> DataSet {
        DataSet {
            items: self.examples().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Pos,
    Neg,
    Outline,
}

pub fn project(kind: Projection, data: &impl Labeled) -> BTreeSet<u64> {
    match kind {
        Projection::Pos => data.pos(),
        Projection::Neg => data.neg(),
        Projection::Outline => data.outline(),
    }
}

fn check_consistent<'a>(items: impl Iterator<Item = &'a Example>) -> Result<(), EvidenceError> {
    let mut seen = std::collections::BTreeMap::new();
    for e in items {
        if let Some(&label) = seen.get(&e.value) {
            if label != e.positive {
                return Err(EvidenceError::Contradiction(e.value));
            }
        } else {
            seen.insert(e.value, e.positive);
        }
    }
    Ok(())
}

/// A finite, label-consistent sequence of examples (σ).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DataSequence {
    items: Vec<Example>,
}

impl DataSequence {
    pub fn new(items: Vec<Example>) -> Result<Self, EvidenceError> {
        check_consistent(items.iter())?;
        Ok(DataSequence { items })
    }

    pub(crate) fn from_trusted(items: Vec<Example>) -> Self {
        debug_assert!(check_consistent(items.iter()).is_ok());
        DataSequence { items }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[Example] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The first `n` examples (σ[n]); saturates at the full length.
    pub fn prefix(&self, n: usize) -> DataSequence {
        DataSequence {
            items: self.items[..n.min(self.items.len())].to_vec(),
        }
    }

    pub fn push(&mut self, example: Example) -> Result<(), EvidenceError> {
        if self
            .items
            .iter()
            .any(|e| e.value == example.value && e.positive != example.positive)
        {
            return Err(EvidenceError::Contradiction(example.value));
        }
        self.items.push(example);
        Ok(())
    }

    /// Whether every example agrees with membership in `target`.
    pub fn is_valid_for(&self, target: &UpSet) -> bool {
        self.items.iter().all(|e| e.positive == target.contains(e.value))
    }
}

/// `validate_prefix_for`: could `data` be a prefix of some informant for `target`?
pub fn validate_prefix_for(data: &DataSequence, target: &UpSet) -> bool {
    data.is_valid_for(target)
}

impl Labeled for DataSequence {
    fn examples(&self) -> Box<dyn Iterator<Item = Example> + '_> {
        Box::new(self.items.iter().copied())
    }
}

impl fmt::Display for DataSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for DataSequence {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let items = s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        DataSequence::new(items)
    }
}

impl Serialize for DataSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DataSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite, label-consistent set of examples (D).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DataSet {
    items: BTreeSet<Example>,
}

impl DataSet {
    pub fn new<I: IntoIterator<Item = Example>>(items: I) -> Result<Self, EvidenceError> {
        let items: BTreeSet<Example> = items.into_iter().collect();
        check_consistent(items.iter())?;
        Ok(DataSet { items })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &BTreeSet<Example> {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, example: &Example) -> bool {
        self.items.contains(example)
    }

    pub fn is_subset(&self, other: &DataSet) -> bool {
        self.items.is_subset(&other.items)
    }

    /// The examples in increasing order of value.
    pub fn to_sequence(&self) -> DataSequence {
        DataSequence::from_trusted(self.items.iter().copied().collect())
    }
}

impl Labeled for DataSet {
    fn examples(&self) -> Box<dyn Iterator<Item = Example> + '_> {
        Box::new(self.items.iter().copied())
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_sequence())
    }
}

impl Serialize for DataSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.to_sequence())
    }
}

impl<'de> Deserialize<'de> for DataSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let sequence: DataSequence = DataSequence::deserialize(deserializer)?;
        Ok(sequence.content())
    }
}

/// One edit of an informant schedule.
///
/// Positions refer to the informant as it stands after the previous
/// directives have been applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Directive {
    /// Shuffle the backbone enumeration in blocks of the given size.
    Shuffle { block: usize },
    /// Exchange the examples at two positions.
    Swap(usize, usize),
    /// Make the example at `index` appear `times` times in a row.
    Duplicate { index: usize, times: usize },
    /// Insert an extra copy of `example` at position `at`.
    Insert { at: usize, example: Example },
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Directive::Shuffle { block } => write!(f, "shuffle {block}"),
            Directive::Swap(i, j) => write!(f, "swap {i} {j}"),
            Directive::Duplicate { index, times } => write!(f, "dup {index} {times}"),
            Directive::Insert { at, example } => write!(f, "insert {at} {example}"),
        }
    }
}

impl FromStr for Directive {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EvidenceError::MalformedDirective(s.to_string());
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<usize>().map_err(|_| bad());
        match words.as_slice() {
            ["shuffle", b] => Ok(Directive::Shuffle { block: num(b)? }),
            ["swap", i, j] => Ok(Directive::Swap(num(i)?, num(j)?)),
            ["dup", i, k] => Ok(Directive::Duplicate { index: num(i)?, times: num(k)? }),
            ["insert", at, e] => Ok(Directive::Insert { at: num(at)?, example: e.parse()? }),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for Directive {
    type Error = EvidenceError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Directive> for String {
    fn from(value: Directive) -> Self {
        value.to_string()
    }
}

/// The plan used when a scheduled informant is requested without directives.
pub const DEFAULT_SHUFFLE_BLOCK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Backbone {
    Canonical,
    Shuffled { seed: u64, block: usize },
}

impl Backbone {
    fn block(&self) -> usize {
        match self {
            Backbone::Canonical => 1,
            Backbone::Shuffled { block, .. } => *block,
        }
    }

    /// Values at backbone positions `block·k .. block·(k+1)`.
    fn block_values(&self, k: u64) -> Vec<u64> {
        match *self {
            Backbone::Canonical => vec![k],
            Backbone::Shuffled { seed, block } => {
                let start = k * block as u64;
                let mut values: Vec<u64> = (start..start + block as u64).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k);
                values.shuffle(&mut rng);
                values
            }
        }
    }

    fn iter_from(&self, position: u64) -> impl Iterator<Item = u64> + '_ {
        let block = self.block() as u64;
        let first = position / block;
        let skip = (position % block) as usize;
        (first..)
            .flat_map(move |k| self.block_values(k))
            .skip(skip)
    }
}

/// An informant for a target set: a total enumeration of ℕ with correct labels.
///
/// The stream is a finite `head` followed by a backbone enumeration starting
/// at backbone position `cursor`, with the values in `skip` left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Informant {
    target: UpSet,
    head: Vec<Example>,
    backbone: Backbone,
    cursor: u64,
    skip: BTreeSet<u64>,
    description: String,
}

impl Informant {
    /// The canonical informant Î_L presenting `(x, [x ∈ L])` at index x.
    pub fn canonical(target: &UpSet) -> Self {
        Informant {
            target: target.clone(),
            head: Vec::new(),
            backbone: Backbone::Canonical,
            cursor: 0,
            skip: BTreeSet::new(),
            description: format!("canonical({target})"),
        }
    }

    /// A replayable non-canonical informant built from `plan`; an empty plan
    /// means `[shuffle 8]`.
    pub fn scheduled(target: &UpSet, seed: u64, plan: &[Directive]) -> Result<Self, EvidenceError> {
        let default_plan = [Directive::Shuffle { block: DEFAULT_SHUFFLE_BLOCK }];
        let plan = if plan.is_empty() { &default_plan[..] } else { plan };
        let mut inf = Informant {
            target: target.clone(),
            head: Vec::new(),
            backbone: Backbone::Canonical,
            cursor: 0,
            skip: BTreeSet::new(),
            description: format!(
                "scheduled({target}; seed={seed}; {})",
                plan.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
        };
        // Shuffling re-seeds the backbone, so it must come before any edit.
        for directive in plan {
            if let Directive::Shuffle { block } = directive {
                if *block == 0 {
                    return Err(EvidenceError::ZeroBlock);
                }
                inf.backbone = Backbone::Shuffled { seed, block: *block };
            }
        }
        for directive in plan {
            match *directive {
                Directive::Shuffle { .. } => {}
                Directive::Swap(i, j) => {
                    inf.materialize(i.max(j) + 1);
                    inf.head.swap(i, j);
                }
                Directive::Duplicate { index, times } => {
                    inf.materialize(index + 1);
                    let e = inf.head[index];
                    let extra = times.saturating_sub(1);
                    inf.head.splice(index..index, std::iter::repeat_n(e, extra));
                }
                Directive::Insert { at, example } => {
                    if example.positive != target.contains(example.value) {
                        return Err(EvidenceError::WrongLabel(example, target.clone()));
                    }
                    inf.materialize(at);
                    inf.head.insert(at, example);
                }
            }
        }
        Ok(inf)
    }

    /// Shows `prefix` first and then continues the canonical enumeration of
    /// `target` over the values not yet outlined.
    pub fn extending(prefix: &DataSequence, target: &UpSet) -> Result<Self, EvidenceError> {
        if let Some(e) = prefix.items().iter().find(|e| e.positive != target.contains(e.value)) {
            return Err(EvidenceError::WrongLabel(*e, target.clone()));
        }
        Ok(Informant {
            target: target.clone(),
            head: prefix.items().to_vec(),
            backbone: Backbone::Canonical,
            cursor: 0,
            skip: prefix.outline(),
            description: format!("extending({target}; [{prefix}])"),
        })
    }

    fn materialize(&mut self, len: usize) {
        if self.head.len() >= len {
            return;
        }
        let missing = len - self.head.len();
        let values: Vec<u64> = self.backbone.iter_from(self.cursor).take(missing).collect();
        self.cursor += missing as u64;
        self.head
            .extend(values.into_iter().map(|x| Example::labeled_by(&self.target, x)));
    }

    pub fn target(&self) -> &UpSet {
        &self.target
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    fn stream(&self) -> impl Iterator<Item = Example> + '_ {
        let tail = self
            .backbone
            .iter_from(self.cursor)
            .filter(|x| !self.skip.contains(x))
            .map(|x| Example::labeled_by(&self.target, x));
        self.head.iter().copied().chain(tail)
    }

    /// The example presented at index `i`.
    pub fn at(&self, i: usize) -> Example {
        self.stream().nth(i).expect("informants are infinite")
    }

    /// The first `n` examples, I[n].
    pub fn prefix(&self, n: usize) -> DataSequence {
        DataSequence::from_trusted(self.stream().take(n).collect())
    }

    /// An index bound by which `x` has certainly been presented: `x` appears
    /// at some index `< coverage_bound(x)`.
    pub fn coverage_bound(&self, x: u64) -> usize {
        if let Some(i) = self.head.iter().position(|e| e.value == x) {
            return i + 1;
        }
        let block = self.backbone.block() as u64;
        let backbone_end = (x / block + 1) * block;
        self.head.len() + backbone_end.saturating_sub(self.cursor) as usize
    }
}
