//! Learners, interaction operators and hypothesis sequences.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::evidence::{DataSequence, DataSet, Directive, Example, Informant, Labeled};
use crate::hypothesis::Hypothesis;
use crate::upset::UpSet;

/// How a learner is allowed to look at the informant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interface {
    /// Full prefix.
    G,
    /// Content plus the number of examples seen.
    Psd,
    /// Content only.
    Sd,
    /// Previous conjecture plus the next example.
    It,
}

impl fmt::Display for Interface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interface::G => "G",
            Interface::Psd => "Psd",
            Interface::Sd => "Sd",
            Interface::It => "It",
        })
    }
}

impl FromStr for Interface {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "G" => Ok(Interface::G),
            "Psd" => Ok(Interface::Psd),
            "Sd" => Ok(Interface::Sd),
            "It" => Ok(Interface::It),
            _ => Err(format!("unknown interface {s:?}")),
        }
    }
}

type GoldFn = Arc<dyn Fn(&DataSequence) -> Hypothesis + Send + Sync>;
type TrajectoryFn = Arc<dyn Fn(&DataSequence) -> Vec<Hypothesis> + Send + Sync>;
type PsdFn = Arc<dyn Fn(&DataSet, usize) -> Hypothesis + Send + Sync>;
type SdFn = Arc<dyn Fn(&DataSet) -> Hypothesis + Send + Sync>;
type ItFn = Arc<dyn Fn(&Hypothesis, Example) -> Hypothesis + Send + Sync>;

#[derive(Clone)]
enum Rule {
    Gold(GoldFn),
    /// A G learner evaluated on all prefixes at once; returns `|σ| + 1` items.
    GoldTrajectory(TrajectoryFn),
    PartiallySetDriven(PsdFn),
    SetDriven(SdFn),
    Iterative(ItFn),
}

/// A total, deterministic learner tagged with its interface.
#[derive(Clone)]
pub struct Learner {
    name: Arc<str>,
    rule: Rule,
}

impl fmt::Debug for Learner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Learner({} : {})", self.name, self.interface())
    }
}

impl Learner {
    pub fn gold(
        name: impl Into<Arc<str>>,
        f: impl Fn(&DataSequence) -> Hypothesis + Send + Sync + 'static,
    ) -> Self {
        Learner { name: name.into(), rule: Rule::Gold(Arc::new(f)) }
    }

    /// A G learner given as a function from σ to its conjectures on every
    /// prefix of σ, for learners whose outputs depend on earlier outputs.
    pub fn gold_trajectory(
        name: impl Into<Arc<str>>,
        f: impl Fn(&DataSequence) -> Vec<Hypothesis> + Send + Sync + 'static,
    ) -> Self {
        Learner { name: name.into(), rule: Rule::GoldTrajectory(Arc::new(f)) }
    }

    pub fn partially_set_driven(
        name: impl Into<Arc<str>>,
        f: impl Fn(&DataSet, usize) -> Hypothesis + Send + Sync + 'static,
    ) -> Self {
        Learner { name: name.into(), rule: Rule::PartiallySetDriven(Arc::new(f)) }
    }

    pub fn set_driven(
        name: impl Into<Arc<str>>,
        f: impl Fn(&DataSet) -> Hypothesis + Send + Sync + 'static,
    ) -> Self {
        Learner { name: name.into(), rule: Rule::SetDriven(Arc::new(f)) }
    }

    pub fn iterative(
        name: impl Into<Arc<str>>,
        f: impl Fn(&Hypothesis, Example) -> Hypothesis + Send + Sync + 'static,
    ) -> Self {
        Learner { name: name.into(), rule: Rule::Iterative(Arc::new(f)) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn interface(&self) -> Interface {
        match self.rule {
            Rule::Gold(_) | Rule::GoldTrajectory(_) => Interface::G,
            Rule::PartiallySetDriven(_) => Interface::Psd,
            Rule::SetDriven(_) => Interface::Sd,
            Rule::Iterative(_) => Interface::It,
        }
    }

    /// The conjecture after seeing exactly `sigma`.
    pub fn conjecture(&self, sigma: &DataSequence) -> Hypothesis {
        match &self.rule {
            Rule::Gold(f) => f(sigma),
            Rule::GoldTrajectory(f) => f(sigma).pop().expect("trajectory is never empty"),
            Rule::PartiallySetDriven(f) => f(&sigma.content(), sigma.len()),
            Rule::SetDriven(f) => f(&sigma.content()),
            Rule::Iterative(f) => sigma
                .items()
                .iter()
                .fold(Hypothesis::initial(), |h, e| f(&h, *e)),
        }
    }

    /// The conjecture on a finite data set. Set-driven learners read it
    /// directly; other learners see its examples in increasing order.
    pub fn on_set(&self, d: &DataSet) -> Hypothesis {
        match &self.rule {
            Rule::SetDriven(f) => f(d),
            _ => self.conjecture(&d.to_sequence()),
        }
    }

    /// The conjecture on content `d` after `steps` examples. Psd learners
    /// read both, Sd learners only `d`, others see `d` in increasing order.
    pub fn on_content(&self, d: &DataSet, steps: usize) -> Hypothesis {
        match &self.rule {
            Rule::PartiallySetDriven(f) => f(d, steps),
            _ => self.on_set(d),
        }
    }

    /// Conjectures on `σ[0], σ[1], …, σ[|σ|]`.
    pub fn trajectory(&self, sigma: &DataSequence) -> Vec<Hypothesis> {
        match &self.rule {
            Rule::GoldTrajectory(f) => f(sigma),
            Rule::Iterative(f) => {
                let mut out = Vec::with_capacity(sigma.len() + 1);
                out.push(Hypothesis::initial());
                for e in sigma.items() {
                    let next = f(out.last().unwrap(), *e);
                    out.push(next);
                }
                out
            }
            _ => (0..=sigma.len()).map(|n| self.conjecture(&sigma.prefix(n))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub learner: String,
    pub informant: String,
    pub horizon: usize,
}

/// The first `horizon` conjectures of a learner on an informant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypSequence {
    pub items: Vec<Hypothesis>,
    pub provenance: Provenance,
}

impl HypSequence {
    /// A hand-built sequence, for tests and probes.
    pub fn from_items(items: Vec<Hypothesis>) -> Self {
        let horizon = items.len();
        HypSequence {
            items,
            provenance: Provenance { learner: "manual".into(), informant: "manual".into(), horizon },
        }
    }

    /// Shorthand for sequences of semantic conjectures.
    pub fn from_sets(sets: impl IntoIterator<Item = UpSet>) -> Self {
        Self::from_items(sets.into_iter().map(Hypothesis::for_set).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &Hypothesis {
        &self.items[i]
    }

    pub fn extensions(&self) -> impl Iterator<Item = &UpSet> {
        self.items.iter().map(Hypothesis::extension)
    }

    pub fn truncate(&self, horizon: usize) -> HypSequence {
        let mut out = self.clone();
        out.items.truncate(horizon);
        out.provenance.horizon = out.items.len();
        out
    }
}

/// G, Psd, Sd or It, depending on the learner's interface: item `i` is the
/// conjecture on `I[i]`.
pub fn run(learner: &Learner, informant: &Informant, horizon: usize) -> HypSequence {
    let items = match horizon {
        0 => Vec::new(),
        h => learner.trajectory(&informant.prefix(h - 1)),
    };
    HypSequence {
        items,
        provenance: Provenance {
            learner: learner.name().to_string(),
            informant: informant.description().to_string(),
            horizon,
        },
    }
}

/// One pair of equal-content prefixes on which the outputs differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub first: DataSequence,
    pub second: DataSequence,
    pub first_hypothesis: Hypothesis,
    pub second_hypothesis: Hypothesis,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProbeReport {
    pub comparisons: usize,
    /// Pairs with equal content whose labels differ.
    pub label_differences: usize,
    /// Pairs with equal content whose extensions differ.
    pub semantic_differences: Vec<Discrepancy>,
}

impl OrderProbeReport {
    pub fn is_clean(&self) -> bool {
        self.semantic_differences.is_empty()
    }
}

const PROBE_BLOCK: usize = 4;
const PROBE_BLOCKS: usize = 8;

/// Compares the learner on reordered presentations of the same content.
///
/// Each trial pairs a block-shuffled informant with one that also repeats an
/// example; at every block boundary both prefixes have the same content as
/// the canonical prefix of that length, and all three conjectures are
/// compared.
pub fn order_insensitivity_probe(
    learner: &Learner,
    target: &UpSet,
    trials: usize,
    seed: u64,
) -> OrderProbeReport {
    let mut report = OrderProbeReport::default();
    let canonical = Informant::canonical(target);
    for k in 0..trials as u64 {
        let shuffle = Directive::Shuffle { block: PROBE_BLOCK };
        let a = Informant::scheduled(target, seed.wrapping_add(2 * k), std::slice::from_ref(&shuffle))
            .expect("shuffle plans are valid");
        let dup = Directive::Duplicate { index: 0, times: 2 };
        let b = Informant::scheduled(target, seed.wrapping_add(2 * k + 1), &[shuffle, dup])
            .expect("shuffle plans are valid");
        for block in 0..=PROBE_BLOCKS {
            let n = block * PROBE_BLOCK;
            let reference = canonical.prefix(n);
            let variants = [a.prefix(n), b.prefix(n + usize::from(n > 0))];
            let h0 = learner.conjecture(&reference);
            for v in variants {
                debug_assert_eq!(v.content(), reference.content());
                let h1 = learner.conjecture(&v);
                report.comparisons += 1;
                if h0.label() != h1.label() {
                    report.label_differences += 1;
                }
                if !h0.sem_equiv(&h1) {
                    report.semantic_differences.push(Discrepancy {
                        first: reference.clone(),
                        second: v,
                        first_hypothesis: h0.clone(),
                        second_hypothesis: h1,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::Label;

    fn pos_learner() -> Learner {
        Learner::set_driven("pos", |d| Hypothesis::for_set(UpSet::finite(d.pos())))
    }

    fn cofinite() -> Learner {
        Learner::set_driven("cofinite", |d| Hypothesis::for_set(UpSet::cofinite(d.neg())))
    }

    #[test]
    fn run_examples() {
        let n = UpSet::full();
        let p = run(&cofinite(), &Informant::canonical(&n), 3);
        assert_eq!(p.extensions().cloned().collect::<Vec<_>>(), vec![n.clone(); 3]);

        let zero = UpSet::finite([0]);
        let p = run(&pos_learner(), &Informant::canonical(&zero), 2);
        assert_eq!(p.extensions().cloned().collect::<Vec<_>>(), vec![UpSet::empty(), zero]);

        assert!(run(&pos_learner(), &Informant::canonical(&n), 0).is_empty());
    }

    #[test]
    fn iterative_runs_start_from_the_reserved_conjecture() {
        let it = Learner::iterative("grow", |h, e| {
            let ext = if e.positive { h.extension().union(&UpSet::finite([e.value])) } else { h.extension().clone() };
            Hypothesis::new(Label(e.value), ext)
        });
        let p = run(&it, &Informant::canonical(&UpSet::full()), 3);
        assert_eq!(p.get(0), &Hypothesis::initial());
        assert_eq!(p.get(2).extension(), &UpSet::finite([0, 1]));
        assert_eq!(p.get(2).label(), Label(1));
    }

    #[test]
    fn psd_sees_step_count() {
        let psd = Learner::partially_set_driven("steps", |_, n| Hypothesis::new(Label(n as u64), UpSet::empty()));
        let p = run(&psd, &Informant::canonical(&UpSet::full()), 4);
        let labels: Vec<u64> = p.items.iter().map(|h| h.label().0).collect();
        assert_eq!(labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn prefix_coherence() {
        let i = Informant::scheduled(&"|10".parse().unwrap(), 3, &[]).unwrap();
        let long = run(&cofinite(), &i, 12);
        for h in 0..12 {
            assert_eq!(run(&cofinite(), &i, h).items, long.items[..h]);
        }
    }

    #[test]
    fn probe_examples() {
        assert!(order_insensitivity_probe(&cofinite(), &UpSet::cofinite([1]), 5, 0).is_clean());
        assert!(order_insensitivity_probe(&pos_learner(), &UpSet::finite([0, 2]), 5, 0).is_clean());
        let last = Learner::gold("last", |s| match s.items().last() {
            Some(e) => Hypothesis::for_set(UpSet::finite([e.value])),
            None => Hypothesis::for_set(UpSet::empty()),
        });
        assert!(!order_insensitivity_probe(&last, &"|10".parse().unwrap(), 3, 0).is_clean());
    }
}
