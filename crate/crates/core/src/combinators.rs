//! Learner transformations: canonical reduction to set-driven learners,
//! patching, and the consistent weakly monotone wrappers.
//!
//! Constructed conjectures use the default schedule `d(x) = x` and labels
//! derived from the combinator, the inner learner and the input.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::evidence::{DataSequence, DataSet, Example, Labeled};
use crate::hypothesis::{consistent, Hypothesis, Label};
use crate::interaction::{Interface, Learner};
use crate::upset::UpSet;

/// ℓ(D): the largest `n` with `0..n ⊆ outline(D)`.
pub fn prefix_length(d: &DataSet) -> usize {
    let outline = d.outline();
    (0u64..).take_while(|i| outline.contains(i)).count()
}

/// c(D): the canonical prefix of length ℓ(D) read off `pos(D)`.
pub fn canonical_prefix(d: &DataSet) -> DataSequence {
    let pos = d.pos();
    let items = (0..prefix_length(d) as u64).map(|i| Example::new(i, pos.contains(&i))).collect();
    DataSequence::new(items).expect("one example per value")
}

/// The Sd learner `D ↦ h(c(D))`; conjectures are passed through unchanged.
pub fn to_set_driven(h: &Learner) -> Learner {
    let inner = h.clone();
    Learner::set_driven(format!("to_sd({})", h.name()), move |d| inner.conjecture(&canonical_prefix(d)))
}

fn derived_label(tag: &str, input: &dyn fmt::Display) -> Label {
    Label::derive(&[tag.as_bytes(), input.to_string().as_bytes()])
}

/// `(W_e ∪ pos(D)) ∖ neg(D)` under a fresh label.
pub fn patch(e: &Hypothesis, d: &DataSet) -> Hypothesis {
    let ext = e
        .extension()
        .union(&UpSet::finite(d.pos()))
        .difference(&UpSet::finite(d.neg()));
    let label = Label::derive(&[b"patch", &e.label().0.to_le_bytes(), d.to_string().as_bytes()]);
    Hypothesis::new(label, ext)
}

/// `D ↦ patch(h(D), D)`. Sd, Psd and G learners keep their interface; an
/// iterative learner becomes a G learner patched on the content seen.
pub fn patched_learner(h: &Learner) -> Learner {
    let inner = h.clone();
    let name = format!("patch({})", h.name());
    match h.interface() {
        Interface::Sd => Learner::set_driven(name, move |d| patch(&inner.on_set(d), d)),
        Interface::Psd => Learner::partially_set_driven(name, move |d, n| patch(&inner.on_content(d, n), d)),
        Interface::G | Interface::It => {
            Learner::gold_trajectory(name, move |sigma| {
                inner
                    .trajectory(sigma)
                    .into_iter()
                    .enumerate()
                    .map(|(k, h)| patch(&h, &sigma.prefix(k).content()))
                    .collect()
            })
        }
    }
}

/// `⋃_t {W_e^t : Cons(W_e^t, σ)}` in closed form.
///
/// Consistent stages form the interval `[t_pos, t_bad)` where `t_pos` is the
/// largest delay on `pos(σ)` and `t_bad` the smallest delay on `neg(σ) ∩ W_e`.
pub fn consistent_stage_union(e: &Hypothesis, sigma: &impl Labeled) -> UpSet {
    consistent_stage_union_parts(e, &sigma.pos(), &sigma.neg())
}

fn consistent_stage_union_parts(e: &Hypothesis, pos: &BTreeSet<u64>, neg: &BTreeSet<u64>) -> UpSet {
    let ext = e.extension();
    if !pos.iter().all(|&x| ext.contains(x)) {
        return UpSet::empty();
    }
    let t_pos = pos.iter().map(|&x| e.delay_of(x)).max().unwrap_or(0);
    let t_bad = neg.iter().filter(|&&y| ext.contains(y)).map(|&y| e.delay_of(y)).min();
    match t_bad {
        None => ext.clone(),
        Some(t_bad) if t_pos < t_bad => UpSet::finite(e.stage_enumerate(t_bad - 1)),
        Some(_) => UpSet::empty(),
    }
}

/// The globally consistent, weakly monotone wrapper that collects every
/// earlier conjecture while it has consistent stages.
pub fn cons_wmon_wrapper(h: &Learner) -> Learner {
    let inner = h.clone();
    let name = format!("cons_wmon({})", h.name());
    let tag = name.clone();
    Learner::gold_trajectory(name, move |sigma| {
        let hs = inner.trajectory(sigma);
        let mut outs: Vec<Hypothesis> = Vec::with_capacity(hs.len());
        // earlier outputs all use the default schedule, so extensions identify them
        let mut earlier: Vec<Hypothesis> = Vec::new();
        let mut seen: HashSet<UpSet> = HashSet::new();
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        for (k, h_k) in hs.iter().enumerate() {
            if k > 0 {
                let e = sigma.items()[k - 1];
                if e.positive {
                    pos.insert(e.value);
                } else {
                    neg.insert(e.value);
                }
            }
            let mut ext = UpSet::finite(pos.iter().copied());
            for e in std::iter::once(h_k).chain(&earlier) {
                ext = ext.union(&consistent_stage_union_parts(e, &pos, &neg));
            }
            let out = Hypothesis::new(derived_label(&tag, &sigma.prefix(k)), ext);
            if seen.insert(out.extension().clone()) {
                earlier.push(out.clone());
            }
            outs.push(out);
        }
        outs
    })
}

/// Which case of a wrapper produced a conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Exactly the positive data.
    Positive,
    /// The inner learner's conjecture.
    Inner,
    /// Everything except the negative data.
    CoNegative,
    /// ℕ ∖ neg(σ) repeated from an earlier prefix with the same negatives.
    Repeat,
}

/// Conjectures and cases of the dual weakly monotone poisoning wrapper on
/// every prefix of σ.
pub fn dual_wmon_poison_trace(h: &Learner, sigma: &DataSequence) -> Vec<(Case, Hypothesis)> {
    let tag = format!("dual_wmon_poison({})", h.name());
    let hs = h.trajectory(sigma);
    let mut out = Vec::with_capacity(hs.len());
    let mut poisoned = false;
    let mut last_pos: Option<BTreeSet<u64>> = None;
    for (k, h_k) in hs.iter().enumerate() {
        let prefix = sigma.prefix(k);
        let pos = prefix.pos();
        if last_pos.as_ref() != Some(&pos) {
            poisoned = false;
        }
        let w = h_k.extension();
        poisoned |= !pos.iter().all(|&x| w.contains(x));
        let (case, ext) = if poisoned {
            (Case::Positive, UpSet::finite(pos.iter().copied()))
        } else if consistent(w, &prefix) {
            (Case::Inner, w.clone())
        } else {
            (Case::CoNegative, UpSet::cofinite(prefix.neg()))
        };
        out.push((case, Hypothesis::new(derived_label(&tag, &prefix), ext)));
        last_pos = Some(pos);
    }
    out
}

/// The globally consistent wrapper that poisons conjectures shown wrong.
/// The inner learner is read through its own interface.
pub fn dual_wmon_poison(h: &Learner) -> Learner {
    let inner = h.clone();
    Learner::gold_trajectory(format!("dual_wmon_poison({})", h.name()), move |sigma| {
        dual_wmon_poison_trace(&inner, sigma).into_iter().map(|(_, h)| h).collect()
    })
}

/// Conjectures and cases of the four-case wrapper on every prefix of σ.
pub fn cons_wmon_fourcase_trace(h: &Learner, sigma: &DataSequence) -> Vec<(Case, Hypothesis)> {
    let tag = format!("cons_wmon_fourcase({})", h.name());
    let hs = h.trajectory(sigma);
    let mut out: Vec<(Case, Hypothesis)> = Vec::with_capacity(hs.len());
    let mut negs: Vec<BTreeSet<u64>> = Vec::with_capacity(hs.len());
    for (k, h_k) in hs.iter().enumerate() {
        let prefix = sigma.prefix(k);
        let neg = prefix.neg();
        // g(σ) is g′ of the shortest prefix with the same content.
        if k > 0 && prefix.prefix(k - 1).content() == prefix.content() {
            let repeat = out[k - 1].clone();
            out.push(repeat);
            negs.push(neg);
            continue;
        }
        let pos = prefix.pos();
        let co_negative = UpSet::cofinite(neg.iter().copied());
        let w = h_k.extension();
        let repeats = (0..k).any(|j| negs[j] == neg && out[j].1.extension() == &co_negative);
        let (case, ext) = if repeats {
            (Case::Repeat, co_negative)
        } else if !pos.iter().all(|&x| w.contains(x)) {
            (Case::Positive, UpSet::finite(pos))
        } else if consistent(w, &prefix) {
            (Case::Inner, w.clone())
        } else {
            (Case::CoNegative, co_negative)
        };
        out.push((case, Hypothesis::new(derived_label(&tag, &prefix), ext)));
        negs.push(neg);
    }
    out
}

/// The four-case consistent weakly monotone wrapper.
pub fn cons_wmon_fourcase(h: &Learner) -> Learner {
    let inner = h.clone();
    Learner::gold_trajectory(format!("cons_wmon_fourcase({})", h.name()), move |sigma| {
        cons_wmon_fourcase_trace(&inner, sigma).into_iter().map(|(_, h)| h).collect()
    })
}

/// A combinator addressable by id in pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combinator {
    ToSd,
    Patch,
    ConsWmon,
    DualWmonPoison,
    ConsWmonFourcase,
}

impl Combinator {
    pub const ALL: [Combinator; 5] = [
        Combinator::ToSd,
        Combinator::Patch,
        Combinator::ConsWmon,
        Combinator::DualWmonPoison,
        Combinator::ConsWmonFourcase,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Combinator::ToSd => "to_sd",
            Combinator::Patch => "patch",
            Combinator::ConsWmon => "cons_wmon",
            Combinator::DualWmonPoison => "dual_wmon_poison",
            Combinator::ConsWmonFourcase => "cons_wmon_fourcase",
        }
    }

    pub fn apply(self, h: &Learner) -> Learner {
        match self {
            Combinator::ToSd => to_set_driven(h),
            Combinator::Patch => patched_learner(h),
            Combinator::ConsWmon => cons_wmon_wrapper(h),
            Combinator::DualWmonPoison => dual_wmon_poison(h),
            Combinator::ConsWmonFourcase => cons_wmon_fourcase(h),
        }
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Combinator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Combinator::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown combinator {s:?}"))
    }
}

/// Applies the combinators left to right.
pub fn pipeline(h: &Learner, steps: &[Combinator]) -> Learner {
    steps.iter().fold(h.clone(), |acc, c| c.apply(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{Directive, Informant};
    use crate::interaction::run;
    use crate::restrictions::{check, Restriction};

    fn set(s: &str) -> UpSet {
        s.parse().unwrap()
    }

    fn data(s: &str) -> DataSet {
        s.parse::<DataSequence>().unwrap().content()
    }

    fn cofinite() -> Learner {
        Learner::set_driven("cofinite", |d| Hypothesis::for_set(UpSet::cofinite(d.neg())))
    }

    fn pos_learner() -> Learner {
        Learner::set_driven("pos", |d| Hypothesis::for_set(UpSet::finite(d.pos())))
    }

    fn constant(s: UpSet) -> Learner {
        Learner::set_driven("const", move |_| Hypothesis::for_set(s.clone()))
    }

    #[test]
    fn prefix_length_and_canonical_prefix() {
        assert_eq!(prefix_length(&data("0:+,1:-,3:+")), 2);
        assert_eq!(prefix_length(&DataSet::empty()), 0);
        assert_eq!(prefix_length(&data("0:+,1:+,2:-")), 3);
        assert_eq!(canonical_prefix(&data("0:+,1:-,3:+")).to_string(), "0:+,1:-");
        assert!(canonical_prefix(&DataSet::empty()).is_empty());
        let canonical = Informant::canonical(&set("|10")).prefix(5);
        assert_eq!(canonical_prefix(&canonical.content()), canonical);
    }

    #[test]
    fn to_set_driven_examples() {
        let l = UpSet::cofinite([1]);
        let sd = to_set_driven(&cofinite());
        let i = Informant::canonical(&l);
        assert_eq!(sd.on_set(&i.prefix(3).content()), cofinite().conjecture(&i.prefix(3)));

        let zero = UpSet::finite([0]);
        let first = Directive::Insert { at: 0, example: Example::neg(5) };
        let i = Informant::scheduled(&zero, 1, &[first]).unwrap();
        let p = run(&to_set_driven(&pos_learner()), &i, 6);
        let empty = pos_learner().conjecture(&DataSequence::empty());
        let shown = (0..6).position(|n| i.prefix(n).pos().contains(&0)).unwrap();
        assert!(p.items[..shown].iter().all(|h| *h == empty));
    }

    #[test]
    fn patch_examples() {
        let e = Hypothesis::for_set(set("|10"));
        let p = patch(&e, &data("1:+,2:-"));
        assert_eq!(p.extension(), &set("1100|10"));
        assert!(consistent(p.extension(), &data("1:+,2:-")));
        assert_eq!(patch(&e, &DataSet::empty()).extension(), e.extension());
        assert_ne!(p.label(), e.label());
    }

    #[test]
    fn patched_learner_examples() {
        let zero = Informant::canonical(&UpSet::finite([0]));
        let p = run(&patched_learner(&constant(UpSet::empty())), &zero, 2);
        assert_eq!(p.get(1).extension(), &UpSet::finite([0]));

        let l = UpSet::cofinite([1, 4]);
        let i = Informant::scheduled(&l, 3, &[]).unwrap();
        let a = run(&cofinite(), &i, 20);
        let b = run(&patched_learner(&cofinite()), &i, 20);
        assert!(a.items.iter().zip(&b.items).all(|(x, y)| x.sem_equiv(y)));
        assert_eq!(patched_learner(&cofinite()).interface(), Interface::Sd);
    }

    #[test]
    fn stage_union_closed_form() {
        let sigma: DataSequence = "0:+,3:-".parse().unwrap();
        let e = Hypothesis::for_set(UpSet::full()).with_delay([(3, 6)], 1, 0).unwrap();
        assert_eq!(consistent_stage_union(&e, &sigma), UpSet::finite(0..=5).difference(&UpSet::finite([3])));
        let bad_now = Hypothesis::for_set(UpSet::full());
        let sigma: DataSequence = "2:+,0:-".parse().unwrap();
        assert!(consistent_stage_union(&bad_now, &sigma).is_empty());
        assert_eq!(consistent_stage_union(&bad_now, &DataSequence::empty()), UpSet::full());
    }

    #[test]
    fn cons_wmon_on_cofinite() {
        let l = UpSet::cofinite([1]);
        let i = Informant::canonical(&l);
        let g = cons_wmon_wrapper(&cofinite());
        let p = run(&g, &i, 20);
        assert_eq!(p.get(0).extension(), &UpSet::full());
        for r in [Restriction::Cons, Restriction::WMon, Restriction::Bc] {
            assert!(check(r, &p, &i).satisfied, "{r}");
        }
    }

    #[test]
    fn dual_poison_cases() {
        let zero = UpSet::finite([0]);
        let trace = dual_wmon_poison_trace(&constant(UpSet::empty()), &Informant::canonical(&zero).prefix(4));
        assert_eq!(trace[0].0, Case::Inner);
        assert!(trace[1..].iter().all(|(c, h)| *c == Case::Positive && h.extension() == &zero));

        let evens = set("|10");
        let trace = dual_wmon_poison_trace(&constant(UpSet::full()), &Informant::canonical(&evens).prefix(2));
        assert_eq!(trace[2].0, Case::CoNegative);
        assert_eq!(trace[2].1.extension(), &UpSet::cofinite([1]));

        let i = Informant::canonical(&evens);
        let p = run(&dual_wmon_poison(&constant(evens.clone())), &i, 10);
        assert!(p.items.iter().all(|h| h.extension() == &evens));
    }

    #[test]
    fn fourcase_cases() {
        let evens = set("|10");
        let i = Informant::canonical(&evens);
        let trace = cons_wmon_fourcase_trace(&constant(evens.clone()), &i.prefix(6));
        assert!(trace.iter().all(|(c, _)| *c == Case::Inner));

        let trace = cons_wmon_fourcase_trace(&constant(UpSet::empty()), &i.prefix(3));
        assert_eq!(trace[1].0, Case::Positive);

        // ℕ is inconsistent once 1:- is seen; later positives keep neg fixed.
        let sigma: DataSequence = "1:-,0:+,2:+,4:+".parse().unwrap();
        let trace = cons_wmon_fourcase_trace(&constant(UpSet::full()), &sigma);
        assert_eq!(trace[1].0, Case::CoNegative);
        assert!(trace[2..].iter().all(|(c, h)| *c == Case::Repeat && h.extension() == &UpSet::cofinite([1])));

        let dup: DataSequence = "0:+,0:+,1:-".parse().unwrap();
        let trace = cons_wmon_fourcase_trace(&constant(UpSet::full()), &dup);
        assert_eq!(trace[2], trace[1]);
    }

    #[test]
    fn combinator_ids() {
        for c in Combinator::ALL {
            assert_eq!(c.id().parse::<Combinator>().unwrap(), c);
        }
        let g = pipeline(&cofinite(), &[Combinator::ToSd, Combinator::ConsWmon]);
        assert_eq!(g.name(), "cons_wmon(to_sd(cofinite))");
    }
}
