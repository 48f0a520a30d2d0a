//! Learning restrictions and convergence criteria, checked exactly on a
//! finite horizon.
//!
//! `pos(I)` and `neg(I)` are read off the informant's target, so the
//! monotonicity checks are exact for the conjectures seen. Convergence
//! criteria can only report horizon-bounded evidence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evidence::{Informant, Labeled};
use crate::hypothesis::consistent;
use crate::interaction::HypSequence;
use crate::upset::UpSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    Cons,
    #[serde(rename = "smon")]
    SMon,
    #[serde(rename = "smon_d")]
    SMonD,
    #[serde(rename = "smon_b")]
    SMonB,
    Mon,
    MonD,
    MonB,
    #[serde(rename = "wmon")]
    WMon,
    #[serde(rename = "wmon_d")]
    WMonD,
    #[serde(rename = "wmon_b")]
    WMonB,
    Caut,
    CautTar,
    CautFin,
    CautInf,
    Bc,
    Ex,
}

impl Restriction {
    pub const ALL: [Restriction; 16] = [
        Restriction::Cons,
        Restriction::SMon,
        Restriction::SMonD,
        Restriction::SMonB,
        Restriction::Mon,
        Restriction::MonD,
        Restriction::MonB,
        Restriction::WMon,
        Restriction::WMonD,
        Restriction::WMonB,
        Restriction::Caut,
        Restriction::CautTar,
        Restriction::CautFin,
        Restriction::CautInf,
        Restriction::Bc,
        Restriction::Ex,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Restriction::Cons => "cons",
            Restriction::SMon => "smon",
            Restriction::SMonD => "smon_d",
            Restriction::SMonB => "smon_b",
            Restriction::Mon => "mon",
            Restriction::MonD => "mon_d",
            Restriction::MonB => "mon_b",
            Restriction::WMon => "wmon",
            Restriction::WMonD => "wmon_d",
            Restriction::WMonB => "wmon_b",
            Restriction::Caut => "caut",
            Restriction::CautTar => "caut_tar",
            Restriction::CautFin => "caut_fin",
            Restriction::CautInf => "caut_inf",
            Restriction::Bc => "bc",
            Restriction::Ex => "ex",
        }
    }

    pub fn is_convergence(self) -> bool {
        matches!(self, Restriction::Bc | Restriction::Ex)
    }

    /// Only Ex looks at labels.
    pub fn is_semantic(self) -> bool {
        self != Restriction::Ex
    }

    /// Only Cons breaks under skipping or repeating conjectures.
    pub fn is_delayable(self) -> bool {
        self != Restriction::Cons
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Restriction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Restriction::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| format!("unknown restriction {s:?}"))
    }
}

/// Where a verdict's claim can be re-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A single conjecture fails: Cons at index `n` (on `element`), or
    /// CautTar at `n` (`element` is in the conjecture but not the target).
    Index { n: usize, element: u64 },
    /// Conjectures `s ≤ t` violate a pairwise relation; `element` separates them.
    Pair { s: usize, t: usize, element: u64 },
    /// Every conjecture from `n` on is correct (and, for Ex, has one label).
    StableFrom { n: usize },
    /// Bc: the conjecture at `n` is not the target.
    Wrong { n: usize },
    /// Ex: the labels at `n - 1` and `n` differ although both are correct.
    LabelChange { n: usize },
    /// Nothing was observed.
    EmptyHorizon,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Index { n, element } => write!(f, "n={n} x={element}"),
            Certificate::Pair { s, t, element } => write!(f, "s={s} t={t} x={element}"),
            Certificate::StableFrom { n } => write!(f, "n*={n}"),
            Certificate::Wrong { n } => write!(f, "wrong at n={n}"),
            Certificate::LabelChange { n } => write!(f, "label change at n={n}"),
            Certificate::EmptyHorizon => f.write_str("empty horizon"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub restriction: Restriction,
    pub satisfied: bool,
    pub certificate: Option<Certificate>,
    pub detail: String,
}

impl Verdict {
    fn ok(restriction: Restriction) -> Self {
        Verdict { restriction, satisfied: true, certificate: None, detail: String::new() }
    }

    fn with(restriction: Restriction, satisfied: bool, certificate: Certificate, detail: String) -> Self {
        Verdict { restriction, satisfied, certificate: Some(certificate), detail }
    }

    /// The index where convergence starts, for satisfied Bc and Ex verdicts.
    pub fn stabilization(&self) -> Option<usize> {
        match self.certificate {
            Some(Certificate::StableFrom { n }) if self.satisfied => Some(n),
            _ => None,
        }
    }

    /// Re-evaluates the defining relation at the certificate.
    ///
    /// A violation revalidates when the relation really fails there; a
    /// satisfied verdict revalidates when a fresh check agrees with it.
    pub fn revalidate(&self, p: &HypSequence, informant: &Informant) -> bool {
        if self.satisfied {
            return check(self.restriction, p, informant) == *self;
        }
        let Some(cert) = &self.certificate else { return false };
        relation_fails_at(self.restriction, cert, p, informant)
    }
}

fn relation_fails_at(r: Restriction, cert: &Certificate, p: &HypSequence, informant: &Informant) -> bool {
    let target = informant.target();
    let ext = |i: usize| p.items.get(i).map(|h| h.extension());
    match (r, cert) {
        (Restriction::Cons, &Certificate::Index { n, element }) => {
            let Some(w) = ext(n) else { return false };
            let data = informant.prefix(n);
            let shown = data.items().iter().find(|e| e.value == element);
            shown.is_some_and(|e| w.contains(element) != e.positive) && !consistent(w, &data)
        }
        (Restriction::CautTar, &Certificate::Index { n, element }) => ext(n).is_some_and(|w| {
            w.is_proper_superset(target) && w.contains(element) && !target.contains(element)
        }),
        (Restriction::Bc, &Certificate::Wrong { n }) => {
            n + 1 == p.len() && ext(n).is_some_and(|w| w != target)
        }
        (Restriction::Bc | Restriction::Ex, Certificate::EmptyHorizon) => p.is_empty(),
        (Restriction::Ex, &Certificate::Wrong { n }) => relation_fails_at(Restriction::Bc, &Certificate::Wrong { n }, p, informant),
        (Restriction::Ex, &Certificate::LabelChange { n }) => {
            n >= 1
                && n < p.len()
                && p.items[n - 1].label() != p.items[n].label()
                && p.items[n - 1..].iter().all(|h| h.extension() == target)
        }
        (_, &Certificate::Pair { s, t, element }) => {
            let (Some(ws), Some(wt)) = (ext(s), ext(t)) else { return false };
            if s > t {
                return false;
            }
            let cons_gate = || consistent(ws, &informant.prefix(t));
            let smon = || ws.contains(element) && !wt.contains(element);
            let smon_d = || wt.contains(element) && !ws.contains(element);
            let mon = || smon() && target.contains(element);
            let mon_d = || smon_d() && !target.contains(element);
            let descent = || s < t && ws.is_proper_superset(wt) && smon();
            match r {
                Restriction::SMon => smon(),
                Restriction::SMonD => smon_d(),
                Restriction::SMonB => smon() || smon_d(),
                Restriction::Mon => mon(),
                Restriction::MonD => mon_d(),
                Restriction::MonB => mon() || mon_d(),
                Restriction::WMon => cons_gate() && smon(),
                Restriction::WMonD => cons_gate() && smon_d(),
                Restriction::WMonB => cons_gate() && (smon() || smon_d()),
                Restriction::Caut => descent(),
                Restriction::CautFin => descent() && wt.is_finite(),
                Restriction::CautInf => descent() && !wt.is_finite(),
                _ => false,
            }
        }
        _ => false,
    }
}

pub fn check(r: Restriction, p: &HypSequence, informant: &Informant) -> Verdict {
    match r {
        Restriction::Cons => check_cons(p, informant),
        Restriction::Bc => check_bc(p, informant.target()),
        Restriction::Ex => check_ex(p, informant.target()),
        Restriction::Caut | Restriction::CautTar | Restriction::CautFin | Restriction::CautInf => {
            check_cautious(r, p, informant)
        }
        _ => check_monotone(r, p, informant),
    }
}

/// Cons: every conjecture agrees with the data it was made on.
pub fn check_cons(p: &HypSequence, informant: &Informant) -> Verdict {
    let data = informant.prefix(p.len().saturating_sub(1));
    for (n, h) in p.items.iter().enumerate() {
        let w = h.extension();
        if let Some(e) = data.items()[..n].iter().find(|e| w.contains(e.value) != e.positive) {
            return Verdict::with(
                Restriction::Cons,
                false,
                Certificate::Index { n, element: e.value },
                format!("conjecture {w} at n={n} disagrees with {e}"),
            );
        }
    }
    Verdict::ok(Restriction::Cons)
}

fn min_of_difference(a: &UpSet, b: &UpSet) -> Option<u64> {
    a.difference(b).min_element()
}

/// The earliest pair `s ≤ t` (by `t`, then `s`) on which `bad` finds an element.
fn scan_pairs(
    p: &HypSequence,
    strict: bool,
    mut bad: impl FnMut(usize, usize) -> Option<u64>,
) -> Option<(usize, usize, u64)> {
    for t in 0..p.len() {
        for s in 0..=t {
            if strict && s == t {
                continue;
            }
            if p.items[s].extension() == p.items[t].extension() {
                continue;
            }
            if let Some(x) = bad(s, t) {
                return Some((s, t, x));
            }
        }
    }
    None
}

/// The (strong, weak) monotonicity variants and their dual and combined forms.
pub fn check_monotone(variant: Restriction, p: &HypSequence, informant: &Informant) -> Verdict {
    let target = informant.target();
    let complement = target.complement();
    // Cons(p(s), I[t]) holds exactly for t ≤ first disagreement of p(s).
    let cons_until: Vec<usize> = if matches!(variant, Restriction::WMon | Restriction::WMonD | Restriction::WMonB) {
        let data = informant.prefix(p.len().saturating_sub(1));
        p.items
            .iter()
            .map(|h| {
                data.items()
                    .iter()
                    .position(|e| h.extension().contains(e.value) != e.positive)
                    .map_or(usize::MAX, |k| k + 1)
            })
            .collect()
    } else {
        Vec::new()
    };
    let w = |i: usize| p.items[i].extension();
    let up = |s: usize, t: usize| min_of_difference(w(s), w(t));
    let down = |s: usize, t: usize| min_of_difference(w(t), w(s));
    let mon = |s: usize, t: usize| min_of_difference(&w(s).intersection(target), w(t));
    let mon_d = |s: usize, t: usize| min_of_difference(&w(t).intersection(&complement), w(s));
    let gated = |s: usize, t: usize| t < cons_until[s];
    let found = match variant {
        Restriction::SMon => scan_pairs(p, false, up),
        Restriction::SMonD => scan_pairs(p, false, down),
        Restriction::SMonB => scan_pairs(p, false, |s, t| up(s, t).or_else(|| down(s, t))),
        Restriction::Mon => scan_pairs(p, false, mon),
        Restriction::MonD => scan_pairs(p, false, mon_d),
        Restriction::MonB => scan_pairs(p, false, |s, t| mon(s, t).or_else(|| mon_d(s, t))),
        Restriction::WMon => scan_pairs(p, false, |s, t| if gated(s, t) { up(s, t) } else { None }),
        Restriction::WMonD => scan_pairs(p, false, |s, t| if gated(s, t) { down(s, t) } else { None }),
        Restriction::WMonB => scan_pairs(p, false, |s, t| {
            if gated(s, t) {
                up(s, t).or_else(|| down(s, t))
            } else {
                None
            }
        }),
        other => panic!("{other} is not a monotonicity restriction"),
    };
    match found {
        None => Verdict::ok(variant),
        Some((s, t, element)) => Verdict::with(
            variant,
            false,
            Certificate::Pair { s, t, element },
            format!("{} at s={s}, {} at t={t}, separated by {element}", w(s), w(t)),
        ),
    }
}

/// Caut and its target, finite and infinite variants.
pub fn check_cautious(variant: Restriction, p: &HypSequence, informant: &Informant) -> Verdict {
    let w = |i: usize| p.items[i].extension();
    if variant == Restriction::CautTar {
        let target = informant.target();
        for n in 0..p.len() {
            if w(n).is_proper_superset(target) {
                let element = min_of_difference(w(n), target).expect("proper superset");
                return Verdict::with(
                    variant,
                    false,
                    Certificate::Index { n, element },
                    format!("{} at n={n} is a proper superset of the target {target}", w(n)),
                );
            }
        }
        return Verdict::ok(variant);
    }
    let descent = |s: usize, t: usize| {
        if !w(s).is_proper_superset(w(t)) {
            return None;
        }
        let allowed = match variant {
            Restriction::Caut => false,
            Restriction::CautFin => !w(t).is_finite(),
            Restriction::CautInf => w(t).is_finite(),
            other => panic!("{other} is not a cautiousness restriction"),
        };
        if allowed {
            None
        } else {
            min_of_difference(w(s), w(t))
        }
    };
    match scan_pairs(p, true, descent) {
        None => Verdict::ok(variant),
        Some((s, t, element)) => Verdict::with(
            variant,
            false,
            Certificate::Pair { s, t, element },
            format!("{} at s={s} properly contains {} at t={t}", w(s), w(t)),
        ),
    }
}

/// Bc on the horizon: the minimal `n*` from which every conjecture is `target`.
pub fn check_bc(p: &HypSequence, target: &UpSet) -> Verdict {
    if p.is_empty() {
        return Verdict::with(Restriction::Bc, false, Certificate::EmptyHorizon, "no conjectures".into());
    }
    let last = p.len() - 1;
    if p.items[last].extension() != target {
        return Verdict::with(
            Restriction::Bc,
            false,
            Certificate::Wrong { n: last },
            format!("last conjecture {} differs from {target}", p.items[last].extension()),
        );
    }
    let n = p.items.iter().rposition(|h| h.extension() != target).map_or(0, |i| i + 1);
    Verdict::with(Restriction::Bc, true, Certificate::StableFrom { n }, format!("correct from n*={n}"))
}

/// Ex on the horizon: Bc holds from `n*` and the label is constant from `n*` on.
pub fn check_ex(p: &HypSequence, target: &UpSet) -> Verdict {
    let bc = check_bc(p, target);
    let Some(n) = bc.stabilization() else {
        return Verdict { restriction: Restriction::Ex, ..bc };
    };
    let label = p.items[n].label();
    match p.items[n..].iter().rposition(|h| h.label() != label) {
        None => Verdict::with(
            Restriction::Ex,
            true,
            Certificate::StableFrom { n },
            format!("label {label} correct from n*={n}"),
        ),
        Some(_) => {
            let change = (n + 1..p.len()).rev().find(|&i| p.items[i].label() != p.items[i - 1].label()).expect("a change exists");
            Verdict::with(
                Restriction::Ex,
                false,
                Certificate::LabelChange { n: change },
                format!("correct from n*={n} but the label changes at n={change}"),
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("the informants have different targets ({0} and {1})")]
    DifferentTargets(UpSet, UpSet),
    #[error("the step map decreases at n={0}")]
    NotMonotone(usize),
    #[error("content(I[s({n})]) is not contained in content(I'[{n}])")]
    ContentNotCovered { n: usize },
    #[error("sequences have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("conjectures at n={0} are not semantically equivalent")]
    NotEquivalent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelayProbe {
    pub original: Verdict,
    pub delayed: Verdict,
    /// `original` satisfied implies `delayed` satisfied.
    pub implication_holds: bool,
}

/// One instance of the delayability implication: `δ(p, I) ⟹ δ(p∘s, I′)`.
///
/// `p∘s` is evaluated for every `n < |p|` with `s(n) < |p|`.
pub fn probe_delayability(
    r: Restriction,
    p: &HypSequence,
    informant: &Informant,
    other: &Informant,
    s: impl Fn(usize) -> usize,
) -> Result<DelayProbe, ProbeError> {
    if informant.target() != other.target() {
        return Err(ProbeError::DifferentTargets(informant.target().clone(), other.target().clone()));
    }
    let horizon = (0..p.len()).take_while(|&n| s(n) < p.len()).count();
    let mut items = Vec::with_capacity(horizon);
    for n in 0..horizon {
        if n > 0 && s(n) < s(n - 1) {
            return Err(ProbeError::NotMonotone(n));
        }
        let seen = informant.prefix(s(n)).content();
        if !seen.is_subset(&other.prefix(n).content()) {
            return Err(ProbeError::ContentNotCovered { n });
        }
        items.push(p.items[s(n)].clone());
    }
    let mut delayed_seq = HypSequence::from_items(items);
    delayed_seq.provenance.learner = format!("{} delayed", p.provenance.learner);
    let original = check(r, p, informant);
    let delayed = check(r, &delayed_seq, other);
    let implication_holds = !original.satisfied || delayed.satisfied;
    Ok(DelayProbe { original, delayed, implication_holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticProbe {
    pub original: Verdict,
    pub replaced: Verdict,
    pub equal: bool,
}

/// Compares the verdicts on `p` and on a pointwise equivalent `q`.
pub fn probe_semantic(
    r: Restriction,
    p: &HypSequence,
    q: &HypSequence,
    informant: &Informant,
) -> Result<SemanticProbe, ProbeError> {
    if p.len() != q.len() {
        return Err(ProbeError::LengthMismatch(p.len(), q.len()));
    }
    if let Some(n) = (0..p.len()).find(|&n| !p.items[n].sem_equiv(&q.items[n])) {
        return Err(ProbeError::NotEquivalent(n));
    }
    let original = check(r, p, informant);
    let replaced = check(r, q, informant);
    let equal = original.satisfied == replaced.satisfied;
    Ok(SemanticProbe { original, replaced, equal })
}

/// Implications between restrictions that every checked sequence must obey.
/// Returns a description of each one that fails on `(p, I)`.
pub fn lattice_counterexamples(p: &HypSequence, informant: &Informant) -> Vec<String> {
    use Restriction::*;
    let verdicts: std::collections::BTreeMap<Restriction, bool> =
        Restriction::ALL.into_iter().map(|r| (r, check(r, p, informant).satisfied)).collect();
    let v = |r: Restriction| verdicts[&r];
    let rules: [(&str, bool, bool); 16] = [
        ("smon => mon", v(SMon), v(Mon)),
        ("smon => wmon", v(SMon), v(WMon)),
        ("smon => caut", v(SMon), v(Caut)),
        ("smon_d => mon_d", v(SMonD), v(MonD)),
        ("smon_d => wmon_d", v(SMonD), v(WMonD)),
        ("smon & bc => mon_b", v(SMon) && v(Bc), v(MonB)),
        ("smon_d & bc => mon_b", v(SMonD) && v(Bc), v(MonB)),
        ("caut => caut_fin & caut_inf", v(Caut), v(CautFin) && v(CautInf)),
        ("caut_fin & caut_inf => caut", v(CautFin) && v(CautInf), v(Caut)),
        ("caut & bc => caut_tar", v(Caut) && v(Bc), v(CautTar)),
        ("smon_b <=> smon & smon_d", v(SMonB), v(SMon) && v(SMonD)),
        ("smon & smon_d => smon_b", v(SMon) && v(SMonD), v(SMonB)),
        ("mon_b <=> mon & mon_d", v(MonB) != (v(Mon) && v(MonD)), false),
        ("wmon_b <=> wmon & wmon_d", v(WMonB) != (v(WMon) && v(WMonD)), false),
        ("smon_b => mon_b & wmon_b", v(SMonB), v(MonB) && v(WMonB)),
        ("ex => bc", v(Ex), v(Bc)),
    ];
    rules
        .into_iter()
        .filter(|&(_, premise, conclusion)| premise && !conclusion)
        .map(|(name, _, _)| format!("{name} fails on {} / {}", p.provenance.learner, p.provenance.informant))
        .collect()
}
