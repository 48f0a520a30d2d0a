//! Named languages, language families and learners, constructible by id.
//!
//! Parameters are `key=value` pairs separated by whitespace; values are
//! naturals, set literals `{1,3}` or set notation `P|Q`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evidence::{DataSet, Labeled};
use crate::hypothesis::{Hypothesis, Label};
use crate::interaction::{Interface, Learner};
use crate::restrictions::Restriction;
use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown {kind} id {id:?}")]
    Unknown { kind: &'static str, id: String },
    #[error("missing parameter {0:?}")]
    MissingParam(String),
    #[error("unexpected parameter {0:?}")]
    UnexpectedParam(String),
    #[error("bad value for parameter {key:?}: {value:?}")]
    BadValue { key: String, value: String },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamValue {
    Nat(u64),
    Set(BTreeSet<u64>),
    UpSet(UpSet),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Nat(n) => write!(f, "{n}"),
            ParamValue::Set(s) => {
                let items: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            ParamValue::UpSet(s) => write!(f, "{s}"),
        }
    }
}

/// Parsed `key=value` parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, ParamValue>);

impl Params {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut out = BTreeMap::new();
        for token in text.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| CatalogError::BadValue {
                key: token.to_string(),
                value: String::new(),
            })?;
            let bad = || CatalogError::BadValue { key: key.to_string(), value: value.to_string() };
            let parsed = if let Some(inner) = value.strip_prefix('{').and_then(|v| v.strip_suffix('}')) {
                let set = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<BTreeSet<u64>, _>>()?;
                ParamValue::Set(set)
            } else if value.contains('|') {
                ParamValue::UpSet(value.parse().map_err(|_| bad())?)
            } else {
                ParamValue::Nat(value.parse().map_err(|_| bad())?)
            };
            out.insert(key.to_string(), parsed);
        }
        Ok(Params(out))
    }

    pub fn with(mut self, key: &str, value: ParamValue) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }

    fn nat(&self, key: &str) -> Result<u64, CatalogError> {
        match self.0.get(key) {
            Some(ParamValue::Nat(n)) => Ok(*n),
            Some(other) => Err(CatalogError::BadValue { key: key.into(), value: other.to_string() }),
            None => Err(CatalogError::MissingParam(key.into())),
        }
    }

    fn set(&self, key: &str) -> Result<BTreeSet<u64>, CatalogError> {
        match self.0.get(key) {
            Some(ParamValue::Set(s)) => Ok(s.clone()),
            Some(ParamValue::Nat(n)) => Ok(BTreeSet::from([*n])),
            Some(other) => Err(CatalogError::BadValue { key: key.into(), value: other.to_string() }),
            None => Err(CatalogError::MissingParam(key.into())),
        }
    }

    fn upset(&self, key: &str) -> Result<UpSet, CatalogError> {
        match self.0.get(key) {
            Some(ParamValue::UpSet(s)) => Ok(s.clone()),
            Some(other) => Err(CatalogError::BadValue { key: key.into(), value: other.to_string() }),
            None => Err(CatalogError::MissingParam(key.into())),
        }
    }

    fn only(&self, allowed: &[&str]) -> Result<(), CatalogError> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CatalogError::UnexpectedParam(k.clone())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `a_i = 3i`, `b_i = 3i + 1`, `c_i = 3i + 2`.
pub fn a(i: u64) -> u64 {
    3 * i
}

pub fn b(i: u64) -> u64 {
    3 * i + 1
}

pub fn c(i: u64) -> u64 {
    3 * i + 2
}

/// `{a_i : i ∈ ℕ}`.
pub fn stream_x() -> UpSet {
    UpSet::progression(0, 3)
}

/// `{a_i : i ≤ n} ∪ {b_i : n < i}`.
pub fn stream_y(n: u64) -> UpSet {
    let cut = 3 * (n + 1);
    UpSet::from_fn(cut as usize, 3, move |x| if x < cut { x % 3 == 0 } else { x % 3 == 1 })
}

/// `{a_i : i ≤ n} ∪ {b_i : n < i ≤ m} ∪ {c_m}`; defined for any `n, m`.
pub fn stream_z(n: u64, m: u64) -> UpSet {
    let mut members: BTreeSet<u64> = (0..=n).map(a).collect();
    members.extend((n + 1..=m).map(b));
    members.insert(c(m));
    UpSet::finite(members)
}

/// `2ℕ`.
pub fn even_x() -> UpSet {
    UpSet::progression(0, 2)
}

/// `{2n + 1} ∪ {2i : i ≤ n}`.
pub fn even_y(n: u64) -> UpSet {
    UpSet::finite((0..=n).map(|i| 2 * i).chain([2 * n + 1]))
}

/// `Y_n ∪ {2m}`.
pub fn even_z(n: u64, m: u64) -> UpSet {
    even_y(n).union(&UpSet::finite([2 * m]))
}

/// The language named by `id` with `params`.
pub fn language(id: &str, params: &Params) -> Result<UpSet, CatalogError> {
    let range = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(CatalogError::OutOfRange(msg.into())) };
    match id {
        "finite" => {
            params.only(&["elems"])?;
            Ok(UpSet::finite(params.set("elems")?))
        }
        "cofinite" => {
            params.only(&["remove"])?;
            Ok(UpSet::cofinite(params.set("remove")?))
        }
        "segment" => {
            params.only(&["n"])?;
            Ok(UpSet::segment(params.nat("n")?))
        }
        "nat" => {
            params.only(&[])?;
            Ok(UpSet::full())
        }
        "empty" => {
            params.only(&[])?;
            Ok(UpSet::empty())
        }
        "set" => {
            params.only(&["set"])?;
            params.upset("set")
        }
        "streamX" => {
            params.only(&[])?;
            Ok(stream_x())
        }
        "streamY" => {
            params.only(&["n"])?;
            Ok(stream_y(params.nat("n")?))
        }
        "streamZ" => {
            params.only(&["n", "m"])?;
            let (n, m) = (params.nat("n")?, params.nat("m")?);
            range(n < m, "streamZ needs n < m")?;
            Ok(stream_z(n, m))
        }
        "evenX" => {
            params.only(&[])?;
            Ok(even_x())
        }
        "evenY" => {
            params.only(&["n"])?;
            Ok(even_y(params.nat("n")?))
        }
        "evenZ" => {
            params.only(&["n", "m"])?;
            let (n, m) = (params.nat("n")?, params.nat("m")?);
            range(n < m, "evenZ needs n < m")?;
            Ok(even_z(n, m))
        }
        _ => Err(CatalogError::Unknown { kind: "language", id: id.into() }),
    }
}

/// Bounds used to materialize finitely many members of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Sweep {
    /// Largest element of finite sets and removed sets.
    pub universe: u64,
    /// Largest size of finite sets and removed sets.
    pub max_size: usize,
    pub max_n: u64,
    pub max_m: u64,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep { universe: 7, max_size: 2, max_n: 8, max_m: 12 }
    }
}

/// A family member: the language id with parameters, and its set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub description: String,
    pub set: UpSet,
}

fn member(id: &str, params: String, set: UpSet) -> Member {
    let description = if params.is_empty() { id.to_string() } else { format!("{id} {params}") };
    Member { description, set }
}

fn subsets_upto(universe: u64, max_size: usize) -> Vec<BTreeSet<u64>> {
    let mut out = vec![BTreeSet::new()];
    let mut frontier = vec![BTreeSet::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&x: &u64| x + 1);
            for x in start..=universe {
                let mut t = s.clone();
                t.insert(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn set_param(s: &BTreeSet<u64>) -> String {
    ParamValue::Set(s.clone()).to_string()
}

pub const FAMILIES: [&str; 6] = ["finite", "cofinite", "segments_or_N", "N_or_finite", "streamXYZ", "evenXYZ"];

/// The members of a family within the sweep bounds, in a fixed order.
pub fn family(id: &str, sweep: &Sweep) -> Result<Vec<Member>, CatalogError> {
    let sets = || subsets_upto(sweep.universe, sweep.max_size);
    let finite = || {
        sets().into_iter().map(|s| member("finite", format!("elems={}", set_param(&s)), UpSet::finite(s.iter().copied())))
    };
    let mut out: Vec<Member> = match id {
        "finite" => finite().collect(),
        "cofinite" => sets()
            .into_iter()
            .map(|s| member("cofinite", format!("remove={}", set_param(&s)), UpSet::cofinite(s.iter().copied())))
            .collect(),
        "segments_or_N" => std::iter::once(member("nat", String::new(), UpSet::full()))
            .chain((0..=sweep.max_n).map(|n| member("segment", format!("n={n}"), UpSet::segment(n))))
            .collect(),
        "N_or_finite" => std::iter::once(member("nat", String::new(), UpSet::full())).chain(finite()).collect(),
        "streamXYZ" | "evenXYZ" => {
            let (prefix, x, y, z): (&str, fn() -> UpSet, fn(u64) -> UpSet, fn(u64, u64) -> UpSet) = if id == "streamXYZ" {
                ("stream", stream_x, stream_y, stream_z)
            } else {
                ("even", even_x, even_y, even_z)
            };
            let mut v = vec![member(&format!("{prefix}X"), String::new(), x())];
            for n in 0..=sweep.max_n {
                v.push(member(&format!("{prefix}Y"), format!("n={n}"), y(n)));
            }
            for n in 0..=sweep.max_n {
                for m in n + 1..=sweep.max_m {
                    v.push(member(&format!("{prefix}Z"), format!("n={n} m={m}"), z(n, m)));
                }
            }
            v
        }
        _ => return Err(CatalogError::Unknown { kind: "family", id: id.into() }),
    };
    out.dedup_by(|x, y| x.set == y.set);
    Ok(out)
}

fn semantic(name: &str, f: impl Fn(&DataSet) -> UpSet + Send + Sync + 'static) -> Learner {
    Learner::set_driven(name.to_string(), move |d| Hypothesis::for_set(f(d)))
}

fn gold_semantic(name: &str, f: impl Fn(&BTreeSet<u64>, &BTreeSet<u64>) -> UpSet + Send + Sync + 'static) -> Learner {
    Learner::gold(name.to_string(), move |sigma| Hypothesis::for_set(f(&sigma.pos(), &sigma.neg())))
}

/// Conjectures `pos(D)`.
pub fn fin_pos() -> Learner {
    semantic("fin_pos", |d| UpSet::finite(d.pos()))
}

/// Conjectures `ℕ ∖ neg(D)`.
pub fn cofinite() -> Learner {
    semantic("cofinite", |d| UpSet::cofinite(d.neg()))
}

/// Label `max(pos(D))` with extension `pos(D)`; the reserved initial label
/// when there are no positives.
pub fn maxpos() -> Learner {
    Learner::set_driven("maxpos", |d| {
        let pos = d.pos();
        let label = pos.last().map_or(Label::INITIAL, |&x| Label(x));
        Hypothesis::new(label, UpSet::finite(pos))
    })
}

/// `ℕ` while no negatives are known, else `{0, …, min(neg(σ)) − 1}`.
pub fn segment() -> Learner {
    gold_semantic("segment", |_, neg| match neg.first() {
        None => UpSet::full(),
        Some(&m) => UpSet::finite(0..m),
    })
}

/// Z, Y or X of the stream family depending on the boundaries seen.
pub fn stream_mon() -> Learner {
    gold_semantic("stream_mon", |pos, _| {
        let n = pos.iter().map(|&x| x / 3).find(|&n| pos.contains(&a(n)) && pos.contains(&b(n + 1)));
        match n {
            None => stream_x(),
            Some(n) => match pos.iter().find(|&&x| x % 3 == 2) {
                Some(&cm) => stream_z(n, cm / 3),
                None => stream_y(n),
            },
        }
    })
}

/// Z, Y or X of the even family depending on the odd element and later evens.
pub fn even_dualmon() -> Learner {
    gold_semantic("even_dualmon", |pos, _| {
        let n = pos.iter().filter(|&&x| x % 2 == 1).map(|&x| x / 2).find(|&n| pos.contains(&(2 * n)));
        match n {
            None => even_x(),
            Some(n) => match pos.iter().find(|&&x| x % 2 == 0 && x / 2 > n) {
                Some(&even) => even_z(n, even / 2),
                None => even_y(n),
            },
        }
    })
}

/// `ℕ` while no negatives are known, else `pos(σ)`.
pub fn n_or_fin() -> Learner {
    gold_semantic("n_or_fin", |pos, neg| {
        if neg.is_empty() {
            UpSet::full()
        } else {
            UpSet::finite(pos.iter().copied())
        }
    })
}

/// Always the same conjecture.
pub fn constant(set: UpSet) -> Learner {
    let label = Label::for_set(&set);
    Learner::set_driven(format!("constant({set})"), move |_| Hypothesis::new(label, set.clone()))
}

/// `pos(D)` under a label that encodes all of `D`.
pub fn memorizer() -> Learner {
    Learner::set_driven("memorizer", |d| {
        Hypothesis::new(Label::derive(&[b"memorizer", d.to_string().as_bytes()]), UpSet::finite(d.pos()))
    })
}

/// `pos` as an iterative learner: adds each positive example to the previous
/// conjecture.
pub fn fin_pos_it() -> Learner {
    Learner::iterative("fin_pos_it", |h, e| {
        if e.positive {
            Hypothesis::for_set(h.extension().union(&UpSet::finite([e.value])))
        } else if h.label() == Label::INITIAL {
            Hypothesis::for_set(h.extension().clone())
        } else {
            h.clone()
        }
    })
}

/// `ℕ ∖ neg(D)` under a label that also encodes the step count, so it never
/// settles on one label.
pub fn cofinite_psd() -> Learner {
    Learner::partially_set_driven("cofinite_psd", |d, n| {
        let set = UpSet::cofinite(d.neg());
        let label = Label::derive(&[b"cofinite_psd", set.to_string().as_bytes(), &(n as u64).to_le_bytes()]);
        Hypothesis::new(label, set)
    })
}

/// The learner named by `id` with `params`.
pub fn learner(id: &str, params: &Params) -> Result<Learner, CatalogError> {
    let plain = |l: Learner| params.only(&[]).map(|_| l);
    match id {
        "fin_pos" => plain(fin_pos()),
        "cofinite" => plain(cofinite()),
        "maxpos" => plain(maxpos()),
        "segment" => plain(segment()),
        "stream_mon" => plain(stream_mon()),
        "even_dualmon" => plain(even_dualmon()),
        "n_or_fin" => plain(n_or_fin()),
        "memorizer" => plain(memorizer()),
        "fin_pos_it" => plain(fin_pos_it()),
        "cofinite_psd" => plain(cofinite_psd()),
        "const_empty" => plain(constant(UpSet::empty())),
        "constant" => {
            params.only(&["set"])?;
            Ok(constant(params.upset("set")?))
        }
        _ => Err(CatalogError::Unknown { kind: "learner", id: id.into() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListKind {
    Languages,
    Families,
    Learners,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub id: &'static str,
    pub params: &'static str,
    pub interface: Option<Interface>,
    /// Restrictions the learner satisfies on `family`, or the family's role.
    pub supports: Vec<Restriction>,
    pub family: Option<&'static str>,
    pub note: &'static str,
}

fn entry(
    id: &'static str,
    params: &'static str,
    interface: Option<Interface>,
    family: Option<&'static str>,
    note: &'static str,
    supports: &[Restriction],
) -> Entry {
    Entry { id, params, interface, supports: supports.to_vec(), family, note }
}

pub fn list(kind: ListKind) -> Vec<Entry> {
    use Interface::*;
    use Restriction::*;
    match kind {
        ListKind::Languages => vec![
            entry("finite", "elems={..}", None, Some("finite"), "a finite set", &[]),
            entry("cofinite", "remove={..}", None, Some("cofinite"), "ℕ minus a finite set", &[]),
            entry("segment", "n=", None, Some("segments_or_N"), "{0, …, n}", &[]),
            entry("nat", "", None, Some("segments_or_N"), "ℕ", &[]),
            entry("empty", "", None, None, "∅", &[]),
            entry("set", "set=P|Q", None, None, "any ultimately periodic set", &[]),
            entry("streamX", "", None, Some("streamXYZ"), "{3i}", &[]),
            entry("streamY", "n=", None, Some("streamXYZ"), "{3i : i ≤ n} ∪ {3i+1 : i > n}", &[]),
            entry("streamZ", "n= m= (n<m)", None, Some("streamXYZ"), "{3i : i ≤ n} ∪ {3i+1 : n < i ≤ m} ∪ {3m+2}", &[]),
            entry("evenX", "", None, Some("evenXYZ"), "2ℕ", &[]),
            entry("evenY", "n=", None, Some("evenXYZ"), "{2i : i ≤ n} ∪ {2n+1}", &[]),
            entry("evenZ", "n= m= (n<m)", None, Some("evenXYZ"), "evenY n ∪ {2m}", &[]),
        ],
        ListKind::Families => vec![
            entry("finite", "universe max_size", None, None, "learnable strongly monotonically, not dual strongly monotonically", &[]),
            entry("cofinite", "universe max_size", None, None, "learnable monotonically, not target-cautiously", &[]),
            entry("segments_or_N", "max_n", None, None, "learnable dual strongly monotonically, not strongly monotonically", &[]),
            entry("N_or_finite", "universe max_size", None, None, "learnable, not finitely cautiously", &[]),
            entry("streamXYZ", "max_n max_m", None, None, "learnable monotonically, not dual monotonically", &[]),
            entry("evenXYZ", "max_n max_m", None, None, "learnable dual monotonically, not monotonically", &[]),
        ],
        ListKind::Learners => vec![
            entry("fin_pos", "", Some(Sd), Some("finite"), "pos(D)", &[SMon, Bc]),
            entry("cofinite", "", Some(Sd), Some("cofinite"), "ℕ ∖ neg(D)", &[Mon, Bc]),
            entry("maxpos", "", Some(Sd), Some("finite"), "label max(pos(D)), extension pos(D)", &[SMon, Bc]),
            entry("segment", "", Some(G), Some("segments_or_N"), "ℕ, or {0, …, min(neg) − 1}", &[SMonD, Bc]),
            entry("stream_mon", "", Some(G), Some("streamXYZ"), "Z, Y or X by the boundaries seen", &[Mon, Bc]),
            entry("even_dualmon", "", Some(G), Some("evenXYZ"), "Z, Y or X by the odd element seen", &[MonD, Bc]),
            entry("n_or_fin", "", Some(G), Some("N_or_finite"), "ℕ, or pos(σ) once a negative is seen", &[Bc]),
            entry("memorizer", "", Some(Sd), Some("finite"), "pos(D) under a label encoding D", &[SMon, Bc]),
            entry("fin_pos_it", "", Some(It), Some("finite"), "pos, iteratively", &[SMon, Bc]),
            entry("cofinite_psd", "", Some(Psd), Some("cofinite"), "ℕ ∖ neg(D) under step-dependent labels", &[Mon, Bc]),
            entry("constant", "set=P|Q", Some(Sd), None, "always the given set", &[SMonB, Ex]),
            entry("const_empty", "", Some(Sd), None, "always ∅", &[SMonB]),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{DataSequence, Informant};
    use crate::interaction::run;

    fn params(s: &str) -> Params {
        Params::parse(s).unwrap()
    }

    fn seq(s: &str) -> DataSequence {
        s.parse().unwrap()
    }

    #[test]
    fn language_examples() {
        assert_eq!(language("cofinite", &params("remove={1}")).unwrap().to_string(), "10|1");
        let y0 = language("streamY", &params("n=0")).unwrap();
        assert_eq!(y0.elements_upto(12), vec![0, 4, 7, 10]);
        assert_eq!(y0.to_string(), "10|001");
        let z = language("evenZ", &params("n=1 m=2")).unwrap();
        assert_eq!(z.finite_elements(), Some(vec![0, 2, 3, 4]));
        assert_eq!(even_y(1).finite_elements(), Some(vec![0, 2, 3]));
        assert!(matches!(language("evenZ", &params("n=2 m=2")), Err(CatalogError::OutOfRange(_))));
        assert!(matches!(language("streamY", &params("")), Err(CatalogError::MissingParam(_))));
        assert!(matches!(language("nope", &params("")), Err(CatalogError::Unknown { .. })));
        assert_eq!(language("set", &params("set=|10")).unwrap(), even_x());
    }

    #[test]
    fn stream_sets_match_their_definitions() {
        for n in 0..5 {
            let y = stream_y(n);
            for x in 0..60 {
                let expected = (x % 3 == 0 && x / 3 <= n) || (x % 3 == 1 && x / 3 > n);
                assert_eq!(y.contains(x), expected, "Y_{n} at {x}");
            }
            for m in n + 1..8 {
                let z = stream_z(n, m);
                for x in 0..60 {
                    let i = x / 3;
                    let expected = match x % 3 {
                        0 => i <= n,
                        1 => n < i && i <= m,
                        _ => i == m,
                    };
                    assert_eq!(z.contains(x), expected, "Z_{n},{m} at {x}");
                }
            }
        }
    }

    #[test]
    fn learner_examples() {
        let d = seq("0:+,5:-").content();
        assert_eq!(fin_pos().on_set(&d).extension(), &UpSet::finite([0]));
        let sigma = seq("0:+,3:-,5:-");
        assert_eq!(segment().conjecture(&sigma).extension(), &UpSet::finite([0, 1, 2]));
        let sigma = seq("2:+,3:+");
        assert_eq!(even_dualmon().conjecture(&sigma).extension(), &even_y(1));
        let sigma = seq("2:+,3:+,10:+");
        assert_eq!(even_dualmon().conjecture(&sigma).extension(), &even_z(1, 5));
        let sigma = seq("0:+,4:+");
        assert_eq!(stream_mon().conjecture(&sigma).extension(), &stream_y(0));
        assert_eq!(stream_mon().conjecture(&seq("0:+,4:+,8:+")).extension(), &stream_z(0, 2));
        assert_eq!(n_or_fin().conjecture(&seq("0:+,1:+")).extension(), &UpSet::full());
        assert_eq!(n_or_fin().conjecture(&seq("0:+,1:-")).extension(), &UpSet::finite([0]));
        assert_eq!(maxpos().on_set(&seq("3:+,7:+,9:-").content()).label(), Label(7));
        assert_eq!(maxpos().on_set(&DataSet::empty()).label(), Label::INITIAL);
        assert!(matches!(learner("nope", &Params::default()), Err(CatalogError::Unknown { .. })));
        assert!(learner("constant", &params("set=|10")).is_ok());
    }

    #[test]
    fn iterative_pos_agrees_with_fin_pos() {
        let l = UpSet::finite([1, 4]);
        let i = Informant::scheduled(&l, 2, &[]).unwrap();
        let a = run(&fin_pos(), &i, 20);
        let b = run(&fin_pos_it(), &i, 20);
        assert!(a.items[1..].iter().zip(&b.items[1..]).all(|(x, y)| x == y));
    }

    #[test]
    fn families_materialize() {
        let sweep = Sweep::default();
        for id in FAMILIES {
            let members = family(id, &sweep).unwrap();
            assert!(!members.is_empty(), "{id}");
        }
        let even = family("evenXYZ", &sweep).unwrap();
        assert_eq!(even.len(), 1 + 9 + (0..=8u64).map(|n| 12 - n).sum::<u64>() as usize);
        assert_eq!(family("finite", &Sweep { universe: 3, max_size: 2, ..sweep }).unwrap().len(), 11);
    }

    #[test]
    fn listings() {
        let fams: Vec<&str> = list(ListKind::Families).iter().map(|e| e.id).collect();
        assert_eq!(fams, FAMILIES.to_vec());
        let learners = list(ListKind::Learners);
        for id in ["fin_pos", "cofinite", "segment", "stream_mon", "even_dualmon", "n_or_fin", "maxpos"] {
            let e = learners.iter().find(|e| e.id == id).unwrap();
            assert!(!e.supports.is_empty());
            assert!(learner(id, &Params::default()).is_ok());
        }
    }

    #[test]
    fn params_roundtrip() {
        let p = params("remove={1,3} n=2 set=10|1");
        assert_eq!(p.to_string(), "n=2 remove={1,3} set=10|1");
        assert!(Params::parse("n=x").is_err());
    }
}
