//! Separation arguments replayed as games against an opponent learner.
//!
//! Each driver builds informants stage by stage from the opponent's own
//! conjectures and returns a [`Witness`]: a restriction violation, a
//! mind-change transcript, a pair of targets the opponent cannot tell
//! apart, or a note that the search bounds ran out.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::str::FromStr;
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, b};
use crate::evidence::{validate_prefix_for, DataSequence, DataSet, Example, Informant, Labeled};
use crate::hypothesis::{Hypothesis, Label};
use crate::interaction::{HypSequence, Learner};
use crate::restrictions::{Certificate, Restriction, Verdict};
use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpponentError {
    #[error("could not start opponent: {0}")]
    Spawn(String),
    #[error("opponent i/o failed: {0}")]
    Io(String),
    #[error("opponent did not answer within {0:?}")]
    Timeout(Duration),
    #[error("malformed opponent response {0:?}")]
    Malformed(String),
    #[error("opponent exited")]
    Exited,
}

/// A learner under test, local or external.
pub trait Opponent: Send + Sync {
    fn name(&self) -> String;

    fn respond(&self, sigma: &DataSequence) -> Result<Hypothesis, OpponentError>;

    /// Conjectures on every prefix of σ, `|σ| + 1` of them.
    fn trajectory(&self, sigma: &DataSequence) -> Result<Vec<Hypothesis>, OpponentError> {
        (0..=sigma.len()).map(|n| self.respond(&sigma.prefix(n))).collect()
    }

    /// The conjecture on a finite data set.
    fn respond_to_set(&self, d: &DataSet) -> Result<Hypothesis, OpponentError> {
        self.respond(&d.to_sequence())
    }
}

impl Opponent for Learner {
    fn name(&self) -> String {
        Learner::name(self).to_string()
    }

    fn respond(&self, sigma: &DataSequence) -> Result<Hypothesis, OpponentError> {
        Ok(self.conjecture(sigma))
    }

    fn trajectory(&self, sigma: &DataSequence) -> Result<Vec<Hypothesis>, OpponentError> {
        Ok(Learner::trajectory(self, sigma))
    }

    fn respond_to_set(&self, d: &DataSet) -> Result<Hypothesis, OpponentError> {
        Ok(self.on_set(d))
    }
}

/// Formats a conjecture as a protocol response line (without newline).
pub fn format_response(h: &Hypothesis) -> String {
    format!("H {} {}", h.label(), h.extension())
}

/// Parses `H <label> <P|Q>`.
pub fn parse_response(line: &str) -> Result<Hypothesis, OpponentError> {
    let bad = || OpponentError::Malformed(line.to_string());
    let mut words = line.split_whitespace();
    if words.next() != Some("H") {
        return Err(bad());
    }
    let label = words.next().and_then(|w| w.parse().ok()).ok_or_else(bad)?;
    let ext: UpSet = words.next().and_then(|w| w.parse().ok()).ok_or_else(bad)?;
    if words.next().is_some() {
        return Err(bad());
    }
    Ok(Hypothesis::new(Label(label), ext))
}

/// Answers `Q <data-sequence>` requests with `learner`'s conjectures until
/// the input ends.
pub fn serve(learner: &Learner, input: impl BufRead, mut output: impl Write) -> std::io::Result<()> {
    for line in input.lines() {
        let line = line?;
        let reply = match line.strip_prefix('Q') {
            Some(rest) => match rest.trim().parse::<DataSequence>() {
                Ok(sigma) => format_response(&learner.conjecture(&sigma)),
                Err(e) => format!("E {e}"),
            },
            None => format!("E unknown request {line:?}"),
        };
        writeln!(output, "{reply}")?;
        output.flush()?;
    }
    Ok(())
}

struct Channel {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
    broken: bool,
}

/// An opponent running as a child process that speaks the line protocol.
pub struct ExternalOpponent {
    name: String,
    timeout: Duration,
    channel: Mutex<Channel>,
}

impl ExternalOpponent {
    pub fn spawn(program: &str, args: &[String], timeout: Duration) -> Result<Self, OpponentError> {
        let mut child = Command::new(program)
            .args(args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| OpponentError::Spawn(format!("{program}: {e}")))?;
        let stdin = child.stdin.take().ok_or_else(|| OpponentError::Spawn("no stdin".into()))?;
        let stdout = child.stdout.take().ok_or_else(|| OpponentError::Spawn("no stdout".into()))?;
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        let name = std::iter::once(program.to_string()).chain(args.iter().cloned()).collect::<Vec<_>>().join(" ");
        Ok(ExternalOpponent {
            name: format!("external({name})"),
            timeout,
            channel: Mutex::new(Channel { child, stdin, lines: rx, broken: false }),
        })
    }
}

impl Drop for ExternalOpponent {
    fn drop(&mut self) {
        if let Ok(channel) = self.channel.get_mut() {
            let _ = channel.child.kill();
            let _ = channel.child.wait();
        }
    }
}

impl Opponent for ExternalOpponent {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn respond(&self, sigma: &DataSequence) -> Result<Hypothesis, OpponentError> {
        let mut channel = self.channel.lock().map_err(|_| OpponentError::Exited)?;
        if channel.broken {
            return Err(OpponentError::Exited);
        }
        let sent = writeln!(channel.stdin, "Q {sigma}").and_then(|_| channel.stdin.flush());
        if let Err(e) = sent {
            channel.broken = true;
            return Err(OpponentError::Io(e.to_string()));
        }
        // Once an answer is late or garbled the stream is out of step for good.
        let result = match channel.lines.recv_timeout(self.timeout) {
            Ok(line) => parse_response(&line),
            Err(RecvTimeoutError::Timeout) => Err(OpponentError::Timeout(self.timeout)),
            Err(RecvTimeoutError::Disconnected) => Err(OpponentError::Exited),
        };
        if result.is_err() {
            channel.broken = true;
        }
        result
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryId {
    CautTar,
    CautInf,
    Caut,
    CautFin,
    SmonVsDual,
    DualVsSmon,
    MonVsDual,
    DualVsMon,
    Mindchange,
}

impl AdversaryId {
    pub const ALL: [AdversaryId; 9] = [
        AdversaryId::CautTar,
        AdversaryId::CautInf,
        AdversaryId::Caut,
        AdversaryId::CautFin,
        AdversaryId::SmonVsDual,
        AdversaryId::DualVsSmon,
        AdversaryId::MonVsDual,
        AdversaryId::DualVsMon,
        AdversaryId::Mindchange,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AdversaryId::CautTar => "caut_tar",
            AdversaryId::CautInf => "caut_inf",
            AdversaryId::Caut => "caut",
            AdversaryId::CautFin => "caut_fin",
            AdversaryId::SmonVsDual => "smon_vs_dual",
            AdversaryId::DualVsSmon => "dual_vs_smon",
            AdversaryId::MonVsDual => "mon_vs_dual",
            AdversaryId::DualVsMon => "dual_vs_mon",
            AdversaryId::Mindchange => "mindchange",
        }
    }

    /// The restriction a violation witness of this game breaks.
    pub fn restriction(self) -> Option<Restriction> {
        match self {
            AdversaryId::CautTar => Some(Restriction::CautTar),
            AdversaryId::CautInf => Some(Restriction::CautInf),
            AdversaryId::Caut => Some(Restriction::Caut),
            AdversaryId::CautFin => Some(Restriction::CautFin),
            AdversaryId::SmonVsDual => Some(Restriction::SMonD),
            AdversaryId::DualVsSmon => Some(Restriction::SMon),
            AdversaryId::MonVsDual => Some(Restriction::MonD),
            AdversaryId::DualVsMon => Some(Restriction::Mon),
            AdversaryId::Mindchange => None,
        }
    }
}

impl fmt::Display for AdversaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AdversaryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AdversaryId::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown adversary {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Bounds {
    /// How many indices to scan for each awaited conjecture.
    pub search: usize,
    /// Largest amount of extra data per mind-change round.
    pub t_bound: usize,
    /// Mind-change rounds to play.
    pub rounds: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { search: 100, t_bound: 50, rounds: 10 }
    }
}

/// A named point of a game: the opponent conjectured `target` at `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub target: UpSet,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationTrace {
    pub restriction: Restriction,
    pub target: UpSet,
    /// The informant prefix, valid for `target`.
    pub data: DataSequence,
    /// The opponent's conjectures on `data[0..=|data|]`.
    pub conjectures: Vec<Hypothesis>,
    pub certificate: Certificate,
    pub stages: Vec<Stage>,
    pub params: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub before: DataSet,
    pub b: u8,
    pub t: usize,
    pub after: DataSet,
    pub from: Hypothesis,
    pub to: Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPairTrace {
    pub rounds: Vec<Round>,
    /// D_k, the last set reached.
    pub last: DataSet,
    pub hypothesis: Hypothesis,
    pub p0: u64,
    pub p1: u64,
    pub l0: UpSet,
    pub l1: UpSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Violation(ViolationTrace),
    MindChanges { rounds: Vec<Round> },
    SplitPair(SplitPairTrace),
    Exhausted { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub adversary: AdversaryId,
    pub opponent: String,
    pub outcome: Outcome,
    pub bounds: Bounds,
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self.outcome {
            Outcome::Violation(_) => "violation",
            Outcome::MindChanges { .. } => "mindchange_transcript",
            Outcome::SplitPair(_) => "split_pair",
            Outcome::Exhausted { .. } => "exhausted",
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, Outcome::Exhausted { .. })
    }

    pub fn violation(&self) -> Option<&ViolationTrace> {
        match &self.outcome {
            Outcome::Violation(v) => Some(v),
            _ => None,
        }
    }

    /// Number of forced mind changes (rounds before a split pair included).
    pub fn mind_changes(&self) -> usize {
        match &self.outcome {
            Outcome::MindChanges { rounds } => rounds.len(),
            Outcome::SplitPair(s) => s.rounds.len(),
            _ => 0,
        }
    }

    pub fn summary(&self) -> String {
        match &self.outcome {
            Outcome::Violation(v) => format!(
                "{} violated on target {} at {} ({} data)",
                v.restriction,
                v.target,
                v.certificate,
                v.data.len()
            ),
            Outcome::MindChanges { rounds } => format!("{} forced mind changes", rounds.len()),
            Outcome::SplitPair(s) => format!(
                "same conjecture {} on {} and {} after {} rounds",
                s.hypothesis.label(),
                s.l0,
                s.l1,
                s.rounds.len()
            ),
            Outcome::Exhausted { reason } => format!("exhausted: {reason}"),
        }
    }
}

type Res<T> = Result<T, OpponentError>;

/// Conjectures on `inf[0..=to]` and the first index in `from..=to` where
/// `pred` holds.
fn scan(op: &dyn Opponent, inf: &Informant, from: usize, to: usize, pred: impl Fn(&Hypothesis) -> bool) -> Res<Option<usize>> {
    let traj = op.trajectory(&inf.prefix(to))?;
    Ok((from..=to).find(|&i| pred(&traj[i])))
}

struct Game<'a> {
    id: AdversaryId,
    op: &'a dyn Opponent,
    bounds: Bounds,
    stages: Vec<Stage>,
    params: BTreeMap<String, u64>,
}

impl<'a> Game<'a> {
    fn new(id: AdversaryId, op: &'a dyn Opponent, bounds: Bounds) -> Self {
        Game { id, op, bounds, stages: Vec::new(), params: BTreeMap::new() }
    }

    fn witness(&self, outcome: Outcome) -> Witness {
        Witness { adversary: self.id, opponent: self.op.name(), outcome, bounds: self.bounds }
    }

    fn exhausted(&self, reason: String) -> Res<Witness> {
        Ok(self.witness(Outcome::Exhausted { reason }))
    }

    /// Waits for the opponent to conjecture `target` on `inf` after index `after`.
    fn await_conjecture(&mut self, name: &str, inf: &Informant, target: &UpSet, after: Option<usize>) -> Res<Option<usize>> {
        let from = after.map_or(0, |a| a + 1);
        let found = scan(self.op, inf, from, from + self.bounds.search, |h| h.extension() == target)?;
        if let Some(index) = found {
            self.stages.push(Stage { name: name.into(), target: target.clone(), index });
        }
        Ok(found)
    }

    fn param(&mut self, key: &str, value: u64) {
        self.params.insert(key.into(), value);
    }

    fn violation(mut self, target: UpSet, inf: &Informant, last: usize, certificate: Certificate) -> Res<Witness> {
        let data = inf.prefix(last);
        let conjectures = self.op.trajectory(&data)?;
        let restriction = self.id.restriction().expect("violation games name a restriction");
        let trace = ViolationTrace {
            restriction,
            target,
            data,
            conjectures,
            certificate,
            stages: std::mem::take(&mut self.stages),
            params: std::mem::take(&mut self.params),
        };
        Ok(self.witness(Outcome::Violation(trace)))
    }
}

fn sup_outline(d: &impl Labeled) -> Option<u64> {
    d.outline().last().copied()
}

/// The cautiousness games on the cofinite family: wait for ℕ on Î_ℕ at
/// `n₀`, then present `ℕ ∖ {n₀ + 1}` (or, for `caut_fin`, the finite set
/// shown so far) and look for the forbidden conjecture.
pub fn caut_adversary(variant: AdversaryId, op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    let mut game = Game::new(variant, op, bounds);
    let nat = UpSet::full();
    let Some(n0) = game.await_conjecture("ℕ", &Informant::canonical(&nat), &nat, None)? else {
        return game.exhausted(format!("no conjecture ℕ on the canonical informant for ℕ within {} steps", bounds.search));
    };
    game.param("n0", n0 as u64);
    let target = match variant {
        AdversaryId::CautFin => UpSet::finite(0..n0 as u64),
        AdversaryId::CautTar | AdversaryId::CautInf | AdversaryId::Caut => UpSet::cofinite([n0 as u64 + 1]),
        other => panic!("{other} is not a cautiousness game"),
    };
    let inf = Informant::extending(&Informant::canonical(&nat).prefix(n0), &target).expect("prefix agrees with target");
    if variant == AdversaryId::CautTar {
        let cert = Certificate::Index { n: n0, element: n0 as u64 + 1 };
        return game.violation(target, &inf, n0, cert);
    }
    let wanted = |h: &Hypothesis| {
        let w = h.extension();
        !w.is_full()
            && match variant {
                AdversaryId::CautInf => !w.is_finite(),
                AdversaryId::CautFin => w.is_finite(),
                _ => true,
            }
    };
    let Some(t) = scan(op, &inf, n0 + 1, n0 + bounds.search, wanted)? else {
        return game.exhausted(format!("no forbidden descent from ℕ on {target} within {} steps", bounds.search));
    };
    let w_t = op.trajectory(&inf.prefix(t))?.pop().expect("nonempty").extension().clone();
    let element = nat.difference(&w_t).min_element().expect("proper subset");
    game.violation(target, &inf, t, Certificate::Pair { s: n0, t, element })
}

/// `caut_fin` against the ℕ-or-finite family.
pub fn cautfin_adversary(op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    caut_adversary(AdversaryId::CautFin, op, bounds)
}

fn smon_vs_dual(op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    let mut game = Game::new(AdversaryId::SmonVsDual, op, bounds);
    let empty = UpSet::empty();
    let canonical = Informant::canonical(&empty);
    let Some(n1) = game.await_conjecture("∅", &canonical, &empty, None)? else {
        return game.exhausted(format!("no conjecture ∅ on the canonical informant for ∅ within {} steps", bounds.search));
    };
    let shown = canonical.prefix(n1);
    let x = sup_outline(&shown).map_or(0, |s| s + 1);
    game.param("n1", n1 as u64);
    game.param("x", x);
    let target = UpSet::finite([x]);
    let inf = Informant::extending(&shown, &target).expect("x is fresh");
    let Some(t) = scan(op, &inf, n1 + 1, n1 + bounds.search, |h| !h.extension().is_empty())? else {
        return game.exhausted(format!("no nonempty conjecture on {target} within {} steps", bounds.search));
    };
    let w_t = op.trajectory(&inf.prefix(t))?.pop().expect("nonempty").extension().clone();
    let element = w_t.min_element().expect("nonempty");
    game.violation(target, &inf, t, Certificate::Pair { s: n1, t, element })
}

fn dual_vs_smon(op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    let mut game = Game::new(AdversaryId::DualVsSmon, op, bounds);
    let nat = UpSet::full();
    let canonical = Informant::canonical(&nat);
    let Some(n) = game.await_conjecture("ℕ", &canonical, &nat, None)? else {
        return game.exhausted(format!("no conjecture ℕ on the canonical informant for ℕ within {} steps", bounds.search));
    };
    game.param("n", n as u64);
    let target = UpSet::segment(n as u64 + 1);
    let inf = Informant::extending(&canonical.prefix(n), &target).expect("only 0..n shown");
    let Some(t) = scan(op, &inf, n + 1, n + bounds.search, |h| !h.extension().is_full())? else {
        return game.exhausted(format!("opponent keeps conjecturing ℕ on {target} for {} steps", bounds.search));
    };
    let w_t = op.trajectory(&inf.prefix(t))?.pop().expect("nonempty").extension().clone();
    let element = nat.difference(&w_t).min_element().expect("not ℕ");
    game.violation(target, &inf, t, Certificate::Pair { s: n, t, element })
}

/// The smallest `i` with `3i > sup(outline)`.
fn fresh_index(d: &impl Labeled) -> u64 {
    sup_outline(d).map_or(0, |s| (s + 1).div_ceil(3))
}

fn mon_vs_dual(op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    let mut game = Game::new(AdversaryId::MonVsDual, op, bounds);
    let x = catalog::stream_x();
    let i_x = Informant::canonical(&x);
    let Some(n_x) = game.await_conjecture("X", &i_x, &x, None)? else {
        return game.exhausted(format!("no conjecture X on an informant for X within {} steps", bounds.search));
    };
    let shown_x = i_x.prefix(n_x);
    let n = fresh_index(&shown_x);
    let y = catalog::stream_y(n);
    let i_y = Informant::extending(&shown_x, &y).expect("no boundary shown yet");
    let Some(n_y) = game.await_conjecture("Y_n", &i_y, &y, Some(n_x))? else {
        return game.exhausted(format!("no conjecture Y_{n} within {} steps", bounds.search));
    };
    let shown_y = i_y.prefix(n_y);
    let m = fresh_index(&shown_y).max(n + 1);
    let z = catalog::stream_z(n, m);
    let i_z = Informant::extending(&shown_y, &z).expect("c_m and b_m not shown yet");
    let element = b(m + 1);
    for (k, v) in [("n_x", n_x as u64), ("n", n), ("n_y", n_y as u64), ("m", m), ("element", element)] {
        game.param(k, v);
    }
    game.violation(z, &i_z, n_y, Certificate::Pair { s: n_x, t: n_y, element })
}

fn dual_vs_mon(op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    let mut game = Game::new(AdversaryId::DualVsMon, op, bounds);
    let x = catalog::even_x();
    let Some(n_x) = game.await_conjecture("X", &Informant::canonical(&x), &x, None)? else {
        return game.exhausted(format!("no conjecture 2ℕ on its canonical informant within {} steps", bounds.search));
    };
    let n = n_x as u64 + 1;
    let y = catalog::even_y(n);
    let Some(n_y) = game.await_conjecture("Y_n", &Informant::canonical(&y), &y, Some(n_x))? else {
        return game.exhausted(format!("no conjecture Y_{n} within {} steps", bounds.search));
    };
    let m = n_y as u64 + 1;
    let z = catalog::even_z(n, m);
    for (k, v) in [("n_x", n_x as u64), ("n", n), ("n_y", n_y as u64), ("m", m), ("element", 2 * m)] {
        game.param(k, v);
    }
    game.violation(z.clone(), &Informant::canonical(&z), n_y, Certificate::Pair { s: n_x, t: n_y, element: 2 * m })
}

/// `succ(D, p, t) = content(Î_{pos(D) ∪ {p}}[p + t])`.
pub fn succ(d: &DataSet, p: u64, t: usize) -> DataSet {
    let target = UpSet::finite(d.pos().into_iter().chain([p]));
    Informant::canonical(&target).prefix(p as usize + t).content()
}

/// Plays `D₀ = ∅, D_{i+1} = succ(D_i, p_b, t)` with fresh `p₀ = sup(outline(D_i)) + 1`
/// and `p₁ = p₀ + 1`, looking each round for a syntactic change of the
/// opponent's conjecture.
pub fn mindchange_driver(op: &dyn Opponent, max_rounds: usize, t_bound: usize) -> Res<Witness> {
    let bounds = Bounds { rounds: max_rounds, t_bound, ..Bounds::default() };
    let game = Game::new(AdversaryId::Mindchange, op, bounds);
    let mut rounds = Vec::new();
    let mut d = DataSet::empty();
    for _ in 0..max_rounds {
        let from = op.respond_to_set(&d)?;
        let p0 = sup_outline(&d).map_or(0, |s| s + 1);
        let mut changed = None;
        'search: for t in 0..=t_bound {
            for (bit, p) in [(0u8, p0), (1, p0 + 1)] {
                let next = succ(&d, p, t);
                let to = op.respond_to_set(&next)?;
                if to.label() != from.label() {
                    changed = Some(Round { before: d.clone(), b: bit, t, after: next, from: from.clone(), to });
                    break 'search;
                }
            }
        }
        match changed {
            Some(round) => {
                d = round.after.clone();
                rounds.push(round);
            }
            None => {
                let pos = d.pos();
                let split = SplitPairTrace {
                    rounds,
                    last: d,
                    hypothesis: from,
                    p0,
                    p1: p0 + 1,
                    l0: UpSet::finite(pos.iter().copied().chain([p0])),
                    l1: UpSet::finite(pos.into_iter().chain([p0 + 1])),
                };
                return Ok(game.witness(Outcome::SplitPair(split)));
            }
        }
    }
    Ok(game.witness(Outcome::MindChanges { rounds }))
}

pub fn monotonicity_adversary(kind: AdversaryId, op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    match kind {
        AdversaryId::SmonVsDual => smon_vs_dual(op, bounds),
        AdversaryId::DualVsSmon => dual_vs_smon(op, bounds),
        AdversaryId::MonVsDual => mon_vs_dual(op, bounds),
        AdversaryId::DualVsMon => dual_vs_mon(op, bounds),
        other => panic!("{other} is not a monotonicity game"),
    }
}

/// Runs the adversary named by `id`.
pub fn run_adversary(id: AdversaryId, op: &dyn Opponent, bounds: Bounds) -> Res<Witness> {
    match id {
        AdversaryId::CautTar | AdversaryId::CautInf | AdversaryId::Caut | AdversaryId::CautFin => {
            caut_adversary(id, op, bounds)
        }
        AdversaryId::Mindchange => mindchange_driver(op, bounds.rounds, bounds.t_bound),
        kind => monotonicity_adversary(kind, op, bounds),
    }
}

fn verify_rounds(op: &dyn Opponent, rounds: &[Round]) -> Res<bool> {
    let mut expected_before = DataSet::empty();
    for r in rounds {
        let p0 = sup_outline(&r.before).map_or(0, |s| s + 1);
        let ok = r.before == expected_before
            && r.b <= 1
            && r.after == succ(&r.before, p0 + u64::from(r.b), r.t)
            && op.respond_to_set(&r.before)? == r.from
            && op.respond_to_set(&r.after)? == r.to
            && r.from.label() != r.to.label();
        if !ok {
            return Ok(false);
        }
        expected_before = r.after.clone();
    }
    Ok(true)
}

fn verify_inner(w: &Witness, op: &dyn Opponent) -> Res<bool> {
    if w.opponent != op.name() {
        return Ok(false);
    }
    match &w.outcome {
        Outcome::Exhausted { .. } => Ok(true),
        Outcome::Violation(v) => {
            if w.adversary.restriction() != Some(v.restriction) || !validate_prefix_for(&v.data, &v.target) {
                return Ok(false);
            }
            if op.trajectory(&v.data)? != v.conjectures {
                return Ok(false);
            }
            let Ok(inf) = Informant::extending(&v.data, &v.target) else { return Ok(false) };
            let p = HypSequence::from_items(v.conjectures.clone());
            let claim = Verdict {
                restriction: v.restriction,
                satisfied: false,
                certificate: Some(v.certificate.clone()),
                detail: String::new(),
            };
            Ok(claim.revalidate(&p, &inf))
        }
        Outcome::MindChanges { rounds } => Ok(rounds.len() == w.bounds.rounds && verify_rounds(op, rounds)?),
        Outcome::SplitPair(s) => {
            if !verify_rounds(op, &s.rounds)? {
                return Ok(false);
            }
            let expected_last = s.rounds.last().map_or_else(DataSet::empty, |r| r.after.clone());
            let p0 = sup_outline(&s.last).map_or(0, |x| x + 1);
            let pos = s.last.pos();
            let shape = s.last == expected_last
                && s.p0 == p0
                && s.p1 == p0 + 1
                && s.l0 == UpSet::finite(pos.iter().copied().chain([s.p0]))
                && s.l1 == UpSet::finite(pos.iter().copied().chain([s.p1]))
                && s.l0 != s.l1;
            if !shape || op.respond_to_set(&s.last)? != s.hypothesis {
                return Ok(false);
            }
            for t in 0..=w.bounds.t_bound {
                for p in [s.p0, s.p1] {
                    if op.respond_to_set(&succ(&s.last, p, t))?.label() != s.hypothesis.label() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Re-runs `op` on the recorded data and re-checks the claimed relation.
/// Exhausted witnesses verify trivially; opponent errors fail verification.
pub fn verify_witness(w: &Witness, op: &dyn Opponent) -> bool {
    verify_inner(w, op).unwrap_or(false)
}

/// The positive example `x:+` as a one-element sequence; handy for protocol tests.
pub fn single(x: u64) -> DataSequence {
    DataSequence::new(vec![Example::pos(x)]).expect("one example")
}
