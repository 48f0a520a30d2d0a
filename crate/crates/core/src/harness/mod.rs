//! Experiment runner: learners × targets × informants × restrictions,
//! plus adversary runs, assembled into a [`Report`].

pub mod config;
pub mod demo;
pub mod report;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{validate_config, AdversaryExpect, ExperimentConfig, Expect, Schedule, Scope, Target};
pub use report::{render_report, AdversaryRecord, Cell, CellTrace, Fingerprint, RenderMode, Report};

use crate::adversary::{run_adversary, verify_witness, ExternalOpponent, Opponent};
use crate::evidence::Informant;
use crate::interaction::run;
use crate::restrictions::check;
use crate::upset::UpSet;
use config::{AdversarySpec, GlobalSpec, OpponentSpec};

/// Environment variable that replaces every configured seed.
pub const SEED_ENV: &str = "INFERLAB_SEED";

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Canonical => f.write_str("canonical"),
            Schedule::Seeded { seed, plan } if plan.is_empty() => write!(f, "seed {seed}"),
            Schedule::Seeded { seed, plan } => {
                let steps: Vec<String> = plan.iter().map(ToString::to_string).collect();
                write!(f, "seed {seed} [{}]", steps.join(", "))
            }
        }
    }
}

impl Schedule {
    pub fn informant(&self, target: &UpSet) -> Result<Informant, String> {
        match self {
            Schedule::Canonical => Ok(Informant::canonical(target)),
            Schedule::Seeded { seed, plan } => Informant::scheduled(target, *seed, plan).map_err(|e| e.to_string()),
        }
    }
}

/// Random ultimately periodic sets outside `exclude`, for global (sampled) checks.
pub fn sample_targets(spec: &GlobalSpec, exclude: &[UpSet]) -> Vec<Target> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut seen: Vec<UpSet> = exclude.to_vec();
    let mut out = Vec::new();
    for _ in 0..spec.samples * 20 {
        if out.len() == spec.samples {
            break;
        }
        let pre = rng.random_range(0..=spec.max_preperiod);
        let per = rng.random_range(1..=spec.max_period);
        let prefix = (0..pre).map(|_| rng.random_bool(0.5)).collect();
        let period = (0..per).map(|_| rng.random_bool(0.5)).collect();
        let set = UpSet::new(prefix, period).expect("nonempty period");
        if !seen.contains(&set) {
            seen.push(set.clone());
            out.push(Target { description: format!("sample {set}"), set, scope: Scope::GlobalSampled });
        }
    }
    out
}

fn run_cells(cfg: &ExperimentConfig, targets: &[Target]) -> (Vec<Cell>, Vec<String>) {
    let Some(spec) = &cfg.learner else { return (Vec::new(), Vec::new()) };
    let global_restrictions = cfg.global.as_ref().map_or(&[][..], |g| &g.restrictions[..]);
    let jobs: Vec<(usize, usize)> =
        (0..targets.len()).flat_map(|t| (0..cfg.informants.len()).map(move |s| (t, s))).collect();
    let mut results: Vec<((usize, usize), Result<Vec<Cell>, String>)> = jobs
        .par_iter()
        .map(|&(ti, si)| {
            let target = &targets[ti];
            let schedule = &cfg.informants[si];
            let restrictions = match target.scope {
                Scope::Family => &cfg.restrictions[..],
                Scope::GlobalSampled => global_restrictions,
            };
            let cells = schedule.informant(&target.set).map(|informant| {
                if restrictions.is_empty() {
                    return Vec::new();
                }
                let p = run(&spec.learner, &informant, cfg.horizon);
                restrictions
                    .iter()
                    .map(|&r| {
                        let verdict = check(r, &p, &informant);
                        let trace = (!verdict.satisfied).then(|| CellTrace {
                            data: informant.prefix(p.len().saturating_sub(1)),
                            conjectures: p.items.clone(),
                        });
                        Cell {
                            target: target.description.clone(),
                            set: target.set.clone(),
                            scope: target.scope,
                            informant: schedule.to_string(),
                            restriction: r,
                            verdict,
                            trace,
                        }
                    })
                    .collect()
            });
            ((ti, si), cells.map_err(|e| format!("{} via {schedule}: {e}", target.description)))
        })
        .collect();
    results.sort_by_key(|(key, _)| *key);
    let mut cells = Vec::new();
    let mut errors = Vec::new();
    for (_, r) in results {
        match r {
            Ok(c) => cells.extend(c),
            Err(e) => errors.push(e),
        }
    }
    (cells, errors)
}

fn run_one_adversary(spec: &AdversarySpec) -> AdversaryRecord {
    let record = |opponent: String, witness, verified, error| AdversaryRecord {
        id: spec.id,
        opponent,
        expect: spec.expect,
        witness,
        verified,
        error,
    };
    let external;
    let op: &dyn Opponent = match &spec.opponent {
        OpponentSpec::Catalog(l) => &l.learner,
        OpponentSpec::External { command, timeout } => {
            match ExternalOpponent::spawn(&command[0], &command[1..], *timeout) {
                Ok(o) => {
                    external = o;
                    &external
                }
                Err(e) => return record(command.join(" "), None, false, Some(e.to_string())),
            }
        }
    };
    match run_adversary(spec.id, op, spec.bounds) {
        Ok(w) => {
            let verified = verify_witness(&w, op);
            record(op.name(), Some(w), verified, None)
        }
        Err(e) => record(op.name(), None, false, Some(e.to_string())),
    }
}

/// Runs every configured check and adversary. Deterministic for a fixed config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Report {
    let mut targets = cfg.targets.clone();
    if let Some(g) = &cfg.global {
        let known: Vec<UpSet> = targets.iter().map(|t| t.set.clone()).collect();
        targets.extend(sample_targets(g, &known));
    }
    let (cells, errors) = run_cells(cfg, &targets);
    let adversaries = cfg.adversaries.iter().map(run_one_adversary).collect();
    Report {
        schema: report::SCHEMA_VERSION,
        name: cfg.name.clone(),
        learner: cfg.learner.as_ref().map(|l| l.description.clone()),
        fingerprint: Fingerprint {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seeds: cfg.seeds(),
            horizon: cfg.horizon,
        },
        expect: cfg.expect,
        cells,
        adversaries,
        errors,
    }
}

/// Reads `INFERLAB_SEED`, if set to a number.
pub fn seed_from_env() -> Option<u64> {
    std::env::var(SEED_ENV).ok()?.trim().parse().ok()
}
