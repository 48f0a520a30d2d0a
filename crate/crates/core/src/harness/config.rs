//! Experiment configuration: TOML text in, resolved [`ExperimentConfig`] out.

use std::fmt;
use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::adversary::{AdversaryId, Bounds};
use crate::catalog::{self, Params, Sweep};
use crate::combinators::{pipeline, Combinator};
use crate::evidence::Directive;
use crate::interaction::Learner;
use crate::restrictions::Restriction;
use crate::upset::UpSet;

pub const DEFAULT_HORIZON: usize = 20;
pub const DEFAULT_TIMEOUT_MS: u64 = 2000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    horizon: Option<usize>,
    #[serde(default)]
    restrictions: Vec<String>,
    expect: Option<String>,
    learner: Option<RawLearner>,
    #[serde(default)]
    targets: Vec<RawTarget>,
    #[serde(default)]
    informants: RawInformants,
    global: Option<RawGlobal>,
    #[serde(default)]
    adversaries: Vec<RawAdversary>,
    output: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLearner {
    id: String,
    #[serde(default)]
    params: String,
    #[serde(default)]
    combinators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    language: Option<String>,
    family: Option<String>,
    set: Option<String>,
    #[serde(default)]
    params: String,
    sweep: Option<Sweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawInformants {
    canonical: bool,
    seeds: Vec<u64>,
    plan: Vec<String>,
}

impl Default for RawInformants {
    fn default() -> Self {
        RawInformants { canonical: true, seeds: Vec::new(), plan: Vec::new() }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGlobal {
    samples: usize,
    seed: u64,
    #[serde(default = "default_max_preperiod")]
    max_preperiod: usize,
    #[serde(default = "default_max_period")]
    max_period: usize,
    /// Defaults to the top-level list.
    restrictions: Option<Vec<String>>,
}

fn default_max_preperiod() -> usize {
    6
}

fn default_max_period() -> usize {
    4
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAdversary {
    id: String,
    learner: Option<RawLearner>,
    command: Option<Vec<String>>,
    timeout_ms: Option<u64>,
    #[serde(default)]
    bounds: Bounds,
    expect: Option<String>,
}

/// What the restriction checks are supposed to show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    #[default]
    Satisfied,
    Witness,
}

/// What an adversary run is supposed to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryExpect {
    #[default]
    Exhausted,
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Family,
    /// A sampled target outside the configured families.
    GlobalSampled,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Family => "family",
            Scope::GlobalSampled => "global (sampled)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub description: String,
    pub set: UpSet,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    Canonical,
    Seeded { seed: u64, plan: Vec<Directive> },
}

#[derive(Clone)]
pub struct LearnerSpec {
    pub description: String,
    pub learner: Learner,
}

impl fmt::Debug for LearnerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

#[derive(Debug, Clone)]
pub enum OpponentSpec {
    Catalog(LearnerSpec),
    External { command: Vec<String>, timeout: Duration },
}

#[derive(Debug, Clone)]
pub struct AdversarySpec {
    pub id: AdversaryId,
    pub opponent: OpponentSpec,
    pub bounds: Bounds,
    pub expect: AdversaryExpect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSpec {
    pub samples: usize,
    pub seed: u64,
    pub max_preperiod: usize,
    pub max_period: usize,
    /// Checked on the sampled targets.
    pub restrictions: Vec<Restriction>,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub horizon: usize,
    pub learner: Option<LearnerSpec>,
    pub targets: Vec<Target>,
    pub informants: Vec<Schedule>,
    pub restrictions: Vec<Restriction>,
    pub expect: Expect,
    pub global: Option<GlobalSpec>,
    pub adversaries: Vec<AdversarySpec>,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Replaces every configured seed by `seed` (used for `INFERLAB_SEED`).
    pub fn override_seed(&mut self, seed: u64) {
        let plan = self.informants.iter().find_map(|s| match s {
            Schedule::Seeded { plan, .. } => Some(plan.clone()),
            Schedule::Canonical => None,
        });
        if let Some(plan) = plan {
            self.informants.retain(|s| *s == Schedule::Canonical);
            self.informants.push(Schedule::Seeded { seed, plan });
        }
        if let Some(g) = &mut self.global {
            g.seed = seed;
        }
    }

    /// All seeds in use, for the report fingerprint.
    pub fn seeds(&self) -> Vec<u64> {
        let mut seeds: Vec<u64> = self
            .informants
            .iter()
            .filter_map(|s| match s {
                Schedule::Seeded { seed, .. } => Some(*seed),
                Schedule::Canonical => None,
            })
            .chain(self.global.as_ref().map(|g| g.seed))
            .collect();
        seeds.sort_unstable();
        seeds.dedup();
        seeds
    }
}

/// Every problem found in a config, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "config error: {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

fn resolve_learner(raw: &RawLearner, errors: &mut Vec<String>, at: &str) -> Option<LearnerSpec> {
    let params = match Params::parse(&raw.params) {
        Ok(p) => p,
        Err(e) => {
            errors.push(format!("{at}: {e}"));
            return None;
        }
    };
    let base = match catalog::learner(&raw.id, &params) {
        Ok(l) => Some(l),
        Err(e) => {
            errors.push(format!("{at}: {e}"));
            None
        }
    };
    let mut steps = Vec::new();
    for id in &raw.combinators {
        match id.parse::<Combinator>() {
            Ok(c) => steps.push(c),
            Err(e) => errors.push(format!("{at}: {e}")),
        }
    }
    let base = base?;
    if steps.len() != raw.combinators.len() {
        return None;
    }
    let learner = pipeline(&base, &steps);
    Some(LearnerSpec { description: learner.name().to_string(), learner })
}

fn resolve_target(raw: &RawTarget, errors: &mut Vec<String>, at: &str) -> Vec<Target> {
    let fail = |errors: &mut Vec<String>, msg: String| {
        errors.push(format!("{at}: {msg}"));
        Vec::new()
    };
    let family_target = |description: String, set: UpSet| Target { description, set, scope: Scope::Family };
    match (&raw.language, &raw.family, &raw.set) {
        (Some(id), None, None) => {
            if raw.sweep.is_some() {
                return fail(errors, "sweep only applies to families".into());
            }
            let params = match Params::parse(&raw.params) {
                Ok(p) => p,
                Err(e) => return fail(errors, e.to_string()),
            };
            match catalog::language(id, &params) {
                Ok(set) => {
                    let description = if raw.params.trim().is_empty() { id.clone() } else { format!("{id} {}", raw.params.trim()) };
                    vec![family_target(description, set)]
                }
                Err(e) => fail(errors, e.to_string()),
            }
        }
        (None, Some(id), None) => {
            if !raw.params.is_empty() {
                return fail(errors, "families take a sweep table, not params".into());
            }
            match catalog::family(id, &raw.sweep.unwrap_or_default()) {
                Ok(members) => members.into_iter().map(|m| family_target(m.description, m.set)).collect(),
                Err(e) => fail(errors, e.to_string()),
            }
        }
        (None, None, Some(text)) => match text.parse::<UpSet>() {
            Ok(set) => vec![family_target(format!("set {set}"), set)],
            Err(e) => fail(errors, format!("bad set {text:?}: {e}")),
        },
        _ => fail(errors, "give exactly one of language, family or set".into()),
    }
}

/// Parses and resolves a config, collecting every error instead of
/// stopping at the first one.
pub fn validate_config(text: &str) -> Result<ExperimentConfig, ConfigErrors> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigErrors(vec![e.message().to_string()]))?;
    let mut errors = Vec::new();

    let horizon = raw.horizon.unwrap_or(DEFAULT_HORIZON);
    if horizon == 0 {
        errors.push("horizon must be at least 1".to_string());
    }

    let mut restrictions = Vec::new();
    for id in &raw.restrictions {
        match id.parse::<Restriction>() {
            Ok(r) if !restrictions.contains(&r) => restrictions.push(r),
            Ok(_) => {}
            Err(e) => errors.push(format!("restrictions: {e}")),
        }
    }

    let expect = match raw.expect.as_deref() {
        None | Some("satisfied") => Expect::Satisfied,
        Some("witness") => Expect::Witness,
        Some(other) => {
            errors.push(format!("expect: unknown value {other:?} (satisfied or witness)"));
            Expect::Satisfied
        }
    };

    let learner = raw.learner.as_ref().and_then(|l| resolve_learner(l, &mut errors, "learner"));
    if !restrictions.is_empty() && raw.learner.is_none() {
        errors.push("learner: required when restrictions are checked".to_string());
    }

    let mut targets = Vec::new();
    for (i, t) in raw.targets.iter().enumerate() {
        targets.extend(resolve_target(t, &mut errors, &format!("targets[{i}]")));
    }

    let mut plan = Vec::new();
    for text in &raw.informants.plan {
        match text.parse::<Directive>() {
            Ok(d) => plan.push(d),
            Err(e) => errors.push(format!("informants.plan: {e}")),
        }
    }
    let mut informants = Vec::new();
    if raw.informants.canonical {
        informants.push(Schedule::Canonical);
    }
    for &seed in &raw.informants.seeds {
        informants.push(Schedule::Seeded { seed, plan: plan.clone() });
    }
    if informants.is_empty() && !restrictions.is_empty() {
        errors.push("informants: no schedules (canonical = false and no seeds)".to_string());
    }

    let global = raw.global.as_ref().map(|g| {
        let mut own = Vec::new();
        for id in g.restrictions.iter().flatten() {
            match id.parse::<Restriction>() {
                Ok(r) if !own.contains(&r) => own.push(r),
                Ok(_) => {}
                Err(e) => errors.push(format!("global.restrictions: {e}")),
            }
        }
        GlobalSpec {
            samples: g.samples,
            seed: g.seed,
            max_preperiod: g.max_preperiod,
            max_period: g.max_period.max(1),
            restrictions: if g.restrictions.is_some() { own } else { restrictions.clone() },
        }
    });

    let mut adversaries = Vec::new();
    for (i, a) in raw.adversaries.iter().enumerate() {
        let at = format!("adversaries[{i}]");
        let id = a.id.parse::<AdversaryId>().map_err(|e| errors.push(format!("{at}: {e}"))).ok();
        let expect = match a.expect.as_deref() {
            None | Some("exhausted") => Some(AdversaryExpect::Exhausted),
            Some("witness") => Some(AdversaryExpect::Witness),
            Some(other) => {
                errors.push(format!("{at}: unknown expect {other:?} (exhausted or witness)"));
                None
            }
        };
        let timeout = Duration::from_millis(a.timeout_ms.unwrap_or(DEFAULT_TIMEOUT_MS));
        let opponent = match (&a.learner, &a.command) {
            (Some(l), None) => resolve_learner(l, &mut errors, &at).map(OpponentSpec::Catalog),
            (None, Some(cmd)) if !cmd.is_empty() => Some(OpponentSpec::External { command: cmd.clone(), timeout }),
            (None, Some(_)) => {
                errors.push(format!("{at}: empty command"));
                None
            }
            (None, None) => match &learner {
                Some(l) => Some(OpponentSpec::Catalog(l.clone())),
                None => {
                    errors.push(format!("{at}: no learner or command"));
                    None
                }
            },
            (Some(_), Some(_)) => {
                errors.push(format!("{at}: give learner or command, not both"));
                None
            }
        };
        if let (Some(id), Some(opponent), Some(expect)) = (id, opponent, expect) {
            adversaries.push(AdversarySpec { id, opponent, bounds: a.bounds, expect });
        }
    }

    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }
    Ok(ExperimentConfig {
        name: raw.name.unwrap_or_else(|| "experiment".to_string()),
        horizon,
        learner,
        targets,
        informants,
        restrictions,
        expect,
        global,
        adversaries,
        output: raw.output.map(PathBuf::from),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
horizon = 10
restrictions = ["bc"]

[learner]
id = "cofinite"

[[targets]]
language = "cofinite"
params = "remove={1}"
"#;

    #[test]
    fn minimal_config_is_valid() {
        let cfg = validate_config(MINIMAL).unwrap();
        assert_eq!(cfg.horizon, 10);
        assert_eq!(cfg.targets.len(), 1);
        assert_eq!(cfg.targets[0].set, UpSet::cofinite([1]));
        assert_eq!(cfg.informants, vec![Schedule::Canonical]);
        assert_eq!(cfg.restrictions, vec![Restriction::Bc]);
    }

    #[test]
    fn errors_are_collected() {
        let text = r#"
horizon = 0
restrictions = ["bc", "nope"]

[learner]
id = "wizard"

[[targets]]
set = "1|"
"#;
        let errs = validate_config(text).unwrap_err().0;
        assert_eq!(errs.len(), 4, "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("horizon")));
        assert!(errs.iter().any(|e| e.contains("nope")));
        assert!(errs.iter().any(|e| e.contains("wizard")));
        assert!(errs.iter().any(|e| e.contains("1|")));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(validate_config("horizon = 3\ncolour = \"red\"\n").is_err());
    }

    #[test]
    fn families_and_pipelines_resolve() {
        let text = r#"
restrictions = ["cons", "wmon"]
[learner]
id = "cofinite"
combinators = ["to_sd", "cons_wmon"]
[[targets]]
family = "cofinite"
sweep = { universe = 3, max_size = 1 }
[informants]
seeds = [1, 2]
plan = ["shuffle 4", "dup 0 2"]
[[adversaries]]
id = "caut_tar"
expect = "witness"
"#;
        let cfg = validate_config(text).unwrap();
        assert_eq!(cfg.learner.as_ref().unwrap().description, "cons_wmon(to_sd(cofinite))");
        assert_eq!(cfg.targets.len(), 5);
        assert_eq!(cfg.informants.len(), 3);
        assert_eq!(cfg.adversaries[0].expect, AdversaryExpect::Witness);
        let mut cfg = cfg;
        cfg.override_seed(99);
        assert_eq!(cfg.seeds(), vec![99]);
        assert_eq!(cfg.informants.len(), 2);
    }
}
