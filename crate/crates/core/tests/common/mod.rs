//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use inferlab::evidence::{Directive, Example, Informant};
use inferlab::interaction::Learner;
use inferlab::upset::UpSet;
use inferlab::catalog;
use rand::Rng;

/// A set given by raw, possibly non-canonical bits.
#[derive(Debug, Clone)]
pub struct RawSet {
    pub prefix: Vec<bool>,
    pub period: Vec<bool>,
}

impl RawSet {
    pub fn random(rng: &mut impl Rng, max_prefix: usize, max_period: usize) -> RawSet {
        let p = rng.random_range(0..=max_prefix);
        let q = rng.random_range(1..=max_period);
        RawSet {
            prefix: (0..p).map(|_| rng.random_bool(0.5)).collect(),
            period: (0..q).map(|_| rng.random_bool(0.5)).collect(),
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        let x = x as usize;
        if x < self.prefix.len() {
            self.prefix[x]
        } else {
            self.period[(x - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn build(&self) -> UpSet {
        UpSet::new(self.prefix.clone(), self.period.clone()).expect("nonempty period")
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A bound past which two raw sets can no longer differ for the first time.
pub fn horizon(a: &RawSet, b: &RawSet) -> u64 {
    (a.prefix.len().max(b.prefix.len()) + 2 * lcm(a.period.len(), b.period.len())) as u64
}

pub fn random_upset(rng: &mut impl Rng) -> UpSet {
    RawSet::random(rng, 6, 5).build()
}

/// A random plan that is valid for every target: shuffles and duplications only.
pub fn random_plan(rng: &mut impl Rng) -> Vec<Directive> {
    let mut plan = vec![Directive::Shuffle { block: rng.random_range(1..=10) }];
    for _ in 0..rng.random_range(0..3) {
        plan.push(Directive::Duplicate { index: rng.random_range(0..20), times: rng.random_range(1..4) });
    }
    plan
}

/// The canonical informant and `seeds` seeded shuffle schedules.
pub fn informants(target: &UpSet, seeds: u64) -> Vec<Informant> {
    std::iter::once(Informant::canonical(target))
        .chain((1..=seeds).map(|s| Informant::scheduled(target, s, &[]).expect("default plan")))
        .collect()
}

/// Examples agree with the target, by direct membership.
pub fn labels_agree(items: &[Example], target: &UpSet) -> bool {
    items.iter().all(|e| target.contains(e.value) == e.positive)
}

pub fn all_catalog_learners(rng: &mut impl Rng) -> Vec<Learner> {
    vec![
        catalog::fin_pos(),
        catalog::cofinite(),
        catalog::maxpos(),
        catalog::segment(),
        catalog::stream_mon(),
        catalog::even_dualmon(),
        catalog::n_or_fin(),
        catalog::memorizer(),
        catalog::fin_pos_it(),
        catalog::cofinite_psd(),
        catalog::constant(random_upset(rng)),
    ]
}
