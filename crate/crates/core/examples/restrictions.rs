//! Checking restrictions on a finite run, with certificates.

use inferlab::catalog;
use inferlab::evidence::Informant;
use inferlab::interaction::{run, HypSequence};
use inferlab::restrictions::{check, lattice_counterexamples, probe_delayability, Restriction};
use inferlab::upset::UpSet;

fn report(p: &HypSequence, informant: &Informant) {
    for r in Restriction::ALL {
        let v = check(r, p, informant);
        let status = if v.satisfied { "ok" } else { "VIOLATED" };
        let cert = v.certificate.as_ref().map(|c| c.to_string()).unwrap_or_default();
        println!("  {:<10} {:<9} {cert}", r.id(), status);
        assert!(v.revalidate(p, informant));
    }
    assert!(lattice_counterexamples(p, informant).is_empty());
}

fn main() {
    let target = UpSet::cofinite([1]);
    let informant = Informant::canonical(&target);
    let p = run(&catalog::cofinite(), &informant, 10);
    println!("cofinite learner on N \\ {{1}}");
    report(&p, &informant);

    // The full set and then a segment: dual strongly monotone, not strongly monotone.
    let q = HypSequence::from_sets([UpSet::full(), UpSet::full(), UpSet::full(), UpSet::segment(1)]);
    let seg = Informant::canonical(&UpSet::segment(1));
    println!("hand-made sequence on {{0, 1}}");
    report(&q, &seg);

    // Delaying by one step keeps Bc (checked on the same informant).
    let probe = probe_delayability(Restriction::Bc, &p, &informant, &informant, |n| n.saturating_sub(1)).unwrap();
    println!("bc delayed by one: {} -> {}", probe.original.satisfied, probe.delayed.satisfied);
}
