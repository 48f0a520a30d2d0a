//! Writing a learner and running it on an informant.
//!
//! The learner conjectures "everything not yet seen negative", which is
//! how cofinite sets are learned.

use inferlab::evidence::{Informant, Labeled};
use inferlab::hypothesis::Hypothesis;
use inferlab::interaction::{order_insensitivity_probe, run, Learner};
use inferlab::upset::UpSet;

fn main() {
    let learner = Learner::set_driven("not_negative", |d| Hypothesis::for_set(UpSet::cofinite(d.neg())));
    println!("{learner:?}");

    let target = UpSet::cofinite([1, 4]);
    let informant = Informant::canonical(&target);
    let p = run(&learner, &informant, 8);
    println!("{} on {}, horizon {}", p.provenance.learner, p.provenance.informant, p.len());
    for (i, h) in p.items.iter().enumerate() {
        let data = informant.prefix(i);
        println!("  [{i}] {:<28} -> {h}", format!("{data}"));
    }

    // Labels come from the extension, so equal sets share a label.
    let a = p.get(5);
    let b = p.get(7);
    println!("[5] and [7] same label: {}", a.label() == b.label());

    // A Gold-style learner sees the order too.
    let gold = Learner::gold("last_positive", |sigma| {
        match sigma.items().iter().rev().find(|e| e.positive) {
            Some(e) => Hypothesis::for_set(UpSet::finite([e.value])),
            None => Hypothesis::initial(),
        }
    });
    let q = run(&gold, &informant, 8);
    println!("{:?} at [7]: {}", gold, q.get(7));

    let probe = order_insensitivity_probe(&learner, &target, 5, 1);
    println!("order probe clean: {}", probe.is_clean());
}
