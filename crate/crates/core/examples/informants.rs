//! Canonical and scheduled informants for a target set.

use inferlab::evidence::{Directive, Example, Informant, Labeled};
use inferlab::upset::UpSet;

fn main() {
    let target = UpSet::cofinite([1]);

    let canonical = Informant::canonical(&target);
    println!("{}", canonical.description());
    println!("  {}", canonical.prefix(8));

    let plan = vec![
        Directive::Shuffle { block: 4 },
        Directive::Duplicate { index: 0, times: 3 },
        Directive::Insert { at: 2, example: Example::neg(1) },
    ];
    let scheduled = Informant::scheduled(&target, 7, &plan).unwrap();
    println!("{}", scheduled.description());
    let prefix = scheduled.prefix(12);
    println!("  {prefix}");
    println!("  content   {}", prefix.content());
    println!("  positives {:?} negatives {:?}", prefix.pos(), prefix.neg());
    println!("  5 shown by index {}", scheduled.coverage_bound(5));

    // Same seed and plan, same sequence.
    assert_eq!(prefix, Informant::scheduled(&target, 7, &plan).unwrap().prefix(12));

    let bad = [Directive::Insert { at: 0, example: Example::pos(1) }];
    if let Err(e) = Informant::scheduled(&target, 7, &bad) {
        println!("rejected plan: {e}");
    }
}
