//! Forcing mind changes on finite data sets.
//!
//! The driver grows a data set `D` by `succ(D, p, t)` until the learner's
//! label changes, round after round. A learner that gets stuck is caught
//! on a split pair: two sets it cannot tell apart.

use inferlab::adversary::{mindchange_driver, succ, verify_witness, Outcome};
use inferlab::catalog;
use inferlab::evidence::DataSet;
use inferlab::upset::UpSet;

fn main() {
    let d = DataSet::empty();
    println!("succ(∅, 3, 2) = {}", succ(&d, 3, 2));

    for op in [catalog::memorizer(), catalog::maxpos(), catalog::constant(UpSet::full())] {
        let w = mindchange_driver(&op, 6, 20).unwrap();
        println!("{}: {} mind changes, {}", op.name(), w.mind_changes(), w.kind());
        match &w.outcome {
            Outcome::MindChanges { rounds } => {
                for r in rounds {
                    println!("  b={} t={:<2} {} -> {}", r.b, r.t, r.after, r.to.label());
                }
            }
            Outcome::SplitPair(s) => {
                println!("  stuck on {} after {} rounds", s.last, s.rounds.len());
                println!("  L0 = {}  L1 = {}  conjecture {}", s.l0, s.l1, s.hypothesis.extension());
            }
            _ => {}
        }
        assert!(verify_witness(&w, &op));
    }
}
