//! Playing an adversary against a learner in another process.
//!
//! The example starts itself again as the opponent: `serve <learner>`
//! answers `Q <sequence>` lines with `H <label> <set>` on stdout. Any
//! program speaking that protocol can be plugged in the same way.

use std::io::{stdin, stdout};
use std::time::Duration;

use inferlab::adversary::{run_adversary, serve, verify_witness, AdversaryId, Bounds, ExternalOpponent, Opponent};
use inferlab::catalog::{self, Params};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.get(1).map(String::as_str) == Some("serve") {
        let learner = catalog::learner(&args[2], &Params::default()).unwrap();
        serve(&learner, stdin().lock(), stdout().lock()).unwrap();
        return;
    }

    let me = std::env::current_exe().unwrap();
    let me = me.to_str().unwrap();
    for (id, learner) in [(AdversaryId::DualVsMon, "even_dualmon"), (AdversaryId::Mindchange, "memorizer")] {
        let op = ExternalOpponent::spawn(me, &["serve".into(), learner.into()], Duration::from_secs(2)).unwrap();
        let w = run_adversary(id, &op, Bounds { rounds: 4, ..Bounds::default() }).unwrap();
        println!("{}", op.name());
        println!("  {}", w.summary());
        println!("  verified {}", verify_witness(&w, &op));

        // Same game in-process gives the same witness, up to the opponent name.
        let local = catalog::learner(learner, &Params::default()).unwrap();
        let again = run_adversary(id, &local, Bounds { rounds: 4, ..Bounds::default() }).unwrap();
        println!("  matches local run {}", again.outcome == w.outcome);
    }
}
