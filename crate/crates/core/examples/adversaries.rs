//! Every adversary against the catalog learner it is meant to defeat, plus
//! one it cannot.

use inferlab::adversary::{run_adversary, verify_witness, AdversaryId, Bounds, Outcome};
use inferlab::catalog::{self, Params};

fn main() {
    let games = [
        (AdversaryId::CautTar, "cofinite"),
        (AdversaryId::CautInf, "cofinite"),
        (AdversaryId::Caut, "cofinite"),
        (AdversaryId::CautFin, "n_or_fin"),
        (AdversaryId::SmonVsDual, "fin_pos"),
        (AdversaryId::DualVsSmon, "segment"),
        (AdversaryId::MonVsDual, "stream_mon"),
        (AdversaryId::DualVsMon, "even_dualmon"),
        (AdversaryId::CautTar, "fin_pos"),
    ];
    for (id, learner) in games {
        let op = catalog::learner(learner, &Params::default()).unwrap();
        let w = run_adversary(id, &op, Bounds::default()).unwrap();
        println!("{:<13} vs {:<13} {}", id.id(), learner, w.summary());
        if let Outcome::Violation(v) = &w.outcome {
            println!("{:<30} data [{}]", "", v.data);
            for s in &v.stages {
                println!("{:<30} {} at [{}]: {}", "", s.name, s.index, s.target);
            }
        }
        assert!(verify_witness(&w, &op));
    }
}
