//! The built-in languages, families and learners.

use inferlab::catalog::{self, ListKind, Params, Sweep};
use inferlab::evidence::Informant;
use inferlab::interaction::run;
use inferlab::restrictions::check;

fn main() {
    for kind in [ListKind::Languages, ListKind::Families, ListKind::Learners] {
        println!("{kind:?}");
        for e in catalog::list(kind) {
            let supports: Vec<&str> = e.supports.iter().map(|r| r.id()).collect();
            println!("  {:<14} {:<14} {}", e.id, e.params, supports.join(","));
        }
    }

    let z = catalog::language("streamZ", &Params::parse("n=1 m=3").unwrap()).unwrap();
    println!("streamZ n=1 m=3 = {z}");

    // Each learner against its family, within a small sweep.
    let sweep = Sweep { universe: 4, max_size: 2, max_n: 4, max_m: 6 };
    for e in catalog::list(ListKind::Learners) {
        let Some(family) = e.family else { continue };
        let learner = catalog::learner(e.id, &Params::default()).unwrap();
        let members = catalog::family(family, &sweep).unwrap();
        let failures = members
            .iter()
            .filter(|m| {
                let informant = Informant::canonical(&m.set);
                let p = run(&learner, &informant, 40);
                e.supports.iter().any(|&r| !check(r, &p, &informant).satisfied)
            })
            .count();
        println!("{:<14} on {:<14} {} members, {failures} failures", e.id, family, members.len());
    }
}
