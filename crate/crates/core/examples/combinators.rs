//! Learner transformations: set-driven conversion, patching, and the
//! consistency wrappers.

use inferlab::catalog;
use inferlab::combinators::{cons_wmon_fourcase_trace, patch, pipeline, to_set_driven, Combinator};
use inferlab::evidence::{DataSequence, Informant, Labeled};
use inferlab::hypothesis::Hypothesis;
use inferlab::interaction::run;
use inferlab::restrictions::{check, Restriction};
use inferlab::upset::UpSet;

fn main() {
    let target = catalog::stream_y(1);
    let informant = Informant::canonical(&target);
    let base = catalog::stream_mon();

    let sd = to_set_driven(&base);
    println!("{:?}", sd);
    println!("  on {{0:+, 3:+}} {}", sd.on_set(&"3:+,0:+".parse::<DataSequence>().unwrap().content()).extension());

    let sigma: DataSequence = "0:+,1:-,3:-".parse().unwrap();
    let patched = patch(&Hypothesis::for_set(UpSet::segment(2)), &sigma.content());
    println!("patch {{0,1,2}} with {sigma}: {}", patched.extension());

    for steps in [vec![], vec![Combinator::ConsWmon], vec![Combinator::ConsWmonFourcase]] {
        let learner = pipeline(&base, &steps);
        let p = run(&learner, &informant, 16);
        let verdicts: Vec<String> = [Restriction::Cons, Restriction::WMon, Restriction::Mon, Restriction::Bc]
            .into_iter()
            .map(|r| format!("{}={}", r.id(), check(r, &p, &informant).satisfied))
            .collect();
        println!("{:<40} {}", learner.name(), verdicts.join(" "));
    }

    println!("fourcase trace on {}", informant.prefix(9));
    for (case, h) in cons_wmon_fourcase_trace(&base, &informant.prefix(9)) {
        println!("  {case:?} {}", h.extension());
    }
}
