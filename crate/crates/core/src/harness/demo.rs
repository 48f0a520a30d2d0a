//! One replay per result: each line states the claim and what the code
//! observed on the instance used to prove it.

use crate::adversary::{mindchange_driver, run_adversary, verify_witness, AdversaryId, Bounds, Outcome};
use crate::catalog::{cofinite, cofinite_psd, constant, even_dualmon, fin_pos, memorizer, n_or_fin, segment, stream_mon};
use crate::combinators::{canonical_prefix, cons_wmon_wrapper, dual_wmon_poison, patched_learner, to_set_driven};
use crate::evidence::{Informant, Labeled};
use crate::interaction::{run, Learner};
use crate::restrictions::{check, Restriction};
use crate::upset::UpSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoLine {
    pub claim: &'static str,
    pub outcome: String,
    pub ok: bool,
}

fn adversary_line(claim: &'static str, id: AdversaryId, op: &Learner) -> DemoLine {
    match run_adversary(id, op, Bounds::default()) {
        Ok(w) => {
            let verified = verify_witness(&w, op);
            let params = w
                .violation()
                .map(|v| v.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "))
                .unwrap_or_default();
            DemoLine {
                claim,
                outcome: format!("{id} vs {}: {} [{params}]", op.name(), w.summary()),
                ok: verified && !w.is_exhausted(),
            }
        }
        Err(e) => DemoLine { claim, outcome: e.to_string(), ok: false },
    }
}

fn checks_line(claim: &'static str, learner: &Learner, target: &UpSet, horizon: usize, rs: &[Restriction]) -> DemoLine {
    let informant = Informant::canonical(target);
    let p = run(learner, &informant, horizon);
    let verdicts: Vec<_> = rs.iter().map(|&r| check(r, &p, &informant)).collect();
    let outcome = verdicts
        .iter()
        .map(|v| format!("{}={}", v.restriction, if v.satisfied { "ok" } else { "violated" }))
        .collect::<Vec<_>>()
        .join(" ");
    DemoLine {
        claim,
        outcome: format!("{} on {target}, horizon {horizon}: {outcome}", learner.name()),
        ok: verdicts.iter().all(|v| v.satisfied),
    }
}

pub fn demo() -> Vec<DemoLine> {
    let mut lines = vec![
        adversary_line("target-cautious learning loses the cofinite sets", AdversaryId::CautTar, &cofinite()),
        adversary_line("cautious learning forbids infinite descents", AdversaryId::CautInf, &cofinite()),
        adversary_line("finitely cautious learning loses ℕ-or-finite", AdversaryId::CautFin, &n_or_fin()),
        adversary_line("strong monotonicity does not give its dual", AdversaryId::SmonVsDual, &fin_pos()),
        adversary_line("dual strong monotonicity does not give the original", AdversaryId::DualVsSmon, &segment()),
        adversary_line("monotonicity does not give its dual", AdversaryId::MonVsDual, &stream_mon()),
        adversary_line("dual monotonicity does not give the original", AdversaryId::DualVsMon, &even_dualmon()),
    ];

    for op in [memorizer(), constant(UpSet::full())] {
        let line = match mindchange_driver(&op, 10, 50) {
            Ok(w) => DemoLine {
                claim: "set-driven learners can be driven through many mind changes",
                outcome: format!("mindchange vs {}: {}", op.name(), w.summary()),
                ok: verify_witness(&w, &op)
                    && match &w.outcome {
                        Outcome::MindChanges { rounds } => rounds.len() == 10,
                        Outcome::SplitPair(s) => s.rounds.is_empty(),
                        _ => false,
                    },
            },
            Err(e) => DemoLine { claim: "set-driven learners can be driven through many mind changes", outcome: e.to_string(), ok: false },
        };
        lines.push(line);
    }

    let target = UpSet::cofinite([1]);
    let informant = Informant::canonical(&target);
    let p = run(&cofinite_psd(), &informant, 20);
    let bc = check(Restriction::Bc, &p, &informant);
    let ex = check(Restriction::Ex, &p, &informant);
    lines.push(DemoLine {
        claim: "behaviourally correct is not explanatory",
        outcome: format!("cofinite_psd on {target}: bc={} ex={}", bc.satisfied, ex.satisfied),
        ok: bc.satisfied && !ex.satisfied,
    });

    let h = segment();
    let sd = to_set_driven(&h);
    let mut agree = true;
    for seed in 0..5 {
        let informant = Informant::scheduled(&UpSet::segment(6), seed, &[]).expect("default plan");
        for n in 0..=20 {
            let d = informant.prefix(n).content();
            agree &= sd.on_set(&d) == h.conjecture(&canonical_prefix(&d));
        }
    }
    lines.push(DemoLine {
        claim: "every learner has a set-driven canonical reduction",
        outcome: format!("to_sd(segment) agrees with segment on canonical prefixes: {agree}"),
        ok: agree,
    });

    lines.push(checks_line(
        "patching makes conjectures consistent and keeps monotonicity",
        &patched_learner(&cofinite()),
        &UpSet::cofinite([1, 4]),
        20,
        &[Restriction::Cons, Restriction::Mon, Restriction::Bc],
    ));
    lines.push(checks_line(
        "consistent and weakly monotone learning together",
        &cons_wmon_wrapper(&cofinite()),
        &UpSet::cofinite([1]),
        10,
        &[Restriction::Cons, Restriction::WMon, Restriction::Bc],
    ));
    lines.push(checks_line(
        "consistent and dual weakly monotone learning by poisoning",
        &dual_wmon_poison(&segment()),
        &UpSet::segment(3),
        20,
        &[Restriction::Cons, Restriction::WMonD, Restriction::Bc],
    ));
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_line_holds() {
        for line in demo() {
            assert!(line.ok, "{}: {}", line.claim, line.outcome);
        }
    }
}
