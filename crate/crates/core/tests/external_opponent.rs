use std::time::Duration;

use inferlab::adversary::{run_adversary, verify_witness, AdversaryId, Bounds, ExternalOpponent, Opponent, OpponentError};
use inferlab::catalog;
use inferlab::evidence::Informant;
use inferlab::upset::UpSet;

const BIN: &str = env!("CARGO_BIN_EXE_inferlab");

fn spawn(args: &[&str], timeout_ms: u64) -> ExternalOpponent {
    let args: Vec<String> = std::iter::once("opponent").chain(args.iter().copied()).map(String::from).collect();
    ExternalOpponent::spawn(BIN, &args, Duration::from_millis(timeout_ms)).unwrap()
}

#[test]
fn external_learner_answers_like_the_local_one() {
    let remote = spawn(&["stream_mon"], 5000);
    let local = catalog::stream_mon();
    let sigma = Informant::canonical(&catalog::stream_z(1, 3)).prefix(15);
    assert_eq!(remote.trajectory(&sigma).unwrap(), local.trajectory(&sigma));
}

#[test]
fn external_witnesses_verify_and_match_local_ones() {
    let remote = spawn(&["stream_mon"], 5000);
    let w = run_adversary(AdversaryId::MonVsDual, &remote, Bounds::default()).unwrap();
    assert!(verify_witness(&w, &remote));
    let local = run_adversary(AdversaryId::MonVsDual, &catalog::stream_mon(), Bounds::default()).unwrap();
    assert_eq!(w.outcome, local.outcome);
    assert!(!verify_witness(&w, &catalog::stream_mon()), "opponent name is part of the witness");
}

#[test]
fn malformed_responses_are_errors_not_witnesses() {
    let remote = spawn(&["cofinite", "--misbehave", "garbage"], 5000);
    match run_adversary(AdversaryId::CautTar, &remote, Bounds::default()) {
        Err(OpponentError::Malformed(line)) => assert_eq!(line, "H not-a-label"),
        other => panic!("expected a malformed-response error, got {other:?}"),
    }
}

#[test]
fn silent_opponents_time_out() {
    let remote = spawn(&["cofinite", "--misbehave", "silent"], 200);
    assert_eq!(
        run_adversary(AdversaryId::CautTar, &remote, Bounds::default()),
        Err(OpponentError::Timeout(Duration::from_millis(200)))
    );
    // After a timeout the stream is out of step, so later requests fail too.
    assert!(remote.respond(&Informant::canonical(&UpSet::full()).prefix(0)).is_err());
}

#[test]
fn missing_programs_fail_to_spawn() {
    let e = ExternalOpponent::spawn("/nonexistent/opponent", &[], Duration::from_millis(100));
    assert!(matches!(e, Err(OpponentError::Spawn(_))));
}
