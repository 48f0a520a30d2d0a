use std::path::Path;
use std::process::{Command, Output};

use inferlab::harness::Report;

const BIN: &str = env!("CARGO_BIN_EXE_inferlab");

fn inferlab(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("INFERLAB_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const SATISFIED: &str = r#"
horizon = 10
restrictions = ["cons", "wmon", "bc"]
[learner]
id = "cofinite"
combinators = ["cons_wmon"]
[[targets]]
language = "cofinite"
params = "remove={1}"
"#;

const VIOLATED: &str = r#"
horizon = 10
restrictions = ["bc", "mon", "caut_tar"]
[learner]
id = "cofinite"
[[targets]]
language = "cofinite"
params = "remove={1}"
"#;

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = inferlab(&["check", &write_config(dir.path(), "ok.toml", SATISFIED)]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    let bad = inferlab(&["check", &write_config(dir.path(), "bad.toml", VIOLATED)]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("caut_tar VIOLATED"), "{text}");
    assert!(text.contains("ext=|1"), "{text}");

    let expected = format!("expect = \"witness\"\n{VIOLATED}");
    let wanted = inferlab(&["check", &write_config(dir.path(), "want.toml", &expected)]);
    assert_eq!(wanted.status.code(), Some(0));

    let broken = inferlab(&["check", &write_config(dir.path(), "broken.toml", "horizon = 0\n[learner]\nid = \"nobody\"\n")]);
    assert_eq!(broken.status.code(), Some(2));
    let err = String::from_utf8_lossy(&broken.stderr);
    assert!(err.contains("horizon") && err.contains("nobody"), "{err}");

    assert_eq!(inferlab(&["check", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn machine_reports_are_written_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "c.toml", &format!("{VIOLATED}\n[informants]\nseeds = [3, 4]\n"));
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    inferlab(&["check", &config, "--output", a.to_str().unwrap()]);
    inferlab(&["check", &config, "--format", "json", "--output", b.to_str().unwrap()]);
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    let report = Report::from_json(&ta).unwrap();
    assert_eq!(report.fingerprint.seeds, vec![3, 4]);
    assert!(report.cells.iter().all(|c| c.revalidate()));
}

#[test]
fn seed_override_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "c.toml", &format!("{SATISFIED}\n[informants]\nseeds = [3, 4]\n"));
    let out = Command::new(BIN).args(["check", &config, "--format", "json"]).env("INFERLAB_SEED", "77").output().unwrap();
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.fingerprint.seeds, vec![77]);
    assert!(report.cells.iter().any(|c| c.informant == "seed 77"));
}

#[test]
fn adversary_exit_codes() {
    let found = inferlab(&["adversary", "caut_tar", "--learner", "cofinite", "--expect", "witness"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("verified true"));

    let unexpected = inferlab(&["adversary", "caut_tar", "--learner", "cofinite"]);
    assert_eq!(unexpected.status.code(), Some(1));

    let exhausted = inferlab(&["adversary", "caut_tar", "--learner", "fin_pos"]);
    assert_eq!(exhausted.status.code(), Some(0));
    assert!(stdout(&exhausted).contains("exhausted"));

    let garbage = inferlab(&["adversary", "caut_tar", "--", BIN, "opponent", "cofinite", "--misbehave", "garbage"]);
    assert_eq!(garbage.status.code(), Some(2));

    let external = inferlab(&["adversary", "dual_vs_mon", "--expect", "witness", "--", BIN, "opponent", "even_dualmon"]);
    assert_eq!(external.status.code(), Some(0), "{}", stdout(&external));
    assert!(stdout(&external).contains("element=10"));

    assert_eq!(inferlab(&["adversary", "nope"]).status.code(), Some(2));
}

#[test]
fn algebra_calculator() {
    let run = |args: &[&str]| stdout(&inferlab(args)).trim().to_string();
    assert_eq!(run(&["algebra", "relate", "|10", "01|01"]), "incomparable");
    assert_eq!(run(&["algebra", "relate", "|100000", "|10"]), "proper-subset");
    assert_eq!(run(&["algebra", "combine", "intersection", "|100", "|10"]), "|100000");
    assert_eq!(run(&["algebra", "combine", "union", "1|0", "01|0"]), "11|0");
    assert_eq!(run(&["algebra", "complement", "110|0"]), "00|1");
    assert_eq!(run(&["algebra", "normalize", "110010|1010"]), "110|01");
    assert_eq!(inferlab(&["algebra", "normalize", "1|"]).status.code(), Some(2));
}

#[test]
fn demo_replays_everything() {
    let out = inferlab(&["demo"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.lines().count() >= 10);
}

#[test]
fn list_shows_the_catalog() {
    let text = stdout(&inferlab(&["list", "learners"]));
    for id in ["fin_pos", "cofinite", "segment", "stream_mon", "even_dualmon", "n_or_fin", "memorizer", "maxpos"] {
        assert!(text.contains(id), "{id}");
    }
}
