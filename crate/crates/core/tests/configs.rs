use std::path::Path;

use inferlab::harness::{run_experiment, validate_config};

#[test]
fn shipped_configs_meet_their_expectations() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "toml") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg = validate_config(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let report = run_experiment(&cfg);
        assert!(report.errors.is_empty(), "{}: {:?}", path.display(), report.errors);
        assert_eq!(report.exit_code(), 0, "{}\n{}", path.display(), report.render_text());
        assert!(report.cells.iter().all(|c| c.revalidate()), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn sampled_targets_use_the_global_restriction_list() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/segments_poison.toml");
    let report = run_experiment(&validate_config(&std::fs::read_to_string(path).unwrap()).unwrap());
    let sampled: Vec<_> = report.cells.iter().filter(|c| c.scope == inferlab::harness::Scope::GlobalSampled).collect();
    assert_eq!(sampled.len(), 40 * 3);
    assert!(sampled.iter().all(|c| c.restriction == inferlab::restrictions::Restriction::Cons));
    assert!(report.cells.iter().any(|c| c.restriction == inferlab::restrictions::Restriction::WMonD));
}
