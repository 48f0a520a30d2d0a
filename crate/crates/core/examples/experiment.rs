//! Running an experiment config and reading its report.
//!
//! ```text
//! cargo run --example experiment -- crates/core/configs/stream_cons_wmon.toml
//! ```
//!
//! Without an argument a small inline config is used.

use inferlab::harness::{run_experiment, validate_config, Report};

const INLINE: &str = r#"
name = "inline"
horizon = 12
restrictions = ["cons", "mon", "caut_tar", "bc"]

[learner]
id = "cofinite"

[[targets]]
family = "cofinite"
sweep = { universe = 3, max_size = 1 }

[informants]
seeds = [42]

[[adversaries]]
id = "caut_tar"
learner = { id = "cofinite" }
expect = "witness"
"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).unwrap(),
        None => INLINE.to_string(),
    };
    let cfg = match validate_config(&text) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let report = run_experiment(&cfg);
    print!("{}", report.render_text());

    let json = report.to_json();
    let back = Report::from_json(&json).unwrap();
    assert_eq!(back, report);
    println!("json: {} bytes, {} violations, exit code {}", json.len(), report.violations(), report.exit_code());
}
