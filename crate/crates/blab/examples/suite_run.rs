//! Drives the JSON-configured verification suite programmatically: parse a
//! config, run its checks, write report and artifacts, and demonstrate that
//! the report body is byte-deterministic.

use blab::config::{parse_config, run, write_outputs};

const CONFIG: &str = r#"{
  "weight": { "family": "exponential", "c": 1.0, "alpha": 1.0 },
  "rule": { "r_max": 0.95, "panels": 20, "gl_order": 10, "angular": 128 },
  "checks": ["weights", "moments", "kernel", "projection", "covering", "dbar", "duality", "density"],
  "seed": 11,
  "label": "example suite"
}"#;

fn main() -> blab::Result<()> {
    let cfg = parse_config(CONFIG)?;
    let out = run(&cfg)?;
    for c in &out.report.body.checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }

    let dir = std::env::temp_dir().join("blab_suite_example");
    write_outputs(&out, &dir)?;
    println!();
    println!("wrote {}", dir.join("report.json").display());
    for a in &out.artifacts {
        println!("wrote {}", dir.join(&a.name).display());
    }

    // identical config + seed must reproduce the report body byte for byte
    let again = run(&cfg)?;
    let same = out.report.body_json()? == again.report.body_json()?;
    println!();
    println!("rerun report body identical: {}", if same { "yes" } else { "NO" });
    Ok(())
}
