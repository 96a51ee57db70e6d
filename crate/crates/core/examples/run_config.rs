//! Runs a TOML experiment config the way `probe-witness witness` does and
//! prints a short summary. Defaults to configs/cbs_transverse.toml.

use probe_witness::cli::{run, ScenarioConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/cbs_transverse.toml").to_string());
    let text = std::fs::read_to_string(&path).expect("readable config");
    let cfg = ScenarioConfig::from_toml_str(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    let report = run(&cfg, cfg.seed.unwrap_or(0), 0).expect("run");
    let w = &report.witness;
    println!(
        "{}: <M> = {:+.4}, separable min {:+.4}, verdict {}, ppt {}",
        report.realization, w.target_expectation, w.separable_min, w.verdict, w.ppt_verdict
    );
    if let Some(p) = report.pattern {
        println!("fringe: I0 = {:.4}, V = {:.4}, alpha = {:+.4}", p.i0, p.visibility, p.alpha);
    }
}
