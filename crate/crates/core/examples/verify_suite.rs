//! The identity and claim checks behind `probe-witness verify`.

fn main() {
    let checks = probe_witness::cli::run_checks().expect("checks run");
    for c in &checks {
        println!(
            "{} {:<48} {:.2e} (tol {:.0e})",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    std::process::exit(if failed == 0 { 0 } else { 4 });
}
