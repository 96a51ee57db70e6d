//! Singlet witness on Werner states p|Ψ−⟩⟨Ψ−| + (1−p) I/4 against the
//! partial-transpose test: both flip at p = 1/3.

use probe_witness::interference::CalibratedWitness;
use probe_witness::spin::singlet_scenario;
use probe_witness::states::werner;

fn main() -> probe_witness::Result<()> {
    let w = CalibratedWitness::from_scenario(&singlet_scenario())?;
    println!("    p    <W->   witness  ppt");
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let r = w.report(&werner(p)?)?;
        println!("{p:5.2}  {:+.3}  {:>7}  {:>5}", r.target_expectation, r.verdict, r.ppt_verdict);
    }
    Ok(())
}
