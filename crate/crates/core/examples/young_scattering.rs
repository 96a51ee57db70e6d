//! A photon scattered once by either of two atoms. The unpolarized,
//! unanalyzed fringe measures (1 + (k̂·k̂′)²) I + τ₁·𝐌·τ₂; detecting at right
//! angles gives 2 W−.

use probe_witness::interference::{extract_observable, separable_minimum};
use probe_witness::photon::{
    young_dyadic_observable, young_scenario, DetectionChannel, ProbePreparation, ScatteringGeometry,
};
use probe_witness::states::{bell_projector, BellKind};

fn main() -> probe_witness::Result<()> {
    let k = [0.0, 0.0, 1.0];
    println!("cos(k,k')   <M> on singlet   separable min   |M - closed form|");
    for i in 0..=10 {
        let c = i as f64 / 10.0;
        let k_out = [(1.0 - c * c).sqrt(), 0.0, c];
        let g = ScatteringGeometry::with_atoms_along(k, k_out, [0.0, 1.0, 0.0], 3.0)?;
        let s = young_scenario(&g, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed)?;
        let m = extract_observable(&s)?;
        let on_singlet = m.trace_product(&bell_projector(BellKind::PsiMinus))?.re;
        let sep = separable_minimum(&m)?.value;
        let dev = m.max_abs_diff(&young_dyadic_observable(k, k_out));
        println!("{c:8.2}   {on_singlet:+14.4}   {sep:+13.4}   {dev:.1e}   phase {:+.3}", g.young_phase());
    }
    Ok(())
}
