//! Triplet witnesses from the same ring: anisotropic couplings give W+,
//! a polarized probe read out through σᶻ gives the effective witness with
//! separable floor −1/4, and rotating probe and readout to σˣ or σʸ targets
//! the Φ states.

use probe_witness::interference::{extract_observable, separable_minimum};
use probe_witness::qmath::pauli::Axis;
use probe_witness::spin::{
    anisotropic_triplet_scenario, effective_triplet_scenario, rotated_phi_scenario, TripletVariant,
};
use probe_witness::states::{bell_projector, BellKind};
use probe_witness::witnesses::w_plus;

fn main() -> probe_witness::Result<()> {
    for v in [TripletVariant::Plus3Half, TripletVariant::MinusHalf] {
        let m = extract_observable(&anisotropic_triplet_scenario(v))?;
        println!("{v:?}: |M - W+| = {:.2e}", m.max_abs_diff(&w_plus()));
    }

    let cases = [
        ("sigma-z", effective_triplet_scenario()),
        ("sigma-x", rotated_phi_scenario(Axis::X)?),
        ("sigma-y", rotated_phi_scenario(Axis::Y)?),
    ];
    for (name, s) in cases {
        let m = extract_observable(&s)?;
        let floor = separable_minimum(&m)?.value;
        let values: Vec<String> = BellKind::ALL
            .iter()
            .map(|&k| format!("{k:?} {:+.3}", m.trace_product(&bell_projector(k)).unwrap().re))
            .collect();
        println!("{name}: separable floor {floor:+.4}; {}", values.join(", "));
    }
    Ok(())
}
