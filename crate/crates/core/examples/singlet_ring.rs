//! Electron spin through an Aharonov–Bohm ring with one magnetic impurity
//! per arm. At 2gt = π/2 the fringe at zero flux reads out the singlet
//! witness W−.

use probe_witness::interference::{extract_observable, intensity, pattern_params, phase_grid, ExternalPhase};
use probe_witness::qmath::SpaceLayout;
use probe_witness::spin::singlet_scenario;
use probe_witness::states::{bell_state, BellKind, DensityMatrix};
use probe_witness::witnesses::w_minus;

fn main() -> probe_witness::Result<()> {
    let ring = singlet_scenario();
    let m = extract_observable(&ring)?;
    println!("|M - W-| = {:.2e}", m.max_abs_diff(&w_minus()));

    let states = [
        ("singlet", bell_state(BellKind::PsiMinus).density()),
        ("mixed", DensityMatrix::maximally_mixed(SpaceLayout::two_qubits())),
    ];
    for (name, rho) in &states {
        let p = pattern_params(&ring, rho)?;
        println!(
            "{name:>8}: I0 = {:.3}  V = {:.3}  alpha = {:+.3}  <M> = {:+.3}",
            p.i0,
            p.visibility,
            p.alpha,
            rho.expectation(&m)?
        );
    }

    println!("\n   phi   singlet   mixed");
    for phi in phase_grid(13) {
        let a = intensity(&ring, &states[0].1, ExternalPhase(phi))?;
        let b = intensity(&ring, &states[1].1, ExternalPhase(phi))?;
        println!("{phi:+6.3}  {a:8.4}  {b:6.4}");
    }
    Ok(())
}
