//! Coherent backscattering off two atoms with a polarizing beam splitter
//! at k̂′ = −k̂. Each output port sees a Bell witness; the single-scattering
//! background has visibility ½(1 + ⟨(k̂·τ₁)(k̂·τ₂)⟩) and no phase shift.

use probe_witness::interference::{extract_observable, pattern_params, separable_minimum};
use probe_witness::photon::{
    background_axis, background_visibility_law, cbs_channel_scenario, single_scattering_background, CbsChannel,
    DetectionChannel, ScatteringGeometry,
};
use probe_witness::qmath::SpaceLayout;
use probe_witness::states::{bell_state, BellKind, DensityMatrix};
use probe_witness::witnesses::{affine_fit, w_minus, w_plus};

fn main() -> probe_witness::Result<()> {
    let g = ScatteringGeometry::cbs_canonical();
    for ch in [CbsChannel::AlongAxis, CbsChannel::Transverse] {
        let s = cbs_channel_scenario(&g, ch)?;
        let m = extract_observable(&s)?;
        let (fm, fp) = (affine_fit(&m, &w_minus()), affine_fit(&m, &w_plus()));
        println!("{ch:?} (analyzer {:?}):", ch.direction(&g));
        println!("  fit W-: c = {:+.3}, d = {:+.3}, residual {:.1e}", fm.scale, fm.offset, fm.residual);
        println!("  fit W+: c = {:+.3}, d = {:+.3}, residual {:.1e}", fp.scale, fp.offset, fp.residual);
        println!("  separable min {:+.4}", separable_minimum(&m)?.value);
        for k in [BellKind::PsiMinus, BellKind::PsiPlus] {
            let p = pattern_params(&s, &bell_state(k).density())?;
            println!("  {k:?}: V = {:.3}, cos(alpha) = {:+.3}", p.visibility, p.alpha.cos());
        }
    }

    println!("single-scattering background, q = {:?}", background_axis(&g));
    let states = [
        ("mixed", DensityMatrix::maximally_mixed(SpaceLayout::two_qubits())),
        ("psi-", bell_state(BellKind::PsiMinus).density()),
        ("psi+", bell_state(BellKind::PsiPlus).density()),
        ("phi+", bell_state(BellKind::PhiPlus).density()),
    ];
    for (name, rho) in &states {
        let p = single_scattering_background(&g, DetectionChannel::Unanalyzed, rho)?;
        let law = background_visibility_law(rho, background_axis(&g))?;
        println!("  {name:>5}: V = {:.3} (law {law:.3}), alpha = {:+.3}", p.visibility, p.alpha);
    }
    Ok(())
}
