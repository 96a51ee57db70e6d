//! Closed-form versus brute-force identities and the entanglement claims of
//! every realization, each reduced to a residual against a tolerance.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::interference::{
    extract_observable, fit_pattern, intensity, pattern_params, phase_grid, separable_minimum, CalibratedWitness,
    ExternalPhase, InterferencePattern, ProbeScenario,
};
use crate::photon::{
    cbs_channel_scenario, normalized, single_scattering_background, young_dyadic_observable, young_scenario,
    CbsChannel, DetectionChannel, ProbePreparation, ScatteringGeometry,
};
use crate::qmath::pauli::Axis;
use crate::qmath::{partial_trace, CMatrix, SpaceLayout, Subsystem};
use crate::spin::{
    anisotropic_triplet_scenario, cross_trace, cross_trace_closed_form, effective_triplet_scenario,
    rotated_phi_scenario, singlet_scenario, spin_flip_closed_form, spin_flip_unitary, Impurity, SpinCoupling,
    TripletVariant,
};
use crate::states::{bell_projector, ppt_check, random_separable_mixture, werner, BellKind, DensityMatrix};
use crate::witnesses::{affine_fit, effective_triplet_witness, w_minus, w_plus};
use crate::Result;

const SEED: u64 = 20_240_611;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), residual, tolerance, passed: residual <= tolerance }
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("check serializes")
    }
}

fn bell_value(m: &CMatrix, kind: BellKind) -> f64 {
    m.trace_product(&bell_projector(kind)).expect("4x4").re
}

/// Positive affine residual of `m ≈ c·w + d·I`; infinite when c ≤ 0.
fn positive_affine_residual(m: &CMatrix, w: &CMatrix) -> f64 {
    let fit = affine_fit(m, w);
    if fit.scale > 0.0 {
        fit.residual
    } else {
        f64::INFINITY
    }
}

/// How far `value` stays above the entanglement threshold (0 when detected).
fn detection_shortfall(value: f64, threshold: f64) -> f64 {
    (value - (threshold - crate::interference::DECISION_TOLERANCE)).max(0.0)
}

fn spin_checks(out: &mut Vec<CheckResult>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut unitary, mut cross) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let gt = rng.random_range(-PI..PI);
        for imp in [Impurity::First, Impurity::Second] {
            let spectral = spin_flip_unitary(SpinCoupling::isotropic(gt), imp);
            unitary = unitary.max(spectral.max_abs_diff(&spin_flip_closed_form(gt, imp)));
        }
        let c = SpinCoupling::isotropic(gt);
        cross = cross.max(cross_trace(c, c).max_abs_diff(&cross_trace_closed_form(gt)));
    }
    out.push(CheckResult::new("spin_flip_closed_form_vs_spectral_expm", unitary, 1e-12));
    out.push(CheckResult::new("cross_trace_closed_form_vs_partial_trace", cross, 1e-12));

    let m = extract_observable(&singlet_scenario())?;
    out.push(CheckResult::new("singlet_observable_is_w_minus", m.max_abs_diff(&w_minus()), 1e-10));
    out.push(CheckResult::new("singlet_value_on_psi_minus", (bell_value(&m, BellKind::PsiMinus) + 1.0).abs(), 1e-12));

    let aniso = [TripletVariant::Plus3Half, TripletVariant::MinusHalf]
        .iter()
        .map(|&v| Ok(extract_observable(&anisotropic_triplet_scenario(v))?.max_abs_diff(&w_plus())))
        .collect::<Result<Vec<_>>>()?;
    out.push(CheckResult::new(
        "anisotropic_triplet_observable_is_w_plus",
        aniso.into_iter().fold(0.0, f64::max),
        1e-10,
    ));

    let eff = extract_observable(&effective_triplet_scenario())?;
    out.push(CheckResult::new("effective_triplet_observable", eff.max_abs_diff(&effective_triplet_witness()), 1e-10));
    out.push(CheckResult::new(
        "effective_triplet_value_on_psi_plus",
        (bell_value(&eff, BellKind::PsiPlus) + 1.0).abs(),
        1e-12,
    ));
    out.push(CheckResult::new(
        "effective_triplet_separable_minimum",
        (separable_minimum(&eff)?.value + 0.25).abs(),
        1e-4,
    ));

    // The σˣ rotation lands on Φ−, σʸ on Φ+.
    for (axis, kind, name) in [(Axis::X, BellKind::PhiMinus, "x"), (Axis::Y, BellKind::PhiPlus, "y")] {
        let m = extract_observable(&rotated_phi_scenario(axis)?)?;
        out.push(CheckResult::new(
            &format!("rotated_{name}_value_on_{}", snake(kind)),
            (bell_value(&m, kind) + 1.0).abs(),
            1e-10,
        ));
        out.push(CheckResult::new(
            &format!("rotated_{name}_separable_minimum"),
            (separable_minimum(&m)?.value + 0.25).abs(),
            1e-4,
        ));
    }
    Ok(())
}

/// Nine (k̂, k̂′) pairs built from three directions.
pub fn young_direction_grid() -> Vec<([f64; 3], [f64; 3])> {
    let dirs = [[0.0, 0.0, 1.0], normalized([1.0, 0.0, 1.0]).unwrap(), normalized([0.3, -0.8, 0.5]).unwrap()];
    let outs = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], normalized([-0.2, 0.4, -0.9]).unwrap()];
    dirs.iter().flat_map(|&k| outs.iter().map(move |&q| (k, q))).collect()
}

fn photon_checks(out: &mut Vec<CheckResult>) -> Result<()> {
    let mut worst = 0.0f64;
    for (k, q) in young_direction_grid() {
        let g = ScatteringGeometry::with_atoms_along(k, q, [0.0, 0.0, 1.0], 2.5)?;
        let s = young_scenario(&g, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed)?;
        worst = worst.max(extract_observable(&s)?.max_abs_diff(&young_dyadic_observable(k, q)));
    }
    out.push(CheckResult::new("young_dyadic_formula_vs_polarization_sum", worst, 1e-12));
    let perp = ScatteringGeometry::with_atoms_along([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], 2.5)?;
    let m = extract_observable(&young_scenario(&perp, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed)?)?;
    out.push(CheckResult::new(
        "young_perpendicular_is_singlet_witness",
        positive_affine_residual(&m, &w_minus()),
        1e-10,
    ));

    // The analyzer along n̂ selects W+, the one along n̂ × k̂ selects W−.
    let g = ScatteringGeometry::cbs_canonical();
    for (ch, w, kind, name) in [
        (CbsChannel::AlongAxis, w_plus(), BellKind::PsiPlus, "along_axis"),
        (CbsChannel::Transverse, w_minus(), BellKind::PsiMinus, "transverse"),
    ] {
        let m = extract_observable(&cbs_channel_scenario(&g, ch)?)?;
        out.push(CheckResult::new(&format!("cbs_{name}_affine_witness"), positive_affine_residual(&m, &w), 1e-10));
        let sep = separable_minimum(&m)?.value;
        out.push(CheckResult::new(
            &format!("cbs_{name}_detects_{}", snake(kind)),
            detection_shortfall(bell_value(&m, kind), sep),
            0.0,
        ));
    }

    let mixed = DensityMatrix::maximally_mixed(SpaceLayout::two_qubits());
    let bg = single_scattering_background(&g, DetectionChannel::Unanalyzed, &mixed)?;
    out.push(CheckResult::new(
        "background_mixed_visibility_half",
        (bg.visibility - 0.5).abs().max(bg.alpha.abs()),
        1e-10,
    ));
    let psi = [BellKind::PsiPlus, BellKind::PsiMinus]
        .iter()
        .map(|&k| Ok(single_scattering_background(&g, DetectionChannel::Unanalyzed, &bell_density(k))?.visibility))
        .collect::<Result<Vec<_>>>()?;
    out.push(CheckResult::new("background_psi_visibility_zero", psi.into_iter().fold(0.0, f64::max), 1e-10));
    Ok(())
}

fn snake(kind: BellKind) -> &'static str {
    match kind {
        BellKind::PsiPlus => "psi_plus",
        BellKind::PsiMinus => "psi_minus",
        BellKind::PhiPlus => "phi_plus",
        BellKind::PhiMinus => "phi_minus",
    }
}

fn bell_density(kind: BellKind) -> DensityMatrix {
    crate::states::bell_state(kind).density()
}

/// The five calibrated witness scenarios of the soundness sweep.
pub fn calibrated_scenarios() -> Result<Vec<(&'static str, ProbeScenario)>> {
    let g = ScatteringGeometry::cbs_canonical();
    let perp = ScatteringGeometry::with_atoms_along([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], 2.5)?;
    Ok(vec![
        ("spin-singlet", singlet_scenario()),
        ("spin-triplet-effective", effective_triplet_scenario()),
        ("young", young_scenario(&perp, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed)?),
        ("cbs-along-axis", cbs_channel_scenario(&g, CbsChannel::AlongAxis)?),
        ("cbs-transverse", cbs_channel_scenario(&g, CbsChannel::Transverse)?),
    ])
}

fn soundness_checks(out: &mut Vec<CheckResult>) -> Result<()> {
    let witnesses =
        calibrated_scenarios()?.iter().map(|(_, s)| CalibratedWitness::from_scenario(s)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut false_positives, mut unbacked) = (0usize, 0usize);
    for _ in 0..10_000 {
        let rho = random_separable_mixture(&mut rng, 8);
        for w in &witnesses {
            let r = w.report(&rho)?;
            false_positives += r.verdict as usize;
            unbacked += (r.verdict && !r.ppt_verdict) as usize;
        }
    }
    for kind in BellKind::ALL {
        let rho = bell_density(kind);
        for w in &witnesses {
            let r = w.report(&rho)?;
            unbacked += (r.verdict && !r.ppt_verdict) as usize;
        }
    }
    out.push(CheckResult::new("soundness_no_separable_detections", false_positives as f64, 0.0));
    out.push(CheckResult::new("verdict_implies_ppt_entangled", unbacked as f64, 0.0));

    let witness = CalibratedWitness::from_scenario(&singlet_scenario())?;
    let grid: Vec<f64> = (0..101).map(|k| k as f64 / 100.0).collect();
    let (mut dev, mut first_verdict, mut first_ppt) = (0.0f64, None, None);
    for &p in &grid {
        let r = witness.report(&werner(p)?)?;
        dev = dev.max((r.target_expectation - (1.0 - 3.0 * p) / 2.0).abs());
        if r.verdict && first_verdict.is_none() {
            first_verdict = Some(p);
        }
        if ppt_check(&werner(p)?)?.entangled && first_ppt.is_none() {
            first_ppt = Some(p);
        }
    }
    out.push(CheckResult::new("werner_expectation_linear", dev, 1e-10));
    let gap = match (first_verdict, first_ppt) {
        (Some(a), Some(b)) => (a - b).abs(),
        _ => f64::INFINITY,
    };
    out.push(CheckResult::new("werner_boundary_matches_ppt", gap, 0.01 + 1e-12));
    Ok(())
}

fn fringe_checks(out: &mut Vec<CheckResult>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut eq12, mut refit) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let s = ProbeScenario::random(&mut rng);
        let rank = rng.random_range(1..=4);
        let rho = crate::states::random_density_with(&mut rng, 4, rank)?;
        let p = pattern_params(&s, &rho)?;
        let samples = phase_grid(25)
            .into_iter()
            .map(|phi| Ok((phi, intensity(&s, &rho, ExternalPhase(phi))?)))
            .collect::<Result<Vec<_>>>()?;
        for &(phi, v) in &samples {
            eq12 = eq12.max((v - p.intensity(phi)).abs());
        }
        let truth = InterferencePattern::new(
            rng.random_range(0.1..3.0),
            rng.random_range(0.0..1.0),
            rng.random_range(-3.0..3.0),
        )?;
        let synthetic: Vec<_> = phase_grid(9)[..8].iter().map(|&phi| (phi, truth.intensity(phi))).collect();
        let fit = fit_pattern(&synthetic)?;
        let dalpha =
            if truth.visibility > 1e-6 { crate::interference::wrap_phase(fit.alpha - truth.alpha).abs() } else { 0.0 };
        refit = refit.max((fit.i0 - truth.i0).abs().max((fit.visibility - truth.visibility).abs()).max(dalpha));
    }
    out.push(CheckResult::new("four_term_sum_equals_fringe_form", eq12, 1e-9));
    out.push(CheckResult::new("fringe_fit_round_trip", refit, 1e-9));

    let s = singlet_scenario();
    let rho = bell_density(BellKind::PsiMinus);
    let grid = phase_grid(73);
    let values = grid.iter().map(|&phi| intensity(&s, &rho, ExternalPhase(phi))).collect::<Result<Vec<_>>>()?;
    let argmin = (0..grid.len()).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    out.push(CheckResult::new("singlet_fringe_minimum_at_origin", grid[argmin].abs(), 2.0 * PI / 72.0 + 1e-12));
    Ok(())
}

fn qmath_checks(out: &mut Vec<CheckResult>) -> Result<()> {
    // partial trace of ρ₁ ⊗ ρ₂ ⊗ ρ_p returns ρ₁ ⊗ ρ₂
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let r12 = crate::states::random_density_with(&mut rng, 4, 4)?;
    let rp = crate::states::random_density_with(&mut rng, 2, 2)?;
    let layout = SpaceLayout::target_with_probe(2, Subsystem::ProbeIn);
    let joint = crate::qmath::kron(r12.op(), rp.op())?;
    let back = partial_trace(&joint, &layout, &[Subsystem::Target1, Subsystem::Target2])?;
    out.push(CheckResult::new("partial_trace_of_product", back.max_abs_diff(r12.op()), 1e-14));
    let u = spin_flip_unitary(SpinCoupling::isotropic(FRAC_PI_4), Impurity::First);
    out.push(CheckResult::new("spin_flip_unitarity", u.unitarity_defect(), 1e-10));
    Ok(())
}

/// Runs the whole suite; deterministic.
pub fn run_checks() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    qmath_checks(&mut out)?;
    spin_checks(&mut out)?;
    photon_checks(&mut out)?;
    soundness_checks(&mut out)?;
    fringe_checks(&mut out)?;
    Ok(out)
}
