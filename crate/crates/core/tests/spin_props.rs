mod common;

use std::f64::consts::PI;

use common::*;
use probe_witness::interference::{extract_observable, pattern_params, ProbeScenario};
use probe_witness::qmath::{kron as lib_kron, SpaceLayout, Subsystem};
use probe_witness::spin::{cross_trace, singlet_scenario, spin_flip_unitary, ABRingConfig, Impurity, SpinCoupling};
use probe_witness::states::{random_density_with, random_unitary, DensityMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Σ_m g_m σ^m τ_j^m on [τ₁, τ₂, σ].
fn generator(g: [f64; 3], impurity: usize) -> Mat {
    let s = pauli();
    (0..3).fold(zeros(8, 8), |acc, m| {
        let t = if impurity == 0 { kron(&kron(&s[m], &eye(2)), &s[m]) } else { kron(&kron(&eye(2), &s[m]), &s[m]) };
        add(&acc, &scale(&t, c(g[m], 0.0)))
    })
}

fn coupling() -> impl Strategy<Value = [f64; 3]> {
    [-PI..PI, -PI..PI, -PI..PI]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_matches_series_exponential(g in coupling(), second in any::<bool>()) {
        let (imp, j) = if second { (Impurity::Second, 1) } else { (Impurity::First, 0) };
        let lib = spin_flip_unitary(SpinCoupling::new(g[0], g[1], g[2]).unwrap(), imp);
        let reference = expm(&scale(&generator(g, j), c(0.0, -1.0)));
        prop_assert!(max_diff(&to_mat(&lib), &reference) < 1e-10);
    }

    #[test]
    fn cross_trace_matches_partial_trace(ga in coupling(), gb in coupling()) {
        let ta = expm(&scale(&generator(ga, 0), c(0.0, -1.0)));
        let tb = expm(&scale(&generator(gb, 1), c(0.0, -1.0)));
        let reference = trace_last(&mul(&dag(&tb), &ta), 2);
        let lib = cross_trace(SpinCoupling::new(ga[0], ga[1], ga[2]).unwrap(), SpinCoupling::new(gb[0], gb[1], gb[2]).unwrap());
        prop_assert!(max_diff(&to_mat(&lib), &reference) < 1e-10);
    }

    /// Isotropic couplings commute with global rotations, so rotating the
    /// probe preparation and detector rotates the observable.
    #[test]
    fn isotropic_ring_is_rotation_covariant(seed in any::<u64>(), gt in -PI..PI) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unitary(&mut rng, 2);
        let rho_p = random_density_with(&mut rng, 2, 1).unwrap();
        let p = random_density_with(&mut rng, 2, 2).unwrap().op().clone();
        let label = Subsystem::ProbeIn;
        let ring = |rho: DensityMatrix, obs| ABRingConfig {
            coupling_arm_a: SpinCoupling::isotropic(gt),
            coupling_arm_b: SpinCoupling::isotropic(gt),
            probe_prep: rho,
            probe_obs: obs,
        }.scenario().unwrap();
        let base = ring(DensityMatrix::new(rho_p.op().clone(), SpaceLayout::single(2, label)).unwrap(), p.clone());
        let turned = ring(
            DensityMatrix::new(rho_p.op().conjugate_by(&u), SpaceLayout::single(2, label)).unwrap(),
            p.conjugate_by(&u),
        );
        let uu = lib_kron(&u, &u).unwrap();
        let lhs = extract_observable(&turned).unwrap();
        let rhs = extract_observable(&base).unwrap().conjugate_by(&uu);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }
}

fn fringe(s: &ProbeScenario, rho: &Mat) -> (f64, f64) {
    let pat = pattern_params(s, &DensityMatrix::new(from_mat(rho), SpaceLayout::two_qubits()).unwrap()).unwrap();
    (pat.visibility, pat.alpha)
}

#[test]
fn singlet_shifts_the_fringe_and_mixed_state_does_not() {
    let s = singlet_scenario();
    let (v, alpha) = fringe(&s, &projector(&bell("psi-")));
    assert!(v > 0.1 && alpha.cos() < 0.0, "V = {v}, alpha = {alpha}");
    let (v, alpha) = fringe(&s, &scale(&eye(4), c(0.25, 0.0)));
    assert!(v * alpha.cos() >= 0.0);
    let (v, alpha) = fringe(&s, &projector(&bell("psi+")));
    assert!(v * alpha.cos() > 0.0);
}

#[test]
fn singlet_across_couplings() {
    for k in 1..40 {
        let gt = PI * k as f64 / 40.0;
        let m = extract_observable(&probe_witness::spin::singlet_scenario_at(gt)).unwrap();
        let a = (num_complex::Complex64::from_polar(1.0, -2.0 * gt) + c((2.0 * gt).cos(), 0.0)).norm_sqr();
        let s = pauli();
        let tt = (0..3).fold(zeros(4, 4), |acc, m| add(&acc, &kron(&s[m], &s[m])));
        let reference = add(&scale(&eye(4), c(0.5 * a, 0.0)), &scale(&tt, c(0.5 * (2.0 * gt).sin().powi(2), 0.0)));
        assert!(max_diff(&to_mat(&m), &reference) < 1e-12, "gt = {gt}");
    }
}
