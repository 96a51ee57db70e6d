mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64 as C;
use probe_witness::interference::{
    extract_observable, fit_pattern, intensity, pattern_params, ExternalPhase, ProbeScenario,
};
use probe_witness::qmath::SpaceLayout;
use probe_witness::states::{random_density_with, DensityMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Case {
    s: ProbeScenario,
    rho: DensityMatrix,
}

fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = ProbeScenario::random(&mut rng);
    let rho = random_density_with(&mut rng, 4, 1 + (seed % 4) as usize).unwrap();
    Case { s, rho }
}

/// Re tr[(ρ ⊗ ρ_p) Ψ† (I ⊗ P) Ψ] with Ψ = e^{iφ} T_A + T_B.
fn reference_intensity(s: &ProbeScenario, rho: &Mat, rho_p: &Mat, p: &Mat, phi: f64) -> f64 {
    let psi = add(&scale(&to_mat(s.t_a()), C::from_polar(1.0, phi)), &to_mat(s.t_b()));
    let lifted = kron(&eye(4), p);
    trace(&mul(&kron(rho, rho_p), &mul(&dag(&psi), &mul(&lifted, &psi)))).re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn four_term_and_fringe_forms_agree(seed in any::<u64>(), phi in -PI..PI) {
        let Case { s, rho } = case(seed);
        let reference = reference_intensity(
            &s, &to_mat(rho.op()), &to_mat(s.probe_state().op()), &to_mat(s.probe_observable()), phi);
        let direct = intensity(&s, &rho, ExternalPhase(phi)).unwrap();
        let fringe = pattern_params(&s, &rho).unwrap().intensity(phi);
        prop_assert!((direct - reference).abs() < 1e-9);
        prop_assert!((fringe - reference).abs() < 1e-9);
    }

    #[test]
    fn intensity_nonnegative_and_visibility_bounded(seed in any::<u64>(), phi in -PI..PI) {
        let Case { s, rho } = case(seed);
        prop_assert!(intensity(&s, &rho, ExternalPhase(phi)).unwrap() >= -1e-9);
        let pat = pattern_params(&s, &rho).unwrap();
        prop_assert!(pat.visibility <= 1.0 + 1e-9);
        prop_assert!(pat.visibility >= 0.0);
    }

    #[test]
    fn linear_in_the_detector(seed in any::<u64>(), w in 0.0..1.0f64, phi in -PI..PI) {
        let Case { s, rho } = case(seed);
        let other = case(seed.wrapping_add(1)).s;
        let p1 = s.probe_observable().clone();
        let p2 = other.probe_observable().clone();
        let mixed = from_mat(&add(&scale(&to_mat(&p1), c(w, 0.0)), &scale(&to_mat(&p2), c(1.0 - w, 0.0))));
        let at = |p| intensity(&s.with_observable(p).unwrap(), &rho, ExternalPhase(phi)).unwrap();
        let lhs = at(mixed);
        let rhs = w * at(p1) + (1.0 - w) * at(p2);
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn linear_in_the_probe_state(seed in any::<u64>(), w in 0.0..1.0f64, phi in -PI..PI) {
        let Case { s, rho } = case(seed);
        let r1 = s.probe_state().clone();
        let r2 = case(seed.wrapping_add(7)).s.probe_state().clone();
        let mix = DensityMatrix::mixture(&[(w, r1.clone()), (1.0 - w, r2.clone())]).unwrap();
        let at = |r: DensityMatrix| intensity(&s.with_probe_state(r).unwrap(), &rho, ExternalPhase(phi)).unwrap();
        prop_assert!((at(mix) - (w * at(r1) + (1.0 - w) * at(r2))).abs() < 1e-9);
    }

    #[test]
    fn observable_gives_origin_cross_term(seed in any::<u64>()) {
        let Case { s, rho } = case(seed);
        let m = extract_observable(&s).unwrap();
        let value = expect(&to_mat(&m), &to_mat(rho.op()));
        let pat = pattern_params(&s, &rho).unwrap();
        prop_assert!((value - pat.origin_contribution()).abs() < 1e-9);
        prop_assert!(m.is_hermitian(1e-12));
    }

    #[test]
    fn observable_matches_reference_contraction(seed in any::<u64>()) {
        let s = case(seed).s;
        let (ta, tb) = (to_mat(s.t_a()), to_mat(s.t_b()));
        let lifted = kron(&eye(4), &to_mat(s.probe_observable()));
        let x = mul(&dag(&tb), &mul(&lifted, &ta));
        let weighted = mul(&kron(&eye(4), &to_mat(s.probe_state().op())), &add(&x, &dag(&x)));
        let reference = trace_last(&weighted, 2);
        prop_assert!(max_diff(&to_mat(&extract_observable(&s).unwrap()), &reference) < 1e-10);
    }

    #[test]
    fn fit_recovers_noiseless_fringes(seed in any::<u64>(), n in 5usize..40) {
        let Case { s, rho } = case(seed);
        let pat = pattern_params(&s, &rho).unwrap();
        let samples: Vec<_> = (0..n).map(|k| {
            let phi = -PI + 2.0 * PI * k as f64 / n as f64;
            (phi, intensity(&s, &rho, ExternalPhase(phi)).unwrap())
        }).collect();
        let fit = fit_pattern(&samples).unwrap();
        prop_assert!((fit.i0 - pat.i0).abs() < 1e-9);
        prop_assert!((fit.visibility - pat.visibility).abs() < 1e-9);
        for &(phi, v) in &samples {
            prop_assert!((fit.intensity(phi) - v).abs() < 1e-9);
        }
    }
}

#[test]
fn layout_mismatch_is_rejected() {
    let s = case(3).s;
    let bad = DensityMatrix::maximally_mixed(SpaceLayout::single(4, probe_witness::qmath::Subsystem::Target1));
    assert!(intensity(&s, &bad, ExternalPhase(0.0)).is_err());
}
