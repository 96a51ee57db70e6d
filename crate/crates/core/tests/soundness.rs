mod common;

use common::*;
use probe_witness::interference::{CalibratedWitness, ProbeScenario};
use probe_witness::photon::{
    cbs_channel_scenario, young_scenario, CbsChannel, DetectionChannel, ProbePreparation, ScatteringGeometry,
};
use probe_witness::qmath::SpaceLayout;
use probe_witness::spin::{effective_triplet_scenario, singlet_scenario};
use probe_witness::states::{random_separable_mixture, DensityMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn scenarios() -> Vec<ProbeScenario> {
    let cbs = ScatteringGeometry::cbs_canonical();
    let perp = ScatteringGeometry::with_atoms_along([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], 2.5).unwrap();
    vec![
        singlet_scenario(),
        effective_triplet_scenario(),
        young_scenario(&perp, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed).unwrap(),
        cbs_channel_scenario(&cbs, CbsChannel::AlongAxis).unwrap(),
        cbs_channel_scenario(&cbs, CbsChannel::Transverse).unwrap(),
    ]
}

fn witnesses() -> &'static [CalibratedWitness] {
    static W: OnceLock<Vec<CalibratedWitness>> = OnceLock::new();
    W.get_or_init(|| scenarios().iter().map(|s| CalibratedWitness::from_scenario(s).unwrap()).collect())
}

#[test]
fn no_detection_on_ten_thousand_separable_mixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..10_000 {
        let rho = random_separable_mixture(&mut rng, 8);
        for (i, w) in witnesses().iter().enumerate() {
            let r = w.report(&rho).unwrap();
            assert!(!r.verdict, "mixture {k} detected by scenario {i}, margin {}", r.margin);
        }
    }
}

#[test]
fn library_mixtures_are_ppt() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for _ in 0..500 {
        assert!(!ppt_entangled(&to_mat(random_separable_mixture(&mut rng, 8).op())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Noisy Bell states: any detection must be backed by a negative
    /// partial transpose.
    #[test]
    fn detection_implies_ppt_entanglement(which in 0usize..4, p in 0.0..1.0f64, seed in any::<u64>()) {
        let names = ["psi+", "psi-", "phi+", "phi-"];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise = to_mat(random_separable_mixture(&mut rng, 4).op());
        let rho = add(&scale(&projector(&bell(names[which])), c(p, 0.0)), &scale(&noise, c(1.0 - p, 0.0)));
        let d = DensityMatrix::new(from_mat(&rho), SpaceLayout::two_qubits()).unwrap();
        let entangled = ppt_entangled(&rho);
        for w in witnesses() {
            let r = w.report(&d).unwrap();
            prop_assert!(!r.verdict || entangled);
            prop_assert_eq!(r.ppt_verdict, entangled);
        }
    }
}
