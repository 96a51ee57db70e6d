//! Electron spin probing two magnetic impurities in an Aharonov–Bohm ring.
//!
//! The electron on arm A couples to impurity 1, on arm B to impurity 2,
//! through the spin-flip interaction Σₘ gₘ σᵐ τⱼᵐ acting for a time t. The
//! operators here act on target-1 ⊗ target-2 ⊗ probe spin, with the probe
//! factor last.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interference::ProbeScenario;
use crate::qmath::pauli::{bloch_density, sigma, weighted_spin_coupling, Axis};
use crate::qmath::{expm_generator, partial_trace, CMatrix, SpaceLayout, Subsystem, C64};
use crate::states::DensityMatrix;
use crate::witnesses::tau_dot;

use std::f64::consts::FRAC_PI_4;

const FACTORS: [usize; 3] = [2, 2, 2];
const PROBE: usize = 2;

/// Interaction phases gₘ·t per spin component, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinCoupling {
    pub gx_t: f64,
    pub gy_t: f64,
    pub gz_t: f64,
}

impl SpinCoupling {
    pub fn isotropic(gt: f64) -> Self {
        Self { gx_t: gt, gy_t: gt, gz_t: gt }
    }

    pub fn new(gx_t: f64, gy_t: f64, gz_t: f64) -> Result<Self> {
        if ![gx_t, gy_t, gz_t].iter().all(|g| g.is_finite()) {
            return Err(Error::Usage("coupling phases must be finite".into()));
        }
        Ok(Self { gx_t, gy_t, gz_t })
    }

    fn weights(&self) -> [f64; 3] {
        [self.gx_t, self.gy_t, self.gz_t]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Impurity {
    First,
    Second,
}

impl Impurity {
    fn factor(self) -> usize {
        match self {
            Impurity::First => 0,
            Impurity::Second => 1,
        }
    }
}

/// exp(−i Σₘ gₘt σᵐ τⱼᵐ) on target ⊗ probe.
pub fn spin_flip_unitary(c: SpinCoupling, impurity: Impurity) -> CMatrix {
    let h = weighted_spin_coupling(c.weights(), PROBE, impurity.factor(), &FACTORS).expect("fixed layout");
    expm_generator(&h, 1.0).expect("coupling generator is Hermitian")
}

/// Closed form of the isotropic evolution,
/// (e^{igt}/2)[(e^{−2igt} + cos 2gt) I − i sin(2gt) σ·τⱼ].
pub fn spin_flip_closed_form(gt: f64, impurity: Impurity) -> CMatrix {
    let dot = weighted_spin_coupling([1.0; 3], PROBE, impurity.factor(), &FACTORS).expect("fixed layout");
    let pre = C64::from_polar(0.5, gt);
    let diag = C64::from_polar(1.0, -2.0 * gt) + (2.0 * gt).cos();
    let id_part = CMatrix::identity(8).scale(diag);
    let flip = dot.scale(C64::new(0.0, -(2.0 * gt).sin()));
    (&id_part + &flip).scale(pre)
}

/// tr_p{T_B† T_A} = ½(|e^{−2igt} + cos 2gt|² I + sin²(2gt) τ₁·τ₂) for
/// isotropic couplings on both arms. The probe trace carries unit weight;
/// with an unpolarized probe (ρ_p = I/2) and P = I this Hermitian matrix is
/// exactly the extracted observable.
pub fn cross_trace_closed_form(gt: f64) -> CMatrix {
    let amp = (C64::from_polar(1.0, -2.0 * gt) + (2.0 * gt).cos()).norm_sqr();
    let s2 = (2.0 * gt).sin().powi(2);
    (&CMatrix::identity(4).scale_real(amp) + &tau_dot().scale_real(s2)).scale_real(0.5)
}

/// Numerical tr_p{T_B† T_A} for arbitrary couplings.
pub fn cross_trace(arm_a: SpinCoupling, arm_b: SpinCoupling) -> CMatrix {
    let t_a = spin_flip_unitary(arm_a, Impurity::First);
    let t_b = spin_flip_unitary(arm_b, Impurity::Second);
    let layout = SpaceLayout::target_with_probe(2, Subsystem::ProbeIn);
    partial_trace(&(&t_b.adjoint() * &t_a), &layout, &[Subsystem::Target1, Subsystem::Target2]).expect("fixed layout")
}

/// Ring configuration: couplings on each arm, probe preparation and the
/// measured probe spin observable.
#[derive(Debug, Clone)]
pub struct ABRingConfig {
    pub coupling_arm_a: SpinCoupling,
    pub coupling_arm_b: SpinCoupling,
    pub probe_prep: DensityMatrix,
    pub probe_obs: CMatrix,
}

impl ABRingConfig {
    pub fn scenario(&self) -> Result<ProbeScenario> {
        if self.probe_prep.dim() != 2 || self.probe_obs.rows() != 2 {
            return Err(Error::Dimension("spin probe is a single qubit".into()));
        }
        ProbeScenario::new(
            spin_flip_unitary(self.coupling_arm_a, Impurity::First),
            spin_flip_unitary(self.coupling_arm_b, Impurity::Second),
            self.probe_prep.clone(),
            self.probe_obs.clone(),
        )
    }
}

fn probe_qubit(r: [f64; 3]) -> DensityMatrix {
    DensityMatrix::new(bloch_density(r), SpaceLayout::single(2, Subsystem::ProbeIn)).expect("valid Bloch vector")
}

/// Isotropic coupling gt on both arms, unpolarized probe, no spin analysis.
pub fn singlet_scenario_at(gt: f64) -> ProbeScenario {
    ABRingConfig {
        coupling_arm_a: SpinCoupling::isotropic(gt),
        coupling_arm_b: SpinCoupling::isotropic(gt),
        probe_prep: probe_qubit([0.0; 3]),
        probe_obs: CMatrix::identity(2),
    }
    .scenario()
    .expect("valid ring configuration")
}

/// 2gt = π/2: the extracted observable is W−.
pub fn singlet_scenario() -> ProbeScenario {
    singlet_scenario_at(FRAC_PI_4)
}

/// Stronger (3π/2) or reversed (−π/2) x/y coupling on the second impurity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripletVariant {
    Plus3Half,
    MinusHalf,
}

/// Realizes W+ with an unpolarized probe and P = I.
pub fn anisotropic_triplet_scenario(variant: TripletVariant) -> ProbeScenario {
    let gxy = match variant {
        TripletVariant::Plus3Half => 3.0 * FRAC_PI_4,
        TripletVariant::MinusHalf => -FRAC_PI_4,
    };
    ABRingConfig {
        coupling_arm_a: SpinCoupling::isotropic(FRAC_PI_4),
        coupling_arm_b: SpinCoupling { gx_t: gxy, gy_t: gxy, gz_t: FRAC_PI_4 },
        probe_prep: probe_qubit([0.0; 3]),
        probe_obs: CMatrix::identity(2),
    }
    .scenario()
    .expect("valid ring configuration")
}

/// Probe polarized along `axis` and measured through σ^axis, isotropic
/// 2gt = π/2 couplings.
fn polarized_scenario(axis: Axis) -> ProbeScenario {
    let mut r = [0.0; 3];
    r[axis.index()] = 1.0;
    ABRingConfig {
        coupling_arm_a: SpinCoupling::isotropic(FRAC_PI_4),
        coupling_arm_b: SpinCoupling::isotropic(FRAC_PI_4),
        probe_prep: probe_qubit(r),
        probe_obs: sigma(axis),
    }
    .scenario()
    .expect("valid ring configuration")
}

/// ρ_p = ½(I + σᶻ), P = σᶻ: M = W+ + ½(τ₁ᶻ + τ₂ᶻ).
pub fn effective_triplet_scenario() -> ProbeScenario {
    polarized_scenario(Axis::Z)
}

/// The effective triplet scenario with probe preparation and observable
/// rotated from σᶻ to σˣ or σʸ.
pub fn rotated_phi_scenario(axis: Axis) -> Result<ProbeScenario> {
    if axis == Axis::Z {
        return Err(Error::Usage("rotated scenarios use the x or y axis; z is the effective triplet case".into()));
    }
    Ok(polarized_scenario(axis))
}
