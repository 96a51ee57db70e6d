use serde::Serialize;

use super::observable::extract_observable;
use super::scenario::ProbeScenario;
use super::separable::{separable_minimum, SeparableMinimum};
use crate::error::{Error, Result};
use crate::qmath::CMatrix;
use crate::states::{ppt_check, DensityMatrix};

/// Expectations within this distance of the separable minimum are not
/// reported as entangled.
pub const DECISION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    #[serde(skip)]
    pub m: CMatrix,
    pub separable_min: f64,
    pub target_expectation: f64,
    /// Entanglement certified by the probe measurement.
    pub verdict: bool,
    /// Entanglement according to the partial-transpose oracle.
    pub ppt_verdict: bool,
    /// separable_min − target_expectation; positive margins beyond the
    /// decision tolerance certify entanglement.
    pub margin: f64,
}

/// An observable together with its calibrated separable threshold, reusable
/// across many target states.
#[derive(Debug, Clone)]
pub struct CalibratedWitness {
    m: CMatrix,
    separable: SeparableMinimum,
}

impl CalibratedWitness {
    pub fn from_observable(m: CMatrix) -> Result<Self> {
        let separable = separable_minimum(&m)?;
        Ok(Self { m, separable })
    }

    pub fn from_scenario(s: &ProbeScenario) -> Result<Self> {
        Self::from_observable(extract_observable(s)?)
    }

    pub fn observable(&self) -> &CMatrix {
        &self.m
    }

    pub fn separable_minimum(&self) -> &SeparableMinimum {
        &self.separable
    }

    pub fn threshold(&self) -> f64 {
        self.separable.value
    }

    pub fn report(&self, rho12: &DensityMatrix) -> Result<WitnessReport> {
        if !rho12.layout().is_two_qubits() {
            return Err(Error::Dimension("witness reports need a two-qubit target state".into()));
        }
        let target_expectation = rho12.expectation(&self.m)?;
        let separable_min = self.separable.value;
        Ok(WitnessReport {
            m: self.m.clone(),
            separable_min,
            target_expectation,
            verdict: target_expectation < separable_min - DECISION_TOLERANCE,
            ppt_verdict: ppt_check(rho12)?.entangled,
            margin: separable_min - target_expectation,
        })
    }
}

pub fn witness_verdict(s: &ProbeScenario, rho12: &DensityMatrix) -> Result<WitnessReport> {
    CalibratedWitness::from_scenario(s)?.report(rho12)
}
