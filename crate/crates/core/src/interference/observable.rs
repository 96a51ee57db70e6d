use super::scenario::ProbeScenario;
use crate::error::Result;
use crate::qmath::{kron, partial_trace, CMatrix, Subsystem};

/// Target observable `M = tr_p{ρ_p (T_B† P T_A + T_A† P T_B)}` whose
/// expectation on ρ₁₂ is the interference contribution at φ = 0.
///
/// The probe-out factor is contracted through `P`, the probe-in factor
/// through `ρ_p`; the two may have different bases (or dimensions).
pub fn extract_observable(s: &ProbeScenario) -> Result<CMatrix> {
    let cross = &s.sandwich(s.t_b(), s.t_a()) + &s.sandwich(s.t_a(), s.t_b());
    let weighted = &kron(&CMatrix::identity(4), s.probe_state().op())? * &cross;
    partial_trace(&weighted, s.layout_in(), &[Subsystem::Target1, Subsystem::Target2])
}
