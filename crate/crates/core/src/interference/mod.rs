//! Two-way interference of a single probe and the target observable it
//! measures.

mod observable;
mod pattern;
mod scenario;
mod separable;
mod verdict;

pub use observable::extract_observable;
pub use pattern::{
    channel_patterns, combined_intensity, fit_pattern, intensity, pattern_params, phase_grid, wrap_phase,
    ChannelPattern, InterferencePattern, DEGENERATE_BACKGROUND,
};
pub use scenario::{ExternalPhase, PathExpectations, ProbeScenario};
pub use separable::{separable_minimum, SeparableMinimum};
pub use verdict::{witness_verdict, CalibratedWitness, WitnessReport, DECISION_TOLERANCE};
