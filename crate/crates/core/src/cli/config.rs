//! Experiment configs: one TOML document per run.
//!
//! ```toml
//! schema_version = 1
//! seed = 7
//!
//! [realization]
//! kind = "young"
//! k_in = [1.0, 0.0, 0.0]
//! k_out = [0.0, 1.0, 0.0]
//!
//! [target]
//! kind = "bell"
//! state = "psi-minus"
//!
//! [sweep]
//! parameter = "young-cos"
//! start = 0.0
//! stop = 1.0
//! points = 11
//! ```

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::interference::ProbeScenario;
use crate::photon::{
    cbs_channel_scenario, dot, normalized, scaled, sub, young_scenario, CbsChannel, DetectionChannel,
    PolarizationBasis, ProbePreparation, ScatteringGeometry, Vec3,
};
use crate::qmath::pauli::Axis;
use crate::qmath::{c64, CMatrix, SpaceLayout};
use crate::spin::{
    anisotropic_triplet_scenario, effective_triplet_scenario, rotated_phi_scenario, singlet_scenario_at, TripletVariant,
};
use crate::states::{bell_state, product_state, random_density, werner, BellKind, BlochAngles, DensityMatrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub realization: RealizationConfig,
    pub target: TargetConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RealizationConfig {
    SpinSinglet {
        /// Interaction phase gt on both arms.
        #[serde(default = "quarter_pi")]
        gt: f64,
    },
    SpinTripletAnisotropic {
        variant: TripletVariant,
    },
    SpinTripletEffective,
    SpinPhiRotated {
        axis: Axis,
    },
    Young {
        k_in: Vec3,
        k_out: Vec3,
        #[serde(default = "z_axis")]
        n_axis: Vec3,
        #[serde(default = "young_separation")]
        separation: f64,
        /// Linear input polarization; unpolarized when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        polarization: Option<Vec3>,
        /// Linear analyzer direction; no analysis when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        analyzer: Option<Vec3>,
    },
    Cbs {
        channel: CbsChannel,
        #[serde(default = "z_axis")]
        k_in: Vec3,
        #[serde(default = "x_axis")]
        n_axis: Vec3,
        #[serde(default = "cbs_separation")]
        separation: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TargetConfig {
    Bell {
        state: BellKind,
    },
    Werner {
        p: f64,
    },
    Product {
        theta1: f64,
        phi1: f64,
        theta2: f64,
        phi2: f64,
    },
    /// Row-major 4×4 entries as [re, im] pairs.
    Explicit {
        entries: Vec<Vec<[f64; 2]>>,
    },
    /// Random state drawn from the run seed.
    Random {
        #[serde(default = "full_rank")]
        rank: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    WernerP,
    Gt,
    /// k̂·k̂′ of a Young geometry, rotating k̂′ in the plane it spans with k̂.
    YoungCos,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

fn quarter_pi() -> f64 {
    FRAC_PI_4
}
fn z_axis() -> Vec3 {
    [0.0, 0.0, 1.0]
}
fn x_axis() -> Vec3 {
    [1.0, 0.0, 0.0]
}
fn young_separation() -> f64 {
    3.0
}
fn cbs_separation() -> f64 {
    10.0
}
fn full_rank() -> usize {
    4
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl SweepConfig {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            1 => vec![self.start],
            n => (0..n).map(|k| self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64).collect(),
        }
    }
}

impl RealizationConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            RealizationConfig::SpinSinglet { .. } => "spin-singlet",
            RealizationConfig::SpinTripletAnisotropic { .. } => "spin-triplet-anisotropic",
            RealizationConfig::SpinTripletEffective => "spin-triplet-effective",
            RealizationConfig::SpinPhiRotated { .. } => "spin-phi-rotated",
            RealizationConfig::Young { .. } => "young",
            RealizationConfig::Cbs { .. } => "cbs",
        }
    }

    pub fn scenario(&self) -> Result<ProbeScenario, CliError> {
        Ok(match self {
            RealizationConfig::SpinSinglet { gt } => {
                if !gt.is_finite() {
                    return Err(config_err("realization.gt must be finite"));
                }
                singlet_scenario_at(*gt)
            }
            RealizationConfig::SpinTripletAnisotropic { variant } => anisotropic_triplet_scenario(*variant),
            RealizationConfig::SpinTripletEffective => effective_triplet_scenario(),
            RealizationConfig::SpinPhiRotated { axis } => {
                rotated_phi_scenario(*axis).map_err(|_| config_err("realization.axis must be \"x\" or \"y\""))?
            }
            RealizationConfig::Young { polarization, analyzer, .. } => {
                let geom = self.geometry()?.expect("photon realization");
                let prep = match polarization {
                    None => ProbePreparation::Unpolarized,
                    Some(e) => ProbePreparation::Pure(crate::photon::complexify(*e)),
                };
                let channel = analyzer.map_or(DetectionChannel::Unanalyzed, DetectionChannel::Linear);
                young_scenario(&geom, prep, channel).map_err(|e| config_err(format!("realization: {e}")))?
            }
            RealizationConfig::Cbs { channel, .. } => {
                let geom = self.geometry()?.expect("photon realization");
                cbs_channel_scenario(&geom, *channel).map_err(|e| config_err(format!("realization: {e}")))?
            }
        })
    }

    /// Scattering geometry of the photon realizations.
    pub fn geometry(&self) -> Result<Option<ScatteringGeometry>, CliError> {
        let built = match self {
            RealizationConfig::Young { k_in, k_out, n_axis, separation, .. } => {
                ScatteringGeometry::with_atoms_along(*k_in, *k_out, *n_axis, *separation)
            }
            RealizationConfig::Cbs { k_in, n_axis, separation, .. } => {
                ScatteringGeometry::with_atoms_along(*k_in, scaled(*k_in, -1.0), *n_axis, *separation)
            }
            _ => return Ok(None),
        };
        built.map(Some).map_err(|e| config_err(format!("realization geometry: {e}")))
    }

    /// Phase difference of the two paths fixed by the geometry, if any.
    pub fn geometric_phase(&self) -> Result<Option<f64>, CliError> {
        Ok(self.geometry()?.map(|g| match self {
            RealizationConfig::Cbs { .. } => g.cbs_phase(),
            _ => g.young_phase(),
        }))
    }
}

impl TargetConfig {
    pub fn density(&self, seed: u64) -> Result<DensityMatrix, CliError> {
        Ok(match self {
            TargetConfig::Bell { state } => bell_state(*state).density(),
            TargetConfig::Werner { p } => werner(*p).map_err(|e| config_err(format!("target.p: {e}")))?,
            TargetConfig::Product { theta1, phi1, theta2, phi2 } => {
                let a = BlochAngles::new(*theta1, *phi1).map_err(|e| config_err(format!("target: {e}")))?;
                let b = BlochAngles::new(*theta2, *phi2).map_err(|e| config_err(format!("target: {e}")))?;
                product_state(a, b).density()
            }
            TargetConfig::Explicit { entries } => {
                if entries.len() != 4 || entries.iter().any(|r| r.len() != 4) {
                    return Err(config_err("target.entries must be a 4x4 array of [re, im] pairs"));
                }
                let op = CMatrix::from_fn(4, 4, |i, j| c64(entries[i][j][0], entries[i][j][1]));
                // Physics violations here surface as contract errors.
                DensityMatrix::new(op, SpaceLayout::two_qubits())?
            }
            TargetConfig::Random { rank } => {
                if !(1..=4).contains(rank) {
                    return Err(config_err("target.rank must be between 1 and 4"));
                }
                random_density(seed, 4, *rank)?
            }
        })
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(config_err(format!(
                "schema_version = {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        self.realization.scenario()?;
        if let Some(sweep) = &self.sweep {
            if sweep.points == 0 || !sweep.start.is_finite() || !sweep.stop.is_finite() {
                return Err(config_err("sweep needs finite start/stop and at least one point"));
            }
            for x in [sweep.start, sweep.stop] {
                self.at_parameter(sweep.parameter, x)?.realization.scenario()?;
            }
        }
        Ok(())
    }

    /// Copy of the config with the swept parameter set to `x`.
    pub fn at_parameter(&self, parameter: SweepParameter, x: f64) -> Result<ScenarioConfig, CliError> {
        let mut out = self.clone();
        out.sweep = None;
        match (parameter, &mut out.realization) {
            (SweepParameter::WernerP, _) => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(config_err(format!("sweep value {x} outside the Werner range [0, 1]")));
                }
                out.target = TargetConfig::Werner { p: x };
            }
            (SweepParameter::Gt, RealizationConfig::SpinSinglet { gt }) => *gt = x,
            (SweepParameter::Gt, _) => {
                return Err(config_err("sweep.parameter = \"gt\" needs the spin-singlet realization"))
            }
            (SweepParameter::YoungCos, RealizationConfig::Young { k_in, k_out, .. }) => {
                if !(-1.0..=1.0).contains(&x) {
                    return Err(config_err(format!("sweep value {x} is not a cosine")));
                }
                let k = normalized(*k_in).map_err(|e| config_err(format!("realization.k_in: {e}")))?;
                let perp = sub(*k_out, scaled(k, dot(*k_out, k)));
                let e = normalized(perp).unwrap_or_else(|_| {
                    let e1 = PolarizationBasis::canonical(k).vectors()[0];
                    [e1[0].re, e1[1].re, e1[2].re]
                });
                let s = (1.0 - x * x).max(0.0).sqrt();
                *k_in = k;
                *k_out = [x * k[0] + s * e[0], x * k[1] + s * e[1], x * k[2] + s * e[2]];
            }
            (SweepParameter::YoungCos, _) => {
                return Err(config_err("sweep.parameter = \"young-cos\" needs the young realization"))
            }
        }
        Ok(out)
    }
}
