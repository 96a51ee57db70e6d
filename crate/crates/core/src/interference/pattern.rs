use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::scenario::{ExternalPhase, ProbeScenario};
use crate::error::{Error, Result};
use crate::qmath::C64;
use crate::states::DensityMatrix;

/// Backgrounds below this are treated as a dark detector.
pub const DEGENERATE_BACKGROUND: f64 = 1e-12;
const IMAGINARY_TOL: f64 = 1e-10;

/// Fringe `I(φ) = I₀ [1 + 𝒱 cos(φ − α)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferencePattern {
    pub i0: f64,
    pub visibility: f64,
    /// Interaction-induced phase shift in (−π, π].
    pub alpha: f64,
}

impl InterferencePattern {
    pub fn new(i0: f64, visibility: f64, alpha: f64) -> Result<Self> {
        if i0 < -1e-12 {
            return Err(Error::Contract(format!("negative background intensity {i0}")));
        }
        if !(0.0..=1.0 + 1e-9).contains(&visibility) {
            return Err(Error::Contract(format!("visibility {visibility} outside [0, 1]")));
        }
        Ok(Self { i0, visibility, alpha: wrap_phase(alpha) })
    }

    /// Pattern from background `I₀` and the complex cross term
    /// `c = 2⟨T_B† P T_A⟩ = I₀ 𝒱 e^{−iα}`.
    pub fn from_cross_term(i0: f64, cross: C64) -> Self {
        if i0 < DEGENERATE_BACKGROUND {
            return Self { i0: i0.max(0.0), visibility: 0.0, alpha: 0.0 };
        }
        let amp = cross.norm();
        let alpha = if amp < 1e-12 { 0.0 } else { wrap_phase(-cross.arg()) };
        Self { i0, visibility: amp / i0, alpha }
    }

    pub fn intensity(&self, phi: f64) -> f64 {
        self.i0 * (1.0 + self.visibility * (phi - self.alpha).cos())
    }

    /// Interference contribution at zero external phase, I₀ 𝒱 cos α.
    pub fn origin_contribution(&self) -> f64 {
        self.i0 * self.visibility * self.alpha.cos()
    }
}

/// Maps an angle onto (−π, π].
pub fn wrap_phase(a: f64) -> f64 {
    let mut w = (a + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w += 2.0 * PI;
    }
    w
}

/// Detection intensity as the four-term sum over path products, evaluated
/// per positive detector channel and combined with the channel weights.
pub fn intensity(s: &ProbeScenario, rho12: &DensityMatrix, phi: ExternalPhase) -> Result<f64> {
    let phase = C64::from_polar(1.0, phi.0);
    let mut total = 0.0;
    for (w, ch) in s.detector_channels()? {
        let e = ch.path_expectations(rho12)?;
        let value = e.aa + e.bb + phase * e.ba + phase.conj() * e.ab;
        let scale = e.aa.norm() + e.bb.norm() + 1.0;
        if value.im.abs() > IMAGINARY_TOL * scale {
            return Err(Error::Contract(format!("intensity has imaginary part {:.3e}", value.im)));
        }
        total += w * value.re;
    }
    Ok(total)
}

/// `(I₀, 𝒱, α)` of a scenario with a positive probe observable.
pub fn pattern_params(s: &ProbeScenario, rho12: &DensityMatrix) -> Result<InterferencePattern> {
    if !s.is_positive() {
        return Err(Error::Usage(
            "probe observable is not positive; use channel_patterns for signed observables".into(),
        ));
    }
    let e = s.path_expectations(rho12)?;
    Ok(InterferencePattern::from_cross_term(e.aa.re + e.bb.re, e.ba * 2.0))
}

/// Fringe of one positive detector channel and its weight in the signed
/// observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelPattern {
    pub weight: f64,
    pub pattern: InterferencePattern,
}

pub fn channel_patterns(s: &ProbeScenario, rho12: &DensityMatrix) -> Result<Vec<ChannelPattern>> {
    s.detector_channels()?
        .iter()
        .map(|(w, ch)| Ok(ChannelPattern { weight: *w, pattern: pattern_params(ch, rho12)? }))
        .collect()
}

/// Signal Σ wₖ Iₖ(φ) of weighted channel fringes.
pub fn combined_intensity(channels: &[ChannelPattern], phi: f64) -> f64 {
    channels.iter().map(|c| c.weight * c.pattern.intensity(phi)).sum()
}

/// Least-squares fringe fit through linear regression on {1, cos φ, sin φ}.
pub fn fit_pattern(samples: &[(f64, f64)]) -> Result<InterferencePattern> {
    if samples.len() < 3 {
        return Err(Error::Fit(format!("{} samples; at least 3 are needed", samples.len())));
    }
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(phi, y) in samples {
        let row = [1.0, phi.cos(), phi.sin()];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let [a, b, c] = solve3(ata, aty, samples.len() as f64)?;
    if a < -DEGENERATE_BACKGROUND {
        return Err(Error::Fit(format!("fitted background {a} is negative")));
    }
    // b cos φ + c sin φ = I₀𝒱 cos(φ − α)
    Ok(InterferencePattern::from_cross_term(a, C64::new(b, -c)))
}

fn solve3(mut m: [[f64; 3]; 3], mut v: [f64; 3], n: f64) -> Result<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[pivot][col].abs() < 1e-10 * n {
            return Err(Error::Fit("design matrix is rank deficient (phases not distinct enough)".into()));
        }
        m.swap(col, pivot);
        v.swap(col, pivot);
        for r in (col + 1)..3 {
            let f = m[r][col] / m[col][col];
            for k in col..3 {
                m[r][k] -= f * m[col][k];
            }
            v[r] -= f * v[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        let s: f64 = ((r + 1)..3).map(|k| m[r][k] * x[k]).sum();
        x[r] = (v[r] - s) / m[r][r];
    }
    Ok(x)
}

/// `n` uniformly spaced phases over [−π, π], endpoints included.
pub fn phase_grid(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..n).map(|k| -PI + 2.0 * PI * k as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{CMatrix, SpaceLayout, Subsystem};
    use crate::states::{bell_state, BellKind};

    fn identity_scenario() -> ProbeScenario {
        let id = CMatrix::identity(8);
        let rho_p = DensityMatrix::maximally_mixed(SpaceLayout::single(2, Subsystem::ProbeIn));
        ProbeScenario::new(id.clone(), id, rho_p, CMatrix::identity(2)).unwrap()
    }

    #[test]
    fn identity_paths_interfere_fully() {
        let s = identity_scenario();
        let rho = bell_state(BellKind::PhiMinus).density();
        assert!((intensity(&s, &rho, ExternalPhase(0.0)).unwrap() - 4.0).abs() < 1e-14);
        assert!(intensity(&s, &rho, ExternalPhase(PI)).unwrap().abs() < 1e-14);
        let p = pattern_params(&s, &rho).unwrap();
        assert!((p.i0 - 2.0).abs() < 1e-14 && (p.visibility - 1.0).abs() < 1e-14 && p.alpha.abs() < 1e-14);
    }

    #[test]
    fn fit_round_trips_synthetic_fringe() {
        let truth = InterferencePattern::new(2.0, 0.5, PI / 3.0).unwrap();
        let samples: Vec<_> = (0..8)
            .map(|k| {
                let phi = 2.0 * PI * k as f64 / 8.0;
                (phi, truth.intensity(phi))
            })
            .collect();
        let fit = fit_pattern(&samples).unwrap();
        assert!((fit.i0 - 2.0).abs() < 1e-9);
        assert!((fit.visibility - 0.5).abs() < 1e-9);
        assert!((fit.alpha - PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn constant_samples_have_no_visibility() {
        let samples: Vec<_> = phase_grid(9).into_iter().map(|p| (p, 1.7)).collect();
        let fit = fit_pattern(&samples).unwrap();
        assert!(fit.visibility.abs() < 1e-12);
        assert!((fit.i0 - 1.7).abs() < 1e-12);
    }

    #[test]
    fn fit_errors() {
        assert!(matches!(fit_pattern(&[(0.0, 1.0), (1.0, 1.0)]), Err(Error::Fit(_))));
        assert!(matches!(fit_pattern(&[(0.5, 1.0), (0.5, 2.0), (0.5, 3.0)]), Err(Error::Fit(_))));
        let shifted = [(0.1, 1.0), (0.1 + 2.0 * PI, 1.0), (0.1 - 2.0 * PI, 1.1)];
        assert!(matches!(fit_pattern(&shifted), Err(Error::Fit(_))));
    }

    #[test]
    fn degenerate_background_convention() {
        let p = InterferencePattern::from_cross_term(0.0, C64::new(0.0, 0.0));
        assert_eq!((p.i0, p.visibility, p.alpha), (0.0, 0.0, 0.0));
    }

    #[test]
    fn wrap_phase_range() {
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(0.25) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn grid_contains_origin_for_odd_counts() {
        let g = phase_grid(73);
        assert_eq!(g.len(), 73);
        assert!(g[36].abs() < 1e-15);
        assert!((g[0] + PI).abs() < 1e-15 && (g[72] - PI).abs() < 1e-15);
    }
}
