use serde::{Deserialize, Serialize};

use super::geometry::{
    complexify, cross, dot, norm, normalized, CVec3, DetectionChannel, PolarizationBasis, ProbePreparation,
    ScatteringGeometry, Vec3,
};
use crate::error::{Error, Result};
use crate::interference::{pattern_params, InterferencePattern, ProbeScenario};
use crate::qmath::pauli::{embed, sigmas};
use crate::qmath::{CMatrix, SpaceLayout, Subsystem};
use crate::states::DensityMatrix;

const TARGET: [usize; 2] = [2, 2];
const GEOMETRY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Atom {
    First,
    Second,
}

impl Atom {
    fn factor(self) -> usize {
        match self {
            Atom::First => 0,
            Atom::Second => 1,
        }
    }
}

/// Which atom scatters first in a double-scattering path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScatteringOrder {
    /// 1 → 2
    A,
    /// 2 → 1
    B,
}

/// The two linear-polarization channels of the backscattering detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CbsChannel {
    /// Polarization along the atom axis n̂. The double-scattering
    /// operators give M = 4 W₊ here.
    AlongAxis,
    /// Polarization along n̂ × k̂, where M = 4 W₋.
    Transverse,
}

impl CbsChannel {
    pub fn direction(self, geom: &ScatteringGeometry) -> Vec3 {
        match self {
            CbsChannel::AlongAxis => geom.n_axis,
            CbsChannel::Transverse => normalized(cross(geom.n_axis, geom.k_in)).expect("k ⟂ n in backscattering"),
        }
    }

    pub fn detection(self, geom: &ScatteringGeometry) -> DetectionChannel {
        DetectionChannel::Linear(self.direction(geom))
    }
}

/// τ_atom · v for a complex 3-vector, on the two-atom space.
fn tau_dot(atom: Atom, v: &CVec3) -> CMatrix {
    let s = sigmas();
    let single = (0..3).fold(CMatrix::zeros(2, 2), |acc, m| &acc + &s[m].scale(v[m]));
    embed(&single, atom.factor(), &TARGET).expect("two-atom layout")
}

fn conj3(v: &CVec3) -> CVec3 {
    [v[0].conj(), v[1].conj(), v[2].conj()]
}

/// Stacks target blocks `blocks[a][b] = ⟨e′_a|T|e_b⟩` into one operator on
/// target ⊗ polarization (polarization index fastest).
fn assemble(blocks: &[[CMatrix; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(8, 8, |r, c| blocks[r % 2][c % 2][(r / 2, c / 2)])
}

fn check_bases(geom: &ScatteringGeometry, basis_in: &PolarizationBasis, basis_out: &PolarizationBasis) -> Result<()> {
    let off = |a: Vec3, b: Vec3| (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max);
    if off(basis_in.k(), geom.k_in) > 1e-12 || off(basis_out.k(), geom.k_out) > 1e-12 {
        return Err(Error::Usage("polarization bases must be attached to k_in and k_out".into()));
    }
    Ok(())
}

/// Single scattering by one atom, `⟨ε′|T|ε⟩ = (ε̄′·τ)(τ·ε)`, unit prefactor.
pub fn single_scatter_op(
    atom: Atom,
    geom: &ScatteringGeometry,
    basis_in: &PolarizationBasis,
    basis_out: &PolarizationBasis,
) -> Result<CMatrix> {
    check_bases(geom, basis_in, basis_out)?;
    let inn: Vec<CMatrix> = basis_in.vectors().iter().map(|e| tau_dot(atom, e)).collect();
    let out: Vec<CMatrix> = basis_out.vectors().iter().map(|e| tau_dot(atom, &conj3(e))).collect();
    let block = |a: usize, b: usize| &out[a] * &inn[b];
    Ok(assemble(&[[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]]))
}

/// Σ_mn τ_second^m (δ_mn − n̂_m n̂_n) τ_first^n: the far-field exchange.
fn exchange(first: Atom, second: Atom, n: Vec3) -> CMatrix {
    let s = sigmas();
    let t1: Vec<CMatrix> = s.iter().map(|p| embed(p, first.factor(), &TARGET).unwrap()).collect();
    let t2: Vec<CMatrix> = s.iter().map(|p| embed(p, second.factor(), &TARGET).unwrap()).collect();
    let mut acc = CMatrix::zeros(4, 4);
    for m in 0..3 {
        for k in 0..3 {
            let w = if m == k { 1.0 } else { 0.0 } - n[m] * n[k];
            if w != 0.0 {
                acc = &acc + &(&t2[m] * &t1[k]).scale_real(w);
            }
        }
    }
    acc
}

/// Double scattering `⟨ε′|T|ε⟩ = (ε̄′·τ₂) τ₂ (𝟏 − n̂∘n̂) τ₁ (τ₁·ε)` for order A,
/// atoms swapped for order B.
pub fn double_scatter_op(
    order: ScatteringOrder,
    geom: &ScatteringGeometry,
    basis_in: &PolarizationBasis,
    basis_out: &PolarizationBasis,
) -> Result<CMatrix> {
    check_bases(geom, basis_in, basis_out)?;
    let (first, second) = match order {
        ScatteringOrder::A => (Atom::First, Atom::Second),
        ScatteringOrder::B => (Atom::Second, Atom::First),
    };
    let mid = exchange(first, second, geom.n_axis);
    let inn: Vec<CMatrix> = basis_in.vectors().iter().map(|e| &mid * &tau_dot(first, e)).collect();
    let out: Vec<CMatrix> = basis_out.vectors().iter().map(|e| tau_dot(second, &conj3(e))).collect();
    let block = |a: usize, b: usize| &out[a] * &inn[b];
    Ok(assemble(&[[block(0, 0), block(0, 1)], [block(1, 0), block(1, 1)]]))
}

fn probe_density(prep: &ProbePreparation, basis_in: &PolarizationBasis) -> Result<DensityMatrix> {
    let layout = SpaceLayout::single(2, Subsystem::ProbeIn);
    match prep {
        ProbePreparation::Unpolarized => Ok(DensityMatrix::maximally_mixed(layout)),
        ProbePreparation::Pure(eps) => {
            let c = basis_in.components(eps);
            let weight = c[0].norm_sqr() + c[1].norm_sqr();
            let total: f64 = eps.iter().map(|x| x.norm_sqr()).sum();
            if (total - 1.0).abs() > 1e-12 || (weight - 1.0).abs() > GEOMETRY_TOL {
                return Err(Error::Usage("probe polarization must be a unit vector transverse to k_in".into()));
            }
            DensityMatrix::new(CMatrix::outer(&c, &c), layout)
        }
    }
}

fn detection_observable(channel: &DetectionChannel, basis_out: &PolarizationBasis) -> Result<CMatrix> {
    match channel {
        DetectionChannel::Unanalyzed => Ok(CMatrix::identity(2)),
        DetectionChannel::Linear(d) => {
            if (norm(*d) - 1.0).abs() > 1e-12 || dot(*d, basis_out.k()).abs() > GEOMETRY_TOL {
                return Err(Error::Usage("analyzer direction must be a unit vector transverse to k_out".into()));
            }
            let c = basis_out.components(&complexify(*d));
            Ok(CMatrix::outer(&c, &c))
        }
    }
}

/// Young configuration: each atom is one path alternative; the external
/// phase is [`ScatteringGeometry::young_phase`].
pub fn young_scenario(
    geom: &ScatteringGeometry,
    prep: ProbePreparation,
    channel: DetectionChannel,
) -> Result<ProbeScenario> {
    let bin = PolarizationBasis::canonical(geom.k_in);
    let bout = PolarizationBasis::canonical(geom.k_out);
    young_scenario_in(geom, &bin, &bout, prep, channel)
}

/// [`young_scenario`] with explicit polarization bases.
pub fn young_scenario_in(
    geom: &ScatteringGeometry,
    basis_in: &PolarizationBasis,
    basis_out: &PolarizationBasis,
    prep: ProbePreparation,
    channel: DetectionChannel,
) -> Result<ProbeScenario> {
    let t_a = single_scatter_op(Atom::First, geom, basis_in, basis_out)?;
    let t_b = single_scatter_op(Atom::Second, geom, basis_in, basis_out)?;
    ProbeScenario::new(t_a, t_b, probe_density(&prep, basis_in)?, detection_observable(&channel, basis_out)?)
}

/// 𝐌 = k̂∘k̂ + k̂′∘k̂′ + (k̂×k̂′)∘(k̂×k̂′).
pub fn young_dyadic(k: Vec3, k_out: Vec3) -> [[f64; 3]; 3] {
    let q = cross(k, k_out);
    let mut d = [[0.0; 3]; 3];
    for m in 0..3 {
        for n in 0..3 {
            d[m][n] = k[m] * k[n] + k_out[m] * k_out[n] + q[m] * q[n];
        }
    }
    d
}

/// Closed form of the unpolarized, unanalyzed Young observable:
/// (1 + (k̂·k̂′)²) I + τ₁·𝐌·τ₂.
pub fn young_dyadic_observable(k: Vec3, k_out: Vec3) -> CMatrix {
    let d = young_dyadic(k, k_out);
    let s = sigmas();
    let c = dot(k, k_out);
    let mut m = CMatrix::identity(4).scale_real(1.0 + c * c);
    for a in 0..3 {
        for b in 0..3 {
            if d[a][b] != 0.0 {
                let term = crate::qmath::kron(&s[a], &s[b]).expect("4x4");
                m = &m + &term.scale_real(d[a][b]);
            }
        }
    }
    m
}

fn check_backscattering(geom: &ScatteringGeometry) -> Result<()> {
    if dot(geom.k_in, geom.n_axis).abs() > GEOMETRY_TOL {
        return Err(Error::Usage("backscattering needs incidence at right angles to the atom axis".into()));
    }
    if (0..3).any(|i| (geom.k_out[i] + geom.k_in[i]).abs() > GEOMETRY_TOL) {
        return Err(Error::Usage("backscattering needs detection along k_out = -k_in".into()));
    }
    Ok(())
}

/// Coherent backscattering: the two scattering orders are the path
/// alternatives, unpolarized incidence, one linear analyzer channel along
/// n̂ or n̂ × k̂.
pub fn cbs_scenario(geom: &ScatteringGeometry, channel: DetectionChannel) -> Result<ProbeScenario> {
    check_backscattering(geom)?;
    let d = match channel {
        DetectionChannel::Linear(d) => d,
        DetectionChannel::Unanalyzed => {
            return Err(Error::Usage("backscattering witnesses need a linear analyzer channel".into()))
        }
    };
    let parallel = |u: Vec3| norm(cross(d, u)) < GEOMETRY_TOL;
    if !(parallel(geom.n_axis) || parallel(cross(geom.n_axis, geom.k_in))) {
        return Err(Error::Usage("analyzer must be along n or along n x k".into()));
    }
    let bin = PolarizationBasis::canonical(geom.k_in);
    let bout = PolarizationBasis::canonical(geom.k_out);
    let t_a = double_scatter_op(ScatteringOrder::A, geom, &bin, &bout)?;
    let t_b = double_scatter_op(ScatteringOrder::B, geom, &bin, &bout)?;
    let rho_p = probe_density(&ProbePreparation::Unpolarized, &bin)?;
    ProbeScenario::new(t_a, t_b, rho_p, detection_observable(&channel, &bout)?)
}

/// Convenience: [`cbs_scenario`] in a named channel.
pub fn cbs_channel_scenario(geom: &ScatteringGeometry, channel: CbsChannel) -> Result<ProbeScenario> {
    cbs_scenario(geom, channel.detection(geom))
}

/// Single-scattering (Young) fringe in the backscattering geometry.
pub fn single_scattering_background(
    geom: &ScatteringGeometry,
    channel: DetectionChannel,
    rho12: &DensityMatrix,
) -> Result<InterferencePattern> {
    check_backscattering(geom)?;
    pattern_params(&young_scenario(geom, ProbePreparation::Unpolarized, channel)?, rho12)
}

/// Quantization axis of the background visibility law: the incidence
/// direction k̂.
pub fn background_axis(geom: &ScatteringGeometry) -> Vec3 {
    geom.k_in
}

/// ½(1 + ⟨(q·τ₁)(q·τ₂)⟩).
pub fn background_visibility_law(rho12: &DensityMatrix, q: Vec3) -> Result<f64> {
    let qc = complexify(q);
    let corr = &tau_dot(Atom::First, &qc) * &tau_dot(Atom::Second, &qc);
    Ok(0.5 * (1.0 + rho12.expectation(&corr)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interference::{extract_observable, separable_minimum};
    use crate::qmath::c64;
    use crate::states::{basis_state, bell_projector, bell_state, BellKind};
    use crate::witnesses::{affine_fit, w_minus, w_plus};

    const X: Vec3 = [1.0, 0.0, 0.0];
    const Y: Vec3 = [0.0, 1.0, 0.0];
    const Z: Vec3 = [0.0, 0.0, 1.0];

    fn block(t: &CMatrix, a: usize, b: usize) -> CMatrix {
        CMatrix::from_fn(4, 4, |r, c| t[(r * 2 + a, c * 2 + b)])
    }

    #[test]
    fn single_scattering_blocks_follow_pauli_algebra() {
        // k = z, k′ = z: canonical e₁ = x̂, e₂ = ŷ at both ends.
        let g = ScatteringGeometry::with_atoms_along(Z, Z, X, 2.0).unwrap();
        let b = PolarizationBasis::canonical(Z);
        let t = single_scatter_op(Atom::First, &g, &b, &b).unwrap();
        assert!(block(&t, 0, 0).max_abs_diff(&CMatrix::identity(4)) < 1e-15);
        // ε = x̂, ε′ = ŷ: τʸτˣ = −iτᶻ
        let s = sigmas();
        let want = embed(&s[2].scale(c64(0.0, -1.0)), 0, &TARGET).unwrap();
        assert!(block(&t, 1, 0).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let g = ScatteringGeometry::with_atoms_along(Z, X, X, 2.0).unwrap();
        let b = PolarizationBasis::canonical(Z);
        assert!(matches!(single_scatter_op(Atom::First, &g, &b, &b), Err(Error::Usage(_))));
    }

    #[test]
    fn perpendicular_young_gives_twice_the_singlet_witness() {
        let g = ScatteringGeometry::with_atoms_along(X, Y, Z, 3.0).unwrap();
        let s = young_scenario(&g, ProbePreparation::Unpolarized, DetectionChannel::Unanalyzed).unwrap();
        let m = extract_observable(&s).unwrap();
        assert!(m.max_abs_diff(&w_minus().scale_real(2.0)) < 1e-12);
    }

    #[test]
    fn forward_young_observable() {
        let m = young_dyadic_observable(Z, Z);
        let s = sigmas();
        let zz = crate::qmath::kron(&s[2], &s[2]).unwrap();
        let want = &CMatrix::identity(4).scale_real(2.0) + &zz.scale_real(2.0);
        assert!(m.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn cbs_channels_realize_the_bell_witnesses() {
        let g = ScatteringGeometry::cbs_canonical();
        let along = extract_observable(&cbs_channel_scenario(&g, CbsChannel::AlongAxis).unwrap()).unwrap();
        assert!(along.max_abs_diff(&w_plus().scale_real(4.0)) < 1e-12);
        assert!(affine_fit(&along, &w_minus()).residual > 1.0);
        let trans = extract_observable(&cbs_channel_scenario(&g, CbsChannel::Transverse).unwrap()).unwrap();
        assert!(trans.max_abs_diff(&w_minus().scale_real(4.0)) < 1e-12);

        for (m, kind) in [(along, BellKind::PsiPlus), (trans, BellKind::PsiMinus)] {
            let sep = separable_minimum(&m).unwrap().value;
            let on_bell = m.trace_product(&bell_projector(kind)).unwrap().re;
            assert!(on_bell < sep - 1e-6);
        }
    }

    #[test]
    fn cbs_rejects_bad_geometry_and_channels() {
        let g = ScatteringGeometry::cbs_canonical();
        assert!(cbs_scenario(&g, DetectionChannel::Unanalyzed).is_err());
        let diag = normalized([1.0, 1.0, 0.0]).unwrap();
        assert!(cbs_scenario(&g, DetectionChannel::Linear(diag)).is_err());
        let oblique =
            ScatteringGeometry::with_atoms_along([0.0, 0.6, 0.8], [0.0, -0.6, -0.8], [0.0, 0.8, -0.6], 4.0).unwrap();
        assert!(cbs_channel_scenario(&oblique, CbsChannel::AlongAxis).is_ok());
        let tilted = ScatteringGeometry::with_atoms_along(Z, [0.0, 0.0, -1.0], [1.0, 0.0, 0.5], 4.0).unwrap();
        assert!(cbs_scenario(&tilted, DetectionChannel::Linear(X)).is_err());
    }

    #[test]
    fn background_visibility_follows_incidence_axis() {
        let g = ScatteringGeometry::cbs_canonical();
        let q = background_axis(&g);
        let mixed = DensityMatrix::maximally_mixed(SpaceLayout::two_qubits());
        let states = [
            mixed.clone(),
            bell_state(BellKind::PsiMinus).density(),
            bell_state(BellKind::PsiPlus).density(),
            basis_state(0, 0).density(),
            crate::states::random_density(7, 4, 3).unwrap(),
        ];
        for rho in &states {
            let p = single_scattering_background(&g, DetectionChannel::Unanalyzed, rho).unwrap();
            let law = background_visibility_law(rho, q).unwrap();
            assert!((p.visibility - law).abs() < 1e-10, "{} vs {}", p.visibility, law);
            if p.visibility > 1e-9 {
                assert!(p.alpha.abs() < 1e-10);
            }
        }
        let p = single_scattering_background(&g, DetectionChannel::Unanalyzed, &mixed).unwrap();
        assert!((p.visibility - 0.5).abs() < 1e-12);
    }
}
