use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{eig_hermitian, kron, real, CMatrix, SpaceLayout, Subsystem, C64};
use crate::states::{random_density_with, random_unitary, DensityMatrix, PSD_TOL};

/// External phase φ = φ_A − φ_B between the two path alternatives
/// (φ_B is fixed to zero).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExternalPhase(pub f64);

/// One two-way interference experiment: path operators `T_A`, `T_B`
/// (target ⊗ probe-in → target ⊗ probe-out), probe preparation `ρ_p` and
/// probe observable `P` on the outgoing probe space.
#[derive(Debug, Clone)]
pub struct ProbeScenario {
    t_a: CMatrix,
    t_b: CMatrix,
    rho_p: DensityMatrix,
    p_obs: CMatrix,
    layout_in: SpaceLayout,
    layout_out: SpaceLayout,
    positive: bool,
}

/// Expectations of the three distinct operator products of the intensity
/// law on a factorized initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathExpectations {
    /// ⟨T_A† P T_A⟩
    pub aa: C64,
    /// ⟨T_B† P T_B⟩
    pub bb: C64,
    /// ⟨T_B† P T_A⟩
    pub ba: C64,
    /// ⟨T_A† P T_B⟩
    pub ab: C64,
}

impl ProbeScenario {
    pub fn new(t_a: CMatrix, t_b: CMatrix, rho_p: DensityMatrix, p_obs: CMatrix) -> Result<Self> {
        let d_in = rho_p.dim();
        if rho_p.layout().factors().len() != 1 {
            return Err(Error::Dimension("probe state must live on a single factor".into()));
        }
        if !p_obs.is_square() {
            return Err(Error::Dimension("probe observable must be square".into()));
        }
        let d_out = p_obs.rows();
        let layout_in = SpaceLayout::target_with_probe(d_in, Subsystem::ProbeIn);
        let layout_out = SpaceLayout::target_with_probe(d_out, Subsystem::ProbeOut);
        for (name, t) in [("T_A", &t_a), ("T_B", &t_b)] {
            if t.rows() != layout_out.dim() || t.cols() != layout_in.dim() {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{} but must map dimension {} to {}",
                    t.rows(),
                    t.cols(),
                    layout_in.dim(),
                    layout_out.dim()
                )));
            }
        }
        let defect = p_obs.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::Contract(format!("probe observable is not Hermitian (defect {defect:.3e})")));
        }
        let positive = eig_hermitian(&p_obs)?.min() >= -PSD_TOL;
        let rho_p = DensityMatrix::new(rho_p.op().clone(), SpaceLayout::single(d_in, Subsystem::ProbeIn))?;
        Ok(Self { t_a, t_b, rho_p, p_obs, layout_in, layout_out, positive })
    }

    /// Random unitary paths on target ⊗ qubit probe, random probe state and
    /// a random positive observable of norm at most 1.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let t_a = random_unitary(rng, 8);
        let t_b = random_unitary(rng, 8);
        let rank = rng.random_range(1..=2);
        let rho_p = random_density_with(rng, 2, rank).expect("qubit density");
        let p_rank = rng.random_range(1..=2);
        let p_obs = random_density_with(rng, 2, p_rank).expect("qubit density").op().hermitian_part();
        Self::new(t_a, t_b, rho_p, p_obs).expect("consistent random scenario")
    }

    pub fn t_a(&self) -> &CMatrix {
        &self.t_a
    }

    pub fn t_b(&self) -> &CMatrix {
        &self.t_b
    }

    pub fn probe_state(&self) -> &DensityMatrix {
        &self.rho_p
    }

    pub fn probe_observable(&self) -> &CMatrix {
        &self.p_obs
    }

    pub fn layout_in(&self) -> &SpaceLayout {
        &self.layout_in
    }

    pub fn layout_out(&self) -> &SpaceLayout {
        &self.layout_out
    }

    /// Whether `P` is positive semidefinite, i.e. a single physical detector.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn with_observable(&self, p_obs: CMatrix) -> Result<Self> {
        Self::new(self.t_a.clone(), self.t_b.clone(), self.rho_p.clone(), p_obs)
    }

    pub fn with_probe_state(&self, rho_p: DensityMatrix) -> Result<Self> {
        Self::new(self.t_a.clone(), self.t_b.clone(), rho_p, self.p_obs.clone())
    }

    /// Splits `P = P₊ − P₋` into positive detector channels. A positive `P`
    /// yields itself with weight +1; otherwise the positive and negative
    /// spectral parts come back with weights +1 and −1.
    pub fn detector_channels(&self) -> Result<Vec<(f64, ProbeScenario)>> {
        if self.positive {
            return Ok(vec![(1.0, self.clone())]);
        }
        let eig = eig_hermitian(&self.p_obs)?;
        let plus = eig.map_spectrum(|l| real(l.max(0.0)));
        let minus = eig.map_spectrum(|l| real((-l).max(0.0)));
        let mut out = Vec::with_capacity(2);
        for (w, part) in [(1.0, plus), (-1.0, minus)] {
            if part.max_abs() > 0.0 {
                let mut s = self.with_observable(part.hermitian_part())?;
                s.positive = true;
                out.push((w, s));
            }
        }
        Ok(out)
    }

    /// I₄ ⊗ P on the outgoing space.
    pub(crate) fn lifted_observable(&self) -> CMatrix {
        kron(&CMatrix::identity(4), &self.p_obs).expect("validated dimensions")
    }

    /// X† (I ⊗ P) Y on target ⊗ probe-in.
    pub(crate) fn sandwich(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        &(&x.adjoint() * &self.lifted_observable()) * y
    }

    pub(crate) fn check_target(&self, rho12: &DensityMatrix) -> Result<()> {
        if !rho12.layout().is_two_qubits() {
            return Err(Error::Dimension("target state must be a two-qubit density matrix".into()));
        }
        Ok(())
    }

    /// The four path expectations on ρ₁₂ ⊗ ρ_p.
    pub fn path_expectations(&self, rho12: &DensityMatrix) -> Result<PathExpectations> {
        self.check_target(rho12)?;
        let joint = kron(rho12.op(), self.rho_p.op())?;
        let ev = |x: &CMatrix, y: &CMatrix| joint.trace_product(&self.sandwich(x, y));
        Ok(PathExpectations {
            aa: ev(&self.t_a, &self.t_a)?,
            bb: ev(&self.t_b, &self.t_b)?,
            ba: ev(&self.t_b, &self.t_a)?,
            ab: ev(&self.t_a, &self.t_b)?,
        })
    }
}
