//! Target and probe states, plus the partial-transpose entanglement oracle.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{
    c64, eig_hermitian, expm_generator, kron, partial_trace, real, CMatrix, SpaceLayout, Subsystem, C64,
};

/// Hermiticity and trace tolerance of a [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Partial-transpose eigenvalues below `-PPT_TOL` flag entanglement.
pub const PPT_TOL: f64 = 1e-10;

/// A validated density operator on a labeled space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: CMatrix,
    layout: SpaceLayout,
}

impl DensityMatrix {
    pub fn new(op: CMatrix, layout: SpaceLayout) -> Result<Self> {
        if !op.is_square() || op.rows() != layout.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} operator on a layout of dimension {}",
                op.rows(),
                op.cols(),
                layout.dim()
            )));
        }
        let defect = op.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::Contract(format!("density matrix not Hermitian (defect {defect:.3e})")));
        }
        let tr = op.trace();
        if (tr - real(1.0)).norm() > DENSITY_TOL {
            return Err(Error::Contract(format!("density matrix trace is {:.6}{:+.6}i, not 1", tr.re, tr.im)));
        }
        let min = eig_hermitian(&op)?.min();
        if min < -PSD_TOL {
            return Err(Error::Contract(format!("density matrix has negative eigenvalue {min:.3e}")));
        }
        Ok(Self { op, layout })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = &psi.amplitudes;
        Self { op: CMatrix::outer(a, a), layout: psi.layout.clone() }
    }

    pub fn maximally_mixed(layout: SpaceLayout) -> Self {
        let d = layout.dim();
        Self { op: CMatrix::identity(d).scale_real(1.0 / d as f64), layout }
    }

    /// Single-qubit state ½(I + r·σ), |r| ≤ 1.
    pub fn qubit_bloch(r: [f64; 3], label: Subsystem) -> Result<Self> {
        if r.iter().map(|x| x * x).sum::<f64>() > 1.0 + 1e-12 {
            return Err(Error::Usage("Bloch vector longer than one".into()));
        }
        Ok(Self { op: crate::qmath::pauli::bloch_density(r), layout: SpaceLayout::single(2, label) })
    }

    /// Convex combination Σ wᵢ ρᵢ; weights are normalized.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or_else(|| Error::Usage("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || total <= 0.0 {
            return Err(Error::Usage("mixture weights must be non-negative with positive sum".into()));
        }
        let mut op = CMatrix::zeros(first.op.rows(), first.op.cols());
        for (w, rho) in parts {
            if rho.layout != first.layout {
                return Err(Error::Dimension("mixture components on different layouts".into()));
            }
            op = &op + &rho.op.scale_real(w / total);
        }
        Ok(Self { op, layout: first.layout.clone() })
    }

    pub fn op(&self) -> &CMatrix {
        &self.op
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// Re tr(ρ A).
    pub fn expectation(&self, a: &CMatrix) -> Result<f64> {
        Ok(self.op.trace_product(a)?.re)
    }

    pub fn purity(&self) -> f64 {
        self.op.trace_product(&self.op).map(|z| z.re).unwrap_or(f64::NAN)
    }

    /// U ρ U†, for a unitary on the full space.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_square() {
            return Err(Error::Dimension("unitary does not match the state dimension".into()));
        }
        Ok(Self { op: self.op.conjugate_by(u), layout: self.layout.clone() })
    }

    /// ρ₁₂ ⊗ ρ_p on the concatenated layout.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let mut factors = self.layout.factors().to_vec();
        factors.extend_from_slice(other.layout.factors());
        let mut labels = self.layout.labels().to_vec();
        labels.extend_from_slice(other.layout.labels());
        Ok(Self { op: kron(&self.op, &other.op)?, layout: SpaceLayout::new(factors, labels)? })
    }
}

/// Pure state angles (cos θ/2, e^{iφ} sin θ/2) with θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochAngles {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::Usage(format!("Bloch angles out of range: theta={theta}, phi={phi}")));
        }
        Ok(Self { theta, phi })
    }

    /// Folds arbitrary real angles onto the canonical ranges, describing the
    /// same ray.
    pub fn folded(theta: f64, phi: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        let mut p = phi;
        if t > PI {
            t = TAU - t;
            p += PI;
        }
        let mut p = p.rem_euclid(TAU);
        if p >= TAU {
            p = 0.0;
        }
        Self { theta: t, phi: p }
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [real(c), C64::from_polar(s, self.phi)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    layout: SpaceLayout,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, layout: SpaceLayout) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Dimension("amplitude count does not match layout".into()));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > DENSITY_TOL {
            return Err(Error::Contract(format!("state norm² is {norm}, not 1")));
        }
        Ok(Self { amplitudes, layout })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BellKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus];
}

/// Ψ± = (|01⟩ ± |10⟩)/√2, Φ± = (|00⟩ ± |11⟩)/√2.
pub fn bell_state(kind: BellKind) -> PureState {
    let h = FRAC_1_SQRT_2;
    let o = 0.0;
    let amps = match kind {
        BellKind::PsiPlus => [o, h, h, o],
        BellKind::PsiMinus => [o, h, -h, o],
        BellKind::PhiPlus => [h, o, o, h],
        BellKind::PhiMinus => [h, o, o, -h],
    };
    PureState { amplitudes: amps.iter().map(|&a| real(a)).collect(), layout: SpaceLayout::two_qubits() }
}

pub fn bell_projector(kind: BellKind) -> CMatrix {
    bell_state(kind).projector()
}

/// p |Ψ−⟩⟨Ψ−| + (1 − p) I/4.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Usage(format!("Werner weight {p} outside [0, 1]")));
    }
    let singlet = bell_projector(BellKind::PsiMinus);
    let op = &singlet.scale_real(p) + &CMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    Ok(DensityMatrix { op, layout: SpaceLayout::two_qubits() })
}

pub fn product_state(a1: BlochAngles, a2: BlochAngles) -> PureState {
    let [a, b] = a1.amplitudes();
    let [c, d] = a2.amplitudes();
    PureState { amplitudes: vec![a * c, a * d, b * c, b * d], layout: SpaceLayout::two_qubits() }
}

/// Computational-basis product |ab⟩.
pub fn basis_state(a: usize, b: usize) -> PureState {
    let mut amps = vec![real(0.0); 4];
    amps[2 * (a & 1) + (b & 1)] = real(1.0);
    PureState { amplitudes: amps, layout: SpaceLayout::two_qubits() }
}

/// Reproducible random density matrix of the given rank.
///
/// Four-dimensional states carry the two-qubit layout; any other dimension
/// is a single factor labeled probe-in.
pub fn random_density(seed: u64, dim: usize, rank: usize) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_with(&mut rng, dim, rank)
}

pub fn random_density_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::Usage(format!("rank {rank} invalid for dimension {dim}")));
    }
    if dim * rank > crate::qmath::MAX_DIM {
        return Err(Error::Dimension(format!("purification space {dim}x{rank} too large")));
    }
    // Random pure state on system ⊗ ancilla(rank), ancilla traced out.
    let n = dim * rank;
    let mut amps: Vec<C64> = (0..n).map(|_| gaussian_complex(rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|z| *z /= norm);
    let joint = CMatrix::outer(&amps, &amps);
    let layout = SpaceLayout::new(vec![dim, rank], vec![Subsystem::Target1, Subsystem::ProbeIn])?;
    let op = partial_trace(&joint, &layout, &[Subsystem::Target1])?.hermitian_part();
    let layout = if dim == 4 { SpaceLayout::two_qubits() } else { SpaceLayout::single(dim, Subsystem::ProbeIn) };
    Ok(DensityMatrix { op, layout })
}

pub fn random_qubit_angles<R: Rng + ?Sized>(rng: &mut R) -> BlochAngles {
    // uniform on the sphere
    let cos_t: f64 = rng.random_range(-1.0..=1.0);
    BlochAngles { theta: cos_t.clamp(-1.0, 1.0).acos(), phi: rng.random_range(0.0..TAU) }
}

/// Convex mixture of between one and `max_terms` random pure product states.
pub fn random_separable_mixture<R: Rng + ?Sized>(rng: &mut R, max_terms: usize) -> DensityMatrix {
    let terms = rng.random_range(1..=max_terms.max(1));
    let parts: Vec<(f64, DensityMatrix)> = (0..terms)
        .map(|_| {
            let w: f64 = rng.random_range(0.05..1.0);
            let psi = product_state(random_qubit_angles(rng), random_qubit_angles(rng));
            (w, psi.density())
        })
        .collect();
    DensityMatrix::mixture(&parts).expect("positive weights on a common layout")
}

/// A random unitary exp(-i H) with H drawn from the Gaussian ensemble.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    expm_generator(&g.hermitian_part(), 1.0).expect("Hermitian generator")
}

pub(crate) fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Outcome of the partial-transpose test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptVerdict {
    pub entangled: bool,
    pub min_pt_eigenvalue: f64,
}

/// Peres–Horodecki test with the transpose taken on subsystem 2. Exact
/// (necessary and sufficient) for two qubits.
pub fn ppt_check(rho: &DensityMatrix) -> Result<PptVerdict> {
    if !rho.layout.is_two_qubits() {
        return Err(Error::Usage("PPT oracle is defined for two-qubit states only".into()));
    }
    let op = &rho.op;
    let pt = CMatrix::from_fn(4, 4, |i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        op[(2 * a + d, 2 * c + b)]
    });
    let min = eig_hermitian(&pt)?.min();
    Ok(PptVerdict { entangled: min < -PPT_TOL, min_pt_eigenvalue: min })
}
