use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::pauli::sigmas;
use crate::qmath::{expm_generator, real, CMatrix, C64};

pub type Vec3 = [f64; 3];
pub type CVec3 = [C64; 3];

const UNIT_TOL: f64 = 1e-12;

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scaled(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn normalized(a: Vec3) -> Result<Vec3> {
    let n = norm(a);
    if n < 1e-300 || !n.is_finite() {
        return Err(Error::Usage("cannot normalize a zero vector".into()));
    }
    Ok(scaled(a, 1.0 / n))
}

pub fn complexify(a: Vec3) -> CVec3 {
    [real(a[0]), real(a[1]), real(a[2])]
}

/// Σ conj(a_m) b_m.
pub fn cdot(a: &CVec3, b: &CVec3) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Σ a_m k_m for a real k (no conjugation).
fn transverse_defect(e: &CVec3, k: Vec3) -> f64 {
    (e[0] * k[0] + e[1] * k[1] + e[2] * k[2]).norm()
}

/// Rotation by `angle` about the unit vector `axis` (Rodrigues).
pub fn rotation_matrix(axis: Vec3, angle: f64) -> [[f64; 3]; 3] {
    let u = normalized(axis).expect("non-zero rotation axis");
    let (s, c) = angle.sin_cos();
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let eps: f64 = (0..3).map(|k| levi_civita(i, j, k) * u[k]).sum();
            r[i][j] = c * delta + (1.0 - c) * u[i] * u[j] - s * eps;
        }
    }
    r
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn rotate(r: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    [dot(r[0], v), dot(r[1], v), dot(r[2], v)]
}

/// Spin-½ representation exp(−i angle u·σ/2) of the same rotation:
/// U (v·σ) U† = (R v)·σ.
pub fn spin_rotation(axis: Vec3, angle: f64) -> CMatrix {
    let u = normalized(axis).expect("non-zero rotation axis");
    let s = sigmas();
    let gen = (0..3).fold(CMatrix::zeros(2, 2), |acc, m| &acc + &s[m].scale_real(u[m]));
    expm_generator(&gen, angle / 2.0).expect("Hermitian generator")
}

/// Incidence, detection and atom geometry for photon scattering.
///
/// Positions are in units of 1/k when `wavenumber` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringGeometry {
    pub k_in: Vec3,
    pub k_out: Vec3,
    /// Unit vector from atom 1 to atom 2.
    pub n_axis: Vec3,
    pub r1: Vec3,
    pub r2: Vec3,
    pub wavenumber: f64,
}

impl ScatteringGeometry {
    pub fn new(k_in: Vec3, k_out: Vec3, n_axis: Vec3, r1: Vec3, r2: Vec3, wavenumber: f64) -> Result<Self> {
        for (name, v) in [("k_in", k_in), ("k_out", k_out), ("n_axis", n_axis)] {
            if (norm(v) - 1.0).abs() > UNIT_TOL {
                return Err(Error::Usage(format!("{name} must be a unit vector (|{name}| = {})", norm(v))));
            }
        }
        if !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::Usage("wavenumber must be positive".into()));
        }
        let sep = sub(r2, r1);
        if norm(cross(sep, n_axis)) > 1e-10 * norm(sep).max(1.0) || dot(sep, n_axis) < 0.0 {
            return Err(Error::Usage("r2 - r1 must point along n_axis".into()));
        }
        Ok(Self { k_in, k_out, n_axis, r1, r2, wavenumber })
    }

    /// Atom 1 at the origin, atom 2 at `separation`·n̂. Directions are
    /// normalized.
    pub fn with_atoms_along(k_in: Vec3, k_out: Vec3, n_axis: Vec3, separation: f64) -> Result<Self> {
        let n = normalized(n_axis)?;
        Self::new(normalized(k_in)?, normalized(k_out)?, n, [0.0; 3], scaled(n, separation), 1.0)
    }

    /// k̂ = ẑ, k̂′ = −ẑ, atoms along x̂ ten units apart.
    pub fn cbs_canonical() -> Self {
        Self::with_atoms_along([0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0], 10.0).expect("valid geometry")
    }

    /// Young phase difference (k − k′)·(r₁ − r₂).
    pub fn young_phase(&self) -> f64 {
        self.wavenumber * dot(sub(self.k_in, self.k_out), sub(self.r1, self.r2))
    }

    /// Double-scattering phase difference (k + k′)·(r₁ − r₂).
    pub fn cbs_phase(&self) -> f64 {
        self.wavenumber * dot(add(self.k_in, self.k_out), sub(self.r1, self.r2))
    }

    /// Applies a rotation to every vector of the geometry.
    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Self {
        Self {
            k_in: rotate(r, self.k_in),
            k_out: rotate(r, self.k_out),
            n_axis: rotate(r, self.n_axis),
            r1: rotate(r, self.r1),
            r2: rotate(r, self.r2),
            wavenumber: self.wavenumber,
        }
    }
}

/// Orthonormal transverse polarization pair attached to a propagation
/// direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    e: [CVec3; 2],
    k: Vec3,
}

impl PolarizationBasis {
    pub fn new(e1: CVec3, e2: CVec3, k: Vec3) -> Result<Self> {
        let gram = [[cdot(&e1, &e1), cdot(&e1, &e2)], [cdot(&e2, &e1), cdot(&e2, &e2)]];
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - real(want)).norm() > UNIT_TOL {
                    return Err(Error::Usage("polarization vectors are not orthonormal".into()));
                }
            }
        }
        if transverse_defect(&e1, k) > UNIT_TOL || transverse_defect(&e2, k) > UNIT_TOL {
            return Err(Error::Usage("polarization vectors must be transverse to k".into()));
        }
        Ok(Self { e: [e1, e2], k })
    }

    /// e₁ ∝ ẑ × k̂ (x̂ when k̂ ∥ ẑ), e₂ = k̂ × e₁.
    pub fn canonical(k: Vec3) -> Self {
        let zk = cross([0.0, 0.0, 1.0], k);
        let e1 = if norm(zk) < 1e-9 { [1.0, 0.0, 0.0] } else { scaled(zk, 1.0 / norm(zk)) };
        let e2 = cross(k, e1);
        Self { e: [complexify(e1), complexify(e2)], k }
    }

    /// Basis e′ₐ = Σ_b u_{ba} e_b for a 2×2 unitary `u`.
    pub fn mixed(&self, u: &CMatrix) -> Result<Self> {
        if u.rows() != 2 || u.cols() != 2 {
            return Err(Error::Dimension("polarization mixing needs a 2x2 unitary".into()));
        }
        let e = |a: usize| -> CVec3 {
            let mut out = [real(0.0); 3];
            for b in 0..2 {
                for m in 0..3 {
                    out[m] += u[(b, a)] * self.e[b][m];
                }
            }
            out
        };
        Self::new(e(0), e(1), self.k)
    }

    pub fn vectors(&self) -> &[CVec3; 2] {
        &self.e
    }

    pub fn k(&self) -> Vec3 {
        self.k
    }

    /// Amplitudes ⟨e_a|v⟩.
    pub fn components(&self, v: &CVec3) -> [C64; 2] {
        [cdot(&self.e[0], v), cdot(&self.e[1], v)]
    }
}

/// Polarization analysis at the detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetectionChannel {
    Unanalyzed,
    Linear([f64; 3]),
}

/// Polarization state of the incoming photon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbePreparation {
    Unpolarized,
    Pure(CVec3),
}
