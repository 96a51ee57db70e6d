//! Pauli matrices and helpers for placing single-qubit operators inside a
//! composite space.

use serde::{Deserialize, Serialize};

use super::{c64, kron_all, real, CMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

pub fn sigma(axis: Axis) -> CMatrix {
    let o = real(0.0);
    let rows = match axis {
        Axis::X => [[o, real(1.0)], [real(1.0), o]],
        Axis::Y => [[o, c64(0.0, -1.0)], [c64(0.0, 1.0), o]],
        Axis::Z => [[real(1.0), o], [o, real(-1.0)]],
    };
    CMatrix::from_fn(2, 2, |i, j| rows[i][j])
}

/// The three Pauli matrices in x, y, z order.
pub fn sigmas() -> [CMatrix; 3] {
    [sigma(Axis::X), sigma(Axis::Y), sigma(Axis::Z)]
}

/// Single-qubit Bloch-vector density matrix ½(I + r·σ).
pub fn bloch_density(r: [f64; 3]) -> CMatrix {
    let s = sigmas();
    let mut out = CMatrix::identity(2);
    for (m, sm) in s.iter().enumerate() {
        out = &out + &sm.scale_real(r[m]);
    }
    out.scale_real(0.5)
}

/// `op` acting on factor `position` of a product space with the given
/// factor dimensions, identity elsewhere.
pub fn embed(op: &CMatrix, position: usize, factors: &[usize]) -> Result<CMatrix> {
    if position >= factors.len() {
        return Err(Error::Usage(format!("factor {position} out of range")));
    }
    if !op.is_square() || op.rows() != factors[position] {
        return Err(Error::Dimension(format!(
            "{}x{} operator does not act on a factor of dimension {}",
            op.rows(),
            op.cols(),
            factors[position]
        )));
    }
    let ids: Vec<CMatrix> = factors.iter().map(|&d| CMatrix::identity(d)).collect();
    let parts: Vec<&CMatrix> = (0..factors.len()).map(|k| if k == position { op } else { &ids[k] }).collect();
    kron_all(&parts)
}

/// Σ_m w_m σ^m_a σ^m_b for two distinct qubit factors `a`, `b`.
pub fn weighted_spin_coupling(weights: [f64; 3], a: usize, b: usize, factors: &[usize]) -> Result<CMatrix> {
    if a == b {
        return Err(Error::Usage("spin coupling needs two distinct factors".into()));
    }
    let dim: usize = factors.iter().product();
    let mut out = CMatrix::zeros(dim, dim);
    for (m, s) in sigmas().iter().enumerate() {
        if weights[m] == 0.0 {
            continue;
        }
        let term = &embed(s, a, factors)? * &embed(s, b, factors)?;
        out = &out + &term.scale_real(weights[m]);
    }
    Ok(out)
}

/// Isotropic σ_a · σ_b.
pub fn spin_dot(a: usize, b: usize, factors: &[usize]) -> Result<CMatrix> {
    weighted_spin_coupling([1.0; 3], a, b, factors)
}
