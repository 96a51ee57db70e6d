//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Every operator in this crate lives on a space of dimension at most
//! [`MAX_DIM`] (two target qubits, one probe-in and one probe-out factor),
//! so the algorithms are plain O(n³) loops over row-major storage.
//!
//! Kronecker ordering: the first-listed factor is the slow (most
//! significant) index, i.e. `kron(a, b)[(i*rb + k, j*cb + l)] = a[(i,j)] * b[(k,l)]`.
//! Two-qubit basis order is therefore |00⟩, |01⟩, |10⟩, |11⟩ with the first
//! digit belonging to subsystem 1.

mod eig;
mod layout;
mod matrix;
pub mod pauli;

pub use eig::{eig_hermitian, expm_generator, HermitianEigen};
pub use layout::{partial_trace, SpaceLayout, Subsystem};
pub use matrix::{kron, kron_all, CMatrix};

pub type C64 = num_complex::Complex64;

/// Largest row or column count any [`CMatrix`] may have.
pub const MAX_DIM: usize = 16;

/// Hermiticity tolerance applied to eigensolver inputs (scaled by the
/// largest entry when that exceeds one).
pub const HERMITIAN_TOL: f64 = 1e-12;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}
