//! Reference target observables: the Bell-projector witnesses W± and the
//! probe-realizable effective triplet witnesses.

use crate::qmath::pauli::{embed, sigma, weighted_spin_coupling, Axis};
use crate::qmath::{CMatrix, C64};
use crate::states::{bell_projector, BellKind};

const TARGET: [usize; 2] = [2, 2];

/// W − = I − 2|Ψ−⟩⟨Ψ−| = ½(I + τ₁·τ₂).
pub fn w_minus() -> CMatrix {
    &CMatrix::identity(4) - &bell_projector(BellKind::PsiMinus).scale_real(2.0)
}

/// W + = I − 2|Ψ+⟩⟨Ψ+| = ½(I − τ₁ˣτ₂ˣ − τ₁ʸτ₂ʸ + τ₁ᶻτ₂ᶻ).
pub fn w_plus() -> CMatrix {
    &CMatrix::identity(4) - &bell_projector(BellKind::PsiPlus).scale_real(2.0)
}

/// τ₁·τ₂.
pub fn tau_dot() -> CMatrix {
    weighted_spin_coupling([1.0; 3], 0, 1, &TARGET).expect("two-qubit layout")
}

/// τ₁ᵃτ₂ᵃ for one axis.
pub fn tau_correlation(axis: Axis) -> CMatrix {
    let mut w = [0.0; 3];
    w[axis.index()] = 1.0;
    weighted_spin_coupling(w, 0, 1, &TARGET).expect("two-qubit layout")
}

/// τ₁ᵃ + τ₂ᵃ.
pub fn tau_sum(axis: Axis) -> CMatrix {
    let s = sigma(axis);
    &embed(&s, 0, &TARGET).expect("factor 0") + &embed(&s, 1, &TARGET).expect("factor 1")
}

/// W+ + ½(τ₁ᶻ + τ₂ᶻ): separable minimum −1/4, value −1 on Ψ+.
pub fn effective_triplet_witness() -> CMatrix {
    &w_plus() + &tau_sum(Axis::Z).scale_real(0.5)
}

/// Least-squares fit `m ≈ scale·reference + offset·I` under the Frobenius
/// inner product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFit {
    pub scale: f64,
    pub offset: f64,
    /// Largest entry of `m − (scale·reference + offset·I)`.
    pub residual: f64,
}

pub fn affine_fit(m: &CMatrix, reference: &CMatrix) -> AffineFit {
    let id = CMatrix::identity(m.rows());
    let ip =
        |a: &CMatrix, b: &CMatrix| -> f64 { a.entries().iter().zip(b.entries()).map(|(x, y)| (x.conj() * y).re).sum() };
    let (aa, ai, ii) = (ip(reference, reference), ip(reference, &id), ip(&id, &id));
    let (am, im) = (ip(reference, m), ip(&id, m));
    let det = aa * ii - ai * ai;
    let (scale, offset) =
        if det.abs() < 1e-14 { (0.0, im / ii) } else { ((am * ii - ai * im) / det, (aa * im - ai * am) / det) };
    let model = &reference.scale_real(scale) + &id.scale(C64::new(offset, 0.0));
    AffineFit { scale, offset, residual: m.max_abs_diff(&model) }
}
