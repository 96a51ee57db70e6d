use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CMatrix, C64};
use crate::error::{Error, Result};

/// Role tag of one tensor factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subsystem {
    Target1,
    Target2,
    ProbeIn,
    ProbeOut,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subsystem::Target1 => "target-1",
            Subsystem::Target2 => "target-2",
            Subsystem::ProbeIn => "probe-in",
            Subsystem::ProbeOut => "probe-out",
        };
        f.write_str(s)
    }
}

/// Ordered tensor-factor bookkeeping for a composite space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceLayout {
    factors: Vec<usize>,
    labels: Vec<Subsystem>,
}

impl SpaceLayout {
    pub fn new(factors: Vec<usize>, labels: Vec<Subsystem>) -> Result<Self> {
        if factors.len() != labels.len() || factors.is_empty() {
            return Err(Error::Usage("layout needs one label per factor".into()));
        }
        if factors.contains(&0) {
            return Err(Error::Usage("factor dimensions must be positive".into()));
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::Usage(format!("duplicate layout label {l}")));
            }
        }
        Ok(Self { factors, labels })
    }

    pub fn single(dim: usize, label: Subsystem) -> Self {
        Self { factors: vec![dim], labels: vec![label] }
    }

    pub fn two_qubits() -> Self {
        Self { factors: vec![2, 2], labels: vec![Subsystem::Target1, Subsystem::Target2] }
    }

    /// target-1 ⊗ target-2 ⊗ probe (probe factor last).
    pub fn target_with_probe(probe_dim: usize, probe: Subsystem) -> Self {
        Self { factors: vec![2, 2, probe_dim], labels: vec![Subsystem::Target1, Subsystem::Target2, probe] }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn labels(&self) -> &[Subsystem] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn position(&self, label: Subsystem) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn factor_dim(&self, label: Subsystem) -> Option<usize> {
        self.position(label).map(|k| self.factors[k])
    }

    pub fn is_two_qubits(&self) -> bool {
        self.factors == [2, 2]
    }

    /// Sub-layout containing only `keep`, in this layout's order.
    pub fn restrict(&self, keep: &[Subsystem]) -> Result<Self> {
        validate_keep(self, keep)?;
        let (factors, labels) =
            self.factors.iter().zip(&self.labels).filter(|(_, l)| keep.contains(l)).map(|(&f, &l)| (f, l)).unzip();
        Ok(Self { factors, labels })
    }
}

fn validate_keep(layout: &SpaceLayout, keep: &[Subsystem]) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::Usage("partial trace must keep at least one factor".into()));
    }
    for l in keep {
        if !layout.labels.contains(l) {
            return Err(Error::Usage(format!("label {l} is not part of the layout")));
        }
    }
    Ok(())
}

/// Traces out every factor not listed in `keep`. The result lives on the
/// kept factors in the layout's original order.
pub fn partial_trace(a: &CMatrix, layout: &SpaceLayout, keep: &[Subsystem]) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("partial trace of a non-square matrix".into()));
    }
    if layout.dim() != a.rows() {
        return Err(Error::Dimension(format!(
            "layout of dimension {} attached to a {}x{} operator",
            layout.dim(),
            a.rows(),
            a.cols()
        )));
    }
    validate_keep(layout, keep)?;

    let kept: Vec<bool> = layout.labels.iter().map(|l| keep.contains(l)).collect();
    let kept_dim: usize = layout.factors.iter().zip(&kept).filter(|(_, &k)| k).map(|(f, _)| f).product();
    let traced_dim = layout.dim() / kept_dim;

    // Global index from (kept multi-index, traced multi-index), both encoded
    // as mixed-radix integers in layout order.
    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut k = kept_idx;
        let mut t = traced_idx;
        let mut digits = vec![0usize; layout.factors.len()];
        for pos in (0..layout.factors.len()).rev() {
            let d = layout.factors[pos];
            if kept[pos] {
                digits[pos] = k % d;
                k /= d;
            } else {
                digits[pos] = t % d;
                t /= d;
            }
        }
        digits.iter().zip(&layout.factors).fold(0, |acc, (&dg, &d)| acc * d + dg)
    };

    let mut out = CMatrix::zeros(kept_dim, kept_dim);
    for i in 0..kept_dim {
        for j in 0..kept_dim {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..traced_dim {
                acc += a[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
