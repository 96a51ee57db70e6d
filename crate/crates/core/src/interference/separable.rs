//! Minimum of ⟨ψ₁ψ₂|M|ψ₁ψ₂⟩ over pure product states.
//!
//! By linearity of the expectation and convexity of the separable set the
//! minimum over all separable states is attained on a pure product state.
//! The search runs a 12×24 (θ, φ) grid per qubit, then polishes the five
//! best grid points by coordinate-wise golden-section search.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{CMatrix, C64};
use crate::states::BlochAngles;

const THETA_POINTS: usize = 12;
const PHI_POINTS: usize = 24;
const STARTS: usize = 5;
const STEP_TOL: f64 = 1e-6;
const MAX_SWEEPS: usize = 2000;
const GOLDEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableMinimum {
    pub value: f64,
    pub argmin: (BlochAngles, BlochAngles),
}

pub fn separable_minimum(m: &CMatrix) -> Result<SeparableMinimum> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Dimension("separable minimum needs a two-qubit observable".into()));
    }
    if !m.is_hermitian(1e-10 * m.max_abs().max(1.0)) {
        return Err(Error::Contract("separable minimum of a non-Hermitian observable".into()));
    }
    let objective = ProductObjective::new(m);

    let mut grid = Vec::with_capacity(THETA_POINTS * PHI_POINTS);
    for i in 0..THETA_POINTS {
        for j in 0..PHI_POINTS {
            grid.push((PI * i as f64 / (THETA_POINTS - 1) as f64, TAU * j as f64 / PHI_POINTS as f64));
        }
    }
    let amps: Vec<[C64; 2]> = grid.iter().map(|&(t, p)| BlochAngles { theta: t, phi: p }.amplitudes()).collect();

    let mut scored: Vec<(f64, usize, usize)> = Vec::with_capacity(grid.len() * grid.len());
    for (i, a) in amps.iter().enumerate() {
        for (j, b) in amps.iter().enumerate() {
            scored.push((objective.eval_amplitudes(a, b), i, j));
        }
    }
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));

    let steps = [PI / (THETA_POINTS - 1) as f64, TAU / PHI_POINTS as f64];
    let mut best: Option<([f64; 4], f64)> = None;
    for &(_, i, j) in scored.iter().take(STARTS) {
        let x0 = [grid[i].0, grid[i].1, grid[j].0, grid[j].1];
        let (x, v) = refine(&objective, x0, [steps[0], steps[1], steps[0], steps[1]]);
        if best.is_none_or(|(_, bv)| v < bv) {
            best = Some((x, v));
        }
    }
    let (x, value) = best.expect("at least one start");
    Ok(SeparableMinimum { value, argmin: (BlochAngles::folded(x[0], x[1]), BlochAngles::folded(x[2], x[3])) })
}

struct ProductObjective {
    m: [[C64; 4]; 4],
}

impl ProductObjective {
    fn new(m: &CMatrix) -> Self {
        let mut a = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = m[(i, j)];
            }
        }
        Self { m: a }
    }

    fn eval_amplitudes(&self, a: &[C64; 2], b: &[C64; 2]) -> f64 {
        let psi = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..4 {
                row += self.m[i][j] * psi[j];
            }
            acc += psi[i].conj() * row;
        }
        acc.re
    }

    fn eval(&self, x: &[f64; 4]) -> f64 {
        let a = BlochAngles { theta: x[0], phi: x[1] }.amplitudes();
        let b = BlochAngles { theta: x[2], phi: x[3] }.amplitudes();
        self.eval_amplitudes(&a, &b)
    }
}

fn refine(f: &ProductObjective, mut x: [f64; 4], initial: [f64; 4]) -> ([f64; 4], f64) {
    let mut h = initial;
    let mut fx = f.eval(&x);
    for _ in 0..MAX_SWEEPS {
        let mut max_move: f64 = 0.0;
        for k in 0..4 {
            let line = |t: f64| {
                let mut y = x;
                y[k] = t;
                f.eval(&y)
            };
            let (t, ft) = golden_section(line, x[k] - h[k], x[k] + h[k]);
            let mut moved = 0.0;
            if ft < fx {
                moved = (t - x[k]).abs();
                x[k] = t;
                fx = ft;
            }
            max_move = max_move.max(moved);
            // Keep the bracket a few moves wide, never wider than the grid cell.
            h[k] = (4.0 * moved).max(h[k] * 0.5).clamp(STEP_TOL, initial[k]);
        }
        if max_move < STEP_TOL {
            break;
        }
    }
    (x, fx)
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > GOLDEN_TOL {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = f(d);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}
