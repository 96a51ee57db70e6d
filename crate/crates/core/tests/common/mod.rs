//! Test-side reference algebra, written against nested vectors so it shares
//! no code with the library's matrix type.
#![allow(dead_code, clippy::needless_range_loop)]

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use probe_witness::qmath::CMatrix;

pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn zeros(r: usize, k: usize) -> Mat {
    vec![vec![c(0.0, 0.0); k]; r]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = zeros(a.len(), b[0].len());
    for i in 0..a.len() {
        for k in 0..b.len() {
            let aik = a[i][k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            for j in 0..b[0].len() {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

pub fn scale(a: &Mat, s: C) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn dag(a: &Mat) -> Mat {
    (0..a[0].len()).map(|j| (0..a.len()).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn trace(a: &Mat) -> C {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Kronecker product with the first factor as the slow index.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Trace over the last factor of dimension `d` of an operator on
/// (rest ⊗ d).
pub fn trace_last(a: &Mat, d: usize) -> Mat {
    let n = a.len() / d;
    let mut out = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..d {
                out[i][j] += a[i * d + k][j * d + k];
            }
        }
    }
    out
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).norm())).fold(0.0, f64::max)
}

pub fn to_mat(m: &CMatrix) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn from_mat(m: &Mat) -> CMatrix {
    CMatrix::from_fn(m.len(), m[0].len(), |i, j| m[i][j])
}

pub fn pauli() -> [Mat; 3] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [vec![vec![z, o], vec![o, z]], vec![vec![z, -i], vec![i, z]], vec![vec![o, z], vec![z, -o]]]
}

/// exp(a) by Taylor series with scaling and squaring.
pub fn expm(a: &Mat) -> Mat {
    let norm: f64 = a.iter().flatten().map(|x| x.norm()).sum();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let x = scale(a, c(1.0 / 2f64.powi(s), 0.0));
    let mut term = eye(a.len());
    let mut sum = eye(a.len());
    for k in 1..30 {
        term = scale(&mul(&term, &x), c(1.0 / k as f64, 0.0));
        sum = add(&sum, &term);
    }
    for _ in 0..s {
        sum = mul(&sum, &sum);
    }
    sum
}

/// Bell vectors in the |00⟩, |01⟩, |10⟩, |11⟩ basis.
pub fn bell(name: &str) -> Vec<C> {
    let h = 1.0 / 2f64.sqrt();
    let v = |a: [f64; 4]| a.iter().map(|&x| c(x * h, 0.0)).collect();
    match name {
        "psi+" => v([0.0, 1.0, 1.0, 0.0]),
        "psi-" => v([0.0, 1.0, -1.0, 0.0]),
        "phi+" => v([1.0, 0.0, 0.0, 1.0]),
        "phi-" => v([1.0, 0.0, 0.0, -1.0]),
        _ => panic!("unknown Bell state {name}"),
    }
}

pub fn projector(v: &[C]) -> Mat {
    v.iter().map(|x| v.iter().map(|y| x * y.conj()).collect()).collect()
}

pub fn expect(m: &Mat, rho: &Mat) -> f64 {
    trace(&mul(m, rho)).re
}

fn det(mut a: Mat) -> C {
    let n = a.len();
    let mut d = c(1.0, 0.0);
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        if a[p][col].norm() < 1e-300 {
            return c(0.0, 0.0);
        }
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[r][k] -= f * v;
            }
        }
    }
    d
}

/// Two-qubit states are entangled exactly when the partial transpose has
/// negative determinant.
pub fn ppt_entangled(rho: &Mat) -> bool {
    let mut pt = zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    pt[a * 2 + b][a2 * 2 + b2] = rho[a * 2 + b2][a2 * 2 + b];
                }
            }
        }
    }
    det(pt).re < -1e-14
}

pub fn bloch_ket(theta: f64, phi: f64) -> Vec<C> {
    vec![c((theta / 2.0).cos(), 0.0), C::from_polar((theta / 2.0).sin(), phi)]
}

/// min over product states of ⟨ψ₁ψ₂|m|ψ₁ψ₂⟩: a fine grid over qubit 1
/// and the exact 2×2 minimum eigenvalue over qubit 2.
pub fn product_minimum(m: &Mat) -> f64 {
    let (nt, np) = (400, 800);
    let mut best = f64::INFINITY;
    for i in 0..=nt {
        let theta = PI * i as f64 / nt as f64;
        for j in 0..np {
            let a = bloch_ket(theta, 2.0 * PI * j as f64 / np as f64);
            let mut red = [[c(0.0, 0.0); 2]; 2];
            for (p, row) in red.iter_mut().enumerate() {
                for (q, x) in row.iter_mut().enumerate() {
                    for r in 0..2 {
                        for s in 0..2 {
                            *x += a[r].conj() * m[r * 2 + p][s * 2 + q] * a[s];
                        }
                    }
                }
            }
            let (h00, h11, h01) = (red[0][0].re, red[1][1].re, red[0][1]);
            let lo = 0.5 * (h00 + h11) - (0.25 * (h00 - h11).powi(2) + h01.norm_sqr()).sqrt();
            best = best.min(lo);
            if i == 0 || i == nt {
                break;
            }
        }
    }
    best
}

pub fn real3_dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn real3_cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = real3_dot(v, v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Two real orthonormal polarizations transverse to k, by Gram–Schmidt
/// from a fixed seed vector.
pub fn transverse_pair(k: [f64; 3]) -> [[f64; 3]; 2] {
    let seed = if k[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let proj = real3_dot(seed, k);
    let e1 = unit([seed[0] - proj * k[0], seed[1] - proj * k[1], seed[2] - proj * k[2]]);
    [e1, real3_cross(k, e1)]
}

/// v·τ on target factor `atom` (0 or 1) of the two-atom space.
pub fn tau_dot(atom: usize, v: [C; 3]) -> Mat {
    let s = pauli();
    let mut single = zeros(2, 2);
    for m in 0..3 {
        single = add(&single, &scale(&s[m], v[m]));
    }
    if atom == 0 {
        kron(&single, &eye(2))
    } else {
        kron(&eye(2), &single)
    }
}

pub fn cvec(v: [f64; 3]) -> [C; 3] {
    [c(v[0], 0.0), c(v[1], 0.0), c(v[2], 0.0)]
}
