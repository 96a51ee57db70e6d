//! Entanglement witnesses read off the two-way interference pattern of a
//! single probe particle.
//!
//! A probe in a superposition of two path alternatives `A` and `B` interacts
//! with one target qubit on each path. The fringe it produces at zero
//! external phase measures the target observable
//! `M = tr_p{ρ_p (T_B† P T_A + T_A† P T_B)}`, and with the right choice of
//! paths, couplings, probe preparation and probe observable `M` is an
//! entanglement witness.
//!
//! * [`qmath`]: dense complex matrices, Kronecker products, partial traces,
//!   a Jacobi eigensolver and spectral matrix exponentials.
//! * [`states`]: Bell, Werner, product and random states; the PPT oracle.
//! * [`interference`]: fringe synthesis and fitting, observable extraction,
//!   separable-minimum calibration and witness verdicts.
//! * [`spin`]: electron spin probing two magnetic impurities in an
//!   Aharonov–Bohm ring.
//! * [`photon`]: a photon scattered by two spin-½ atoms, in Young
//!   (single-scattering) and coherent-backscattering (double-scattering)
//!   configurations.
//! * [`cli`]: experiment configs, reports and the verification suite behind
//!   the `probe-witness` binary.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod interference;
pub mod photon;
pub mod qmath;
pub mod spin;
pub mod states;
pub mod witnesses;

pub use error::{Error, Result};
