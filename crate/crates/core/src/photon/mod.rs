//! Photon probing two spin-½ atoms: single scattering (Young) with each
//! atom as one path, and double scattering (coherent backscattering) with
//! the two scattering orders as the paths. Dipole coupling is taken as
//! `d = τ` and all scattering prefactors are 1.

mod geometry;
mod scattering;

pub use geometry::{
    add, cdot, complexify, cross, dot, norm, normalized, rotate, rotation_matrix, scaled, spin_rotation, sub, CVec3,
    DetectionChannel, PolarizationBasis, ProbePreparation, ScatteringGeometry, Vec3,
};
pub use scattering::{
    background_axis, background_visibility_law, cbs_channel_scenario, cbs_scenario, double_scatter_op,
    single_scatter_op, single_scattering_background, young_dyadic, young_dyadic_observable, young_scenario,
    young_scenario_in, Atom, CbsChannel, ScatteringOrder,
};
