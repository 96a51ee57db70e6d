use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::config::ScenarioConfig;
use super::CliError;
use crate::interference::{
    channel_patterns, intensity, pattern_params, phase_grid, CalibratedWitness, ChannelPattern, ExternalPhase,
    InterferencePattern, DECISION_TOLERANCE,
};
use crate::qmath::CMatrix;
use crate::states::ppt_check;

pub const DEFAULT_GRID: usize = 73;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeSample {
    pub phi: f64,
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessSummary {
    /// Row-major entries of M as [re, im].
    pub observable: Vec<Vec<[f64; 2]>>,
    pub separable_min: f64,
    /// Bloch angles (θ, φ) of the two qubits at the separable minimum.
    pub separable_argmin: [[f64; 2]; 2],
    pub target_expectation: f64,
    pub verdict: bool,
    pub ppt_verdict: bool,
    pub min_pt_eigenvalue: f64,
    pub margin: f64,
    pub decision_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub grid_points: usize,
    /// The config as run, re-parseable.
    pub config: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub realization: &'static str,
    /// Fringe parameters; absent for signed (two-detector) observables.
    pub pattern: Option<InterferencePattern>,
    pub channels: Vec<ChannelPattern>,
    /// Path phase fixed by a photon geometry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric_phase: Option<f64>,
    pub witness: WitnessSummary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fringe_table: Vec<FringeSample>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub parameter: f64,
    pub target_expectation: f64,
    pub visibility: Option<f64>,
    pub alpha: Option<f64>,
    pub verdict: bool,
    pub ppt: bool,
}

fn entries(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

/// Executes one config. `grid = 0` skips the fringe table.
pub fn run(cfg: &ScenarioConfig, seed: u64, grid: usize) -> Result<RunReport, CliError> {
    let scenario = cfg.realization.scenario()?;
    let rho = cfg.target.density(seed)?;
    let calibrated = CalibratedWitness::from_scenario(&scenario)?;
    let w = calibrated.report(&rho)?;
    let sep = calibrated.separable_minimum();
    let pattern = if scenario.is_positive() { Some(pattern_params(&scenario, &rho)?) } else { None };
    let fringe_table = phase_grid(grid)
        .into_iter()
        .map(|phi| Ok(FringeSample { phi, intensity: intensity(&scenario, &rho, ExternalPhase(phi))? }))
        .collect::<crate::Result<Vec<_>>>()?;
    let (a, b) = sep.argmin;
    Ok(RunReport {
        realization: cfg.realization.kind(),
        pattern,
        channels: channel_patterns(&scenario, &rho)?,
        geometric_phase: cfg.realization.geometric_phase()?,
        witness: WitnessSummary {
            observable: entries(calibrated.observable()),
            separable_min: w.separable_min,
            separable_argmin: [[a.theta, a.phi], [b.theta, b.phi]],
            target_expectation: w.target_expectation,
            verdict: w.verdict,
            ppt_verdict: w.ppt_verdict,
            min_pt_eigenvalue: ppt_check(&rho)?.min_pt_eigenvalue,
            margin: w.margin,
            decision_tolerance: DECISION_TOLERANCE,
        },
        fringe_table,
        metadata: Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            seed,
            grid_points: grid,
            config: cfg.to_toml(),
        },
    })
}

/// One row per sweep point, evaluated in parallel and returned in sweep
/// order.
pub fn scan(cfg: &ScenarioConfig, seed: u64) -> Result<Vec<ScanRow>, CliError> {
    let sweep = cfg.sweep.as_ref().ok_or_else(|| CliError::Config("scan needs a [sweep] table".into()))?;
    sweep
        .values()
        .par_iter()
        .map(|&x| {
            let point = cfg.at_parameter(sweep.parameter, x)?;
            let r = run(&point, seed, 0)?;
            Ok(ScanRow {
                parameter: x,
                target_expectation: r.witness.target_expectation,
                visibility: r.pattern.map(|p| p.visibility),
                alpha: r.pattern.map(|p| p.alpha),
                verdict: r.witness.verdict,
                ppt: r.witness.ppt_verdict,
            })
        })
        .collect()
}

pub fn report_json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn fringe_csv(table: &[FringeSample]) -> String {
    let mut out = String::from("phi,intensity\n");
    for s in table {
        writeln!(out, "{},{}", s.phi, s.intensity).unwrap();
    }
    out
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("parameter,target_expectation,visibility,alpha,verdict,ppt\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.parameter,
            r.target_expectation,
            opt(r.visibility),
            opt(r.alpha),
            r.verdict,
            r.ppt
        )
        .unwrap();
    }
    out
}

/// Minimal line plot of the fringe table.
pub fn fringe_svg(table: &[FringeSample]) -> String {
    let (w, h, pad) = (640.0, 360.0, 40.0);
    let lo = table.iter().map(|s| s.intensity).fold(f64::INFINITY, f64::min).min(0.0);
    let hi = table.iter().map(|s| s.intensity).fold(f64::NEG_INFINITY, f64::max).max(lo + 1e-12);
    let x = |phi: f64| pad + (phi + std::f64::consts::PI) / (2.0 * std::f64::consts::PI) * (w - 2.0 * pad);
    let y = |v: f64| h - pad - (v - lo) / (hi - lo) * (h - 2.0 * pad);
    let points: Vec<String> = table.iter().map(|s| format!("{:.2},{:.2}", x(s.phi), y(s.intensity))).collect();
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{x0:.2}\" y1=\"{pad}\" x2=\"{x0:.2}\" y2=\"{yb}\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n\
         <line x1=\"{pad}\" y1=\"{yb}\" x2=\"{xr}\" y2=\"{yb}\" stroke=\"black\"/>\n\
         <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"{pts}\"/>\n\
         <text x=\"{xr}\" y=\"{yt}\" text-anchor=\"end\" font-size=\"12\">phi</text>\n\
         </svg>\n",
        x0 = x(0.0),
        yb = h - pad,
        xr = w - pad,
        yt = h - pad / 3.0,
        pts = points.join(" "),
    )
}
