//! Scenario runner: binds configuration, dynamics, photonics, and analysis
//! into reproducible experiments with persisted outputs.
//!
//! Each run writes one directory: data files first, `manifest.json` last.
//! The manifest lists a SHA-256 per file, the resolved configuration, and
//! recomputable derived constants, so a run can be verified or repeated bit
//! for bit. Identical (config, seed) produce identical bytes regardless of
//! worker count; if anything fails midway the partial directory is removed.

use std::path::Path;

use nalgebra::Vector3;
use rand_distr::{Distribution as _, StandardNormal};

use crate::analysis::{
    default_step_penalty, detect_steps, estimate_lifetime, fit_capture_transient,
    fit_count_histogram, occupied_radius, CaptureTransient, HistogramFit, LifetimeFit, StepFit,
};
use crate::config::{Scenario, ScenarioKind};
use crate::dynamics::{run_ensemble, AtomState, LossCause, RunConfig, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::export::{DerivedConstants, OutputSet, RunManifest};
use crate::fields::{sample_fields, trap_frequencies};
use crate::forces::{apply_detuning, friction_spectrum, scattering_rate, AveragingSpec};
use crate::params::SystemParams;
use crate::photonics::{background_clicks, bin_counts, emit_photons, merge, PhotonTrace};
use crate::rng::{stream_rng, Purpose};
use crate::units;

/// Execute a scenario and persist its outputs under `out_dir`.
pub fn run_scenario(
    scenario: &Scenario,
    out_dir: &Path,
    workers: Option<usize>,
) -> Result<RunManifest> {
    let mut out = OutputSet::create(out_dir)?;
    match scenario.kind {
        ScenarioKind::Capture => run_capture(scenario, &mut out, workers)?,
        ScenarioKind::Storage => run_storage(scenario, &mut out, workers)?,
        ScenarioKind::LifetimeSweep => run_lifetime_sweep(scenario, &mut out, workers)?,
        ScenarioKind::Histogram => run_histogram(scenario, &mut out, workers)?,
        ScenarioKind::Frictionmap => run_frictionmap(scenario, &mut out)?,
        ScenarioKind::Calibrate => run_storage(scenario, &mut out, workers)?,
    }
    out.finish(scenario, derived_constants(scenario))
}

/// Derived constants recorded in the manifest; each one is recomputable
/// from the resolved configuration alone.
pub fn derived_constants(s: &Scenario) -> DerivedConstants {
    let origin = sample_fields(&s.params, &s.geometry, &Vector3::zeros());
    DerivedConstants {
        waist_cavity: s.params.waist_cavity,
        trap_frequencies: trap_frequencies(&s.params, &s.geometry).ok(),
        scattering_rate_origin: scattering_rate(&s.params, &origin),
        p_e_origin: origin.p_e,
        max_dt: s.run.max_dt(&s.params, &s.geometry),
    }
}

/// Loss cause encoded for CSV columns: 0 survived, 1 escaped, 2 background.
fn cause_code(cause: Option<LossCause>) -> f64 {
    match cause {
        None => 0.0,
        Some(LossCause::Escape) => 1.0,
        Some(LossCause::Background) => 2.0,
    }
}

/// Ensemble-mean detected rate per stride bucket. Lost atoms contribute
/// zero after their loss: the detector keeps watching an empty trap.
fn mean_detected_counts(
    records: &[TrajectoryRecord],
    params: &SystemParams,
    duration: f64,
) -> Option<(f64, Vec<f64>)> {
    let stride = records.iter().find_map(|r| r.rate_trace.as_ref().map(|t| t.stride))?;
    let n_bins = (duration / stride).round() as usize;
    let mut mean = vec![0.0f64; n_bins];
    for rec in records {
        let Some(trace) = rec.rate_trace.as_ref() else { continue };
        for (k, &r) in trace.rates.iter().enumerate().take(n_bins) {
            mean[k] += r as f64;
        }
    }
    let n = records.len().max(1) as f64;
    for (_k, slot) in mean.iter_mut().enumerate() {
        // Scattered rate -> detected clicks per bucket, plus background.
        *slot = (*slot / n * params.eta_det + params.background_rate) * stride;
    }
    Some((stride, mean))
}

fn write_outcome_csv(out: &mut OutputSet, records: &[TrajectoryRecord]) -> Result<()> {
    let rows: Vec<Vec<f64>> = records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let o = &rec.outcome;
            vec![
                i as f64,
                o.t_end,
                o.captured_at.unwrap_or(-1.0),
                o.lost_at.unwrap_or(-1.0),
                cause_code(o.loss_cause),
                o.integrated_rate,
                o.max_p_e,
                o.final_state.r.x,
                o.final_state.r.y,
                o.final_state.r.z,
                o.final_state.v.x,
                o.final_state.v.y,
                o.final_state.v.z,
            ]
        })
        .collect();
    out.write_csv(
        "trajectories.csv",
        &[
            "atom", "t_end_s", "captured_at_s", "lost_at_s", "loss_cause", "expected_photons",
            "max_p_e", "x_m", "y_m", "z_m", "vx_mps", "vy_mps", "vz_mps",
        ],
        &rows,
    )
}

fn write_rate_csv(out: &mut OutputSet, stride: f64, counts: &[f64]) -> Result<()> {
    let rows: Vec<Vec<f64>> = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| vec![(k as f64 + 0.5) * stride, c / stride])
        .collect();
    out.write_csv("rate_mean.csv", &["t_s", "detected_rate_hz"], &rows)
}

/// Thermal launch states for the capture scenario: atoms enter along the
/// standing-wave axis from the configured well, moving toward the cavity.
fn launch_states(s: &Scenario) -> Vec<AtomState> {
    let half_lambda = 0.5 * s.params.lambda_trap;
    let x0 = s.launch.well as f64 * half_lambda;
    let toward_origin = if x0 > 0.0 { -1.0 } else { 1.0 };
    (0..s.atoms)
        .map(|i| {
            let mut rng = stream_rng(s.seed, Purpose::Scenario, i as u64);
            let draw: f64 = StandardNormal.sample(&mut rng);
            let speed = (s.launch.speed + s.launch.speed_spread * draw).max(0.0);
            AtomState {
                t: 0.0,
                r: s.geometry.axis_sw * x0,
                v: s.geometry.axis_sw * (toward_origin * speed),
                bright: true,
            }
        })
        .collect()
}

/// Initial states for storage-like runs: atoms bound near the origin with
/// small positional scatter inside the central well, at rest.
fn bound_states(s: &Scenario, n: usize, index_offset: u64) -> Vec<AtomState> {
    let sigma_v = (units::KB * s.init_temp / s.params.mass).sqrt();
    (0..n)
        .map(|i| {
            let mut rng = stream_rng(s.seed, Purpose::Scenario, index_offset + i as u64);
            let mut draw = |sigma: f64| {
                let x: f64 = StandardNormal.sample(&mut rng);
                sigma * x
            };
            let r = s.geometry.axis_sw * draw(50e-9)
                + s.geometry.axis_cavity * draw(50e-9)
                + s.geometry.axis_sw.cross(&s.geometry.axis_cavity) * draw(1e-6);
            let v = if sigma_v > 0.0 {
                Vector3::new(draw(sigma_v), draw(sigma_v), draw(sigma_v))
            } else {
                Vector3::zeros()
            };
            AtomState { t: 0.0, r, v, bright: true }
        })
        .collect()
}

#[derive(Debug, serde::Serialize)]
struct CaptureSummary {
    kind: &'static str,
    atoms: usize,
    captured: usize,
    capture_fraction: f64,
    lost: usize,
    transient: Option<CaptureTransient>,
}

fn run_capture(s: &Scenario, out: &mut OutputSet, workers: Option<usize>) -> Result<()> {
    let inits = launch_states(s);
    let records = run_ensemble(&s.params, &s.geometry, &s.run, &inits, s.seed, workers)?;

    write_outcome_csv(out, &records)?;
    let transient = match mean_detected_counts(&records, &s.params, s.run.duration) {
        Some((stride, counts)) => {
            write_rate_csv(out, stride, &counts)?;
            fit_capture_transient(&counts, stride, s.params.background_rate, records.len()).ok()
        }
        None => None,
    };

    let captured = records.iter().filter(|r| r.outcome.captured_at.is_some()).count();
    let lost = records.iter().filter(|r| r.outcome.lost_at.is_some()).count();
    out.write_json(
        "summary.json",
        &CaptureSummary {
            kind: "capture",
            atoms: records.len(),
            captured,
            capture_fraction: captured as f64 / records.len().max(1) as f64,
            lost,
            transient,
        },
    )
}

#[derive(Debug, serde::Serialize)]
struct StorageSummary {
    kind: &'static str,
    atoms: usize,
    events: usize,
    censored: usize,
    lifetime: LifetimeFit,
    /// 1 / background_loss_rate when that channel is on; the storage time
    /// this scenario should reproduce when nothing else causes loss.
    expected_background_tau: Option<f64>,
}

/// Shared by `storage` (probe on) and `calibrate` (probe off); the run
/// config already encodes the difference.
fn run_storage(s: &Scenario, out: &mut OutputSet, workers: Option<usize>) -> Result<()> {
    let inits = bound_states(s, s.atoms, 0);
    let records = run_ensemble(&s.params, &s.geometry, &s.run, &inits, s.seed, workers)?;

    write_outcome_csv(out, &records)?;
    if let Some((stride, counts)) = mean_detected_counts(&records, &s.params, s.run.duration) {
        write_rate_csv(out, stride, &counts)?;
    }

    // Detector record for the first trajectory, as a single-experiment
    // click stream (storage observes one atom at a time).
    if let Some(rec) = records.first() {
        if let Some(trace) = rec.rate_trace.as_ref() {
            let mut det_rng = stream_rng(s.seed, Purpose::Detection, 0);
            let clicks = emit_photons(trace, s.params.eta_det, s.params.background_rate, &mut det_rng)?;
            let rows: Vec<Vec<f64>> = clicks.times.iter().map(|&t| vec![t]).collect();
            out.write_csv("clicks.csv", &["t_s"], &rows)?;
        }
    }

    let (durations, lost): (Vec<f64>, Vec<bool>) = records
        .iter()
        .map(|r| (r.outcome.t_end.max(1e-12), r.outcome.lost_at.is_some()))
        .unzip();
    let lifetime = estimate_lifetime(&durations, &lost)?;

    out.write_json(
        "summary.json",
        &StorageSummary {
            kind: s.kind.name(),
            atoms: records.len(),
            events: lifetime.events,
            censored: lifetime.censored,
            lifetime,
            expected_background_tau: (s.params.background_loss_rate > 0.0)
                .then(|| 1.0 / s.params.background_loss_rate),
        },
    )
}

#[derive(Debug, serde::Serialize)]
struct SweepArm {
    pump_on: bool,
    delta_c: f64,
    delta_c_mhz: f64,
    atoms: usize,
    lifetime: LifetimeFit,
}

#[derive(Debug, serde::Serialize)]
struct SweepSummary {
    kind: &'static str,
    arms: Vec<SweepArm>,
}

fn run_lifetime_sweep(s: &Scenario, out: &mut OutputSet, workers: Option<usize>) -> Result<()> {
    // The probe-off reference runs last, reusing the base detuning.
    let mut arms: Vec<(bool, f64)> = s.sweep.detunings.iter().map(|&d| (true, d)).collect();
    if s.sweep.include_pump_off {
        arms.push((false, s.params.delta_c));
    }

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (arm_idx, &(pump_on, delta_c)) in arms.iter().enumerate() {
        let params = apply_detuning(&s.params, delta_c, crate::forces::DetuningMode::PumpOnAtom);
        let run = RunConfig { pump_on, ..s.run.clone() };
        // Decorrelate arms: each gets its own block of scenario and
        // dynamics streams.
        let arm_seed = s.seed.wrapping_add((arm_idx as u64 + 1) << 32);
        let inits = bound_states(s, s.atoms, (arm_idx as u64) * s.atoms as u64);
        let records = run_ensemble(&params, &s.geometry, &run, &inits, arm_seed, workers)?;

        let (durations, lost): (Vec<f64>, Vec<bool>) = records
            .iter()
            .map(|r| (r.outcome.t_end.max(1e-12), r.outcome.lost_at.is_some()))
            .unzip();
        let lifetime = estimate_lifetime(&durations, &lost)?;
        rows.push(vec![
            if pump_on { 1.0 } else { 0.0 },
            units::angular_to_mhz(delta_c),
            records.len() as f64,
            lifetime.events as f64,
            lifetime.tau,
            lifetime.ci_low,
            lifetime.ci_high,
            if lifetime.lower_bound_only { 1.0 } else { 0.0 },
        ]);
        summaries.push(SweepArm {
            pump_on,
            delta_c,
            delta_c_mhz: units::angular_to_mhz(delta_c),
            atoms: records.len(),
            lifetime,
        });
    }

    out.write_csv(
        "sweep.csv",
        &[
            "pump_on", "delta_c_mhz", "atoms", "events", "tau_s", "ci_low_s", "ci_high_s",
            "lower_bound_only",
        ],
        &rows,
    )?;
    out.write_json("summary.json", &SweepSummary { kind: "lifetime_sweep", arms: summaries })
}

#[derive(Debug, serde::Serialize)]
struct HistogramSummary {
    kind: &'static str,
    atoms: usize,
    windows: usize,
    fit: HistogramFit,
    /// Fractional coupling spread implied by the fitted rate spread.
    coupling_spread: f64,
    /// Transverse extent of occupied wells consistent with that spread (m).
    occupied_radius: f64,
    steps: StepFit,
}

fn run_histogram(s: &Scenario, out: &mut OutputSet, workers: Option<usize>) -> Result<()> {
    let n = s.histogram.atoms;
    let half_lambda = 0.5 * s.params.lambda_trap;

    // Atoms occupy different wells of the standing wave; a well at distance
    // x from the cavity axis couples more weakly through the mode envelope.
    let mut inits = bound_states(s, n, 0);
    for (i, init) in inits.iter_mut().enumerate() {
        let mut rng = stream_rng(s.seed, Purpose::Scenario, 1000 + i as u64);
        let draw: f64 = StandardNormal.sample(&mut rng);
        let well = (draw * s.histogram.well_sigma / half_lambda).round();
        init.r += s.geometry.axis_sw * (well * half_lambda);
    }

    let records = run_ensemble(&s.params, &s.geometry, &s.run, &inits, s.seed, workers)?;
    write_outcome_csv(out, &records)?;

    // One detector sees all atoms plus background.
    let mut atom_clicks: Vec<PhotonTrace> = Vec::with_capacity(n + 1);
    for (i, rec) in records.iter().enumerate() {
        let trace = rec.rate_trace.as_ref().ok_or_else(|| {
            Error::Scenario("histogram scenario needs rate traces enabled".into())
        })?;
        let mut rng = stream_rng(s.seed, Purpose::Detection, i as u64);
        atom_clicks.push(emit_photons(trace, s.params.eta_det, 0.0, &mut rng)?);
    }
    let mut bg_rng = stream_rng(s.seed, Purpose::Background, 0);
    atom_clicks.push(background_clicks(s.params.background_rate, s.run.duration, &mut bg_rng));
    let refs: Vec<&PhotonTrace> = atom_clicks.iter().collect();
    let merged = merge(&refs);

    let click_rows: Vec<Vec<f64>> = merged.times.iter().map(|&t| vec![t]).collect();
    out.write_csv("clicks.csv", &["t_s"], &click_rows)?;

    let counts: Vec<u64> = bin_counts(&merged, s.histogram.window)
        .into_iter()
        .map(u64::from)
        .collect();
    let count_rows: Vec<Vec<f64>> = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| vec![(k as f64 + 0.5) * s.histogram.window, c as f64])
        .collect();
    out.write_csv("counts.csv", &["t_s", "clicks"], &count_rows)?;

    let max_count = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut freq = vec![0u64; max_count + 1];
    for &c in &counts {
        freq[c as usize] += 1;
    }
    let hist_rows: Vec<Vec<f64>> = freq
        .iter()
        .enumerate()
        .map(|(k, &m)| vec![k as f64, m as f64])
        .collect();
    out.write_csv("histogram.csv", &["clicks_per_window", "windows"], &hist_rows)?;

    let fit = fit_count_histogram(&counts, s.histogram.window, n.max(1))?;
    let steps = detect_steps(
        &counts,
        s.histogram.window,
        fit.r_det.max(1.0),
        fit.r_bg.max(0.0),
        n.max(1),
        default_step_penalty(counts.len()),
    )?;
    let spread = 0.5 * fit.rel_spread();
    out.write_json(
        "summary.json",
        &HistogramSummary {
            kind: "histogram",
            atoms: n,
            windows: counts.len(),
            coupling_spread: spread,
            occupied_radius: occupied_radius(s.params.waist_cavity, spread),
            fit,
            steps,
        },
    )
}

#[derive(Debug, serde::Serialize)]
struct MapSummary {
    kind: &'static str,
    points: usize,
    /// Detuning (rad/s) where the summed friction peaks.
    best_delta_c: f64,
    best_beta_total: f64,
}

fn run_frictionmap(s: &Scenario, out: &mut OutputSet) -> Result<()> {
    let m = &s.map;
    let grid: Vec<f64> = (0..m.points)
        .map(|i| m.min + (m.max - m.min) * i as f64 / (m.points - 1) as f64)
        .collect();
    let spectrum = friction_spectrum(&s.params, &s.geometry, &grid, m.mode, &AveragingSpec::default());

    let mut rows = Vec::with_capacity(grid.len());
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..grid.len() {
        let total = spectrum.beta_pump[i]
            + spectrum.beta_cav[i]
            + spectrum.beta_sw_cav[i]
            + spectrum.beta_sw_sis[i];
        if total > best.1 {
            best = (i, total);
        }
        rows.push(vec![
            units::angular_to_mhz(grid[i]),
            spectrum.beta_pump[i],
            spectrum.beta_cav[i],
            spectrum.beta_sw_cav[i],
            spectrum.beta_sw_sis[i],
            spectrum.beta_sw_cav[i] + spectrum.beta_sw_sis[i],
            total,
        ]);
    }
    out.write_csv(
        "frictionmap.csv",
        &[
            "delta_c_mhz", "beta_pump", "beta_cav", "beta_sw_cav", "beta_sw_sis", "beta_sw_total",
            "beta_total",
        ],
        &rows,
    )?;
    out.write_json(
        "summary.json",
        &MapSummary {
            kind: "frictionmap",
            points: grid.len(),
            best_delta_c: grid[best.0],
            best_beta_total: best.1,
        },
    )
}
