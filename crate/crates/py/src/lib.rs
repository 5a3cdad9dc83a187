//! Python bindings: a `System` class for field/force/rate queries and
//! single-trajectory runs, plus module functions for the config pipeline
//! and the counting-statistics estimators.

use nalgebra::Vector3;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cavcool::{
    evaluate_forces, sample_fields, scattering_rate, trap_frequencies, AtomState, Error,
    Geometry, RunConfig, ScenarioKind, SystemParams,
};

fn value_err(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn runtime_err(err: Error) -> PyErr {
    match err {
        Error::Config(_) | Error::InvalidParameter { .. } => value_err(err),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

fn tuple3(v: &Vector3<f64>) -> (f64, f64, f64) {
    (v.x, v.y, v.z)
}

fn parse_kind(kind: Option<&str>) -> PyResult<Option<ScenarioKind>> {
    match kind {
        None => Ok(None),
        Some(name) => ScenarioKind::from_name(name).map(Some).ok_or_else(|| {
            PyValueError::new_err(format!(
                "`{name}` is not a scenario (capture, storage, lifetime_sweep, histogram, frictionmap, calibrate)"
            ))
        }),
    }
}

/// Resolved physical system: parameters plus beam geometry.
#[pyclass]
struct System {
    params: SystemParams,
    geometry: Geometry,
}

#[pymethods]
impl System {
    /// Build from config text (same `key = value` format the CLI reads);
    /// empty or omitted text gives the built-in reference parameters.
    #[new]
    #[pyo3(signature = (config_text = ""))]
    fn new(config_text: &str) -> PyResult<Self> {
        let scenario =
            cavcool::validate_config(config_text, Some(ScenarioKind::Storage)).map_err(value_err)?;
        Ok(System { params: scenario.params, geometry: scenario.geometry })
    }

    /// Photon scattering rate into the cavity mode (1/s) at position r (m).
    fn scattering_rate(&self, r: [f64; 3]) -> f64 {
        scattering_rate(&self.params, &sample_fields(&self.params, &self.geometry, &vec3(r)))
    }

    /// Excited-state population at position r (m).
    fn excited_population(&self, r: [f64; 3]) -> f64 {
        sample_fields(&self.params, &self.geometry, &vec3(r)).p_e
    }

    /// Total conservative trap potential (J) at position r (m).
    fn potential(&self, r: [f64; 3]) -> f64 {
        sample_fields(&self.params, &self.geometry, &vec3(r)).u_total
    }

    /// Every force channel at (r, v), as a dict of 3-tuples in newtons,
    /// plus the local scattering rate and diffusion coefficients.
    fn forces<'py>(&self, py: Python<'py>, r: [f64; 3], v: [f64; 3]) -> PyResult<Bound<'py, PyDict>> {
        let fields = sample_fields(&self.params, &self.geometry, &vec3(r));
        let b = evaluate_forces(&self.params, &self.geometry, &fields, &vec3(v));
        let out = PyDict::new(py);
        out.set_item("pump", tuple3(&b.f_pump))?;
        out.set_item("cavity", tuple3(&b.f_cav))?;
        out.set_item("sw_cavity", tuple3(&b.f_sw_cav))?;
        out.set_item("sw_sisyphus", tuple3(&b.f_sw_sis))?;
        out.set_item("conservative", tuple3(&b.f_cons))?;
        out.set_item("r_scat", b.r_scat)?;
        out.set_item("d_pump", b.diffusion.d_pump)?;
        out.set_item("d_cav", b.diffusion.d_cav)?;
        out.set_item("d_spont", b.diffusion.d_spont)?;
        Ok(out)
    }

    /// Trap frequencies (Hz) at the origin: (standing wave, cavity, radial).
    fn trap_frequencies(&self) -> PyResult<(f64, f64, f64)> {
        let f = trap_frequencies(&self.params, &self.geometry).map_err(value_err)?;
        Ok((f.nu_sw, f.nu_cav, f.nu_perp))
    }

    /// Cavity mode waist (m).
    #[getter]
    fn cavity_waist(&self) -> f64 {
        self.params.waist_cavity
    }

    /// Atomic mass (kg).
    #[getter]
    fn mass(&self) -> f64 {
        self.params.mass
    }

    /// Integrate one atom and return its sampled track as a dict of lists:
    /// t, x, y, z, vx, vy, vz plus the outcome fields.
    #[pyo3(signature = (r0, v0, duration, seed = 0, dt = None, sample_stride = 1e-6, pump_on = true, telegraph = true))]
    #[allow(clippy::too_many_arguments)]
    fn simulate<'py>(
        &self,
        py: Python<'py>,
        r0: [f64; 3],
        v0: [f64; 3],
        duration: f64,
        seed: u64,
        dt: Option<f64>,
        sample_stride: f64,
        pump_on: bool,
        telegraph: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mut cfg = RunConfig {
            duration,
            pump_on,
            telegraph,
            record_state_stride: Some(sample_stride),
            ..RunConfig::default()
        };
        if let Some(dt) = dt {
            cfg.dt = dt;
        }
        let init = AtomState { t: 0.0, r: vec3(r0), v: vec3(v0), bright: true };
        let record = cavcool::run_trajectory(&self.params, &self.geometry, &cfg, init, seed, 0)
            .map_err(runtime_err)?;

        let out = PyDict::new(py);
        let o = &record.outcome;
        out.set_item("t_end", o.t_end)?;
        out.set_item("captured_at", o.captured_at)?;
        out.set_item("lost_at", o.lost_at)?;
        out.set_item("max_p_e", o.max_p_e)?;
        out.set_item("scattered_photons", o.integrated_rate)?;
        let pick = |f: fn(&cavcool::StateSample) -> f64| -> Vec<f64> {
            record.samples.iter().map(f).collect()
        };
        out.set_item("t", pick(|s| s.t))?;
        out.set_item("x", pick(|s| s.r[0]))?;
        out.set_item("y", pick(|s| s.r[1]))?;
        out.set_item("z", pick(|s| s.r[2]))?;
        out.set_item("vx", pick(|s| s.v[0]))?;
        out.set_item("vy", pick(|s| s.v[1]))?;
        out.set_item("vz", pick(|s| s.v[2]))?;
        Ok(out)
    }
}

/// Parse and validate config text; returns the fully resolved scenario as a
/// JSON string (SI units). Raises ValueError listing every problem found.
#[pyfunction]
#[pyo3(signature = (config_text, kind = None))]
fn validate_config(config_text: &str, kind: Option<&str>) -> PyResult<String> {
    let scenario =
        cavcool::validate_config(config_text, parse_kind(kind)?).map_err(value_err)?;
    serde_json::to_string_pretty(&scenario).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Run a full scenario, writing its outputs under `out_dir`; returns the run
/// manifest as a JSON string.
#[pyfunction]
#[pyo3(signature = (config_text, out_dir, kind = None, seed = None, workers = None))]
fn run_scenario(
    config_text: &str,
    out_dir: &str,
    kind: Option<&str>,
    seed: Option<u64>,
    workers: Option<usize>,
) -> PyResult<String> {
    let mut scenario =
        cavcool::validate_config(config_text, parse_kind(kind)?).map_err(value_err)?;
    if let Some(seed) = seed {
        scenario.seed = seed;
    }
    let manifest = cavcool::run_scenario(&scenario, std::path::Path::new(out_dir), workers)
        .map_err(runtime_err)?;
    serde_json::to_string_pretty(&manifest).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Censored-exponential lifetime fit. `durations` are observed times (s),
/// `lost[i]` is True when atom i was actually lost (False = still there at
/// the end). Returns a dict with tau and the 1-sigma profile interval.
#[pyfunction]
fn estimate_lifetime<'py>(
    py: Python<'py>,
    durations: Vec<f64>,
    lost: Vec<bool>,
) -> PyResult<Bound<'py, PyDict>> {
    let fit = cavcool::estimate_lifetime(&durations, &lost).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("tau", fit.tau)?;
    out.set_item("ci_low", fit.ci_low)?;
    out.set_item("ci_high", fit.ci_high)?;
    out.set_item("events", fit.events)?;
    out.set_item("censored", fit.censored)?;
    out.set_item("lower_bound_only", fit.lower_bound_only)?;
    Ok(out)
}

/// Fit the photon-count histogram with the atom-number mixture model.
/// `counts` are clicks per window, `window` the window length (s).
#[pyfunction]
#[pyo3(signature = (counts, window, n_max = 3))]
fn fit_count_histogram<'py>(
    py: Python<'py>,
    counts: Vec<u64>,
    window: f64,
    n_max: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let fit = cavcool::fit_count_histogram(&counts, window, n_max).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("r_det", fit.r_det)?;
    out.set_item("r_bg", fit.r_bg)?;
    out.set_item("sigma_r_det", fit.sigma_r_det)?;
    out.set_item("rel_spread", fit.rel_spread())?;
    out.set_item("weights", fit.weights.clone())?;
    out.set_item("chi2", fit.chi2)?;
    out.set_item("converged", fit.converged)?;
    Ok(out)
}

/// Mean harmonic-oscillator occupation at temperature `temp_k` (K) for a
/// trap frequency `freq_hz` (Hz).
#[pyfunction]
fn thermal_occupation(freq_hz: f64, temp_k: f64) -> f64 {
    cavcool::thermal_occupation(freq_hz, temp_k)
}

/// Ground-state fraction of a thermal harmonic oscillator.
#[pyfunction]
fn ground_fraction(freq_hz: f64, temp_k: f64) -> f64 {
    cavcool::ground_fraction(freq_hz, temp_k)
}

#[pymodule]
fn cavcool_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<System>()?;
    m.add_function(wrap_pyfunction!(validate_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_lifetime, m)?)?;
    m.add_function(wrap_pyfunction!(fit_count_histogram, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_occupation, m)?)?;
    m.add_function(wrap_pyfunction!(ground_fraction, m)?)?;
    Ok(())
}
