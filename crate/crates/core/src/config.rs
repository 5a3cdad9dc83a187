//! Plain-text configuration files.
//!
//! The format is deliberately simple: one `key = value` per line, `#` starts
//! a comment, values are numbers, booleans, strings, or comma-separated
//! number lists. Frequencies are ordinary frequencies (MHz or kHz, never
//! angular), lengths are given in the unit named by the key, times likewise.
//! Validation is exhaustive: unknown keys, duplicates, type errors, and
//! out-of-range values are all collected with line numbers before the parse
//! fails, so one pass over the error list fixes the file.

use std::collections::BTreeMap;

use nalgebra::Vector3;

use crate::dynamics::{RunConfig, TrapModulation};
use crate::error::{ConfigIssue, Error, Result};
use crate::forces::DetuningMode;
use crate::params::{Geometry, SystemParams};
use crate::units;

/// What a run is supposed to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// Launch thermal atoms along the trap axis and watch them get caught.
    Capture,
    /// Hold bound atoms with the probe on and record loss times.
    Storage,
    /// Storage at several cavity detunings under parametric modulation.
    LifetimeSweep,
    /// Several atoms at different wells; click statistics per time window.
    Histogram,
    /// Friction-coefficient spectra over cavity detuning (no dynamics).
    Frictionmap,
    /// Probe off; loss comes from the background channel alone.
    Calibrate,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Capture => "capture",
            ScenarioKind::Storage => "storage",
            ScenarioKind::LifetimeSweep => "lifetime_sweep",
            ScenarioKind::Histogram => "histogram",
            ScenarioKind::Frictionmap => "frictionmap",
            ScenarioKind::Calibrate => "calibrate",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "capture" => ScenarioKind::Capture,
            "storage" => ScenarioKind::Storage,
            "lifetime_sweep" => ScenarioKind::LifetimeSweep,
            "histogram" => ScenarioKind::Histogram,
            "frictionmap" => ScenarioKind::Frictionmap,
            "calibrate" => ScenarioKind::Calibrate,
            _ => return None,
        })
    }
}

/// Initial conditions for the capture scenario: atoms arrive along the
/// standing-wave axis with thermal speeds, starting some wells away from
/// the cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LaunchSpec {
    /// Mean launch speed (m/s).
    pub speed: f64,
    /// Standard deviation of the launch speed (m/s).
    pub speed_spread: f64,
    /// Starting well index; position is `well * lambda_trap / 2` on the
    /// standing-wave axis (negative means upstream).
    pub well: i64,
}

/// Detuning grid and controls for the lifetime sweep.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepSpec {
    /// Cavity detunings to visit (rad/s).
    pub detunings: Vec<f64>,
    /// Also run with the probe off, as the no-cooling reference.
    pub include_pump_off: bool,
}

/// Multi-atom histogram scenario controls.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct HistogramSpec {
    /// Number of simultaneously stored atoms.
    pub atoms: usize,
    /// Radial spread of the occupied wells (m).
    pub well_sigma: f64,
    /// Counting window (s).
    pub window: f64,
}

/// Friction-spectrum map controls.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MapSpec {
    /// Grid of cavity detunings (rad/s), built from min/max/points.
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub mode: DetuningMode,
}

/// A fully resolved, validated run description.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub params: SystemParams,
    pub geometry: Geometry,
    pub run: RunConfig,
    /// Ensemble size (trajectories, or atoms for the histogram kind).
    pub atoms: usize,
    pub seed: u64,
    pub launch: LaunchSpec,
    /// Initial kinetic temperature for bound-atom ensembles (K); zero starts at rest.
    pub init_temp: f64,
    pub sweep: SweepSpec,
    pub histogram: HistogramSpec,
    pub map: MapSpec,
}

/// One parsed `key = value` with its provenance.
struct RawValue {
    line: usize,
    text: String,
    used: bool,
}

struct Parser {
    values: BTreeMap<String, RawValue>,
    issues: Vec<ConfigIssue>,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut values: BTreeMap<String, RawValue> = BTreeMap::new();
        let mut issues = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let stripped = stripped.trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                issues.push(ConfigIssue {
                    line,
                    key: stripped.split_whitespace().next().unwrap_or("").into(),
                    message: "expected `key = value`".into(),
                });
                continue;
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                issues.push(ConfigIssue { line, key, message: "empty key".into() });
                continue;
            }
            if let Some(prev) = values.get(&key) {
                issues.push(ConfigIssue {
                    line,
                    key: key.clone(),
                    message: format!("duplicate key, first set on line {}", prev.line),
                });
                continue;
            }
            values.insert(key, RawValue { line, text: value, used: false });
        }
        Parser { values, issues }
    }

    fn complain(&mut self, key: &str, message: String) {
        let line = self.values.get(key).map_or(0, |v| v.line);
        self.issues.push(ConfigIssue { line, key: key.into(), message });
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        if let Some(v) = self.values.get_mut(key) {
            v.used = true;
            return Some(v.text.clone());
        }
        None
    }

    fn f64(&mut self, key: &str, default: f64) -> f64 {
        match self.raw(key) {
            None => default,
            Some(text) => match text.parse::<f64>() {
                Ok(x) if x.is_finite() => x,
                _ => {
                    self.complain(key, format!("`{text}` is not a finite number"));
                    default
                }
            },
        }
    }

    fn f64_opt(&mut self, key: &str) -> Option<f64> {
        let text = self.raw(key)?;
        match text.parse::<f64>() {
            Ok(x) if x.is_finite() => Some(x),
            _ => {
                self.complain(key, format!("`{text}` is not a finite number"));
                None
            }
        }
    }

    fn u64(&mut self, key: &str, default: u64) -> u64 {
        match self.raw(key) {
            None => default,
            Some(text) => match text.parse::<u64>() {
                Ok(x) => x,
                Err(_) => {
                    self.complain(key, format!("`{text}` is not a non-negative integer"));
                    default
                }
            },
        }
    }

    fn bool(&mut self, key: &str, default: bool) -> bool {
        match self.raw(key) {
            None => default,
            Some(text) => match text.as_str() {
                "true" | "yes" | "on" => true,
                "false" | "no" | "off" => false,
                other => {
                    self.complain(key, format!("`{other}` is not a boolean (true/false)"));
                    default
                }
            },
        }
    }

    fn list_f64(&mut self, key: &str) -> Option<Vec<f64>> {
        let text = self.raw(key)?;
        let mut out = Vec::new();
        for part in text.split(',') {
            match part.trim().parse::<f64>() {
                Ok(x) if x.is_finite() => out.push(x),
                _ => {
                    self.complain(key, format!("`{}` is not a finite number", part.trim()));
                    return None;
                }
            }
        }
        if out.is_empty() {
            self.complain(key, "empty list".into());
            return None;
        }
        Some(out)
    }

    /// Range guard: complains and returns the fallback when `x` fails `ok`.
    fn require(&mut self, key: &str, x: f64, ok: impl Fn(f64) -> bool, what: &str, fallback: f64) -> f64 {
        if ok(x) {
            x
        } else {
            self.complain(key, format!("{x} {what}"));
            fallback
        }
    }

    /// Present-and-valid: `None` when the key is absent (the caller keeps
    /// its default untouched, bit for bit) or failed the range check.
    fn checked(&mut self, key: &str, ok: impl Fn(f64) -> bool, what: &str) -> Option<f64> {
        let x = self.f64_opt(key)?;
        if ok(x) {
            Some(x)
        } else {
            self.complain(key, format!("{x} {what}"));
            None
        }
    }

    fn finish_unknown_keys(&mut self) {
        let unused: Vec<(usize, String)> = self
            .values
            .iter()
            .filter(|(_, v)| !v.used)
            .map(|(k, v)| (v.line, k.clone()))
            .collect();
        for (line, key) in unused {
            self.issues.push(ConfigIssue { line, key, message: "unknown key".into() });
        }
    }
}

/// Parse and exhaustively validate a configuration, producing a runnable
/// scenario. `kind_override` (from a CLI subcommand) wins over the
/// `scenario` key; one of the two must be present.
pub fn validate_config(text: &str, kind_override: Option<ScenarioKind>) -> Result<Scenario> {
    let mut p = Parser::new(text);

    // Scenario kind.
    let kind = match (p.raw("scenario"), kind_override) {
        (_, Some(kind)) => kind,
        (Some(name), None) => match ScenarioKind::from_name(&name) {
            Some(kind) => kind,
            None => {
                p.complain(
                    "scenario",
                    format!(
                        "`{name}` is not a scenario (capture, storage, lifetime_sweep, histogram, frictionmap, calibrate)"
                    ),
                );
                ScenarioKind::Storage
            }
        },
        (None, None) => {
            p.complain("scenario", "missing; set the key or pass a subcommand".into());
            ScenarioKind::Storage
        }
    };

    // Physics parameters, lab units. Absent keys keep the reference values
    // exactly; only user-supplied text goes through unit conversion.
    let mut params = SystemParams::default();
    let pos = |x: f64| x > 0.0;
    let non_neg = |x: f64| x >= 0.0;

    if let Some(x) = p.checked("coupling_mhz", pos, "must be positive") {
        params.g0 = units::mhz_to_angular(x);
    }
    if let Some(x) = p.checked("kappa_mhz", pos, "must be positive") {
        params.kappa = units::mhz_to_angular(x);
    }
    if let Some(x) = p.checked("gamma_mhz", pos, "must be positive") {
        params.gamma = units::mhz_to_angular(x);
    }
    if let Some(x) = p.checked("rabi_mhz", non_neg, "must be non-negative") {
        params.omega_rabi = units::mhz_to_angular(x);
    }
    if let Some(x) = p.f64_opt("cavity_detuning_mhz") {
        params.delta_c = units::mhz_to_angular(x);
    }
    if let Some(x) = p.f64_opt("pump_atom_detuning_mhz") {
        params.delta_pa = units::mhz_to_angular(x);
    }
    if let Some(x) = p.checked("stark_max_mhz", non_neg, "must be non-negative") {
        params.stark_max = units::mhz_to_angular(x);
    }
    if let Some(x) = p.checked("mass_amu", pos, "must be positive") {
        params.mass = x * units::AMU;
    }
    if let Some(x) = p.checked("trap_depth_mk", non_neg, "must be non-negative") {
        params.u_sw = units::mk_to_joule(x);
    }
    if let Some(x) = p.checked("lattice_depth_uk", non_neg, "must be non-negative") {
        params.u_ic = units::uk_to_joule(x);
    }

    for (key, slot) in [
        ("trap_wavelength_nm", &mut params.lambda_trap),
        ("cavity_wavelength_nm", &mut params.lambda_cavity),
        ("lattice_wavelength_nm", &mut params.lambda_intracavity),
        ("pump_wavelength_nm", &mut params.lambda_pump),
    ] {
        if let Some(x) = p.checked(key, pos, "must be positive") {
            *slot = units::nm_to_m(x);
        }
    }
    for (key, slot) in [
        ("trap_waist_um", &mut params.waist_sw),
        ("pump_waist_um", &mut params.waist_pump),
    ] {
        if let Some(x) = p.checked(key, pos, "must be positive") {
            *slot = units::um_to_m(x);
        }
    }

    // Cavity waist: explicit value wins; next a supplied resonator geometry;
    // otherwise the default already derived by SystemParams::default().
    let length = p.checked("cavity_length_mm", pos, "must be positive");
    let mirror = p.checked("mirror_radius_cm", pos, "must be positive");
    if let Some(x) = p.checked("cavity_waist_um", pos, "must be positive") {
        params.waist_cavity = units::um_to_m(x);
    } else if length.is_some() || mirror.is_some() {
        let length = units::mm_to_m(length.unwrap_or(0.5));
        let mirror = units::cm_to_m(mirror.unwrap_or(5.0));
        if length >= 2.0 * mirror {
            p.complain(
                "cavity_length_mm",
                "resonator is unstable: length >= 2 x mirror radius".into(),
            );
        } else {
            params.waist_cavity =
                crate::params::cavity_waist(length, mirror, params.lambda_cavity);
        }
    }

    if let Some(x) = p.checked("duty_bright", |x| x > 0.0 && x <= 1.0, "must lie in (0, 1]") {
        params.duty_bright = x;
    }
    if let Some(x) = p.checked("bright_dwell_us", pos, "must be positive") {
        params.bright_dwell = units::us_to_s(x);
    }
    if let Some(x) = p.checked("eta_det", |x| (0.0..=1.0).contains(&x), "must lie in [0, 1]") {
        params.eta_det = x;
    }
    if let Some(x) = p.checked("background_count_rate_hz", non_neg, "must be non-negative") {
        params.background_rate = x;
    }
    if let Some(x) = p.checked("pe_cap", |x| x > 0.0 && x <= 1.0, "must lie in (0, 1]") {
        params.pe_cap = x;
    }
    if let Some(x) = p.checked("background_loss_rate_hz", non_neg, "must be non-negative") {
        params.background_loss_rate = x;
    }

    // Geometry.
    let mut geometry = Geometry::default();
    if let Some(x) = p.f64_opt("lattice_phase_rad") {
        geometry.lattice_phase = x;
    }
    if let Some(x) = p.checked("region_halfwidth_um", pos, "must be positive") {
        geometry.region_halfwidth = units::um_to_m(x);
    }
    if let Some(x) = p.checked("tube_radius_waists", pos, "must be positive") {
        geometry.tube_radius_waists = x;
    }
    if let Some(dir) = p.raw("gravity") {
        let unit = match dir.as_str() {
            "none" => None,
            "x" => Some(Vector3::x()),
            "-x" => Some(-Vector3::x()),
            "y" => Some(Vector3::y()),
            "-y" => Some(-Vector3::y()),
            "z" => Some(Vector3::z()),
            "-z" => Some(-Vector3::z()),
            other => {
                p.complain("gravity", format!("`{other}` is not one of none, x, -x, y, -y, z, -z"));
                None
            }
        };
        if let Some(u) = unit {
            geometry = geometry.with_gravity(u);
        }
    }

    // Run controls.
    let default_duration_ms = match kind {
        ScenarioKind::Capture => 1.5,
        ScenarioKind::Storage => 50.0,
        ScenarioKind::LifetimeSweep => 100.0,
        ScenarioKind::Histogram => 200.0,
        ScenarioKind::Frictionmap => 0.0,
        ScenarioKind::Calibrate => 10_000.0,
    };
    let duration = p.f64("duration_ms", default_duration_ms);
    let dt = p.f64("dt_ns", 29.0);
    let rate_stride = p.f64("rate_stride_us", 10.0);
    let state_stride = p.f64_opt("state_stride_us");
    let capture_window = p.f64("capture_window_us", 10.0);
    let telegraph = p.bool("telegraph", true);

    let mod_depth = p.f64("modulation_depth", 0.0);
    let mod_freq = p.f64("modulation_freq_khz", 0.0);
    let mod_linewidth = p.f64("modulation_linewidth_khz", 0.0);
    let modulation = if mod_depth > 0.0 {
        if !(mod_depth < 1.0) {
            p.complain("modulation_depth", format!("{mod_depth} must lie in [0, 1)"));
        }
        if !(mod_freq > 0.0) {
            p.complain("modulation_freq_khz", "must be positive when modulation_depth > 0".into());
        }
        if mod_linewidth < 0.0 {
            p.complain("modulation_linewidth_khz", "must be non-negative".into());
        }
        Some(TrapModulation {
            depth: mod_depth,
            freq: mod_freq * 1e3,
            linewidth: mod_linewidth.max(0.0) * 1e3,
            phase0: None,
        })
    } else {
        if mod_depth < 0.0 {
            p.complain("modulation_depth", format!("{mod_depth} must lie in [0, 1)"));
        }
        None
    };

    let run = RunConfig {
        dt: units::ns_to_s(p.require("dt_ns", dt, pos, "must be positive", 29.0)),
        duration: units::ms_to_s(p.require("duration_ms", duration, non_neg, "must be non-negative", 1.0)),
        pump_on: !matches!(kind, ScenarioKind::Calibrate),
        telegraph,
        modulation,
        record_rate_stride: Some(units::us_to_s(p.require(
            "rate_stride_us",
            rate_stride,
            pos,
            "must be positive",
            10.0,
        ))),
        record_state_stride: state_stride.map(units::us_to_s),
        capture_window: units::us_to_s(p.require(
            "capture_window_us",
            capture_window,
            pos,
            "must be positive",
            10.0,
        )),
        enable_conservative: true,
        enable_friction: true,
        enable_diffusion: true,
    };

    // Shared run identity.
    let seed = p.u64("seed", 0);
    let atoms = p.u64("atoms", default_atoms(kind)) as usize;
    if atoms == 0 {
        p.complain("atoms", "must be at least 1".into());
    }

    // Scenario-specific blocks.
    let speed = p.f64("launch_speed_mps", 0.85);
    let spread = p.f64("launch_speed_spread_mps", 0.05);
    let launch = LaunchSpec {
        speed: p.require("launch_speed_mps", speed, pos, "must be positive", 0.85),
        speed_spread: p.require("launch_speed_spread_mps", spread, non_neg, "must be non-negative", 0.05),
        well: p.f64("launch_well", -30.0) as i64,
    };

    let init_temp_uk = p.f64("init_temp_uk", 0.0);
    let init_temp =
        p.require("init_temp_uk", init_temp_uk, non_neg, "must be non-negative", 0.0) * 1e-6;

    let sweep_list = p.list_f64("sweep_detunings_mhz");
    let include_pump_off = p.bool("sweep_include_pump_off", true);
    if kind == ScenarioKind::LifetimeSweep {
        if sweep_list.is_none() {
            p.complain("sweep_detunings_mhz", "required for lifetime_sweep".into());
        }
        if modulation.is_none() {
            p.complain("modulation_depth", "lifetime_sweep needs trap modulation".into());
        }
    }
    let sweep = SweepSpec {
        detunings: sweep_list
            .unwrap_or_default()
            .into_iter()
            .map(units::mhz_to_angular)
            .collect(),
        include_pump_off,
    };

    let hist_sigma = p.f64("hist_well_sigma_um", 6.0);
    let hist_window = p.f64("hist_window_ms", 1.0);
    let histogram = HistogramSpec {
        atoms: atoms.max(1),
        well_sigma: units::um_to_m(p.require("hist_well_sigma_um", hist_sigma, non_neg, "must be non-negative", 6.0)),
        window: units::ms_to_s(p.require("hist_window_ms", hist_window, pos, "must be positive", 1.0)),
    };

    let map_min = p.f64("map_min_mhz", -10.0);
    let map_max = p.f64("map_max_mhz", 10.0);
    let map_points = p.u64("map_points", 81) as usize;
    if map_points < 2 {
        p.complain("map_points", "need at least 2 grid points".into());
    }
    if !(map_min < map_max) {
        p.complain("map_min_mhz", format!("grid [{map_min}, {map_max}] MHz is empty"));
    }
    let map_mode = match p.raw("map_mode").as_deref() {
        None | Some("pump_on_atom") => DetuningMode::PumpOnAtom,
        Some("cavity_on_atom") => DetuningMode::CavityOnAtom,
        Some(other) => {
            p.complain("map_mode", format!("`{other}` is not pump_on_atom or cavity_on_atom"));
            DetuningMode::PumpOnAtom
        }
    };
    let map = MapSpec {
        min: units::mhz_to_angular(map_min),
        max: units::mhz_to_angular(map_max),
        points: map_points.max(2),
        mode: map_mode,
    };

    p.finish_unknown_keys();

    // Cross-checks on the assembled objects. These duplicate a few of the
    // per-key guards, but catch combinations a single key cannot.
    if p.issues.is_empty() {
        if let Err(Error::InvalidParameter { key, reason }) = params.validate() {
            p.issues.push(ConfigIssue { line: 0, key, message: reason });
        }
        if let Err(Error::InvalidParameter { key, reason }) = geometry.validate() {
            p.issues.push(ConfigIssue { line: 0, key, message: reason });
        }
        if kind != ScenarioKind::Frictionmap {
            if let Err(err) = run.validate(&params, &geometry) {
                p.issues.push(ConfigIssue { line: 0, key: "dt_ns".into(), message: err.to_string() });
            }
        }
    }

    if !p.issues.is_empty() {
        p.issues.sort_by(|a, b| (a.line, a.key.clone()).cmp(&(b.line, b.key.clone())));
        return Err(Error::Config(p.issues));
    }

    Ok(Scenario {
        kind,
        params,
        geometry,
        run,
        atoms,
        seed,
        launch,
        init_temp,
        sweep,
        histogram,
        map,
    })
}

fn default_atoms(kind: ScenarioKind) -> u64 {
    match kind {
        ScenarioKind::Capture => 30,
        ScenarioKind::Storage => 50,
        ScenarioKind::LifetimeSweep => 50,
        ScenarioKind::Histogram => 2,
        ScenarioKind::Frictionmap => 1,
        ScenarioKind::Calibrate => 50,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_with_subcommand_uses_reference_defaults() {
        let s = validate_config("", Some(ScenarioKind::Storage)).expect("valid");
        let d = SystemParams::default();
        assert_eq!(s.params, d);
        assert_eq!(s.seed, 0, "missing seed must default to 0");
        assert_eq!(s.atoms, 50);
        assert!(s.run.pump_on);
    }

    #[test]
    fn lab_units_convert_to_si() {
        let text = "scenario = storage\nkappa_mhz = 4\ntrap_depth_mk = 1.25\ndt_ns = 25\nrabi_mhz = 25\ncavity_detuning_mhz = -5\n";
        let s = validate_config(text, None).expect("valid");
        assert!((s.params.kappa - units::mhz_to_angular(4.0)).abs() < 1e-3);
        assert!((s.params.u_sw - units::mk_to_joule(1.25)).abs() < 1e-40);
        assert!((s.run.dt - 25e-9).abs() < 1e-18);
        assert!(s.params.delta_c < 0.0);
    }

    #[test]
    fn unknown_duplicate_and_malformed_keys_are_all_reported() {
        let text = "scenario = storage\nbogus_key = 1\nkappa_mhz = fast\nkappa_mhz = 5\njust words\n";
        let err = validate_config(text, None).unwrap_err();
        let Error::Config(issues) = err else { panic!("expected config error") };
        let mut lines: Vec<usize> = issues.iter().map(|i| i.line).collect();
        lines.sort_unstable();
        assert_eq!(lines, vec![2, 3, 4, 5], "issues: {issues:?}");
        assert!(issues.iter().any(|i| i.message.contains("unknown key")));
        assert!(issues.iter().any(|i| i.message.contains("duplicate")));
    }

    #[test]
    fn negative_trap_depth_names_the_key() {
        let err = validate_config("scenario = storage\ntrap_depth_mk = -2.5\n", None).unwrap_err();
        let Error::Config(issues) = err else { panic!("expected config error") };
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].key, "trap_depth_mk");
        assert_eq!(issues[0].line, 2);
    }

    #[test]
    fn subcommand_overrides_scenario_key() {
        let s = validate_config("scenario = storage\n", Some(ScenarioKind::Calibrate)).expect("valid");
        assert_eq!(s.kind, ScenarioKind::Calibrate);
        assert!(!s.run.pump_on, "calibrate runs dark");
    }

    #[test]
    fn lifetime_sweep_requires_grid_and_modulation() {
        let err = validate_config("scenario = lifetime_sweep\n", None).unwrap_err();
        let Error::Config(issues) = err else { panic!("expected config error") };
        assert!(issues.iter().any(|i| i.key == "sweep_detunings_mhz"));
        assert!(issues.iter().any(|i| i.key == "modulation_depth"));

        let good = "scenario = lifetime_sweep\nsweep_detunings_mhz = -5, 0, 5, 50\nmodulation_depth = 0.3\nmodulation_freq_khz = 1358\n";
        let s = validate_config(good, None).expect("valid");
        assert_eq!(s.sweep.detunings.len(), 4);
        let m = s.run.modulation.expect("modulation present");
        assert!((m.freq - 1.358e6).abs() < 1e-6);
    }

    #[test]
    fn derived_cavity_waist_matches_resonator_geometry() {
        let s = validate_config("scenario = storage\n", None).expect("valid");
        let expected = crate::params::cavity_waist(
            units::mm_to_m(0.5),
            units::cm_to_m(5.0),
            units::nm_to_m(780.0),
        );
        assert!((s.params.waist_cavity - expected).abs() < 1e-12);
        let s2 = validate_config("scenario = storage\ncavity_waist_um = 20\n", None).expect("valid");
        assert!((s2.params.waist_cavity - 20e-6).abs() < 1e-12);
    }

    #[test]
    fn gravity_direction_is_applied() {
        let s = validate_config("scenario = storage\ngravity = -y\n", None).expect("valid");
        assert!((s.geometry.gravity.y + units::G_EARTH).abs() < 1e-12);
        assert!(validate_config("scenario = storage\ngravity = sideways\n", None).is_err());
    }
}
