//! Trajectory integration.
//!
//! The atom's centre of mass follows Langevin dynamics: velocity Verlet for
//! the conservative trap force, an exact exponential update per friction
//! channel (each channel damps one velocity component, so its sub-step
//! integrates in closed form and stays faithful for anti-damping too), and
//! Gaussian momentum kicks with variance 2 D dt per diffusion channel.
//!
//! The probe light blinks as a random telegraph: exponential bright and
//! dark dwells with the configured duty cycle. Dark intervals carry no
//! light force, no recoil noise, and no scattering; the trap stays on.

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};

use crate::error::{Error, Result};
use crate::fields::{sample_fields_scaled, trap_frequencies, DriveScales};
use crate::forces::{channel_rates, diffusion_channels, scattering_rate};
use crate::params::{Geometry, SystemParams};
use crate::rng::{stream_rng, Purpose};

/// Multiplicative trap-depth modulation: depth and Stark shift are scaled
/// by 1 + depth·sin φ(t), with φ advancing at `freq` plus phase diffusion
/// that gives the drive a Lorentzian linewidth (FWHM, Hz).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TrapModulation {
    pub depth: f64,
    pub freq: f64,
    pub linewidth: f64,
    /// Initial phase; None draws it uniformly per trajectory.
    pub phase0: Option<f64>,
}

/// Everything the integrator needs besides physics parameters and the
/// initial state.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunConfig {
    /// Time step (s).
    pub dt: f64,
    /// Maximum simulated time (s).
    pub duration: f64,
    /// Master switch for the probe/pump light.
    pub pump_on: bool,
    /// Blink the probe as a random telegraph with the configured duty.
    pub telegraph: bool,
    pub modulation: Option<TrapModulation>,
    /// Record the scattering-rate trace on this stride (s).
    pub record_rate_stride: Option<f64>,
    /// Record phase-space samples on this stride (s).
    pub record_state_stride: Option<f64>,
    /// Continuous bound time required to count the atom as captured (s).
    pub capture_window: f64,
    pub enable_conservative: bool,
    pub enable_friction: bool,
    pub enable_diffusion: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dt: 29e-9,
            duration: 1e-3,
            pump_on: true,
            telegraph: false,
            modulation: None,
            record_rate_stride: None,
            record_state_stride: None,
            capture_window: 10e-6,
            enable_conservative: true,
            enable_friction: true,
            enable_diffusion: true,
        }
    }
}

impl RunConfig {
    /// Largest allowed step: 1/20 of the fastest trap period, with the
    /// modulation swing included.
    pub fn max_dt(&self, params: &SystemParams, geometry: &Geometry) -> f64 {
        let nu_max = match trap_frequencies(params, geometry) {
            Ok(f) => f.nu_sw.max(f.nu_cav).max(f.nu_perp),
            // Deconfined or skewed setups: bound by the curvature scales of
            // both lattices regardless of sign.
            Err(_) => {
                let k_t = params.k_trap();
                let k_ic = params.k_intracavity();
                let curv =
                    2.0 * params.u_sw * k_t * k_t + 2.0 * params.u_ic * k_ic * k_ic;
                (curv.abs() / params.mass).sqrt() / std::f64::consts::TAU
            }
        };
        let swing = 1.0 + self.modulation.map_or(0.0, |m| m.depth.abs());
        1.0 / (20.0 * nu_max * swing.sqrt()).max(1.0)
    }

    pub fn validate(&self, params: &SystemParams, geometry: &Geometry) -> Result<()> {
        let bad = |key: &str, reason: &str| {
            Err(Error::InvalidParameter { key: key.into(), reason: reason.into() })
        };
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt", "must be positive and finite");
        }
        let max = self.max_dt(params, geometry);
        if self.dt > max {
            return Err(Error::TimeStepTooLarge { dt: self.dt, max });
        }
        if !(self.duration >= 0.0 && self.duration.is_finite()) {
            return bad("duration", "must be non-negative and finite");
        }
        if !(self.capture_window > 0.0) {
            return bad("capture_window", "must be positive");
        }
        for (key, stride) in [
            ("record_rate_stride", self.record_rate_stride),
            ("record_state_stride", self.record_state_stride),
        ] {
            if let Some(s) = stride {
                if !(s > 0.0 && s >= self.dt) {
                    return bad(key, "must be positive and at least dt");
                }
            }
        }
        if let Some(m) = self.modulation {
            if !(m.depth >= 0.0 && m.depth < 1.0) {
                return bad("modulation.depth", "must lie in [0, 1)");
            }
            if !(m.freq > 0.0) {
                return bad("modulation.freq", "must be positive");
            }
            if !(m.linewidth >= 0.0) {
                return bad("modulation.linewidth", "must be non-negative");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AtomState {
    pub t: f64,
    pub r: Vector3<f64>,
    pub v: Vector3<f64>,
    /// Telegraph probe state.
    pub bright: bool,
}

impl AtomState {
    pub fn at_rest(r: Vector3<f64>) -> Self {
        AtomState { t: 0.0, r, v: Vector3::zeros(), bright: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LossCause {
    /// Positive mechanical energy outside the trapping tube, or out of the
    /// simulated region.
    Escape,
    /// Background-gas collision.
    Background,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StateSample {
    pub t: f64,
    pub r: [f64; 3],
    pub v: [f64; 3],
    /// Mechanical energy (J) at the instantaneous trap depth.
    pub e_mech: f64,
    pub p_e: f64,
}

/// Piecewise-constant scattering-rate trace: `rates[i]` is the mean rate
/// (photons/s, before detection efficiency) over
/// [i·stride, (i+1)·stride).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RateTrace {
    pub stride: f64,
    pub rates: Vec<f32>,
}

impl RateTrace {
    pub fn duration(&self) -> f64 {
        self.stride * self.rates.len() as f64
    }

    /// Expected number of scattered photons over the whole trace.
    pub fn expected_photons(&self) -> f64 {
        self.rates.iter().map(|&r| r as f64).sum::<f64>() * self.stride
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TrajectoryOutcome {
    /// Time the trajectory ended (loss or configured duration).
    pub t_end: f64,
    pub lost_at: Option<f64>,
    pub loss_cause: Option<LossCause>,
    /// Start of the first bound stretch that lasted a full capture window.
    pub captured_at: Option<f64>,
    pub final_state: AtomState,
    /// Largest excited-state population seen on a bright step.
    pub max_p_e: f64,
    /// Time integral of the scattering rate (expected scattered photons).
    pub integrated_rate: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TrajectoryRecord {
    pub outcome: TrajectoryOutcome,
    pub samples: Vec<StateSample>,
    pub rate_trace: Option<RateTrace>,
}

struct RateRecorder {
    stride: f64,
    accum: f64,
    edge: f64,
    rates: Vec<f32>,
}

impl RateRecorder {
    fn new(stride: f64, duration: f64) -> Self {
        let n = (duration / stride).ceil() as usize;
        RateRecorder { stride, accum: 0.0, edge: stride, rates: Vec::with_capacity(n) }
    }

    /// Accumulate rate·dt; close buckets as the clock passes their edges.
    fn push(&mut self, t: f64, rate_dt: f64) {
        self.accum += rate_dt;
        while t >= self.edge {
            self.rates.push((self.accum / self.stride) as f32);
            self.accum = 0.0;
            self.edge += self.stride;
        }
    }

    fn finish(mut self, t_end: f64) -> RateTrace {
        if self.accum > 0.0 || t_end > self.edge - self.stride {
            self.rates.push((self.accum / self.stride) as f32);
        }
        RateTrace { stride: self.stride, rates: self.rates }
    }

    /// Pad with empty buckets out to `t_end` (dark or post-loss time).
    fn pad_to(&mut self, t_end: f64) {
        while self.edge <= t_end {
            self.rates.push((self.accum / self.stride) as f32);
            self.accum = 0.0;
            self.edge += self.stride;
        }
    }
}

/// Integrate one trajectory. All stochastic draws come from this
/// trajectory's own streams under `master_seed`, so ensembles are
/// reproducible independent of scheduling.
pub fn run_trajectory(
    params: &SystemParams,
    geometry: &Geometry,
    cfg: &RunConfig,
    init: AtomState,
    master_seed: u64,
    index: u64,
) -> Result<TrajectoryRecord> {
    cfg.validate(params, geometry)?;
    let mut rng = stream_rng(master_seed, Purpose::Dynamics, index);

    let p = params;
    let geo = geometry;
    let dt = cfg.dt;
    let half_dt_over_m = 0.5 * dt / p.mass;

    // Fixed draw order: background deadline, modulation phase, first dwell.
    let background_deadline = if p.background_loss_rate > 0.0 {
        init.t + Exp::new(p.background_loss_rate).unwrap().sample(&mut rng)
    } else {
        f64::INFINITY
    };
    let mut mod_phase = match cfg.modulation {
        Some(m) => m.phase0.unwrap_or_else(|| rng.gen::<f64>() * std::f64::consts::TAU),
        None => 0.0,
    };
    let mut bright = init.bright;
    let mut next_flip = if cfg.telegraph {
        init.t + draw_dwell(&mut rng, p, bright)
    } else {
        f64::INFINITY
    };

    let phase_sigma = cfg.modulation.map_or(0.0, |m| {
        (2.0 * std::f64::consts::PI * m.linewidth * dt).sqrt()
    });
    let trap_scale = |phase: f64| match cfg.modulation {
        Some(m) => 1.0 + m.depth * phase.sin(),
        None => 1.0,
    };

    let mut t = init.t;
    let mut r = init.r;
    let mut v = init.v;

    let mut samples = Vec::new();
    let mut rate_rec = cfg.record_rate_stride.map(|s| RateRecorder::new(s, cfg.duration));
    let state_stride_steps = cfg
        .record_state_stride
        .map(|s| ((s / dt).round() as u64).max(1));

    let mut lost_at = None;
    let mut loss_cause = None;
    let mut captured_at = None;
    let mut bound_since: Option<f64> = None;
    let mut max_p_e = 0.0f64;
    let mut integrated_rate = 0.0f64;

    let scales_at = |bright: bool, phase: f64| DriveScales {
        trap: trap_scale(phase),
        pump: if cfg.pump_on && bright { 1.0 } else { 0.0 },
    };

    let mut fields = sample_fields_scaled(p, geo, &r, scales_at(bright, mod_phase));

    let record_state =
        |samples: &mut Vec<StateSample>, t: f64, r: &Vector3<f64>, v: &Vector3<f64>, fields: &crate::fields::FieldSample, m: f64| {
            samples.push(StateSample {
                t,
                r: [r.x, r.y, r.z],
                v: [v.x, v.y, v.z],
                e_mech: 0.5 * m * v.norm_squared() + fields.u_total,
                p_e: fields.p_e,
            });
        };
    if state_stride_steps.is_some() {
        record_state(&mut samples, t, &r, &v, &fields, p.mass);
    }

    let t_final = init.t + cfg.duration;
    let mut step: u64 = 0;
    while t < t_final {
        // Velocity Verlet with the cached field sample at time t.
        if cfg.enable_conservative {
            v -= fields.grad_u * half_dt_over_m;
        }
        r += v * dt;
        if let Some(m) = cfg.modulation {
            mod_phase += std::f64::consts::TAU * m.freq * dt;
            if phase_sigma > 0.0 {
                mod_phase += phase_sigma * rng.sample::<f64, _>(StandardNormal);
            }
        }
        let pump_lit = cfg.pump_on && bright;
        fields = sample_fields_scaled(p, geo, &r, scales_at(bright, mod_phase));
        if cfg.enable_conservative {
            v -= fields.grad_u * half_dt_over_m;
        }

        if pump_lit {
            if cfg.enable_friction {
                let rates = channel_rates(p, &fields);
                let e_p = geo.axis_pump;
                v += (-rates.beta_pump * dt).exp_m1() * e_p.dot(&v) * e_p;
                if let Some(e) = rates.dir_grad_g {
                    v += (-rates.beta_cav * dt).exp_m1() * e.dot(&v) * e;
                }
                if let Some(e) = rates.dir_grad_ds {
                    let beta = rates.beta_sw_cav + rates.beta_sw_sis;
                    v += (-beta * dt).exp_m1() * e.dot(&v) * e;
                }
            }
            if cfg.enable_diffusion {
                let d = diffusion_channels(p, &fields);
                let kick = |d: f64, rng: &mut rand_chacha::ChaCha12Rng| {
                    (2.0 * d * dt).sqrt() / p.mass * rng.sample::<f64, _>(StandardNormal)
                };
                v += kick(d.d_pump, &mut rng) * geo.axis_pump;
                v += kick(d.d_cav, &mut rng) * geo.axis_cavity;
                for axis in [Vector3::x(), Vector3::y(), Vector3::z()] {
                    v += kick(d.d_spont / 3.0, &mut rng) * axis;
                }
            }
            max_p_e = max_p_e.max(fields.p_e);
        }

        t += dt;
        step += 1;

        let rate = if pump_lit { scattering_rate(p, &fields) } else { 0.0 };
        integrated_rate += rate * dt;
        if let Some(rec) = rate_rec.as_mut() {
            rec.push(t - init.t, rate * dt);
        }
        if let Some(n) = state_stride_steps {
            if step % n == 0 {
                record_state(&mut samples, t, &r, &v, &fields, p.mass);
            }
        }

        if step % 4096 == 0 && !(r.norm_squared().is_finite() && v.norm_squared().is_finite()) {
            return Err(Error::NonFinite { t, what: "atom state".into() });
        }

        // Telegraph flips quantize to step boundaries; dwells are long
        // compared to dt.
        if cfg.telegraph && t >= next_flip {
            bright = !bright;
            next_flip = t + draw_dwell(&mut rng, p, bright);
        }

        // Loss and capture bookkeeping.
        let e_mech = 0.5 * p.mass * v.norm_squared() + fields.u_total;
        let x_sw = r.dot(&geo.axis_sw);
        let rho_sq = r.norm_squared() - x_sw * x_sw;
        let tube = geo.tube_radius_waists * p.waist_sw;
        let escaped =
            x_sw.abs() > geo.region_halfwidth || (e_mech > 0.0 && rho_sq > tube * tube);
        if escaped {
            lost_at = Some(t);
            loss_cause = Some(LossCause::Escape);
            break;
        }
        if t >= background_deadline {
            lost_at = Some(background_deadline);
            loss_cause = Some(LossCause::Background);
            break;
        }
        if e_mech < 0.0 {
            let since = *bound_since.get_or_insert(t);
            if captured_at.is_none() && t - since >= cfg.capture_window {
                captured_at = Some(since);
            }
        } else {
            bound_since = None;
        }

        // A bound atom in a static conservative trap follows a closed
        // orbit; with the probe dark the only stochastic channel left is
        // the background clock, so jump straight to the next event. The
        // orbit phase of the final state is undefined after the jump.
        let static_dark = !cfg.pump_on
            && cfg.modulation.is_none()
            && cfg.enable_conservative
            && state_stride_steps.is_none();
        if static_dark && e_mech < -1e-3 * p.u_sw {
            if background_deadline < t_final {
                lost_at = Some(background_deadline);
                loss_cause = Some(LossCause::Background);
                t = background_deadline;
            } else {
                t = t_final;
            }
            if captured_at.is_none() {
                let since = bound_since.unwrap_or(t);
                if t - since >= cfg.capture_window {
                    captured_at = Some(since);
                }
            }
            if let Some(rec) = rate_rec.as_mut() {
                rec.pad_to(t - init.t);
            }
            break;
        }
    }

    let t_end = lost_at.unwrap_or(t);
    Ok(TrajectoryRecord {
        outcome: TrajectoryOutcome {
            t_end,
            lost_at,
            loss_cause,
            captured_at,
            final_state: AtomState { t, r, v, bright },
            max_p_e,
            integrated_rate,
        },
        samples,
        rate_trace: rate_rec.map(|rec| rec.finish(t_end - init.t)),
    })
}

fn draw_dwell(rng: &mut rand_chacha::ChaCha12Rng, p: &SystemParams, bright: bool) -> f64 {
    let mean = if bright { p.bright_dwell } else { p.dark_dwell() };
    Exp::new(1.0 / mean).unwrap().sample(rng)
}

/// Equilibrium kinetic temperature of a 1-D harmonic oscillator stepped
/// with the same scheme as the full integrator, but with constant friction
/// `beta` (1/s) and momentum diffusion `diffusion` (kg^2 m^2/s^3) instead of
/// field-dependent rates. Velocities are averaged over the second half of
/// the run, after the oscillator has forgotten its start at rest. Isolates
/// the stepping scheme's fluctuation-dissipation balance
/// k_B T = D / (beta m) from the physics of the rates.
pub fn harmonic_equilibrium_temperature(
    mass: f64,
    omega: f64,
    beta: f64,
    diffusion: f64,
    duration: f64,
    dt: f64,
    seed: u64,
) -> f64 {
    let mut rng = stream_rng(seed, Purpose::Dynamics, 0);
    let spring = mass * omega * omega;
    let half_dt_over_m = 0.5 * dt / mass;
    let decay = (-beta * dt).exp_m1();
    let kick = (2.0 * diffusion * dt).sqrt() / mass;

    let (mut x, mut v) = (0.0f64, 0.0f64);
    let mut t = 0.0;
    let mut sum_v_sq = 0.0;
    let mut n_avg: u64 = 0;
    while t < duration {
        v -= spring * x * half_dt_over_m;
        x += v * dt;
        v -= spring * x * half_dt_over_m;
        v += decay * v;
        v += kick * rng.sample::<f64, _>(StandardNormal);
        t += dt;
        if t > 0.5 * duration {
            sum_v_sq += v * v;
            n_avg += 1;
        }
    }
    mass * sum_v_sq / (n_avg as f64) / crate::units::KB
}

/// Integrate an ensemble, one stream per trajectory index. Results are
/// ordered by index and byte-identical for a given seed regardless of
/// `workers`.
pub fn run_ensemble(
    params: &SystemParams,
    geometry: &Geometry,
    cfg: &RunConfig,
    inits: &[AtomState],
    master_seed: u64,
    workers: Option<usize>,
) -> Result<Vec<TrajectoryRecord>> {
    use rayon::prelude::*;

    let run = || {
        inits
            .par_iter()
            .enumerate()
            .map(|(i, init)| run_trajectory(params, geometry, cfg, *init, master_seed, i as u64))
            .collect::<Result<Vec<_>>>()
    };
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Scenario(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units;

    #[test]
    fn oversized_time_step_is_rejected() {
        let p = SystemParams::default();
        let geo = Geometry::default();
        let cfg = RunConfig { dt: 1e-6, ..RunConfig::default() };
        match cfg.validate(&p, &geo) {
            Err(Error::TimeStepTooLarge { dt, max }) => {
                assert_eq!(dt, 1e-6);
                assert!(max < 1e-6);
            }
            other => panic!("expected TimeStepTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn telegraph_duty_cycle_matches_configuration() {
        let mut p = SystemParams::default();
        p.background_loss_rate = 0.0;
        let geo = Geometry::default();
        let cfg = RunConfig {
            duration: 0.05,
            telegraph: true,
            enable_diffusion: false,
            enable_friction: false,
            record_rate_stride: Some(1e-6),
            ..RunConfig::default()
        };
        let rec = run_trajectory(&p, &geo, &cfg, AtomState::at_rest(Vector3::zeros()), 7, 0)
            .expect("runs");
        let trace = rec.rate_trace.unwrap();
        let lit = trace.rates.iter().filter(|&&r| r > 0.0).count() as f64;
        let duty = lit / trace.rates.len() as f64;
        assert!(
            (duty - p.duty_bright).abs() < 0.05,
            "duty = {duty:.3}, configured {}",
            p.duty_bright
        );
    }

    #[test]
    fn dark_static_trap_fast_forwards_to_background_loss() {
        let mut p = SystemParams::default();
        p.background_loss_rate = 1000.0;
        let geo = Geometry::default();
        let cfg = RunConfig { duration: 1.0, pump_on: false, ..RunConfig::default() };
        let rec = run_trajectory(&p, &geo, &cfg, AtomState::at_rest(Vector3::zeros()), 11, 3)
            .expect("runs");
        assert_eq!(rec.outcome.loss_cause, Some(LossCause::Background));
        let t = rec.outcome.lost_at.unwrap();
        assert!(t > 0.0 && t < 1.0, "loss at {t}");
        assert!(rec.outcome.captured_at.is_some(), "resting atom is captured");
    }

    #[test]
    fn fast_atom_escapes_the_region() {
        let mut p = SystemParams::default();
        p.background_loss_rate = 0.0;
        let geo = Geometry::default();
        let cfg = RunConfig {
            duration: 0.01,
            pump_on: false,
            enable_friction: false,
            enable_diffusion: false,
            ..RunConfig::default()
        };
        let init = AtomState {
            t: 0.0,
            r: Vector3::zeros(),
            v: Vector3::new(2.0, 0.0, 0.0),
            bright: true,
        };
        let rec = run_trajectory(&p, &geo, &cfg, init, 1, 0).expect("runs");
        assert_eq!(rec.outcome.loss_cause, Some(LossCause::Escape));
        // 50 um at 2 m/s: escape within ~25 us.
        let t = rec.outcome.lost_at.unwrap();
        assert!(t < 50e-6, "escape at {t}");
        assert!(rec.outcome.captured_at.is_none());
    }

    #[test]
    fn ensembles_are_reproducible_across_worker_counts() {
        let p = SystemParams::default();
        let geo = Geometry::default();
        let cfg = RunConfig {
            duration: 200e-6,
            telegraph: true,
            record_rate_stride: Some(1e-6),
            ..RunConfig::default()
        };
        let inits: Vec<AtomState> = (0..6)
            .map(|i| AtomState::at_rest(Vector3::new(i as f64 * 1e-8, 0.0, 1e-8)))
            .collect();
        let a = run_ensemble(&p, &geo, &cfg, &inits, 99, Some(1)).expect("serial");
        let b = run_ensemble(&p, &geo, &cfg, &inits, 99, Some(3)).expect("parallel");
        let bytes = |recs: &[TrajectoryRecord]| serde_json::to_vec(recs).unwrap();
        assert_eq!(bytes(&a), bytes(&b), "results must not depend on worker count");
    }

    #[test]
    fn capture_window_marks_bound_atoms_once() {
        let mut p = SystemParams::default();
        p.background_loss_rate = 0.0;
        let geo = Geometry::default();
        let cfg = RunConfig {
            duration: 100e-6,
            pump_on: false,
            record_state_stride: Some(1e-6),
            ..RunConfig::default()
        };
        // Deeply bound atom, small oscillation.
        let init = AtomState::at_rest(Vector3::new(10e-9, 0.0, 0.0));
        let rec = run_trajectory(&p, &geo, &cfg, init, 5, 0).expect("runs");
        let captured = rec.outcome.captured_at.expect("bound atom captured");
        assert!(captured <= units::us_to_s(2.0), "captured_at = {captured}");
        assert!(rec.outcome.lost_at.is_none());
    }

    #[test]
    fn constant_rate_oscillator_thermalizes_to_d_over_beta_m() {
        let mass = 1.41e-25;
        let beta = 5.0e4;
        let target = 100e-6 * units::KB;
        let diffusion = beta * mass * target;
        let temp = harmonic_equilibrium_temperature(
            mass,
            std::f64::consts::TAU * 5.0e5,
            beta,
            diffusion,
            40e-3,
            20e-9,
            31,
        );
        assert!(
            (temp - 100e-6).abs() < 0.2 * 100e-6,
            "equilibrium at {temp} K, expected 100 uK"
        );
    }
}
