//! System parameters and spatial geometry.
//!
//! `SystemParams` collects every physical constant of the atom-cavity system
//! in SI units (angular frequencies, metres, joules). `Geometry` fixes the
//! beam axes and the bounds of the simulated region. Both ship with defaults
//! reproducing the reference experimental configuration: a Rb atom in a
//! 0.5 mm near-planar cavity, a 1030 nm standing-wave dipole trap crossing
//! the cavity mode at right angles, a retroreflected 780 nm pump under 45°
//! to the trap axis and perpendicular to the cavity axis, and a weak 785 nm
//! intracavity lattice.

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::units;

/// Physical parameters of the atom, cavity, traps, drive, and detection.
///
/// Angular frequencies are in rad/s, lengths in metres, energies in joules.
/// Detunings are stored relative to the pump: `delta_c = omega_C - omega_P`
/// and `delta_pa = omega_P - omega_A`, so the local atomic detuning is
/// `Delta_A = -delta_pa + Delta_S(r)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemParams {
    /// Peak atom-cavity coupling g0 (rad/s).
    pub g0: f64,
    /// Cavity field decay rate kappa (rad/s).
    pub kappa: f64,
    /// Atomic dipole decay rate gamma (rad/s); the excited-state population
    /// decays at 2*gamma.
    pub gamma: f64,
    /// Atomic mass (kg).
    pub mass: f64,
    /// Peak pump Rabi half-frequency Omega (rad/s). Lab convention quotes
    /// the full Rabi frequency 2*Omega.
    pub omega_rabi: f64,
    /// Cavity-pump detuning omega_C - omega_P (rad/s).
    pub delta_c: f64,
    /// Pump-atom detuning omega_P - omega_A (rad/s), relative to the
    /// unshifted atomic line. 0 means the pump sits on the bare atom.
    pub delta_pa: f64,
    /// Standing-wave trap depth (J, positive).
    pub u_sw: f64,
    /// Peak AC Stark shift of the atomic transition induced by the
    /// standing-wave trap (rad/s, positive shifts the transition up).
    pub stark_max: f64,
    /// Intracavity-lattice trap depth (J, positive).
    pub u_ic: f64,
    /// Standing-wave trap wavelength (m).
    pub lambda_trap: f64,
    /// Cavity resonance wavelength (m); also sets the emission recoil.
    pub lambda_cavity: f64,
    /// Intracavity lattice wavelength (m).
    pub lambda_intracavity: f64,
    /// Pump wavelength (m).
    pub lambda_pump: f64,
    /// Standing-wave trap waist (m).
    pub waist_sw: f64,
    /// Pump beam waist (m).
    pub waist_pump: f64,
    /// Cavity mode waist (m). Derived from the resonator geometry by
    /// `SystemParams::default()`; may be overridden.
    pub waist_cavity: f64,
    /// Telegraph blinking: fraction of time the atom scatters (dark periods
    /// model ground-state shelving; the pump keeps running).
    pub duty_bright: f64,
    /// Mean dwell time in the bright state (s).
    pub bright_dwell: f64,
    /// Photon detection efficiency (counts per emitted photon).
    pub eta_det: f64,
    /// Detector background rate (counts/s).
    pub background_rate: f64,
    /// Excited-state population above which the low-saturation model is
    /// flagged as out of its validity range (the value is still used as-is).
    pub pe_cap: f64,
    /// Rate of trap loss from background-gas collisions (1/s); 0 disables
    /// the channel. Calibration against the dark-trap lifetime uses 1/2.7 s.
    pub background_loss_rate: f64,
}

/// Symmetric two-mirror resonator: waist from length and mirror curvature.
pub fn cavity_waist(length: f64, mirror_radius: f64, wavelength: f64) -> f64 {
    let z_r = 0.5 * (length * (2.0 * mirror_radius - length)).sqrt();
    (wavelength * z_r / std::f64::consts::PI).sqrt()
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            g0: units::mhz_to_angular(5.0),
            kappa: units::mhz_to_angular(5.0),
            gamma: units::mhz_to_angular(3.0),
            mass: 84.911_789_738 * units::AMU,
            // Full Rabi frequency 2*Omega = 2pi x 30 MHz.
            omega_rabi: units::mhz_to_angular(15.0),
            delta_c: 0.0,
            delta_pa: 0.0,
            u_sw: units::mk_to_joule(2.5),
            stark_max: units::mhz_to_angular(100.0),
            u_ic: units::uk_to_joule(30.0),
            lambda_trap: units::nm_to_m(1030.0),
            lambda_cavity: units::nm_to_m(780.0),
            lambda_intracavity: units::nm_to_m(785.0),
            lambda_pump: units::nm_to_m(780.0),
            waist_sw: units::um_to_m(16.0),
            waist_pump: units::um_to_m(35.0),
            waist_cavity: cavity_waist(
                units::mm_to_m(0.5),
                units::cm_to_m(5.0),
                units::nm_to_m(780.0),
            ),
            duty_bright: 0.2,
            bright_dwell: units::us_to_s(10.0),
            eta_det: 0.05,
            background_rate: 1000.0,
            pe_cap: 0.5,
            background_loss_rate: 0.0,
        }
    }
}

impl SystemParams {
    /// Trap-laser wavenumber 2*pi/lambda_trap (1/m).
    pub fn k_trap(&self) -> f64 {
        std::f64::consts::TAU / self.lambda_trap
    }

    /// Cavity-mode wavenumber (1/m).
    pub fn k_cavity(&self) -> f64 {
        std::f64::consts::TAU / self.lambda_cavity
    }

    /// Intracavity-lattice wavenumber (1/m).
    pub fn k_intracavity(&self) -> f64 {
        std::f64::consts::TAU / self.lambda_intracavity
    }

    /// Pump wavenumber (1/m).
    pub fn k_pump(&self) -> f64 {
        std::f64::consts::TAU / self.lambda_pump
    }

    /// Atom-pump detuning of the unshifted line, omega_A - omega_P (rad/s).
    pub fn atom_pump_detuning(&self) -> f64 {
        -self.delta_pa
    }

    /// Mean dwell time in the dark state (s), fixed by the duty cycle.
    pub fn dark_dwell(&self) -> f64 {
        if self.duty_bright >= 1.0 {
            0.0
        } else {
            self.bright_dwell * (1.0 - self.duty_bright) / self.duty_bright
        }
    }

    /// Validate physical sanity; returns the first offending key.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("g0", self.g0),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("mass", self.mass),
            ("lambda_trap", self.lambda_trap),
            ("lambda_cavity", self.lambda_cavity),
            ("lambda_intracavity", self.lambda_intracavity),
            ("lambda_pump", self.lambda_pump),
            ("waist_sw", self.waist_sw),
            ("waist_pump", self.waist_pump),
            ("waist_cavity", self.waist_cavity),
            ("bright_dwell", self.bright_dwell),
        ];
        for (key, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    key: key.into(),
                    reason: format!("must be positive and finite, got {v}"),
                });
            }
        }
        let non_negative = [
            ("omega_rabi", self.omega_rabi),
            ("u_sw", self.u_sw),
            ("u_ic", self.u_ic),
            ("stark_max", self.stark_max),
            ("eta_det", self.eta_det),
            ("background_rate", self.background_rate),
            ("background_loss_rate", self.background_loss_rate),
        ];
        for (key, v) in non_negative {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    key: key.into(),
                    reason: format!("must be non-negative and finite, got {v}"),
                });
            }
        }
        for (key, v) in [("delta_c", self.delta_c), ("delta_pa", self.delta_pa)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    key: key.into(),
                    reason: "must be finite".into(),
                });
            }
        }
        if !(self.duty_bright > 0.0 && self.duty_bright <= 1.0) {
            return Err(Error::InvalidParameter {
                key: "duty_bright".into(),
                reason: format!("must be in (0, 1], got {}", self.duty_bright),
            });
        }
        if !(self.eta_det <= 1.0) {
            return Err(Error::InvalidParameter {
                key: "eta_det".into(),
                reason: format!("must be <= 1, got {}", self.eta_det),
            });
        }
        if !(self.pe_cap > 0.0 && self.pe_cap <= 1.0) {
            return Err(Error::InvalidParameter {
                key: "pe_cap".into(),
                reason: format!("must be in (0, 1], got {}", self.pe_cap),
            });
        }
        Ok(())
    }
}

/// Beam axes and simulation-region bounds.
///
/// The standing-wave trap runs along x, the cavity along z, and the
/// retroreflected pump along (x + y)/sqrt(2): perpendicular to the cavity
/// and under 45 degrees to the trap axis. Gravity is off by default and can
/// be pointed along any axis (the pump plane's orientation relative to
/// gravity is not pinned down by the physical setup).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geometry {
    /// Standing-wave trap axis (unit vector).
    pub axis_sw: Vector3<f64>,
    /// Cavity axis (unit vector).
    pub axis_cavity: Vector3<f64>,
    /// Pump axis (unit vector).
    pub axis_pump: Vector3<f64>,
    /// Gravitational acceleration vector (m/s²); zero disables gravity.
    pub gravity: Vector3<f64>,
    /// Phase offset of the intracavity lattice relative to the cavity-mode
    /// antinode at the origin (rad). 0 aligns lattice wells with antinodes.
    pub lattice_phase: f64,
    /// Half-width of the simulated region along the trap axis (m).
    pub region_halfwidth: f64,
    /// Loss tube radius as a multiple of the standing-wave waist.
    pub tube_radius_waists: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            axis_sw: Vector3::x(),
            axis_cavity: Vector3::z(),
            axis_pump: Vector3::new(1.0, 1.0, 0.0) / std::f64::consts::SQRT_2,
            gravity: Vector3::zeros(),
            lattice_phase: 0.0,
            region_halfwidth: units::um_to_m(50.0),
            tube_radius_waists: 3.0,
        }
    }
}

impl Geometry {
    /// Enable gravity of magnitude `G_EARTH` along `direction` (normalised).
    pub fn with_gravity(mut self, direction: Vector3<f64>) -> Self {
        self.gravity = direction.normalize() * units::G_EARTH;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (key, a) in [
            ("axis_sw", &self.axis_sw),
            ("axis_cavity", &self.axis_cavity),
            ("axis_pump", &self.axis_pump),
        ] {
            if (a.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter {
                    key: key.into(),
                    reason: format!("must be a unit vector, |v| = {}", a.norm()),
                });
            }
        }
        if self.axis_pump.dot(&self.axis_cavity).abs() > 1e-9 {
            return Err(Error::InvalidParameter {
                key: "axis_pump".into(),
                reason: "pump must be perpendicular to the cavity axis".into(),
            });
        }
        if !(self.region_halfwidth > 0.0) {
            return Err(Error::InvalidParameter {
                key: "region_halfwidth".into(),
                reason: "must be positive".into(),
            });
        }
        if !(self.tube_radius_waists > 0.0) {
            return Err(Error::InvalidParameter {
                key: "tube_radius_waists".into(),
                reason: "must be positive".into(),
            });
        }
        Ok(())
    }
}
