//! Local optical fields, potentials, and their gradients.
//!
//! Field shapes:
//! - standing-wave trap (intensity): cos²(k_t·x_sw)·exp(-2ρ_sw²/w_sw²),
//!   scaling both the potential depth U_sw and the transition Stark shift
//!   Δ_S (the trap light shifts ground and excited state differently, so
//!   depth and transition shift are independent amplitudes with one shape);
//! - cavity mode (field amplitude): g0·cos(k_c·x_cav)·exp(-ρ_cav²/w_cav²);
//! - intracavity lattice (intensity): cos²(k_ic·x_cav + φ)·exp(-2ρ_cav²/w_cav²);
//! - pump (field amplitude, retroreflected with orthogonal polarisations so
//!   no standing wave forms): Ω0·exp(-ρ_pump²/w_pump²).
//!
//! The excited-state population uses the low-saturation form
//! P_E = Ω²/(Δ_A² + γ²) with Δ_A = (ω_A - ω_P) + Δ_S(r). Values above
//! `pe_cap` are flagged, never clamped.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::params::{Geometry, SystemParams};

/// Time-dependent drive scalings applied by schedules. `trap` multiplies the
/// standing-wave intensity (depth and Stark shift together); `pump`
/// multiplies the pump field amplitude Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveScales {
    pub trap: f64,
    pub pump: f64,
}

impl Default for DriveScales {
    fn default() -> Self {
        DriveScales { trap: 1.0, pump: 1.0 }
    }
}

/// All local field quantities needed by the force model at one position.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    /// Atom-cavity coupling g(r) (rad/s) and its gradient (rad/s/m).
    pub g: f64,
    pub grad_g: Vector3<f64>,
    /// Trap-induced transition Stark shift Δ_S(r) (rad/s) and gradient.
    pub delta_s: f64,
    pub grad_delta_s: Vector3<f64>,
    /// Local pump Rabi half-frequency Ω(r) (rad/s).
    pub omega: f64,
    /// Local atomic detuning Δ_A = (ω_A - ω_P) + Δ_S(r) (rad/s).
    pub delta_a: f64,
    /// Excited-state population P_E = Ω²/(Δ_A² + γ²).
    pub p_e: f64,
    /// Total conservative potential (J), zero far from all traps.
    pub u_total: f64,
    /// Gradient of the total potential (J/m).
    pub grad_u: Vector3<f64>,
    /// True when P_E exceeded the configured validity cap.
    pub saturated: bool,
}

/// Sample all fields at `r` with unit drive scalings.
pub fn sample_fields(params: &SystemParams, geometry: &Geometry, r: &Vector3<f64>) -> FieldSample {
    sample_fields_scaled(params, geometry, r, DriveScales::default())
}

/// Sample all fields at `r` with schedule-controlled drive scalings.
pub fn sample_fields_scaled(
    params: &SystemParams,
    geometry: &Geometry,
    r: &Vector3<f64>,
    scales: DriveScales,
) -> FieldSample {
    let p = params;

    // Standing-wave trap coordinates: axial position and transverse offset.
    let x_sw = r.dot(&geometry.axis_sw);
    let rho_sw = r - x_sw * geometry.axis_sw;
    let k_t = p.k_trap();
    let env_sw = (-2.0 * rho_sw.norm_squared() / (p.waist_sw * p.waist_sw)).exp();
    let (sin_2kx, cos_2kx) = (2.0 * k_t * x_sw).sin_cos();
    let cos2_kx = 0.5 * (1.0 + cos_2kx);
    // d/dx cos²(kx) = -k sin(2kx); d/dρ exp(-2ρ²/w²) = -4ρ/w² · exp(...).
    let sw_shape = cos2_kx * env_sw;
    let grad_sw_shape = -k_t * sin_2kx * env_sw * geometry.axis_sw
        - sw_shape * (4.0 / (p.waist_sw * p.waist_sw)) * rho_sw;

    let delta_s = p.stark_max * scales.trap * sw_shape;
    let grad_delta_s = p.stark_max * scales.trap * grad_sw_shape;

    // Cavity mode (field amplitude: single-power Gaussian envelope).
    let x_cav = r.dot(&geometry.axis_cavity);
    let rho_cav = r - x_cav * geometry.axis_cavity;
    let k_c = p.k_cavity();
    let env_cav = (-rho_cav.norm_squared() / (p.waist_cavity * p.waist_cavity)).exp();
    let (sin_kc, cos_kc) = (k_c * x_cav).sin_cos();
    let g = p.g0 * cos_kc * env_cav;
    let grad_g = p.g0
        * (-k_c * sin_kc * env_cav * geometry.axis_cavity
            - cos_kc * env_cav * (2.0 / (p.waist_cavity * p.waist_cavity)) * rho_cav);

    // Intracavity lattice (intensity envelope).
    let k_ic = p.k_intracavity();
    let env_ic = (-2.0 * rho_cav.norm_squared() / (p.waist_cavity * p.waist_cavity)).exp();
    let (sin_2ic, cos_2ic) = (2.0 * (k_ic * x_cav + geometry.lattice_phase)).sin_cos();
    let cos2_ic = 0.5 * (1.0 + cos_2ic);
    let ic_shape = cos2_ic * env_ic;
    let grad_ic_shape = -k_ic * sin_2ic * env_ic * geometry.axis_cavity
        - ic_shape * (4.0 / (p.waist_cavity * p.waist_cavity)) * rho_cav;

    // Pump (running-wave pair, amplitude envelope only).
    let x_pump = r.dot(&geometry.axis_pump);
    let rho_pump_sq = r.norm_squared() - x_pump * x_pump;
    let env_pump = (-rho_pump_sq / (p.waist_pump * p.waist_pump)).exp();
    let omega = p.omega_rabi * scales.pump * env_pump;

    let delta_a = -p.delta_pa + delta_s;
    let p_e = omega * omega / (delta_a * delta_a + p.gamma * p.gamma);

    // Attractive optical potentials plus gravity (U_grav = -m a·r).
    let u_total = -p.u_sw * scales.trap * sw_shape - p.u_ic * ic_shape
        - p.mass * geometry.gravity.dot(r);
    let grad_u = -p.u_sw * scales.trap * grad_sw_shape - p.u_ic * grad_ic_shape
        - p.mass * geometry.gravity;

    FieldSample {
        g,
        grad_g,
        delta_s,
        grad_delta_s,
        omega,
        delta_a,
        p_e,
        u_total,
        grad_u,
        saturated: p_e > p.pe_cap,
    }
}

/// Harmonic trap frequencies at the origin, one per principal axis.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TrapFrequencies {
    /// Along the standing-wave trap axis (Hz).
    pub nu_sw: f64,
    /// Along the cavity axis (Hz).
    pub nu_cav: f64,
    /// Along the axis perpendicular to both (Hz).
    pub nu_perp: f64,
    /// Whether the intracavity lattice contributes confinement along the
    /// cavity axis; false when only beam envelopes confine that direction.
    pub cavity_lattice_confined: bool,
}

/// Root-mean-square ground-state position spread of a harmonic mode (m).
pub fn ground_state_width(mass: f64, nu_hz: f64) -> f64 {
    let omega = std::f64::consts::TAU * nu_hz;
    (crate::units::HBAR / (2.0 * mass * omega)).sqrt()
}

/// Compute trap frequencies from the analytic curvature of U_total at the
/// origin.
///
/// Fails unless the origin is a stationary point of the optical potential
/// (gravity tilt excluded: it displaces the minimum by a negligible amount
/// for any trap that can hold the atom at all) with positive curvature along
/// all three principal axes.
pub fn trap_frequencies(params: &SystemParams, geometry: &Geometry) -> Result<TrapFrequencies> {
    let p = params;
    let k_t = p.k_trap();
    let k_ic = p.k_intracavity();
    let phi = geometry.lattice_phase;

    // Optical gradient at the origin: only the lattice phase can break
    // stationarity (all envelopes peak there).
    let grad_axial_ic = p.u_ic * k_ic * (2.0 * phi).sin();
    let curv_scale = 2.0 * p.u_sw * k_t * k_t + 2.0 * p.u_ic * k_ic * k_ic;
    if grad_axial_ic.abs() > 1e-12 * curv_scale * p.lambda_trap {
        return Err(Error::InvalidParameter {
            key: "lattice_phase".into(),
            reason: "origin is not a stationary point of the potential".into(),
        });
    }

    let w_sw2 = p.waist_sw * p.waist_sw;
    let w_cav2 = p.waist_cavity * p.waist_cavity;
    let cos_2phi = (2.0 * phi).cos();
    let cos2_phi = 0.5 * (1.0 + cos_2phi);

    // d²U/dx²: standing-wave lattice plus intracavity transverse envelope.
    let c_sw = 2.0 * p.u_sw * k_t * k_t + 4.0 * p.u_ic * cos2_phi / w_cav2;
    // d²U/dy²: both transverse envelopes.
    let c_perp = 4.0 * p.u_sw / w_sw2 + 4.0 * p.u_ic * cos2_phi / w_cav2;
    // d²U/dz²: intracavity lattice plus standing-wave transverse envelope.
    let ic_curv = 2.0 * p.u_ic * k_ic * k_ic * cos_2phi;
    let c_cav = ic_curv + 4.0 * p.u_sw / w_sw2;

    for (axis, c) in [("sw", c_sw), ("cavity", c_cav), ("perp", c_perp)] {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter {
                key: format!("curvature_{axis}"),
                reason: "origin is not a potential minimum along this axis".into(),
            });
        }
    }

    let nu = |c: f64| (c / p.mass).sqrt() / std::f64::consts::TAU;
    Ok(TrapFrequencies {
        nu_sw: nu(c_sw),
        nu_cav: nu(c_cav),
        nu_perp: nu(c_perp),
        cavity_lattice_confined: ic_curv > 0.0,
    })
}
