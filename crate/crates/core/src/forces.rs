//! Velocity-linear light forces, photon scattering, and momentum diffusion.
//!
//! In the low-saturation, adiabatic regime the light exerts four friction
//! forces on the moving atom, all first order in velocity:
//!
//! - `pump`: Doppler-type friction from the two counter-propagating pump
//!   beams. Each beam contributes -4ħ k_P (k_P·v) L g² P_E with the cavity
//!   lag factor L = κ Δ_C/(Δ_C² + κ²)²; the retroreflected pair doubles it.
//! - `cav`: the same cavity-lag mechanism acting through the spatial
//!   variation of the coupling, -4ħ ∇g (∇g·v) L P_E.
//! - `sw_cav`: cavity-lag friction from the motion-induced modulation of the
//!   trap Stark shift, -4ħ ∇Δ_S (∇Δ_S·v) L g² P_E/(Δ_A² + γ²).
//! - `sw_sis`: Sisyphus friction from the delayed internal-state response to
//!   the same modulation, -4ħ ∇Δ_S (∇Δ_S·v) Δ_A P_E²/(2γ(Δ_A² + γ²)).
//!
//! Sign conventions: positive β means damping. The three cavity-lag
//! channels share the sign of Δ_C (red cavity detuning Δ_C < 0 anti-damps);
//! the Sisyphus channel shares the sign of Δ_A and survives at Δ_C = 0.
//!
//! Photons are scattered into the cavity at R_scat = 2κ g²/(Δ_C² + κ²) P_E,
//! and momentum diffuses through pump absorption (along the pump axis),
//! cavity emission (along the cavity axis), and spontaneous emission
//! (isotropic).

use nalgebra::Vector3;

use crate::fields::{sample_fields_scaled, DriveScales, FieldSample};
use crate::params::{Geometry, SystemParams};
use crate::units::HBAR;

/// Friction rates (1/s) per channel with the axes they act along.
///
/// Each channel damps the velocity component along its axis:
/// dv/dt = -β (ê·v) ê. Negative β anti-damps.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRates {
    pub beta_pump: f64,
    pub beta_cav: f64,
    pub beta_sw_cav: f64,
    pub beta_sw_sis: f64,
    /// Direction of ∇g; None where the gradient vanishes (channel inactive).
    pub dir_grad_g: Option<Vector3<f64>>,
    /// Direction of ∇Δ_S; None where the gradient vanishes.
    pub dir_grad_ds: Option<Vector3<f64>>,
}

/// Momentum diffusion coefficients (kg² m²/s³), one per noise channel.
/// Each channel delivers Gaussian momentum kicks of variance 2 D dt.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DiffusionChannels {
    /// Pump absorption, both beams, along the pump axis.
    pub d_pump: f64,
    /// Emission into the cavity mode, along the cavity axis.
    pub d_cav: f64,
    /// Free-space spontaneous emission, isotropic (apply 1/3 per axis).
    pub d_spont: f64,
}

impl DiffusionChannels {
    pub fn total(&self) -> f64 {
        self.d_pump + self.d_cav + self.d_spont
    }
}

/// Every force acting at one phase-space point, split by mechanism.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceBreakdown {
    /// Pump-beam friction (N).
    pub f_pump: Vector3<f64>,
    /// Coupling-gradient friction (N).
    pub f_cav: Vector3<f64>,
    /// Trap-gradient cavity-lag friction (N).
    pub f_sw_cav: Vector3<f64>,
    /// Trap-gradient Sisyphus friction (N).
    pub f_sw_sis: Vector3<f64>,
    /// Conservative trap force -∇U (N).
    pub f_cons: Vector3<f64>,
    /// Photon scattering rate into the cavity (1/s).
    pub r_scat: f64,
    /// Momentum diffusion per channel.
    pub diffusion: DiffusionChannels,
    /// Low-saturation validity marker copied from the field sample.
    pub saturated: bool,
}

impl ForceBreakdown {
    /// Sum of the four friction forces (N).
    pub fn f_friction(&self) -> Vector3<f64> {
        self.f_pump + self.f_cav + self.f_sw_cav + self.f_sw_sis
    }
}

/// Cavity lag factor L = κ Δ_C/(Δ_C² + κ²)² (s²); odd in Δ_C.
fn lag_factor(params: &SystemParams) -> f64 {
    let lor = params.delta_c * params.delta_c + params.kappa * params.kappa;
    params.kappa * params.delta_c / (lor * lor)
}

/// Friction rates for the four channels at a sampled field point.
pub fn channel_rates(params: &SystemParams, fields: &FieldSample) -> ChannelRates {
    let p = params;
    let s = fields;
    let lag = lag_factor(p);
    let lor_a = s.delta_a * s.delta_a + p.gamma * p.gamma;

    let k_p = p.k_pump();
    // Two beams along ±axis_pump: k(k·v) is even in the beam direction, so
    // the contributions add.
    let beta_pump = 8.0 * HBAR * k_p * k_p * lag * s.g * s.g * s.p_e / p.mass;

    let grad_g_sq = s.grad_g.norm_squared();
    let beta_cav = 4.0 * HBAR * lag * s.p_e * grad_g_sq / p.mass;

    let grad_ds_sq = s.grad_delta_s.norm_squared();
    let beta_sw_cav = 4.0 * HBAR * lag * s.g * s.g * s.p_e / lor_a * grad_ds_sq / p.mass;
    let beta_sw_sis =
        2.0 * HBAR * s.delta_a * s.p_e * s.p_e / (p.gamma * lor_a) * grad_ds_sq / p.mass;

    ChannelRates {
        beta_pump,
        beta_cav,
        beta_sw_cav,
        beta_sw_sis,
        dir_grad_g: (grad_g_sq > 0.0).then(|| s.grad_g / grad_g_sq.sqrt()),
        dir_grad_ds: (grad_ds_sq > 0.0).then(|| s.grad_delta_s / grad_ds_sq.sqrt()),
    }
}

/// Photon scattering rate into the cavity mode (1/s).
pub fn scattering_rate(params: &SystemParams, fields: &FieldSample) -> f64 {
    let lor_c = params.delta_c * params.delta_c + params.kappa * params.kappa;
    2.0 * params.kappa * fields.g * fields.g / lor_c * fields.p_e
}

/// Momentum diffusion coefficients at a sampled field point.
pub fn diffusion_channels(params: &SystemParams, fields: &FieldSample) -> DiffusionChannels {
    let p = params;
    let hk_pump = HBAR * p.k_pump();
    let hk_cav = HBAR * p.k_cavity();
    // Per pump beam: (ħk)² · 2γ P_E; the retroreflected pair doubles it.
    let d_pump = 2.0 * hk_pump * hk_pump * 2.0 * p.gamma * fields.p_e;
    let d_cav = hk_cav * hk_cav * scattering_rate(p, fields);
    let d_spont = hk_cav * hk_cav * 2.0 * p.gamma * fields.p_e;
    DiffusionChannels { d_pump, d_cav, d_spont }
}

/// Evaluate all forces at a field sample for an atom moving with `velocity`.
pub fn evaluate_forces(
    params: &SystemParams,
    geometry: &Geometry,
    fields: &FieldSample,
    velocity: &Vector3<f64>,
) -> ForceBreakdown {
    let rates = channel_rates(params, fields);
    let m = params.mass;

    let e_p = geometry.axis_pump;
    let f_pump = -m * rates.beta_pump * e_p.dot(velocity) * e_p;

    let f_along = |dir: &Option<Vector3<f64>>, beta: f64| match dir {
        Some(e) => -m * beta * e.dot(velocity) * *e,
        None => Vector3::zeros(),
    };
    let f_cav = f_along(&rates.dir_grad_g, rates.beta_cav);
    let f_sw_cav = f_along(&rates.dir_grad_ds, rates.beta_sw_cav);
    let f_sw_sis = f_along(&rates.dir_grad_ds, rates.beta_sw_sis);

    ForceBreakdown {
        f_pump,
        f_cav,
        f_sw_cav,
        f_sw_sis,
        f_cons: -fields.grad_u,
        r_scat: scattering_rate(params, fields),
        diffusion: diffusion_channels(params, fields),
        saturated: fields.saturated,
    }
}

/// How the two detunings co-vary across a detuning sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DetuningMode {
    /// Pump fixed on the bare atomic line (ω_P = ω_A); the cavity is tuned.
    /// Δ_A = Δ_S(r), independent of Δ_C.
    PumpOnAtom,
    /// Cavity fixed on the bare atomic line (ω_C = ω_A); the pump is tuned.
    /// Δ_A = Δ_C + Δ_S(r).
    CavityOnAtom,
}

/// Apply a sweep detuning to a parameter set under the given mode.
pub fn apply_detuning(params: &SystemParams, delta_c: f64, mode: DetuningMode) -> SystemParams {
    let mut p = params.clone();
    p.delta_c = delta_c;
    p.delta_pa = match mode {
        DetuningMode::PumpOnAtom => 0.0,
        DetuningMode::CavityOnAtom => -delta_c,
    };
    p
}

/// Spatial sampling envelope for friction averages: Gaussian weights of
/// `width_scale` × the harmonic ground-state width along each lattice,
/// centred on the trap minimum, integrated over one lattice period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragingSpec {
    pub width_scale: f64,
    /// Quadrature points per lattice direction.
    pub n_points: usize,
}

impl Default for AveragingSpec {
    fn default() -> Self {
        AveragingSpec { width_scale: 1.0, n_points: 65 }
    }
}

/// Friction coefficients averaged over the thermal sampling envelope, per
/// sweep detuning. Rates are in 1/s; positive damps.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FrictionSpectrum {
    /// Sweep detunings Δ_C (rad/s).
    pub delta_c: Vec<f64>,
    pub beta_pump: Vec<f64>,
    pub beta_cav: Vec<f64>,
    pub beta_sw_cav: Vec<f64>,
    pub beta_sw_sis: Vec<f64>,
    pub mode: DetuningMode,
}

impl FrictionSpectrum {
    /// Total trap-axis friction β_sw_cav + β_sw_sis.
    pub fn beta_sw_total(&self) -> Vec<f64> {
        self.beta_sw_cav
            .iter()
            .zip(&self.beta_sw_sis)
            .map(|(a, b)| a + b)
            .collect()
    }
}

/// Average the four channel rates over the sampling envelope.
///
/// Sampling runs over one standing-wave period along the trap axis and one
/// intracavity-lattice period along the cavity axis (the coupling gradient
/// vanishes identically on the cavity-mode antinode plane, so a trapped
/// atom's residual spread along the cavity axis is what activates the
/// `cav` channel).
pub fn averaged_rates(
    params: &SystemParams,
    geometry: &Geometry,
    avg: &AveragingSpec,
) -> ChannelRates {
    let freqs = crate::fields::trap_frequencies(params, geometry)
        .unwrap_or(crate::fields::TrapFrequencies {
            nu_sw: 1.0,
            nu_cav: 1.0,
            nu_perp: 1.0,
            cavity_lattice_confined: false,
        });
    let sigma_x = avg.width_scale * crate::fields::ground_state_width(params.mass, freqs.nu_sw);
    let sigma_z = avg.width_scale * crate::fields::ground_state_width(params.mass, freqs.nu_cav);

    let half_x = params.lambda_trap / 4.0;
    let half_z = params.lambda_intracavity / 4.0;
    let n = avg.n_points.max(3);

    let mut sums = [0.0; 4];
    let mut norm = 0.0;
    for i in 0..n {
        let x = -half_x + (i as f64 + 0.5) / n as f64 * 2.0 * half_x;
        let wx = (-0.5 * (x / sigma_x).powi(2)).exp();
        for j in 0..n {
            let z = -half_z + (j as f64 + 0.5) / n as f64 * 2.0 * half_z;
            let wz = (-0.5 * (z / sigma_z).powi(2)).exp();
            let w = wx * wz;
            if w < 1e-300 {
                continue;
            }
            let r = x * geometry.axis_sw + z * geometry.axis_cavity;
            let fields = sample_fields_scaled(params, geometry, &r, DriveScales::default());
            let rates = channel_rates(params, &fields);
            sums[0] += w * rates.beta_pump;
            sums[1] += w * rates.beta_cav;
            sums[2] += w * rates.beta_sw_cav;
            sums[3] += w * rates.beta_sw_sis;
            norm += w;
        }
    }
    ChannelRates {
        beta_pump: sums[0] / norm,
        beta_cav: sums[1] / norm,
        beta_sw_cav: sums[2] / norm,
        beta_sw_sis: sums[3] / norm,
        dir_grad_g: None,
        dir_grad_ds: None,
    }
}

/// Envelope-averaged friction rates across a detuning grid.
pub fn friction_spectrum(
    params: &SystemParams,
    geometry: &Geometry,
    delta_c_grid: &[f64],
    mode: DetuningMode,
    avg: &AveragingSpec,
) -> FrictionSpectrum {
    let mut spectrum = FrictionSpectrum {
        delta_c: delta_c_grid.to_vec(),
        beta_pump: Vec::with_capacity(delta_c_grid.len()),
        beta_cav: Vec::with_capacity(delta_c_grid.len()),
        beta_sw_cav: Vec::with_capacity(delta_c_grid.len()),
        beta_sw_sis: Vec::with_capacity(delta_c_grid.len()),
        mode,
    };
    for &dc in delta_c_grid {
        let p = apply_detuning(params, dc, mode);
        let rates = averaged_rates(&p, geometry, avg);
        spectrum.beta_pump.push(rates.beta_pump);
        spectrum.beta_cav.push(rates.beta_cav);
        spectrum.beta_sw_cav.push(rates.beta_sw_cav);
        spectrum.beta_sw_sis.push(rates.beta_sw_sis);
    }
    spectrum
}

/// Expected trap-axis friction for a hot atom transiting the standing wave,
/// under the factorized period average: (∇Δ_S)² is replaced by its period
/// mean Δ_S,max² k_t²/2 and the Lorentzian factors are evaluated at the
/// period-mean Stark shift Δ_S,max/2 (a transiting atom samples the lattice
/// period uniformly). Returns β_sw_cav + β_sw_sis (1/s) at the cavity-mode
/// antinode.
pub fn capture_beta_estimate(params: &SystemParams) -> f64 {
    let p = params;
    let lag = lag_factor(p);
    let delta_a = -p.delta_pa + 0.5 * p.stark_max;
    let lor_a = delta_a * delta_a + p.gamma * p.gamma;
    let p_e = p.omega_rabi * p.omega_rabi / lor_a;
    let k_t = p.k_trap();
    let grad_ds_sq_mean = 0.5 * p.stark_max * p.stark_max * k_t * k_t;

    let beta_sw_cav = 4.0 * HBAR * lag * p.g0 * p.g0 * p_e / lor_a * grad_ds_sq_mean / p.mass;
    let beta_sw_sis =
        2.0 * HBAR * delta_a * p_e * p_e / (p.gamma * lor_a) * grad_ds_sq_mean / p.mass;
    beta_sw_cav + beta_sw_sis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::sample_fields;
    use crate::units;

    fn setup(delta_c_mhz: f64) -> (SystemParams, Geometry) {
        let mut p = SystemParams::default();
        p.delta_c = units::mhz_to_angular(delta_c_mhz);
        (p, Geometry::default())
    }

    #[test]
    fn zero_velocity_means_zero_friction() {
        let (p, g) = setup(3.0);
        let r = nalgebra::Vector3::new(1.2e-7, -0.4e-7, 2.0e-8);
        let s = sample_fields(&p, &g, &r);
        let fb = evaluate_forces(&p, &g, &s, &nalgebra::Vector3::zeros());
        assert_eq!(fb.f_pump.norm(), 0.0);
        assert_eq!(fb.f_cav.norm(), 0.0);
        assert_eq!(fb.f_sw_cav.norm(), 0.0);
        assert_eq!(fb.f_sw_sis.norm(), 0.0);
        assert_eq!(fb.f_cons, -s.grad_u);
    }

    #[test]
    fn on_resonance_cavity_lag_channels_vanish() {
        let (p, g) = setup(0.0);
        let r = nalgebra::Vector3::new(1.0e-7, 5.0e-8, 3.0e-8);
        let v = nalgebra::Vector3::new(0.1, -0.2, 0.05);
        let s = sample_fields(&p, &g, &r);
        let fb = evaluate_forces(&p, &g, &s, &v);
        assert_eq!(fb.f_pump.norm(), 0.0);
        assert_eq!(fb.f_cav.norm(), 0.0);
        assert_eq!(fb.f_sw_cav.norm(), 0.0);
        assert!(fb.f_sw_sis.norm() > 0.0, "Sisyphus survives at Δ_C = 0");
    }

    #[test]
    fn peak_scattering_rate_matches_reference_value() {
        // g = κ, Δ_C = 0: R = 2κ P_E = 1.41×10⁶/s at the trap centre.
        let (p, g) = setup(0.0);
        let s = sample_fields(&p, &g, &nalgebra::Vector3::zeros());
        let r = scattering_rate(&p, &s);
        assert!(
            (r - 1.41e6).abs() < 0.05 * 1.41e6,
            "R_scat = {r:.4e}, expected 1.41e6 within 5%"
        );
    }

    #[test]
    fn capture_friction_estimate_near_14_per_ms() {
        // Capture configuration: Δ_C = 2π×2 MHz, pump on the bare line.
        let (p, _) = setup(2.0);
        let beta = capture_beta_estimate(&p);
        assert!(
            beta > 0.7e4 && beta < 2.8e4,
            "β = {beta:.3e}, expected within factor 2 of 1.4e4/s"
        );
    }

    #[test]
    fn diffusion_scales_and_ratios() {
        let (p, g) = setup(0.0);
        let s = sample_fields(&p, &g, &nalgebra::Vector3::zeros());
        let d = diffusion_channels(&p, &s);
        // Emission vs spontaneous: R_scat/(2γ P_E) = g²κ/(γ(Δ_C²+κ²)) = 5/3
        // at Δ_C = 0 with g = κ.
        let ratio = d.d_cav / d.d_spont;
        assert!((ratio - 5.0 / 3.0).abs() < 1e-9, "ratio = {ratio}");

        // Doubling the drive quadruples every channel (all ∝ Ω²).
        let mut p2 = p.clone();
        p2.omega_rabi *= 2.0;
        let s2 = sample_fields(&p2, &g, &nalgebra::Vector3::zeros());
        let d2 = diffusion_channels(&p2, &s2);
        for (a, b) in [(d2.d_pump, d.d_pump), (d2.d_cav, d.d_cav), (d2.d_spont, d.d_spont)] {
            assert!((a / b - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn pump_off_kills_scattering_and_diffusion() {
        let (p, g) = setup(2.0);
        let s = crate::fields::sample_fields_scaled(
            &p,
            &g,
            &nalgebra::Vector3::zeros(),
            DriveScales { trap: 1.0, pump: 0.0 },
        );
        assert_eq!(scattering_rate(&p, &s), 0.0);
        let d = diffusion_channels(&p, &s);
        assert_eq!(d.total(), 0.0);
    }

    #[test]
    fn detuning_modes_set_atomic_detuning() {
        let base = SystemParams::default();
        let dc = units::mhz_to_angular(4.0);
        let p1 = apply_detuning(&base, dc, DetuningMode::PumpOnAtom);
        assert_eq!(p1.atom_pump_detuning(), 0.0);
        let p2 = apply_detuning(&base, dc, DetuningMode::CavityOnAtom);
        assert_eq!(p2.atom_pump_detuning(), dc);
    }
}
