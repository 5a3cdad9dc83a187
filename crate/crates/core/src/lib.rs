//! Semiclassical Monte-Carlo simulation of a single two-level atom trapped
//! in a standing-wave dipole trap inside a pumped high-finesse cavity.
//!
//! The atom moves classically in the combined trap potential while the
//! internal dynamics and the cavity field are eliminated adiabatically,
//! leaving velocity-linear friction forces, stochastic recoil kicks, and a
//! position-dependent photon scattering rate into the cavity mode. On top
//! of the dynamics sit a photon-detection model and the estimators used to
//! reduce click streams to lifetimes, atom numbers, coupling spreads, and
//! oscillation frequencies.

pub mod analysis;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod fields;
pub mod forces;
pub mod params;
pub mod photonics;
pub mod rng;
pub mod scenario;
pub mod units;

pub use analysis::{
    click_autocorrelation, coupling_spread, detect_steps, estimate_lifetime,
    fit_capture_transient, fit_count_histogram, ground_fraction, kinetic_temperature,
    occupied_radius, oscillation_peak, temperature_from_occupation, thermal_occupation,
    Autocorrelation, CaptureTransient, HistogramFit, LifetimeFit, OscillationPeak, StepFit,
    StepSegment,
};
pub use config::{
    validate_config, HistogramSpec, LaunchSpec, MapSpec, Scenario, ScenarioKind, SweepSpec,
};
pub use dynamics::{
    harmonic_equilibrium_temperature, run_ensemble, run_trajectory, AtomState, LossCause,
    RateTrace, RunConfig, StateSample, TrajectoryOutcome, TrajectoryRecord, TrapModulation,
};
pub use error::{ConfigIssue, Error, Result};
pub use export::{DerivedConstants, OutputSet, RunManifest};
pub use fields::{
    ground_state_width, sample_fields, sample_fields_scaled, trap_frequencies, DriveScales,
    FieldSample, TrapFrequencies,
};
pub use forces::{
    apply_detuning, capture_beta_estimate, channel_rates, diffusion_channels, evaluate_forces,
    friction_spectrum, scattering_rate, AveragingSpec, ChannelRates, DetuningMode,
    DiffusionChannels, ForceBreakdown, FrictionSpectrum,
};
pub use params::{cavity_waist, Geometry, SystemParams};
pub use scenario::run_scenario;
