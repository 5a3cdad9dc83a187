//! Estimators for the detection chain.
//!
//! Everything in here consumes click times or binned counts plus a handful
//! of known rates, and produces the quantities the scenarios report:
//! lifetimes, occupancy steps, count histograms, oscillation frequencies,
//! capture transients, and thermal occupation numbers.

pub mod autocorr;
pub mod histogram;
pub mod lifetime;
pub mod occupation;
pub mod steps;
pub mod transient;

pub use autocorr::{click_autocorrelation, oscillation_peak, Autocorrelation, OscillationPeak};
pub use histogram::{fit_count_histogram, HistogramFit};
pub use lifetime::{estimate_lifetime, LifetimeFit};
pub use occupation::{
    coupling_spread, ground_fraction, kinetic_temperature, occupied_radius,
    temperature_from_occupation, thermal_occupation,
};
pub use steps::{default_step_penalty, detect_steps, StepFit, StepSegment};
pub use transient::{fit_capture_transient, CaptureTransient};
