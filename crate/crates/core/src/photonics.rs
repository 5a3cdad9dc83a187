//! Click-stream generation from scattering-rate traces.
//!
//! The detector sees the atom's cavity emission attenuated by the overall
//! detection efficiency, plus an independent constant-rate background. On
//! each stride of the piecewise-constant rate trace the click process is
//! homogeneous Poisson, so clicks are drawn exactly: a Poisson count per
//! stride, placed uniformly within it.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::dynamics::RateTrace;
use crate::error::{Error, Result};

/// Detector click times (s), sorted ascending, relative to trace start.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PhotonTrace {
    pub times: Vec<f64>,
    /// Observation window the clicks were drawn over (s).
    pub duration: f64,
}

impl PhotonTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Mean click rate over the observation window (1/s).
    pub fn mean_rate(&self) -> f64 {
        self.times.len() as f64 / self.duration
    }
}

fn clicks_in(
    rate: f64,
    t0: f64,
    t1: f64,
    rng: &mut rand_chacha::ChaCha12Rng,
    out: &mut Vec<f64>,
) {
    let mean = rate * (t1 - t0);
    if mean <= 0.0 {
        return;
    }
    let n = Poisson::new(mean).expect("positive mean").sample(rng) as usize;
    let start = out.len();
    for _ in 0..n {
        out.push(t0 + rng.gen::<f64>() * (t1 - t0));
    }
    out[start..].sort_unstable_by(f64::total_cmp);
}

/// Sample the detected click stream for one rate trace: the scattered rate
/// thinned by `eta_det`, plus a constant background over the whole window.
pub fn emit_photons(
    trace: &RateTrace,
    eta_det: f64,
    background_rate: f64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> Result<PhotonTrace> {
    if !(0.0..=1.0).contains(&eta_det) {
        return Err(Error::InvalidParameter {
            key: "eta_det".into(),
            reason: format!("must lie in [0, 1], got {eta_det}"),
        });
    }
    if !(background_rate >= 0.0) {
        return Err(Error::InvalidParameter {
            key: "background_rate".into(),
            reason: "must be non-negative".into(),
        });
    }
    let mut times = Vec::new();
    for (i, &r) in trace.rates.iter().enumerate() {
        let t0 = i as f64 * trace.stride;
        let rate = r as f64 * eta_det + background_rate;
        clicks_in(rate, t0, t0 + trace.stride, rng, &mut times);
    }
    Ok(PhotonTrace { times, duration: trace.duration() })
}

/// Background-only click stream over `duration`.
pub fn background_clicks(
    rate: f64,
    duration: f64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> PhotonTrace {
    let mut times = Vec::new();
    clicks_in(rate, 0.0, duration, rng, &mut times);
    PhotonTrace { times, duration }
}

/// Merge click streams from independent sources into one detector record.
pub fn merge(traces: &[&PhotonTrace]) -> PhotonTrace {
    let mut times: Vec<f64> = traces.iter().flat_map(|t| t.times.iter().copied()).collect();
    times.sort_unstable_by(f64::total_cmp);
    let duration = traces.iter().map(|t| t.duration).fold(0.0, f64::max);
    PhotonTrace { times, duration }
}

/// Histogram click times into consecutive bins of `bin_width` covering
/// [0, duration). Clicks beyond the last full bin edge land in the final
/// bin only if it exists.
pub fn bin_counts(photons: &PhotonTrace, bin_width: f64) -> Vec<u32> {
    let n_bins = (photons.duration / bin_width).floor().max(0.0) as usize;
    let mut counts = vec![0u32; n_bins];
    for &t in &photons.times {
        let i = (t / bin_width) as usize;
        if i < n_bins {
            counts[i] += 1;
        }
    }
    counts
}
