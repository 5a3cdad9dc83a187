//! Capture transient characterization.
//!
//! When an atom falls into the trap the ensemble-mean detected rate leaves
//! the background level and relaxes onto a settled plateau. Depending on the
//! pump tuning the approach can be a clean rise or an overshoot that decays
//! back down, so the settling time is measured as the exponential time
//! constant of the approach, whichever its sign. Energy damps at twice the
//! velocity damping rate, so beta = 1 / (2 dt).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CaptureTransient {
    /// Time of the first bin significantly above background (s).
    pub onset: f64,
    /// Exponential time constant of the approach to the plateau (s).
    pub rise_time: f64,
    /// Effective velocity damping rate 1 / (2 rise_time), 1/s.
    pub beta: f64,
    /// Plateau click rate after settling (Hz).
    pub settled_rate: f64,
    /// Background rate supplied by the caller (Hz).
    pub background_rate: f64,
    /// Set when the signal lands on the plateau within a bin or two, meaning
    /// beta is only a lower bound.
    pub too_fast: bool,
}

/// Locate capture onset and settling time in a binned rate record.
///
/// `counts[k]` is the mean number of clicks per trace in bin k, averaged
/// over `traces` independent records; averaging shrinks the background
/// fluctuation used for the onset threshold by sqrt(traces).
pub fn fit_capture_transient(
    counts: &[f64],
    bin: f64,
    background_rate: f64,
    traces: usize,
) -> Result<CaptureTransient> {
    if counts.len() < 8 {
        return Err(Error::Analysis(format!(
            "transient fit needs at least 8 bins, got {}",
            counts.len()
        )));
    }
    if !(bin > 0.0) || background_rate < 0.0 || traces == 0 {
        return Err(Error::Analysis(format!(
            "bad transient inputs: bin {bin}, background {background_rate}, traces {traces}"
        )));
    }

    let bg_mean = background_rate * bin;
    let sigma = (bg_mean / traces as f64).sqrt();
    let onset_threshold = bg_mean + 5.0 * sigma.max(1e-12);

    let Some(onset_idx) = counts.iter().position(|&c| c > onset_threshold) else {
        return Err(Error::Analysis(
            "no bin rises above background; nothing was captured".into(),
        ));
    };

    // Plateau level and noise scale from the trailing quarter of the record.
    let tail_start = counts.len() - (counts.len() / 4).max(1);
    if tail_start <= onset_idx {
        return Err(Error::Analysis(
            "onset sits inside the settling window; record is too short".into(),
        ));
    }
    let tail = &counts[tail_start..];
    let settled = tail.iter().sum::<f64>() / tail.len() as f64;
    let sigma_tail = (tail.iter().map(|c| (c - settled).powi(2)).sum::<f64>()
        / (tail.len() - 1).max(1) as f64)
        .sqrt();
    if settled <= bg_mean {
        return Err(Error::Analysis(
            "record never settles above background; nothing stayed captured".into(),
        ));
    }

    // Largest departure from the plateau after onset. A clean rise peaks at
    // onset (still at background, below the plateau); an overshoot peaks just
    // after arrival, above it.
    let dev = |k: usize| counts[k] - settled;
    let peak_idx = (onset_idx..counts.len())
        .max_by(|&a, &b| dev(a).abs().total_cmp(&dev(b).abs()))
        .expect("range is non-empty");
    let amp = dev(peak_idx).abs();

    // Settled once the deviation stays inside the band for two consecutive
    // bins; a single noisy excursion must not stretch the settling time.
    let band = (0.1 * amp).max(2.0 * sigma_tail);
    if amp <= band {
        // The record sits on the plateau from the first significant bin on.
        return Ok(CaptureTransient {
            onset: onset_idx as f64 * bin,
            rise_time: bin,
            beta: 1.0 / (2.0 * bin),
            settled_rate: settled / bin,
            background_rate,
            too_fast: true,
        });
    }
    let end_idx = (peak_idx..counts.len())
        .find(|&k| {
            dev(k).abs() <= band && (k + 1 == counts.len() || dev(k + 1).abs() <= band)
        })
        .unwrap_or(counts.len() - 1);

    // Coherent-area time constant: for dev = A exp(-t/tau) truncated at the
    // band, sum(|dev|) * bin = tau * (A - band), independent of where the
    // band sits. Summing only to end_idx keeps plateau noise from piling up.
    let area: f64 = (peak_idx..=end_idx).map(|k| dev(k).abs()).sum::<f64>() * bin;
    let tau = (area / (amp - band)).max(bin);

    Ok(CaptureTransient {
        onset: onset_idx as f64 * bin,
        rise_time: tau,
        beta: 1.0 / (2.0 * tau),
        settled_rate: settled / bin,
        background_rate,
        too_fast: end_idx <= peak_idx + 1,
    })
}
