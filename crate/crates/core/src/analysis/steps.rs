//! Step detection on binned click records.
//!
//! Atom number changes in integer steps, so the expected count per bin is
//! confined to a ladder lambda_n = (r_bg + n r_det) * bin. Segmentation is
//! exact optimal partitioning under the Poisson likelihood with a fixed
//! per-changepoint penalty, O(bins^2 * levels).

use crate::error::{Error, Result};

/// One constant-occupancy stretch of a binned trace.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StepSegment {
    /// Start time of the segment (s).
    pub start: f64,
    /// End time, exclusive (s).
    pub end: f64,
    /// Fitted atom number on the level ladder.
    pub atoms: usize,
    /// Observed mean count rate over the segment (clicks/s).
    pub observed_rate: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct StepFit {
    pub segments: Vec<StepSegment>,
    /// Fitted atom number in the first and last segment.
    pub initial_atoms: usize,
    pub final_atoms: usize,
    /// Largest level on the ladder that the fit was allowed to use.
    pub max_atoms: usize,
}

/// Detect occupancy steps in Poisson bin counts.
///
/// `rate_per_atom` and `background_rate` are detected click rates in Hz;
/// `penalty` is the log-likelihood cost of introducing a changepoint
/// (`2 ln(bins)` is a reasonable default, exposed for tuning).
pub fn detect_steps(
    counts: &[u64],
    bin: f64,
    rate_per_atom: f64,
    background_rate: f64,
    max_atoms: usize,
    penalty: f64,
) -> Result<StepFit> {
    if counts.is_empty() {
        return Err(Error::Analysis("step detection needs at least one bin".into()));
    }
    if !(bin > 0.0) || !(rate_per_atom > 0.0) || background_rate < 0.0 {
        return Err(Error::Analysis(format!(
            "bad step-detection rates: bin {bin}, per-atom {rate_per_atom}, background {background_rate}"
        )));
    }

    let t = counts.len();
    let levels: Vec<f64> = (0..=max_atoms)
        .map(|n| (background_rate + n as f64 * rate_per_atom) * bin)
        .collect();

    // Prefix sums so any segment cost is O(1).
    let mut prefix = vec![0.0f64; t + 1];
    for (k, &c) in counts.iter().enumerate() {
        prefix[k + 1] = prefix[k] + c as f64;
    }

    // Poisson negative log-likelihood of bins [i, j) held at ladder level n,
    // up to count-only terms shared by every candidate.
    let seg_cost = |i: usize, j: usize, n: usize| -> f64 {
        let lam = levels[n];
        let len = (j - i) as f64;
        let sum = prefix[j] - prefix[i];
        if lam == 0.0 {
            return if sum > 0.0 { f64::INFINITY } else { 0.0 };
        }
        len * lam - sum * lam.ln()
    };

    let best_level = |i: usize, j: usize| -> (usize, f64) {
        let mut arg = 0;
        let mut best = f64::INFINITY;
        for n in 0..levels.len() {
            let c = seg_cost(i, j, n);
            if c < best {
                best = c;
                arg = n;
            }
        }
        (arg, best)
    };

    // best[j]: optimal cost of the first j bins; cut[j]: where its last
    // segment starts.
    let mut best = vec![0.0f64; t + 1];
    let mut cut = vec![0usize; t + 1];
    let mut lvl = vec![0usize; t + 1];
    for j in 1..=t {
        best[j] = f64::INFINITY;
        for i in 0..j {
            let (n, c) = best_level(i, j);
            let total = best[i] + c + if i == 0 { 0.0 } else { penalty };
            if total < best[j] {
                best[j] = total;
                cut[j] = i;
                lvl[j] = n;
            }
        }
    }

    let mut segments = Vec::new();
    let mut j = t;
    while j > 0 {
        let i = cut[j];
        let sum = prefix[j] - prefix[i];
        segments.push(StepSegment {
            start: i as f64 * bin,
            end: j as f64 * bin,
            atoms: lvl[j],
            observed_rate: sum / ((j - i) as f64 * bin),
        });
        j = i;
    }
    segments.reverse();

    Ok(StepFit {
        initial_atoms: segments.first().map_or(0, |s| s.atoms),
        final_atoms: segments.last().map_or(0, |s| s.atoms),
        max_atoms,
        segments,
    })
}

/// Default changepoint penalty for a trace with `bins` bins.
pub fn default_step_penalty(bins: usize) -> f64 {
    2.0 * (bins.max(2) as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_trace_is_a_single_segment() {
        let counts = vec![50u64; 40];
        let fit = detect_steps(&counts, 1e-3, 50_000.0, 0.0, 3, default_step_penalty(40)).unwrap();
        assert_eq!(fit.segments.len(), 1, "segments: {:?}", fit.segments);
        assert_eq!(fit.segments[0].atoms, 1);
    }

    #[test]
    fn noiseless_staircase_is_recovered_exactly() {
        // 2 atoms for 10 bins, 1 atom for 10, background for 10.
        let mut counts = vec![41u64; 10];
        counts.extend(vec![21u64; 10]);
        counts.extend(vec![1u64; 10]);
        let fit = detect_steps(&counts, 1e-3, 20_000.0, 1_000.0, 4, default_step_penalty(30)).unwrap();
        let atoms: Vec<usize> = fit.segments.iter().map(|s| s.atoms).collect();
        assert_eq!(atoms, vec![2, 1, 0], "segments: {:?}", fit.segments);
        assert_eq!(fit.initial_atoms, 2);
        assert_eq!(fit.final_atoms, 0);
        assert!((fit.segments[1].start - 0.010).abs() < 1e-12);
        assert!((fit.segments[2].start - 0.020).abs() < 1e-12);
    }

    #[test]
    fn empty_or_bad_inputs_error() {
        assert!(detect_steps(&[], 1e-3, 1.0, 0.0, 1, 1.0).is_err());
        assert!(detect_steps(&[1], 0.0, 1.0, 0.0, 1, 1.0).is_err());
        assert!(detect_steps(&[1], 1e-3, 0.0, 0.0, 1, 1.0).is_err());
    }

    #[test]
    fn zero_background_ladder_handles_empty_bins() {
        let mut counts = vec![30u64; 5];
        counts.extend(vec![0u64; 5]);
        let fit = detect_steps(&counts, 1e-3, 30_000.0, 0.0, 2, default_step_penalty(10)).unwrap();
        let atoms: Vec<usize> = fit.segments.iter().map(|s| s.atoms).collect();
        assert_eq!(atoms, vec![1, 0]);
    }
}
