//! Censored exponential lifetime estimation.

use crate::error::{Error, Result};

/// Maximum-likelihood lifetime with a profile-likelihood interval.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LifetimeFit {
    /// MLE of the mean lifetime (s); infinite when nothing was lost.
    pub tau: f64,
    /// 1-sigma profile-likelihood interval (log-likelihood drop of 1/2).
    pub ci_low: f64,
    pub ci_high: f64,
    /// Observed losses.
    pub events: usize,
    /// Survivors at the end of their observation windows.
    pub censored: usize,
    /// True when zero losses were seen: `tau` is unbounded above and only
    /// `ci_low` carries information.
    pub lower_bound_only: bool,
}

/// Fit an exponential lifetime to right-censored observations.
///
/// `durations[i]` is how long atom i was observed; `lost[i]` says whether
/// the observation ended in a loss (true) or censoring (false). The MLE is
/// total observed time over the number of losses; the interval solves
/// l(tau) = l(tau_hat) - 1/2 on each side.
pub fn estimate_lifetime(durations: &[f64], lost: &[bool]) -> Result<LifetimeFit> {
    if durations.is_empty() || durations.len() != lost.len() {
        return Err(Error::Analysis(format!(
            "need matching non-empty durations and loss flags, got {} and {}",
            durations.len(),
            lost.len()
        )));
    }
    if durations.iter().any(|&t| !(t > 0.0) || !t.is_finite()) {
        return Err(Error::Analysis("durations must be positive and finite".into()));
    }

    let total: f64 = durations.iter().sum();
    let events = lost.iter().filter(|&&l| l).count();
    let censored = durations.len() - events;

    if events == 0 {
        // l(tau) = -T/tau increases monotonically with tau; the 1-sigma
        // lower bound solves T/tau = 1/2.
        return Ok(LifetimeFit {
            tau: f64::INFINITY,
            ci_low: 2.0 * total,
            ci_high: f64::INFINITY,
            events,
            censored,
            lower_bound_only: true,
        });
    }

    let d = events as f64;
    let tau_hat = total / d;
    // Profile log-likelihood relative to the maximum.
    let rel_ll = |tau: f64| -d * (tau / tau_hat).ln() - total / tau + d;

    let solve = |mut lo: f64, mut hi: f64| {
        // Bisect rel_ll(tau) = -1/2 on a bracket where it changes sign.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (rel_ll(mid) + 0.5) * (rel_ll(lo) + 0.5) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };

    // Bracket outward until the likelihood has dropped below the cut.
    let mut lo = tau_hat;
    while rel_ll(lo) > -0.5 {
        lo *= 0.5;
    }
    let mut hi = tau_hat;
    while rel_ll(hi) > -0.5 {
        hi *= 2.0;
    }

    Ok(LifetimeFit {
        tau: tau_hat,
        ci_low: solve(lo, tau_hat),
        ci_high: solve(hi, tau_hat),
        events,
        censored,
        lower_bound_only: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_mle_on_tiny_dataset() {
        // Total time 6 s over 2 losses: tau = 3 s.
        let fit = estimate_lifetime(&[1.0, 2.0, 3.0], &[true, false, true]).unwrap();
        assert!((fit.tau - 3.0).abs() < 1e-12);
        assert_eq!(fit.events, 2);
        assert_eq!(fit.censored, 1);
        assert!(fit.ci_low < 3.0 && 3.0 < fit.ci_high);
        assert!(!fit.lower_bound_only);
    }

    #[test]
    fn no_losses_yields_a_lower_bound() {
        let fit = estimate_lifetime(&[1.0; 10], &[false; 10]).unwrap();
        assert!(fit.lower_bound_only);
        assert!(fit.tau.is_infinite());
        assert!((fit.ci_low - 20.0).abs() < 1e-9);
    }

    #[test]
    fn interval_shrinks_with_events() {
        let few = estimate_lifetime(&[1.0; 10], &[true; 10]).unwrap();
        let many = estimate_lifetime(&[1.0; 1000], &[true; 1000]).unwrap();
        let w_few = (few.ci_high - few.ci_low) / few.tau;
        let w_many = (many.ci_high - many.ci_low) / many.tau;
        assert!(w_many < 0.5 * w_few, "widths {w_few} vs {w_many}");
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        assert!(estimate_lifetime(&[1.0], &[true, false]).is_err());
        assert!(estimate_lifetime(&[], &[]).is_err());
        assert!(estimate_lifetime(&[0.0], &[true]).is_err());
    }
}
