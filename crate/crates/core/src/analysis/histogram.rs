//! Photon-count histogram decomposition.
//!
//! Counts collected over fixed windows cluster by atom number. Component n
//! sits at mu_n = (r_bg + n r_det) w with variance mu_n + n (sigma_det w)^2:
//! the Poisson floor plus the atom-to-atom spread of detected rates, which
//! enters once per atom. All components share (r_bg, r_det, sigma_det), so
//! the fit is a small constrained mixture rather than free Gaussians.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Mixture fit of a count histogram on the atom-number ladder.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HistogramFit {
    /// Detected click rate of a single atom (Hz).
    pub r_det: f64,
    /// Background click rate (Hz).
    pub r_bg: f64,
    /// Atom-to-atom standard deviation of the detected rate (Hz).
    pub sigma_r_det: f64,
    /// Mixture weight of each atom number, starting at zero atoms.
    pub weights: Vec<f64>,
    /// Pearson chi-square of the converged fit.
    pub chi2: f64,
    pub converged: bool,
    /// Window length used for the counts (s).
    pub window: f64,
}

impl HistogramFit {
    /// Fractional atom-to-atom spread of the detected rate.
    pub fn rel_spread(&self) -> f64 {
        self.sigma_r_det / self.r_det
    }

    /// Expected count of component `n`.
    pub fn component_mean(&self, n: usize) -> f64 {
        (self.r_bg + n as f64 * self.r_det) * self.window
    }

    /// Count variance of component `n`.
    pub fn component_variance(&self, n: usize) -> f64 {
        self.component_mean(n) + n as f64 * (self.sigma_r_det * self.window).powi(2)
    }
}

fn percentile(sorted: &[u64], q: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx] as f64
}

/// Parameters are packed as [logit_1..logit_nmax, ln r_det, ln sigma, ln r_bg];
/// component 0 keeps logit 0 for identifiability.
struct Model {
    n_max: usize,
    window: f64,
}

impl Model {
    fn unpack(&self, theta: &DVector<f64>) -> (Vec<f64>, f64, f64, f64) {
        let mut logits = vec![0.0];
        logits.extend(theta.iter().take(self.n_max).copied());
        let peak = logits.iter().cloned().fold(f64::MIN, f64::max);
        let exp: Vec<f64> = logits.iter().map(|l| (l - peak).exp()).collect();
        let norm: f64 = exp.iter().sum();
        let weights: Vec<f64> = exp.iter().map(|e| e / norm).collect();
        let r_det = theta[self.n_max].exp();
        let sigma = theta[self.n_max + 1].exp();
        let r_bg = theta[self.n_max + 2].exp();
        (weights, r_det, sigma, r_bg)
    }

    /// Expected histogram over counts 0..=k_max for `m` windows.
    fn expected(&self, theta: &DVector<f64>, k_max: usize, m: f64) -> Vec<f64> {
        let (weights, r_det, sigma, r_bg) = self.unpack(theta);
        let mut out = vec![0.0; k_max + 1];
        for (n, &wn) in weights.iter().enumerate() {
            let mu = (r_bg + n as f64 * r_det) * self.window;
            let var = (mu + n as f64 * (sigma * self.window).powi(2)).max(1e-9);
            let norm = wn * m / (var * std::f64::consts::TAU).sqrt();
            for (k, slot) in out.iter_mut().enumerate() {
                let z = (k as f64 - mu).powi(2) / (2.0 * var);
                if z < 40.0 {
                    *slot += norm * (-z).exp();
                }
            }
        }
        out
    }
}

fn pearson_residuals(hist: &[f64], model: &[f64]) -> DVector<f64> {
    DVector::from_iterator(
        hist.len(),
        hist.iter()
            .zip(model)
            .map(|(&h, &e)| (h - e) / (e + 1.0).sqrt()),
    )
}

/// Fit the atom-number mixture to per-window click counts.
///
/// `counts` holds one total per window of length `window` seconds; `n_max`
/// is the largest atom number allowed on the ladder. Starts are generated
/// deterministically from histogram percentiles, so repeated fits of the
/// same data agree bit for bit.
pub fn fit_count_histogram(counts: &[u64], window: f64, n_max: usize) -> Result<HistogramFit> {
    if counts.len() < 16 {
        return Err(Error::Analysis(format!(
            "histogram fit needs at least 16 windows, got {}",
            counts.len()
        )));
    }
    if !(window > 0.0) || n_max == 0 {
        return Err(Error::Analysis(
            "histogram fit needs a positive window and at least one atom component".into(),
        ));
    }

    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    let k_max = (percentile(&sorted, 1.0) * 1.3).ceil() as usize + 5;
    let m = counts.len() as f64;
    let mut hist = vec![0.0f64; k_max + 1];
    for &c in counts {
        let k = (c as usize).min(k_max);
        hist[k] += 1.0;
    }

    let model = Model { n_max, window };
    let lo = percentile(&sorted, 0.05).max(0.5);
    let hi = percentile(&sorted, 0.99).max(lo + 1.0);
    let r_bg0 = lo / window;

    // One start per hypothesis about how many atoms the brightest windows hold.
    let starts: Vec<DVector<f64>> = (1..=n_max)
        .map(|n_top| {
            let r0 = ((hi - lo) / n_top as f64 / window).max(1.0 / window);
            let mut theta = DVector::zeros(n_max + 3);
            theta[n_max] = r0.ln();
            theta[n_max + 1] = (0.1 * r0).ln();
            theta[n_max + 2] = r_bg0.ln();
            theta
        })
        .collect();

    let mut best: Option<(f64, DVector<f64>, bool)> = None;
    for start in starts {
        let (chi2, theta, ok) = levenberg_marquardt(&model, start, &hist, m);
        if best.as_ref().is_none_or(|(b, _, _)| chi2 < *b) {
            best = Some((chi2, theta, ok));
        }
    }
    let (chi2, theta, converged) = best.expect("at least one start");
    let (weights, r_det, sigma, r_bg) = model.unpack(&theta);

    Ok(HistogramFit {
        r_det,
        r_bg,
        sigma_r_det: sigma,
        weights,
        chi2,
        converged,
        window,
    })
}

fn levenberg_marquardt(
    model: &Model,
    mut theta: DVector<f64>,
    hist: &[f64],
    m: f64,
) -> (f64, DVector<f64>, bool) {
    let k_max = hist.len() - 1;
    let n_par = theta.len();
    let mut lambda = 1e-3;
    let mut cost = pearson_residuals(hist, &model.expected(&theta, k_max, m)).norm_squared();
    let mut converged = false;

    for _ in 0..200 {
        // Forward-difference Jacobian of the residual vector.
        let r0 = pearson_residuals(hist, &model.expected(&theta, k_max, m));
        let mut jac = DMatrix::zeros(hist.len(), n_par);
        for p in 0..n_par {
            let mut bumped = theta.clone();
            let h = 1e-6 * (1.0 + theta[p].abs());
            bumped[p] += h;
            let rp = pearson_residuals(hist, &model.expected(&bumped, k_max, m));
            jac.set_column(p, &((rp - &r0) / h));
        }

        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &r0;
        let mut improved = false;
        for _ in 0..12 {
            let mut damped = jtj.clone();
            for p in 0..n_par {
                damped[(p, p)] += lambda * (jtj[(p, p)].abs() + 1e-12);
            }
            let Some(step) = damped.lu().solve(&(-&jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let trial = &theta + &step;
            let trial_cost =
                pearson_residuals(hist, &model.expected(&trial, k_max, m)).norm_squared();
            if trial_cost < cost {
                let rel_drop = (cost - trial_cost) / cost.max(1e-300);
                theta = trial;
                cost = trial_cost;
                lambda = (lambda * 0.3).max(1e-12);
                improved = true;
                if rel_drop < 1e-10 || step.norm() < 1e-10 {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if converged || !improved {
            converged = converged || !improved && cost.is_finite();
            break;
        }
    }
    (cost, theta, converged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_moments_follow_the_ladder() {
        let fit = HistogramFit {
            r_det: 20_000.0,
            r_bg: 1_000.0,
            sigma_r_det: 2_000.0,
            weights: vec![0.5, 0.3, 0.2],
            chi2: 0.0,
            converged: true,
            window: 1e-3,
        };
        assert!((fit.component_mean(0) - 1.0).abs() < 1e-12);
        assert!((fit.component_mean(2) - 41.0).abs() < 1e-12);
        // Variance gains one (sigma w)^2 = 4 per atom on top of the mean.
        assert!((fit.component_variance(2) - (41.0 + 8.0)).abs() < 1e-12);
        assert!((fit.rel_spread() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(fit_count_histogram(&[1, 2, 3], 1e-3, 2).is_err());
        assert!(fit_count_histogram(&vec![5; 100], 0.0, 2).is_err());
        assert!(fit_count_histogram(&vec![5; 100], 1e-3, 0).is_err());
    }
}
