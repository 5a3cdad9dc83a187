//! Thermal occupation numbers and coupling-spread geometry.

use crate::units::{KB, PLANCK};

/// Mean vibrational quantum number of a harmonic mode at temperature `temp_k`.
///
/// Bose factor 1 / (exp(h nu / kT) - 1) for ordinary frequency `freq_hz`.
pub fn thermal_occupation(freq_hz: f64, temp_k: f64) -> f64 {
    let x = PLANCK * freq_hz / (KB * temp_k);
    1.0 / (x.exp() - 1.0)
}

/// Ground-state probability of a thermal harmonic mode, 1 - exp(-h nu / kT).
pub fn ground_fraction(freq_hz: f64, temp_k: f64) -> f64 {
    let x = PLANCK * freq_hz / (KB * temp_k);
    1.0 - (-x).exp()
}

/// Temperature giving mean occupation `n_bar` in a mode at `freq_hz`.
pub fn temperature_from_occupation(freq_hz: f64, n_bar: f64) -> f64 {
    PLANCK * freq_hz / (KB * (1.0 + 1.0 / n_bar).ln())
}

/// Kinetic temperature of one translational degree of freedom,
/// m <v^2> / k_B.
pub fn kinetic_temperature(mass: f64, mean_v_sq_1d: f64) -> f64 {
    mass * mean_v_sq_1d / KB
}

/// Fractional coupling spread inferred from the detected-rate spread.
///
/// The rate scales as the coupling squared, so a small fractional rate
/// spread is twice the fractional coupling spread.
pub fn coupling_spread(rel_rate_spread: f64) -> f64 {
    0.5 * rel_rate_spread
}

/// Radius at which a Gaussian mode of waist `waist` has dropped by the
/// fractional amount `spread`: the transverse extent of occupied wells
/// consistent with a given coupling spread.
pub fn occupied_radius(waist: f64, spread: f64) -> f64 {
    if spread <= 0.0 {
        return 0.0;
    }
    if spread >= 1.0 {
        return f64::INFINITY;
    }
    waist * (-(1.0 - spread).ln()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupation_and_temperature_invert_each_other() {
        let nu = 679.3e3;
        for temp in [10e-6, 50e-6, 288e-6, 1e-3] {
            let n = thermal_occupation(nu, temp);
            let back = temperature_from_occupation(nu, n);
            assert!(
                (back - temp).abs() < 1e-9 * temp,
                "round trip at {temp} K gave {back}"
            );
        }
    }

    #[test]
    fn classical_limit_recovers_equipartition() {
        // kT >> h nu: n_bar h nu -> kT.
        let nu = 100e3;
        let temp = 1e-3;
        let n = thermal_occupation(nu, temp);
        let energy = n * PLANCK * nu;
        assert!((energy - KB * temp).abs() < 0.01 * KB * temp, "energy {energy}");
    }

    #[test]
    fn ground_fraction_limits_are_correct() {
        assert!(ground_fraction(1e6, 1e-9) > 0.999);
        assert!(ground_fraction(1e3, 1e-3) < 0.001);
    }

    #[test]
    fn occupied_radius_matches_the_mode_profile() {
        // A mode exp(-r^2/w^2) has fallen by 10% where r = w sqrt(-ln 0.9).
        let w = 29.6e-6;
        let r = occupied_radius(w, 0.1);
        let profile = (-(r / w).powi(2)).exp();
        assert!((profile - 0.9).abs() < 1e-12);
        assert_eq!(occupied_radius(w, 0.0), 0.0);
        assert!(occupied_radius(w, 1.0).is_infinite());
    }

    #[test]
    fn kinetic_temperature_is_equipartition() {
        // 85 amu at <v^2> = 0.01 m^2/s^2.
        let m = 1.40999e-25;
        let t = kinetic_temperature(m, 0.01);
        assert!((t - m * 0.01 / KB).abs() < 1e-18);
    }
}
