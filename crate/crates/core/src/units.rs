//! Physical constants and unit conversions.
//!
//! All internal quantities are SI: angular frequencies in rad/s, lengths in
//! metres, times in seconds, energies in joules. Configuration files use
//! laboratory units (ordinary frequencies in MHz, lengths in µm/nm/mm,
//! temperatures in mK/µK); the helpers here convert between the two.

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Planck constant, J s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;

/// Atomic mass unit, kg.
pub const AMU: f64 = 1.660_539_066_60e-27;

/// Standard gravitational acceleration, m/s².
pub const G_EARTH: f64 = 9.806_65;

/// Ordinary frequency in MHz -> angular frequency in rad/s.
pub fn mhz_to_angular(nu_mhz: f64) -> f64 {
    nu_mhz * 1e6 * std::f64::consts::TAU
}

/// Angular frequency in rad/s -> ordinary frequency in MHz.
pub fn angular_to_mhz(omega: f64) -> f64 {
    omega / (1e6 * std::f64::consts::TAU)
}

/// Ordinary frequency in kHz -> angular frequency in rad/s.
pub fn khz_to_angular(nu_khz: f64) -> f64 {
    nu_khz * 1e3 * std::f64::consts::TAU
}

/// Micrometres -> metres.
pub fn um_to_m(um: f64) -> f64 {
    um * 1e-6
}

/// Metres -> micrometres.
pub fn m_to_um(m: f64) -> f64 {
    m * 1e6
}

/// Nanometres -> metres.
pub fn nm_to_m(nm: f64) -> f64 {
    nm * 1e-9
}

/// Millimetres -> metres.
pub fn mm_to_m(mm: f64) -> f64 {
    mm * 1e-3
}

/// Centimetres -> metres.
pub fn cm_to_m(cm: f64) -> f64 {
    cm * 1e-2
}

/// Microseconds -> seconds.
pub fn us_to_s(us: f64) -> f64 {
    us * 1e-6
}

/// Milliseconds -> seconds.
pub fn ms_to_s(ms: f64) -> f64 {
    ms * 1e-3
}

/// Nanoseconds -> seconds.
pub fn ns_to_s(ns: f64) -> f64 {
    ns * 1e-9
}

/// Millikelvin -> joules (thermal energy k_B T).
pub fn mk_to_joule(mk: f64) -> f64 {
    mk * 1e-3 * KB
}

/// Microkelvin -> joules (thermal energy k_B T).
pub fn uk_to_joule(uk: f64) -> f64 {
    uk * 1e-6 * KB
}

/// Joules -> microkelvin.
pub fn joule_to_uk(e: f64) -> f64 {
    e / KB * 1e6
}

#[cfg(test)]
mod tests {
    use super::*;

    // Config values travel config unit -> SI -> config unit; the parameter
    // layer promises 12 significant digits survive that trip.
    fn round_trip_ok(x: f64, fwd: impl Fn(f64) -> f64, back: impl Fn(f64) -> f64) -> bool {
        let y = back(fwd(x));
        (y - x).abs() <= 1e-12 * x.abs()
    }

    #[test]
    fn frequency_round_trip_holds_to_12_digits() {
        for &nu in &[0.001, 0.3, 1.0, 2.0, 3.0, 5.0, 15.0, 50.0, 100.0, 123.456_789_012] {
            assert!(
                round_trip_ok(nu, mhz_to_angular, angular_to_mhz),
                "round trip failed for {nu} MHz"
            );
        }
    }

    #[test]
    fn length_and_time_round_trips_hold() {
        assert!(round_trip_ok(16.0, um_to_m, m_to_um));
        assert!(round_trip_ok(0.137, um_to_m, m_to_um));
        assert!(round_trip_ok(2.5, mk_to_joule, |j| j / KB * 1e3));
        assert!(round_trip_ok(17.3, us_to_s, |s| s * 1e6));
    }
}
