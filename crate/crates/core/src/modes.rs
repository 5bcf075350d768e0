//! Cavity mode bookkeeping: wavenumbers, frequencies, and normalization
//! amplitudes for the standing-wave spectrum.

use alloc::vec::Vec;

use crate::config::CavityConfig;
use crate::math;
use crate::{CoreError, Result};

/// Per-mode constants of the cavity spectrum.
///
/// `k = alpha pi / L`, `omega = c k`, and the normalization amplitude
/// `a_norm = sqrt(2 omega^2 m / (V eps0))` that scales the mode profile
/// to oscillator variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRecord {
    /// Mode index, starting at 1.
    pub alpha: u32,
    /// Wavenumber, 1/m.
    pub k: f64,
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Normalization amplitude.
    pub a_norm: f64,
    /// Oscillator-analogy mass parameter.
    pub mass: f64,
}

/// Ordered set of mode records, indices strictly increasing from 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    modes: Vec<ModeRecord>,
}

impl ModeSet {
    pub(crate) fn from_records(modes: Vec<ModeRecord>) -> Self {
        Self { modes }
    }

    pub fn modes(&self) -> &[ModeRecord] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Largest frequency in the set. The set is never empty, so this is
    /// the last record's frequency.
    pub fn omega_max(&self) -> f64 {
        self.modes.last().map(|m| m.omega).unwrap_or(0.0)
    }

    /// Largest mode index in the set.
    pub fn alpha_max(&self) -> u32 {
        self.modes.last().map(|m| m.alpha).unwrap_or(0)
    }
}

/// Build the records for modes alpha = 1..n_modes.
///
/// `masses`, when given, supplies one mass parameter per mode; otherwise
/// every mode uses `config.m_default`.
pub fn build_mode_set(
    config: &CavityConfig,
    n_modes: usize,
    masses: Option<&[f64]>,
) -> Result<ModeSet> {
    if n_modes == 0 {
        return Err(CoreError::InvalidParameter {
            field: "n_modes",
            value: 0.0,
            requirement: "must be at least 1",
        });
    }
    if let Some(ms) = masses {
        if ms.len() != n_modes {
            return Err(CoreError::StateCountMismatch {
                modes: n_modes,
                states: ms.len(),
            });
        }
    }

    let mut modes = Vec::with_capacity(n_modes);
    for idx in 0..n_modes {
        let mass = masses.map(|ms| ms[idx]).unwrap_or(config.m_default);
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(CoreError::InvalidParameter {
                field: "m",
                value: mass,
                requirement: "must be finite and positive",
            });
        }
        let alpha = (idx + 1) as u32;
        let k = alpha as f64 * core::f64::consts::PI / config.length;
        let omega = config.c * k;
        let a_norm = math::sqrt(2.0 * omega * omega * mass / (config.volume * config.eps0));
        modes.push(ModeRecord {
            alpha,
            k,
            omega,
            a_norm,
            mass,
        });
    }
    Ok(ModeSet { modes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn natural_pi() -> CavityConfig {
        CavityConfig::natural(PI, 1.0).unwrap()
    }

    #[test]
    fn fundamental_mode_unit_cavity() {
        // L = pi, c = 1 puts the fundamental exactly at k = omega = 1.
        let set = build_mode_set(&natural_pi(), 1, None).unwrap();
        let m = set.modes()[0];
        assert_eq!(m.k, 1.0);
        assert_eq!(m.omega, 1.0);
    }

    #[test]
    fn normalization_amplitude_sqrt2() {
        // omega = m = V = eps0 = 1 gives a_norm = sqrt(2).
        let set = build_mode_set(&natural_pi(), 1, None).unwrap();
        assert!((set.modes()[0].a_norm - 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn linear_spectrum() {
        let set = build_mode_set(&natural_pi(), 3, None).unwrap();
        let omegas: Vec<f64> = set.modes().iter().map(|m| m.omega).collect();
        assert_eq!(omegas, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn dispersion_exact_to_ulp() {
        let cfg = CavityConfig::si(0.01, 1e-6).unwrap();
        let set = build_mode_set(&cfg, 5, None).unwrap();
        for m in set.modes() {
            let diff = (m.omega - cfg.c * m.k).abs();
            assert!(diff <= f64::EPSILON * m.omega, "mode {}: {diff}", m.alpha);
        }
    }

    #[test]
    fn indices_strictly_increasing() {
        let set = build_mode_set(&natural_pi(), 6, None).unwrap();
        for pair in set.modes().windows(2) {
            assert!(pair[1].alpha > pair[0].alpha);
        }
    }

    #[test]
    fn zero_modes_rejected() {
        assert!(build_mode_set(&natural_pi(), 0, None).is_err());
    }

    #[test]
    fn negative_mass_rejected() {
        let err = build_mode_set(&natural_pi(), 2, Some(&[1.0, -1.0])).unwrap_err();
        assert!(matches!(err, CoreError::InvalidParameter { field: "m", .. }));
    }

    #[test]
    fn mass_list_length_checked() {
        assert!(build_mode_set(&natural_pi(), 3, Some(&[1.0])).is_err());
    }
}
