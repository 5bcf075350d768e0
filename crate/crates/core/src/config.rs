//! Cavity geometry, unit system, and physical constants.

use crate::{CoreError, Result};

/// Unit system the configuration is expressed in.
///
/// All three keep `c^2 * eps0 * mu0 = 1`, which ties the dispersion
/// relation `omega = c k` to the mode oscillator equation. `Cgs` is the
/// Gaussian convention with `eps0 = mu0 = 1` (so `c = 1` here as well);
/// the current/charge routines evaluate in this system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    Si,
    Cgs,
    Natural,
}

/// Speed of light in vacuum, m/s.
pub const C_SI: f64 = 299_792_458.0;
/// Vacuum permittivity, F/m.
pub const EPS0_SI: f64 = 8.854_187_812_8e-12;
/// Reduced Planck constant, J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Cavity geometry plus the constants every operation needs.
///
/// `m_default` is the oscillator-analogy mass parameter assigned to modes
/// that do not carry an explicit one; it cancels in the field operators
/// but not in the classical amplitudes, so it stays configurable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Cavity length along z, m.
    pub length: f64,
    /// Cavity volume, m^3.
    pub volume: f64,
    /// Speed of light.
    pub c: f64,
    /// Vacuum permittivity.
    pub eps0: f64,
    /// Vacuum permeability.
    pub mu0: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    pub unit_system: UnitSystem,
    /// Mass parameter used when a mode does not specify its own.
    pub m_default: f64,
}

impl CavityConfig {
    /// Natural units: c = eps0 = mu0 = hbar = 1.
    pub fn natural(length: f64, volume: f64) -> Result<Self> {
        Self::new(length, volume, 1.0, 1.0, 1.0, 1.0, UnitSystem::Natural, 1.0)
    }

    /// Gaussian CGS convention as used by the current/charge module:
    /// eps0 = mu0 = 1 with time scaled so c = 1.
    pub fn cgs(length: f64, volume: f64, hbar: f64) -> Result<Self> {
        Self::new(length, volume, 1.0, 1.0, 1.0, hbar, UnitSystem::Cgs, 1.0)
    }

    /// SI constants; mu0 is derived from eps0 and c so the consistency
    /// invariant holds to round-off.
    pub fn si(length: f64, volume: f64) -> Result<Self> {
        let mu0 = 1.0 / (EPS0_SI * C_SI * C_SI);
        Self::new(
            length,
            volume,
            C_SI,
            EPS0_SI,
            mu0,
            HBAR_SI,
            UnitSystem::Si,
            1.0,
        )
    }

    /// Fully explicit constructor. Checks positivity of every constant,
    /// the unit-system conventions, and `c^2 eps0 mu0 = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        length: f64,
        volume: f64,
        c: f64,
        eps0: f64,
        mu0: f64,
        hbar: f64,
        unit_system: UnitSystem,
        m_default: f64,
    ) -> Result<Self> {
        require_positive("L", length)?;
        require_positive("V", volume)?;
        require_positive("c", c)?;
        require_positive("eps0", eps0)?;
        require_positive("mu0", mu0)?;
        require_positive("hbar", hbar)?;
        require_positive("m_default", m_default)?;

        match unit_system {
            UnitSystem::Natural => {
                require_unit("c", c)?;
                require_unit("eps0", eps0)?;
                require_unit("mu0", mu0)?;
            }
            UnitSystem::Cgs => {
                require_unit("eps0", eps0)?;
                require_unit("mu0", mu0)?;
            }
            UnitSystem::Si => {}
        }

        // omega = c k and the mode equation d^2q/dt^2 = -(k^2/eps0 mu0) q
        // are only mutually consistent when c^2 eps0 mu0 = 1.
        let consistency = c * c * eps0 * mu0;
        if (consistency - 1.0).abs() > 1e-9 {
            return Err(CoreError::InvalidParameter {
                field: "c",
                value: consistency,
                requirement: "c^2 * eps0 * mu0 must equal 1",
            });
        }

        Ok(Self {
            length,
            volume,
            c,
            eps0,
            mu0,
            hbar,
            unit_system,
            m_default,
        })
    }

    /// Cross-section area implied by treating the volume as length times
    /// a uniform transverse section.
    pub fn cross_section(&self) -> f64 {
        self.volume / self.length
    }
}

fn require_positive(field: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(CoreError::InvalidParameter {
            field,
            value,
            requirement: "must be finite and positive",
        });
    }
    Ok(())
}

fn require_unit(field: &'static str, value: f64) -> Result<()> {
    if value != 1.0 {
        return Err(CoreError::InvalidParameter {
            field,
            value,
            requirement: "must equal 1 in this unit system",
        });
    }
    Ok(())
}
