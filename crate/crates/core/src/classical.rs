//! Classical evolution of both partial solutions and reconstruction of
//! the electric/magnetic field profiles.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::math;
use crate::modes::{ModeRecord, ModeSet};
use crate::{CoreError, Result};

/// Complex amplitude pair of one mode.
///
/// The mode amplitude is `q(t) = c1 e^{i omega t} + c2 e^{-i omega t}`.
/// A configuration is called real when `c2 = conj(c1)`, which makes
/// `q(t)` real for all times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalModeState {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl ClassicalModeState {
    pub fn new(c1: Complex64, c2: Complex64) -> Self {
        Self { c1, c2 }
    }

    /// State with no excitation.
    pub fn vacuum() -> Self {
        Self {
            c1: Complex64::ZERO,
            c2: Complex64::ZERO,
        }
    }

    /// Real configuration `q(t) = amp cos(omega t)`.
    pub fn cosine(amp: f64) -> Self {
        Self {
            c1: Complex64::new(amp / 2.0, 0.0),
            c2: Complex64::new(amp / 2.0, 0.0),
        }
    }

    /// Whether `c2 = conj(c1)` within 1e-12 relative.
    pub fn is_real_configuration(&self) -> bool {
        let scale = math::max(self.c1.norm(), self.c2.norm());
        if scale == 0.0 {
            return true;
        }
        (self.c2 - self.c1.conj()).norm() <= 1e-12 * scale
    }

    /// Mode amplitude `q(t)`.
    pub fn q(&self, omega: f64, t: f64) -> Complex64 {
        let phase = math::expi(omega * t);
        self.c1 * phase + self.c2 * phase.conj()
    }

    /// Time derivative `dq/dt`.
    pub fn q_dot(&self, omega: f64, t: f64) -> Complex64 {
        let phase = math::expi(omega * t);
        let i_omega = Complex64::new(0.0, omega);
        self.c1 * i_omega * phase - self.c2 * i_omega * phase.conj()
    }

    /// Running antiderivative `integral_0^t q(tau) dtau`.
    ///
    /// Fails for omega = 0, where the exponentials degenerate.
    pub fn q_prime(&self, omega: f64, t: f64) -> Result<Complex64> {
        if omega == 0.0 {
            return Err(CoreError::SingularFrequency);
        }
        let i_omega = Complex64::new(0.0, omega);
        let phase = math::expi(omega * t);
        Ok((self.c1 * (phase - 1.0) + self.c2 * (1.0 - phase.conj())) / i_omega)
    }

    /// Antiderivative of `q` with the integration constant chosen so the
    /// result is purely oscillatory (zero time average):
    /// `(c1 e^{i omega t} - c2 e^{-i omega t}) / (i omega)`.
    ///
    /// This is the branch entering the second-solution field profiles and
    /// canonical variables; it differs from [`Self::q_prime`] by the
    /// constant `(c1 - c2)/(i omega)` and satisfies
    /// `dq/dt = -omega^2 * q_prime_centered` identically.
    pub fn q_prime_centered(&self, omega: f64, t: f64) -> Result<Complex64> {
        if omega == 0.0 {
            return Err(CoreError::SingularFrequency);
        }
        let i_omega = Complex64::new(0.0, omega);
        let phase = math::expi(omega * t);
        Ok((self.c1 * phase - self.c2 * phase.conj()) / i_omega)
    }
}

/// Evaluate `q(t) = c1 e^{i omega t} + c2 e^{-i omega t}`.
pub fn eval_q(state: &ClassicalModeState, omega: f64, t: f64) -> Complex64 {
    state.q(omega, t)
}

/// Evaluate the running antiderivative of `q` from 0 to `t`.
pub fn eval_q_prime(state: &ClassicalModeState, omega: f64, t: f64) -> Result<Complex64> {
    state.q_prime(omega, t)
}

/// The arbitrary time function completing the general magnetic-field
/// expression, evaluated for one mode at `(z, t)`:
///
/// `f = a_norm cos(k z) [ (k/mu0) q_prime - (eps0/k) dq/dt ]`.
///
/// Composing it with the first-solution magnetic profile reproduces the
/// second-solution profile built from the running antiderivative, which
/// is the consistency check this function exists for.
pub fn eval_f_alpha(
    state: &ClassicalModeState,
    mode: &ModeRecord,
    config: &CavityConfig,
    z: f64,
    t: f64,
) -> Result<Complex64> {
    let q_prime = state.q_prime(mode.omega, t)?;
    let q_dot = state.q_dot(mode.omega, t);
    let bracket = q_prime * (mode.k / config.mu0) - q_dot * (config.eps0 / mode.k);
    Ok(bracket * mode.a_norm * math::cos(mode.k * z))
}

/// Which reconstruction a field sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// Textbook partial solution: amplitude in E, its derivative in H.
    Sol1,
    /// Second partial solution: antiderivative in H, amplitude in E.
    Sol2,
    /// Complex combination `E1 + i E2`, `H2 + i H1`.
    Combined,
}

/// Electric and magnetic field values at one space-time point.
///
/// `ex` multiplies the x unit vector, `hy` the y unit vector; the single
/// linear polarization of the model is encoded by that convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub z: f64,
    pub t: f64,
    pub ex: Complex64,
    pub hy: Complex64,
    pub which: SolutionKind,
}

/// Reconstruct the field of the requested solution at `(z, t)`.
///
/// First solution: `Ex = sum a q sin(k z)`, `Hy = sum a (eps0/k) dq/dt cos(k z)`.
/// Second solution: `Ex = sum a dq'/dt sin(k z)` (which is `sum a q sin`)
/// and `Hy = -(1/mu0) sum k a q' cos(k z)` with the centered
/// antiderivative; that sign and constant are the unique choice under
/// which both partial solutions satisfy the two curl equations for every
/// amplitude configuration. The combined sample is `E1 + i E2`,
/// `H2 + i H1`.
pub fn eval_field(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    z: f64,
    t: f64,
) -> Result<FieldSample> {
    if z < 0.0 || z > config.length {
        return Err(CoreError::OutOfCavity {
            z,
            length: config.length,
        });
    }
    eval_field_unchecked(states, mode_set, config, which, z, t)
}

/// Same as [`eval_field`] without the cavity-domain check; used by the
/// symmetry diagnostics that sample the analytic continuation around a
/// node.
pub(crate) fn eval_field_unchecked(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    z: f64,
    t: f64,
) -> Result<FieldSample> {
    check_states(states, mode_set)?;
    let (ex, hy) = match which {
        SolutionKind::Sol1 => sol1_fields(states, mode_set, config, z, t),
        SolutionKind::Sol2 => sol2_fields(states, mode_set, config, z, t)?,
        SolutionKind::Combined => {
            let (e1, h1) = sol1_fields(states, mode_set, config, z, t);
            let (e2, h2) = sol2_fields(states, mode_set, config, z, t)?;
            let i = Complex64::I;
            (e1 + i * e2, h2 + i * h1)
        }
    };
    Ok(FieldSample {
        z,
        t,
        ex,
        hy,
        which,
    })
}

fn sol1_fields(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    z: f64,
    t: f64,
) -> (Complex64, Complex64) {
    let mut ex = Complex64::ZERO;
    let mut hy = Complex64::ZERO;
    for (mode, state) in mode_set.modes().iter().zip(states) {
        let q = state.q(mode.omega, t);
        let q_dot = state.q_dot(mode.omega, t);
        ex += q * mode.a_norm * math::sin(mode.k * z);
        hy += q_dot * mode.a_norm * (config.eps0 / mode.k) * math::cos(mode.k * z);
    }
    (ex, hy)
}

fn sol2_fields(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    z: f64,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    let mut ex = Complex64::ZERO;
    let mut hy = Complex64::ZERO;
    for (mode, state) in mode_set.modes().iter().zip(states) {
        // d(q')/dt = q exactly, so the electric profile reuses q.
        let q = state.q(mode.omega, t);
        let q_prime = state.q_prime_centered(mode.omega, t)?;
        ex += q * mode.a_norm * math::sin(mode.k * z);
        hy -= q_prime * mode.a_norm * (mode.k / config.mu0) * math::cos(mode.k * z);
    }
    Ok((ex, hy))
}

pub(crate) fn check_states(states: &[ClassicalModeState], mode_set: &ModeSet) -> Result<()> {
    if states.len() != mode_set.len() {
        return Err(CoreError::StateCountMismatch {
            modes: mode_set.len(),
            states: states.len(),
        });
    }
    Ok(())
}

/// Convenience: one vacuum state per mode.
pub fn vacuum_states(mode_set: &ModeSet) -> Vec<ClassicalModeState> {
    (0..mode_set.len())
        .map(|_| ClassicalModeState::vacuum())
        .collect()
}
