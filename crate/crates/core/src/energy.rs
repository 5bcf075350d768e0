//! Field Hamiltonians: canonical per-mode sums and the volume-integral
//! form evaluated by composite Simpson quadrature.

use num_complex::Complex64;

use crate::classical::{eval_field, ClassicalModeState, SolutionKind};
use crate::config::CavityConfig;
use crate::modes::ModeSet;
use crate::Result;

/// Outcome of the quadrature Hamiltonian. `under_resolved` is raised when
/// the grid carries fewer than 8 intervals per highest mode index, where
/// the composite rule can no longer be trusted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEnergy {
    pub value: Complex64,
    pub under_resolved: bool,
}

/// Canonical Hamiltonian `1/2 sum_alpha [ m omega^2 q^2 + p^2 / m ]`.
///
/// For the first solution the pair is `(q, p = m dq/dt)`; for the second
/// it is `(q'' = omega q', p'' = m omega q)` built on the centered
/// antiderivative. The value is complex so reality can be asserted by the
/// caller: for real configurations the imaginary part is round-off and
/// the real part is time-independent.
pub fn hamiltonian_canonical(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    which: SolutionKind,
    t: f64,
) -> Result<Complex64> {
    crate::classical::check_states(states, mode_set)?;
    let mut total = Complex64::ZERO;
    for (mode, state) in mode_set.modes().iter().zip(states) {
        let (q, p) = match which {
            SolutionKind::Sol1 => {
                let q = state.q(mode.omega, t);
                let p = state.q_dot(mode.omega, t) * mode.mass;
                (q, p)
            }
            SolutionKind::Sol2 => {
                let q = state.q_prime_centered(mode.omega, t)? * mode.omega;
                let p = state.q(mode.omega, t) * (mode.mass * mode.omega);
                (q, p)
            }
            SolutionKind::Combined => return Err(combined_not_an_energy()),
        };
        total += (q * q * (mode.mass * mode.omega * mode.omega) + p * p / mode.mass) * 0.5;
    }
    Ok(total)
}

fn combined_not_an_energy() -> crate::CoreError {
    crate::CoreError::InvalidParameter {
        field: "which",
        value: 0.0,
        requirement: "the Hamiltonian is defined per partial solution, not for the combined field",
    }
}

/// Volume-integral Hamiltonian
/// `1/2 integral (eps0 Ex^2 + mu0 Hy^2) dV`
/// over the cavity, with cross-section area `V/L` and an `n_quadrature`-
/// interval composite Simpson rule along z. Converges to the canonical
/// form as the grid refines.
///
/// `n_quadrature` is rounded up to the next even count.
pub fn hamiltonian_integral(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    t: f64,
    n_quadrature: usize,
) -> Result<QuadratureEnergy> {
    crate::classical::check_states(states, mode_set)?;
    if which == SolutionKind::Combined {
        return Err(combined_not_an_energy());
    }
    let n = n_quadrature.max(2);
    let n = if n % 2 == 0 { n } else { n + 1 };
    let under_resolved = n < 8 * mode_set.alpha_max() as usize;

    let h = config.length / n as f64;
    let density = |z: f64| -> Result<Complex64> {
        let sample = eval_field(states, mode_set, config, which, z, t)?;
        Ok((sample.ex * sample.ex * config.eps0 + sample.hy * sample.hy * config.mu0) * 0.5)
    };

    // Composite Simpson with fixed summation order.
    let mut acc = density(0.0)? + density(config.length)?;
    for i in 1..n {
        let z = i as f64 * h;
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += density(z)? * w;
    }
    let line_integral = acc * (h / 3.0);
    Ok(QuadratureEnergy {
        value: line_integral * config.cross_section(),
        under_resolved,
    })
}
