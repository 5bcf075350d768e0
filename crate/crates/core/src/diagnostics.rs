//! Residual and deviation calculators behind the verification suite.
//!
//! Each function measures one invariant numerically and returns the
//! measured number; callers compare against their tolerance. The finite
//! difference stencils here are deliberately independent of the analytic
//! derivative paths they check.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::classical::{
    eval_field_unchecked, ClassicalModeState, SolutionKind,
};
use crate::config::CavityConfig;
use crate::energy::hamiltonian_canonical;
use crate::fock::{
    canonical_ops, expectation, field_operator, hamiltonian_operator, ladder_pair, FieldOpKind,
    FockSpace, FockState, OpFamily,
};
use crate::linalg::expm;
use crate::math;
use crate::modes::{ModeRecord, ModeSet};
use crate::Result;

/// Max relative residual of the mode equation
/// `d2q/dt2 + omega^2 q = 0` under a central second difference with
/// step `1e-4 / omega`, sampled at `n_samples` times across one period.
pub fn ode_residual(state: &ClassicalModeState, omega: f64, n_samples: usize) -> f64 {
    let h = 1e-4 / omega;
    let period = 2.0 * core::f64::consts::PI / omega;
    let mut worst = 0.0_f64;
    for i in 0..n_samples {
        let t = period * i as f64 / n_samples as f64;
        let q = state.q(omega, t);
        let second =
            (state.q(omega, t + h) - q * 2.0 + state.q(omega, t - h)) / Complex64::from(h * h);
        let residual = (second + q * (omega * omega)).norm();
        let scale = omega * omega * math::max(q.norm(), state.c1.norm() + state.c2.norm());
        if scale > 0.0 {
            worst = math::max(worst, residual / scale);
        }
    }
    worst
}

/// Max relative deviation of the centrally differenced running
/// antiderivative from `q` itself.
pub fn antiderivative_residual(
    state: &ClassicalModeState,
    omega: f64,
    n_samples: usize,
) -> Result<f64> {
    let h = 1e-5 / omega;
    let period = 2.0 * core::f64::consts::PI / omega;
    let amp = state.c1.norm() + state.c2.norm();
    let mut worst = 0.0_f64;
    for i in 0..n_samples {
        let t = 0.05 + period * i as f64 / n_samples as f64;
        let diff = (state.q_prime(omega, t + h)? - state.q_prime(omega, t - h)?)
            / Complex64::from(2.0 * h);
        let residual = (diff - state.q(omega, t)).norm();
        if amp > 0.0 {
            worst = math::max(worst, residual / amp);
        }
    }
    Ok(worst)
}

/// Relative residuals of the two curl equations on an `nz x nt` grid:
/// `eps0 dEx/dt + dHy/dz` and `dEx/dz + mu0 dHy/dt`, each normalized by
/// the largest term entering it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResiduals {
    pub faraday_like: f64,
    pub ampere_like: f64,
}

pub fn maxwell_residuals(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    nz: usize,
    nt: usize,
) -> Result<MaxwellResiduals> {
    let hz = config.length / nz as f64;
    let ht = 1e-4 / mode_set.omega_max();
    let period = 2.0 * core::f64::consts::PI / mode_set.modes()[0].omega;

    let mut worst_amp = 0.0_f64;
    let mut worst_far = 0.0_f64;
    let mut scale_amp = 0.0_f64;
    let mut scale_far = 0.0_f64;

    for iz in 0..=nz {
        let z = iz as f64 * hz;
        for it in 0..nt {
            let t = period * it as f64 / nt as f64;
            let zp = eval_field_unchecked(states, mode_set, config, which, z + hz, t)?;
            let zm = eval_field_unchecked(states, mode_set, config, which, z - hz, t)?;
            let tp = eval_field_unchecked(states, mode_set, config, which, z, t + ht)?;
            let tm = eval_field_unchecked(states, mode_set, config, which, z, t - ht)?;

            let de_dt = (tp.ex - tm.ex) / Complex64::from(2.0 * ht);
            let dh_dz = (zp.hy - zm.hy) / Complex64::from(2.0 * hz);
            let de_dz = (zp.ex - zm.ex) / Complex64::from(2.0 * hz);
            let dh_dt = (tp.hy - tm.hy) / Complex64::from(2.0 * ht);

            let ampere = de_dt * config.eps0 + dh_dz;
            let faraday = de_dz + dh_dt * config.mu0;
            worst_amp = math::max(worst_amp, ampere.norm());
            worst_far = math::max(worst_far, faraday.norm());
            scale_amp = math::max(
                scale_amp,
                math::max((de_dt * config.eps0).norm(), dh_dz.norm()),
            );
            scale_far = math::max(
                scale_far,
                math::max(de_dz.norm(), (dh_dt * config.mu0).norm()),
            );
        }
    }
    Ok(MaxwellResiduals {
        ampere_like: if scale_amp > 0.0 { worst_amp / scale_amp } else { 0.0 },
        faraday_like: if scale_far > 0.0 { worst_far / scale_far } else { 0.0 },
    })
}

/// Relative spread of the canonical Hamiltonian over `n_samples` times
/// across one fundamental period.
pub fn energy_time_spread(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    which: SolutionKind,
    n_samples: usize,
) -> Result<f64> {
    let period = 2.0 * core::f64::consts::PI / mode_set.modes()[0].omega;
    let base = hamiltonian_canonical(states, mode_set, which, 0.0)?.re;
    let mut spread = 0.0_f64;
    for i in 0..n_samples {
        let t = period * i as f64 / n_samples as f64;
        let h = hamiltonian_canonical(states, mode_set, which, t)?.re;
        spread = math::max(spread, math::abs(h - base));
    }
    Ok(if base != 0.0 { spread / math::abs(base) } else { spread })
}

/// Structure of the truncated ladder commutator `[a, a^H]`: the largest
/// deviation of the interior diagonal from 1, the largest off-diagonal
/// magnitude, and the top-level defect entry (exactly `-(N-1)` in exact
/// arithmetic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationDefect {
    pub interior_deviation: f64,
    pub off_diagonal: f64,
    pub top_defect: f64,
}

pub fn truncation_defect(space: FockSpace) -> Result<TruncationDefect> {
    let (a, ad) = ladder_pair(space);
    let comm = a.commutator(&ad)?;
    let n = space.n_levels();
    let mut interior = 0.0_f64;
    let mut off = 0.0_f64;
    for r in 0..n {
        for c in 0..n {
            let v = comm.get(r, c);
            if r == c && r < n - 1 {
                interior = math::max(interior, (v - Complex64::ONE).norm());
            } else if r != c {
                off = math::max(off, v.norm());
            }
        }
    }
    Ok(TruncationDefect {
        interior_deviation: interior,
        off_diagonal: off,
        top_defect: comm.get(n - 1, n - 1).re,
    })
}

/// Max entry of `[p, q] - i hbar I` restricted to the interior levels.
pub fn canonical_commutator_deviation(space: FockSpace, hbar: f64) -> Result<f64> {
    let (q, p) = canonical_ops(space, 1.0, 1.0, hbar, OpFamily::Unprimed)?;
    let comm = p.commutator(&q)?;
    let n = space.n_levels();
    let interior = comm.leading_block(n - 1)?;
    let mut dev = 0.0_f64;
    for r in 0..n - 1 {
        for c in 0..n - 1 {
            let expect = if r == c {
                Complex64::new(0.0, hbar)
            } else {
                Complex64::ZERO
            };
            dev = math::max(dev, (interior.get(r, c) - expect).norm());
        }
    }
    Ok(dev)
}

/// Largest cross-family or cross-mode commutator magnitude on a two-mode
/// product space: canonical operators of independent factors must commute
/// identically.
pub fn cross_family_commutator_deviation(space: FockSpace, hbar: f64) -> Result<f64> {
    let n = space.n_levels();
    let dims = [n, n, n, n]; // mode1 unprimed, mode1 primed, mode2 unprimed, mode2 primed
    let (q, p) = canonical_ops(space, 1.0, 1.0, hbar, OpFamily::Unprimed)?;
    let mut worst = 0.0_f64;
    let slots = [0usize, 1, 2, 3];
    for (i, &si) in slots.iter().enumerate() {
        for &sj in slots.iter().skip(i + 1) {
            for left in [&q, &p] {
                for right in [&q, &p] {
                    let a = crate::fock::embed(left, si, &dims)?;
                    let b = crate::fock::embed(right, sj, &dims)?;
                    worst = math::max(worst, a.commutator(&b)?.max_abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Max relative deviation of the lowest `N-2` interior eigenvalues of the
/// oscillator Hamiltonian from `hbar omega (n + 1/2)`.
pub fn spectrum_deviation(mode: &ModeRecord, space: FockSpace, hbar: f64) -> Result<f64> {
    let h = hamiltonian_operator(mode, space, hbar, OpFamily::Unprimed)?;
    let n = space.n_levels();
    let interior = h.leading_block(n - 1)?;
    let eig = crate::linalg::hermitian_eigenvalues(&interior)?;
    let mut worst = 0.0_f64;
    for (level, &e) in eig.iter().take(n - 2).enumerate() {
        let expect = hbar * mode.omega * (level as f64 + 0.5);
        worst = math::max(worst, math::abs(e - expect) / expect);
    }
    Ok(worst)
}

/// Deviation of the Heisenberg-phase field operator from conjugation by
/// `exp(-i H t / hbar)` on the interior block, relative to the operator
/// scale.
pub fn unitary_evolution_deviation(
    mode: &ModeRecord,
    space: FockSpace,
    config: &CavityConfig,
    which: FieldOpKind,
    z: f64,
    t: f64,
) -> Result<f64> {
    let n = space.n_levels();
    let family = match which {
        FieldOpKind::E1 | FieldOpKind::H1 => OpFamily::Unprimed,
        _ => OpFamily::DoublePrimed,
    };
    let omega_t = field_operator(mode, space, config, which, z, t)?.leading_block(n - 1)?;
    let omega_0 = field_operator(mode, space, config, which, z, 0.0)?.leading_block(n - 1)?;
    let h = hamiltonian_operator(mode, space, config.hbar, family)?.leading_block(n - 1)?;
    let generator = h.scale(Complex64::new(0.0, -t / config.hbar));
    let u = expm(&generator)?;
    let evolved = u.dagger().mul(&omega_0)?.mul(&u)?;
    let dev = omega_t.sub(&evolved)?.max_abs();
    let scale = omega_t.max_abs();
    Ok(if scale > 0.0 { dev / scale } else { dev })
}

/// Max deviation of the coherent-state expectation of the first-family
/// electric operator from the classical first-solution field with matched
/// amplitudes, relative to the coherent field amplitude, over a sample
/// grid.
pub fn coherent_correspondence_deviation(
    mode: &ModeRecord,
    space: FockSpace,
    config: &CavityConfig,
    alpha: Complex64,
    n_samples: usize,
) -> Result<f64> {
    if alpha.norm() == 0.0 {
        return Ok(0.0);
    }
    let state = FockState::coherent(alpha, space.n_levels())?;
    // a_norm C1 = sqrt(hbar omega / V eps0) conj(alpha) matches the
    // quantum expectation; C2 = conj(C1) keeps the configuration real.
    let c_scale = math::sqrt(config.hbar / (2.0 * mode.mass * mode.omega));
    let classical = ClassicalModeState::new(alpha.conj() * c_scale, alpha * c_scale);
    let mode_set_single = single_mode_set(mode);

    let field_scale =
        2.0 * alpha.norm() * math::sqrt(config.hbar * mode.omega / (config.volume * config.eps0));
    let period = 2.0 * core::f64::consts::PI / mode.omega;
    let mut worst = 0.0_f64;
    for i in 0..n_samples {
        let frac = (i as f64 + 0.5) / n_samples as f64;
        let z = config.length * frac;
        let t = period * frac;
        let op = field_operator(mode, space, config, FieldOpKind::E1, z, t)?;
        let quantum = expectation(&state, &op)?;
        let sample = eval_field_unchecked(
            &[classical],
            &mode_set_single,
            config,
            SolutionKind::Sol1,
            z,
            t,
        )?;
        worst = math::max(worst, (quantum - sample.ex).norm() / field_scale);
    }
    Ok(worst)
}

fn single_mode_set(mode: &ModeRecord) -> ModeSet {
    ModeSet::from_records(alloc::vec![*mode])
}

/// Sampled point-symmetry deviation about the shared node at the origin:
/// the electric profile must be odd, the magnetic profile even, for both
/// partial solutions. Normalized by the largest sampled magnitude.
pub fn parity_deviation(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    n_samples: usize,
) -> Result<f64> {
    let period = 2.0 * core::f64::consts::PI / mode_set.modes()[0].omega;
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for i in 0..n_samples {
        let z = config.length * (i as f64 + 0.5) / (2 * n_samples) as f64;
        let t = period * (i as f64 + 0.25) / n_samples as f64;
        let plus = eval_field_unchecked(states, mode_set, config, which, z, t)?;
        let minus = eval_field_unchecked(states, mode_set, config, which, -z, t)?;
        worst = math::max(worst, (plus.ex + minus.ex).norm());
        worst = math::max(worst, (plus.hy - minus.hy).norm());
        scale = math::max(scale, math::max(plus.ex.norm(), plus.hy.norm()));
    }
    Ok(if scale > 0.0 { worst / scale } else { 0.0 })
}

/// Determinant of the normalized Gram matrix of the four sampled
/// component functions (real/imaginary parts of the combined electric and
/// magnetic fields). Nonsingular for generic complex amplitude sets.
pub fn four_component_gram_det(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    nz: usize,
    nt: usize,
) -> Result<f64> {
    let period = 2.0 * core::f64::consts::PI / mode_set.modes()[0].omega;
    let mut vectors: [Vec<f64>; 4] = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for iz in 0..nz {
        let z = config.length * (iz as f64 + 0.5) / nz as f64;
        for it in 0..nt {
            let t = period * (it as f64 + 0.5) / nt as f64;
            let s =
                eval_field_unchecked(states, mode_set, config, SolutionKind::Combined, z, t)?;
            vectors[0].push(s.ex.re);
            vectors[1].push(s.ex.im);
            vectors[2].push(s.hy.re);
            vectors[3].push(s.hy.im);
        }
    }
    let norms: Vec<f64> = vectors
        .iter()
        .map(|v| math::sqrt(v.iter().map(|x| x * x).sum()))
        .collect();
    let mut gram = [[0.0_f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            let denom = norms[i] * norms[j];
            gram[i][j] = if denom > 0.0 { dot / denom } else { 0.0 };
        }
    }
    Ok(det4(&gram))
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let mut pivot = col;
        for row in (col + 1)..4 {
            if math::abs(a[row][col]) > math::abs(a[pivot][col]) {
                pivot = row;
            }
        }
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    det
}

/// Largest deviation of the quadrature Hamiltonian from the canonical one
/// at the requested resolution, relative to the canonical value.
pub fn energy_form_agreement(
    states: &[ClassicalModeState],
    mode_set: &ModeSet,
    config: &CavityConfig,
    which: SolutionKind,
    t: f64,
    n_quadrature: usize,
) -> Result<f64> {
    let canonical = hamiltonian_canonical(states, mode_set, which, t)?;
    let quad =
        crate::energy::hamiltonian_integral(states, mode_set, config, which, t, n_quadrature)?;
    Ok((quad.value - canonical).norm() / canonical.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::build_mode_set;
    use core::f64::consts::PI;

    fn real_states() -> Vec<ClassicalModeState> {
        alloc::vec![
            ClassicalModeState::new(Complex64::new(0.6, 0.3), Complex64::new(0.6, -0.3)),
            ClassicalModeState::new(Complex64::new(-0.2, 0.5), Complex64::new(-0.2, -0.5)),
            ClassicalModeState::new(Complex64::new(0.4, -0.7), Complex64::new(0.4, 0.7)),
        ]
    }

    #[test]
    fn maxwell_residuals_small_for_both_solutions() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 3, None).unwrap();
        let states = real_states();
        for which in [SolutionKind::Sol1, SolutionKind::Sol2, SolutionKind::Combined] {
            // The z step dominates the truncation: (k_max L / nz)^2 / 6.
            let r = maxwell_residuals(&states, &set, &cfg, which, 2000, 10).unwrap();
            assert!(r.ampere_like < 1e-5, "{which:?} ampere {}", r.ampere_like);
            assert!(r.faraday_like < 1e-5, "{which:?} faraday {}", r.faraday_like);
        }
    }

    #[test]
    fn gram_nonsingular_for_generic_amplitudes() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 2, None).unwrap();
        let states = [
            ClassicalModeState::new(Complex64::new(0.8, 0.2), Complex64::new(-0.1, 0.4)),
            ClassicalModeState::new(Complex64::new(0.3, -0.6), Complex64::new(0.5, 0.1)),
        ];
        let det = four_component_gram_det(&states, &set, &cfg, 8, 8).unwrap();
        assert!(det.abs() > 1e-6, "{det}");
    }

    #[test]
    fn truncation_defect_structure() {
        for n in [2usize, 4, 9, 17] {
            let d = truncation_defect(FockSpace::new(n).unwrap()).unwrap();
            assert!(d.interior_deviation <= 1e-13, "N={n}");
            assert_eq!(d.off_diagonal, 0.0);
            assert!((d.top_defect + (n as f64 - 1.0)).abs() < 1e-12, "N={n}");
        }
    }

    #[test]
    fn cross_family_commutators_vanish() {
        let dev = cross_family_commutator_deviation(FockSpace::new(4).unwrap(), 1.0).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn unitary_evolution_matches_phases() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 1, None).unwrap();
        let mode = set.modes()[0];
        let space = FockSpace::new(10).unwrap();
        for which in [FieldOpKind::E1, FieldOpKind::H1, FieldOpKind::E2, FieldOpKind::H2] {
            let dev =
                unitary_evolution_deviation(&mode, space, &cfg, which, 1.1, 0.9).unwrap();
            assert!(dev < 1e-8, "{which:?}: {dev}");
        }
    }

    #[test]
    fn coherent_correspondence_tight() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 1, None).unwrap();
        let space = FockSpace::new(34).unwrap();
        for alpha in [
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.5),
            Complex64::new(-1.2, 1.4),
        ] {
            let dev =
                coherent_correspondence_deviation(&set.modes()[0], space, &cfg, alpha, 16)
                    .unwrap();
            assert!(dev < 1e-6, "alpha={alpha}: {dev}");
        }
    }
}
