//! Quantum charge-density operators for both gauge currents, the charge
//! quantum, and the monopole-ratio report.
//!
//! The two canonical families occupy independent tensor factors; for a
//! mode set of M modes the operators act on the product
//! `U_1 (x) P_1 (x) ... (x) U_M (x) P_M` (unprimed factor first per
//! mode, modes ordered by index).
//!
//! The electric operator is assembled term by term in its printed
//! eight-sum order with a global factor 1/2 (the quadratic-form factor of
//! the Lagrangian), which makes the interior number-state expectation
//! come out as `-(i e omega / hbar V)[K1/eps0 sin^2 + K2/mu0 cos^2]`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::fock::{embed, ladder_pair, FockSpace, FockState};
use crate::math;
use crate::matrix::{OperatorMatrix, MAX_DIM};
use crate::modes::{ModeRecord, ModeSet};
use crate::{CoreError, Result};

/// Which charge-density operator to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeKind {
    /// Commutator/squared-ladder sums of both families; purely imaginary
    /// number-state expectation.
    Electric,
    /// Cross-family anticommutator sums; zero number-state expectation.
    Magnetic,
}

/// Per-mode boundary-condition constants of the charge operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeConstants {
    pub k1: f64,
    pub k2: f64,
}

impl Default for ChargeConstants {
    fn default() -> Self {
        Self { k1: 1.0, k2: 1.0 }
    }
}

struct ModeFactors {
    /// Time-dependent annihilation/creation pair embedded on the
    /// unprimed slot of this mode.
    a_u: OperatorMatrix,
    ad_u: OperatorMatrix,
    /// Same pair on the primed slot.
    a_p: OperatorMatrix,
    ad_p: OperatorMatrix,
    w1: f64,
    w2: f64,
}

fn mode_factors(
    mode_set: &ModeSet,
    space: FockSpace,
    constants: &[ChargeConstants],
    config: &CavityConfig,
    e_charge: f64,
    z: f64,
    t: f64,
) -> Result<(Vec<ModeFactors>, Complex64)> {
    if constants.len() != mode_set.len() {
        return Err(CoreError::StateCountMismatch {
            modes: mode_set.len(),
            states: constants.len(),
        });
    }
    let n = space.n_levels();
    let n_factors = 2 * mode_set.len();
    match n.checked_pow(n_factors as u32) {
        Some(dim) if dim <= MAX_DIM => {}
        overflow => {
            return Err(CoreError::DimensionTooLarge {
                dim: overflow.unwrap_or(usize::MAX),
                max: MAX_DIM,
            })
        }
    }
    let dims: Vec<usize> = (0..n_factors).map(|_| n).collect();
    let (a, ad) = ladder_pair(space);

    let mut factors = Vec::with_capacity(mode_set.len());
    for (idx, (mode, k)) in mode_set.modes().iter().zip(constants).enumerate() {
        let phase = math::expi(mode.omega * t);
        let a_t = a.scale(phase.conj());
        let ad_t = ad.scale(phase);
        let sin2 = math::sin(mode.k * z) * math::sin(mode.k * z);
        let cos2 = math::cos(mode.k * z) * math::cos(mode.k * z);
        factors.push(ModeFactors {
            a_u: embed(&a_t, 2 * idx, &dims)?,
            ad_u: embed(&ad_t, 2 * idx, &dims)?,
            a_p: embed(&a_t, 2 * idx + 1, &dims)?,
            ad_p: embed(&ad_t, 2 * idx + 1, &dims)?,
            w1: k.k1 * config.hbar * mode.omega / (config.volume * config.eps0) * sin2,
            w2: k.k2 * config.hbar * mode.omega / (config.volume * config.mu0) * cos2,
        });
    }
    // i e / hbar^2 times the quadratic-form factor 1/2.
    let global = Complex64::new(0.0, 0.5 * e_charge / (config.hbar * config.hbar));
    Ok((factors, global))
}

/// Assemble the fourth component of the requested charge-density
/// operator at `(z, t)`, term by term in printed order.
#[allow(clippy::too_many_arguments)]
pub fn charge_density_operator(
    mode_set: &ModeSet,
    space: FockSpace,
    constants: &[ChargeConstants],
    config: &CavityConfig,
    e_charge: f64,
    kind: ChargeKind,
    z: f64,
    t: f64,
) -> Result<OperatorMatrix> {
    if z < 0.0 || z > config.length {
        return Err(CoreError::OutOfCavity {
            z,
            length: config.length,
        });
    }
    let (factors, global) = mode_factors(mode_set, space, constants, config, e_charge, z, t)?;
    let dim = factors[0].a_u.dim();
    let mut acc = OperatorMatrix::zeros(dim);

    match kind {
        ChargeKind::Electric => {
            for f in &factors {
                let w1 = Complex64::from(f.w1);
                let w2 = Complex64::from(f.w2);
                let comm_du = f.ad_u.commutator(&f.a_u)?; // [a^H, a]
                let comm_ud = f.a_u.commutator(&f.ad_u)?; // [a, a^H]
                let comm_dp = f.ad_p.commutator(&f.a_p)?; // primed family
                let sq_u = f.ad_u.mul(&f.ad_u)?.sub(&f.a_u.mul(&f.a_u)?)?;
                let sq_p = f.ad_p.mul(&f.ad_p)?.add(&f.a_p.mul(&f.a_p)?)?;

                acc = acc.add(&comm_du.scale(global * w1))?;
                acc = acc.add(&sq_u.scale(global * w1))?;
                acc = acc.add(&comm_dp.scale(global * w1))?;
                acc = acc.sub(&sq_p.scale(global * w1))?;
                acc = acc.sub(&comm_ud.scale(global * w2))?;
                acc = acc.add(&sq_u.scale(global * w2))?;
                acc = acc.add(&comm_dp.scale(global * w2))?;
                acc = acc.sub(&sq_p.scale(global * w2))?;
            }
        }
        ChargeKind::Magnetic => {
            for f in &factors {
                let w1 = Complex64::from(f.w1);
                let w2 = Complex64::from(f.w2);
                let anti_du = f.ad_u.anticommutator(&f.a_p)?; // {a^H, a''}
                let anti_ud = f.a_u.anticommutator(&f.ad_p)?; // {a, a''^H}
                acc = acc.add(&anti_du.scale(global * w1))?;
                acc = acc.add(&anti_ud.scale(global * w1))?;
                acc = acc.add(&anti_du.scale(global * w2))?;
                acc = acc.add(&anti_ud.scale(global * w2))?;
            }
        }
    }
    Ok(acc)
}

/// Algebraically grouped assembly of the same operators; must agree with
/// the term-by-term path to 1e-12.
#[allow(clippy::too_many_arguments)]
pub fn charge_density_operator_fast(
    mode_set: &ModeSet,
    space: FockSpace,
    constants: &[ChargeConstants],
    config: &CavityConfig,
    e_charge: f64,
    kind: ChargeKind,
    z: f64,
    t: f64,
) -> Result<OperatorMatrix> {
    if z < 0.0 || z > config.length {
        return Err(CoreError::OutOfCavity {
            z,
            length: config.length,
        });
    }
    let (factors, global) = mode_factors(mode_set, space, constants, config, e_charge, z, t)?;
    let dim = factors[0].a_u.dim();
    let mut acc = OperatorMatrix::zeros(dim);

    for f in &factors {
        let w = Complex64::from(f.w1 + f.w2);
        match kind {
            ChargeKind::Electric => {
                // Both commutator sums collapse onto [a^H, a] per family;
                // the squared-ladder sums share the combined weight.
                let comm_u = f.ad_u.commutator(&f.a_u)?;
                let comm_p = f.ad_p.commutator(&f.a_p)?;
                let sq_u = f.ad_u.mul(&f.ad_u)?.sub(&f.a_u.mul(&f.a_u)?)?;
                let sq_p = f.ad_p.mul(&f.ad_p)?.add(&f.a_p.mul(&f.a_p)?)?;
                acc = acc.add(&comm_u.add(&comm_p)?.scale(global * w))?;
                acc = acc.add(&sq_u.sub(&sq_p)?.scale(global * w))?;
            }
            ChargeKind::Magnetic => {
                // Independent factors commute, so each anticommutator is
                // twice the cross product.
                let cross = f.ad_u.mul(&f.a_p)?.add(&f.a_u.mul(&f.ad_p)?)?;
                acc = acc.add(&cross.scale(global * w * 2.0))?;
            }
        }
    }
    Ok(acc)
}

/// Interior number-state expectation of the electric operator predicted
/// by the commutator terms:
/// `-(i e omega / hbar V)[K1/eps0 sin^2(k z) + K2/mu0 cos^2(k z)]`
/// summed over modes.
pub fn electric_expectation_formula(
    mode_set: &ModeSet,
    constants: &[ChargeConstants],
    config: &CavityConfig,
    e_charge: f64,
    z: f64,
) -> Complex64 {
    let mut coeff = 0.0;
    for (mode, k) in mode_set.modes().iter().zip(constants) {
        let sin2 = math::sin(mode.k * z) * math::sin(mode.k * z);
        let cos2 = math::cos(mode.k * z) * math::cos(mode.k * z);
        coeff += e_charge * mode.omega / (config.hbar * config.volume)
            * (k.k1 / config.eps0 * sin2 + k.k2 / config.mu0 * cos2);
    }
    Complex64::new(0.0, -coeff)
}

/// Vacuum product state on the full tensor space of a charge operator.
pub fn charge_vacuum(mode_set: &ModeSet, space: FockSpace) -> Result<FockState> {
    let n = space.n_levels();
    let vac = FockState::number(0, n)?;
    let refs: Vec<&FockState> = (0..2 * mode_set.len()).map(|_| &vac).collect();
    FockState::product(&refs)
}

/// Conserved charge of one mode and the frequency-independent slope:
/// `q = (e omega / 2 hbar)(K1/eps0 + K2/mu0)`, `g = q / omega`.
pub fn charge_quantum(
    mode: &ModeRecord,
    constants: ChargeConstants,
    config: &CavityConfig,
    e_charge: f64,
) -> (f64, f64) {
    let g = e_charge / (2.0 * config.hbar)
        * (constants.k1 / config.eps0 + constants.k2 / config.mu0);
    (g * mode.omega, g)
}

/// Monopole-to-electron ratio summary derived from a measured range of
/// the exchange-constant ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracRatioReport {
    pub j_ratio_low: f64,
    pub j_ratio_high: f64,
    pub g_over_e_low: f64,
    pub g_over_e_high: f64,
    /// Comparison value 68.5 n at n = 2.
    pub dirac_value: f64,
    /// Relative deviation of the interval midpoint from the comparison
    /// value.
    pub midpoint_deviation: f64,
}

/// Map a ratio interval to charge-ratio bounds `sqrt(low)..sqrt(high)`
/// and compare the midpoint against the quantization value 137 (n = 2).
pub fn dirac_ratio_report(j_ratio_low: f64, j_ratio_high: f64) -> Result<DiracRatioReport> {
    if !(j_ratio_low > 0.0) || !j_ratio_low.is_finite() {
        return Err(CoreError::InvalidParameter {
            field: "J_ratio_low",
            value: j_ratio_low,
            requirement: "must be finite and positive",
        });
    }
    if !(j_ratio_high >= j_ratio_low) || !j_ratio_high.is_finite() {
        return Err(CoreError::InvalidParameter {
            field: "J_ratio_high",
            value: j_ratio_high,
            requirement: "must be finite and at least J_ratio_low",
        });
    }
    let g_over_e_low = math::sqrt(j_ratio_low);
    let g_over_e_high = math::sqrt(j_ratio_high);
    let dirac_value = 68.5 * 2.0;
    let midpoint = 0.5 * (g_over_e_low + g_over_e_high);
    Ok(DiracRatioReport {
        j_ratio_low,
        j_ratio_high,
        g_over_e_low,
        g_over_e_high,
        dirac_value,
        midpoint_deviation: (midpoint - dirac_value).abs() / dirac_value,
    })
}

/// Everything the charge report format carries, in plain values.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeReport {
    pub modes: Vec<ChargeReportMode>,
    pub g: f64,
    /// Sampled imaginary-part coefficient of the vacuum electric
    /// charge-density expectation versus z.
    pub density_profile: Vec<(f64, f64)>,
    pub dirac: DiracRatioReport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeReportMode {
    pub alpha: u32,
    pub omega: f64,
    pub k1: f64,
    pub k2: f64,
    pub charge_quantum: f64,
}

/// Build the full charge report: per-mode charge quanta, the common
/// slope, a vacuum density profile on `nz` points, and the ratio summary.
#[allow(clippy::too_many_arguments)]
pub fn charge_report(
    mode_set: &ModeSet,
    space: FockSpace,
    constants: &[ChargeConstants],
    config: &CavityConfig,
    e_charge: f64,
    nz: usize,
    j_ratio: (f64, f64),
) -> Result<ChargeReport> {
    if constants.len() != mode_set.len() {
        return Err(CoreError::StateCountMismatch {
            modes: mode_set.len(),
            states: constants.len(),
        });
    }
    let mut modes = Vec::with_capacity(mode_set.len());
    let mut g_common = None;
    for (mode, k) in mode_set.modes().iter().zip(constants) {
        let (q, g) = charge_quantum(mode, *k, config, e_charge);
        modes.push(ChargeReportMode {
            alpha: mode.alpha,
            omega: mode.omega,
            k1: k.k1,
            k2: k.k2,
            charge_quantum: q,
        });
        g_common.get_or_insert(g);
    }

    // Vacuum expectations are additive over modes, so the profile is
    // evaluated mode by mode on each mode's own two-factor space; the
    // joint tensor product never needs to be materialized.
    let mut density_profile = Vec::with_capacity(nz);
    for i in 0..nz {
        let z = config.length * (i as f64 + 0.5) / nz as f64;
        let mut coeff = 0.0;
        for (mode, k) in mode_set.modes().iter().zip(constants) {
            let single = ModeSet::from_records(alloc::vec![*mode]);
            let vacuum = charge_vacuum(&single, space)?;
            let op = charge_density_operator(
                &single,
                space,
                core::slice::from_ref(k),
                config,
                e_charge,
                ChargeKind::Electric,
                z,
                0.0,
            )?;
            coeff += crate::fock::expectation(&vacuum, &op)?.im;
        }
        density_profile.push((z, coeff));
    }

    Ok(ChargeReport {
        modes,
        g: g_common.unwrap_or(0.0),
        density_profile,
        dirac: dirac_ratio_report(j_ratio.0, j_ratio.1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::expectation;
    use crate::modes::build_mode_set;
    use core::f64::consts::PI;

    fn setup() -> (CavityConfig, ModeSet) {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 1, None).unwrap();
        (cfg, set)
    }

    #[test]
    fn electric_vacuum_expectation_matches_formula() {
        let (cfg, set) = setup();
        let space = FockSpace::new(6).unwrap();
        let constants = [ChargeConstants { k1: 0.8, k2: 1.3 }];
        let vac = charge_vacuum(&set, space).unwrap();
        for &z in &[0.3, 1.0, 2.4] {
            let op = charge_density_operator(
                &set,
                space,
                &constants,
                &cfg,
                1.0,
                ChargeKind::Electric,
                z,
                0.0,
            )
            .unwrap();
            let measured = expectation(&vac, &op).unwrap();
            let predicted = electric_expectation_formula(&set, &constants, &cfg, 1.0, z);
            assert!((measured - predicted).norm() < 1e-13, "z={z}");
            assert!(measured.re.abs() < 1e-14, "purely imaginary expected");
        }
    }

    #[test]
    fn electric_expectation_interior_states_n_independent() {
        // Only the family commutators have diagonal weight, so every
        // interior number product state sees the same purely imaginary
        // value; states touching the top level feel the truncation
        // defect instead.
        let (cfg, set) = setup();
        let space = FockSpace::new(6).unwrap();
        let constants = [ChargeConstants { k1: 0.8, k2: 1.3 }];
        let op = charge_density_operator(
            &set, space, &constants, &cfg, 1.0, ChargeKind::Electric, 0.7, 0.0,
        )
        .unwrap();
        let predicted = electric_expectation_formula(&set, &constants, &cfg, 1.0, 0.7);
        for nu in 0..5 {
            for np in 0..5 {
                let state = FockState::product(&[
                    &FockState::number(nu, 6).unwrap(),
                    &FockState::number(np, 6).unwrap(),
                ])
                .unwrap();
                let v = expectation(&state, &op).unwrap();
                assert!(v.re.abs() < 1e-14, "purely imaginary at ({nu},{np})");
                assert!((v - predicted).norm() < 1e-13, "({nu},{np}): {v}");
            }
        }
        let top = FockState::product(&[
            &FockState::number(5, 6).unwrap(),
            &FockState::number(0, 6).unwrap(),
        ])
        .unwrap();
        let v_top = expectation(&top, &op).unwrap();
        assert!((v_top - predicted).norm() > 1.0, "top level shows the defect");
    }

    #[test]
    fn electric_expectation_time_independent() {
        let (cfg, set) = setup();
        let space = FockSpace::new(5).unwrap();
        let constants = [ChargeConstants::default()];
        let vac = charge_vacuum(&set, space).unwrap();
        let base = {
            let op = charge_density_operator(
                &set, space, &constants, &cfg, 1.0, ChargeKind::Electric, 0.9, 0.0,
            )
            .unwrap();
            expectation(&vac, &op).unwrap()
        };
        let mut spread = 0.0_f64;
        for i in 1..=20 {
            let t = 2.0 * PI * i as f64 / 20.0;
            let op = charge_density_operator(
                &set, space, &constants, &cfg, 1.0, ChargeKind::Electric, 0.9, t,
            )
            .unwrap();
            let v = expectation(&vac, &op).unwrap();
            spread = spread.max((v - base).norm());
        }
        assert!(spread <= 1e-12 * base.norm(), "{spread}");
    }

    #[test]
    fn magnetic_number_state_expectation_zero() {
        let (cfg, set) = setup();
        let space = FockSpace::new(4).unwrap();
        let constants = [ChargeConstants::default()];
        let op = charge_density_operator(
            &set, space, &constants, &cfg, 1.0, ChargeKind::Magnetic, 1.1, 0.7,
        )
        .unwrap();
        for nu in 0..4 {
            for np in 0..4 {
                let state = FockState::product(&[
                    &FockState::number(nu, 4).unwrap(),
                    &FockState::number(np, 4).unwrap(),
                ])
                .unwrap();
                let v = expectation(&state, &op).unwrap();
                assert!(v.norm() <= 1e-12 * op.max_abs(), "n=({nu},{np}): {v}");
            }
        }
    }

    #[test]
    fn pythagorean_flat_profile() {
        // K1 = K2 = K with eps0 = mu0 = 1 removes the z dependence:
        // expectation = -i e omega K / (hbar V).
        let (cfg, set) = setup();
        let space = FockSpace::new(4).unwrap();
        let constants = [ChargeConstants { k1: 0.6, k2: 0.6 }];
        let vac = charge_vacuum(&set, space).unwrap();
        let expected = Complex64::new(0.0, -0.6);
        for &z in &[0.2, 1.3, 2.7] {
            let op = charge_density_operator(
                &set, space, &constants, &cfg, 1.0, ChargeKind::Electric, z, 0.0,
            )
            .unwrap();
            let v = expectation(&vac, &op).unwrap();
            assert!((v - expected).norm() < 1e-13, "z={z}: {v}");
        }
    }

    #[test]
    fn fast_path_agrees_with_printed_order() {
        let (cfg, set) = setup();
        let space = FockSpace::new(5).unwrap();
        let constants = [ChargeConstants { k1: 1.4, k2: 0.3 }];
        for kind in [ChargeKind::Electric, ChargeKind::Magnetic] {
            let slow = charge_density_operator(
                &set, space, &constants, &cfg, 1.0, kind, 0.8, 0.4,
            )
            .unwrap();
            let fast = charge_density_operator_fast(
                &set, space, &constants, &cfg, 1.0, kind, 0.8, 0.4,
            )
            .unwrap();
            let dev = slow.sub(&fast).unwrap().max_abs();
            assert!(dev <= 1e-12 * slow.max_abs().max(1.0), "{kind:?}: {dev}");
        }
    }

    #[test]
    fn charge_quantum_direct_substitution() {
        let (cfg, set) = setup();
        let (q, g) = charge_quantum(&set.modes()[0], ChargeConstants::default(), &cfg, 1.0);
        assert!((q - 1.0).abs() < 1e-15);
        assert!((g - 1.0).abs() < 1e-15);
    }

    #[test]
    fn charge_quantum_zero_constants() {
        let (cfg, set) = setup();
        let (q, _) = charge_quantum(
            &set.modes()[0],
            ChargeConstants { k1: 0.0, k2: 0.0 },
            &cfg,
            1.0,
        );
        assert_eq!(q, 0.0);
    }

    #[test]
    fn charge_quantum_linear_in_omega() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 5, None).unwrap();
        let constants = ChargeConstants { k1: 0.7, k2: 1.9 };
        let slopes: Vec<f64> = set
            .modes()
            .iter()
            .map(|m| {
                let (q, _) = charge_quantum(m, constants, &cfg, 1.0);
                q / m.omega
            })
            .collect();
        for s in &slopes[1..] {
            assert!((s - slopes[0]).abs() <= 1e-15 * slopes[0].abs());
        }
    }

    #[test]
    fn dirac_report_published_range() {
        let r = dirac_ratio_report(1.2e4, 1.6e4).unwrap();
        assert!((r.g_over_e_low - 109.5445115010332).abs() < 1e-9);
        assert!((r.g_over_e_high - 126.49110640673517).abs() < 1e-9);
        assert_eq!(r.dirac_value, 137.0);
    }

    #[test]
    fn dirac_report_unit_ratio() {
        let r = dirac_ratio_report(1.0, 1.0).unwrap();
        assert_eq!(r.g_over_e_low, 1.0);
        assert_eq!(r.g_over_e_high, 1.0);
    }

    #[test]
    fn dirac_report_rejects_nonpositive() {
        assert!(dirac_ratio_report(0.0, 1.0).is_err());
        assert!(dirac_ratio_report(-2.0, 1.0).is_err());
        assert!(dirac_ratio_report(2.0, 1.0).is_err());
    }

    #[test]
    fn charge_report_assembles() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 2, None).unwrap();
        let space = FockSpace::new(3).unwrap();
        let constants = [ChargeConstants::default(), ChargeConstants::default()];
        let report =
            charge_report(&set, space, &constants, &cfg, 1.0, 8, (1.2e4, 1.6e4)).unwrap();
        assert_eq!(report.modes.len(), 2);
        assert_eq!(report.density_profile.len(), 8);
        // charge_quantum = g * omega per mode, exactly.
        for m in &report.modes {
            assert_eq!(m.charge_quantum, report.g * m.omega);
        }
    }

    #[test]
    fn constants_must_cover_every_mode() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let set = build_mode_set(&cfg, 2, None).unwrap();
        let space = FockSpace::new(3).unwrap();
        let short = [ChargeConstants::default()];
        assert!(matches!(
            charge_density_operator(
                &set, space, &short, &cfg, 1.0, ChargeKind::Electric, 0.4, 0.0
            ),
            Err(CoreError::StateCountMismatch { .. })
        ));
    }

    #[test]
    fn envelope_enforced() {
        let cfg = CavityConfig::natural(PI, 1.0).unwrap();
        let two_modes = build_mode_set(&cfg, 2, None).unwrap();
        let constants2 = [ChargeConstants::default(), ChargeConstants::default()];
        // Two modes at N=16 would need 16^4 = 65536; rejected as a
        // capability error before any allocation happens.
        let space = FockSpace::new(16).unwrap();
        assert!(matches!(
            charge_density_operator(
                &two_modes, space, &constants2, &cfg, 1.0, ChargeKind::Electric, 0.4, 0.0
            ),
            Err(CoreError::DimensionTooLarge { .. })
        ));
        // Two modes at N=4 (dim 256) stay inside the envelope.
        let small = FockSpace::new(4).unwrap();
        assert!(charge_density_operator(
            &two_modes, small, &constants2, &cfg, 1.0, ChargeKind::Electric, 0.4, 0.0
        )
        .is_ok());
    }
}
