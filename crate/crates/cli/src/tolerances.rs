//! Named tolerances of the verification suite with their origins.
//!
//! Every threshold the `verify` command compares against is defined here
//! and can be overridden per run with `--tol name=value`; overrides land
//! in the manifest so a run can be replayed.

use std::collections::BTreeMap;

use crate::{CliError, Result};

/// Direction of a check: whether the measured value must stay below the
/// tolerance or above it (used by the nonsingularity check).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Max,
    Min,
}

pub struct ToleranceSpec {
    pub name: &'static str,
    pub default: f64,
    pub bound: Bound,
    pub rationale: &'static str,
}

/// The full table. Values trace to either machine precision (exact
/// identities evaluated in f64), the truncation order of the stencil in
/// use, or the closed-form contract they verify.
pub const TOLERANCES: &[ToleranceSpec] = &[
    ToleranceSpec {
        name: "dispersion_ulp",
        default: 1.0,
        bound: Bound::Max,
        rationale: "omega = c k is one multiplication; at most 1 ulp",
    },
    ToleranceSpec {
        name: "mode_equation",
        default: 1e-6,
        bound: Bound::Max,
        rationale: "second-order stencil at h = 1e-4/omega: truncation ~1e-9, round-off ~1e-8",
    },
    ToleranceSpec {
        name: "antiderivative",
        default: 1e-6,
        bound: Bound::Max,
        rationale: "central difference of the running integral recovers q at stencil order",
    },
    ToleranceSpec {
        name: "quadrature_agreement",
        default: 1e-10,
        bound: Bound::Max,
        rationale: "adaptive quadrature of q against the closed-form antiderivative",
    },
    ToleranceSpec {
        name: "maxwell_residual",
        default: 1e-5,
        bound: Bound::Max,
        rationale: "(k_max L / 2000)^2 / 6 ~ 4e-6 for three modes; margin ~2.5x",
    },
    ToleranceSpec {
        name: "parity",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "sampled point symmetry of exact sin/cos profiles; round-off only",
    },
    ToleranceSpec {
        name: "gram_det",
        default: 1e-6,
        bound: Bound::Min,
        rationale: "normalized Gram determinant of the four field components, O(1) generically",
    },
    ToleranceSpec {
        name: "energy_spread",
        default: 1e-10,
        bound: Bound::Max,
        rationale: "closed-form conservation; spread over a period is accumulated round-off",
    },
    ToleranceSpec {
        name: "energy_forms",
        default: 1e-8,
        bound: Bound::Max,
        rationale: "resolved composite rule is aliasing-exact; agreement sits at round-off",
    },
    ToleranceSpec {
        name: "canonical_commutator",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "interior commutator entries are exact sqrt(n) products in f64",
    },
    ToleranceSpec {
        name: "truncation_interior",
        default: 1e-13,
        bound: Bound::Max,
        rationale: "interior diagonal of [a, a^H] is n+1-n, exact in f64",
    },
    ToleranceSpec {
        name: "truncation_defect",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "top-level defect equals -(N-1) exactly",
    },
    ToleranceSpec {
        name: "cross_family",
        default: 1e-15,
        bound: Bound::Max,
        rationale: "operators on independent tensor factors commute identically",
    },
    ToleranceSpec {
        name: "spectrum",
        default: 1e-10,
        bound: Bound::Max,
        rationale: "interior Hamiltonian block is numerically diagonal; Jacobi is exact there",
    },
    ToleranceSpec {
        name: "hermiticity",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "field operators are hermitian by construction up to round-off",
    },
    ToleranceSpec {
        name: "unitary_evolution",
        default: 1e-8,
        bound: Bound::Max,
        rationale: "order-13 Pade exponential against analytic Heisenberg phases",
    },
    ToleranceSpec {
        name: "coherent_correspondence",
        default: 1e-6,
        bound: Bound::Max,
        rationale: "truncated coherent tail at N >= 30, |alpha| <= 2 is below 1e-7",
    },
    ToleranceSpec {
        name: "plane_wave_null",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "phase current and spatial scale components cancel exactly per mode",
    },
    ToleranceSpec {
        name: "plane_wave_density",
        default: 1e-10,
        bound: Bound::Max,
        rationale: "fourth scale component against its closed form",
    },
    ToleranceSpec {
        name: "lagrangian_value",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "single-frequency density against the closed form a^2 c^2 k^2 / 2",
    },
    ToleranceSpec {
        name: "continuity",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "single-frequency currents are constant fields; differences vanish",
    },
    ToleranceSpec {
        name: "continuity_order",
        default: 0.2,
        bound: Bound::Max,
        rationale: "Richardson order of the divergence stencil minus 2",
    },
    ToleranceSpec {
        name: "charge_profile",
        default: 1e-10,
        bound: Bound::Max,
        rationale: "vacuum electric charge density against the commutator closed form",
    },
    ToleranceSpec {
        name: "charge_magnetic",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "cross-family anticommutators have no number-conserving part",
    },
    ToleranceSpec {
        name: "charge_assembly",
        default: 1e-12,
        bound: Bound::Max,
        rationale: "printed-order assembly against the grouped fast path",
    },
    ToleranceSpec {
        name: "charge_linearity",
        default: 1e-15,
        bound: Bound::Max,
        rationale: "charge quantum is one multiplication by omega",
    },
    ToleranceSpec {
        name: "dirac_bounds",
        default: 1e-3,
        bound: Bound::Max,
        rationale: "published interval is quoted to four figures; 0.1%",
    },
];

/// Resolve the effective tolerance table from `--tol name=value` pairs.
pub fn resolve(overrides: &BTreeMap<String, f64>) -> Result<BTreeMap<String, (f64, Bound)>> {
    let mut table: BTreeMap<String, (f64, Bound)> = TOLERANCES
        .iter()
        .map(|t| (t.name.to_string(), (t.default, t.bound)))
        .collect();
    for (name, value) in overrides {
        match table.get_mut(name) {
            Some(entry) => entry.0 = *value,
            None => return Err(CliError::UnknownTolerance(name.clone())),
        }
    }
    Ok(table)
}

/// Parse one `name=value` argument.
pub fn parse_override(raw: &str) -> Result<(String, f64)> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::ConfigInvalid(format!("--tol expects name=value, got `{raw}`")))?;
    let value: f64 = value
        .parse()
        .map_err(|_| CliError::ConfigInvalid(format!("--tol {name}: `{value}` is not a number")))?;
    Ok((name.to_string(), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let table = resolve(&BTreeMap::new()).unwrap();
        assert_eq!(table["maxwell_residual"].0, 1e-5);
    }

    #[test]
    fn override_applies() {
        let mut overrides = BTreeMap::new();
        overrides.insert("maxwell_residual".to_string(), 1e-30);
        let table = resolve(&overrides).unwrap();
        assert_eq!(table["maxwell_residual"].0, 1e-30);
    }

    #[test]
    fn unknown_name_rejected() {
        let mut overrides = BTreeMap::new();
        overrides.insert("nope".to_string(), 1.0);
        assert!(matches!(
            resolve(&overrides),
            Err(CliError::UnknownTolerance(_))
        ));
    }

    #[test]
    fn parse_pairs() {
        assert_eq!(
            parse_override("spectrum=1e-9").unwrap(),
            ("spectrum".to_string(), 1e-9)
        );
        assert!(parse_override("missing-equals").is_err());
    }
}
