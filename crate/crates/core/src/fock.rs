//! Truncated Fock-space realization of the two canonical families:
//! ladder operators, canonical-variable operators, field operators, and
//! expectation values.
//!
//! Truncation to N levels leaves every canonical identity exact on the
//! interior levels 0..N-2 and concentrates the defect in a rank-one block
//! at the top level; the tests assert that structure instead of hiding it.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::CavityConfig;
use crate::math;
use crate::matrix::{OperatorMatrix, MAX_DIM};
use crate::modes::ModeRecord;
use crate::{CoreError, Result};

/// Number-basis truncation: levels 0..n_levels-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_levels: usize,
}

impl FockSpace {
    pub fn new(n_levels: usize) -> Result<Self> {
        if n_levels < 2 {
            return Err(CoreError::TruncationTooSmall { n: n_levels });
        }
        if n_levels > 64 {
            return Err(CoreError::DimensionTooLarge {
                dim: n_levels,
                max: 64,
            });
        }
        Ok(Self { n_levels })
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }
}

/// The two independent canonical families. Their single-factor matrices
/// are constructed identically; they differ by which tensor factor they
/// occupy in multi-family operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpFamily {
    Unprimed,
    DoublePrimed,
}

/// Annihilation/creation pair on the truncated space:
/// `a[n-1, n] = sqrt(n)`, `a_dagger = a^H`.
pub fn ladder_pair(space: FockSpace) -> (OperatorMatrix, OperatorMatrix) {
    let n = space.n_levels();
    let mut a = OperatorMatrix::zeros(n);
    for level in 1..n {
        a.set(level - 1, level, Complex64::new(math::sqrt(level as f64), 0.0));
    }
    a.refresh_hermitian();
    let a_dagger = a.dagger();
    (a, a_dagger)
}

/// Canonical-variable operators
/// `q = sqrt(hbar / 2 m omega) (a_dagger + a)` and
/// `p = i sqrt(hbar m omega / 2) (a - a_dagger)`,
/// oriented so that `[p, q] = i hbar` holds on the interior levels.
/// Both families use the same construction.
pub fn canonical_ops(
    space: FockSpace,
    mass: f64,
    omega: f64,
    hbar: f64,
    _family: OpFamily,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    validate_positive("m", mass)?;
    validate_positive("omega", omega)?;
    validate_positive("hbar", hbar)?;

    let (a, a_dagger) = ladder_pair(space);
    let q_scale = math::sqrt(hbar / (2.0 * mass * omega));
    let p_scale = math::sqrt(hbar * mass * omega / 2.0);
    let q = a_dagger.add(&a)?.scale(q_scale.into());
    let p = a.sub(&a_dagger)?.scale(Complex64::new(0.0, p_scale));
    Ok((q, p))
}

/// Which field operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOpKind {
    /// First-family electric operator, `sin(k z)` profile.
    E1,
    /// First-family magnetic operator, `i (a_dagger - a)` structure.
    H1,
    /// Second-family electric operator, `i (a_dagger - a)` structure.
    E2,
    /// Second-family magnetic operator, negative `(a_dagger + a)` structure.
    H2,
    /// `E1 + i E2` on the unprimed (x) primed product space.
    ECombined,
    /// `H2 + i H1` on the unprimed (x) primed product space.
    HCombined,
}

/// Field-function operator for one mode in the Heisenberg picture with
/// `a(t) = a e^{-i omega t}`.
///
/// The four single-family operators act on one N-level factor and are
/// hermitian; the combined ones act on the unprimed (x) primed product
/// space and are not.
pub fn field_operator(
    mode: &ModeRecord,
    space: FockSpace,
    config: &CavityConfig,
    which: FieldOpKind,
    z: f64,
    t: f64,
) -> Result<OperatorMatrix> {
    if z < 0.0 || z > config.length {
        return Err(CoreError::OutOfCavity {
            z,
            length: config.length,
        });
    }
    let (a, a_dagger) = ladder_pair(space);
    let phase = math::expi(mode.omega * t);
    let a_t = a.scale(phase.conj());
    let a_dagger_t = a_dagger.scale(phase);

    let e_pref = math::sqrt(config.hbar * mode.omega / (config.volume * config.eps0));
    let h_pref = math::sqrt(config.hbar * mode.omega / (config.volume * config.mu0));
    let sin_kz = math::sin(mode.k * z);
    let cos_kz = math::cos(mode.k * z);

    let single = |kind: FieldOpKind| -> Result<OperatorMatrix> {
        match kind {
            FieldOpKind::E1 => Ok(a_dagger_t
                .add(&a_t)?
                .scale(Complex64::new(e_pref * sin_kz, 0.0))),
            FieldOpKind::H1 => Ok(a_dagger_t
                .sub(&a_t)?
                .scale(Complex64::new(0.0, h_pref * cos_kz))),
            FieldOpKind::E2 => Ok(a_dagger_t
                .sub(&a_t)?
                .scale(Complex64::new(0.0, e_pref * sin_kz))),
            FieldOpKind::H2 => Ok(a_dagger_t
                .add(&a_t)?
                .scale(Complex64::new(-h_pref * cos_kz, 0.0))),
            _ => unreachable!("combined kinds handled below"),
        }
    };

    match which {
        FieldOpKind::E1 | FieldOpKind::H1 | FieldOpKind::E2 | FieldOpKind::H2 => single(which),
        FieldOpKind::ECombined => {
            let e1 = single(FieldOpKind::E1)?;
            let e2 = single(FieldOpKind::E2)?;
            let eye = OperatorMatrix::identity(space.n_levels());
            e1.kron(&eye)?.add(&eye.kron(&e2)?.scale(Complex64::I))
        }
        FieldOpKind::HCombined => {
            let h1 = single(FieldOpKind::H1)?;
            let h2 = single(FieldOpKind::H2)?;
            let eye = OperatorMatrix::identity(space.n_levels());
            eye.kron(&h2)?.add(&h1.kron(&eye)?.scale(Complex64::I))
        }
    }
}

/// Oscillator Hamiltonian `(m omega^2 q^2 + p^2/m)/2` on the truncated
/// space. Diagonal `hbar omega (n + 1/2)` on the interior; the top level
/// carries the truncation defect.
pub fn hamiltonian_operator(
    mode: &ModeRecord,
    space: FockSpace,
    hbar: f64,
    family: OpFamily,
) -> Result<OperatorMatrix> {
    let (q, p) = canonical_ops(space, mode.mass, mode.omega, hbar, family)?;
    let q2 = q.mul(&q)?.scale((mode.mass * mode.omega * mode.omega).into());
    let p2 = p.mul(&p)?.scale((1.0 / mode.mass).into());
    Ok(q2.add(&p2)?.scale(0.5.into()))
}

/// Normalized state vector in the number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    coefficients: Vec<Complex64>,
}

impl FockState {
    /// Wrap raw coefficients; the norm must already be 1 within 1e-12.
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        let norm = math::sqrt(norm_sqr);
        if (norm - 1.0).abs() > 1e-12 {
            return Err(CoreError::NotNormalized { norm });
        }
        Ok(Self { coefficients })
    }

    /// Number state |n>.
    pub fn number(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(CoreError::ShapeMismatch {
                expected: dim,
                got: n,
            });
        }
        let mut coefficients = alloc::vec![Complex64::ZERO; dim];
        coefficients[n] = Complex64::ONE;
        Ok(Self { coefficients })
    }

    /// Coherent state from the truncated exponential
    /// `e^{-|alpha|^2/2} sum alpha^n / sqrt(n!) |n>`.
    ///
    /// No renormalization is applied, so the truncation must carry the
    /// tail: construction fails when the norm defect exceeds 1e-12.
    pub fn coherent(alpha: Complex64, dim: usize) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(dim);
        let mut c = Complex64::new(math::exp(-alpha.norm_sqr() / 2.0), 0.0);
        coefficients.push(c);
        for n in 1..dim {
            c = c * alpha / math::sqrt(n as f64);
            coefficients.push(c);
        }
        Self::from_coefficients(coefficients)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    /// Product state on a tensor space, slots ordered as in [`embed`].
    pub fn product(factors: &[&FockState]) -> Result<Self> {
        let mut coefficients = alloc::vec![Complex64::ONE];
        for f in factors {
            let mut next = Vec::with_capacity(coefficients.len() * f.dim());
            for c in &coefficients {
                for fc in &f.coefficients {
                    next.push(c * fc);
                }
            }
            coefficients = next;
        }
        Self::from_coefficients(coefficients)
    }
}

/// `<psi| op |psi>`. Real to round-off when `op` is hermitian.
pub fn expectation(state: &FockState, op: &OperatorMatrix) -> Result<Complex64> {
    if state.dim() != op.dim() {
        return Err(CoreError::ShapeMismatch {
            expected: op.dim(),
            got: state.dim(),
        });
    }
    let applied = op.apply(state.coefficients())?;
    let mut acc = Complex64::ZERO;
    for (c, v) in state.coefficients().iter().zip(&applied) {
        acc += c.conj() * v;
    }
    Ok(acc)
}

/// Embed a single-factor operator into a tensor product:
/// identity on every slot except `slot`, which carries `op`.
/// `dims` lists the factor dimensions in product order.
pub fn embed(op: &OperatorMatrix, slot: usize, dims: &[usize]) -> Result<OperatorMatrix> {
    if slot >= dims.len() || dims[slot] != op.dim() {
        return Err(CoreError::ShapeMismatch {
            expected: dims.get(slot).copied().unwrap_or(0),
            got: op.dim(),
        });
    }
    let total: usize = dims.iter().product();
    if total > MAX_DIM {
        return Err(CoreError::DimensionTooLarge {
            dim: total,
            max: MAX_DIM,
        });
    }
    let mut out = OperatorMatrix::identity(1);
    for (i, &d) in dims.iter().enumerate() {
        out = if i == slot {
            out.kron(op)?
        } else {
            out.kron(&OperatorMatrix::identity(d))?
        };
    }
    Ok(out)
}

fn validate_positive(field: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(CoreError::InvalidParameter {
            field,
            value,
            requirement: "must be finite and positive",
        });
    }
    Ok(())
}
