use thiserror::Error;

/// Errors produced by construction and evaluation routines.
///
/// The CLI maps these onto its exit-code contract: validation and domain
/// problems are configuration errors, `DimensionTooLarge` is a capability
/// error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A constructor argument violated a positivity or range invariant.
    #[error("invalid value {value} for `{field}`: {requirement}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// An operation that divides by the mode frequency received omega = 0.
    #[error("singular frequency: omega must be nonzero")]
    SingularFrequency,

    /// A field was sampled outside the cavity.
    #[error("position z = {z} outside the cavity [0, {length}]")]
    OutOfCavity { z: f64, length: f64 },

    /// Fock-space truncation below the minimum of two levels.
    #[error("truncation N = {n} too small: at least 2 levels required")]
    TruncationTooSmall { n: usize },

    /// Vector/matrix dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// A state vector was not normalized within tolerance.
    #[error("state norm {norm} deviates from 1 by more than 1e-12")]
    NotNormalized { norm: f64 },

    /// Number of classical states does not match the mode set.
    #[error("expected one state per mode ({modes}), got {states}")]
    StateCountMismatch { modes: usize, states: usize },

    /// Requested tensor-product dimension exceeds the dense-matrix envelope.
    #[error("operator dimension {dim} exceeds the supported envelope of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// Eigenvalue iteration failed to converge.
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },
}
