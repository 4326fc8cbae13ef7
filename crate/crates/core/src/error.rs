use thiserror::Error;

/// Errors raised by the geometry, group and derivation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Mismatched shapes between points, isometries or matrices.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An operation received an input outside its domain (empty cloud, empty box, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data (non-unitary generator, invalid permutation, inverted box, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Breadth-first closure produced more than `cap` distinct elements.
    #[error("group not finite at this cap: closure exceeded {cap} elements")]
    ClosureCap { cap: usize },

    /// Derivation values that do not extend to a cocycle on the group.
    #[error("cocycle inconsistency at ({left}, {right}): violation {violation:.3e}")]
    CocycleInconsistent {
        left: String,
        right: String,
        violation: f64,
    },

    /// A norming set that is not invariant under the adjoint action.
    #[error("invariance violation: {0}")]
    Invariance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
