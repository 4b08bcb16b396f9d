use thiserror::Error;

use crate::fock::BasisTag;

/// Errors produced by the simulation layer.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state or operation needs more total quanta than the policy allows.
    #[error("state needs {needed} total quanta but the truncation allows {max}")]
    Truncation { needed: u32, max: u32 },

    /// An operation was handed a state in the wrong mode basis.
    #[error("operation requires the {expected:?} basis but the state is tagged {got:?}")]
    WrongBasis { expected: BasisTag, got: BasisTag },

    /// The truncation retains less thermal mass than the tail tolerance asks for.
    #[error(
        "truncation at {max} total quanta retains less than 1 - {tail_tolerance:e} \
         of the thermal mass; at least {required} quanta are needed"
    )]
    PolicyTooSmall {
        max: u32,
        required: u32,
        tail_tolerance: f64,
    },

    /// A physical or configuration parameter is out of range or inconsistent.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// The gate commensurability constraints cannot be satisfied.
    #[error("no gate solution: {0}")]
    GateConstraint(String),

    /// The eigensolver did not converge. Must not happen for Hermitian input;
    /// treated as fatal by callers.
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
