use thiserror::Error;

use crate::field::FieldElement;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(
        "unknown field preset `{0}`: only narrow class number one fields are supported \
         (q, q-sqrt5, q-sqrt13, q-sqrt17)"
    )]
    UnknownField(String),

    #[error("{0} is not a rational prime")]
    NotPrime(u64),

    #[error("element {0} is not totally positive")]
    NotTotallyPositive(FieldElement),

    #[error("element {0} is zero where a nonzero element is required")]
    ZeroElement(FieldElement),

    #[error("residue {residue} is not invertible modulo {modulus}")]
    NotInvertible {
        residue: FieldElement,
        modulus: FieldElement,
    },

    #[error("level of norm {0} is not squarefree")]
    NotSquarefree(u64),

    #[error("ideal of norm {ideal_norm} is not coprime to the level of norm {level_norm}")]
    NotCoprime { ideal_norm: u64, level_norm: u64 },

    #[error("support half-width {sigma} exceeds the admissible support budget {budget}")]
    SupportBudget { sigma: f64, budget: f64 },

    #[error("prime cutoff {cutoff} is below the required {required}")]
    CutoffTooSmall { cutoff: f64, required: f64 },

    #[error("configuration: {0}")]
    Config(String),

    #[error("invalid value for `{key}`: {reason}")]
    InvalidParameter { key: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(key: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            key,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
