use thiserror::Error;

use crate::exact_kernel::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not a quadratic: total degree {degree} in the point variables")]
    NotQuadratic { degree: u32 },

    #[error("polynomial involves variables other than the point variables: {0}")]
    ForeignVariables(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bad rational literal {0:?}")]
    BadRational(String),

    #[error("expected {expected} parameters, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("parameter re-extraction left a residue: {0}")]
    ExtractionResidue(String),

    #[error("cannot mix exact and float group elements")]
    MixedRepresentation,

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("vector field domains differ")]
    DomainMismatch,

    #[error("group does not act freely here ({0} = 0)")]
    NotFree(&'static str),

    #[error("outside arctanh domain (argument = {})", display_argument(.argument))]
    OutsideArctanhDomain { argument: Option<Rational> },

    #[error("moving frame residual {residual:e} exceeds tolerance")]
    FrameResidual { residual: f64 },

    #[error("{0}")]
    CanonicalForm(String),

    #[error("not on invariant submanifold: {0}")]
    NotOnInvariantSubmanifold(&'static str),

    #[error("zero tensor has no web class")]
    ZeroTensor,

    #[error("invariant values match no table row: {0}")]
    Unclassified(String),
}

fn display_argument(argument: &Option<Rational>) -> String {
    match argument {
        Some(value) => value.to_string(),
        None => "infinite".to_string(),
    }
}
