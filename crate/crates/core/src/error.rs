use thiserror::Error;

use crate::groups::GroupError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: conjugating member {member} by {by} leaves the subgroup")]
    NotNormal { member: usize, by: usize },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("comodules live over different Hopf algebras")]
    AlgebraMismatch,
    #[error("matrices do not define a representation: M({g}) M({h}) != M({g}{h})")]
    NotHomomorphism { g: String, h: String },
    #[error("map is not colinear: {0}")]
    NotColinear(String),
    #[error("not a comodule: {0}")]
    NotComodule(String),
    #[error("subspace is not stable: {0}")]
    NotStable(String),
    #[error("space of integrals has dimension {0}, expected 1")]
    IntegralDimension(usize),
    #[error("etale hypothesis violated: characteristic {characteristic} divides {order}")]
    EtaleHypothesis { characteristic: u64, order: usize },
    #[error("algebra is not separable: {0}")]
    NotSeparable(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
