use thiserror::Error;

use crate::lattice::DivisorClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {0} is outside the supported range 2..=7")]
    RankOutOfRange(usize),

    #[error("operation `{op}` is not supported at rank {rank}")]
    UnsupportedRank { op: &'static str, rank: usize },

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown curve label `{0}`")]
    UnknownLabel(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("points not in general position: {0}")]
    GeneralPosition(String),

    #[error("malformed point data: {0}")]
    MalformedPoints(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("certification failed for {divisor:?}: stuck after capturing {captured} of {total} curves")]
    CertificationFailed {
        divisor: DivisorClass,
        captured: usize,
        total: usize,
        stuck: Vec<String>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
