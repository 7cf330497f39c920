use thiserror::Error;

use crate::state::SupportPattern;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("expected 8 amplitudes, got {0}")]
    BadArity(usize),
    #[error("every amplitude is zero")]
    AllZero,
    #[error("amplitude {0} is not a finite number")]
    NonFinite(usize),
    #[error("a reduction must keep one or two parties, got {0:?}")]
    BadSubset(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SioError {
    #[error("operator entries must both be nonzero (got |u|={0:e}, |v|={1:e})")]
    Singular(f64, f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("no registry row covers the orbit of support {0}")]
    NoRow(SupportPattern),
    #[error("row {row} expects support {expected}, flipped state has support {found}")]
    WrongRow {
        row: String,
        expected: SupportPattern,
        found: SupportPattern,
    },
    #[error("unknown row id {0:?}")]
    UnknownRow(String),
    #[error(transparent)]
    State(#[from] StateError),
}
