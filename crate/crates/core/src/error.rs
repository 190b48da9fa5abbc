use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operator delta^{order} is {rows}x{cols}, expected {expected}x{expected}")]
    OperatorShape {
        order: usize,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("expected {expected} operators for truncation {truncation}, found {found}")]
    OperatorCount { truncation: usize, expected: usize, found: usize },
    #[error("level {level} exceeds the truncation N = {truncation}")]
    LevelAboveTruncation { level: usize, truncation: usize },
    #[error("this operation needs 2k <= N, got k = {k}, N = {truncation}")]
    UnsupportedTruncation { k: usize, truncation: usize },
    #[error("truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("complex is not a valid truncated S^1-complex: {0}")]
    InvalidComplex(String),
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("target complex has nonzero higher operators")]
    NontrivialHigherStructure,
    #[error("map is not a cochain map")]
    NotACochainMap,
    #[error("order search is not monotone: found at k = {found} but fails at k = {failed}")]
    NotMonotone { found: usize, failed: usize },
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("no principal period exists for these exponents")]
    NoPrincipalPeriod,
    #[error("Milnor model needs 1 <= k <= m, got k = {k}, m = {m}")]
    MilnorRange { k: usize, m: usize },
    #[error("{path}: {message}")]
    Document { path: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
