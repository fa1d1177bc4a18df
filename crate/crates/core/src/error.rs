use std::path::PathBuf;

use thiserror::Error;

use crate::quandle::AxiomViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("permutation is not an element of the group")]
    NotAMember,

    #[error("group computation budget exceeded: {0}")]
    GroupBudget(String),

    #[error("table entry {value} at row {row}, column {column} is outside 1..={n}")]
    EntryOutOfRange {
        row: usize,
        column: usize,
        value: usize,
        n: usize,
    },

    #[error("not a quandle: {0}")]
    Axiom(AxiomViolation),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid Alexander data: {0}")]
    Alexander(String),

    #[error("invalid cocycle: {0}")]
    Cocycle(String),

    #[error("not a quandle homomorphism: {0}")]
    Homomorphism(String),

    #[error("partition is not a congruence: {0}")]
    Congruence(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded after {elapsed_secs:.1}s; progress saved to {}", checkpoint.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "<none>".into()))]
    Budget {
        elapsed_secs: f64,
        checkpoint: Option<PathBuf>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
