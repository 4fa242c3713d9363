use thiserror::Error;

use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid complex: {0}")]
    Validation(String),
    #[error("invalid simplicial map: {0}")]
    Map(String),
    #[error(
        "map is not weight preserving in dimension {q}: simplex {simplex} has weight {codomain_weight} \
         but its preimages sum to {preimage_sum}; reweight the codomain with the pushed-forward weights"
    )]
    NotWeightPreserving {
        q: usize,
        simplex: String,
        codomain_weight: String,
        preimage_sum: String,
    },
    #[error("cannot compose: {0}")]
    DomainMismatch(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
