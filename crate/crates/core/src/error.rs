// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("matrix {index} is not square")]
    NonSquare { index: usize },

    #[error("generator {index} has shape {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },

    #[error("generator {index} is not orthogonal: max |g^T g - I| = {residual:.3e}")]
    NonOrthogonal { index: usize, residual: f64 },

    #[error("group closure exceeded the cap of {cap} elements (likely an infinite group)")]
    GroupCapExceeded { cap: usize },

    #[error("dedup ambiguity: two elements at max-norm distance {distance:.3e}")]
    DedupAmbiguity { distance: f64 },

    #[error("numerical rank ambiguity: singular value {value:.3e} inside [{lo:.3e}, {hi:.3e}]")]
    RankAmbiguity { value: f64, lo: f64, hi: f64 },

    #[error("isotypic separation failed after {attempts} attempts")]
    IsotypicSeparation { attempts: usize },

    #[error(
        "type/multiplicity inconsistency: fs sum {fs_sum:.6}, commutant dimension {commutant_dim}"
    )]
    TypeInconsistency { fs_sum: f64, commutant_dim: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("coordinate extraction residual {0:.3e} exceeds 1e-8")]
    CoordinateResidual(f64),

    #[error("kernel resolution ambiguous: {0}")]
    KernelAmbiguous(String),

    #[error("membership decision ambiguous: distance {0:.3e} inside the guard band")]
    GuardBand(f64),

    #[error("mismatched quotient contexts: {0} vs {1}")]
    ContextMismatch(String, String),

    #[error("expected a unit vector, got norm {0:.12}")]
    NotUnit(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    VectorDimension { expected: usize, got: usize },

    #[error("cohomogeneity {got} is not 2")]
    Cohomogeneity { got: usize },

    #[error("matrix is not equivariant: commutator residual {0:.3e}")]
    NotEquivariant(f64),

    #[error("not a rotation: {0}")]
    NotRotation(String),

    #[error("unknown catalog id {0:?}")]
    UnknownCatalog(String),

    #[error("operation requires a finite group")]
    NotFinite,

    #[error("kernel differs from the central elements in the identity component: {0}")]
    BoundaryFormula(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by a tolerance or sampling decision that landed in a
    /// guard band, rather than by invalid input.
    pub fn is_ambiguity(&self) -> bool {
        if let Error::Stage { source, .. } = self {
            return source.is_ambiguity();
        }
        matches!(
            self,
            Error::DedupAmbiguity { .. }
                | Error::RankAmbiguity { .. }
                | Error::IsotypicSeparation { .. }
                | Error::KernelAmbiguous(_)
                | Error::GuardBand(_)
        )
    }
}

/// Tag an error with the pipeline stage it came from.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| match e {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        })
    }
}
