//! Shared error type for the exact pipeline.

use crate::rational::Rational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Sturm operations are undefined on the zero polynomial.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// An interval endpoint is a root of the polynomial; the caller must
    /// shrink or split the interval (or pass the squarefree part).
    #[error("endpoint {at} is a root")]
    EndpointIsRoot { at: Rational },

    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    /// The extended-ansatz reduction requires the per-block product structure.
    #[error("structure error: {0}")]
    Structure(String),

    /// Field-level validation failures for a parsed spec.
    #[error("invalid spec: {}", .0.join("; "))]
    Validation(Vec<String>),
}
