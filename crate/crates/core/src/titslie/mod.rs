//! The Tits construction L(𝔸, 𝔍) = Der(𝔸) ⊕ Der(𝔍) ∔ 𝔸′⊗𝔍′ as exact
//! structure constants, the reduced structure algebra, and Jacobi checks.
//!
//! Basis order: Der(𝔸) block, Der(𝔍) block, then e_x ⊗ t_q with the
//! imaginary unit x major and the traceless Jordan index q minor.

mod jacobi;
mod lie;
mod tits;

pub use jacobi::{check_jacobi, JacobiMode, JacobiReport};
pub use lie::{BasisLabel, IntForm, LieAlgebra, Provenance, SparseVec};
pub use tits::{build_str0, build_tits, TitsConstruction};

/// The bracket coefficients are used exactly as displayed; Jacobi holds
/// with the plain trace form, so no rescaling of the tensor block is needed.
pub const BRACKET_SCALING: &str = "1/1";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TitsError {
    #[error("failed to express {0} in the derivation basis")]
    SpanResidual(&'static str),
    #[error("vector length does not match the algebra dimension")]
    DimMismatch,
    #[error("malformed structure constant entry at ({0}, {1})")]
    BadEntry(usize, usize),
}

#[cfg(test)]
mod tests;
