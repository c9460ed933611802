//! Exact linear algebra over the rationals: elimination, kernels, span
//! membership, Sylvester inertia and minimal polynomials. Prime fields are
//! used only as an accelerator whose results are re-verified exactly.

mod elim;
mod field;
mod inertia;
mod matrix;
mod poly;
mod span;

pub use elim::{bareiss_rank, integer_row, nullspace, nullspace_rows, rank, Echelon, Rref, SparseRow};
pub use field::{format_rational, parse_rational, rat, reconstruct, rint, Field, Fp, Rational, Zp, P61};
pub use inertia::{float_inertia, inertia, Inertia};
pub use matrix::{MatrixQ, DENSE_LIMIT};
pub use poly::{minimal_polynomial, Poly};
pub use span::{solve_in_span, SpanSolver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("target is not in the span of the basis")]
    NotInSpan,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("vector lengths do not match")]
    LengthMismatch,
}
