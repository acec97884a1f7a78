//! Exact arithmetic in cyclotomic fields `Q(zeta_m)` and dense exact linear
//! algebra over them.
//!
//! Every coefficient in the crate lives here: group actions, merge and split
//! maps, loop values. Equality is decidable, so no check anywhere uses a
//! tolerance.

mod cyclotomic;
mod linsolve;
mod literal;
mod matrix;
mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, lcm};
pub use linsolve::{RowEchelon, SparseRow};
pub use literal::parse_scalar;
pub use matrix::ExactMatrix;
pub use scalar::{scalar_arith, ArithOp, ArithResult, Rational, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("conductor mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("invalid scalar literal {text:?}: {reason}")]
    Literal { text: String, reason: String },
    #[error("conductor must be positive")]
    ZeroConductor,
}
