//! Dense complex linear algebra: states, operators, Schatten norms, partial
//! traces, permutation operators and orthonormalization.

mod combin;
mod dense;
mod perm;
pub mod random;
mod span;

pub use combin::{binomial, factorial, pairwise_sum};
pub use dense::{
    partial_trace, partial_trace_pure, schatten_norm, singular_values, DenseOperator, DenseState,
    SchattenP,
};
pub use perm::{haar_unitary_frame_potential, perm_operator, sym_dimension, sym_projector, Permutation};
pub use span::{orthonormal_span, Span};

pub(crate) use dense::{gram_of_rows, inner_slices};

pub use num_complex::Complex64 as C64;

/// Default absolute tolerance for equality assertions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
