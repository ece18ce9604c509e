//! Exact univariate polynomial arithmetic over the integers, the polynomial
//! families of the theory (Chebyshev, Fibonacci product polynomials), the
//! tridiagonal characteristic-polynomial recursion, closed forms for the
//! three named snake families, and exact characteristic polynomials of
//! integer matrices.

mod charpoly;
mod families;
mod poly;
mod roots;

pub use charpoly::charpoly_exact;
pub use families::{
    chebyshev_t, chebyshev_u, closed_form_h, closed_form_l, closed_form_staircase, fib_poly_p,
    fib_poly_q, fib_roots, fibonacci, tridiag_charpoly, tridiag_principal_charpolys, FibFamily,
    PolyFamily, PolySeqCache,
};
pub use poly::IntPoly;
pub use roots::{poly_roots_in, tridiag_eigenvalues};

use thiserror::Error;

/// Errors raised by polynomial operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers at degree {degree}")]
    NonExactDivision { degree: usize },
    #[error("index {index} is below the convention base for this family")]
    IndexBelowConvention { index: i64 },
    #[error("staircase closed form requires m >= 2, got {m}")]
    StaircaseTooSmall { m: usize },
}
