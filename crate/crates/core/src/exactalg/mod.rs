//! Exact arithmetic over `Q` and real quadratic fields, certified interval arithmetic, and
//! the linear algebra built on them.

pub mod interval;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod snf;

pub use interval::{BigFloat, BigFloatInterval, IntervalMatrix, DEFAULT_PRECISION};
pub use matrix::{exact_rank, signature, Pivot, SignatureCert, SymMatrix};
pub use poly::{minimal_polynomial, MinimalPolynomial};
pub use quad::{quad_sign, rat, QuadExtElem, QuadField, Rational};
pub use snf::{smith_decomposition, smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("{0} is not a square-free integer >= 2")]
    NotSquareFree(u64),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("entries from Q(sqrt {0}) in a matrix over Q(sqrt {1})")]
    FieldMismatch(u64, u64),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error("interval lower bound exceeds upper bound")]
    InvertedInterval,
    #[error("interval divisor contains zero")]
    DivisionByZeroInterval,
    #[error("square root of an interval with negative part")]
    NegativeSqrt,
}
