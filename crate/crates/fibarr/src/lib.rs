//! Exact computation of twisted parallel transport, fiber monodromy and
//! first-characteristic-variety membership for fibered real line arrangements.
//!
//! The library works over the cyclotomic fields `Q(zeta_N)` with no floating
//! point anywhere on the exact path. Monodromy and boundary matrices are
//! built once per arrangement as matrices of integer Laurent polynomials in
//! the line parameters `s_1..s_n`, `t_1..t_m`, then evaluated at torus points.

pub mod arrangement;
pub mod charvar;
pub mod cyclo;
pub mod fox;
pub mod laurent;
pub mod matrix;
pub mod monodromy;
pub mod point;
pub mod polygon;
pub mod rational;
pub mod report;
pub mod sweep;

pub use arrangement::{Arrangement, BlockPartition, Line, Wiring};
pub use charvar::{BoundaryOperator, MembershipReport};
pub use cyclo::CycloNum;
pub use laurent::{LaurentPoly, Param};
pub use matrix::{ExactMatrix, LaurentMatrix};
pub use point::{ParameterPoint, ProjPoint};
pub use polygon::PolygonModel;
pub use rational::Rational;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arrangement is not fibered: singular point at x={x}, y={y} lies on no vertical line")]
    NotFibered { x: Rational, y: Rational },
    #[error("duplicate line: {0}")]
    DuplicateLine(String),
    #[error("malformed block partition: {0}")]
    MalformedPartition(String),
    #[error("basepoint {0} collides with a singular projection")]
    BasepointOnSingular(Rational),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unassigned parameter {0}")]
    UnassignedParameter(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("unsupported stratum: parameter {0} equals 1")]
    UnsupportedStratum(String),
    #[error("matrix not invertible over the Laurent ring")]
    NotInvertible,
    #[error("projective product relation violated: prod(s) * prod(t) != 1")]
    ProductRelation,
    #[error("geometric and combinatorial models disagree: {0}")]
    GeometryMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
