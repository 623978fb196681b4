//! Exact computations with Toeplitz operators on the pluriharmonic Hardy
//! space `h²(T²)` of the bidisk, with polynomial symbols.

pub mod analysis;
pub mod catalog;
pub mod characterize;
pub mod error;
pub mod operators;
pub mod parse;
pub mod poly;
pub mod random;
pub mod report;
pub mod scalar;
pub mod spaces;
pub mod suites;

pub use error::{AnalysisError, OpError, ParseError};
pub use operators::{OperatorKind, OperatorMatrix, SweepVerdict, Truncation};
pub use parse::parse_symbol;
pub use poly::{ComplexPoly, Laurent, LaurentPoly, MonomialIndex};
pub use scalar::{Rational, Scalar};
