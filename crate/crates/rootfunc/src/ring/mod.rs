//! Sparse exact-coefficient polynomial arithmetic.
//!
//! Polynomials are stored as maps from exponent vectors to nonzero
//! coefficients, ordered graded-lexicographically (total degree first, then
//! lexicographic on the exponent entries). The same order drives canonical
//! printing, matrix column indexing and JSON serialization everywhere else in
//! the crate.

pub mod degree;
pub mod exponent;
pub mod field;
pub mod parse;
pub mod poly;
pub mod polyxy;
pub mod system;

pub use degree::Degree;
pub use exponent::Exponent;
pub use field::{ExactField, Rat};
pub use parse::{poly_parse, system_parse, ParseError, SystemParseError};
pub use poly::Poly;
pub use polyxy::PolyXY;
pub use system::{SystemError, SystemProfile};
