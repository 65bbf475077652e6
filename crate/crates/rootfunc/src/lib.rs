//! Exact computation with bounded root functionals of square polynomial systems.
//!
//! The library works over exact coefficient fields (rationals by default) and
//! provides, bottom up:
//!
//! * [`ring`] — sparse multivariate polynomials, the doubled variable set
//!   `(x, y)`, square system profiles, and a text grammar for polynomial I/O;
//! * [`deriv`] — difference derivatives `∇F(x, y)` with
//!   `Σ (x_k − y_k)·∇^k F = F(x) − F(y)`, their swap and product rules, and
//!   the discrepancy decomposition relating two derivatives of one polynomial;
//! * [`functional`] — linear functionals on degree-truncated polynomial
//!   spaces, evaluation functionals, and partial application in the `y` block;
//! * [`ideal`] — degree-truncated generator spans, Macaulay matrices, exact
//!   membership certificates, and annihilator (bounded root functional) bases;
//! * [`bezout`] — the bordered Bezoutian determinant `R(x, y)`, the extension
//!   step `H(x)`, the product of two bounded root functionals, and the
//!   commutativity check between the two product orders;
//! * [`suites`] — seeded randomized verification suites over all of the above,
//!   with machine-readable reports.
//!
//! All arithmetic is exact; every stated identity is checked with `==`, never
//! with tolerances.

pub mod bezout;
pub mod deriv;
pub mod functional;
pub mod ideal;
pub mod ring;
pub mod suites;

pub use ring::field::{ExactField, Rat};
pub use ring::{degree::Degree, exponent::Exponent, poly::Poly, polyxy::PolyXY, system::SystemProfile};
