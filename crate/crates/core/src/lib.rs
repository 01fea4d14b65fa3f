//! Partition-regularity analysis for integer polynomials.
//!
//! * [`poly`]: parsing, canonical form, exact evaluation and degree data.
//! * [`classifier`]: decision procedures producing certified [`classifier::Verdict`]s.
//! * [`witness`]: explicit solutions built by lifting reduct solutions.
//! * [`search`]: backtracking over finite colorings of `[1..N]`.
//! * [`corpus`] and [`report`]: the bundled fixture corpus and JSON reports.

pub mod classifier;
pub mod corpus;
pub mod poly;
pub mod report;
pub mod search;
pub mod witness;

pub use poly::{Monomial, PolyError, Polynomial, Variable};
