//! Exact p-Frobenius numbers and related sums for p-numerical semigroups.
//!
//! For coprime generators `a_1 < ... < a_k` and `p >= 0`, the library
//! computes the p-Apéry set and from it, in closed form:
//!
//! - the p-Frobenius number, p-genus and p-Sylvester sum,
//! - power sums `sum n^mu` over `{ n >= 1 : d(n) <= p }` via Bernoulli numbers,
//! - weighted sums `sum lambda^n n^mu` with `lambda` in a number field, via
//!   Eulerian numbers.
//!
//! The [`oracle`] module recomputes every quantity by direct enumeration.

pub mod error;
pub mod exactmath;
pub mod exec;
pub mod formulas;
pub mod oracle;
pub mod semigroup;

pub use error::{Error, Result};
pub use exactmath::{Modulus, NumberFieldElement, Rational};
pub use exec::Strategy;
pub use semigroup::{apery_set, denumerant, denumerant_table, is_in_sp, DenumerantTable, Generators, PAperySet};
