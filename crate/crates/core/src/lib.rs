//! Exact combinatorics of anti-canonical divisors in rational surfaces and
//! the contact boundaries of their complements.
//!
//! Everything is computed over the integers or rationals with no
//! floating-point arithmetic.

pub mod classifier;
pub mod divisor;
pub mod duality;
pub mod enumeration;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod monodromy;
pub mod moves;
pub mod report;

pub use divisor::{Descriptors, Divisor, SphereCycle};
pub use linalg::{Inertia, IntMatrix, Rational};
