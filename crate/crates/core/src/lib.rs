//! Unknot recognition by branch-and-bound search for normal surfaces.

pub mod batch;
pub mod corpus;
pub mod crush;
pub mod error;
pub mod lp;
pub mod normal;
pub mod onevertex;
pub mod oracle;
pub mod pipeline;
pub mod search;
pub mod tri;

pub use error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
