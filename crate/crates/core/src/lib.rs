//! Ideal membership testing for combinatorial ideals of Boolean CSP instances.
//!
//! The library decides whether a polynomial vanishes on every solution of a
//! Boolean constraint satisfaction instance. For constraint languages closed
//! under Majority, Min or Max the decision runs through structure-aware
//! Groebner basis computation with machine-checkable certificates; everything
//! else falls back to a brute-force oracle on small instances.
//!
//! Module map:
//! - [`poly`]: exact sparse multivariate polynomials over the rationals,
//!   monomial orders, division, S-polynomials and the interlacing machinery.
//! - [`csp`]: Boolean relations, polymorphism detection, clause extraction and
//!   class-specific satisfiability solvers.
//! - [`encoder`]: CSP instance to generator-set translation.
//! - [`groebner`]: Buchberger's algorithm (generic and structure-aware),
//!   autoreduction, truncated bases and elimination ideals.
//! - [`solver`]: the top-level membership decision with evidence.
//! - [`oracle`]: brute-force ground truth for small instances.

pub mod csp;
pub mod encoder;
pub mod error;
pub mod groebner;
pub mod oracle;
pub mod poly;
pub mod solver;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
