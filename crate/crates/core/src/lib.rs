//! Arbitrary-precision verification of finite arctangent reciprocity
//! identities, the infinite series derived from them, and the discrete
//! Dirichlet problem they encode.

pub mod complex;
pub mod elliptic;
pub mod error;
pub mod finite;
pub mod grid;
pub mod lemmas;
pub mod number_theory;
pub mod par;
pub mod precision;
pub mod quadrature;
pub mod registry;
pub mod report;
pub mod series;
pub mod suite;
pub mod sweep;

pub use complex::ComplexScalar;
pub use error::{Error, Result};
pub use precision::{PrecisionContext, Scalar, SeriesOutcome};
pub use report::{IdentityReport, Params, Status};
