//! Exact symbolic computation for the compact quantum groups SU_q(2), U_q(2), SO_q(3)
//! and their `q = 0` limits: normal forms, Hopf structure, irreducible corepresentations,
//! idempotent states and their duals, with numeric cross-checks.

pub mod algebra;
pub mod corep;
pub mod dual;
pub mod error;
pub mod matrix;
pub mod qzero;
pub mod repnum;
pub mod report;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use report::CheckReport;
pub use scalar::QRat;
