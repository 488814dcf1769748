//! Numerical q-series: q-shifted factorials, basic hypergeometric series,
//! q-calculus, q-orthogonal polynomial families, q-beta integrals, and a
//! harness that checks classical q-series identities by evaluating both sides
//! independently.

pub mod cli;
pub mod error;
pub mod hyperseries;
pub mod identities;
pub mod polyfamilies;
pub mod qcalculus;
pub mod qcore;
pub mod qintegrals;
pub mod report;

pub use error::{QError, Result};
pub use qcore::{Base, ComplexScalar, TruncationPolicy};
