//! Trace-formula and explicit-formula computations for Hilbert modular forms
//! over `Q` and real quadratic fields of narrow class number one.
//!
//! The pipeline runs from exact field arithmetic ([`field`]) through
//! Kloosterman sums and Bessel functions to the Petersson trace formula
//! ([`petersson`]), then to family-averaged one-level densities
//! ([`explicit`]) compared against random matrix predictions ([`rmt`]).
//! [`oracle`] holds independent reference values.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod explicit;
pub mod field;
pub mod kloosterman;
pub mod oracle;
pub mod petersson;
pub mod rmt;
pub mod special;

mod quad;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use explicit::{DensityReport, TestFunction, TestFunctionKind};
pub use field::{FieldElement, FieldKey, IdealRep, PrimeIdeal, TotallyRealField};
pub use petersson::{TraceParams, TraceResult};
pub use rmt::Group;

pub use num_complex::Complex64;
