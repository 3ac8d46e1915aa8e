//! Mittag-Leffler linear operator, Bazilevič-type class functionals and
//! numerical verifiers for their inclusion, radius and integral-operator
//! properties.
//!
//! Every analytic function on the unit disk is represented by its Taylor
//! polynomial about the origin ([`TruncatedSeries`]). The operators in
//! [`operator`] act diagonally on coefficients, the class functionals in
//! [`classes`] are built from truncated series algebra, and [`theorems`]
//! drives seeded randomized experiments over those building blocks.

// Range checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classes;
pub mod error;
pub mod operator;
pub mod series;
pub mod special;
pub mod theorems;

pub use classes::{ClassParams, DiskProbe, HerglotzMeasure, MembershipReport, Verdict};
pub use error::{Error, Result};
pub use operator::{BernardiParams, OperatorParams};
pub use series::{NormalizedSeries, TruncatedSeries};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Default truncation order of series built by the verifiers and the CLI.
pub const DEFAULT_ORDER: usize = 64;
