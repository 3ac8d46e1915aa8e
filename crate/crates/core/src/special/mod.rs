//! Complex Gamma, the two-parameter Mittag-Leffler function and
//! one-dimensional quadrature on `[0, 1]`.

mod gamma;
mod mittag_leffler;
mod quadrature;

pub(crate) use gamma::scaled_div;
pub use gamma::{gamma, ln_gamma, reciprocal_gamma_ratio};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_with, SeriesControl};
pub use quadrature::{integrate, integrate_graded, integrate_interval, QuadratureScheme, QuadratureSpec};
