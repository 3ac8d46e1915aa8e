//! Carathéodory-type classes `P(ρ)` and `P_k(ρ)`, the Bazilevič
//! constructions, and the class functional
//!
//! ```text
//! G = (1-γ)(E^m f/z)^ϑ + γ (E^{m+1} f/z)(E^m f/z)^{ϑ-1}
//! ```
//!
//! whose membership in `P_k(ρ)` defines the class `M^{m,γ}_{λ,α,β}(k,ϑ,ρ)`.

mod bazilevic;
mod functional;
mod herglotz;
mod membership;

use serde::{Deserialize, Serialize};

use crate::operator::complex_pair;
use crate::{Complex, Error, Result};

pub use bazilevic::{bazilevic_construct, in_named_subclass, BazilevicParams, NamedClass};
pub use functional::{class_functional, functional_with_gamma, solve_functional_inverse};
pub use herglotz::{decompose_pk, herglotz_polynomial, herglotz_to_series, pk_combine, Atom, HerglotzMeasure};
pub use membership::{
    in_p_rho, in_pk_rho, pk_integral_at_radius, sample_disk, zero_count, DiskProbe, DiskSample, MembershipReport,
    Verdict,
};

/// `(k, ρ, ϑ, γ)` of the class `M^{m,γ}_{λ,α,β}(k,ϑ,ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub k: f64,
    pub rho: f64,
    /// The Bazilevič exponent ϑ.
    #[serde(rename = "theta")]
    pub exponent: f64,
    #[serde(with = "complex_pair")]
    pub gamma: Complex,
}

impl ClassParams {
    pub fn new(k: f64, rho: f64, exponent: f64, gamma: Complex) -> Result<Self> {
        let cp = Self {
            k,
            rho,
            exponent,
            gamma,
        };
        cp.validate()?;
        Ok(cp)
    }

    pub fn real(k: f64, rho: f64, exponent: f64, gamma: f64) -> Result<Self> {
        Self::new(k, rho, exponent, Complex::new(gamma, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.k >= 2.0) {
            return Err(Error::InvalidParameter(format!("k must be >= 2, got {}", self.k)));
        }
        if !(self.rho >= 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in [0, 1), got {}",
                self.rho
            )));
        }
        if !(self.exponent.is_finite() && self.exponent > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "theta must be > 0, got {}",
                self.exponent
            )));
        }
        if !(self.gamma.is_finite() && self.gamma.re > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Re(gamma) must be > 0, got {}",
                self.gamma
            )));
        }
        Ok(())
    }

    /// γ as a positive real, as required by the inverse solver and the verifiers.
    pub fn real_gamma(&self) -> Result<f64> {
        if self.gamma.im != 0.0 || !(self.gamma.re > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be real and > 0 here, got {}",
                self.gamma
            )));
        }
        Ok(self.gamma.re)
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        Self {
            gamma: Complex::new(gamma, 0.0),
            ..self
        }
    }
}
