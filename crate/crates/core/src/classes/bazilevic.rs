use serde::{Deserialize, Serialize};

use crate::classes::{in_p_rho, DiskProbe, MembershipReport};
use crate::series::{NormalizedSeries, TruncatedSeries};
use crate::{Error, Result};

/// Data of the Bazilevič integral
/// `f = [(ϑ+iτ) ∫₀^z p(t) g(t)^ϑ t^{iτ-1} dt]^{1/(ϑ+iτ)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BazilevicParams {
    #[serde(rename = "theta")]
    pub exponent: f64,
    pub tau: f64,
    pub g: TruncatedSeries,
    pub p: NormalizedSeries,
}

/// Builds the Bazilevič function of order `order` for `τ = 0`.
///
/// Writing `s = p (g/z)^ϑ`, the integral is `z^ϑ S(z)` with
/// `Sₙ = ϑ sₙ/(ϑ+n)`, so `f = z S^{1/ϑ}`.
pub fn bazilevic_construct(bp: &BazilevicParams, order: usize) -> Result<TruncatedSeries> {
    if bp.tau != 0.0 {
        return Err(Error::InvalidParameter("only tau = 0 is supported".into()));
    }
    let theta = bp.exponent;
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::InvalidParameter(format!("theta must be > 0, got {theta}")));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    bp.g.check_class_a()?;
    let g = bp.g.resized(order).quotient_by_z()?;
    let p = NormalizedSeries::normalize_unchecked(bp.p.resized(order - 1));
    let s = p.multiply(&*g.power(theta)?)?;
    let big_s = NormalizedSeries::normalize_unchecked(s.map_indexed(|n, c| c * theta / (theta + n as f64)));
    Ok(big_s.power(1.0 / theta)?.shift_up())
}

/// Subclasses defined by a single positivity condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "UPPERCASE")]
pub enum NamedClass {
    /// `Re(zf'/f · (f/z)^ϑ) > ρ`.
    B2 {
        #[serde(rename = "theta")]
        exponent: f64,
        rho: f64,
    },
    /// Starlike of order ρ: `Re(zf'/f) > ρ`.
    B3 { rho: f64 },
    /// Bounded turning: `Re f' > ρ`.
    B4 { rho: f64 },
    /// `Re(f/z) > ρ`.
    M { rho: f64 },
}

impl NamedClass {
    pub fn rho(&self) -> f64 {
        match *self {
            NamedClass::B2 { rho, .. } | NamedClass::B3 { rho } | NamedClass::B4 { rho } | NamedClass::M { rho } => rho,
        }
    }

    /// The expression whose real part must exceed ρ, as a unit-constant series.
    pub fn defining_expression(&self, f: &TruncatedSeries) -> Result<NormalizedSeries> {
        f.check_class_a()?;
        let q = f.quotient_by_z()?;
        let fp = NormalizedSeries::normalize_unchecked(f.derivative());
        let expr = match *self {
            NamedClass::B2 { exponent, .. } => fp.multiply(&*q.power(exponent - 1.0)?)?,
            NamedClass::B3 { .. } => fp.divide(&q)?,
            NamedClass::B4 { .. } => fp.into_series(),
            NamedClass::M { .. } => q.into_series(),
        };
        Ok(NormalizedSeries::normalize_unchecked(expr))
    }
}

/// Probe-grid test of `f` against one of the [`NamedClass`] conditions.
pub fn in_named_subclass(f: &TruncatedSeries, which: &NamedClass, probe: &DiskProbe) -> Result<MembershipReport> {
    let rho = which.rho();
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!("rho must lie in [0, 1), got {rho}")));
    }
    in_p_rho(&*which.defining_expression(f)?, rho, probe)
}
