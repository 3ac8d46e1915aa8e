use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::series::{NormalizedSeries, TruncatedSeries};
use crate::{Complex, Error, Result};

const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub theta: f64,
    pub w: f64,
}

/// Discrete signed measure on the circle with total mass 2.
///
/// `p(z) = ½ Σ w_j (1 + (1-2ρ) z e^{-iθ_j}) / (1 - z e^{-iθ_j})` then has
/// `p(0) = 1`, and lies in `P_k(ρ)` whenever `Σ|w_j| <= k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HerglotzMeasure {
    pub atoms: Vec<Atom>,
}

impl HerglotzMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let m = Self { atoms };
        m.validate()?;
        Ok(m)
    }

    /// A single point mass of weight 2 at angle `theta`.
    pub fn point(theta: f64) -> Self {
        Self {
            atoms: vec![Atom { theta, w: 2.0 }],
        }
    }

    /// Atoms at 0 and π with weights `k/2 + 1` and `1 - k/2`, the extremal
    /// measure of `P_k`.
    pub fn two_point(k: f64) -> Self {
        Self {
            atoms: vec![
                Atom {
                    theta: 0.0,
                    w: k / 2.0 + 1.0,
                },
                Atom {
                    theta: std::f64::consts::PI,
                    w: 1.0 - k / 2.0,
                },
            ],
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.w.abs()).sum()
    }

    /// Mass 2, finite atoms on `[0, 2π)`.
    pub fn validate(&self) -> Result<()> {
        if self.atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        for a in &self.atoms {
            if !(a.w.is_finite() && a.theta.is_finite()) {
                return Err(Error::InvalidMeasure("non-finite atom".into()));
            }
            if !(0.0..TAU).contains(&a.theta) {
                return Err(Error::InvalidMeasure(format!("angle {} outside [0, 2π)", a.theta)));
            }
        }
        if (self.total_mass() - 2.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!(
                "total mass must be 2, got {}",
                self.total_mass()
            )));
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus `Σ|w| <= k`; negative weights need `k > 2`.
    pub fn validate_for(&self, k: f64) -> Result<()> {
        self.validate()?;
        if self.total_variation() > k + MASS_TOL {
            return Err(Error::InvalidMeasure(format!(
                "total variation {} exceeds k = {k}",
                self.total_variation()
            )));
        }
        if k <= 2.0 && self.atoms.iter().any(|a| a.w < 0.0) {
            return Err(Error::InvalidMeasure("negative weights require k > 2".into()));
        }
        Ok(())
    }

    fn coefficients(&self, rho: f64, order: usize, damping: impl Fn(usize) -> f64) -> NormalizedSeries {
        let mut coeffs = vec![Complex::new(0.0, 0.0); order + 1];
        coeffs[0] = Complex::new(1.0, 0.0);
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            let s: Complex = self
                .atoms
                .iter()
                .map(|a| a.w * Complex::from_polar(1.0, -(n as f64) * a.theta))
                .sum();
            *c = s * ((1.0 - rho) * damping(n));
        }
        NormalizedSeries::new(TruncatedSeries::from_vec_unchecked(coeffs)).expect("unit constant")
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!("rho must lie in [0, 1), got {rho}")));
    }
    Ok(())
}

/// Taylor coefficients `p₀ = 1`, `pₙ = (1-ρ) Σ w_j e^{-inθ_j}` of the
/// Herglotz integral of `μ`, truncated at `order`.
pub fn herglotz_to_series(mu: &HerglotzMeasure, rho: f64, order: usize) -> Result<NormalizedSeries> {
    mu.validate()?;
    check_rho(rho)?;
    Ok(mu.coefficients(rho, order, |_| 1.0))
}

/// Degree-`order` polynomial member of `P_k(ρ)` built from `μ`.
///
/// The coefficients carry the Fejér factors `1 - n/(order+1)`, i.e. `μ` is
/// smoothed by the (nonnegative) Fejér kernel before taking the Herglotz
/// integral. Unlike the plain truncation, the result keeps `Re p >= ρ` on
/// the whole closed disk for nonnegative `μ`, and its boundary integral
/// stays within `Σ|w| · π` for signed `μ`.
pub fn herglotz_polynomial(mu: &HerglotzMeasure, rho: f64, order: usize) -> Result<NormalizedSeries> {
    mu.validate()?;
    check_rho(rho)?;
    let denom = (order + 1) as f64;
    Ok(mu.coefficients(rho, order, |n| 1.0 - n as f64 / denom))
}

/// `(k/4 + 1/2) p₁ - (k/4 - 1/2) p₂`.
pub fn pk_combine(p1: &NormalizedSeries, p2: &NormalizedSeries, k: f64) -> Result<NormalizedSeries> {
    let a = Complex::new(k / 4.0 + 0.5, 0.0);
    let b = Complex::new(k / 4.0 - 0.5, 0.0);
    let s = p1.scale(a).sub(&p2.scale(b))?;
    Ok(NormalizedSeries::normalize_unchecked(s))
}

/// Splits the Herglotz function of `μ` into `p₁, p₂ ∈ P(ρ)` with
/// `p = (k/4 + 1/2) p₁ - (k/4 - 1/2) p₂`.
///
/// `p₁` comes from the positive part of `μ`, `p₂` from the negative part,
/// each rescaled to mass 2. When `Σ|w| < k` both are padded with the
/// constant function 1 (the Herglotz integral of arc length) so that the
/// fixed weights `k/4 ± 1/2` still reproduce `p`.
pub fn decompose_pk(
    mu: &HerglotzMeasure,
    k: f64,
    rho: f64,
    order: usize,
) -> Result<(NormalizedSeries, NormalizedSeries)> {
    if !(k.is_finite() && k >= 2.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    mu.validate()?;
    check_rho(rho)?;
    let positive: Vec<Atom> = mu.atoms.iter().copied().filter(|a| a.w > 0.0).collect();
    let negative: Vec<Atom> = mu
        .atoms
        .iter()
        .filter(|a| a.w < 0.0)
        .map(|a| Atom {
            theta: a.theta,
            w: -a.w,
        })
        .collect();
    if k == 2.0 && !negative.is_empty() {
        return Err(Error::InvalidMeasure("k = 2 admits no negative part".into()));
    }
    let variation = mu.total_variation();
    if variation > k + MASS_TOL {
        return Err(Error::InvalidMeasure(format!(
            "total variation {variation} exceeds k = {k}"
        )));
    }
    let pos_mass: f64 = positive.iter().map(|a| a.w).sum();
    let neg_mass: f64 = negative.iter().map(|a| a.w).sum();
    let pad = (k - variation).max(0.0) / 2.0;

    // Herglotz coefficients of an (unnormalized) positive measure, plus `pad`
    // mass spread uniformly (which contributes only to the constant term).
    let part = |atoms: &[Atom], mass: f64, total: f64| -> NormalizedSeries {
        if mass <= 0.0 {
            return NormalizedSeries::one(order);
        }
        let scaled = HerglotzMeasure {
            atoms: atoms
                .iter()
                .map(|a| Atom {
                    theta: a.theta,
                    w: a.w * 2.0 / mass,
                })
                .collect(),
        };
        let weight = mass / total;
        let raw = scaled.coefficients(rho, order, |_| 1.0);
        NormalizedSeries::normalize_unchecked(raw.scale(Complex::new(weight, 0.0)))
    };
    let p1 = part(&positive, pos_mass, pos_mass + pad);
    let p2 = part(&negative, neg_mass, neg_mass + pad);
    Ok((p1, p2))
}
