//! The Mittag-Leffler linear operator and the Bernardi-Libera-Livingston
//! integral operator.
//!
//! Both act diagonally on the Taylor coefficients of a normalized function
//! `f(z) = z + Σ aₙ zⁿ`:
//!
//! * Mittag-Leffler: `aₙ ↦ Γ(β)(1+(n-1)λ)^m / Γ(α(n-1)+β) · aₙ`
//! * Bernardi: `aₙ ↦ (σ+1)/(σ+n) · aₙ`

use serde::{Deserialize, Serialize};

use crate::series::{max_residual, TruncatedSeries};
use crate::special::{reciprocal_gamma_ratio, scaled_div};
use crate::{Complex, Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Parameters `(m, λ, α, β)` of the Mittag-Leffler operator.
///
/// `α = 0` is admitted for the Al-Oboudi and Sălăgean reductions, where the
/// Gamma quotient collapses to `Γ(β)/Γ(β) = 1`; otherwise `Re α > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub m: u32,
    pub lambda: f64,
    #[serde(with = "complex_pair")]
    pub alpha: Complex,
    #[serde(with = "complex_pair")]
    pub beta: Complex,
}

impl OperatorParams {
    pub fn new(m: u32, lambda: f64, alpha: Complex, beta: Complex) -> Result<Self> {
        let p = Self { m, lambda, alpha, beta };
        p.validate()?;
        Ok(p)
    }

    /// `m = 0, λ = 1, α = 0, β = 1`: the identity operator.
    pub fn identity() -> Self {
        Self::al_oboudi(0, 1.0)
    }

    /// Al-Oboudi operator: multiplier `(1+(n-1)λ)^m`.
    pub fn al_oboudi(m: u32, lambda: f64) -> Self {
        Self {
            m,
            lambda,
            alpha: ZERO,
            beta: Complex::new(1.0, 0.0),
        }
    }

    /// Sălăgean operator: multiplier `n^m`.
    pub fn salagean(m: u32) -> Self {
        Self::al_oboudi(m, 1.0)
    }

    /// `m = 0, λ = 1`: multiplier `Γ(β)/Γ(α(n-1)+β)`, the coefficients of
    /// `z Γ(β) E_{α,β}(z)`.
    pub fn mittag_leffler_kernel(alpha: Complex, beta: Complex) -> Self {
        Self {
            m: 0,
            lambda: 1.0,
            alpha,
            beta,
        }
    }

    pub fn with_m(self, m: u32) -> Self {
        Self { m, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be >= 0, got {}",
                self.lambda
            )));
        }
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::NonFinite("operator alpha/beta".into()));
        }
        if !(self.beta.re > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Re(beta) must be > 0, got {}",
                self.beta
            )));
        }
        if self.alpha != ZERO && !(self.alpha.re > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Re(alpha) must be > 0 (or alpha = 0 exactly), got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    fn growth(&self, n: usize) -> f64 {
        let base = 1.0 + (n - 1) as f64 * self.lambda;
        (0..self.m).fold(1.0, |acc, _| acc * base)
    }
}

/// Operator multiplier for the coefficient of `zⁿ`, `n >= 1`.
pub fn ml_multiplier(n: usize, p: &OperatorParams) -> Result<Complex> {
    p.validate()?;
    multiplier_unchecked(n, p)
}

fn multiplier_unchecked(n: usize, p: &OperatorParams) -> Result<Complex> {
    if n == 0 {
        return Err(Error::InvalidParameter("multiplier index starts at 1".into()));
    }
    if n == 1 {
        return Ok(Complex::new(1.0, 0.0));
    }
    let growth = Complex::new(p.growth(n), 0.0);
    if p.alpha == ZERO {
        return Ok(growth);
    }
    let arg = p.alpha * (n - 1) as f64 + p.beta;
    Ok(reciprocal_gamma_ratio(p.beta, arg)? * growth)
}

/// Multipliers for `n = 1..=order`, computed once and shared read-only.
#[derive(Debug, Clone)]
pub struct MultiplierTable {
    params: OperatorParams,
    // values[n] for n in 0..=order; values[0] is unused and zero.
    values: Vec<Complex>,
}

impl MultiplierTable {
    pub fn new(params: &OperatorParams, order: usize) -> Result<Self> {
        params.validate()?;
        let mut values = vec![ZERO; order + 1];
        for (n, v) in values.iter_mut().enumerate().skip(1) {
            *v = multiplier_unchecked(n, params)?;
        }
        Ok(Self {
            params: *params,
            values,
        })
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Complex {
        self.values[n]
    }

    /// Applies the operator to a series of matching order. The constant
    /// coefficient is mapped to zero.
    pub fn apply(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        if f.order() != self.order() {
            return Err(Error::OrderMismatch {
                left: f.order(),
                right: self.order(),
            });
        }
        Ok(f.map_indexed(|n, c| if n == 0 { ZERO } else { c * self.values[n] }))
    }

    /// Undoes [`MultiplierTable::apply`]; fails where a multiplier vanishes or underflows.
    pub fn invert(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        if g.order() != self.order() {
            return Err(Error::OrderMismatch {
                left: g.order(),
                right: self.order(),
            });
        }
        let mut coeffs = Vec::with_capacity(g.order() + 1);
        coeffs.push(ZERO);
        for n in 1..=g.order() {
            let m = self.values[n];
            let c = g.coeff(n);
            if c == ZERO {
                coeffs.push(ZERO);
                continue;
            }
            let v = scaled_div(c, m);
            if m == ZERO || !v.is_finite() {
                return Err(Error::VanishingDenominator(n));
            }
            coeffs.push(v);
        }
        TruncatedSeries::new(coeffs)
    }
}

/// `E^m_{λ,α,β} f` for a normalized `f`.
pub fn apply_operator(f: &TruncatedSeries, p: &OperatorParams) -> Result<TruncatedSeries> {
    f.check_class_a()?;
    MultiplierTable::new(p, f.order())?.apply(f)
}

/// Largest residual of `E^{m+1}f = (1-λ)E^m f + λ z (E^m f)'`.
pub fn check_recurrence(f: &TruncatedSeries, p: &OperatorParams) -> Result<f64> {
    let em = apply_operator(f, p)?;
    let em1 = apply_operator(f, &p.with_m(p.m + 1))?;
    let rhs = em
        .scale(Complex::new(1.0 - p.lambda, 0.0))
        .add(&em.derivative_z().scale(Complex::new(p.lambda, 0.0)))?;
    max_residual(&em1, &rhs)
}

/// Order parameter `σ > -1` of the Bernardi-Libera-Livingston operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BernardiParams {
    pub sigma: f64,
}

impl BernardiParams {
    pub fn new(sigma: f64) -> Result<Self> {
        let b = Self { sigma };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > -1, got {}",
                self.sigma
            )));
        }
        Ok(())
    }

    pub fn multiplier(&self, n: usize) -> f64 {
        (self.sigma + 1.0) / (self.sigma + n as f64)
    }
}

/// `L_σ f(z) = (σ+1) z^{-σ} ∫₀^z t^{σ-1} f(t) dt`, integrated termwise.
pub fn bernardi(f: &TruncatedSeries, b: &BernardiParams) -> Result<TruncatedSeries> {
    b.validate()?;
    f.check_class_a()?;
    Ok(f.map_indexed(|n, c| if n == 0 { ZERO } else { c * b.multiplier(n) }))
}

/// Inverse of [`bernardi`]: `aₙ ↦ (σ+n)/(σ+1) · aₙ`.
pub fn bernardi_inverse(g: &TruncatedSeries, b: &BernardiParams) -> Result<TruncatedSeries> {
    b.validate()?;
    g.check_class_a()?;
    Ok(g.map_indexed(|n, c| if n == 0 { ZERO } else { c / b.multiplier(n) }))
}

/// Largest residual of `z(E^m L_σ f)' = (σ+1) E^m f - σ E^m L_σ f`.
pub fn check_bernardi_identity(f: &TruncatedSeries, p: &OperatorParams, b: &BernardiParams) -> Result<f64> {
    let table = MultiplierTable::new(p, f.order())?;
    let lf = bernardi(f, b)?;
    let em_lf = table.apply(&lf)?;
    let em_f = table.apply(f)?;
    let lhs = em_lf.derivative_z();
    let rhs = em_f
        .scale(Complex::new(b.sigma + 1.0, 0.0))
        .sub(&em_lf.scale(Complex::new(b.sigma, 0.0)))?;
    max_residual(&lhs, &rhs)
}

/// Serde helper: complex numbers as `[re, im]`.
pub(crate) mod complex_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Complex;

    pub fn serialize<S: Serializer>(c: &Complex, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }
}
