//! Truncated Taylor series about the origin.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `1, z, …, z^N`; every binary operation works at a common order and
//! discards terms beyond it. [`NormalizedSeries`] additionally guarantees a
//! constant term of exactly one, which is what logarithms and real powers
//! need for an unambiguous principal branch.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::{Complex, Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

// Tolerance for "coefficient of z is 1" when validating normalized functions.
const CLASS_A_TOL: f64 = 1e-12;

// Largest |t| for which `power` multiplies instead of exponentiating.
const MAX_INTEGER_POWER: f64 = 16.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
}

/// Wire form: `{"order": N, "coeffs": [[re, im], …]}`.
#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = Error;

    fn try_from(json: SeriesJson) -> Result<Self> {
        if json.coeffs.len() != json.order + 1 {
            return Err(Error::OrderMismatch {
                left: json.order,
                right: json.coeffs.len().saturating_sub(1),
            });
        }
        TruncatedSeries::new(json.coeffs.iter().map(|c| Complex::new(c[0], c[1])).collect())
    }
}

impl From<TruncatedSeries> for SeriesJson {
    fn from(s: TruncatedSeries) -> Self {
        SeriesJson {
            order: s.order(),
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TruncatedSeries {
    /// Builds a series from coefficients of `1, z, z², …`.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("series coefficient {i}")));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn constant(value: Complex, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = value;
        s
    }

    /// The identity function `z`, the unit of class A.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// Truncates or zero-pads to `order`.
    pub fn resized(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, ZERO);
        Self { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Applies a per-index multiplier `c_n ↦ m(n) c_n`.
    pub fn map_indexed(&self, f: impl Fn(usize, Complex) -> Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().enumerate().map(|(n, &c)| f(n, c)).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut out = vec![ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `c` with `c · divisor = self` to the common order, by forward substitution.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let lead = divisor.coeffs[0];
        if lead == ZERO {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let inv_lead = lead.inv();
        let mut out: Vec<Complex> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut acc = self.coeffs[n];
            for k in 1..=n {
                acc -= divisor.coeffs[k] * out[n - k];
            }
            out.push(acc * inv_lead);
        }
        Ok(Self { coeffs: out })
    }

    /// `z · d/dz`: coefficient n becomes `n · a_n`.
    pub fn derivative_z(&self) -> Self {
        self.map_indexed(|n, c| c * n as f64)
    }

    /// Ordinary derivative; the result has order one less (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zeros(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n + 1) as f64)
                .collect(),
        }
    }

    /// Horner evaluation of the partial sum.
    pub fn evaluate(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Divides by `z`; requires a zero constant term. Order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroConstant(self.coeffs[0]));
        }
        if self.order() == 0 {
            return Err(Error::InvalidParameter("cannot divide an order-0 series by z".into()));
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplies by `z`; order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Checks the class-A normalization `f(0) = 0`, `f'(0) = 1`.
    pub fn check_class_a(&self) -> Result<()> {
        if self.order() < 1 {
            return Err(Error::NotClassA("order must be at least 1".into()));
        }
        if self.coeffs[0].norm() > CLASS_A_TOL {
            return Err(Error::NotClassA(format!("f(0) = {}", self.coeffs[0])));
        }
        if (self.coeffs[1] - ONE).norm() > CLASS_A_TOL {
            return Err(Error::NotClassA(format!("f'(0) = {}", self.coeffs[1])));
        }
        Ok(())
    }

    /// `f(z)/z` for a class-A function, as a unit-constant series of order N-1.
    pub fn quotient_by_z(&self) -> Result<NormalizedSeries> {
        self.check_class_a()?;
        let mut coeffs = self.coeffs[1..].to_vec();
        coeffs[0] = ONE;
        Ok(NormalizedSeries(Self { coeffs }))
    }

    /// Exponential of a series with zero constant term.
    pub fn exp_series(&self) -> Result<NormalizedSeries> {
        if self.coeffs[0] != ZERO {
            return Err(Error::NonzeroConstant(self.coeffs[0]));
        }
        // n E_n = Σ_{k=1}^{n} k a_k E_{n-k}
        let len = self.coeffs.len();
        let mut out = Vec::with_capacity(len);
        out.push(ONE);
        for n in 1..len {
            let mut acc = ZERO;
            for k in 1..=n {
                acc += self.coeffs[k] * (k as f64) * out[n - k];
            }
            out.push(acc / n as f64);
        }
        Ok(NormalizedSeries(Self { coeffs: out }))
    }

    /// `c0^t · (self/c0)^t` with the principal logarithm of the constant.
    pub fn power_scaled(&self, t: f64) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == ZERO {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let unit = NormalizedSeries::new(self.scale(c0.inv()))?;
        Ok(unit.power(t)?.0.scale((c0.ln() * t).exp()))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sum_abs_coeffs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

/// Coefficient comparison: absolute when both magnitudes are at most one,
/// relative to the larger magnitude otherwise.
pub fn coeff_distance(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Largest [`coeff_distance`] over a common order.
pub fn max_residual(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<f64> {
    a.check_order(b)?;
    Ok(a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| coeff_distance(x, y))
        .fold(0.0, f64::max))
}

/// A series with constant term exactly one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct NormalizedSeries(TruncatedSeries);

impl<'de> Deserialize<'de> for NormalizedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = TruncatedSeries::deserialize(d)?;
        NormalizedSeries::new(s).map_err(serde::de::Error::custom)
    }
}

impl Deref for NormalizedSeries {
    type Target = TruncatedSeries;

    fn deref(&self) -> &TruncatedSeries {
        &self.0
    }
}

impl From<NormalizedSeries> for TruncatedSeries {
    fn from(s: NormalizedSeries) -> Self {
        s.0
    }
}

impl TryFrom<TruncatedSeries> for NormalizedSeries {
    type Error = Error;

    fn try_from(s: TruncatedSeries) -> Result<Self> {
        Self::new(s)
    }
}

impl NormalizedSeries {
    pub fn new(s: TruncatedSeries) -> Result<Self> {
        if s.coeffs[0] != ONE {
            return Err(Error::NotNormalized(s.coeffs[0]));
        }
        Ok(Self(s))
    }

    pub fn one(order: usize) -> Self {
        Self(TruncatedSeries::constant(ONE, order))
    }

    /// Forces the constant term to one. Used where it equals one
    /// mathematically but was produced by rounding-prone arithmetic.
    pub(crate) fn normalize_unchecked(mut s: TruncatedSeries) -> Self {
        s.coeffs[0] = ONE;
        Self(s)
    }

    pub fn as_series(&self) -> &TruncatedSeries {
        &self.0
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.0
    }

    /// Logarithm with zero constant term: `L' = a'/a`.
    pub fn log_series(&self) -> TruncatedSeries {
        // z L' = (z a') / a, then L_n = (z L')_n / n.
        let za = self.0.derivative_z();
        let zl = za.divide(&self.0).expect("unit constant term");
        zl.map_indexed(|n, c| if n == 0 { ZERO } else { c / n as f64 })
    }

    /// Principal real power `exp(t · log a)`.
    ///
    /// Small integer exponents use repeated multiplication instead, which
    /// stays exact when `a` has zeros in the disk and its logarithm's
    /// coefficients grow geometrically.
    pub fn power(&self, t: f64) -> Result<NormalizedSeries> {
        if !t.is_finite() {
            return Err(Error::NonFinite(format!("power exponent {t}")));
        }
        if t.fract() == 0.0 && t.abs() <= MAX_INTEGER_POWER {
            return Ok(self.integer_power(t as i32));
        }
        self.log_series().scale(Complex::new(t, 0.0)).exp_series()
    }

    fn integer_power(&self, n: i32) -> NormalizedSeries {
        let mut result = NormalizedSeries::one(self.order());
        let mut base = self.0.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result.0 = result.0.multiply(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same order");
            }
        }
        if n < 0 {
            result.0 = NormalizedSeries::one(self.order())
                .0
                .divide(&result.0)
                .expect("unit constant");
        }
        result
    }
}
