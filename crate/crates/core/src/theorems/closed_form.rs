use crate::classes::{herglotz_to_series, ClassParams, DiskProbe, HerglotzMeasure};
use crate::operator::{MultiplierTable, OperatorParams};
use crate::series::{NormalizedSeries, TruncatedSeries};
use crate::special::{integrate_graded, QuadratureSpec};
use crate::{Complex, Error, Result};

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
    }
    Ok(())
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
    }
    Ok(())
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("{name} must lie in [0, 1), got {v}")));
    }
    Ok(())
}

/// Inclusion level `ρ₁ = (2ϑρ + λγ)/(2ϑ + λγ)`.
pub fn rho1(exponent: f64, rho: f64, lambda: f64, gamma: f64) -> Result<f64> {
    positive("theta", exponent)?;
    unit_interval("rho", rho)?;
    nonnegative("lambda", lambda)?;
    positive("gamma", gamma)?;
    let lg = lambda * gamma;
    if lg == 0.0 {
        return Ok(rho);
    }
    Ok((2.0 * exponent * rho + lg) / (2.0 * exponent + lg))
}

/// Radius `r₁ = (λγ + ϑ - √(λ²γ² + 2λγϑ))/ϑ`, equal to 1 when `λγ = 0`.
///
/// Evaluated as `1/(1 + c + √(c² + 2c))` with `c = λγ/ϑ`, which avoids the
/// cancellation of the direct form for small `c`.
pub fn radius_r1(lambda: f64, gamma: f64, exponent: f64) -> Result<f64> {
    nonnegative("lambda", lambda)?;
    positive("gamma", gamma)?;
    positive("theta", exponent)?;
    let c = lambda * gamma / exponent;
    Ok(1.0 / (1.0 + c + (c * c + 2.0 * c).sqrt()))
}

/// The true largest radius on which `h + c z h'` keeps positive real part
/// for every `h` in the Carathéodory class, `√(1 + c²) - c`; attained by
/// `h = (1+z)/(1-z)` at `z = -r`.
pub fn sharp_radius_kernel(lambda: f64, gamma: f64, exponent: f64) -> Result<f64> {
    nonnegative("lambda", lambda)?;
    positive("gamma", gamma)?;
    positive("theta", exponent)?;
    let c = lambda * gamma / exponent;
    Ok(1.0 / (c + (1.0 + c * c).sqrt()))
}

/// `(ι, ι₁)` with `ι₁ = ∫₀¹ dt/(1 + t^a)`, `a = γ/(σ+1)`, and
/// `ι = ρ + (1-ρ)(2ι₁ - 1)`.
pub fn iota(rho: f64, gamma: f64, sigma: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    unit_interval("rho", rho)?;
    positive("gamma", gamma)?;
    if !(sigma.is_finite() && sigma > -1.0) {
        return Err(Error::InvalidParameter(format!("sigma must be > -1, got {sigma}")));
    }
    let a = gamma / (sigma + 1.0);
    positive("gamma/(sigma+1)", a)?;
    let iota1 = integrate_graded(|t| 1.0 / (1.0 + t.powf(a)), quad)?;
    Ok((rho + (1.0 - rho) * (2.0 * iota1 - 1.0), iota1))
}

fn lambda_gamma(cp: &ClassParams, op: &OperatorParams) -> Result<f64> {
    let lg = op.lambda * cp.real_gamma()?;
    if !(lg > 0.0) {
        return Err(Error::InvalidParameter("lambda * gamma must be > 0".into()));
    }
    Ok(lg)
}

/// `f` in class A with `E^m f = z h^{1/ϑ}`, order `h.order() + 1`.
fn from_hypothesis(h: &NormalizedSeries, exponent: f64, op: &OperatorParams) -> Result<TruncatedSeries> {
    let em = h.power(1.0 / exponent)?.shift_up();
    let f = MultiplierTable::new(op, em.order())?.invert(&em)?;
    let mut coeffs = f.into_coeffs();
    coeffs[1] = Complex::new(1.0, 0.0);
    TruncatedSeries::new(coeffs)
}

/// Candidate extremal function of the radius problem, of order `order`.
///
/// `(E^m f/z)^ϑ = h` with `h = c ∫₀¹ u^{c-1} K(uz) du`, `c = ϑ/(λγ)`, and
/// `K = (k/4+1/2)(1+(1-2ρ)z)/(1-z) - (k/4-1/2)(1-(1-2ρ)z)/(1+z)`, so
/// `hₙ = 2(1-ρ) c/(c+n) [(k/4+1/2) - (k/4-1/2)(-1)ⁿ]`.
pub fn sharp_function(cp: &ClassParams, op: &OperatorParams, order: usize) -> Result<TruncatedSeries> {
    cp.validate()?;
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let c = cp.exponent / lambda_gamma(cp, op)?;
    let (a, b) = (cp.k / 4.0 + 0.5, cp.k / 4.0 - 0.5);
    let coeffs: Vec<Complex> = (0..order)
        .map(|n| {
            if n == 0 {
                return Complex::new(1.0, 0.0);
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let nf = n as f64;
            Complex::new(2.0 * (1.0 - cp.rho) * c / (c + nf) * (a - b * sign), 0.0)
        })
        .collect();
    let h = NormalizedSeries::new(TruncatedSeries::new(coeffs)?)?;
    from_hypothesis(&h, cp.exponent, op)
}

/// `h(z)` of [`sharp_function`] by quadrature of its defining integral.
///
/// With `v = u^c` the integral becomes `∫₀¹ K(v^{1/c} z) dv`.
pub fn sharp_h_quadrature(z: Complex, cp: &ClassParams, op: &OperatorParams, quad: &QuadratureSpec) -> Result<Complex> {
    cp.validate()?;
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidParameter(format!("|z| must be < 1, got {}", z.norm())));
    }
    let c = cp.exponent / lambda_gamma(cp, op)?;
    let (a, b) = (cp.k / 4.0 + 0.5, cp.k / 4.0 - 0.5);
    let s = 1.0 - 2.0 * cp.rho;
    let kernel = move |v: f64| {
        let w = z * v.powf(1.0 / c);
        (1.0 + s * w) / (1.0 - w) * a - (1.0 - s * w) / (1.0 + w) * b
    };
    let re = integrate_graded(|v| kernel(v).re, quad)?;
    let im = integrate_graded(|v| kernel(v).im, quad)?;
    Ok(Complex::new(re, im))
}

/// Hypothesis-extremal function of the radius problem: `(E^m f/z)^ϑ` is the
/// Herglotz function of the two-point measure of `P_k(ρ)` (for `k = 2`,
/// the Carathéodory kernel), truncated at order `order - 1`.
pub fn extremal_hypothesis_function(cp: &ClassParams, op: &OperatorParams, order: usize) -> Result<TruncatedSeries> {
    cp.validate()?;
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let h = herglotz_to_series(&HerglotzMeasure::two_point(cp.k), cp.rho, order - 1)?;
    from_hypothesis(&h, cp.exponent, op)
}

/// Largest violation over the probe grid of the Carathéodory estimates
/// `|z p'(z)| <= 2r Re p(z)/(1-r²)` and `Re p(z) >= (1-r)/(1+r)`.
pub fn goodman_bounds_check(p: &NormalizedSeries, probe: &DiskProbe) -> Result<f64> {
    probe.validate()?;
    let zp = p.derivative_z();
    let step = std::f64::consts::TAU / probe.angles as f64;
    let mut worst = f64::NEG_INFINITY;
    for &r in &probe.radii {
        for j in 0..probe.angles {
            let z = Complex::from_polar(r, j as f64 * step);
            let re = p.evaluate(z).re;
            let derivative_gap = zp.evaluate(z).norm() - 2.0 * r * re / (1.0 - r * r);
            let real_gap = (1.0 - r) / (1.0 + r) - re;
            worst = worst.max(derivative_gap).max(real_gap);
        }
    }
    Ok(worst)
}
