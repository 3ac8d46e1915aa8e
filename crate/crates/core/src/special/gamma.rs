use std::f64::consts::PI;

use crate::{Complex, Error, Result};

const LANCZOS_G: f64 = 7.0;

// Godfrey's coefficients for g = 7, n = 9.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOL: f64 = 1e-12;

// Above this modulus t^(z+1/2) overflows in the direct formula.
const DIRECT_LIMIT: f64 = 120.0;

fn check_argument(z: Complex) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(format!("gamma argument {z}")));
    }
    if z.im.abs() < POLE_TOL && z.re < POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL {
        return Err(Error::GammaPole(z));
    }
    Ok(())
}

/// Lanczos sum A_g(z - 1) and the shifted point t = z - 1/2 + g.
fn lanczos_parts(z: Complex) -> (Complex, Complex) {
    let x = z - 1.0;
    let mut acc = Complex::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    (acc, x + LANCZOS_G + 0.5)
}

/// Γ(z) for complex `z` off the non-positive integers.
///
/// Lanczos approximation in the right half-plane `Re z >= 1/2`, reflection
/// `Γ(z) Γ(1 - z) = π / sin(πz)` elsewhere.
pub fn gamma(z: Complex) -> Result<Complex> {
    check_argument(z)?;
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex) -> Complex {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return scaled_div(Complex::new(PI, 0.0), s * gamma_unchecked(1.0 - z));
    }
    let (acc, t) = lanczos_parts(z);
    let x = z - 1.0;
    (2.0 * PI).sqrt() * ((x + 0.5) * t.ln() - t).exp() * acc
}

/// log Γ(z), determined up to an additive multiple of 2πi.
///
/// Only meant to be exponentiated; the imaginary part is not on the
/// principal branch of log Γ.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    check_argument(z)?;
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex) -> Complex {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex::new(PI.ln(), 0.0) - s.ln() - ln_gamma_unchecked(1.0 - z);
    }
    let (acc, t) = lanczos_parts(z);
    let x = z - 1.0;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(num) / Γ(den), switching to log-Gamma when either value would overflow.
pub fn reciprocal_gamma_ratio(num: Complex, den: Complex) -> Result<Complex> {
    check_argument(num)?;
    check_argument(den)?;
    if num.norm() <= DIRECT_LIMIT && den.norm() <= DIRECT_LIMIT {
        return Ok(scaled_div(gamma_unchecked(num), gamma_unchecked(den)));
    }
    Ok((ln_gamma_unchecked(num) - ln_gamma_unchecked(den)).exp())
}

/// `a / b` without forming `|b|²`, which leaves the double range once `|b|`
/// is outside roughly `[1e-154, 1e154]`.
pub(crate) fn scaled_div(a: Complex, b: Complex) -> Complex {
    let s = b.norm();
    (a / s) * (b.conj() / s)
}
