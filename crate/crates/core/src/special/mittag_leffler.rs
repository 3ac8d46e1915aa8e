use crate::{Complex, Error, Result};

use super::gamma::{gamma, ln_gamma};

/// Truncation policy for the Mittag-Leffler power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub terms: usize,
    pub abs_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            terms: 200,
            abs_tol: 1e-14,
        }
    }
}

// Below this modulus the reciprocal Gamma is evaluated directly.
const DIRECT_LIMIT: f64 = 120.0;

/// E_{α,β}(z) = Σ zⁿ / Γ(αn + β), summed to at most `terms` terms.
pub fn mittag_leffler(alpha: Complex, beta: Complex, z: Complex, terms: usize) -> Result<Complex> {
    mittag_leffler_with(
        alpha,
        beta,
        z,
        SeriesControl {
            terms,
            ..SeriesControl::default()
        },
    )
}

pub fn mittag_leffler_with(alpha: Complex, beta: Complex, z: Complex, control: SeriesControl) -> Result<Complex> {
    if !(alpha.re > 0.0) || !(beta.re > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Mittag-Leffler requires Re(alpha) > 0 and Re(beta) > 0, got alpha={alpha}, beta={beta}"
        )));
    }
    if control.terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(format!("Mittag-Leffler argument {z}")));
    }

    let mut sum = gamma(beta)?.inv();
    if z == Complex::new(0.0, 0.0) {
        return Ok(sum);
    }
    let log_z = z.ln();
    let mut power = Complex::new(1.0, 0.0);
    let mut last = sum.norm();
    let mut small_run = 0;
    for n in 1..control.terms {
        power *= z;
        let arg = alpha * n as f64 + beta;
        let term = if arg.norm() <= DIRECT_LIMIT && power.is_finite() {
            power / gamma(arg)?
        } else {
            (log_z * n as f64 - ln_gamma(arg)?).exp()
        };
        sum += term;
        last = term.norm();
        // Two consecutive negligible terms: past the hump of zⁿ/Γ(αn+β).
        if last < control.abs_tol {
            small_run += 1;
            if small_run == 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    if last > control.abs_tol {
        return Err(Error::NonConvergence {
            terms: control.terms,
            last_term: last,
        });
    }
    Ok(sum)
}
