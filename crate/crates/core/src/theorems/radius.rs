use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::classes::{
    class_functional, functional_with_gamma, in_pk_rho, pk_integral_at_radius, ClassParams, DiskProbe, Verdict,
};
use crate::operator::OperatorParams;
use crate::series::TruncatedSeries;
use crate::theorems::closed_form::{extremal_hypothesis_function, radius_r1, sharp_function};
use crate::{Complex, Error, Result};

const BISECTION_TOL: f64 = 1e-9;

/// Formula radius against the radius observed by bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub r_formula: f64,
    pub r_empirical: f64,
    /// `r_empirical - r_formula`.
    pub gap: f64,
}

/// Largest `r` for which the class functional of `f` passes the `P_k(ρ)`
/// integral test on `|z| = r`.
///
/// The hypothesis `(E^m f/z)^ϑ ∈ P_k(ρ)` is checked on the probe grid first.
/// The functional is tested at `r = 1` (a polynomial evaluates there); if
/// that fails, `r` is bisected on `(0, 1)` to within 1e-9, using the
/// probe's angle count and tolerance.
pub fn empirical_radius(
    f: &TruncatedSeries,
    cp: &ClassParams,
    op: &OperatorParams,
    probe: &DiskProbe,
) -> Result<RadiusResult> {
    cp.validate()?;
    probe.validate()?;
    let r_formula = radius_r1(op.lambda, cp.real_gamma()?, cp.exponent)?;
    let h = functional_with_gamma(f, cp.exponent, Complex::new(0.0, 0.0), op)?;
    let hyp = in_pk_rho(&h, cp.k, cp.rho, probe)?;
    if hyp.verdict == Verdict::NonMember {
        return Err(Error::HypothesisViolation(format!(
            "(E^m f/z)^theta is not in P_k(rho): margin {:e}",
            hyp.margin
        )));
    }
    let g = class_functional(f, cp, op)?;
    let bound = cp.k * PI * (1.0 + probe.margin_tol);
    let passes = |r: f64| -> Result<bool> { Ok(pk_integral_at_radius(&g, cp.rho, r, probe.angles)? <= bound) };
    let r_empirical = if passes(1.0)? {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if mid > 0.0 && passes(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    Ok(RadiusResult {
        r_formula,
        r_empirical,
        gap: r_empirical - r_formula,
    })
}

/// Test function used by a radius scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanFunction {
    /// [`sharp_function`].
    Sharp,
    /// [`extremal_hypothesis_function`].
    Extremal,
}

/// One row of a radius scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub lambda_gamma: f64,
    pub theta: f64,
    pub r_formula: f64,
    pub r_empirical: f64,
    pub gap: f64,
}

/// Empirical radius of `which` over a grid of `(λγ, ϑ)`, with `γ = 1`,
/// `λ = λγ` and the remaining parameters taken from `cp` and `op`.
pub fn radius_scan(
    lambda_gammas: &[f64],
    exponents: &[f64],
    cp: &ClassParams,
    op: &OperatorParams,
    which: ScanFunction,
    order: usize,
    probe: &DiskProbe,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::with_capacity(lambda_gammas.len() * exponents.len());
    for &lg in lambda_gammas {
        for &theta in exponents {
            let cp = ClassParams {
                exponent: theta,
                gamma: Complex::new(1.0, 0.0),
                ..*cp
            };
            let op = OperatorParams { lambda: lg, ..*op };
            let f = match which {
                ScanFunction::Sharp => sharp_function(&cp, &op, order)?,
                ScanFunction::Extremal => extremal_hypothesis_function(&cp, &op, order)?,
            };
            let r = empirical_radius(&f, &cp, &op, probe)?;
            rows.push(ScanRow {
                lambda_gamma: lg,
                theta,
                r_formula: r.r_formula,
                r_empirical: r.r_empirical,
                gap: r.gap,
            });
        }
    }
    Ok(rows)
}

/// CSV with header `lambda_gamma,theta,r_formula,r_empirical,gap`.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("lambda_gamma,theta,r_formula,r_empirical,gap\n");
    for r in rows {
        out.push_str(&format!(
            "{:?},{:?},{:?},{:?},{:?}\n",
            r.lambda_gamma, r.theta, r.r_formula, r.r_empirical, r.gap
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::closed_form::sharp_radius_kernel;

    fn probe() -> DiskProbe {
        DiskProbe::new(vec![0.5, 0.9, 0.99], 2048, 1e-6).unwrap()
    }

    #[test]
    fn identity_has_full_radius() {
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::al_oboudi(1, 1.0);
        let r = empirical_radius(&TruncatedSeries::identity(16), &cp, &op, &probe()).unwrap();
        assert_eq!(r.r_empirical, 1.0);
        assert!(r.gap > 0.0);
    }

    #[test]
    fn extremal_kernel_radius() {
        // h = (1+z)/(1-z): h + c z h' loses positivity exactly at √(1+c²) - c.
        for (lambda, gamma, theta) in [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (0.5, 1.0, 2.0)] {
            let cp = ClassParams::real(2.0, 0.0, theta, gamma).unwrap();
            let op = OperatorParams::al_oboudi(0, lambda);
            let f = extremal_hypothesis_function(&cp, &op, 400).unwrap();
            let r = empirical_radius(&f, &cp, &op, &DiskProbe::new(vec![0.5, 0.9], 2048, 1e-6).unwrap()).unwrap();
            let exact = sharp_radius_kernel(lambda, gamma, theta).unwrap();
            assert!((r.r_empirical - exact).abs() < 1e-4, "{} vs {exact}", r.r_empirical);
            assert!(r.gap > 0.0);
        }
    }

    #[test]
    fn hypothesis_is_checked() {
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::identity();
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 3.0]).unwrap();
        assert!(matches!(
            empirical_radius(&f, &cp, &op, &probe()),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn scan_rows_and_csv() {
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::al_oboudi(0, 1.0);
        let probe = DiskProbe::new(vec![0.5, 0.9], 1024, 1e-6).unwrap();
        let rows = radius_scan(&[0.5, 1.0], &[1.0], &cp, &op, ScanFunction::Extremal, 200, &probe).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.gap > 0.0));
        let csv = scan_csv(&rows);
        assert!(csv.starts_with("lambda_gamma,theta,r_formula,r_empirical,gap\n0.5,1.0,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
