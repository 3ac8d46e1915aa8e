use crate::classes::ClassParams;
use crate::operator::{MultiplierTable, OperatorParams};
use crate::series::{NormalizedSeries, TruncatedSeries};
use crate::{Complex, Error, Result};

/// `G = (1-γ)(E^m f/z)^ϑ + γ (E^{m+1} f/z)(E^m f/z)^{ϑ-1}` for `f` in class A.
///
/// The result has order one less than `f`.
pub fn class_functional(f: &TruncatedSeries, cp: &ClassParams, op: &OperatorParams) -> Result<NormalizedSeries> {
    cp.validate()?;
    functional_with_gamma(f, cp.exponent, cp.gamma, op)
}

/// [`class_functional`] for any `γ` with `Re γ >= 0`, including `γ = 0`,
/// where it reduces to `(E^m f/z)^ϑ`.
pub fn functional_with_gamma(
    f: &TruncatedSeries,
    exponent: f64,
    gamma: Complex,
    op: &OperatorParams,
) -> Result<NormalizedSeries> {
    if !(exponent.is_finite() && exponent > 0.0) {
        return Err(Error::InvalidParameter(format!("theta must be > 0, got {exponent}")));
    }
    if !(gamma.is_finite() && gamma.re >= 0.0) {
        return Err(Error::InvalidParameter(format!("Re(gamma) must be >= 0, got {gamma}")));
    }
    f.check_class_a()?;
    let order = f.order();
    let em = MultiplierTable::new(op, order)?.apply(f)?;
    let q = em.quotient_by_z()?;
    let h = q.power(exponent)?;
    if gamma == Complex::new(0.0, 0.0) {
        return Ok(h);
    }
    let em1 = MultiplierTable::new(&op.with_m(op.m + 1), order)?.apply(f)?;
    let q1 = em1.quotient_by_z()?;
    let tail = q1.multiply(&*q.power(exponent - 1.0)?)?;
    let one = Complex::new(1.0, 0.0);
    let g = h.scale(one - gamma).add(&tail.scale(gamma))?;
    if let Some(i) = g.coeffs().iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(format!("functional coefficient {i}")));
    }
    Ok(NormalizedSeries::normalize_unchecked(g))
}

/// Finds `f` in class A with `class_functional(f) = p`.
///
/// With `h = (E^m f/z)^ϑ` the functional equals `h + (λγ/ϑ) z h'`, so
/// `hₙ = pₙ/(1 + nλγ/ϑ)`; then `E^m f = z h^{1/ϑ}` and the operator
/// multipliers are divided out. The result has order one more than `p`.
pub fn solve_functional_inverse(
    p: &NormalizedSeries,
    cp: &ClassParams,
    op: &OperatorParams,
) -> Result<TruncatedSeries> {
    cp.validate()?;
    let gamma = cp.real_gamma()?;
    let c = op.lambda * gamma / cp.exponent;
    let h = p.map_indexed(|n, v| v / (1.0 + n as f64 * c));
    let h = NormalizedSeries::normalize_unchecked(h);
    let em = h.power(1.0 / cp.exponent)?.shift_up();
    let table = MultiplierTable::new(op, em.order())?;
    let f = table.invert(&em)?;
    let mut coeffs = f.into_coeffs();
    coeffs[1] = Complex::new(1.0, 0.0);
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{herglotz_polynomial, herglotz_to_series, Atom, HerglotzMeasure};
    use crate::series::max_residual;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn koebe(order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|n| c(n as f64, 0.0)).collect()).unwrap()
    }

    #[test]
    fn identity_function_gives_one() {
        let f = TruncatedSeries::identity(20);
        let cp = ClassParams::new(3.0, 0.2, 1.7, c(0.6, 0.3)).unwrap();
        let op = OperatorParams::new(2, 0.7, c(1.2, 0.1), c(0.8, 0.0)).unwrap();
        let g = class_functional(&f, &cp, &op).unwrap();
        assert!(max_residual(&g, &NormalizedSeries::one(19)).unwrap() < 1e-15);
    }

    #[test]
    fn reduces_to_derivative() {
        let f = koebe(32);
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::new(0, 1.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let g = class_functional(&f, &cp, &op).unwrap();
        assert!(max_residual(&g, &f.derivative()).unwrap() < 1e-12);
    }

    #[test]
    fn gamma_zero_is_plain_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut coeffs = vec![c(0.0, 0.0), c(1.0, 0.0)];
        for n in 2..=24 {
            coeffs.push(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * 0.5f64.powi(n));
        }
        let f = TruncatedSeries::new(coeffs).unwrap();
        let op = OperatorParams::new(1, 0.5, c(1.0, 0.2), c(1.5, 0.0)).unwrap();
        let cp = ClassParams::real(2.0, 0.0, 2.5, 1.0).unwrap();
        assert!(class_functional(
            &f,
            &ClassParams {
                gamma: c(0.0, 0.0),
                ..cp
            },
            &op
        )
        .is_err());
        let g0 = functional_with_gamma(&f, 2.5, c(0.0, 0.0), &op).unwrap();
        let em = crate::operator::apply_operator(&f, &op).unwrap();
        let h = em.quotient_by_z().unwrap().power(2.5).unwrap();
        assert_eq!(g0, h);
        let tiny = class_functional(&f, &cp.with_gamma(1e-300), &op).unwrap();
        assert!(max_residual(&tiny, &h).unwrap() < 1e-14);
    }

    #[test]
    fn inverse_of_one_is_identity() {
        let cp = ClassParams::real(2.0, 0.0, 1.3, 2.0).unwrap();
        let op = OperatorParams::new(3, 0.4, c(1.0, 0.5), c(2.0, 0.0)).unwrap();
        let f = solve_functional_inverse(&NormalizedSeries::one(16), &cp, &op).unwrap();
        assert!(max_residual(&f, &TruncatedSeries::identity(17)).unwrap() < 1e-15);
    }

    #[test]
    fn inverse_of_kernel_hand_values() {
        // λγ/ϑ = 1: hₙ = 2/(1+n), so h = 1 + z + 2z²/3 + z³/2 + …
        let p = herglotz_to_series(&HerglotzMeasure::point(0.0), 0.0, 10).unwrap();
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::salagean(0).with_m(0);
        let op = OperatorParams { lambda: 1.0, ..op };
        let f = solve_functional_inverse(&p, &cp, &op).unwrap();
        let h = f.quotient_by_z().unwrap();
        for n in 0..=10 {
            let expect = if n == 0 { 1.0 } else { 2.0 / (1.0 + n as f64) };
            assert!((h.coeff(n) - expect).norm() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn complex_gamma_rejected_by_inverse() {
        let cp = ClassParams::new(2.0, 0.0, 1.0, c(1.0, 0.5)).unwrap();
        let err = solve_functional_inverse(&NormalizedSeries::one(4), &cp, &OperatorParams::identity());
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn round_trip_random_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..100 {
            let atoms: Vec<Atom> = (0..rng.gen_range(1..=6))
                .map(|_| Atom {
                    theta: rng.gen_range(0.0..TAU),
                    w: rng.gen_range(0.05..1.0),
                })
                .collect();
            let sum: f64 = atoms.iter().map(|a| a.w).sum();
            let mu = HerglotzMeasure {
                atoms: atoms
                    .into_iter()
                    .map(|a| Atom {
                        w: 2.0 * a.w / sum,
                        ..a
                    })
                    .collect(),
            };
            let rho = rng.gen_range(0.0..0.9);
            let p = herglotz_polynomial(&mu, rho, 63).unwrap();
            let cp = ClassParams::real(2.0, rho, rng.gen_range(0.25..4.0), rng.gen_range(0.01..4.0)).unwrap();
            let op = OperatorParams::new(
                rng.gen_range(0..=3),
                rng.gen_range(0.0..2.0),
                c(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5)),
                c(rng.gen_range(0.5..2.0), 0.0),
            )
            .unwrap();
            let f =
                solve_functional_inverse(&p, &cp, &op).unwrap_or_else(|e| panic!("trial {trial}: {e:?} {cp:?} {op:?}"));
            assert_eq!(f.order(), 64);
            let g = class_functional(&f, &cp, &op).unwrap();
            let res = max_residual(&g, &p).unwrap();
            assert!(res < 1e-11, "trial {trial}: {res}");
        }
    }
}
