use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classes::{herglotz_polynomial, zero_count, Atom, ClassParams, HerglotzMeasure};
use crate::operator::OperatorParams;
use crate::series::NormalizedSeries;
use crate::{Complex, Error, Result};

const MAX_ATTEMPTS: usize = 10_000;

/// Parameters of one randomized trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialParams {
    pub class: ClassParams,
    pub operator: OperatorParams,
    /// Bernardi order, used only by the integral-operator verifier.
    pub sigma: f64,
}

/// Draws from the box `ϑ ∈ [1/4, 4]`, `γ ∈ (0, 4]`, `λ ∈ [0, 2]`,
/// `ρ ∈ [0, 0.9]`, `k ∈ {2, 3, 4}`, `m ∈ {0, …, 3}`,
/// `α ∈ [1/2, 2] + [-1/2, 1/2]i`, `β ∈ [1/2, 2]`, `σ ∈ (-0.9, 4]`.
pub fn sample_trial_params<R: Rng>(rng: &mut R) -> TrialParams {
    let k = [2.0, 3.0, 4.0][rng.gen_range(0..3)];
    let rho = rng.gen_range(0.0..=0.9);
    let exponent = rng.gen_range(0.25..=4.0);
    let gamma = 4.0 - rng.gen_range(0.0..4.0);
    let lambda = rng.gen_range(0.0..=2.0);
    let m = rng.gen_range(0..=3);
    let alpha = Complex::new(rng.gen_range(0.5..=2.0), rng.gen_range(-0.5..=0.5));
    let beta = Complex::new(rng.gen_range(0.5..=2.0), 0.0);
    let sigma = 4.0 - rng.gen_range(0.0..4.9);
    TrialParams {
        class: ClassParams {
            k,
            rho,
            exponent,
            gamma: Complex::new(gamma, 0.0),
        },
        operator: OperatorParams { m, lambda, alpha, beta },
        sigma,
    }
}

/// Random atomic measure admissible for `P_k`: 1 to 6 atoms at uniform
/// angles, raw weights uniform on `[0, 1)` (`k = 2`) or `[-1/2, 1)`
/// (`k > 2`), rescaled to mass 2 and rejected when the raw mass is at most
/// 0.1 or the total variation exceeds `k`.
pub fn sample_measure<R: Rng>(rng: &mut R, k: f64) -> Result<HerglotzMeasure> {
    if !(k.is_finite() && k >= 2.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let low = if k > 2.0 { -0.5 } else { 0.0 };
    for _ in 0..MAX_ATTEMPTS {
        let count = rng.gen_range(1..=6);
        let raw: Vec<(f64, f64)> = (0..count)
            .map(|_| (rng.gen_range(0.0..TAU), rng.gen_range(low..1.0)))
            .collect();
        let mass: f64 = raw.iter().map(|a| a.1).sum();
        if mass <= 0.1 {
            continue;
        }
        let mut atoms: Vec<Atom> = raw
            .iter()
            .map(|&(theta, w)| Atom {
                theta,
                w: 2.0 * w / mass,
            })
            .collect();
        // Remove the rounding drift so the mass check is exact.
        let drift = atoms.iter().map(|a| a.w).sum::<f64>() - 2.0;
        atoms[0].w -= drift;
        let mu = HerglotzMeasure { atoms };
        if mu.validate_for(k).is_ok() {
            return Ok(mu);
        }
    }
    Err(Error::InvalidMeasure(format!(
        "no admissible measure found for k = {k}"
    )))
}

/// Random polynomial member of `P_k(ρ)` of order `order`, built from
/// [`sample_measure`] with [`herglotz_polynomial`].
///
/// With `zero_free_scale = Some(c)`, redraws until `pₙ/(1 + nc)` has no
/// zeros in the closed unit disk, so that its real powers are analytic
/// there.
pub fn sample_target<R: Rng>(
    rng: &mut R,
    cp: &ClassParams,
    order: usize,
    zero_free_scale: Option<f64>,
) -> Result<NormalizedSeries> {
    for _ in 0..MAX_ATTEMPTS {
        let mu = sample_measure(rng, cp.k)?;
        let p = herglotz_polynomial(&mu, cp.rho, order)?;
        let Some(c) = zero_free_scale else {
            return Ok(p);
        };
        let h = p.map_indexed(|n, v| v / (1.0 + n as f64 * c));
        if zero_count(&h, 1.0) == Some(0) {
            return Ok(p);
        }
    }
    Err(Error::HypothesisViolation("no zero-free target found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn params_stay_in_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let t = sample_trial_params(&mut rng);
            assert!(t.class.validate().is_ok());
            assert!(t.operator.validate().is_ok());
            assert!(t.class.gamma.re > 0.0 && t.class.gamma.re <= 4.0);
            assert!(t.sigma > -0.9 && t.sigma <= 4.0);
            assert!([2.0, 3.0, 4.0].contains(&t.class.k));
        }
    }

    #[test]
    fn measures_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut saw_negative = false;
        for k in [2.0, 3.0, 4.0] {
            for _ in 0..500 {
                let mu = sample_measure(&mut rng, k).unwrap();
                assert!(mu.validate_for(k).is_ok());
                assert!((1..=6).contains(&mu.atoms.len()));
                saw_negative |= mu.atoms.iter().any(|a| a.w < 0.0);
                if k == 2.0 {
                    assert!(mu.atoms.iter().all(|a| a.w >= 0.0));
                }
            }
        }
        assert!(saw_negative);
    }

    #[test]
    fn zero_free_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let cp = ClassParams::real(4.0, 0.1, 2.0, 1.0).unwrap();
        for _ in 0..50 {
            let p = sample_target(&mut rng, &cp, 32, Some(0.5)).unwrap();
            let h = p.map_indexed(|n, v| v / (1.0 + n as f64 * 0.5));
            assert_eq!(zero_count(&h, 1.0), Some(0));
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_measure(&mut ChaCha8Rng::seed_from_u64(11), 4.0).unwrap();
        let b = sample_measure(&mut ChaCha8Rng::seed_from_u64(11), 4.0).unwrap();
        assert_eq!(a, b);
    }
}
