use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::classes::{
    class_functional, functional_with_gamma, in_pk_rho, solve_functional_inverse, ClassParams, DiskProbe,
    MembershipReport,
};
use crate::operator::{bernardi_inverse, BernardiParams, MultiplierTable, OperatorParams};
use crate::series::{max_residual, NormalizedSeries, TruncatedSeries};
use crate::special::QuadratureSpec;
use crate::theorems::closed_form::{iota, rho1};
use crate::theorems::radius::empirical_radius;
use crate::theorems::sampling::{sample_target, sample_trial_params, TrialParams};
use crate::{Complex, Error, Result, DEFAULT_ORDER};

const IDENTITY_TOL: f64 = 1e-11;
const RADIUS_SLACK: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T2.1")]
    T21,
    #[serde(rename = "T2.2")]
    T22,
    #[serde(rename = "T3.1")]
    T31,
    #[serde(rename = "T4.1")]
    T41,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::T21 => "T2.1",
            TheoremId::T22 => "T2.2",
            TheoremId::T31 => "T3.1",
            TheoremId::T41 => "T4.1",
        })
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts `T2.1` or `2.1` (case-insensitive prefix).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix(['T', 't']).unwrap_or(t);
        match t {
            "2.1" => Ok(TheoremId::T21),
            "2.2" => Ok(TheoremId::T22),
            "3.1" => Ok(TheoremId::T31),
            "4.1" => Ok(TheoremId::T41),
            _ => Err(Error::InvalidParameter(format!("unknown theorem '{s}'"))),
        }
    }
}

/// Where each trial takes its parameters from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum ParamSource {
    /// Fresh draw from the standard parameter box per trial.
    RandomBox,
    /// The same parameters for every trial; only the target varies.
    Fixed {
        class: ClassParams,
        operator: OperatorParams,
        /// Bernardi order for the integral-operator verifier.
        sigma: f64,
        /// Lower functional weight for the inclusion verifier; drawn per
        /// trial from `[0, γ)` when absent.
        gamma1: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub order: usize,
    pub probe: DiskProbe,
    /// Extra slack on membership margins for truncation error.
    pub allowance: f64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    pub params: ParamSource,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 200,
            seed: 42,
            order: DEFAULT_ORDER,
            probe: DiskProbe::default(),
            allowance: 1e-4,
            threads: 0,
            params: ParamSource::RandomBox,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.order < 2 {
            return Err(Error::InvalidParameter("order must be >= 2".into()));
        }
        if !(self.allowance.is_finite() && self.allowance >= 0.0) {
            return Err(Error::InvalidParameter("allowance must be >= 0".into()));
        }
        self.probe.validate()?;
        if let ParamSource::Fixed {
            class,
            operator,
            sigma,
            gamma1,
        } = &self.params
        {
            class.validate()?;
            class.real_gamma()?;
            operator.validate()?;
            BernardiParams::new(*sigma)?;
            if let Some(g1) = gamma1 {
                if !(*g1 >= 0.0 && *g1 < class.gamma.re) {
                    return Err(Error::InvalidParameter(format!(
                        "gamma1 must lie in [0, gamma), got {g1}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn fail_threshold(&self) -> f64 {
        -(self.probe.margin_tol + self.allowance)
    }

    fn describe(&self) -> serde_json::Value {
        json!({
            "order": self.order,
            "probe": self.probe,
            "allowance": self.allowance,
            "source": self.params,
        })
    }
}

/// Summary of a verifier run. `failures` counts trials whose margin fell
/// below `-(margin_tol + allowance)`, whose exact identity missed 1e-11, or
/// that broke down numerically (`errors`). `min_margin` is 0 when every
/// trial broke down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub trials: usize,
    pub failures: usize,
    pub errors: usize,
    pub min_margin: f64,
    pub max_residual: f64,
    pub seed: u64,
    pub params: serde_json::Value,
}

/// Pretty JSON with keys in sorted order.
pub fn report_json(report: &TheoremReport) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    serde_json::to_string_pretty(&value).expect("value serializes")
}

struct Outcome {
    margin: f64,
    residual: f64,
    failed: bool,
}

fn run_trials<F>(id: TheoremId, cfg: &VerifyConfig, trial: F) -> Result<TheoremReport>
where
    F: Fn(&mut ChaCha8Rng, TrialParams) -> Result<Outcome> + Sync,
{
    cfg.validate()?;
    let one = |i: usize| -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let params = match cfg.params {
            ParamSource::RandomBox => sample_trial_params(&mut rng),
            ParamSource::Fixed {
                class, operator, sigma, ..
            } => TrialParams { class, operator, sigma },
        };
        trial(&mut rng, params)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<Outcome>> = pool.install(|| (0..cfg.trials).into_par_iter().map(one).collect());

    let mut report = TheoremReport {
        theorem: id,
        trials: cfg.trials,
        failures: 0,
        errors: 0,
        min_margin: f64::INFINITY,
        max_residual: 0.0,
        seed: cfg.seed,
        params: cfg.describe(),
    };
    for o in outcomes {
        match o {
            Ok(o) => {
                report.min_margin = report.min_margin.min(o.margin);
                report.max_residual = report.max_residual.max(o.residual);
                report.failures += usize::from(o.failed);
            }
            Err(_) => {
                report.errors += 1;
                report.failures += 1;
            }
        }
    }
    if !report.min_margin.is_finite() {
        report.min_margin = 0.0;
    }
    Ok(report)
}

fn needs_zero_free(cp: &ClassParams) -> bool {
    cp.exponent != 1.0
}

fn membership_outcome(rep: MembershipReport, residual: f64, cfg: &VerifyConfig) -> Outcome {
    Outcome {
        margin: rep.margin,
        residual,
        failed: rep.margin < cfg.fail_threshold() || residual > IDENTITY_TOL,
    }
}

/// Inclusion: for `f` in the class, `(E^m f/z)^ϑ ∈ P_k(ρ₁)`.
///
/// Each trial draws a target in `P_k(ρ)`, solves for `f` exactly, and tests
/// `(E^m f/z)^ϑ` against the level `ρ₁` on the probe grid.
pub fn verify_t21(cfg: &VerifyConfig) -> Result<TheoremReport> {
    run_trials(TheoremId::T21, cfg, |rng, tp| {
        let cp = tp.class;
        let gamma = cp.real_gamma()?;
        let c = tp.operator.lambda * gamma / cp.exponent;
        let p = sample_target(rng, &cp, cfg.order - 1, needs_zero_free(&cp).then_some(c))?;
        let f = solve_functional_inverse(&p, &cp, &tp.operator)?;
        let h = functional_with_gamma(&f, cp.exponent, Complex::new(0.0, 0.0), &tp.operator)?;
        let level = rho1(cp.exponent, cp.rho, tp.operator.lambda, gamma)?;
        let rep = in_pk_rho(&h, cp.k, level, &cfg.probe)?;
        Ok(membership_outcome(rep, 0.0, cfg))
    })
}

/// Monotone inclusion in `γ`: class at `γ₂` lies inside class at `γ₁ < γ₂`.
///
/// Checks the exact identity `G(γ₁) = (1-γ₁/γ₂) G(0) + (γ₁/γ₂) G(γ₂)` and
/// the membership of `G(γ₁)` in `P_k(ρ)`.
pub fn verify_t22(cfg: &VerifyConfig) -> Result<TheoremReport> {
    let fixed_gamma1 = match cfg.params {
        ParamSource::Fixed { gamma1, .. } => gamma1,
        ParamSource::RandomBox => None,
    };
    run_trials(TheoremId::T22, cfg, |rng, tp| {
        use rand::Rng;
        let cp = tp.class;
        let gamma2 = cp.real_gamma()?;
        let gamma1 = fixed_gamma1.unwrap_or_else(|| gamma2 * rng.gen_range(0.0..1.0));
        let c = tp.operator.lambda * gamma2 / cp.exponent;
        let p = sample_target(rng, &cp, cfg.order - 1, needs_zero_free(&cp).then_some(c))?;
        let f = solve_functional_inverse(&p, &cp, &tp.operator)?;
        let op = &tp.operator;
        let g1 = functional_with_gamma(&f, cp.exponent, Complex::new(gamma1, 0.0), op)?;
        let h1 = functional_with_gamma(&f, cp.exponent, Complex::new(0.0, 0.0), op)?;
        let h2 = class_functional(&f, &cp, op)?;
        let t = gamma1 / gamma2;
        let combo = h1
            .scale(Complex::new(1.0 - t, 0.0))
            .add(&h2.scale(Complex::new(t, 0.0)))?;
        let residual = max_residual(&g1, &combo)?;
        let rep = in_pk_rho(&g1, cp.k, cp.rho, &cfg.probe)?;
        Ok(membership_outcome(rep, residual, cfg))
    })
}

/// Radius: if `(E^m f/z)^ϑ ∈ P_k(ρ)` then the class functional passes on
/// `|z| < r₁`. The margin of a trial is the radius gap, which fails below
/// `-1e-3`; trials with `λγ = 0` are included (`r₁ = 1`).
pub fn verify_t31(cfg: &VerifyConfig) -> Result<TheoremReport> {
    run_trials(TheoremId::T31, cfg, |rng, tp| {
        let cp = tp.class;
        let p = sample_target(rng, &cp, cfg.order - 1, needs_zero_free(&cp).then_some(0.0))?;
        let em = p.power(1.0 / cp.exponent)?.shift_up();
        let f = MultiplierTable::new(&tp.operator, em.order())?.invert(&em)?;
        let mut coeffs = f.into_coeffs();
        coeffs[1] = Complex::new(1.0, 0.0);
        let f = TruncatedSeries::new(coeffs)?;
        let r = empirical_radius(&f, &cp, &tp.operator, &cfg.probe)?;
        Ok(Outcome {
            margin: r.gap,
            residual: 0.0,
            failed: r.gap < -RADIUS_SLACK,
        })
    })
}

/// Solves `(1-γ) E^m L_σ f/z + γ E^m f/z = q` for `f`.
///
/// With `p = E^m L_σ f/z` the left side equals `p + γ z p'/(σ+1)`, so
/// `pₙ = qₙ/(1 + nγ/(σ+1))`. Returns `(p, f)` with `f` of order
/// `q.order() + 1`.
pub fn solve_bernardi_target(
    q: &NormalizedSeries,
    gamma: f64,
    op: &OperatorParams,
    b: &BernardiParams,
) -> Result<(NormalizedSeries, TruncatedSeries)> {
    b.validate()?;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be > 0, got {gamma}")));
    }
    let scale = gamma / (b.sigma + 1.0);
    let p = NormalizedSeries::normalize_unchecked(q.map_indexed(|n, v| v / (1.0 + n as f64 * scale)));
    let em_l = p.shift_up();
    let l = MultiplierTable::new(op, em_l.order())?.invert(&em_l)?;
    let mut coeffs = l.into_coeffs();
    coeffs[1] = Complex::new(1.0, 0.0);
    let f = bernardi_inverse(&TruncatedSeries::new(coeffs)?, b)?;
    Ok((p, f))
}

/// `(1-γ) E^m L_σ f/z + γ E^m f/z`.
fn bernardi_expression(
    f: &TruncatedSeries,
    gamma: f64,
    op: &OperatorParams,
    b: &BernardiParams,
) -> Result<TruncatedSeries> {
    let table = MultiplierTable::new(op, f.order())?;
    let em_l = table.apply(&crate::operator::bernardi(f, b)?)?.shift_down()?;
    let em = table.apply(f)?.shift_down()?;
    em_l.scale(Complex::new(1.0 - gamma, 0.0))
        .add(&em.scale(Complex::new(gamma, 0.0)))
}

/// Integral operator: if `(1-γ) E^m L_σ f/z + γ E^m f/z ∈ P_k(ρ)` then
/// `E^m L_σ f/z ∈ P_k(ι)`.
pub fn verify_t41(cfg: &VerifyConfig) -> Result<TheoremReport> {
    let quad = QuadratureSpec::default();
    run_trials(TheoremId::T41, cfg, |rng, tp| {
        let cp = tp.class;
        let gamma = cp.real_gamma()?;
        let b = BernardiParams::new(tp.sigma)?;
        let q = sample_target(rng, &cp, cfg.order - 1, None)?;
        let (p, f) = solve_bernardi_target(&q, gamma, &tp.operator, &b)?;
        let forward = bernardi_expression(&f, gamma, &tp.operator, &b)?;
        let residual = max_residual(&forward, &q)?;
        let (level, _) = iota(cp.rho, gamma, tp.sigma, &quad)?;
        let rep = in_pk_rho(&p, cp.k, level, &cfg.probe)?;
        Ok(membership_outcome(rep, residual, cfg))
    })
}

/// Dispatches to the verifier for `id`.
pub fn verify(id: TheoremId, cfg: &VerifyConfig) -> Result<TheoremReport> {
    match id {
        TheoremId::T21 => verify_t21(cfg),
        TheoremId::T22 => verify_t22(cfg),
        TheoremId::T31 => verify_t31(cfg),
        TheoremId::T41 => verify_t41(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{herglotz_to_series, sample_disk, HerglotzMeasure};

    fn quick(trials: usize) -> VerifyConfig {
        VerifyConfig {
            trials,
            seed: 7,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn theorem_ids_parse_and_serialize() {
        assert_eq!("2.1".parse::<TheoremId>().unwrap(), TheoremId::T21);
        assert_eq!("T4.1".parse::<TheoremId>().unwrap(), TheoremId::T41);
        assert!("5.0".parse::<TheoremId>().is_err());
        assert_eq!(serde_json::to_string(&TheoremId::T31).unwrap(), "\"T3.1\"");
        assert_eq!(TheoremId::T22.to_string(), "T2.2");
    }

    #[test]
    fn config_validation() {
        assert!(VerifyConfig::default().validate().is_ok());
        assert!(VerifyConfig {
            trials: 0,
            ..VerifyConfig::default()
        }
        .validate()
        .is_err());
        let fixed = ParamSource::Fixed {
            class: ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap(),
            operator: OperatorParams::identity(),
            sigma: 0.0,
            gamma1: Some(1.5),
        };
        assert!(VerifyConfig {
            params: fixed,
            ..VerifyConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn inclusion_single_atom_example() {
        // k = 2, point mass, ϑ = λ = γ = 1, ρ = 0: hₙ = 2/(1+n) and
        // min Re h on |z| = 0.99 stays above ρ₁ = 1/3.
        let p = herglotz_to_series(&HerglotzMeasure::point(0.0), 0.0, 4000).unwrap();
        let cp = ClassParams::real(2.0, 0.0, 1.0, 1.0).unwrap();
        let op = OperatorParams::identity();
        let f = solve_functional_inverse(&p, &cp, &op).unwrap();
        let h = functional_with_gamma(&f, 1.0, Complex::new(0.0, 0.0), &op).unwrap();
        let probe = DiskProbe::new(vec![0.99], 1024, 1e-6).unwrap();
        let s = sample_disk(&h, 0.0, &probe).unwrap();
        assert!(s[0].min_re > 1.0 / 3.0 - 1e-3, "{}", s[0].min_re);
    }

    #[test]
    fn verifiers_pass_small_runs() {
        for id in [TheoremId::T21, TheoremId::T22, TheoremId::T31, TheoremId::T41] {
            let rep = verify(id, &quick(12)).unwrap();
            assert_eq!(rep.failures, 0, "{id}: {rep:?}");
            assert!(rep.min_margin.is_finite());
        }
    }

    #[test]
    fn fixed_identity_target_passes() {
        let cfg = VerifyConfig {
            trials: 4,
            params: ParamSource::Fixed {
                class: ClassParams::real(3.0, 0.2, 1.0, 0.5).unwrap(),
                operator: OperatorParams::al_oboudi(2, 0.7),
                sigma: 1.0,
                gamma1: Some(0.0),
            },
            ..VerifyConfig::default()
        };
        let rep = verify_t22(&cfg).unwrap();
        assert_eq!(rep.failures, 0);
        assert!(rep.max_residual < 1e-11);
    }

    #[test]
    fn reports_are_deterministic_across_threads() {
        let a = verify_t21(&VerifyConfig {
            threads: 1,
            ..quick(16)
        })
        .unwrap();
        let b = verify_t21(&VerifyConfig {
            threads: 4,
            ..quick(16)
        })
        .unwrap();
        assert_eq!(report_json(&a), report_json(&b));
        let c = verify_t21(&VerifyConfig { seed: 8, ..quick(16) }).unwrap();
        assert_ne!(report_json(&a), report_json(&c));
    }

    #[test]
    fn report_json_has_sorted_keys() {
        let rep = verify_t41(&quick(2)).unwrap();
        let s = report_json(&rep);
        let keys: Vec<usize> = [
            "errors",
            "failures",
            "max_residual",
            "min_margin",
            "params",
            "seed",
            "theorem",
            "trials",
        ]
        .iter()
        .map(|k| s.find(&format!("\"{k}\"")).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.contains("\"theorem\": \"T4.1\""));
        let back: TheoremReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn bernardi_target_round_trip() {
        let q = herglotz_to_series(&HerglotzMeasure::point(1.0), 0.2, 40).unwrap();
        let op = OperatorParams::new(1, 0.5, Complex::new(1.0, 0.2), Complex::new(1.5, 0.0)).unwrap();
        let b = BernardiParams::new(0.5).unwrap();
        let (p, f) = solve_bernardi_target(&q, 1.3, &op, &b).unwrap();
        let fwd = bernardi_expression(&f, 1.3, &op, &b).unwrap();
        assert!(max_residual(&fwd, &q).unwrap() < 1e-12);
        let table = MultiplierTable::new(&op, f.order()).unwrap();
        let em_l = table.apply(&crate::operator::bernardi(&f, &b).unwrap()).unwrap();
        assert!(max_residual(&em_l.shift_down().unwrap(), &p).unwrap() < 1e-12);
    }
}
