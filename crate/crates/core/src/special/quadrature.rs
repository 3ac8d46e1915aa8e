use std::f64::consts::PI;

use crate::{Error, Result};

const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureScheme {
    /// Adaptive bisection with an `node_count`-point Gauss-Legendre panel rule.
    GaussLegendre,
    /// Adaptive Simpson over `node_count` initial panels.
    AdaptiveSimpson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub scheme: QuadratureScheme,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            node_count: 10,
            scheme: QuadratureScheme::GaussLegendre,
            abs_tol: 1e-13,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::InvalidParameter(format!(
                "quadrature node_count must be >= 2, got {}",
                self.node_count
            )));
        }
        if !(self.abs_tol >= 10.0 * f64::EPSILON) {
            return Err(Error::InvalidParameter(format!(
                "quadrature abs_tol must be >= 10*eps, got {:e}",
                self.abs_tol
            )));
        }
        Ok(())
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pn_1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn_1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// ∫₀¹ f(t) dt.
///
/// Integrable endpoint singularities at the origin are better handled by
/// [`integrate_graded`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    integrate_interval(f, 0.0, 1.0, spec)
}

pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    integrate_with_tol(&f, a, b, spec, spec.abs_tol)
}

/// Dyadic panels between the origin and 2^{-GRADED_LEVELS}.
const GRADED_LEVELS: i32 = 60;

/// ∫₀¹ f(t) dt on the geometrically graded panels `[2^{-j-1}, 2^{-j}]`,
/// each held to `abs_tol / 61`.
///
/// Suited to integrands like `t^a` or `log t` whose derivatives blow up at
/// the origin: on each panel they are smooth at the panel's own scale. The
/// leftover `[0, 2^{-60}]` is one midpoint sample.
pub fn integrate_graded<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let tol = spec.abs_tol / f64::from(GRADED_LEVELS + 1);
    let mut total = 0.0;
    for j in (0..GRADED_LEVELS).rev() {
        let hi = 2f64.powi(-j);
        total += integrate_with_tol(&f, 0.5 * hi, hi, spec, tol)?;
    }
    let tail = 2f64.powi(-GRADED_LEVELS);
    Ok(total + tail * f(0.5 * tail))
}

fn integrate_with_tol<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec, tol: f64) -> Result<f64> {
    match spec.scheme {
        QuadratureScheme::GaussLegendre => {
            let rule = gauss_legendre_rule(spec.node_count);
            let whole = gl_panel(f, a, b, &rule);
            gl_adaptive(f, a, b, whole, tol, &rule, 0)
        }
        QuadratureScheme::AdaptiveSimpson => {
            let panels = spec.node_count;
            let h = (b - a) / panels as f64;
            let tol = tol / panels as f64;
            let mut total = 0.0;
            for i in 0..panels {
                let lo = a + i as f64 * h;
                let hi = if i + 1 == panels { b } else { lo + h };
                let (flo, fmid, fhi) = (f(lo), f(0.5 * (lo + hi)), f(hi));
                let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
                total += simpson_adaptive(f, lo, hi, flo, fmid, fhi, whole, tol, 0)?;
            }
            Ok(total)
        }
    }
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.0
        .iter()
        .zip(&rule.1)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

fn gl_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    rule: &(Vec<f64>, Vec<f64>),
    depth: u32,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = gl_panel(f, a, mid, rule);
    let right = gl_panel(f, mid, b, rule);
    let refined = left + right;
    let estimate = (refined - whole).abs();
    if !refined.is_finite() {
        return Err(Error::NonFinite("quadrature integrand".into()));
    }
    if estimate <= tol {
        return Ok(refined);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::ToleranceNotMet { tol, estimate });
    }
    Ok(gl_adaptive(f, a, mid, left, 0.5 * tol, rule, depth + 1)?
        + gl_adaptive(f, mid, b, right, 0.5 * tol, rule, depth + 1)?)
}

#[allow(clippy::too_many_arguments)]
fn simpson_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::NonFinite("quadrature integrand".into()));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::ToleranceNotMet {
            tol,
            estimate: delta.abs() / 15.0,
        });
    }
    Ok(simpson_adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
        + simpson_adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
}
