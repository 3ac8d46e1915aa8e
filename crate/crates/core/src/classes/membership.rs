use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::series::TruncatedSeries;
use crate::{Complex, Error, Result};

/// Finite grid of circles `|z| = r` on which disk conditions are checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskProbe {
    pub radii: Vec<f64>,
    pub angles: usize,
    pub margin_tol: f64,
}

impl Default for DiskProbe {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99],
            angles: 1024,
            margin_tol: 1e-6,
        }
    }
}

impl DiskProbe {
    pub fn new(radii: Vec<f64>, angles: usize, margin_tol: f64) -> Result<Self> {
        let p = Self {
            radii,
            angles,
            margin_tol,
        };
        p.validate()?;
        Ok(p)
    }

    /// A probe on the single circle `|z| = r`.
    pub fn single(radius: f64, angles: usize, margin_tol: f64) -> Result<Self> {
        Self::new(vec![radius], angles, margin_tol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::InvalidParameter("probe needs at least one radius".into()));
        }
        if self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidParameter("probe radii must lie in (0, 1)".into()));
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "probe radii must be strictly increasing".into(),
            ));
        }
        if self.angles < 64 {
            return Err(Error::InvalidParameter(format!(
                "probe needs at least 64 angles, got {}",
                self.angles
            )));
        }
        if !(self.margin_tol.is_finite() && self.margin_tol > 0.0) {
            return Err(Error::InvalidParameter("margin_tol must be > 0".into()));
        }
        Ok(())
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("validated probe")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    Boundary,
    NonMember,
}

impl Verdict {
    /// Three-way classification of a margin that is positive inside the class.
    fn from_margin(margin: f64, tol: f64) -> Self {
        if margin > tol {
            Verdict::Member
        } else if margin < -tol {
            Verdict::NonMember
        } else {
            Verdict::Boundary
        }
    }
}

/// Outcome of a probe-grid membership test.
///
/// For `P(ρ)`, `margin` is `min Re p - ρ` over the grid. For `P_k(ρ)` it is
/// `1 - I/(kπ)` with `I` the largest boundary integral over the probe radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub margin: f64,
    pub max_integral: f64,
}

/// Values of a series over one probe circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskSample {
    pub radius: f64,
    /// `min Re p(re^{iθ})`.
    pub min_re: f64,
    /// Trapezoid sum of `|Re p - ρ|/(1-ρ)` over the full circle.
    pub integral: f64,
}

/// Samples `p` on every probe circle.
pub fn sample_disk(p: &TruncatedSeries, rho: f64, probe: &DiskProbe) -> Result<Vec<DiskSample>> {
    probe.validate()?;
    if !(rho < 1.0) {
        return Err(Error::InvalidParameter(format!("rho must be < 1, got {rho}")));
    }
    Ok(probe
        .radii
        .iter()
        .map(|&r| sample_circle(p, rho, r, probe.angles))
        .collect())
}

fn sample_circle(p: &TruncatedSeries, rho: f64, r: f64, angles: usize) -> DiskSample {
    let step = TAU / angles as f64;
    let mut min_re = f64::INFINITY;
    let mut sum = 0.0;
    for j in 0..angles {
        let re = p.evaluate(Complex::from_polar(r, j as f64 * step)).re;
        min_re = min_re.min(re);
        sum += (re - rho).abs();
    }
    DiskSample {
        radius: r,
        min_re,
        integral: sum * step / (1.0 - rho),
    }
}

/// Trapezoid approximation of `∮ |Re p(re^{iθ}) - ρ|/(1-ρ) dθ`.
pub fn pk_integral_at_radius(p: &TruncatedSeries, rho: f64, radius: f64, angles: usize) -> Result<f64> {
    if !(radius > 0.0 && radius <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must lie in (0, 1], got {radius}"
        )));
    }
    if angles == 0 || !(rho < 1.0) {
        return Err(Error::InvalidParameter("need angles > 0 and rho < 1".into()));
    }
    Ok(sample_circle(p, rho, radius, angles).integral)
}

/// Tests `Re p > ρ` on the probe grid.
pub fn in_p_rho(p: &TruncatedSeries, rho: f64, probe: &DiskProbe) -> Result<MembershipReport> {
    let samples = sample_disk(p, rho, probe)?;
    let margin = samples.iter().map(|s| s.min_re - rho).fold(f64::INFINITY, f64::min);
    let max_integral = samples.iter().map(|s| s.integral).fold(0.0, f64::max);
    Ok(MembershipReport {
        verdict: Verdict::from_margin(margin, probe.margin_tol),
        margin,
        max_integral,
    })
}

/// Tests the boundary-rotation bound `∮ |Re p - ρ|/(1-ρ) dθ <= kπ` on every
/// probe circle.
///
/// The verdict is member when the largest integral is at most
/// `kπ(1 + margin_tol)`, boundary up to `kπ(1 + 10·margin_tol)`, and
/// non-member beyond.
pub fn in_pk_rho(p: &TruncatedSeries, k: f64, rho: f64, probe: &DiskProbe) -> Result<MembershipReport> {
    if !(k.is_finite() && k >= 2.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let samples = sample_disk(p, rho, probe)?;
    let max_integral = samples.iter().map(|s| s.integral).fold(0.0, f64::max);
    let margin = 1.0 - max_integral / (k * PI);
    let tol = probe.margin_tol;
    let verdict = if margin >= -tol {
        Verdict::Member
    } else if margin >= -10.0 * tol {
        Verdict::Boundary
    } else {
        Verdict::NonMember
    };
    Ok(MembershipReport {
        verdict,
        margin,
        max_integral,
    })
}

/// Number of zeros of `s` in `|z| < radius`, by the argument principle.
///
/// Returns `None` when `|s|` nearly vanishes on the circle itself, so the
/// count would be unreliable.
pub fn zero_count(s: &TruncatedSeries, radius: f64) -> Option<usize> {
    let samples = (16 * (s.order() + 1)).max(1024);
    let scale = s.sum_abs_coeffs() * radius.max(1.0).powi(s.order() as i32);
    let step = TAU / samples as f64;
    let mut prev = s.evaluate(Complex::new(radius, 0.0));
    let mut total = 0.0;
    for j in 1..=samples {
        let cur = s.evaluate(Complex::from_polar(radius, j as f64 * step));
        if cur.norm() <= 1e-10 * scale {
            return None;
        }
        total += (cur / prev).arg();
        prev = cur;
    }
    let winding = (total / TAU).round();
    (winding >= 0.0).then_some(winding as usize)
}
