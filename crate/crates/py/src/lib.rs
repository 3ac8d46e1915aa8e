//! Python bindings. Series cross the boundary as `list[complex]` of
//! Taylor coefficients `[a0, a1, …, aN]`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use bazilevic_core::classes::{self as cls, Atom};
use bazilevic_core::operator::{self as op, BernardiParams};
use bazilevic_core::special::{self, QuadratureSpec};
use bazilevic_core::theorems::{self as thm, TheoremId, VerifyConfig};
use bazilevic_core::{Complex, DiskProbe, HerglotzMeasure, MembershipReport, NormalizedSeries, TruncatedSeries};

create_exception!(bazilevic, BazilevicError, PyValueError);

fn err(e: bazilevic_core::Error) -> PyErr {
    BazilevicError::new_err(format!("{}: {e}", e.kind()))
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for bazilevic_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn series(coeffs: Vec<Complex>) -> PyResult<TruncatedSeries> {
    TruncatedSeries::new(coeffs).py()
}

fn normalized(coeffs: Vec<Complex>) -> PyResult<NormalizedSeries> {
    NormalizedSeries::new(series(coeffs)?).py()
}

fn probe(radii: Option<Vec<f64>>, angles: usize, margin_tol: f64) -> PyResult<DiskProbe> {
    let radii = radii.unwrap_or_else(|| DiskProbe::default().radii);
    DiskProbe::new(radii, angles, margin_tol).py()
}

/// Mittag-Leffler operator parameters `(m, λ, α, β)`.
#[pyclass(name = "OperatorParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyOperatorParams(bazilevic_core::OperatorParams);

#[pymethods]
impl PyOperatorParams {
    #[new]
    #[pyo3(signature = (m=0, lam=1.0, alpha=Complex::new(0.0, 0.0), beta=Complex::new(1.0, 0.0)))]
    fn new(m: u32, lam: f64, alpha: Complex, beta: Complex) -> PyResult<Self> {
        Ok(Self(bazilevic_core::OperatorParams::new(m, lam, alpha, beta).py()?))
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda
    }

    #[getter]
    fn alpha(&self) -> Complex {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> Complex {
        self.0.beta
    }

    /// Multiplier of the coefficient of zⁿ.
    fn multiplier(&self, n: usize) -> PyResult<Complex> {
        op::ml_multiplier(n, &self.0).py()
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!(
            "OperatorParams(m={}, lam={:?}, alpha={}, beta={})",
            p.m, p.lambda, p.alpha, p.beta
        )
    }
}

/// Class parameters `(k, ρ, ϑ, γ)`.
#[pyclass(name = "ClassParams", frozen, from_py_object)]
#[derive(Clone)]
struct PyClassParams(bazilevic_core::ClassParams);

#[pymethods]
impl PyClassParams {
    #[new]
    #[pyo3(signature = (k=2.0, rho=0.0, theta=1.0, gamma=Complex::new(1.0, 0.0)))]
    fn new(k: f64, rho: f64, theta: f64, gamma: Complex) -> PyResult<Self> {
        Ok(Self(bazilevic_core::ClassParams::new(k, rho, theta, gamma).py()?))
    }

    #[getter]
    fn k(&self) -> f64 {
        self.0.k
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.0.rho
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.exponent
    }

    #[getter]
    fn gamma(&self) -> Complex {
        self.0.gamma
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!(
            "ClassParams(k={:?}, rho={:?}, theta={:?}, gamma={})",
            c.k, c.rho, c.exponent, c.gamma
        )
    }
}

#[pyfunction]
fn gamma(z: Complex) -> PyResult<Complex> {
    special::gamma(z).py()
}

/// E_{α,β}(z).
#[pyfunction]
#[pyo3(signature = (alpha, beta, z, terms=200))]
fn mittag_leffler(alpha: Complex, beta: Complex, z: Complex, terms: usize) -> PyResult<Complex> {
    special::mittag_leffler(alpha, beta, z, terms).py()
}

/// E^m f.
#[pyfunction]
fn apply_operator(f: Vec<Complex>, params: &PyOperatorParams) -> PyResult<Vec<Complex>> {
    Ok(op::apply_operator(&series(f)?, &params.0).py()?.into_coeffs())
}

/// Bernardi-Libera-Livingston operator L_σ, or its inverse.
#[pyfunction]
#[pyo3(signature = (f, sigma, inverse=false))]
fn bernardi(f: Vec<Complex>, sigma: f64, inverse: bool) -> PyResult<Vec<Complex>> {
    let b = BernardiParams::new(sigma).py()?;
    let f = series(f)?;
    let g = if inverse {
        op::bernardi_inverse(&f, &b)
    } else {
        op::bernardi(&f, &b)
    };
    Ok(g.py()?.into_coeffs())
}

#[pyfunction]
fn class_functional(f: Vec<Complex>, cp: &PyClassParams, params: &PyOperatorParams) -> PyResult<Vec<Complex>> {
    let g = cls::class_functional(&series(f)?, &cp.0, &params.0).py()?;
    Ok(g.into_series().into_coeffs())
}

/// f in class A with class_functional(f) = p.
#[pyfunction]
fn solve_functional_inverse(p: Vec<Complex>, cp: &PyClassParams, params: &PyOperatorParams) -> PyResult<Vec<Complex>> {
    Ok(cls::solve_functional_inverse(&normalized(p)?, &cp.0, &params.0)
        .py()?
        .into_coeffs())
}

fn report_dict<'py>(py: Python<'py>, r: &MembershipReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let verdict = match r.verdict {
        bazilevic_core::Verdict::Member => "member",
        bazilevic_core::Verdict::Boundary => "boundary",
        bazilevic_core::Verdict::NonMember => "non-member",
    };
    d.set_item("verdict", verdict)?;
    d.set_item("margin", r.margin)?;
    d.set_item("max_integral", r.max_integral)?;
    Ok(d)
}

/// Probe-grid membership of p in P_k(ρ).
#[pyfunction]
#[pyo3(signature = (p, k, rho, radii=None, angles=1024, margin_tol=1e-6))]
fn in_pk_rho<'py>(
    py: Python<'py>,
    p: Vec<Complex>,
    k: f64,
    rho: f64,
    radii: Option<Vec<f64>>,
    angles: usize,
    margin_tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = cls::in_pk_rho(&series(p)?, k, rho, &probe(radii, angles, margin_tol)?).py()?;
    report_dict(py, &rep)
}

/// Series of the Herglotz integral of a discrete measure `[(θ, w), …]`.
/// With `fejer`, coefficient n is damped by `1 - n/(order+1)`.
#[pyfunction]
#[pyo3(signature = (atoms, rho, order, fejer=false))]
fn herglotz_series(atoms: Vec<(f64, f64)>, rho: f64, order: usize, fejer: bool) -> PyResult<Vec<Complex>> {
    let mu = HerglotzMeasure::new(atoms.into_iter().map(|(theta, w)| Atom { theta, w }).collect()).py()?;
    let p = if fejer {
        cls::herglotz_polynomial(&mu, rho, order)
    } else {
        cls::herglotz_to_series(&mu, rho, order)
    };
    Ok(p.py()?.into_series().into_coeffs())
}

/// Bazilevič function for τ = 0 from g in class A and p with p(0) = 1.
#[pyfunction]
fn bazilevic_construct(theta: f64, g: Vec<Complex>, p: Vec<Complex>, order: usize) -> PyResult<Vec<Complex>> {
    let bp = cls::BazilevicParams {
        exponent: theta,
        tau: 0.0,
        g: series(g)?,
        p: normalized(p)?,
    };
    Ok(cls::bazilevic_construct(&bp, order).py()?.into_coeffs())
}

#[pyfunction]
fn radius_r1(lam: f64, gamma: f64, theta: f64) -> PyResult<f64> {
    thm::radius_r1(lam, gamma, theta).py()
}

#[pyfunction]
fn rho1(theta: f64, rho: f64, lam: f64, gamma: f64) -> PyResult<f64> {
    thm::rho1(theta, rho, lam, gamma).py()
}

/// (ι, ι₁).
#[pyfunction]
fn iota(rho: f64, gamma: f64, sigma: f64) -> PyResult<(f64, f64)> {
    thm::iota(rho, gamma, sigma, &QuadratureSpec::default()).py()
}

#[pyfunction]
#[pyo3(signature = (cp, params, order=64))]
fn sharp_function(cp: &PyClassParams, params: &PyOperatorParams, order: usize) -> PyResult<Vec<Complex>> {
    Ok(thm::sharp_function(&cp.0, &params.0, order).py()?.into_coeffs())
}

/// Empirical against formula radius: `(r_formula, r_empirical, gap)`.
#[pyfunction]
#[pyo3(signature = (f, cp, params, radii=None, angles=2048, margin_tol=1e-6))]
fn empirical_radius(
    py: Python<'_>,
    f: Vec<Complex>,
    cp: &PyClassParams,
    params: &PyOperatorParams,
    radii: Option<Vec<f64>>,
    angles: usize,
    margin_tol: f64,
) -> PyResult<(f64, f64, f64)> {
    let f = series(f)?;
    let probe = probe(radii, angles, margin_tol)?;
    let (cp, op) = (cp.0, params.0);
    let r = py.detach(|| thm::empirical_radius(&f, &cp, &op, &probe)).py()?;
    Ok((r.r_formula, r.r_empirical, r.gap))
}

/// Runs a seeded verification suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (theorem, trials=200, seed=42, threads=0, allowance=1e-4, order=64))]
fn verify(
    py: Python<'_>,
    theorem: &str,
    trials: usize,
    seed: u64,
    threads: usize,
    allowance: f64,
    order: usize,
) -> PyResult<String> {
    let id: TheoremId = theorem.parse().py()?;
    let cfg = VerifyConfig {
        trials,
        seed,
        threads,
        allowance,
        order,
        ..VerifyConfig::default()
    };
    let report = py.detach(|| thm::verify(id, &cfg)).py()?;
    Ok(thm::report_json(&report))
}

#[pymodule]
fn bazilevic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BazilevicError", m.py().get_type::<BazilevicError>())?;
    m.add_class::<PyOperatorParams>()?;
    m.add_class::<PyClassParams>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(apply_operator, m)?)?;
    m.add_function(wrap_pyfunction!(bernardi, m)?)?;
    m.add_function(wrap_pyfunction!(class_functional, m)?)?;
    m.add_function(wrap_pyfunction!(solve_functional_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(in_pk_rho, m)?)?;
    m.add_function(wrap_pyfunction!(herglotz_series, m)?)?;
    m.add_function(wrap_pyfunction!(bazilevic_construct, m)?)?;
    m.add_function(wrap_pyfunction!(radius_r1, m)?)?;
    m.add_function(wrap_pyfunction!(rho1, m)?)?;
    m.add_function(wrap_pyfunction!(iota, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_function, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_radius, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
