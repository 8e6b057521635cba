//! Python module `gravhelm`. Points are `(x1, x2)` tuples and complex
//! values come back as Python `complex`.

use gravhelm_core::bie::{fill_matrix, solve_dense, solve_gmres, BieProblem, Density, NystromSystem};
use gravhelm_core::boundary::PolarCurve as CorePolarCurve;
use gravhelm_core::field::{
    airy_solution, boundary_traces, eval_solution, greens_identity_residual, incident_point_source,
};
use gravhelm_core::{specfun, BieError, FsConfig as CoreFsConfig, Point2};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pt((x1, x2): (f64, f64)) -> Point2 {
    Point2::new(x1, x2)
}

/// Contour quadrature parameters.
#[pyclass(name = "FsConfig", from_py_object)]
#[derive(Clone)]
struct FsConfig {
    inner: CoreFsConfig,
}

#[pymethods]
impl FsConfig {
    #[new]
    #[pyo3(signature = (h0=None, h_max=None, n_min=None, eps=None, beta=None))]
    fn new(
        h0: Option<f64>,
        h_max: Option<f64>,
        n_min: Option<usize>,
        eps: Option<f64>,
        beta: Option<f64>,
    ) -> PyResult<Self> {
        let mut c = CoreFsConfig::default();
        c.h0 = h0.unwrap_or(c.h0);
        c.h_max = h_max.unwrap_or(c.h_max);
        c.n_min = n_min.unwrap_or(c.n_min);
        c.eps = eps.unwrap_or(c.eps);
        c.beta = beta.unwrap_or(c.beta);
        c.validate().map_err(err)?;
        Ok(Self { inner: c })
    }

    /// The co-scaled family `h_max = 0.13 h0`, `n_min = 15 / h0`.
    #[staticmethod]
    fn refined(h0: f64) -> PyResult<Self> {
        let c = CoreFsConfig::refined(h0);
        c.validate().map_err(err)?;
        Ok(Self { inner: c })
    }

    #[getter]
    fn h0(&self) -> f64 {
        self.inner.h0
    }

    #[getter]
    fn eps(&self) -> f64 {
        self.inner.eps
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        format!(
            "FsConfig(h0={}, h_max={}, n_min={}, eps={}, beta={})",
            c.h0, c.h_max, c.n_min, c.eps, c.beta
        )
    }
}

fn cfg_or_default(cfg: Option<FsConfig>) -> CoreFsConfig {
    cfg.map(|c| c.inner).unwrap_or_default()
}

/// Star-shaped curve `r(theta) = c0 + sum cos_k cos k theta + sin_k sin k theta`.
#[pyclass(name = "PolarCurve", from_py_object)]
#[derive(Clone)]
struct PolarCurve {
    inner: CorePolarCurve,
}

#[pymethods]
impl PolarCurve {
    #[new]
    #[pyo3(signature = (c0, cos=Vec::new(), sin=Vec::new()))]
    fn new(c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: CorePolarCurve::new(c0, cos, sin).map_err(err)?,
        })
    }

    fn radius(&self, theta: f64) -> f64 {
        self.inner.radius(theta)
    }

    fn contains(&self, p: (f64, f64)) -> bool {
        self.inner.contains(pt(p))
    }

    /// Deterministic quasi-random points inside the curve scaled by `scale`.
    fn interior_points(&self, scale: f64, count: usize) -> Vec<(f64, f64)> {
        self.inner
            .interior_points(scale, count)
            .into_iter()
            .map(|p| (p.x1, p.x2))
            .collect()
    }
}

/// `(Phi, dPhi/dy1, dPhi/dy2)` for target `x`, source `y`.
#[pyfunction]
#[pyo3(signature = (x, y, energy, config=None))]
fn eval_phi(
    x: (f64, f64),
    y: (f64, f64),
    energy: f64,
    config: Option<FsConfig>,
) -> PyResult<(Complex64, Complex64, Complex64)> {
    let v = gravhelm_core::eval_phi(pt(x), pt(y), energy, &cfg_or_default(config)).map_err(err)?;
    Ok((v.phi, v.dphi_dy1, v.dphi_dy2))
}

/// `Phi(x_k, y)` for many targets, evaluated in parallel.
#[pyfunction]
#[pyo3(signature = (targets, y, energy, config=None))]
fn eval_phi_many(
    py: Python<'_>,
    targets: Vec<(f64, f64)>,
    y: (f64, f64),
    energy: f64,
    config: Option<FsConfig>,
) -> PyResult<Vec<Complex64>> {
    let pts: Vec<Point2> = targets.into_iter().map(pt).collect();
    let cfg = cfg_or_default(config).with_derivs(false);
    let vals = py
        .detach(|| gravhelm_core::eval_phi_batch(&pts, pt(y), energy, &cfg))
        .map_err(err)?;
    Ok(vals.into_iter().map(|v| v.phi).collect())
}

#[pyfunction]
fn airy_ai(z: f64) -> PyResult<f64> {
    specfun::airy_ai(z).map_err(err)
}

#[pyfunction]
fn hankel0(x: f64) -> PyResult<Complex64> {
    specfun::hankel0(x).map_err(err)
}

fn solve(sys: &NystromSystem, solver: &str, tol: f64) -> PyResult<Density> {
    match solver {
        "dense" => solve_dense(sys).map_err(err),
        "gmres" => solve_gmres(sys, tol).map(|(d, _)| d).map_err(err),
        other => Err(PyValueError::new_err(format!(
            "unknown solver {other:?}, expected 'dense' or 'gmres'"
        ))),
    }
}

/// Interior Dirichlet problem with boundary data `cos(sqrt(E) x1) Ai(-x2)`.
/// Returns `(computed, exact, green_residual)` at the targets.
#[pyfunction]
#[pyo3(signature = (curve, n, energy, targets, solver="dense", gmres_tol=1e-12, config=None))]
#[allow(clippy::too_many_arguments, clippy::type_complexity)]
fn interior_airy(
    py: Python<'_>,
    curve: PolarCurve,
    n: usize,
    energy: f64,
    targets: Vec<(f64, f64)>,
    solver: &str,
    gmres_tol: f64,
    config: Option<FsConfig>,
) -> PyResult<(Vec<Complex64>, Vec<f64>, f64)> {
    let cfg = cfg_or_default(config);
    let pts: Vec<Point2> = targets.into_iter().map(pt).collect();
    let curve = curve.inner;
    let solver = solver.to_string();
    py.detach(move || {
        let field = |p| {
            airy_solution(energy, p).map_err(BieError::from).map(|(u, g)| {
                (
                    Complex64::new(u, 0.0),
                    [Complex64::new(g[0], 0.0), Complex64::new(g[1], 0.0)],
                )
            })
        };
        let (u, un) = boundary_traces(&curve, n, field).map_err(err)?;
        let problem = BieProblem::interior(curve.clone(), n, energy).with_fs(cfg);
        let sys = fill_matrix(&problem, &u).map_err(err)?;
        let density = solve(&sys, &solver, gmres_tol)?;
        let values = eval_solution(&problem, &sys.nodes, &density, &pts)
            .map_err(err)?
            .values;
        let exact = pts
            .iter()
            .map(|&p| airy_solution(energy, p).map(|(v, _)| v))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let green = greens_identity_residual(&curve, n, energy, &cfg, &u, &un).map_err(err)?;
        Ok((values, exact, green.residual))
    })
}

/// Scattered field of a point source at `source` off a sound-soft obstacle.
#[pyfunction]
#[pyo3(signature = (curve, n, energy, source, targets, solver="dense", gmres_tol=1e-12, config=None))]
#[allow(clippy::too_many_arguments)]
fn scatter_point_source(
    py: Python<'_>,
    curve: PolarCurve,
    n: usize,
    energy: f64,
    source: (f64, f64),
    targets: Vec<(f64, f64)>,
    solver: &str,
    gmres_tol: f64,
    config: Option<FsConfig>,
) -> PyResult<Vec<Complex64>> {
    let cfg = cfg_or_default(config);
    let pts: Vec<Point2> = targets.into_iter().map(pt).collect();
    let curve = curve.inner;
    let solver = solver.to_string();
    py.detach(move || {
        let problem = BieProblem::exterior(curve, n, energy).map_err(err)?.with_fs(cfg);
        let nodes = problem.nodes().map_err(err)?;
        let f: Vec<Complex64> = incident_point_source(pt(source), &nodes.points, energy, &cfg)
            .map_err(err)?
            .iter()
            .map(|v| -v)
            .collect();
        let sys = fill_matrix(&problem, &f).map_err(err)?;
        let density = solve(&sys, &solver, gmres_tol)?;
        Ok(eval_solution(&problem, &sys.nodes, &density, &pts)
            .map_err(err)?
            .values)
    })
}

#[pymodule]
fn gravhelm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FsConfig>()?;
    m.add_class::<PolarCurve>()?;
    m.add_function(wrap_pyfunction!(eval_phi, m)?)?;
    m.add_function(wrap_pyfunction!(eval_phi_many, m)?)?;
    m.add_function(wrap_pyfunction!(airy_ai, m)?)?;
    m.add_function(wrap_pyfunction!(hankel0, m)?)?;
    m.add_function(wrap_pyfunction!(interior_airy, m)?)?;
    m.add_function(wrap_pyfunction!(scatter_point_source, m)?)?;
    Ok(())
}
