//! Python bindings: expression parsing/differentiation, both solve paths,
//! the closed-form families, and the Bessel evaluations.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use riccati::expr;
use riccati::families;
use riccati::integrate::{integrate_direct, solve_linearized, Event, SolveConfig, Trajectory};
use riccati::special;
use riccati::transform::RiccatiProblem;
use riccati::verify::{cross_method_report, VerifyTolerances};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Symbolic expression in the variable x.
#[pyclass(name = "Expr", skip_from_py_object)]
#[derive(Clone)]
struct PyExpr {
    inner: expr::Expr,
}

#[pymethods]
impl PyExpr {
    /// Parse an expression like "3*x^2 - exp(x)".
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        Ok(PyExpr {
            inner: expr::parse(source).map_err(value_err)?,
        })
    }

    /// Evaluate at x. Raises ValueError on a domain error.
    fn evaluate(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(value_err)
    }

    /// Symbolic derivative of the given order (1..=3).
    #[pyo3(signature = (order = 1))]
    fn derivative(&self, order: u32) -> PyResult<Self> {
        if !(1..=3).contains(&order) {
            return Err(PyValueError::new_err("order must be 1, 2 or 3"));
        }
        Ok(PyExpr {
            inner: self.inner.derivative(order),
        })
    }

    /// Constant folding and identity elimination.
    fn simplify(&self) -> Self {
        PyExpr {
            inner: self.inner.simplified(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr(\"{}\")", self.inner)
    }
}

/// Closed-form solution family member.
#[pyclass(name = "ClosedForm", skip_from_py_object)]
#[derive(Clone)]
struct PyClosedForm {
    inner: families::ClosedForm,
}

#[pymethods]
impl PyClosedForm {
    /// Value at x. Raises ValueError at a pole or outside the domain.
    fn evaluate(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(value_err)
    }

    /// Refit the free constants so that z(x0) = z0.
    fn fit(&self, x0: f64, z0: f64) -> PyResult<Self> {
        Ok(PyClosedForm {
            inner: families::fit_constants(&self.inner, x0, z0).map_err(value_err)?,
        })
    }

    fn describe(&self) -> String {
        self.inner.describe()
    }

    /// The free constants (K,) or (K1, K2).
    fn constants(&self) -> Vec<f64> {
        let (k1, k2) = self.inner.constants();
        match k2 {
            Some(k2) => vec![k1, k2],
            None => vec![k1],
        }
    }

    fn __repr__(&self) -> String {
        format!("ClosedForm({})", self.inner.describe())
    }
}

#[pyfunction]
fn note_f_zero(k: f64) -> PyClosedForm {
    PyClosedForm {
        inner: families::note_f_zero(k),
    }
}

#[pyfunction]
fn example1(k1: f64, k2: f64) -> PyClosedForm {
    PyClosedForm {
        inner: families::example1(k1, k2),
    }
}

#[pyfunction]
fn corollary3(c: f64, n: f64, k1: f64, k2: f64) -> PyResult<PyClosedForm> {
    Ok(PyClosedForm {
        inner: families::corollary3(c, n, k1, k2).map_err(value_err)?,
    })
}

#[pyfunction]
fn corollary4(c: f64, k1: f64, k2: f64) -> PyResult<PyClosedForm> {
    Ok(PyClosedForm {
        inner: families::corollary4(c, k1, k2).map_err(value_err)?,
    })
}

/// Bessel function J/Y/I/K of real order.
#[pyfunction]
fn bessel(kind: &str, nu: f64, x: f64) -> PyResult<f64> {
    special::bessel(parse_kind(kind)?, nu, x).map_err(value_err)
}

/// Derivative of the Bessel function with respect to x.
#[pyfunction]
fn bessel_derivative(kind: &str, nu: f64, x: f64) -> PyResult<f64> {
    special::bessel_derivative(parse_kind(kind)?, nu, x).map_err(value_err)
}

fn parse_kind(kind: &str) -> PyResult<special::BesselKind> {
    match kind {
        "J" | "j" => Ok(special::BesselKind::J),
        "Y" | "y" => Ok(special::BesselKind::Y),
        "I" | "i" => Ok(special::BesselKind::I),
        "K" | "k" => Ok(special::BesselKind::K),
        other => Err(PyValueError::new_err(format!(
            "kind must be one of J, Y, I, K (got {other:?})"
        ))),
    }
}

fn config_from_kwargs(kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<SolveConfig> {
    let mut cfg = SolveConfig::default();
    if let Some(kw) = kwargs {
        for (key, value) in kw.iter() {
            let name: String = key.extract()?;
            let v: f64 = value.extract()?;
            match name.as_str() {
                "rel_tol" => cfg.rel_tol = v,
                "abs_tol" => cfg.abs_tol = v,
                "h_init" => cfg.h_init = v,
                "h_min" => cfg.h_min = v,
                "h_max" => cfg.h_max = v,
                "blowup_threshold" => cfg.blowup_threshold = v,
                "pole_refine_tol" => cfg.pole_refine_tol = v,
                "output_step" => cfg.output_step = v,
                other => {
                    return Err(PyValueError::new_err(format!(
                        "unknown config option {other:?}"
                    )))
                }
            }
        }
    }
    Ok(cfg)
}

fn trajectory_dict<'py>(py: Python<'py>, traj: &Trajectory) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let xs: Vec<f64> = traj.samples.iter().map(|s| s.x).collect();
    let zs: Vec<Option<f64>> = traj.samples.iter().map(|s| s.z).collect();
    let qs: Vec<Option<f64>> = traj.samples.iter().map(|s| s.q).collect();
    let ps: Vec<Option<f64>> = traj.samples.iter().map(|s| s.p).collect();
    let flags: Vec<&str> = traj.samples.iter().map(|s| s.flag.as_str()).collect();
    d.set_item("x", xs)?;
    d.set_item("z", zs)?;
    d.set_item("q", qs)?;
    d.set_item("p", ps)?;
    d.set_item("flags", flags)?;
    d.set_item("poles", traj.poles.clone())?;
    let events: Vec<String> = traj
        .events
        .iter()
        .map(|e| match e {
            Event::Blowup { x, z } => format!("blowup at x = {x} (z = {z})"),
            Event::StepFailure { x, reason } => format!("step failure at x = {x}: {reason}"),
            Event::QDipWithoutCrossing { x } => {
                format!("q dipped toward zero without a sign change near x = {x}")
            }
        })
        .collect();
    d.set_item("events", events)?;
    Ok(d)
}

/// Solve dz/dx + a(x) z^2 = f(x) from z(x0) = z0 up to x_end.
///
/// method: "linearized" | "direct" | "both". Keyword arguments override the
/// solver configuration (rel_tol, abs_tol, h_init, h_min, h_max,
/// blowup_threshold, pole_refine_tol, output_step).
#[pyfunction]
#[pyo3(signature = (a, f, x0, z0, x_end, method = "both", **kwargs))]
fn solve<'py>(
    py: Python<'py>,
    a: &str,
    f: &str,
    x0: f64,
    z0: f64,
    x_end: f64,
    method: &str,
    kwargs: Option<&Bound<'py, PyDict>>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = expr::parse(a).map_err(value_err)?;
    let f = expr::parse(f).map_err(value_err)?;
    let cfg = config_from_kwargs(kwargs)?;
    let prob = RiccatiProblem::new(a, f);
    let out = PyDict::new(py);
    match method {
        "linearized" | "both" => {
            let traj = solve_linearized(&prob, x0, z0, x_end, &cfg).map_err(runtime_err)?;
            out.set_item("linearized", trajectory_dict(py, &traj)?)?;
        }
        "direct" => {}
        other => {
            return Err(PyValueError::new_err(format!(
                "method must be linearized, direct or both (got {other:?})"
            )))
        }
    }
    if method == "direct" || method == "both" {
        let traj = integrate_direct(&prob, x0, z0, x_end, &cfg).map_err(runtime_err)?;
        out.set_item("direct", trajectory_dict(py, &traj)?)?;
    }
    Ok(out)
}

/// Run the cross-method verification and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (a, f, x0, z0, x_end, residual_tol = 1e-6, comparison_tol = 1e-6, pole_gap_tol = 1e-3, **kwargs))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    a: &str,
    f: &str,
    x0: f64,
    z0: f64,
    x_end: f64,
    residual_tol: f64,
    comparison_tol: f64,
    pole_gap_tol: f64,
    kwargs: Option<&Bound<'py, PyDict>>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = expr::parse(a).map_err(value_err)?;
    let f = expr::parse(f).map_err(value_err)?;
    let cfg = config_from_kwargs(kwargs)?;
    let tol = VerifyTolerances {
        residual: residual_tol,
        comparison: comparison_tol,
        pole_gap: pole_gap_tol,
        ..VerifyTolerances::default()
    };
    let prob = RiccatiProblem::new(a, f);
    let rep = cross_method_report(&prob, x0, z0, x_end, &cfg, &tol).map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("max_residual", rep.max_residual)?;
    d.set_item("comparison_max_gap", rep.comparison_max_gap)?;
    d.set_item("compared_points", rep.compared_points)?;
    let pairs: Vec<(f64, f64, f64)> = rep
        .pole_agreement
        .iter()
        .map(|pa| (pa.pole_linearized, pa.blowup_direct, pa.gap))
        .collect();
    d.set_item("pole_agreement", pairs)?;
    d.set_item("pass", rep.pass)?;
    Ok(d)
}

#[pymodule]
fn riccati_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyClosedForm>()?;
    m.add_function(wrap_pyfunction!(note_f_zero, m)?)?;
    m.add_function(wrap_pyfunction!(example1, m)?)?;
    m.add_function(wrap_pyfunction!(corollary3, m)?)?;
    m.add_function(wrap_pyfunction!(corollary4, m)?)?;
    m.add_function(wrap_pyfunction!(bessel, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
