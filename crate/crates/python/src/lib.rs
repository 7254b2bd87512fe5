//! Python module `glcurve`.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use glcurve_core::basis::{power_coeffs_a as core_a, power_coeffs_b as core_b};
use glcurve_core::bench::eval_integral;
use glcurve_core::oracle::{self, EvalMethod};
use glcurve_core::{
    eval_basis, eval_basis_all, eval_basis_derivative, eval_many_parallel, BasisKind, BasisRep,
    Conditioning, GlBasis, GlCurve, GlError, PreparedCurve, Span,
};

fn err(e: GlError) -> PyErr {
    match e {
        GlError::Index { .. } => PyIndexError::new_err(e.to_string()),
        GlError::NoConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn kind(name: &str) -> PyResult<BasisKind> {
    name.parse().map_err(err)
}

fn method(name: &str) -> PyResult<EvalMethod> {
    name.parse().map_err(err)
}

fn roots(n: usize) -> PyResult<glcurve_core::LegendreRootTable> {
    glcurve_core::legendre_roots(n).map_err(err)
}

fn conditioning_name(c: Conditioning) -> &'static str {
    match c {
        Conditioning::Good => "good",
        Conditioning::IllConditioned => "ill_conditioned",
        Conditioning::Overflow => "overflow",
    }
}

/// Roots of the Legendre polynomial `P_n` in increasing order.
#[pyfunction]
fn legendre_roots(n: usize) -> PyResult<Vec<f64>> {
    Ok(roots(n)?.as_slice().to_vec())
}

/// Coefficients `a_0..a_n` of `P_n(x) = Σ a_k (x+1)^k`.
#[pyfunction]
fn power_coeffs_a(n: usize) -> PyResult<Vec<f64>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(core_a(n))
}

/// Coefficients of `P_n(x) / (x - τ_i)` in powers of `x + 1`.
#[pyfunction]
fn power_coeffs_b(n: usize, i: usize) -> PyResult<Vec<f64>> {
    let r = roots(n)?;
    if !(1..=n).contains(&i) {
        return Err(PyIndexError::new_err(format!(
            "root index {i} out of 1..={n}"
        )));
    }
    Ok(core_b(&r, &core_a(n), i))
}

#[pyfunction]
fn g_integral(n: usize, i: usize, t: f64) -> PyResult<f64> {
    oracle::g_integral(n, i, t, &roots(n)?).map_err(err)
}

#[pyfunction]
fn f_integral(n: usize, i: usize, t: f64) -> PyResult<f64> {
    oracle::f_integral(n, i, t, &roots(n)?).map_err(err)
}

/// `F^n_i(t)` in extended precision, rounded to a double.
#[pyfunction]
fn extended_reference(n: usize, i: usize, t: f64) -> PyResult<f64> {
    oracle::extended_reference(n, i, t).map_err(err)
}

/// Maximum and mean deviation from the extended reference on a uniform grid.
#[pyfunction]
#[pyo3(signature = (n, method, grid_size = 201))]
fn error_report<'py>(
    py: Python<'py>,
    n: usize,
    method: &str,
    grid_size: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = oracle::error_report(n, self::method(method)?, grid_size).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("method", r.method.name())?;
    d.set_item("max_abs_error", r.max_abs_error)?;
    d.set_item("mean_abs_error", r.mean_abs_error)?;
    d.set_item("sample_count", r.sample_count)?;
    d.set_item("grid_size", r.grid_size)?;
    Ok(d)
}

/// The basis `F^n_0..F^n_n` in one representation.
#[pyclass(name = "Basis", frozen)]
struct PyBasis {
    rep: BasisRep,
}

#[pymethods]
impl PyBasis {
    /// `span` is `"half"` (stored rows `0..=n/2`, the rest by reflection) or `"full"`.
    #[new]
    #[pyo3(signature = (n, kind = "jacobi1", span = "full"))]
    fn new(n: usize, kind: &str, span: &str) -> PyResult<Self> {
        let span = match span {
            "full" => Span::Full,
            "half" => Span::Half,
            other => return Err(PyValueError::new_err(format!("unknown span '{other}'"))),
        };
        Ok(PyBasis {
            rep: BasisRep::build(self::kind(kind)?, &roots(n)?, span),
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.rep.degree()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.rep.kind().name()
    }

    #[getter]
    fn conditioning(&self) -> &'static str {
        conditioning_name(self.rep.conditioning())
    }

    fn eval(&self, i: usize, t: f64) -> PyResult<f64> {
        eval_basis(&self.rep, i, t).map_err(err)
    }

    fn eval_all(&self, t: f64) -> Vec<f64> {
        eval_basis_all(&self.rep, t)
    }

    fn derivative(&self, i: usize, m: usize, t: f64) -> PyResult<f64> {
        eval_basis_derivative(&self.rep, i, m, t).map_err(err)
    }
}

/// A curve `Σ F^n_i(t) W_i` given by its control points.
#[pyclass(name = "Curve", frozen)]
struct PyCurve {
    curve: GlCurve,
}

#[pymethods]
impl PyCurve {
    #[new]
    fn new(control_points: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(PyCurve {
            curve: GlCurve::from_rows(&control_points).map_err(err)?,
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.curve.degree()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.curve.dimension()
    }

    #[getter]
    fn control_points(&self) -> Vec<Vec<f64>> {
        self.curve.control_points().map(<[f64]>::to_vec).collect()
    }

    /// One point, preparing the curve on the fly.
    #[pyo3(signature = (t, method = "jacobi1"))]
    fn eval(&self, t: f64, method: &str) -> PyResult<Vec<f64>> {
        match self::method(method)? {
            EvalMethod::Basis(k) => glcurve_core::eval_point(&self.curve, t, k).map_err(err),
            EvalMethod::Integral => eval_integral(&self.curve, &[t]).map_err(err),
        }
    }

    #[pyo3(signature = (method = "jacobi1"))]
    fn prepare(&self, method: &str) -> PyResult<PyPrepared> {
        Ok(PyPrepared {
            prep: glcurve_core::prepare(&self.curve, kind(method)?).map_err(err)?,
        })
    }
}

/// A curve folded into one representation for repeated evaluation.
#[pyclass(name = "PreparedCurve", frozen)]
struct PyPrepared {
    prep: PreparedCurve,
}

#[pymethods]
impl PyPrepared {
    #[getter]
    fn degree(&self) -> usize {
        self.prep.degree()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.prep.dimension()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.prep.kind().name()
    }

    #[getter]
    fn conditioning(&self) -> &'static str {
        conditioning_name(self.prep.conditioning())
    }

    fn eval(&self, py: Python<'_>, t: f64) -> PyResult<Vec<f64>> {
        Ok(self.eval_many(py, vec![t], 1)?.pop().expect("one point"))
    }

    /// One point per parameter; runs without the interpreter lock.
    #[pyo3(signature = (ts, threads = 1))]
    fn eval_many(&self, py: Python<'_>, ts: Vec<f64>, threads: usize) -> PyResult<Vec<Vec<f64>>> {
        let points = py
            .allow_threads(|| eval_many_parallel(&self.prep, &ts, threads))
            .map_err(err)?;
        Ok(points.iter().map(<[f64]>::to_vec).collect())
    }
}

#[pymodule]
fn glcurve(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(legendre_roots, m)?)?;
    m.add_function(wrap_pyfunction!(power_coeffs_a, m)?)?;
    m.add_function(wrap_pyfunction!(power_coeffs_b, m)?)?;
    m.add_function(wrap_pyfunction!(g_integral, m)?)?;
    m.add_function(wrap_pyfunction!(f_integral, m)?)?;
    m.add_function(wrap_pyfunction!(extended_reference, m)?)?;
    m.add_function(wrap_pyfunction!(error_report, m)?)?;
    m.add_class::<PyBasis>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyPrepared>()?;
    Ok(())
}
