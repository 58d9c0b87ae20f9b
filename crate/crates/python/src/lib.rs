//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! complex points as Python `complex`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ezbasis::analytic;
use ezbasis::coeffs::{self, CoeffMatrix};
use ezbasis::emit;
use ezbasis::exactnum;
use ezbasis::numeval;
use ezbasis::relations;
use ezbasis::trilinalg;
use ezbasis::Rational;

fn py_err(e: ezbasis::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.to_string(),))
}

fn fractions<'py>(py: Python<'py>, xs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| fraction(py, x)).collect()
}

/// Exact rational matrix.
#[pyclass(name = "Matrix", module = "ezbasis", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMatrix {
    inner: CoeffMatrix,
}

#[pymethods]
impl PyMatrix {
    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    /// Entry at 0-based `(i, j)`.
    fn get<'py>(&self, py: Python<'py>, i: usize, j: usize) -> PyResult<Bound<'py, PyAny>> {
        if i >= self.inner.rows() || j >= self.inner.cols() {
            return Err(PyValueError::new_err(format!("index ({i}, {j}) out of range")));
        }
        fraction(py, self.inner.get(i, j))
    }

    fn to_list<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        (0..self.inner.rows()).map(|i| fractions(py, self.inner.row(i))).collect()
    }

    fn is_lower_triangular(&self) -> bool {
        self.inner.check_lower_triangular().is_ok()
    }

    fn row_sums<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &trilinalg::row_sums(&self.inner))
    }

    #[pyo3(signature = (method = "forward"))]
    fn inverse(&self, method: &str) -> PyResult<PyMatrix> {
        let inner = match method {
            "forward" => trilinalg::invert_forward(&self.inner),
            "cofactor" => trilinalg::invert_cofactor(&self.inner),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        }
        .map_err(py_err)?;
        Ok(PyMatrix { inner })
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<PyMatrix> {
        trilinalg::mat_mul(&self.inner, &other.inner).map(|inner| PyMatrix { inner }).map_err(py_err)
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    fn latex(&self) -> String {
        emit::matrix_latex(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}x{})\n{}", self.inner.rows(), self.inner.cols(), emit::matrix_text(&self.inner))
    }
}

/// `ζ(−2m−1, s+2m+1)` over `ζ(0,s), ζ(−2,s+2), …, ζ(−2m,s+2m)`.
#[pyclass(name = "BasisRepresentation", module = "ezbasis", frozen)]
pub struct PyBasisRepresentation {
    inner: relations::BasisRepresentation,
}

#[pymethods]
impl PyBasisRepresentation {
    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn target(&self) -> String {
        self.inner.target().to_string()
    }

    /// `gamma[k]` is the coefficient of `ζ(−2k, s+2k)`.
    #[getter]
    fn gamma<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.inner.gamma)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    fn latex(&self) -> String {
        emit::representation_latex(&self.inner)
    }

    fn __eq__(&self, other: &PyBasisRepresentation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        emit::representation_text(&self.inner)
    }
}

#[pyfunction]
fn build_matrix_a(n: usize) -> PyResult<PyMatrix> {
    coeffs::build_matrix_a(n).map(|inner| PyMatrix { inner }).map_err(py_err)
}

/// `(A1, A2)` for the given `N`.
#[pyfunction]
fn split_a1_a2(n: usize) -> PyResult<(PyMatrix, PyMatrix)> {
    let a = coeffs::build_matrix_a(n).map_err(py_err)?;
    let (a1, a2) = coeffs::split_a1_a2(&a).map_err(py_err)?;
    Ok((PyMatrix { inner: a1 }, PyMatrix { inner: a2 }))
}

#[pyfunction]
fn matrix_from_rows(rows: Vec<Vec<String>>) -> PyResult<PyMatrix> {
    let parsed = rows
        .into_iter()
        .map(|r| r.iter().map(|x| x.parse::<Rational>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    CoeffMatrix::from_rows(parsed).map(|inner| PyMatrix { inner }).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (m, method = "matrix"))]
fn basis_representation(m: usize, method: &str) -> PyResult<PyBasisRepresentation> {
    let inner = match method {
        "matrix" => relations::basis_representation(m),
        "residues" => relations::residue_system_representation(m).map_err(py_err)?,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    Ok(PyBasisRepresentation { inner })
}

/// Slot-form relations: entry `c` multiplies `ζ(−c, s+c)` (slot 0 is `ζ(0,s)/2`).
#[pyfunction]
fn relation_family<'py>(py: Python<'py>, n: usize) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    relations::relation_family(n).map_err(py_err)?.iter().map(|r| fractions(py, &r.coeffs)).collect()
}

#[pyfunction]
fn dimension(n: usize) -> usize {
    relations::dimension(n)
}

/// `[(location, residue), …]` for `ζ(−n, s+n)`.
#[pyfunction]
fn pole_table<'py>(py: Python<'py>, n: usize) -> PyResult<Vec<(i64, Bound<'py, PyAny>)>> {
    analytic::pole_table(n).records.iter().map(|r| Ok((r.location, fraction(py, &r.residue)?))).collect()
}

/// `q` with `ζ(−c, s+c) = Σ_j q[j] ζ(s+j−1)`.
#[pyfunction]
fn zeta_shift_expansion<'py>(py: Python<'py>, c: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, &analytic::zeta_shift_expansion(c).q)
}

#[pyfunction]
fn bernoulli<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exactnum::bernoulli(n))
}

#[pyfunction]
fn zeta_neg<'py>(py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exactnum::zeta_neg(k))
}

/// Runs the exact relation collapse for `N` and returns `(passed, summary)`.
#[pyfunction]
fn verify_relations_exact(n: usize) -> PyResult<(bool, String)> {
    let report = analytic::verify_relations_exact(n).map_err(py_err)?;
    Ok((report.passed(), report.to_string()))
}

/// `(value, tail_bound)` for `ζ(−c, s+c)` summed up to the cutoff.
#[pyfunction]
#[pyo3(signature = (c, s, cutoff = 100_000))]
fn eval_ez_double(c: usize, s: Complex64, cutoff: u64) -> PyResult<(Complex64, f64)> {
    let r = numeval::eval_ez_double(c, s, cutoff).map_err(py_err)?;
    Ok((r.value, r.tail_bound))
}

/// `(value, tail_bound)` for `T(a, a; s)` summed up to the cutoff.
#[pyfunction]
#[pyo3(signature = (a, s, cutoff = 100_000))]
fn eval_tornheim(a: usize, s: Complex64, cutoff: u64) -> PyResult<(Complex64, f64)> {
    let r = numeval::eval_tornheim(a, s, cutoff).map_err(py_err)?;
    Ok((r.value, r.tail_bound))
}

#[pyfunction]
#[pyo3(signature = (n, s, cutoff = 100_000, tol = 1e-6))]
fn numeric_verify<'py>(py: Python<'py>, n: usize, s: Complex64, cutoff: u64, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let report = py.detach(|| numeval::numeric_verify(n, s, cutoff, tol)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", report.passed())?;
    d.set_item("max_residual", report.max_residual)?;
    d.set_item("bound", report.bound)?;
    d.set_item("lines", report.lines.iter().map(|l| (l.label.clone(), l.residual)).collect::<Vec<_>>())?;
    Ok(d)
}

#[pymodule(name = "ezbasis")]
fn ezbasis_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyBasisRepresentation>()?;
    m.add_function(wrap_pyfunction!(build_matrix_a, m)?)?;
    m.add_function(wrap_pyfunction!(split_a1_a2, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_from_rows, m)?)?;
    m.add_function(wrap_pyfunction!(basis_representation, m)?)?;
    m.add_function(wrap_pyfunction!(relation_family, m)?)?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(pole_table, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_shift_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_neg, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations_exact, m)?)?;
    m.add_function(wrap_pyfunction!(eval_ez_double, m)?)?;
    m.add_function(wrap_pyfunction!(eval_tornheim, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_verify, m)?)?;
    Ok(())
}
