use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qlsa::atypicality::{one_step_grid_scan, table_with_charges, BConstant};
use qlsa::cli::parse_charge;
use qlsa::fock::{bracket_polynomial_check, zero_step_demo, EConvention, Pairing};
use qlsa::gl2n1::{CentralCharge, Gl2n1, PlainAtoms};
use qlsa::nc_core::{parse_expression, PlainNames};
use qlsa::pbw::{GeneratorOrder, RewriteSystem};
use qlsa::presentation::QlsPresentation;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `gl2(n/1)` with a rational central charge, or symbolic `c` when omitted.
#[pyclass(name = "Gl2n1")]
struct PyGl2n1 {
    inner: Gl2n1,
}

#[pymethods]
impl PyGl2n1 {
    #[new]
    #[pyo3(signature = (n, c=None))]
    fn new(n: usize, c: Option<&str>) -> PyResult<Self> {
        let charge = match c {
            Some(s) => parse_charge(s).map_err(err)?,
            None => CentralCharge::Symbolic,
        };
        Ok(PyGl2n1 { inner: Gl2n1::new(n, charge).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let p = self.inner.parse(expr).map_err(err)?;
        Ok(self.inner.render(&self.inner.normal_form(&p).map_err(err)?))
    }

    fn bracket(&self, a: &str, b: &str) -> PyResult<String> {
        let a = self.inner.parse(a).map_err(err)?;
        let b = self.inner.parse(b).map_err(err)?;
        Ok(self.inner.render(&self.inner.bracket(&a, &b).map_err(err)?))
    }

    fn presentation(&self) -> PyPresentation {
        PyPresentation { inner: self.inner.presentation().clone() }
    }
}

/// A presentation in the `.qls` text format.
#[pyclass(name = "Presentation")]
struct PyPresentation {
    inner: QlsPresentation,
}

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: QlsPresentation::from_text(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// `(component, abstract)` pass flags; `abstract` is `None` when `d` is symbolic.
    fn check_jacobi(&self) -> (bool, Option<bool>) {
        let comp = self.inner.check_component_jacobi().passed();
        let abs = self.inner.check_abstract_jacobi().ok().map(|r| r.passed());
        (comp, abs)
    }

    fn normal_form(&self, expr: &str) -> PyResult<String> {
        let rs = RewriteSystem::new(&self.inner, GeneratorOrder::standard(self.inner.alphabet())).map_err(err)?;
        let p = parse_expression(expr, &PlainAtoms(&self.inner)).map_err(err)?;
        Ok(rs.normal_form(&p).map_err(err)?.render(&PlainNames))
    }
}

/// `(n, r, k, c)` for every triple up to `n_max` where the zero-step condition holds.
#[pyfunction]
fn zero_step_table(n_max: usize) -> PyResult<Vec<(usize, usize, usize, String)>> {
    Ok(table_with_charges(n_max).map_err(err)?.into_iter().map(|((n, r, k), c)| (n, r, k, c.to_string())).collect())
}

/// Integer points `(r, mubar, nubar, c)` in `[lo, hi]` where `B A` vanishes.
#[pyfunction]
#[pyo3(signature = (n, lo=-10, hi=10, quoted=false))]
fn one_step_scan(n: usize, lo: i64, hi: i64, quoted: bool) -> PyResult<Vec<(usize, i64, i64, i64)>> {
    let which = if quoted { BConstant::Quoted } else { BConstant::Verified };
    Ok(one_step_grid_scan(n, lo, hi, which).map_err(err)?.into_iter().map(|w| (w.r, w.mubar, w.nubar, w.c)).collect())
}

/// Proportionality factor of the odd anticommutator on the Fock space, if any.
#[pyfunction]
fn fock_factor(n: usize) -> PyResult<Option<String>> {
    let checks = bracket_polynomial_check(n).map_err(err)?;
    Ok(checks
        .into_iter()
        .find(|c| c.convention == EConvention::Direct && c.pairing == Pairing::RowIsQbar)
        .and_then(|c| c.factor))
}

/// Eigenvalues with multiplicities of the triple operator on an occupation sector.
#[pyfunction]
fn fock_spectrum(n: usize, occupation: u32) -> PyResult<Vec<(String, usize)>> {
    Ok(zero_step_demo(n, occupation, EConvention::Direct).map_err(err)?.roots)
}

#[pymodule]
fn qlsa_py(_py: Python, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGl2n1>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(zero_step_table, m)?)?;
    m.add_function(wrap_pyfunction!(one_step_scan, m)?)?;
    m.add_function(wrap_pyfunction!(fock_factor, m)?)?;
    m.add_function(wrap_pyfunction!(fock_spectrum, m)?)?;
    Ok(())
}
