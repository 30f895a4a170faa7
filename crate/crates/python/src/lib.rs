//! Python bindings: JSON germ in, JSON report out.

use std::time::Duration;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use icis_core::report::{run_report, run_validate, GermInput, ReportOptions, SCHEMA_VERSION};
use icis_core::{CoefficientField, Error, ErrorClass};

pyo3::create_exception!(icis, ResourceError, PyRuntimeError, "A resource budget was exhausted.");

fn py_err(e: Error) -> PyErr {
    match e.class() {
        ErrorClass::Validation => PyValueError::new_err(e.to_string()),
        ErrorClass::Resource => ResourceError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn options(
    char: Option<u32>,
    max_degree: Option<u32>,
    timeout: Option<f64>,
    hs_budget: u32,
) -> PyResult<ReportOptions> {
    let mut opts = ReportOptions::default();
    if let Some(p) = char {
        opts.field = CoefficientField::prime(p).map_err(py_err)?;
    }
    if let Some(d) = max_degree {
        opts.budget.max_degree = d;
    }
    opts.timeout = timeout.map(Duration::from_secs_f64);
    opts.hs_budget = hs_budget;
    Ok(opts)
}

/// Full invariant report for a germ given as JSON; returns JSON.
#[pyfunction]
#[pyo3(signature = (germ, *, char=None, max_degree=None, timeout=None, hs_budget=12))]
fn report(
    py: Python<'_>,
    germ: &str,
    char: Option<u32>,
    max_degree: Option<u32>,
    timeout: Option<f64>,
    hs_budget: u32,
) -> PyResult<String> {
    let input = GermInput::from_json(germ).map_err(py_err)?;
    let opts = options(char, max_degree, timeout, hs_budget)?;
    let r = py.detach(|| run_report(&input, &opts)).map_err(py_err)?;
    Ok(r.to_json())
}

/// Validates a germ; returns its Tjurina number.
#[pyfunction]
fn validate(py: Python<'_>, germ: &str) -> PyResult<u64> {
    let input = GermInput::from_json(germ).map_err(py_err)?;
    let opts = ReportOptions::default();
    let v = py.detach(|| run_validate(&input, &opts)).map_err(py_err)?;
    Ok(v.tau)
}

#[pymodule]
fn icis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SCHEMA_VERSION", SCHEMA_VERSION)?;
    Ok(())
}
