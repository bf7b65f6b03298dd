//! Python bindings: `import dholt_py`.

use dholt_core::checker::generate_tccs;
use dholt_core::corpus::build_corpus;
use dholt_core::erasure::erase_problem;
use dholt_core::problem::Problem;
use dholt_core::prover::{self, ProveConfig, TypecheckMode};
use dholt_core::tableau::{validate_trace_text, RuleMode, SearchConfig};
use dholt_core::tptp::{parse_problem, problem_to_string, term_to_string};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::time::Duration;

fn parse(text: &str, name: &str) -> PyResult<Problem> {
    parse_problem(text, name).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn typecheck_mode(s: &str) -> PyResult<TypecheckMode> {
    match s {
        "skeleton" => Ok(TypecheckMode::Skeleton),
        "exact" => Ok(TypecheckMode::Exact),
        "only" => Ok(TypecheckMode::ExactOnly),
        _ => Err(PyValueError::new_err(format!("unknown typecheck mode {:?}", s))),
    }
}

fn budget(secs: f64) -> PyResult<Duration> {
    Duration::try_from_secs_f64(secs)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| PyValueError::new_err("timeout must be positive"))
}

/// Prove a THF problem. Returns a dict with status, steps, elapsed,
/// message, trace (text or None) and per-TCC results.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (text, name="problem", rules="native-only", timeout=60.0, typecheck="skeleton", subterms=true, tcc_timeout=None))]
fn prove<'py>(
    py: Python<'py>,
    text: &str,
    name: &str,
    rules: &str,
    timeout: f64,
    typecheck: &str,
    subterms: bool,
    tcc_timeout: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let problem = parse(text, name)?;
    let mode = RuleMode::from_name(rules).ok_or_else(|| PyValueError::new_err(format!("unknown rule set {:?}", rules)))?;
    let cfg = ProveConfig {
        search: SearchConfig { mode, timeout: budget(timeout)?, subterms },
        typecheck: typecheck_mode(typecheck)?,
        tcc_timeout: tcc_timeout.map(budget).transpose()?,
    };
    let r = py.detach(|| prover::prove(&problem, &cfg));

    let tccs = r
        .tccs
        .iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("formula", term_to_string(&o.tcc.formula))?;
            d.set_item("origin", &o.tcc.origin)?;
            d.set_item("status", o.status.to_string())?;
            d.set_item("elapsed", o.elapsed.as_secs_f64())?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let d = PyDict::new(py);
    d.set_item("status", r.status.to_string())?;
    d.set_item("steps", r.steps)?;
    d.set_item("elapsed", r.elapsed.as_secs_f64())?;
    d.set_item("message", r.message)?;
    d.set_item("trace", r.trace.map(|t| t.to_text()))?;
    d.set_item("tccs", tccs)?;
    Ok(d)
}

/// The type-correctness conditions of a problem, one THF formula each.
#[pyfunction]
#[pyo3(signature = (text, name="problem"))]
fn tccs(text: &str, name: &str) -> PyResult<Vec<String>> {
    let p = parse(text, name)?;
    let ts = generate_tccs(&p).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(ts.iter().map(|t| term_to_string(&t.formula)).collect())
}

/// The erased HOL problem as THF text.
#[pyfunction]
#[pyo3(signature = (text, name="problem"))]
fn translate(text: &str, name: &str) -> PyResult<String> {
    Ok(problem_to_string(&erase_problem(&parse(text, name)?)))
}

/// Replay a trace against a problem; raises ValueError when it is rejected.
#[pyfunction]
#[pyo3(signature = (text, trace, name="problem"))]
fn validate(text: &str, trace: &str, name: &str) -> PyResult<()> {
    let p = parse(text, name)?;
    validate_trace_text(&p, trace).map(|_| ()).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Built-in corpus as (name, group, expected status, THF text) tuples.
#[pyfunction]
fn corpus() -> Vec<(String, String, String, String)> {
    build_corpus()
        .into_iter()
        .map(|e| (e.name, e.group.name().to_string(), e.expected.to_string(), e.text))
        .collect()
}

#[pymodule]
fn dholt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(tccs, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
