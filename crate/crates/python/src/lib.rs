//! Python bindings. Every function returns plain dicts, lists and numbers
//! decoded from the same JSON documents the command-line tool prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use mertensff::curve::{EnsembleSpec, HyperellipticCurve};
use mertensff::ensemble::{run_scan, ScanConfig};
use mertensff::finite_field::make_field_split;
use mertensff::li::{li_report, relation_search, RationalAngles, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS};
use mertensff::mertens::{b_elliptic, elliptic_classify, prime_power, MertensReport};
use mertensff::output::{f64_value, int_value, SCHEMA_VERSION};
use mertensff::rmt::{closed_form_prob_g1, prob_phi_leq, SamplerKind};
use mertensff::zeta::{mobius_coefficients, ZetaData};
use mertensff::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) | Error::Indeterminate(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn curve(p: u32, f: &[u64], m: u32, n: u32) -> Result<HyperellipticCurve, Error> {
    let field = make_field_split(p, m, n)?;
    HyperellipticCurve::from_indices(&field, f)
}

/// Point counts, P(u), inverse zeros and angles of y² = f(x) over F_{p^(mn)}.
#[pyfunction]
#[pyo3(signature = (p, f, m = 1, n = 1, precision = 128))]
fn zeta(py: Python<'_>, p: u32, f: Vec<u64>, m: u32, n: u32, precision: u32) -> PyResult<Py<PyAny>> {
    let c = curve(p, &f, m, n).map_err(py_err)?;
    let z = ZetaData::from_curve(&c, precision).map_err(py_err)?;
    let mut v = z.to_json();
    v["schema"] = json!(SCHEMA_VERSION);
    v["curve"] = json!(c.label());
    to_py(py, &v)
}

/// Mertens report (φ, B, bounds, LI status, β-verdicts) plus M(X) for X ≤ xmax.
#[pyfunction]
#[pyo3(signature = (p, f, m = 1, n = 1, xmax = 50, betas = vec![1.0, std::f64::consts::SQRT_2]))]
fn mertens(py: Python<'_>, p: u32, f: Vec<u64>, m: u32, n: u32, xmax: usize, betas: Vec<f64>) -> PyResult<Py<PyAny>> {
    let c = curve(p, &f, m, n).map_err(py_err)?;
    let z = ZetaData::from_curve(&c, 128).map_err(py_err)?;
    let li = li_report(&z, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS).map_err(py_err)?;
    let report = MertensReport::new(&z, li, c.label()).map_err(py_err)?;
    let series = mobius_coefficients(z.p(), z.q(), xmax).map_err(py_err)?;
    let v = json!({
        "schema": SCHEMA_VERSION,
        "report": report.to_json(&betas),
        "M": series.partial_sums().iter().map(int_value).collect::<Vec<_>>(),
    });
    to_py(py, &v)
}

/// Integer-relation search on planted angles θ_i = (a_i/b_i)·π.
#[pyfunction]
#[pyo3(signature = (angles, height = DEFAULT_HEIGHT, precision = DEFAULT_PRECISION_BITS))]
fn li_angles(py: Python<'_>, angles: Vec<(i64, i64)>, height: u64, precision: u32) -> PyResult<Py<PyAny>> {
    let r = relation_search(&RationalAngles(angles), height, precision).map_err(py_err)?;
    to_py(py, &r.to_json())
}

/// Monte Carlo estimate of Prob(φ(U) ≤ β) over USp(2g).
#[pyfunction]
#[pyo3(signature = (g, beta, samples = 100_000, seed = 0, method = None))]
fn rmt_probability(
    py: Python<'_>,
    g: usize,
    beta: f64,
    samples: usize,
    seed: u64,
    method: Option<&str>,
) -> PyResult<Py<PyAny>> {
    let method = match method {
        Some(s) => SamplerKind::parse(s).map_err(py_err)?,
        None if g == 1 => SamplerKind::ExactG1,
        None if g <= 3 => SamplerKind::Rejection,
        None => SamplerKind::Mcmc,
    };
    let est = prob_phi_leq(g, beta, samples, seed, method).map_err(py_err)?;
    let mut v = est.to_json();
    if g == 1 {
        v["closed_form"] = f64_value(closed_form_prob_g1(beta));
    }
    to_py(py, &v)
}

/// Verdict and B for an elliptic curve with trace a over F_q.
#[pyfunction]
fn elliptic(py: Python<'_>, q: u64, a: i64) -> PyResult<Py<PyAny>> {
    let (p, m) = prime_power(q).map_err(py_err)?;
    let verdict = elliptic_classify(q, p, m, a).map_err(py_err)?;
    let v = json!({
        "schema": SCHEMA_VERSION,
        "q": q,
        "a": a,
        "verdict": verdict.name(),
        "B_LI": b_elliptic(q, a).map_or(Value::Null, f64_value),
    });
    to_py(py, &v)
}

/// Summary of the exhaustive genus-g family over F_{p^(mn)}.
#[pyfunction]
#[pyo3(signature = (p, g = 1, m = 1, n = 1, betas = vec![1.0, std::f64::consts::SQRT_2]))]
fn ensemble(py: Python<'_>, p: u32, g: u32, m: u32, n: u32, betas: Vec<f64>) -> PyResult<Py<PyAny>> {
    let field = make_field_split(p, m, n).map_err(py_err)?;
    let cfg = ScanConfig {
        betas,
        ..ScanConfig::default()
    };
    // release the interpreter while the scan runs on worker threads
    let res = py
        .detach(|| run_scan(&EnsembleSpec::exhaustive(&field, g), &cfg))
        .map_err(py_err)?;
    to_py(py, &res.summary_json())
}

#[pymodule]
#[pyo3(name = "mertensff")]
fn mertensff_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA", SCHEMA_VERSION)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(mertens, m)?)?;
    m.add_function(wrap_pyfunction!(li_angles, m)?)?;
    m.add_function(wrap_pyfunction!(rmt_probability, m)?)?;
    m.add_function(wrap_pyfunction!(elliptic, m)?)?;
    m.add_function(wrap_pyfunction!(ensemble, m)?)?;
    Ok(())
}
