//! Python bindings. Rationals cross the boundary as `"p/q"` strings and
//! partitions as lists of parts.

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use perimac::cli::{self, CheckConfig, Profile};
use perimac::contour::{self, Backend};
use perimac::measures::{self, JointTable, TruncationSpec};
use perimac::scalar::{self, Scalar};
use perimac::skew::Family;
use perimac::{sixvertex, symfunc, Partition};

fn err(e: perimac::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Scalar> {
    scalar::parse(s).ok_or_else(|| PyValueError::new_err(format!("not a rational: `{s}`")))
}

fn rationals(v: &[String]) -> PyResult<Vec<Scalar>> {
    v.iter().map(|s| rational(s)).collect()
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

/// Parameters `(q, t, u, a, b)` of a periodic measure.
#[pyclass(name = "MeasureSpec", frozen)]
struct PyMeasureSpec {
    inner: measures::MeasureSpec,
}

#[pymethods]
impl PyMeasureSpec {
    #[new]
    fn new(q: &str, t: &str, u: &str, a: Vec<String>, b: Vec<String>) -> PyResult<Self> {
        let inner = measures::MeasureSpec {
            q: rational(q)?,
            t: rational(t)?,
            u: rational(u)?,
            a: rationals(&a)?,
            b: rationals(&b)?,
        };
        inner.validate().map_err(err)?;
        Ok(PyMeasureSpec { inner })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n_letters()
    }

    fn __repr__(&self) -> String {
        let s = &self.inner;
        format!(
            "MeasureSpec(q={}, t={}, u={}, a={}, b={})",
            s.q,
            s.t,
            s.u,
            scalar::format_list(&s.a),
            scalar::format_list(&s.b)
        )
    }
}

#[pyfunction]
fn partitions(max_size: usize, max_part: usize, max_length: usize) -> Vec<Vec<usize>> {
    perimac::partition::enumerate_partitions(max_size, max_part, max_length)
        .into_iter()
        .map(|p| p.parts().to_vec())
        .collect()
}

/// `P_λ(x; q, t)` as an exact rational string.
#[pyfunction]
fn macdonald_p(lam: Vec<usize>, q: &str, t: &str, x: Vec<String>) -> PyResult<String> {
    let lam = partition(lam)?;
    let f = symfunc::macdonald_p(&lam, &rational(q)?, &rational(t)?, lam.size()).map_err(err)?;
    Ok(scalar::format(&f.evaluate(&rationals(&x)?)))
}

/// Skew polynomial of `family` (e.g. `"hl_p"`, `"qw_q"`, `"schur"`) at `x`.
#[pyfunction]
fn skew(
    family: &str,
    lam: Vec<usize>,
    mu: Vec<usize>,
    x: Vec<String>,
    param: &str,
) -> PyResult<String> {
    let fam = Family::parse(family)
        .ok_or_else(|| PyValueError::new_err(format!("unknown family `{family}`")))?;
    let v = perimac::skew::skew_multi(
        fam,
        &partition(lam)?,
        &partition(mu)?,
        &rationals(&x)?,
        &rational(param)?,
    )
    .map_err(err)?;
    Ok(scalar::format(&v))
}

/// `(value, increment)` of the shifted q-Whittaker CDF at cap `k`.
#[pyfunction]
fn pqw_shifted_cdf(
    py: Python<'_>,
    spec: &PyMeasureSpec,
    n: usize,
    k: usize,
) -> PyResult<(f64, f64)> {
    let s = spec.inner.clone();
    let v = py
        .detach(move || measures::pqw_shifted_cdf(&s, n, &TruncationSpec::new(k, 0.0)))
        .map_err(err)?;
    Ok((v.to_f64(), scalar::to_f64(&v.increment)))
}

/// `(value, doubling delta)` of the torus integral for the same CDF.
#[pyfunction]
#[pyo3(signature = (spec, n, nodes = 64))]
fn qtsym_rhs(py: Python<'_>, spec: &PyMeasureSpec, n: usize, nodes: usize) -> PyResult<(f64, f64)> {
    let s = spec.inner.clone();
    let v = py
        .detach(move || contour::qtsym_rhs(n, &s, Backend::quadrature(nodes)))
        .map_err(err)?;
    Ok((v.value, v.error))
}

type Row = (usize, String, String, f64);

fn rows<'a>(
    m: usize,
    n: usize,
    entries: impl IntoIterator<Item = (&'a measures::JointKey, &'a Scalar)>,
) -> Vec<Row> {
    entries
        .into_iter()
        .map(|(k, v)| {
            (
                k.base_length,
                JointTable::bits(k.up, m),
                JointTable::bits(k.down, n),
                scalar::to_f64(v),
            )
        })
        .collect()
}

/// Periodic Hall-Littlewood joint law as `(W, S1, S2, probability)` rows.
#[pyfunction]
fn phl_joint(py: Python<'_>, spec: &PyMeasureSpec, k: usize) -> PyResult<Vec<Row>> {
    let s = spec.inner.clone();
    let t = py
        .detach(move || measures::phl_joint(&s, &TruncationSpec::new(k, 0.0)))
        .map_err(err)?;
    Ok(rows(t.m, t.n, &t.entries))
}

/// Quasi-periodic six vertex joint law; `shifted` adds the geometric shift to `W`.
#[pyfunction]
#[pyo3(signature = (spec, length, cap, shifted = false))]
fn quasi_joint(
    py: Python<'_>,
    spec: &PyMeasureSpec,
    length: usize,
    cap: usize,
    shifted: bool,
) -> PyResult<Vec<Row>> {
    let s = spec.inner.clone();
    let j = py
        .detach(move || {
            let j = sixvertex::quasi_joint(length, cap, &s)?;
            if shifted {
                sixvertex::shift_by_geometric(&j, &s.u)
            } else {
                Ok(j)
            }
        })
        .map_err(err)?;
    Ok(rows(j.m, j.n, &j.entries))
}

/// `(u, total variation to the stationary law)` for each `u`.
#[pyfunction]
fn stationary_study(
    py: Python<'_>,
    spec: &PyMeasureSpec,
    us: Vec<String>,
    length: usize,
) -> PyResult<Vec<(f64, f64)>> {
    let (s, us) = (spec.inner.clone(), rationals(&us)?);
    py.detach(move || sixvertex::stationary_study(&s, &us, length))
        .map_err(err)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    cli::CHECK_IDS.to_vec()
}

/// Runs an acceptance check and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (check_id, params = None))]
fn run_check(
    py: Python<'_>,
    check_id: &str,
    params: Option<HashMap<String, String>>,
) -> PyResult<String> {
    let id = check_id.to_string();
    py.detach(move || {
        let mut cfg = CheckConfig::new(&id, Profile::Desk);
        for (k, v) in params.unwrap_or_default() {
            cfg.set(&k, &v);
        }
        cli::run_check(&cfg).map(|mut r| {
            r.runtime_ms = None;
            r.to_json()
        })
    })
    .map_err(err)
}

#[pymodule]
#[pyo3(name = "perimac")]
fn perimac_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMeasureSpec>()?;
    m.add_function(wrap_pyfunction!(partitions, m)?)?;
    m.add_function(wrap_pyfunction!(macdonald_p, m)?)?;
    m.add_function(wrap_pyfunction!(skew, m)?)?;
    m.add_function(wrap_pyfunction!(pqw_shifted_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(qtsym_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(phl_joint, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_joint, m)?)?;
    m.add_function(wrap_pyfunction!(stationary_study, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
