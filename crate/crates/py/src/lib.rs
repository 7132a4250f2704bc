//! Python bindings.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use mlattice::classify::{classification_report, Class};
use mlattice::constructions::{default_corpus, parse_lattice, serialize, Corpus, LatticeSource};
use mlattice::dot::to_dot;
use mlattice::harness::{self, hunt as run_hunt, Goal, HarnessConfig, HarnessCtx};
use mlattice::maps::{make_delta, make_phi, DeltaKind, PhiKind};
use mlattice::{derived, ElementId, Expansion, PhiMap};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite multiplicative lattice. Elements are addressed by label.
#[pyclass(name = "Lattice", module = "mlattice_py", frozen)]
struct PyLattice {
    inner: Arc<mlattice::Lattice>,
}

impl PyLattice {
    fn el(&self, label: &str) -> PyResult<ElementId> {
        self.inner.element(label).ok_or_else(|| PyKeyError::new_err(format!("no element `{label}`")))
    }

    fn label(&self, e: ElementId) -> String {
        self.inner.label(e).to_string()
    }

    fn delta(&self, spec: &str) -> PyResult<Expansion> {
        let kind = DeltaKind::builtin(spec).ok_or_else(|| value_err(format!("unknown delta `{spec}`")))?;
        make_delta(&self.inner, kind).map_err(value_err)
    }

    fn phi(&self, spec: &str) -> PyResult<PhiMap> {
        let kind = PhiKind::builtin(spec).ok_or_else(|| value_err(format!("unknown phi `{spec}`")))?;
        make_phi(&self.inner, kind).map_err(value_err)
    }
}

#[pymethods]
impl PyLattice {
    /// Load from a source string: `zn:24`, `chain:3`, `boolean:2` or `file:<path>`.
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        let source: LatticeSource = source.parse().map_err(value_err)?;
        Ok(PyLattice { inner: Arc::new(source.load().map_err(value_err)?) })
    }

    #[staticmethod]
    fn zn(n: u64) -> PyResult<Self> {
        Self::new(&format!("zn:{n}"))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyLattice { inner: Arc::new(parse_lattice(text).map_err(value_err)?) })
    }

    fn to_text(&self) -> String {
        serialize(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn bottom(&self) -> String {
        self.label(self.inner.bottom())
    }

    #[getter]
    fn top(&self) -> String {
        self.label(self.inner.top())
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Lattice({}, {} elements)", self.inner.name(), self.inner.size())
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.leq(self.el(a)?, self.el(b)?))
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.join(self.el(a)?, self.el(b)?)))
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.meet(self.el(a)?, self.el(b)?)))
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(self.inner.mul(self.el(a)?, self.el(b)?)))
    }

    fn residual(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.label(derived::residual(&self.inner, self.el(a)?, self.el(b)?)))
    }

    fn radical(&self, a: &str) -> PyResult<String> {
        Ok(self.label(derived::radical(&self.inner, self.el(a)?)))
    }

    /// `{"lattice": str, "ok": bool, "failures": [{"axiom": str, "witness": [str]}]}`
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = self.inner.validate();
        let failures: Vec<_> = report
            .failures
            .iter()
            .map(|f| {
                serde_json::json!({
                    "axiom": f.axiom.name(),
                    "witness": f.witness.iter().map(|&e| self.label(e)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = serde_json::json!({ "lattice": self.inner.name(), "ok": report.ok, "failures": failures });
        json_to_py(py, &doc.to_string())
    }

    /// Whether `label` is φ-δ-primary, with the first violating pair when not.
    #[pyo3(signature = (label, delta = "d1", phi = "2"))]
    fn phi_delta_primary(&self, label: &str, delta: &str, phi: &str) -> PyResult<(bool, Option<(String, String)>)> {
        let (delta, phi) = (self.delta(delta)?, self.phi(phi)?);
        let class = Class::PhiDeltaPrimary(&delta, &phi);
        let witness = class.witness(&self.inner, self.el(label)?).map_err(value_err)?;
        Ok((witness.is_none(), witness.map(|(a, b)| (self.label(a), self.label(b)))))
    }

    /// The classification report of every proper element, as a dict.
    #[pyo3(signature = (delta = "d1", phi = "2"))]
    fn classify<'py>(&self, py: Python<'py>, delta: &str, phi: &str) -> PyResult<Bound<'py, PyAny>> {
        let report = classification_report(&self.inner, &self.delta(delta)?, &self.phi(phi)?).map_err(value_err)?;
        json_to_py(py, &report.to_json())
    }

    #[pyo3(signature = (delta = "d1", phi = "2"))]
    fn classify_table(&self, delta: &str, phi: &str) -> PyResult<String> {
        let report = classification_report(&self.inner, &self.delta(delta)?, &self.phi(phi)?).map_err(value_err)?;
        Ok(report.to_table())
    }

    fn export_dot(&self) -> String {
        to_dot(&self.inner)
    }
}

fn corpus_from(sources: Option<Vec<String>>) -> PyResult<Corpus> {
    let Some(sources) = sources else {
        return Ok(default_corpus());
    };
    let mut corpus = Corpus::new();
    for s in sources {
        let lattice = s.parse::<LatticeSource>().and_then(|src| src.load()).map_err(value_err)?;
        corpus.push(lattice, "python").map_err(value_err)?;
    }
    Ok(corpus)
}

/// Run the theorem properties. `corpus` is a list of source strings, the
/// default corpus when omitted. Returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (corpus = None, properties = None, witness_cap = harness::DEFAULT_WITNESS_CAP))]
fn verify<'py>(
    py: Python<'py>,
    corpus: Option<Vec<String>>,
    properties: Option<Vec<String>>,
    witness_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let corpus = corpus_from(corpus)?;
    let config = HarnessConfig { witness_cap, ..HarnessConfig::default() };
    let ctx = HarnessCtx::new(&corpus, config).map_err(value_err)?;
    let report = match properties {
        None => harness::run_all_ctx(&ctx),
        Some(ids) => {
            let props = ids.iter().map(|id| harness::property(id)).collect::<Result<Vec<_>, _>>().map_err(value_err)?;
            harness::Report {
                corpus: ctx.lattice_names(),
                results: props.iter().map(|p| harness::run_property_ctx(p, &ctx)).collect(),
            }
        }
    };
    json_to_py(py, &report.to_json())
}

/// Elements satisfying every predicate in `have` but not `lack`.
#[pyfunction]
#[pyo3(signature = (have, lack, corpus = None))]
fn hunt<'py>(
    py: Python<'py>,
    have: Vec<String>,
    lack: &str,
    corpus: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let goal = Goal::parse(&have, lack).map_err(value_err)?;
    let found = run_hunt(&goal, &corpus_from(corpus)?);
    json_to_py(py, &serde_json::to_string(&found).map_err(value_err)?)
}

#[pymodule]
fn mlattice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(hunt, m)?)?;
    Ok(())
}
