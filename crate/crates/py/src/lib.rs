//! Python bindings. Reports come back as plain dicts; failures raise
//! `ValueError`, except exhausted search budgets which raise `BudgetExceededError`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use spike_lab::repr::DEFAULT_NODE_BUDGET;
use spike_lab::{Error, IndexSet};

create_exception!(spike_lab, BudgetExceededError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn index_set(idx: Vec<usize>) -> PyResult<IndexSet> {
    if idx.iter().any(|&i| !(1..=32).contains(&i)) {
        return Err(PyValueError::new_err("indices are 1-based and at most 32"));
    }
    Ok(IndexSet::from_indices(idx))
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A vector of nonzero residues mod a prime.
#[pyclass(frozen, skip_from_py_object, module = "spike_lab")]
#[derive(Clone)]
pub struct Diagonal {
    inner: spike_lab::Diagonal,
}

impl From<spike_lab::Diagonal> for Diagonal {
    fn from(inner: spike_lab::Diagonal) -> Self {
        Diagonal { inner }
    }
}

#[pymethods]
impl Diagonal {
    #[new]
    fn new(p: u64, x: Vec<i64>) -> PyResult<Self> {
        let m = spike_lab::make_field(p).map_err(py_err)?;
        Ok(spike_lab::Diagonal::from_integers(m, &x).map_err(py_err)?.into())
    }

    /// Parses `p=<prime>;x=<v1>,...,<vn>`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(text.parse::<spike_lab::Diagonal>().map_err(py_err)?.into())
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn values(&self) -> Vec<u32> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn inverses(&self) -> Vec<u32> {
        self.inner.inverses()
    }

    #[getter]
    fn balanced(&self) -> Vec<i64> {
        self.inner.balanced()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Diagonal({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        other.cast::<Diagonal>().is_ok_and(|o| o.get().inner == self.inner)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// Signature members as sorted index lists, in lexicographic order.
#[pyfunction]
fn signature(x: &Diagonal) -> PyResult<Vec<Vec<usize>>> {
    let sig = spike_lab::signature(&x.inner).map_err(py_err)?;
    let mut members = sig.members();
    members.sort_by(|a, b| a.lex_cmp(*b));
    Ok(members.into_iter().map(|s| s.iter().collect()).collect())
}

#[pyfunction]
fn signature_hex(x: &Diagonal) -> PyResult<String> {
    Ok(spike_lab::signature(&x.inner).map_err(py_err)?.to_hex())
}

#[pyfunction]
fn is_dependent_transversal(x: &Diagonal, k: Vec<usize>) -> PyResult<bool> {
    Ok(spike_lab::is_dependent_transversal(&x.inner, index_set(k)?))
}

/// Element labels such as `["f1", "e2", "e3"]`.
#[pyfunction]
fn circuit_hyperplane(x: &Diagonal, i: Vec<usize>) -> PyResult<Vec<String>> {
    let set = spike_lab::circuit_hyperplane(&x.inner, index_set(i)?).map_err(py_err)?;
    Ok(set.into_iter().map(|e| e.to_string()).collect())
}

#[pyfunction]
fn check_axioms(x: &Diagonal) -> PyResult<bool> {
    Ok(spike_lab::build_rep(&x.inner).map_err(py_err)?.check_axioms())
}

#[pyfunction]
fn swap(x: &Diagonal, s: Vec<usize>) -> PyResult<Diagonal> {
    Ok(spike_lab::swap(&x.inner, index_set(s)?).map_err(py_err)?.into())
}

#[pyfunction]
fn normalize(x: &Diagonal) -> PyResult<Diagonal> {
    Ok(spike_lab::normalize(&x.inner).map_err(py_err)?.into())
}

#[pyfunction]
fn canonical_form(x: &Diagonal) -> PyResult<Diagonal> {
    Ok(spike_lab::canonical_form(&x.inner).map_err(py_err)?.into())
}

#[pyfunction]
fn weakly_equivalent(x: &Diagonal, y: &Diagonal) -> PyResult<bool> {
    spike_lab::weakly_equivalent(&x.inner, &y.inner).map_err(py_err)
}

#[pyfunction]
fn orbit_size(x: &Diagonal) -> PyResult<u64> {
    spike_lab::spike::orbit_size(&x.inner).map_err(py_err)
}

/// `(canonical diagonal, orbit size)` per weak-equivalence class.
#[pyfunction]
fn enumerate_spikes(p: u64, n: usize) -> PyResult<Vec<(Diagonal, u64)>> {
    let classes = spike_lab::enumerate_spikes(p, n).map_err(py_err)?;
    Ok(classes.into_iter().map(|c| (c.diagonal.into(), c.orbit_size)).collect())
}

/// Determinant of `J + diag(x)` over GF(p).
#[pyfunction]
fn spike_det(p: u64, x: Vec<i64>) -> PyResult<u32> {
    let m = spike_lab::make_field(p).map_err(py_err)?;
    let elems: Vec<_> = x.iter().map(|&v| m.elem(v)).collect();
    Ok(spike_lab::spike_det(&elems).map_err(py_err)?.value())
}

/// Lexicographically least subset (1-based) of nonzero `a` summing to nonzero `k`, or `None`.
#[pyfunction]
fn subset_with_sum(p: u64, a: Vec<i64>, k: i64) -> PyResult<Option<Vec<usize>>> {
    let m = spike_lab::make_field(p).map_err(py_err)?;
    let elems: Vec<_> = a.iter().map(|&v| m.elem(v)).collect();
    let inst = spike_lab::ZeroSumInstance::with_target(&elems, m.elem(k)).map_err(py_err)?;
    match spike_lab::subset_with_sum(&inst) {
        Ok(s) => Ok(Some(s.iter().collect())),
        Err(Error::NoWitness) => Ok(None),
        Err(e) => Err(py_err(e)),
    }
}

#[pyfunction]
fn zero_sum_subset(p: u64, a: Vec<i64>) -> PyResult<Option<Vec<usize>>> {
    let m = spike_lab::make_field(p).map_err(py_err)?;
    let elems: Vec<_> = a.iter().map(|&v| m.elem(v)).collect();
    let inst = spike_lab::ZeroSumInstance::zero_target(m, &elems).map_err(py_err)?;
    match spike_lab::zero_sum_subset(&inst) {
        Ok(s) => Ok(Some(s.iter().collect())),
        Err(Error::NoWitness) => Ok(None),
        Err(e) => Err(py_err(e)),
    }
}

#[pyfunction]
fn verify_lemma_2_1<'py>(py: Python<'py>, p: u64, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| spike_lab::verify_lemma_2_1(p, n)).map_err(py_err)?;
    json_to_py(py, &r)
}

#[pyfunction]
fn verify_lemma_2_2<'py>(py: Python<'py>, p: u64, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| spike_lab::verify_lemma_2_2(p, n)).map_err(py_err)?;
    json_to_py(py, &r)
}

#[pyfunction]
fn uniqueness_audit<'py>(py: Python<'py>, p: u64, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| spike_lab::uniqueness_audit(p, n)).map_err(py_err)?;
    json_to_py(py, &r)
}

/// A diagonal over GF(q) with the same labelled signature as `x`, or `None`.
#[pyfunction]
#[pyo3(signature = (x, q, budget = DEFAULT_NODE_BUDGET))]
fn find_rep_over(py: Python<'_>, x: &Diagonal, q: u64, budget: u64) -> PyResult<Option<Diagonal>> {
    let sig = spike_lab::signature(&x.inner).map_err(py_err)?;
    let out = py.detach(|| spike_lab::find_rep_over(&sig, q, budget)).map_err(py_err)?;
    Ok(out.witness.map(Into::into))
}

#[pyfunction]
#[pyo3(signature = (x, primes, budget = DEFAULT_NODE_BUDGET))]
fn characteristic_set<'py>(
    py: Python<'py>,
    x: &Diagonal,
    primes: Vec<u64>,
    budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| spike_lab::characteristic_set(&x.inner, &primes, budget)).map_err(py_err)?;
    json_to_py(py, &r)
}

#[pyfunction]
fn construct_prop41(p: u64) -> PyResult<Diagonal> {
    Ok(spike_lab::construct_prop41(p).map_err(py_err)?.into())
}

#[pyfunction]
fn construct_prop43(p: u64) -> PyResult<Diagonal> {
    Ok(spike_lab::construct_prop43(p).map_err(py_err)?.into())
}

#[pyfunction]
#[pyo3(signature = (p, primes = vec![2, 3, 5, 7, 11, 13], n_max = 7, budget = DEFAULT_NODE_BUDGET))]
fn estimate_l<'py>(
    py: Python<'py>,
    p: u64,
    primes: Vec<u64>,
    n_max: usize,
    budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| spike_lab::estimate_l(p, &primes, n_max, budget)).map_err(py_err)?;
    json_to_py(py, &r)
}

#[pymodule(name = "spike_lab")]
mod module {
    #[pymodule_export]
    use super::{
        canonical_form, characteristic_set, check_axioms, circuit_hyperplane, construct_prop41,
        construct_prop43, enumerate_spikes, estimate_l, find_rep_over, is_dependent_transversal,
        normalize, orbit_size, signature, signature_hex, spike_det, subset_with_sum, swap,
        uniqueness_audit, verify_lemma_2_1, verify_lemma_2_2, weakly_equivalent, zero_sum_subset,
        BudgetExceededError, Diagonal,
    };
}
