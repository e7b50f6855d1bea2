//! Python bindings. Maps and scenarios cross the boundary as wrapped Rust
//! values or as JSON; reports come back as plain dicts.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use cframe::perturbation::{self, CheckOptions, TheoremId};
use cframe::toolkit::{self, Scenario};
use cframe::{tol, AlgebraDescriptor, AlgebraElement, FrameMap, ModuleElement};

pyo3::create_exception!(cframe, CframeError, PyValueError);

fn err(e: cframe::Error) -> PyErr {
    CframeError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn theorem(id: &str) -> PyResult<TheoremId> {
    id.parse().map_err(err)
}

fn descriptor(blocks: Vec<usize>) -> PyResult<AlgebraDescriptor> {
    AlgebraDescriptor::new(blocks).map_err(err)
}

/// An element of `M_{n_1}(ℂ) ⊕ … ⊕ M_{n_k}(ℂ)`.
#[pyclass(name = "AlgebraElement", frozen, from_py_object, module = "cframe")]
#[derive(Clone)]
struct PyAlgebraElement(AlgebraElement);

#[pymethods]
impl PyAlgebraElement {
    /// From a list of square blocks, each a list of rows of complex numbers.
    #[new]
    fn new(blocks: Vec<Vec<Vec<Complex64>>>) -> PyResult<Self> {
        let sizes = blocks.iter().map(Vec::len).collect();
        let desc = descriptor(sizes)?;
        let mats = blocks
            .iter()
            .map(|rows| {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(PyValueError::new_err("blocks must be square"));
                }
                Ok(cframe::linalg::CMat::from_fn(n, n, |i, j| rows[i][j]))
            })
            .collect::<PyResult<Vec<_>>>()?;
        AlgebraElement::from_blocks(&desc, mats).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(blocks: Vec<usize>) -> PyResult<Self> {
        Ok(Self(AlgebraElement::identity(&descriptor(blocks)?)))
    }

    /// The central element acting as `scalars[k]` on block `k`.
    #[staticmethod]
    fn central(blocks: Vec<usize>, scalars: Vec<Complex64>) -> PyResult<Self> {
        let desc = descriptor(blocks)?;
        if scalars.len() != desc.num_blocks() {
            return Err(PyValueError::new_err("one scalar per block"));
        }
        Ok(Self(AlgebraElement::blockwise_scalars(&desc, &scalars)))
    }

    #[staticmethod]
    fn random_unitary(blocks: Vec<usize>, seed: u64) -> PyResult<Self> {
        Ok(Self(toolkit::gen_unitary(&descriptor(blocks)?, seed)))
    }

    fn blocks(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.0
            .blocks()
            .iter()
            .map(|m| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect())
            .collect()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(Self).map_err(err)
    }

    fn is_central(&self) -> bool {
        self.0.is_central(tol::ALGEBRAIC)
    }

    fn is_unitary(&self) -> bool {
        self.0.is_unitary(tol::ALGEBRAIC)
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive(tol::ALGEBRAIC)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.descriptor().ensure_same(other.0.descriptor()).map_err(err)?;
        Ok(Self(&self.0 + &other.0))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.descriptor().ensure_same(other.0.descriptor()).map_err(err)?;
        Ok(Self(&self.0 * &other.0))
    }

    fn __repr__(&self) -> String {
        format!("AlgebraElement(blocks={:?}, norm={:.6})", self.0.descriptor().block_sizes(), self.0.norm())
    }
}

/// An element of `A^d`.
#[pyclass(name = "ModuleElement", frozen, from_py_object, module = "cframe")]
#[derive(Clone)]
struct PyModuleElement(ModuleElement);

#[pymethods]
impl PyModuleElement {
    #[new]
    fn new(coords: Vec<PyAlgebraElement>) -> PyResult<Self> {
        let first = coords.first().ok_or_else(|| PyValueError::new_err("need at least one coordinate"))?;
        let desc = first.0.descriptor().clone();
        ModuleElement::new(&desc, coords.into_iter().map(|a| a.0).collect()).map(Self).map_err(err)
    }

    fn coords(&self) -> Vec<PyAlgebraElement> {
        self.0.coords().iter().cloned().map(PyAlgebraElement).collect()
    }

    /// `⟨self, other⟩ = Σ x_j y_j*`.
    fn inner(&self, other: &Self) -> PyResult<PyAlgebraElement> {
        self.0.inner(&other.0).map(PyAlgebraElement).map_err(err)
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn d(&self) -> usize {
        self.0.d()
    }
}

/// A family `Ω → A^d` over a finite weighted measure space.
#[pyclass(name = "FrameMap", frozen, skip_from_py_object, module = "cframe")]
#[derive(Clone)]
struct PyFrameMap(FrameMap);

#[pymethods]
impl PyFrameMap {
    #[new]
    #[pyo3(signature = (vectors, weights=None))]
    fn new(vectors: Vec<PyModuleElement>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let first = vectors.first().ok_or_else(|| PyValueError::new_err("need at least one vector"))?;
        let (desc, d) = (first.0.descriptor().clone(), first.0.d());
        let space = match weights {
            Some(w) => cframe::MeasureSpace::new(w).map_err(err)?,
            None => cframe::MeasureSpace::counting(vectors.len()),
        };
        FrameMap::new(&space, &desc, d, vectors.into_iter().map(|v| v.0).collect()).map(Self).map_err(err)
    }

    #[staticmethod]
    fn standard_basis(blocks: Vec<usize>, d: usize) -> PyResult<Self> {
        Ok(Self(FrameMap::standard_basis(&descriptor(blocks)?, d)))
    }

    /// A random frame with `upper / lower ≤ condition`.
    #[staticmethod]
    #[pyo3(signature = (blocks, d, m, seed=0, condition=4.0))]
    fn random(blocks: Vec<usize>, d: usize, m: usize, seed: u64, condition: f64) -> PyResult<Self> {
        toolkit::gen_frame(&descriptor(blocks)?, d, m, seed, condition).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(|e| CframeError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("frame maps serialize")
    }

    fn vectors(&self) -> Vec<PyModuleElement> {
        self.0.vectors().iter().cloned().map(PyModuleElement).collect()
    }

    fn weights(&self) -> Vec<f64> {
        self.0.space().weights().to_vec()
    }

    /// Optimal `(lower, upper)` in the C*-order sense.
    fn order_bounds(&self) -> (f64, f64) {
        let b = self.0.order_bounds();
        (b.lower, b.upper)
    }

    /// Empirical `(lower, upper)` in the norm sense, from random samples.
    #[pyo3(signature = (samples=256, seed=0))]
    fn sampled_norm_bounds(&self, samples: usize, seed: u64) -> (f64, f64) {
        let b = self.0.sampled_norm_bounds(samples, seed);
        (b.lower, b.upper)
    }

    fn is_frame(&self) -> bool {
        self.0.is_frame(tol::rank_from_env())
    }

    fn is_riesz_type(&self) -> PyResult<bool> {
        self.0.is_riesz_type(tol::rank_from_env()).map_err(err)
    }

    fn canonical_dual(&self) -> PyResult<Self> {
        self.0.canonical_dual().map(Self).map_err(err)
    }

    fn dual_defect(&self, other: &Self) -> PyResult<f64> {
        self.0.dual_defect(&other.0).map_err(err)
    }

    /// `ω ↦ a F(ω)`.
    fn scale(&self, a: &PyAlgebraElement) -> PyResult<Self> {
        self.0.scale_frame(&a.0).map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let b = self.0.order_bounds();
        format!(
            "FrameMap(blocks={:?}, d={}, atoms={}, bounds=({:.6}, {:.6}))",
            self.0.descriptor().block_sizes(),
            self.0.d(),
            self.0.len(),
            b.lower,
            b.upper
        )
    }
}

/// A complete checker input: `F`, optional `G` and `K`, scalars and constants.
#[pyclass(name = "Scenario", frozen, skip_from_py_object, module = "cframe")]
#[derive(Clone)]
struct PyScenario(Scenario);

#[pymethods]
impl PyScenario {
    #[new]
    #[pyo3(signature = (f, g=None, k=None, a1=None, a2=None))]
    fn new(
        f: &PyFrameMap,
        g: Option<&PyFrameMap>,
        k: Option<&PyFrameMap>,
        a1: Option<&PyAlgebraElement>,
        a2: Option<&PyAlgebraElement>,
    ) -> PyResult<Self> {
        let mut s = Scenario::new(f.0.clone());
        s.g = g.map(|m| m.0.clone());
        s.k = k.map(|m| m.0.clone());
        s.a1 = a1.map(|a| a.0.clone());
        s.a2 = a2.map(|a| a.0.clone());
        s.validate().map_err(err)?;
        Ok(Self(s))
    }

    /// A scenario that satisfies the hypotheses of `theorem`.
    #[staticmethod]
    #[pyo3(signature = (theorem_id, seed=0))]
    fn generate(theorem_id: &str, seed: u64) -> PyResult<Self> {
        toolkit::generate_scenario(theorem(theorem_id)?, seed).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Scenario::from_json(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Scenario::load(&path).map(Self).map_err(err)
    }

    fn save(&self, path: std::path::PathBuf) -> PyResult<()> {
        self.0.save(&path).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn f(&self) -> PyFrameMap {
        PyFrameMap(self.0.f.clone())
    }

    #[getter]
    fn g(&self) -> Option<PyFrameMap> {
        self.0.g.clone().map(PyFrameMap)
    }

    #[getter]
    fn k(&self) -> Option<PyFrameMap> {
        self.0.k.clone().map(PyFrameMap)
    }
}

/// Runs the checker for `theorem_id` and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (theorem_id, scenario, samples=64, seed=0, tol=None))]
fn verify<'py>(
    py: Python<'py>,
    theorem_id: &str,
    scenario: &PyScenario,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = CheckOptions { trials: samples, seed, tol: tol.unwrap_or_else(tol::rank_from_env) };
    let report = toolkit::verify_scenario(theorem(theorem_id)?, &scenario.0, opts).map_err(err)?;
    to_py(py, &report)
}

/// A falsification campaign over `trials` generated scenarios.
#[pyfunction]
#[pyo3(signature = (theorem_id, trials=200, seed=0, samples=16))]
fn falsify<'py>(
    py: Python<'py>,
    theorem_id: &str,
    trials: usize,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = CheckOptions { trials: samples, seed, tol: tol::rank_from_env() };
    let id = theorem(theorem_id)?;
    let report = py.detach(|| toolkit::falsify(id, trials, seed, opts));
    to_py(py, &report)
}

/// Predicted `(lower, upper)` for `a₁F + a₂G` from `A`, `B` and the Bessel
/// bound `N` of `G`.
#[pyfunction]
fn predict_sum_bounds(a: f64, b: f64, n: f64, a1: &PyAlgebraElement, a2: &PyAlgebraElement) -> PyResult<(f64, f64)> {
    let bounds = perturbation::predict_sum_bounds(a, b, n, &a1.0, &a2.0).map_err(err)?;
    Ok((bounds.lower, bounds.upper))
}

#[pyfunction]
fn theorems() -> Vec<&'static str> {
    TheoremId::ALL.iter().map(|t| t.as_str()).collect()
}

#[pymodule]
#[pyo3(name = "cframe")]
fn cframe_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CframeError", m.py().get_type::<CframeError>())?;
    m.add_class::<PyAlgebraElement>()?;
    m.add_class::<PyModuleElement>()?;
    m.add_class::<PyFrameMap>()?;
    m.add_class::<PyScenario>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(falsify, m)?)?;
    m.add_function(wrap_pyfunction!(predict_sum_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(theorems, m)?)?;
    Ok(())
}
