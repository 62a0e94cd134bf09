//! Python bindings: root systems, L polynomials, oracles, galleries,
//! tableaux and the verification suite.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hlfold::folding;
use hlfold::gallery::Gallery;
use hlfold::hlengine::{self, Engine};
use hlfold::oracles;
use hlfold::tableaux::{self, Tableau};
use hlfold::verify::{self, Suite, VerifyConfig};
use hlfold::{Error, RootSystemSpec};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A root system of type A, B or C; the family names the coweight lattice.
#[pyclass(name = "RootSystem", module = "hlfold", frozen)]
struct PyRootSystem {
    inner: Arc<hlfold::RootSystem>,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let spec: RootSystemSpec = spec.parse().map_err(py_err)?;
        Ok(PyRootSystem { inner: Arc::new(hlfold::RootSystem::new(spec).map_err(py_err)?) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.spec.family.to_string()
    }

    /// Order of the Weyl group.
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Positive roots (the walls), as rational strings.
    fn positive_roots(&self) -> Vec<Vec<String>> {
        self.inner.positive_roots().iter().map(|r| r.to_strings()).collect()
    }

    /// Fundamental coweights, as rational strings.
    fn omegas(&self) -> Vec<Vec<String>> {
        self.inner.omegas.iter().map(|r| r.to_strings()).collect()
    }

    fn rho(&self) -> Vec<String> {
        self.inner.rho.to_strings()
    }

    /// L_{λ,μ}(q) from positively folded galleries.
    fn l_polynomial(&self, lam: Vec<i64>, mu: Vec<i64>) -> PyResult<QPoly> {
        hlengine::l_polynomial(&self.inner, &lam, &mu).map(QPoly).map_err(py_err)
    }

    /// {μ: L_{λ,μ}} over dominant μ with L ≠ 0.
    fn l_all(&self, lam: Vec<i64>) -> PyResult<Vec<(Vec<i64>, QPoly)>> {
        let m = Engine::new(&self.inner).l_all(&lam).map_err(py_err)?;
        Ok(m.into_iter().map(|(k, p)| (k, QPoly(p))).collect())
    }

    /// L_{λ,μ}(q) from the Hall–Littlewood polynomial P_λ.
    fn l_from_direct(&self, lam: Vec<i64>, mu: Vec<i64>) -> PyResult<QPoly> {
        oracles::l_from_direct(&self.inner, &lam, &mu).map(QPoly).map_err(py_err)
    }

    /// Weight multiplicities counted by LS-galleries.
    fn character<'py>(&self, py: Python<'py>, lam: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let ch = hlengine::character_ls(&self.inner, &lam).map_err(py_err)?;
        json_to_py(py, &hlengine::character_to_json(&ch))
    }

    /// Weight multiplicities from Freudenthal's formula.
    fn freudenthal_character<'py>(&self, py: Python<'py>, lam: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let ch = oracles::freudenthal_character(&self.inner, &lam).map_err(py_err)?;
        json_to_py(py, &hlengine::character_to_json(&ch))
    }

    fn weyl_dimension(&self, lam: Vec<i64>) -> PyResult<u64> {
        oracles::weyl_dimension(&self.inner, &lam).map_err(py_err)
    }

    /// Positively folded galleries of type γ_λ, ending in μ if given.
    #[pyo3(signature = (lam, mu=None, ls_only=false))]
    fn galleries(&self, lam: Vec<i64>, mu: Option<Vec<i64>>, ls_only: bool) -> PyResult<Vec<PyGallery>> {
        let gs = match mu {
            Some(mu) => folding::enumerate_pf(&self.inner, &lam, &mu),
            None => folding::enumerate_pf_all(&self.inner, &lam),
        }
        .map_err(py_err)?;
        Ok(gs
            .into_iter()
            .filter(|g| !ls_only || folding::is_ls(&self.inner, g).unwrap_or(false))
            .map(|g| PyGallery { rs: self.inner.clone(), inner: g })
            .collect())
    }

    /// Tableaux of shape p_λ, one per gallery of type γ_λ.
    #[pyo3(signature = (lam, semistandard=false))]
    fn tableaux(&self, lam: Vec<i64>, semistandard: bool) -> PyResult<Vec<PyTableau>> {
        let ts = tableaux::all_tableaux(&self.inner, &lam).map_err(py_err)?;
        Ok(ts
            .into_iter()
            .filter(|t| !semistandard || t.is_semistandard())
            .map(|t| PyTableau { rs: self.inner.clone(), inner: t })
            .collect())
    }

    fn shape(&self, lam: Vec<i64>) -> PyResult<Vec<usize>> {
        tableaux::shape_partition(&self.inner, &lam).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.spec)
    }
}

/// A polynomial in q with integer coefficients, ascending powers.
#[pyclass(module = "hlfold", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct QPoly(hlfold::QPoly);

#[pymethods]
impl QPoly {
    #[new]
    fn new(coeffs: Vec<i64>) -> Self {
        QPoly(hlfold::QPoly::new(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.0.coeffs.clone()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval(&self, x: i64) -> i64 {
        self.0.eval(x)
    }

    /// (degree, leading coefficient).
    fn leading_data(&self) -> PyResult<(usize, i64)> {
        self.0.leading_data().map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QPoly({:?})", self.0.coeffs)
    }
}

#[pyclass(name = "Gallery", module = "hlfold", frozen)]
struct PyGallery {
    rs: Arc<hlfold::RootSystem>,
    inner: Gallery,
}

#[pymethods]
impl PyGallery {
    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner.vertices.iter().map(|v| v.to_strings()).collect()
    }

    fn directions(&self) -> Vec<Vec<String>> {
        self.inner.directions().iter().map(|v| v.to_strings()).collect()
    }

    fn target(&self) -> Vec<String> {
        self.inner.target().to_strings()
    }

    fn is_positively_folded(&self) -> bool {
        folding::is_positively_folded(&self.rs, &self.inner)
    }

    fn is_minimal(&self) -> bool {
        folding::is_minimal(&self.rs, &self.inner)
    }

    fn is_ls(&self) -> PyResult<bool> {
        folding::is_ls(&self.rs, &self.inner).map_err(py_err)
    }

    /// q^{ℓ(w_{D₀})} times the product of junction factors.
    fn weight(&self) -> PyResult<QPoly> {
        Engine::new(&self.rs).gallery_weight(&self.inner).map(QPoly).map_err(py_err)
    }

    fn to_tableau(&self) -> PyResult<PyTableau> {
        let t = tableaux::gallery_to_tableau(&self.rs, &self.inner).map_err(py_err)?;
        Ok(PyTableau { rs: self.rs.clone(), inner: t })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.num_edges()
    }
}

#[pyclass(name = "Tableau", module = "hlfold", frozen)]
struct PyTableau {
    rs: Arc<hlfold::RootSystem>,
    inner: Tableau,
}

#[pymethods]
impl PyTableau {
    /// Columns in gallery order (rightmost first); k̄ is written −k.
    #[getter]
    fn columns(&self) -> Vec<Vec<i32>> {
        self.inner.columns.clone()
    }

    fn shape(&self) -> Vec<usize> {
        self.inner.shape()
    }

    fn is_semistandard(&self) -> bool {
        self.inner.is_semistandard()
    }

    fn weight(&self) -> PyResult<Vec<String>> {
        self.inner.weight(&self.rs).map(|w| w.to_strings()).map_err(py_err)
    }

    fn to_gallery(&self) -> PyResult<PyGallery> {
        let g = tableaux::tableau_to_gallery(&self.rs, &self.inner).map_err(py_err)?;
        Ok(PyGallery { rs: self.rs.clone(), inner: g })
    }

    fn __str__(&self) -> String {
        self.inner.pretty()
    }
}

/// Kostka number K_{shape, content}.
#[pyfunction]
fn kostka(shape: Vec<i64>, content: Vec<i64>) -> u64 {
    oracles::kostka(&shape, &content)
}

/// Run the verification suite; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (types=None, suite="default", max_sum=3, max_two_rho=16))]
fn run_verify<'py>(
    py: Python<'py>,
    types: Option<Vec<String>>,
    suite: &str,
    max_sum: i64,
    max_two_rho: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = VerifyConfig { max_sum, max_two_rho, ..Default::default() };
    cfg.suite = match suite {
        "default" => Suite::Full,
        "a2-example" => Suite::A2Example,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    if let Some(ts) = types {
        cfg.systems = ts.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(py_err)?;
    }
    let report = py.detach(|| verify::run(cfg)).map_err(py_err)?;
    let out = json_to_py(py, &report.to_json())?;
    Ok(out.cast_into::<PyDict>()?.into_any())
}

#[pymodule]
#[pyo3(name = "hlfold")]
fn hlfold_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<QPoly>()?;
    m.add_class::<PyGallery>()?;
    m.add_class::<PyTableau>()?;
    m.add_function(wrap_pyfunction!(kostka, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
