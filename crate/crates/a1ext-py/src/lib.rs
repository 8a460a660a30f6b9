//! Python bindings: modules, resolutions, charts and classifications.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use a1ext::adamschart::{self, MthCase};
use a1ext::ahss::{self, ExtensionPolicy};
use a1ext::classify::{self, BosonicSymmetry, FermionicCase, FinAbGroup};
use a1ext::modcat::{self, GradedA1Module};
use a1ext::resolve::{ext_chart, minimal_resolution, ExtChart};
use a1ext::steenrod;
use a1ext::thomspaces;
use a1ext::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownName(_) => PyKeyError::new_err(e.to_string()),
        Error::Parse(_) | Error::Parameter(_) | Error::Dimension(_) | Error::Range { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A graded module over A(1).
#[pyclass(name = "Module", module = "a1ext", skip_from_py_object)]
#[derive(Clone)]
struct PyModuleA1 {
    inner: GradedA1Module,
}

#[pymethods]
impl PyModuleA1 {
    /// Builtin module such as `A1`, `P`, `MO(2)` or `TwistedBZ(3)`, cut off at degree `t`.
    #[staticmethod]
    #[pyo3(signature = (spec, t = 20, shift = 0))]
    fn builtin(spec: &str, t: i32, shift: i32) -> PyResult<Self> {
        Ok(PyModuleA1 {
            inner: thomspaces::any_builtin(spec, t, shift).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyModuleA1 {
            inner: GradedA1Module::from_json(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// `{degree: dimension}` for every nonzero degree.
    fn dims(&self) -> BTreeMap<i32, usize> {
        self.inner
            .degrees()
            .map(|d| (d, self.inner.dim(d)))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    /// `[(degree, word, detail)]` for every failed relation; empty when valid.
    fn validate(&self) -> Vec<(i32, Vec<u32>, String)> {
        modcat::validate(&self.inner)
            .failures
            .into_iter()
            .map(|f| (f.degree, f.word, f.detail))
            .collect()
    }

    fn tensor(&self, other: &PyModuleA1, t: i32) -> Self {
        PyModuleA1 {
            inner: modcat::tensor_product(&self.inner, &other.inner, t),
        }
    }

    fn suspend(&self, j: i32) -> Self {
        PyModuleA1 {
            inner: modcat::suspend(&self.inner, j),
        }
    }

    fn __repr__(&self) -> String {
        format!("Module({:?}, dims={:?})", self.inner.name, self.dims())
    }
}

/// An Adams chart of Ext over A(1).
#[pyclass(name = "Chart", module = "a1ext", skip_from_py_object)]
#[derive(Clone)]
struct PyChart {
    inner: ExtChart,
}

#[pymethods]
impl PyChart {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyChart {
            inner: ExtChart::from_json(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// `{(stem, s): dimension}` for every occupied bidegree.
    fn dims(&self) -> BTreeMap<(i32, u32), usize> {
        self.inner.dims()
    }

    fn render(&self, format: &str) -> PyResult<String> {
        match format {
            "ascii" => Ok(adamschart::render_ascii(&self.inner)),
            "svg" => Ok(adamschart::render_svg(&self.inner)),
            _ => Err(PyValueError::new_err(format!("unknown format {format}"))),
        }
    }

    /// Homotopy groups read off the chart, assuming it is an E-infinity page.
    fn homotopy(&self, stems: Vec<i32>) -> PyResult<BTreeMap<i32, String>> {
        let r = adamschart::read_homotopy(&self.inner, &stems).map_err(py_err)?;
        Ok(r.groups.into_iter().map(|(k, g)| (k, g.to_string())).collect())
    }
}

/// Minimal resolution of `module` through `(smax, tmax)`, returned as a chart.
#[pyfunction]
fn resolve(module: &PyModuleA1, smax: u32, tmax: i32) -> PyResult<PyChart> {
    let r = minimal_resolution(&module.inner, smax, tmax).map_err(py_err)?;
    Ok(PyChart { inner: ext_chart(&r) })
}

/// Admissible normal form of a product of squares, as a list of admissible words.
#[pyfunction]
fn adem(word: Vec<u32>) -> Vec<Vec<u32>> {
    steenrod::adem_reduce(&word).terms.into_iter().map(|m| m.0).collect()
}

/// Homotopy groups of a Thom spectrum case (`pin+`, `spinz2n(3)`, ...) in the given stems.
#[pyfunction]
fn homotopy(case: &str, stems: Vec<i32>) -> PyResult<BTreeMap<i32, String>> {
    let case: MthCase = case.parse().map_err(py_err)?;
    let r = adamschart::mth_pipeline(&case, &stems).map_err(py_err)?;
    Ok(r.groups.into_iter().map(|(k, g)| (k, g.to_string())).collect())
}

/// `ko<0..4>`-cohomology of a product space; returns the group or `None` when only bounds are known.
#[pyfunction]
#[pyo3(signature = (space, n, policy = "maximal_torsion"))]
fn ahss_group(space: &str, n: i32, policy: &str) -> PyResult<Option<String>> {
    let policy: ExtensionPolicy = policy.parse().map_err(py_err)?;
    let x = ahss::space_expression(space, n + 8).map_err(py_err)?;
    let r = ahss::ko4_ahss(&x, n).map_err(py_err)?;
    match ahss::resolve_extensions(&r, policy) {
        Ok(g) => Ok(Some(g.to_string())),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(py_err(e)),
    }
}

/// Bosonic classification for `none_T`, `T_U1` or `U1` in spatial dimension `d`.
#[pyfunction]
fn bosonic(symmetry: &str, d: u32) -> PyResult<String> {
    let sym: BosonicSymmetry = symmetry.parse().map_err(py_err)?;
    Ok(classify::bosonic_classification(sym, d).map_err(py_err)?.to_string())
}

/// Fermionic classification; returns `(group or None, certificate, notes)`.
#[pyfunction]
fn fermionic(case: &str) -> PyResult<(Option<String>, String, Vec<String>)> {
    let case: FermionicCase = case.parse().map_err(py_err)?;
    let r = classify::fermionic_classification(&case).map_err(py_err)?;
    Ok((r.group.map(|g| g.to_string()), format!("{:?}", r.certificate), r.notes))
}

/// Anderson dual `Ext(low, Z) + Hom(high, Z)` of groups written like `Z + Z/2`.
#[pyfunction]
fn anderson_dual(low: &str, high: &str) -> PyResult<String> {
    let low: FinAbGroup = low.parse().map_err(py_err)?;
    let high: FinAbGroup = high.parse().map_err(py_err)?;
    Ok(classify::anderson_dual_group(&low, &high).to_string())
}

#[pymodule]
#[pyo3(name = "a1ext")]
fn a1ext_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModuleA1>()?;
    m.add_class::<PyChart>()?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    m.add_function(wrap_pyfunction!(adem, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy, m)?)?;
    m.add_function(wrap_pyfunction!(ahss_group, m)?)?;
    m.add_function(wrap_pyfunction!(bosonic, m)?)?;
    m.add_function(wrap_pyfunction!(fermionic, m)?)?;
    m.add_function(wrap_pyfunction!(anderson_dual, m)?)?;
    m.add("BUILTIN_MODULES", modcat::BUILTIN_EXAMPLES.to_vec())?;
    Ok(())
}
