//! Python bindings: `import socdef`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use socdef::centre::centre_dims;
use socdef::cli::{self, render, Command, Format};
use socdef::coeff::{make_field, AnyField, Field, FieldSpec, QParams};
use socdef::ext::{ExtAlgebra, ExtElement, ExtMonomial};
use socdef::findim::{
    build_deformed, build_lambda_q, is_frobenius, left_socle, radical, DeformationParams, StructureConstAlgebra,
};
use socdef::structure::{classify_case, default_max_degree, verify_finite_generation, verify_structure_theorem};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parameters `q_0, ..., q_{m-1}` over an exact field, given as a q-spec.
#[pyclass(name = "QParams", module = "socdef", frozen)]
struct PyQParams {
    inner: QParams<AnyField>,
}

#[pymethods]
impl PyQParams {
    #[new]
    #[pyo3(signature = (m, spec=None))]
    fn new(m: usize, spec: Option<&str>) -> PyResult<Self> {
        let text = spec.map_or_else(|| cli::trivial_qspec(m), str::to_owned);
        Ok(Self { inner: cli::parse_qspec(&text, m).map_err(err)? })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().describe()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.field().characteristic()
    }

    #[getter]
    fn q(&self) -> Vec<String> {
        self.inner.format_q()
    }

    #[getter]
    fn zeta(&self) -> String {
        self.inner.field().format(self.inner.zeta())
    }

    /// Multiplicative order of zeta, `None` if it is not a root of unity.
    #[getter]
    fn order(&self) -> Option<u64> {
        self.inner.order().finite()
    }

    #[getter]
    fn case(&self) -> String {
        let f = self.inner.field();
        classify_case(self.inner.m(), f.characteristic(), self.inner.order()).to_string()
    }

    #[getter]
    fn default_max_degree(&self) -> usize {
        default_max_degree(&self.inner)
    }

    fn normalized(&self) -> Self {
        Self { inner: self.inner.normalized() }
    }

    fn __repr__(&self) -> String {
        format!("QParams(m={}, q=[{}] over {})", self.m(), self.q().join(", "), self.field())
    }
}

/// The Ext algebra `E(Lambda_q)` in its `(i, s, t)` normal form.
#[pyclass(name = "ExtAlgebra", module = "socdef", frozen)]
struct PyExtAlgebra {
    inner: Arc<ExtAlgebra<AnyField>>,
}

#[pymethods]
impl PyExtAlgebra {
    #[new]
    fn new(params: &PyQParams) -> Self {
        Self { inner: Arc::new(ExtAlgebra::new(params.inner.clone())) }
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn grade_dim(&self, n: usize) -> usize {
        self.inner.grade_basis(n).len()
    }

    /// Product of two monomials `(i, s, t)`, formatted.
    fn mul(&self, a: (usize, usize, usize), b: (usize, usize, usize)) -> PyResult<String> {
        let m = self.inner.m();
        let elem = |(i, s, t): (usize, usize, usize)| {
            ExtElement::monomial(&self.inner, ExtMonomial::new(i % m, s, t)).map_err(err)
        };
        Ok(elem(a)?.mul(&elem(b)?).map_err(err)?.format())
    }

    fn centre_dims(&self, py: Python<'_>, max_degree: usize) -> Vec<usize> {
        py.detach(|| centre_dims(&self.inner, max_degree))
    }

    /// Checks the presentation of the graded centre up to `max_degree`.
    #[pyo3(signature = (max_degree=None))]
    fn structure<'py>(&self, py: Python<'py>, max_degree: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
        let n = max_degree.unwrap_or_else(|| default_max_degree(self.inner.params()));
        let r = py.detach(|| verify_structure_theorem(&self.inner, n));
        let f = self.inner.field();
        let d = PyDict::new(py);
        d.set_item("case", r.case.to_string())?;
        d.set_item("max_degree", r.max_degree)?;
        d.set_item("pass", r.pass())?;
        d.set_item("dims_match", r.dims_match())?;
        d.set_item("solver_dims", r.solver_dims.clone())?;
        d.set_item("hilbert_dims", r.hilbert_dims.clone())?;
        if let Some(g) = &r.generators {
            d.set_item("lengths", (g.lx, g.ly, g.lw))?;
            d.set_item("relation", g.relation_string())?;
            d.set_item("epsilon", f.format(&g.epsilon))?;
        }
        if let Some(rel) = &r.relation {
            d.set_item("relation_holds", rel.holds)?;
        }
        if let Some((eps, check)) = &r.rederived {
            d.set_item("rederived_epsilon", f.format(eps))?;
            d.set_item("rederived_holds", check.holds)?;
        }
        Ok(d)
    }

    fn finitely_generated(&self, py: Python<'_>, max_degree: usize) -> bool {
        py.detach(|| verify_finite_generation(&self.inner, max_degree).holds)
    }
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(name = "FiniteAlgebra", module = "socdef", frozen)]
struct PyFiniteAlgebra {
    inner: StructureConstAlgebra<AnyField>,
}

#[pymethods]
impl PyFiniteAlgebra {
    #[staticmethod]
    fn lambda_q(params: &PyQParams) -> PyResult<Self> {
        Ok(Self { inner: build_lambda_q(&params.inner).map_err(err)? })
    }

    /// The socle deformation with parameters `t, b1, b2`, over the field of
    /// `over` (the rationals by default).
    #[staticmethod]
    #[pyo3(signature = (m, t="1", b1="0", b2="1", over=None))]
    fn deformed(m: usize, t: &str, b1: &str, b2: &str, over: Option<&PyQParams>) -> PyResult<Self> {
        let f = match over {
            Some(p) => p.inner.field().clone(),
            None => make_field(&FieldSpec::Rationals).map_err(err)?,
        };
        let dp = DeformationParams {
            t: f.parse(t).map_err(err)?,
            b1: f.parse(b1).map_err(err)?,
            b2: f.parse(b2).map_err(err)?,
        };
        Ok(Self { inner: build_deformed(&f, m, &dp).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn product(&self, a: &str, b: &str) -> PyResult<String> {
        let idx = |l: &str| self.inner.index_of(l).ok_or_else(|| err(format!("unknown basis element {l}")));
        Ok(self.inner.format_vec(self.inner.product(idx(a)?, idx(b)?)))
    }

    fn radical_dim(&self) -> PyResult<usize> {
        Ok(radical(&self.inner).map_err(err)?.dim())
    }

    fn socle_dim(&self) -> PyResult<usize> {
        Ok(left_socle(&self.inner).map_err(err)?.dim())
    }

    /// `(is_frobenius, method)`.
    #[pyo3(signature = (seed=0))]
    fn is_frobenius(&self, py: Python<'_>, seed: u64) -> PyResult<(bool, String)> {
        let r = py.detach(|| is_frobenius(&self.inner, seed)).map_err(err)?;
        Ok((r.is_frobenius, r.method.to_owned()))
    }
}

fn parse_command(name: &str) -> PyResult<Command> {
    <Command as clap::ValueEnum>::from_str(name, true).map_err(err)
}

fn parse_format(name: &str) -> PyResult<Format> {
    <Format as clap::ValueEnum>::from_str(name, true).map_err(err)
}

/// Runs one command-line pipeline and returns the rendered report together
/// with the exit status it would produce.
#[pyfunction]
#[pyo3(signature = (command, m, q=None, max_degree=None, seed=0, t=None, b1=None, b2=None, format="json"))]
#[allow(clippy::too_many_arguments)]
fn run(
    py: Python<'_>,
    command: &str,
    m: usize,
    q: Option<String>,
    max_degree: Option<usize>,
    seed: u64,
    t: Option<String>,
    b1: Option<String>,
    b2: Option<String>,
    format: &str,
) -> PyResult<(String, i32)> {
    let command = parse_command(command)?;
    let format = parse_format(format)?;
    let args = cli::Args { m, q, max_degree, format, output: None, seed, t, b1, b2, timing: false };
    let spec = cli::instance_spec(command, &args).map_err(err)?;
    let report = py.detach(|| cli::execute(spec)).map_err(err)?;
    Ok((render(&report, format), report.exit_code()))
}

#[pymodule]
#[pyo3(name = "socdef")]
fn socdef_py(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyQParams>()?;
    module.add_class::<PyExtAlgebra>()?;
    module.add_class::<PyFiniteAlgebra>()?;
    module.add_function(wrap_pyfunction!(run, module)?)?;
    Ok(())
}
