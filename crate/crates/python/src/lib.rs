//! Python bindings. Field-generic types are wrapped in enums over the two coefficient fields.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use ringlab::homology::{self, bass_truncation, poincare_truncation};
use ringlab::{rings, sr, verify};
use ringlab::{FPModule, FieldSpec, LocalAlgebra, ModuleJson, PrimeField, Rationals, SearchMode};

fn err(e: ringlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_spec(text: &str) -> PyResult<FieldSpec> {
    text.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let text = value.to_string();
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Graph", module = "ringlab", frozen, from_py_object)]
#[derive(Clone)]
struct PyGraph(ringlab::Graph);

#[pymethods]
impl PyGraph {
    /// Graph on `n` vertices from 1-based edges.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        if edges.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(PyValueError::new_err("vertices are 1-based"));
        }
        let edges = edges.into_iter().map(|(a, b)| (a - 1, b - 1));
        ringlab::Graph::new(n, edges).map(Self).map_err(err)
    }

    /// `K<n>`, `P<n>`, `C<n>` or `E<n>`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        ringlab::Graph::named(name).map(Self).map_err(err)
    }

    /// Edge-list text or graph JSON.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        ringlab::Graph::parse(text).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    /// 1-based edges.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    #[pyo3(signature = (except_vertex = None))]
    fn whisker(&self, except_vertex: Option<&str>) -> PyResult<Self> {
        let g = match except_vertex {
            Some(v) => self.0.whisker_except(self.0.find_vertex(v).map_err(err)?),
            None => self.0.whisker_all(),
        };
        g.map(Self).map_err(err)
    }

    fn star_vertices(&self) -> Vec<String> {
        self.0.star_vertices().into_iter().map(|v| self.0.label(v).to_string()).collect()
    }

    fn maximal_cliques(&self) -> Vec<Vec<String>> {
        self.0
            .maximal_cliques()
            .iter()
            .map(|c| c.iter().map(|&v| self.0.label(v).to_string()).collect())
            .collect()
    }

    fn to_edge_list(&self) -> String {
        self.0.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.0.n(), self.edges())
    }
}

#[pyclass(name = "Ring", module = "ringlab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRing(ringlab::Presentation);

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (vars, gens, field = "q"))]
    fn new(vars: Vec<String>, gens: Vec<String>, field: &str) -> PyResult<Self> {
        let v: Vec<&str> = vars.iter().map(String::as_str).collect();
        let g: Vec<&str> = gens.iter().map(String::as_str).collect();
        ringlab::Presentation::parse(&v, &g, field_spec(field)?).map(Self).map_err(err)
    }

    /// Named rings such as `sigma(K3)`, `kdprime(P3,2)`, `ex54R`; `_` refers to `graph`.
    #[staticmethod]
    #[pyo3(signature = (name, field = "q", graph = None))]
    fn named(name: &str, field: &str, graph: Option<PyGraph>) -> PyResult<Self> {
        rings::named_ring(name, field_spec(field)?, graph.as_ref().map(|g| &g.0))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ringlab::Presentation::parse_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("presentations serialize")
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    #[getter]
    fn gens(&self) -> Vec<String> {
        self.0.render_gens()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    /// Stanley-Reisner invariants of a monomial ring, over the ring's field.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let i = self.0.as_monomial_ideal().ok_or(ringlab::Error::NotMonomial).map_err(err)?;
        let dim = sr::krull_dim(&i).map_err(err)?;
        let depth = sr::depth(&i, self.0.field()).map_err(err)?;
        let hs = sr::hilbert_series(&i).map_err(err)?;
        let value = serde_json::json!({
            "dim": dim,
            "depth": depth,
            "cm": dim == depth,
            "hilbert_numerator": hs.numerator,
            "hilbert_denominator_power": hs.denominator_power,
            "multiplicity": sr::multiplicity(&i).map_err(err)?,
        });
        to_py(py, &value)
    }

    /// `k[x]/(I + m^n)`.
    fn truncate(&self, n: u32) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra(match self.0.field() {
            FieldSpec::Rational => AlgebraInner::Q(Arc::new(LocalAlgebra::truncate(&Rationals, &self.0, n).map_err(err)?)),
            FieldSpec::Prime(p) => {
                let f = PrimeField::new(p).map_err(err)?;
                AlgebraInner::P(Arc::new(LocalAlgebra::truncate(&f, &self.0, n).map_err(err)?))
            }
        }))
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, {:?}, field={})", self.0.vars(), self.0.render_gens(), self.0.field())
    }
}

enum AlgebraInner {
    Q(Arc<LocalAlgebra<Rationals>>),
    P(Arc<LocalAlgebra<PrimeField>>),
}

macro_rules! on_algebra {
    ($inner:expr, |$a:ident| $body:expr) => {
        match $inner {
            AlgebraInner::Q($a) => $body,
            AlgebraInner::P($a) => $body,
        }
    };
}

#[pyclass(name = "Algebra", module = "ringlab", frozen)]
struct PyAlgebra(AlgebraInner);

#[pymethods]
impl PyAlgebra {
    #[getter]
    fn dim(&self) -> usize {
        on_algebra!(&self.0, |a| a.dim())
    }

    fn basis(&self) -> Vec<String> {
        on_algebra!(&self.0, |a| a.basis().iter().map(|m| m.render(a.vars())).collect())
    }

    fn hilbert_function(&self) -> Vec<usize> {
        on_algebra!(&self.0, |a| a.hilbert_function())
    }

    fn socle(&self) -> Vec<String> {
        on_algebra!(&self.0, |a| a.socle().iter().map(|s| a.render_element(s)).collect())
    }

    fn is_full_artinian(&self) -> PyResult<bool> {
        on_algebra!(&self.0, |a| a.is_full_artinian().map_err(err))
    }

    fn is_gorenstein(&self) -> PyResult<bool> {
        on_algebra!(&self.0, |a| a.is_gorenstein_artinian().map_err(err))
    }

    /// Product of two elements written as polynomials.
    fn multiply(&self, a_text: &str, b_text: &str) -> PyResult<String> {
        on_algebra!(&self.0, |a| {
            let x = a.parse_element(a_text).map_err(err)?;
            let y = a.parse_element(b_text).map_err(err)?;
            Ok(a.render_element(&a.mul(&x, &y)))
        })
    }

    /// Linear forms `(l1, l2)` with `l1 l2 = 0` (and `m = l1 A ⊕ l2 A` when `full`), over a
    /// finite field.
    #[pyo3(signature = (full = true))]
    fn decomposition_search(&self, full: bool) -> PyResult<Option<(String, String)>> {
        let mode = if full { SearchMode::Full } else { SearchMode::Necessary };
        on_algebra!(&self.0, |a| Ok(a
            .pair_decomposition_search(mode)
            .map_err(err)?
            .map(|(l1, l2)| (a.render_linear_form(&l1), a.render_linear_form(&l2)))))
    }

    fn residue_field(&self) -> PyModuleHandle {
        PyModuleHandle(match &self.0 {
            AlgebraInner::Q(a) => ModuleInner::Q(FPModule::residue_field(a)),
            AlgebraInner::P(a) => ModuleInner::P(FPModule::residue_field(a)),
        })
    }

    #[pyo3(signature = (rank = 1))]
    fn free(&self, rank: usize) -> PyModuleHandle {
        PyModuleHandle(match &self.0 {
            AlgebraInner::Q(a) => ModuleInner::Q(FPModule::free(a, rank)),
            AlgebraInner::P(a) => ModuleInner::P(FPModule::free(a, rank)),
        })
    }

    fn canonical_module(&self) -> PyModuleHandle {
        PyModuleHandle(match &self.0 {
            AlgebraInner::Q(a) => ModuleInner::Q(FPModule::canonical_module(a)),
            AlgebraInner::P(a) => ModuleInner::P(FPModule::canonical_module(a)),
        })
    }

    /// `A/(gens)` for elements of the maximal ideal.
    fn cyclic_module(&self, gens: Vec<String>) -> PyResult<PyModuleHandle> {
        fn build<F: ringlab::Field>(a: &Arc<LocalAlgebra<F>>, gens: &[String]) -> ringlab::Result<FPModule<F>> {
            let elems = gens.iter().map(|g| a.parse_element(g)).collect::<ringlab::Result<Vec<_>>>()?;
            FPModule::cyclic_module(a, &elems)
        }
        Ok(PyModuleHandle(match &self.0 {
            AlgebraInner::Q(a) => ModuleInner::Q(build(a, &gens).map_err(err)?),
            AlgebraInner::P(a) => ModuleInner::P(build(a, &gens).map_err(err)?),
        }))
    }

    fn module_from_json(&self, text: &str) -> PyResult<PyModuleHandle> {
        let json: ModuleJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyModuleHandle(match &self.0 {
            AlgebraInner::Q(a) => ModuleInner::Q(FPModule::from_json(a, &json).map_err(err)?),
            AlgebraInner::P(a) => ModuleInner::P(FPModule::from_json(a, &json).map_err(err)?),
        }))
    }

    fn __repr__(&self) -> String {
        on_algebra!(&self.0, |a| format!("{a:?}"))
    }
}

enum ModuleInner {
    Q(FPModule<Rationals>),
    P(FPModule<PrimeField>),
}

macro_rules! on_module {
    ($inner:expr, |$m:ident| $body:expr) => {
        match $inner {
            ModuleInner::Q($m) => $body,
            ModuleInner::P($m) => $body,
        }
    };
}

#[pyclass(name = "Module", module = "ringlab", frozen)]
struct PyModuleHandle(ModuleInner);

impl PyModuleHandle {
    /// Applies `f` to two modules over the same field.
    fn pair<T>(
        &self,
        other: &PyModuleHandle,
        q: impl FnOnce(&FPModule<Rationals>, &FPModule<Rationals>) -> ringlab::Result<T>,
        p: impl FnOnce(&FPModule<PrimeField>, &FPModule<PrimeField>) -> ringlab::Result<T>,
    ) -> PyResult<T> {
        match (&self.0, &other.0) {
            (ModuleInner::Q(a), ModuleInner::Q(b)) => q(a, b).map_err(err),
            (ModuleInner::P(a), ModuleInner::P(b)) => p(a, b).map_err(err),
            _ => Err(err(ringlab::Error::MismatchedAlgebras)),
        }
    }
}

#[pymethods]
impl PyModuleHandle {
    #[getter]
    fn dim(&self) -> usize {
        on_module!(&self.0, |m| m.dim())
    }

    #[getter]
    fn label(&self) -> Option<String> {
        on_module!(&self.0, |m| m.label().map(str::to_string))
    }

    fn num_generators(&self) -> usize {
        on_module!(&self.0, |m| m.num_generators())
    }

    fn dual(&self) -> Self {
        PyModuleHandle(match &self.0 {
            ModuleInner::Q(m) => ModuleInner::Q(m.dual()),
            ModuleInner::P(m) => ModuleInner::P(m.dual()),
        })
    }

    /// Betti numbers `β_0..β_b`.
    fn betti(&self, b: usize) -> PyResult<Vec<usize>> {
        on_module!(&self.0, |m| poincare_truncation(m, b).map_err(err))
    }

    /// Bass numbers `μ^0..μ^b`.
    fn bass(&self, b: usize) -> PyResult<Vec<usize>> {
        on_module!(&self.0, |m| bass_truncation(m, b).map_err(err))
    }

    fn ext(&self, other: &PyModuleHandle, i: usize) -> PyResult<usize> {
        self.pair(other, |a, b| homology::ext(a, b, i), |a, b| homology::ext(a, b, i))
    }

    fn tor(&self, other: &PyModuleHandle, i: usize) -> PyResult<usize> {
        self.pair(other, |a, b| homology::tor(a, b, i), |a, b| homology::tor(a, b, i))
    }

    fn is_totally_reflexive(&self, b: usize) -> PyResult<bool> {
        on_module!(&self.0, |m| homology::is_totally_reflexive_up_to(m, b).map_err(err))
    }

    fn is_semidualizing(&self, b: usize) -> PyResult<bool> {
        on_module!(&self.0, |m| homology::is_semidualizing_up_to(m, b).map_err(err))
    }

    fn to_json(&self) -> String {
        let json = on_module!(&self.0, |m| m.to_json());
        serde_json::to_string(&json).expect("modules serialize")
    }

    fn __repr__(&self) -> String {
        format!("Module(label={:?}, dim={})", self.label(), self.dim())
    }
}

/// Runs a verification suite: `thmA`, `thmB`, `gorenstein`, `ex311`, `ex4x`, `ex54` or `all`.
/// Returns the reports as dictionaries.
#[pyfunction]
#[pyo3(signature = (suite, max_n = 4, field = "q", bound = 6))]
fn run_verify<'py>(py: Python<'py>, suite: &str, max_n: usize, field: &str, bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = field_spec(field)?;
    let reports = py
        .detach(|| -> ringlab::Result<Vec<ringlab::Report>> {
            Ok(match suite {
                "thmA" => verify::run_theorem_a(max_n, f)?,
                "thmB" => verify::run_theorem_b(max_n, f)?,
                "gorenstein" => vec![verify::run_gorenstein(max_n, f)?],
                "ex311" => (1..=3).map(verify::check_example_3_11).collect::<ringlab::Result<_>>()?,
                "ex4x" => [2, 3, 5, 7].into_iter().map(verify::check_example_4x).collect::<ringlab::Result<_>>()?,
                "ex54" => vec![verify::check_example_5_4(bound, f)?],
                "all" => verify::run_all(max_n, f, bound)?,
                other => return Err(ringlab::Error::Parse(format!("unknown suite `{other}`"))),
            })
        })
        .map_err(err)?;
    to_py(py, &serde_json::to_value(&reports).expect("reports serialize"))
}

#[pymodule(name = "ringlab")]
fn ringlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyModuleHandle>()?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
