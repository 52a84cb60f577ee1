//! Python bindings: the `quandles` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use quandle_core::composition::{self, OpWord, QuandleGroup, EXPLORE_LIMIT};
use quandle_core::constructions;
use quandle_core::enumerate::{self, DEFAULT_MAX_N};
use quandle_core::families::{self, FamilySpec, IndexStructure};
use quandle_core::{iso, FiniteGroup, OpTable};

fn err(e: quandle_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite binary operation, 0-indexed: `t.get(a, b)` is `a * b`.
#[pyclass(
    name = "Table",
    module = "quandles",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTable(OpTable);

#[pymethods]
impl PyTable {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        OpTable::from_rows(rows).map(PyTable).map_err(err)
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        constructions::catalog_table(name).map(PyTable).map_err(err)
    }

    #[staticmethod]
    fn trivial(n: usize) -> PyResult<Self> {
        constructions::trivial_quandle(n).map(PyTable).map_err(err)
    }

    #[staticmethod]
    fn dihedral(n: usize) -> PyResult<Self> {
        constructions::dihedral_quandle(n).map(PyTable).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (group, k = 1))]
    fn conj(group: &PyGroup, k: i64) -> Self {
        PyTable(constructions::conj_quandle(&group.0, k))
    }

    #[staticmethod]
    fn core(group: &PyGroup) -> Self {
        PyTable(constructions::core_quandle(&group.0))
    }

    /// Multiplication by the unit `k` on `Z_n`.
    #[staticmethod]
    fn alexander(n: usize, k: usize) -> PyResult<Self> {
        let phi = FiniteGroup::unit_automorphism(n, k).map_err(err)?;
        constructions::alexander_quandle(&FiniteGroup::cyclic(n), &phi)
            .map(PyTable)
            .map_err(err)
    }

    #[staticmethod]
    fn holomorph(group: &PyGroup) -> Self {
        PyTable(constructions::holomorph_quandle(&group.0))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn get(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.0.n();
        if a >= n || b >= n {
            return Err(PyValueError::new_err(format!(
                "({a}, {b}) is outside a table of size {n}"
            )));
        }
        Ok(self.0.get(a, b))
    }

    fn classification(&self) -> &'static str {
        self.0.classification().as_str()
    }

    fn is_quandle(&self) -> bool {
        self.0.is_quandle()
    }

    fn is_rack(&self) -> bool {
        self.0.is_rack()
    }

    fn axioms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.0.axioms_report();
        let d = PyDict::new(py);
        d.set_item("idempotent", r.idempotent)?;
        d.set_item("right_quasigroup", r.right_quasigroup)?;
        d.set_item("self_distributive", r.self_distributive)?;
        d.set_item("classification", r.classification.as_str())?;
        d.set_item(
            "first_non_distributive_triple",
            self.0.first_non_distributive_triple(),
        )?;
        Ok(d)
    }

    /// `a (self other) b = other(self(a, b), b)`.
    fn compose(&self, other: &PyTable) -> PyResult<Self> {
        composition::compose(&self.0, &other.0)
            .map(PyTable)
            .map_err(err)
    }

    fn power(&self, k: i64) -> PyResult<Self> {
        composition::power(&self.0, k).map(PyTable).map_err(err)
    }

    fn right_inverse(&self) -> PyResult<Self> {
        self.0.right_inverse().map(PyTable).map_err(err)
    }

    /// Whether `(a o b) * c = (a * c) o (b * c)` with `*` this table.
    fn distributes_over(&self, circ: &PyTable) -> PyResult<bool> {
        composition::distributes_over(&self.0, &circ.0).map_err(err)
    }

    fn distributivity_witness(&self, circ: &PyTable) -> PyResult<Option<(usize, usize, usize)>> {
        composition::distributivity_witness(&self.0, &circ.0).map_err(err)
    }

    /// The images of an isomorphism onto `other`, if one exists.
    fn isomorphism(&self, other: &PyTable) -> Option<Vec<usize>> {
        iso::is_isomorphic(&self.0, &other.0).map(|p| p.images().to_vec())
    }

    fn canonical_form(&self) -> Self {
        PyTable(iso::canonical_form(&self.0).table)
    }

    fn rank(&self) -> PyResult<usize> {
        self.0.rank().map_err(err)
    }

    fn n_quandle_order(&self) -> PyResult<Option<usize>> {
        composition::n_quandle_order(&self.0).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Table({:?})", self.0.rows())
    }
}

/// A finite group given by its Cayley table.
#[pyclass(name = "Group", module = "quandles", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup(FiniteGroup);

#[pymethods]
impl PyGroup {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteGroup::from_table(rows).map(PyGroup).map_err(err)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyGroup(FiniteGroup::cyclic(n))
    }

    /// The dihedral group of order `2m`.
    #[staticmethod]
    fn dihedral(m: usize) -> Self {
        PyGroup(FiniteGroup::dihedral(m))
    }

    #[staticmethod]
    fn symmetric(degree: usize) -> PyResult<Self> {
        FiniteGroup::symmetric(degree).map(PyGroup).map_err(err)
    }

    #[staticmethod]
    fn quaternion8() -> Self {
        PyGroup(FiniteGroup::quaternion8())
    }

    fn direct_product(&self, other: &PyGroup) -> Self {
        PyGroup(FiniteGroup::direct_product(&self.0, &other.0))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn abelianization(&self) -> Self {
        PyGroup(self.0.abelianization())
    }

    fn is_isomorphic(&self, other: &PyGroup) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn label(&self) -> Option<String> {
        self.0.small_group_label()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.0.order())
    }
}

/// The group generated by operations under composition.
#[pyclass(name = "OperationGroup", module = "quandles", frozen)]
struct PyOperationGroup {
    group: QuandleGroup,
    names: Vec<String>,
}

#[pymethods]
impl PyOperationGroup {
    #[getter]
    fn order(&self) -> usize {
        self.group.order()
    }

    fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// A small-group label such as `Z2xZ2`, or None when unresolved.
    fn iso_type(&self) -> Option<String> {
        self.group.iso_type().ok()
    }

    fn elements(&self) -> Vec<PyTable> {
        self.group.elements().iter().cloned().map(PyTable).collect()
    }

    fn words(&self) -> Vec<String> {
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        (0..self.group.order())
            .map(|i| self.group.word(i).display_with(&names))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("OperationGroup(order={})", self.group.order())
    }
}

fn tables(ts: &[PyRef<'_, PyTable>]) -> Vec<OpTable> {
    ts.iter().map(|t| t.0.clone()).collect()
}

/// The group generated by `generators`. Without `explore`, generators must
/// be mutually distributive quandles.
#[pyfunction]
#[pyo3(signature = (generators, explore = false, limit = EXPLORE_LIMIT))]
fn closure(
    generators: Vec<PyRef<'_, PyTable>>,
    explore: bool,
    limit: usize,
) -> PyResult<PyOperationGroup> {
    let gens = tables(&generators);
    let group = if explore {
        composition::closure_explore(&gens, limit)
    } else {
        composition::closure_group(&gens)
    }
    .map_err(err)?;
    Ok(PyOperationGroup {
        group,
        names: composition::default_generator_names(gens.len()),
    })
}

/// Evaluates a word such as `"a^2 b^-1"` in the generators.
#[pyfunction]
#[pyo3(signature = (generators, word, names = None))]
fn word(
    generators: Vec<PyRef<'_, PyTable>>,
    word: &str,
    names: Option<Vec<String>>,
) -> PyResult<PyTable> {
    let gens = tables(&generators);
    let names = names.unwrap_or_else(|| composition::default_generator_names(gens.len()));
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let w = OpWord::parse(word, &refs).map_err(err)?;
    composition::word_operation(&gens, &w)
        .map(PyTable)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, up_to_iso = true, cap = DEFAULT_MAX_N))]
fn enumerate_quandles(
    py: Python<'_>,
    n: usize,
    up_to_iso: bool,
    cap: usize,
) -> PyResult<Vec<PyTable>> {
    let found = py
        .detach(|| enumerate::enumerate_quandles_capped(n, up_to_iso, cap))
        .map_err(err)?;
    Ok(found.into_iter().map(PyTable).collect())
}

#[pyfunction]
#[pyo3(signature = (n, up_to_iso = true))]
fn enumerate_racks(py: Python<'_>, n: usize, up_to_iso: bool) -> PyResult<Vec<PyTable>> {
    let found = py
        .detach(|| enumerate::enumerate_racks(n, up_to_iso))
        .map_err(err)?;
    Ok(found.into_iter().map(PyTable).collect())
}

fn family(
    x_size: usize,
    ops: Vec<PyRef<'_, PyTable>>,
    index: Option<PyRef<'_, PyTable>>,
    group: Option<PyRef<'_, PyGroup>>,
    f: Option<Vec<usize>>,
) -> PyResult<FamilySpec> {
    let structure = match (index, group) {
        (Some(q), None) => IndexStructure::Quandle(q.0.clone()),
        (q, Some(g)) => IndexStructure::Group {
            group: g.0.clone(),
            quandle: q.map(|q| q.0.clone()),
        },
        (None, None) => {
            return Err(PyValueError::new_err(
                "give an index quandle, a group, or both",
            ))
        }
    };
    FamilySpec::new(x_size, structure, tables(&ops), f).map_err(err)
}

/// The first violated axiom as a string, or None for a valid family.
///
/// `f` is flattened as `f[s * m + t]`. With both `index` and `group`,
/// `index` is the quandle on the group used by the `(G, f)` conditions.
#[pyfunction]
#[pyo3(signature = (x_size, ops, index = None, group = None, f = None))]
fn validate_family(
    x_size: usize,
    ops: Vec<PyRef<'_, PyTable>>,
    index: Option<PyRef<'_, PyTable>>,
    group: Option<PyRef<'_, PyGroup>>,
    f: Option<Vec<usize>>,
) -> PyResult<Option<String>> {
    let spec = family(x_size, ops, index, group, f)?;
    Ok(families::validate_family(&spec)
        .map_err(err)?
        .map(|v| v.to_string()))
}

/// The quandle on pairs `(x, a)`, flattened as `x * m + a`.
#[pyfunction]
#[pyo3(signature = (x_size, ops, index = None, group = None, f = None))]
fn associated_quandle(
    x_size: usize,
    ops: Vec<PyRef<'_, PyTable>>,
    index: Option<PyRef<'_, PyTable>>,
    group: Option<PyRef<'_, PyGroup>>,
    f: Option<Vec<usize>>,
) -> PyResult<PyTable> {
    let spec = family(x_size, ops, index, group, f)?;
    families::associated_quandle(&spec)
        .map(PyTable)
        .map_err(err)
}

#[pymodule]
fn quandles(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTable>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyOperationGroup>()?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(word, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_quandles, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_racks, m)?)?;
    m.add_function(wrap_pyfunction!(validate_family, m)?)?;
    m.add_function(wrap_pyfunction!(associated_quandle, m)?)?;
    Ok(())
}
