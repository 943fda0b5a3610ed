//! Python bindings: permutations, permutation groups, finite structures,
//! multiplication tables, and the headline pipelines (graphs realizing
//! groups, stabilizer checks, point-bijection recovery).
//!
//! Core errors surface as `ValueError` with the library's message text.

use autkit::frucht::{frucht_graph as build_frucht_graph, out_pipeline, verify_frucht, Graph};
use autkit::exaut::verify_star as star;
use autkit::perm::{
    group_isomorphic, named_group, FiniteGroup, GeneratedGroup, Permutation as CorePermutation,
};
use autkit::reconstruct::{
    bidef_check, induced_bijection, outer_sym6, scramble_harness, verify_conjugation_all, GroupIso,
};
use autkit::structure::{automorphism_group, is_homogeneous, FinStructure};
use autkit::{io, playground};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: autkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A permutation of `{0, .., n-1}`.
#[pyclass(frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Permutation(CorePermutation);

#[pymethods]
impl Permutation {
    /// From the image vector: `Permutation([1, 0, 2])` swaps 0 and 1.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        CorePermutation::from_images(images)
            .map(Permutation)
            .map_err(value_err)
    }

    /// From cycle notation, e.g. `from_cycles(4, "(0 1)(2 3)")`.
    #[staticmethod]
    fn from_cycles(degree: usize, text: &str) -> PyResult<Self> {
        CorePermutation::from_cycles(degree, text)
            .map(Permutation)
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        Permutation(CorePermutation::identity(degree))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn apply(&self, x: usize) -> PyResult<usize> {
        if x >= self.0.degree() {
            return Err(PyValueError::new_err(format!(
                "point {x} out of range for degree {}",
                self.0.degree()
            )));
        }
        Ok(self.0.apply(x))
    }

    fn images(&self) -> Vec<usize> {
        self.0.images().to_vec()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type()
    }

    fn inverse(&self) -> Self {
        Permutation(self.0.inverse())
    }

    /// Composition: `(p * q)(x) = p(q(x))`.
    fn __mul__(&self, other: &Permutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Permutation).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        self.0.to_string()
    }
}

/// A permutation group given by generators, indexed for fast order,
/// membership, and stabilizer queries.
#[pyclass(frozen)]
struct PermGroup(GeneratedGroup);

#[pymethods]
impl PermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<Permutation>) -> PyResult<Self> {
        let gens = generators.into_iter().map(|p| p.0).collect();
        GeneratedGroup::with_degree(degree, gens)
            .map(PermGroup)
            .map_err(value_err)
    }

    #[staticmethod]
    fn symmetric(degree: usize) -> Self {
        PermGroup(GeneratedGroup::symmetric(degree))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn generators(&self) -> Vec<Permutation> {
        self.0.generators().iter().cloned().map(Permutation).collect()
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.0.contains(&p.0)
    }

    fn orbit(&self, point: usize) -> PyResult<Vec<usize>> {
        Ok(self.0.orbit(point).map_err(value_err)?.into_iter().collect())
    }

    fn elements(&self) -> PyResult<Vec<Permutation>> {
        Ok(self
            .0
            .elements()
            .map_err(value_err)?
            .into_iter()
            .map(Permutation)
            .collect())
    }

    fn pointwise_stabilizer(&self, points: Vec<usize>) -> PyResult<Self> {
        self.0
            .pointwise_stabilizer(&points)
            .map(PermGroup)
            .map_err(value_err)
    }

    fn setwise_stabilizer(&self, points: Vec<usize>) -> PyResult<Self> {
        self.0
            .setwise_stabilizer(&points)
            .map(PermGroup)
            .map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "PermGroup(degree={}, order={})",
            self.0.degree(),
            self.0.order()
        )
    }
}

/// A finite relational structure over `{0, .., n-1}`.
#[pyclass(frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
struct Structure(FinStructure);

#[pymethods]
impl Structure {
    /// A simple graph on `n` vertices from an edge list.
    #[staticmethod]
    fn graph(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        FinStructure::graph(n, &edges).map(Structure).map_err(value_err)
    }

    /// A bare set with no relations.
    #[staticmethod]
    fn pure_set(n: usize) -> Self {
        Structure(FinStructure::pure_set(n))
    }

    /// Named test-bed structures: `pure5`, `c5`, `path4`, `rook3`,
    /// `k4`, `cliques2x3`, `edgeless4`.
    #[staticmethod]
    fn playground(name: &str) -> PyResult<Self> {
        playground::by_name(name)
            .map(Structure)
            .ok_or_else(|| PyValueError::new_err(format!("unknown playground {name:?}")))
    }

    /// Parses the line-based structure format (`domain`/`rel` headers,
    /// or the `graph` shorthand).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_structure(text).map(Structure).map_err(value_err)
    }

    #[getter]
    fn domain_size(&self) -> usize {
        self.0.domain_size()
    }

    /// Relation symbols as `(name, arity)` pairs.
    fn signature(&self) -> Vec<(String, usize)> {
        self.0.signature().symbols().to_vec()
    }

    fn tuples(&self, symbol: usize) -> PyResult<Vec<Vec<usize>>> {
        if symbol >= self.0.signature().len() {
            return Err(PyValueError::new_err(format!("no symbol {symbol}")));
        }
        Ok(self.0.tuples(symbol).cloned().collect())
    }

    fn automorphisms(&self) -> PermGroup {
        PermGroup(automorphism_group(&self.0))
    }

    /// Whether every isomorphism between induced substructures extends
    /// to a full symmetry.
    fn is_homogeneous(&self) -> PyResult<bool> {
        Ok(is_homogeneous(&self.0).map_err(value_err)?.homogeneous)
    }

    fn induced(&self, points: Vec<usize>) -> PyResult<Self> {
        Ok(Structure(self.0.induced(&points).map_err(value_err)?.0))
    }

    fn relabel(&self, p: &Permutation) -> PyResult<Self> {
        self.0.relabel(&p.0).map(Structure).map_err(value_err)
    }

    /// The structure in its line-based file format.
    fn render(&self) -> String {
        io::format_structure(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Structure(domain={}, symbols={})",
            self.0.domain_size(),
            self.0.signature().len()
        )
    }
}

/// A finite group as a full multiplication table, identity at index 0.
#[pyclass(frozen, eq)]
#[derive(Clone, PartialEq, Eq)]
struct CayleyTable(FiniteGroup);

#[pymethods]
impl CayleyTable {
    #[new]
    fn new(table: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteGroup::new(table, None).map(CayleyTable).map_err(value_err)
    }

    /// Catalog groups: `Z1`..`Z8`, `V4`, `S3`, `D4`, `Q8`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        named_group(name)
            .map(CayleyTable)
            .ok_or_else(|| PyValueError::new_err(format!("unknown group {name:?}")))
    }

    /// The table of a permutation group, elements sorted.
    #[staticmethod]
    fn of(group: &PermGroup) -> PyResult<Self> {
        FiniteGroup::from_generated(&group.0)
            .map(CayleyTable)
            .map_err(value_err)
    }

    fn order(&self) -> usize {
        self.0.order()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.0.order() || b >= self.0.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.0.mul(a, b))
    }

    fn element_order(&self, a: usize) -> PyResult<usize> {
        if a >= self.0.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.0.element_order(a))
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    /// An element bijection witnessing abstract isomorphism, or `None`.
    fn isomorphism_to(&self, other: &CayleyTable) -> PyResult<Option<Vec<usize>>> {
        group_isomorphic(&self.0, &other.0).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("CayleyTable(order={})", self.0.order())
    }
}

/// The graph whose full symmetry group realizes the given group.
#[pyfunction]
fn frucht_graph(table: &CayleyTable) -> Structure {
    Structure(build_frucht_graph(&table.0).graph.to_structure())
}

/// Whether the graph's symmetry group is abstractly isomorphic to the
/// group; the graph must carry a single binary relation.
#[pyfunction]
fn frucht_verify(table: &CayleyTable, graph: &Structure) -> PyResult<bool> {
    let sig = graph.0.signature();
    if sig.len() != 1 || sig.arity(0) != 2 {
        return Err(PyValueError::new_err("expected a graph: one binary symbol"));
    }
    let g = Graph::new(graph.0.domain_size(), &graph.0.edge_pairs(0)).map_err(value_err)?;
    verify_frucht(&table.0, &g).map_err(value_err)
}

/// Runs the group -> graph -> class -> symmetry-group round trip and
/// returns the JSON run report.
#[pyfunction]
#[pyo3(signature = (table, bound = 3))]
fn out_pipeline_json(table: &CayleyTable, bound: usize) -> PyResult<String> {
    let report = out_pipeline(&table.0, bound).map_err(value_err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Does restriction map the setwise stabilizer of `points` onto the full
/// symmetry group of the induced substructure? Returns
/// `(holds, quotient_order, induced_order)`.
#[pyfunction]
fn verify_star(m: &Structure, points: Vec<usize>) -> PyResult<(bool, u64, u64)> {
    let report = star(&m.0, &points).map_err(value_err)?;
    Ok((report.holds, report.quotient_order, report.induced_aut_order))
}

/// Hides a seeded relabeling of `m`, recovers it from the induced
/// symmetry-group isomorphism alone, and grades the recovery. Returns
/// `(scrambled, recovered_images, verified, bidef_pass, hidden)`.
#[pyfunction]
fn scramble_and_recover(
    m: &Structure,
    seed: u64,
) -> PyResult<(Structure, Vec<usize>, bool, bool, Permutation)> {
    let instance = scramble_harness(&m.0, seed).map_err(value_err)?;
    let f = induced_bijection(&instance.iso, &m.0, &instance.scrambled).map_err(value_err)?;
    let verified = verify_conjugation_all(&instance.iso, &f);
    let bidef = bidef_check(&m.0, &instance.scrambled, &f, 3).map_err(value_err)?;
    Ok((
        Structure(instance.scrambled),
        f.map.images().to_vec(),
        verified,
        bidef.pass,
        Permutation(instance.hidden),
    ))
}

/// Recovers the point bijection `m -> n` inducing the symmetry-group
/// isomorphism given by generator-image pairs.
#[pyfunction]
fn recover_bijection(
    m: &Structure,
    n: &Structure,
    pairs: Vec<(Permutation, Permutation)>,
) -> PyResult<Vec<usize>> {
    let (gens, images): (Vec<_>, Vec<_>) =
        pairs.into_iter().map(|(g, h)| (g.0, h.0)).unzip();
    let source = GeneratedGroup::with_degree(m.0.domain_size(), gens).map_err(value_err)?;
    let target = automorphism_group(&n.0);
    let iso = GroupIso::new(source, target, images).map_err(value_err)?;
    let f = induced_bijection(&iso, &m.0, &n.0).map_err(value_err)?;
    Ok(f.map.images().to_vec())
}

/// Certifies the six-point boundary: an exceptional automorphism of the
/// symmetric group on six points defeats stabilizer matching.
#[pyfunction]
fn outer_sym6_defeats_recovery() -> PyResult<bool> {
    let iso = outer_sym6().map_err(value_err)?;
    let m = FinStructure::pure_set(6);
    Ok(matches!(
        induced_bijection(&iso, &m, &m),
        Err(autkit::Error::NoMinimalStabilizerMatch { .. })
    ))
}

#[pymodule]
fn autkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Permutation>()?;
    m.add_class::<PermGroup>()?;
    m.add_class::<Structure>()?;
    m.add_class::<CayleyTable>()?;
    m.add_function(wrap_pyfunction!(frucht_graph, m)?)?;
    m.add_function(wrap_pyfunction!(frucht_verify, m)?)?;
    m.add_function(wrap_pyfunction!(out_pipeline_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_star, m)?)?;
    m.add_function(wrap_pyfunction!(scramble_and_recover, m)?)?;
    m.add_function(wrap_pyfunction!(recover_bijection, m)?)?;
    m.add_function(wrap_pyfunction!(outer_sym6_defeats_recovery, m)?)?;
    Ok(())
}
