//! Finitely presented classes of finite structures, closed under induced
//! substructures: a signature, optional partition and symmetry
//! constraints, and a list of forbidden induced substructures.
//!
//! The built-in library covers plain sets, simple graphs, graphs without
//! a complete subgraph, edge-colored complete graphs, and the sorted
//! classes attached to a graph: one sort per vertex and one symmetric
//! bipartite-style relation per edge.

mod amalgam;
mod enumerate;
mod file;
mod generic;
mod symmetry;

pub use amalgam::{
    check_amalgamation, check_amalgamation_with_cap, class_acl, free_amalgam, AmalgamFailure,
    AmalgamationReport, HereditaryFailure,
};
pub use enumerate::{enumerate_members, MemberList, DEFAULT_MEMBER_CAP};
pub use file::{format_class_spec, parse_class_spec};
pub use generic::{
    extension_property_check, generic_build, ExtensionReport, GenericBuildReport,
    MissingExtension,
};
pub use symmetry::{signature_symmetry_group, SymmetryReport, SymmetryWitness};

use crate::structure::{find_embedding, FinStructure, Signature};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A binary symbol constrained to be symmetric and irreflexive, optionally
/// restricted to pairs spanning two sorts of the partition (indices into
/// the partition list; equal indices mean both ends in one sort).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryRule {
    pub symbol: usize,
    pub sorts: Option<(usize, usize)>,
}

/// A class of finite structures over a fixed signature, cut out by a
/// domain partition into unary sorts, symmetric-irreflexive constraints
/// on binary symbols, and forbidden induced substructures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSpec {
    signature: Signature,
    partition: Option<Vec<usize>>,
    binary_rules: Vec<BinaryRule>,
    forbidden: Vec<FinStructure>,
}

impl ClassSpec {
    pub fn new(
        signature: Signature,
        partition: Option<Vec<usize>>,
        binary_rules: Vec<BinaryRule>,
        forbidden: Vec<FinStructure>,
    ) -> Result<Self> {
        if let Some(ps) = &partition {
            let mut seen = BTreeSet::new();
            for &p in ps {
                if p >= signature.len() || signature.arity(p) != 1 {
                    return Err(Error::SignatureMismatch(format!(
                        "partition entry #{p} is not a unary symbol"
                    )));
                }
                if !seen.insert(p) {
                    return Err(Error::SignatureMismatch(format!(
                        "symbol {} listed twice in the partition",
                        signature.name(p)
                    )));
                }
            }
        }
        let mut seen = BTreeSet::new();
        for rule in &binary_rules {
            if rule.symbol >= signature.len() || signature.arity(rule.symbol) != 2 {
                return Err(Error::SignatureMismatch(format!(
                    "symmetry rule on #{} which is not a binary symbol",
                    rule.symbol
                )));
            }
            if !seen.insert(rule.symbol) {
                return Err(Error::SignatureMismatch(format!(
                    "two symmetry rules on symbol {}",
                    signature.name(rule.symbol)
                )));
            }
            if let Some((l, k)) = rule.sorts {
                let n = partition.as_ref().map_or(0, Vec::len);
                if l >= n || k >= n {
                    return Err(Error::SignatureMismatch(format!(
                        "sort pair ({l}, {k}) outside the partition of {n} sorts"
                    )));
                }
            }
        }
        for f in &forbidden {
            if f.signature() != &signature {
                return Err(Error::SignatureMismatch(
                    "forbidden structure uses a different signature".into(),
                ));
            }
        }
        Ok(ClassSpec {
            signature,
            partition,
            binary_rules,
            forbidden,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Unary symbols required to partition the domain, if any.
    pub fn partition(&self) -> Option<&[usize]> {
        self.partition.as_deref()
    }

    pub fn binary_rules(&self) -> &[BinaryRule] {
        &self.binary_rules
    }

    pub fn forbidden(&self) -> &[FinStructure] {
        &self.forbidden
    }

    pub(crate) fn rule_for(&self, symbol: usize) -> Option<&BinaryRule> {
        self.binary_rules.iter().find(|r| r.symbol == symbol)
    }

    /// The sort of a point in a member structure: the position within the
    /// partition list of the unique unary holding it.
    pub fn sort_of(&self, m: &FinStructure, point: usize) -> Option<usize> {
        let ps = self.partition.as_ref()?;
        ps.iter().position(|&u| m.has(u, &[point]))
    }

    /// Whether a binary rule admits a pair with the given sorts. Rules
    /// without sort constraints admit everything; in specs without a
    /// partition, sorts are `None` and only unconstrained rules match.
    pub(crate) fn rule_admits(rule: &BinaryRule, sa: Option<usize>, sb: Option<usize>) -> bool {
        match rule.sorts {
            None => true,
            Some((l, k)) => {
                (sa == Some(l) && sb == Some(k)) || (sa == Some(k) && sb == Some(l))
            }
        }
    }
}

/// The reason a structure fails membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotInAnySort { point: usize },
    InTwoSorts { point: usize, sorts: (String, String) },
    Reflexive { symbol: String, point: usize },
    Asymmetric { symbol: String, pair: (usize, usize) },
    WrongSorts { symbol: String, pair: (usize, usize) },
    ForbiddenSubstructure { index: usize, points: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInAnySort { point } => {
                write!(f, "point {point} lies in no sort")
            }
            Violation::InTwoSorts { point, sorts } => {
                write!(f, "point {point} lies in sorts {} and {}", sorts.0, sorts.1)
            }
            Violation::Reflexive { symbol, point } => {
                write!(f, "{symbol} holds on the diagonal at {point}")
            }
            Violation::Asymmetric { symbol, pair } => {
                write!(f, "{symbol}({}, {}) holds without its reverse", pair.0, pair.1)
            }
            Violation::WrongSorts { symbol, pair } => {
                write!(f, "{symbol}({}, {}) joins the wrong sorts", pair.0, pair.1)
            }
            Violation::ForbiddenSubstructure { index, points } => {
                write!(f, "forbidden structure #{index} induced on {points:?}")
            }
        }
    }
}

/// First membership violation of `m` against `spec`, or `None` when `m`
/// belongs to the class.
pub fn check_member(spec: &ClassSpec, m: &FinStructure) -> Result<Option<Violation>> {
    if m.signature() != spec.signature() {
        return Err(Error::SignatureMismatch(
            "structure signature differs from the class signature".into(),
        ));
    }
    if let Some(ps) = spec.partition() {
        for point in 0..m.domain_size() {
            let holding: Vec<usize> = ps
                .iter()
                .copied()
                .filter(|&u| m.has(u, &[point]))
                .collect();
            match holding.len() {
                1 => {}
                0 => return Ok(Some(Violation::NotInAnySort { point })),
                _ => {
                    return Ok(Some(Violation::InTwoSorts {
                        point,
                        sorts: (
                            spec.signature.name(holding[0]).to_string(),
                            spec.signature.name(holding[1]).to_string(),
                        ),
                    }))
                }
            }
        }
    }
    for rule in spec.binary_rules() {
        let symbol = || spec.signature.name(rule.symbol).to_string();
        for t in m.tuples(rule.symbol) {
            if t[0] == t[1] {
                return Ok(Some(Violation::Reflexive {
                    symbol: symbol(),
                    point: t[0],
                }));
            }
            if !m.has(rule.symbol, &[t[1], t[0]]) {
                return Ok(Some(Violation::Asymmetric {
                    symbol: symbol(),
                    pair: (t[0], t[1]),
                }));
            }
            if rule.sorts.is_some()
                && !ClassSpec::rule_admits(rule, spec.sort_of(m, t[0]), spec.sort_of(m, t[1]))
            {
                return Ok(Some(Violation::WrongSorts {
                    symbol: symbol(),
                    pair: (t[0], t[1]),
                }));
            }
        }
    }
    for (index, pattern) in spec.forbidden().iter().enumerate() {
        if let Some(points) = find_embedding(pattern, m)? {
            return Ok(Some(Violation::ForbiddenSubstructure { index, points }));
        }
    }
    Ok(None)
}

/// Whether `m` belongs to the class.
pub fn is_member(spec: &ClassSpec, m: &FinStructure) -> Result<bool> {
    Ok(check_member(spec, m)?.is_none())
}

/// The class of plain sets: empty signature, no constraints.
pub fn pure_set_class() -> ClassSpec {
    ClassSpec::new(Signature::empty(), None, Vec::new(), Vec::new())
        .expect("empty spec is valid")
}

/// The class of all simple graphs.
pub fn graphs_class() -> ClassSpec {
    ClassSpec::new(
        Signature::graph(),
        None,
        vec![BinaryRule {
            symbol: 0,
            sorts: None,
        }],
        Vec::new(),
    )
    .expect("graph spec is valid")
}

/// Graphs with no complete subgraph on `n >= 3` vertices.
pub fn kn_free(n: usize) -> Result<ClassSpec> {
    if n < 3 {
        return Err(Error::EnumerationUnsupported(
            "complete-subgraph bound must be at least 3".into(),
        ));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let clique = FinStructure::graph(n, &edges)?;
    ClassSpec::new(
        Signature::graph(),
        None,
        vec![BinaryRule {
            symbol: 0,
            sorts: None,
        }],
        vec![clique],
    )
}

/// Complete graphs with every vertex pair carrying exactly one of `n`
/// edge colors: symbols `E0 .. E<n-1>`, all symmetric irreflexive, with
/// every two-point configuration carrying zero or at least two colors
/// forbidden.
pub fn colored_graph(n: usize) -> Result<ClassSpec> {
    if n == 0 {
        return Err(Error::EnumerationUnsupported(
            "at least one edge color is required".into(),
        ));
    }
    let symbols: Vec<(String, usize)> = (0..n).map(|c| (format!("E{c}"), 2)).collect();
    let signature = Signature::new(symbols)?;
    let rules: Vec<BinaryRule> = (0..n)
        .map(|c| BinaryRule {
            symbol: c,
            sorts: None,
        })
        .collect();
    let mut forbidden = Vec::new();
    for mask in 0..(1u32 << n) {
        if mask.count_ones() == 1 {
            continue;
        }
        let mut f = FinStructure::with_signature(2, signature.clone());
        for c in 0..n {
            if mask & (1 << c) != 0 {
                f.add_tuple(c, vec![0, 1])?;
                f.add_tuple(c, vec![1, 0])?;
            }
        }
        forbidden.push(f);
    }
    ClassSpec::new(signature, None, rules, forbidden)
}

/// The sorted class attached to a graph: one unary sort `P<v>` per vertex
/// `v`, and for each edge `{l, k}` with `l < k` a symmetric irreflexive
/// relation `R<l>_<k>` joining sorts `l` and `k`. No forbidden list.
pub fn gamma_class(graph: &FinStructure) -> Result<ClassSpec> {
    let n = graph.domain_size();
    if graph.signature().len() != 1 || graph.signature().arity(0) != 2 {
        return Err(Error::SignatureMismatch(
            "expected a graph with a single binary symbol".into(),
        ));
    }
    for t in graph.tuples(0) {
        if t[0] == t[1] {
            return Err(Error::SignatureMismatch(format!("loop at vertex {}", t[0])));
        }
        if !graph.has(0, &[t[1], t[0]]) {
            return Err(Error::SignatureMismatch(format!(
                "directed edge ({}, {})",
                t[0], t[1]
            )));
        }
    }
    let mut symbols: Vec<(String, usize)> = (0..n).map(|v| (format!("P{v}"), 1)).collect();
    let mut rules = Vec::new();
    for (l, k) in graph.edge_pairs(0) {
        rules.push(BinaryRule {
            symbol: symbols.len(),
            sorts: Some((l, k)),
        });
        symbols.push((format!("R{l}_{k}"), 2));
    }
    let signature = Signature::new(symbols)?;
    ClassSpec::new(signature, Some((0..n).collect()), rules, Vec::new())
}
