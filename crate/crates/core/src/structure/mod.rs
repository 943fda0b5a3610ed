//! Finite relational structures and maps between them.

mod aut;
pub(crate) mod closure;

pub use aut::{automorphism_group, refine_colors};
pub use closure::{
    acl_threshold, canonical_relational, dcl, is_homogeneous, HomogeneityReport,
    HomogeneityWitness,
};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A finite relational signature: named symbols with positive arities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, arity) in &symbols {
            if *arity == 0 {
                return Err(Error::SignatureMismatch(format!(
                    "symbol {name} has arity 0"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::SignatureMismatch(format!("duplicate symbol {name}")));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn empty() -> Self {
        Signature { symbols: Vec::new() }
    }

    pub fn graph() -> Self {
        Signature {
            symbols: vec![("E".to_string(), 2)],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.symbols[idx].0
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.symbols[idx].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(n, _)| n == name)
    }
}

/// A finite structure: a domain `{0, .., n-1}` and one tuple set per
/// signature symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinStructure {
    domain_size: usize,
    signature: Signature,
    tables: Vec<BTreeSet<Vec<usize>>>,
}

impl FinStructure {
    /// Empty tables over the given signature.
    pub fn with_signature(domain_size: usize, signature: Signature) -> Self {
        let tables = vec![BTreeSet::new(); signature.len()];
        FinStructure {
            domain_size,
            signature,
            tables,
        }
    }

    /// A structure with no relation symbols at all.
    pub fn pure_set(domain_size: usize) -> Self {
        Self::with_signature(domain_size, Signature::empty())
    }

    /// A graph on `n` vertices; edges are stored in both orientations.
    /// Rejects loops and out-of-range endpoints.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut s = Self::with_signature(n, Signature::graph());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SignatureMismatch(format!("loop at {u}")));
            }
            s.add_tuple(0, vec![u, v])?;
            s.add_tuple(0, vec![v, u])?;
        }
        Ok(s)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn add_tuple(&mut self, sym: usize, tuple: Vec<usize>) -> Result<()> {
        if sym >= self.signature.len() {
            return Err(Error::UnknownSymbol(format!("#{sym}")));
        }
        let arity = self.signature.arity(sym);
        if tuple.len() != arity {
            return Err(Error::ArityMismatch {
                symbol: self.signature.name(sym).to_string(),
                arity,
                tuple,
            });
        }
        for &p in &tuple {
            if p >= self.domain_size {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.domain_size,
                });
            }
        }
        self.tables[sym].insert(tuple);
        Ok(())
    }

    pub fn has(&self, sym: usize, tuple: &[usize]) -> bool {
        self.tables[sym].contains(tuple)
    }

    pub fn tuples(&self, sym: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.tables[sym].iter()
    }

    pub fn tuple_count(&self, sym: usize) -> usize {
        self.tables[sym].len()
    }

    /// Edge list of a graph-signature structure, each pair once.
    pub fn edge_pairs(&self, sym: usize) -> Vec<(usize, usize)> {
        self.tables[sym]
            .iter()
            .filter(|t| t.len() == 2 && t[0] < t[1])
            .map(|t| (t[0], t[1]))
            .collect()
    }

    /// The substructure induced on `points` (sorted, deduplicated), with
    /// the new domain renumbered `0..k`. Also returns the point list, so
    /// `returned.1[i]` is the original name of new point `i`.
    pub fn induced(&self, points: &[usize]) -> Result<(FinStructure, Vec<usize>)> {
        let mut pts: Vec<usize> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        for &p in &pts {
            if p >= self.domain_size {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.domain_size,
                });
            }
        }
        let mut out = FinStructure::with_signature(pts.len(), self.signature.clone());
        for (sym, table) in self.tables.iter().enumerate() {
            for tuple in table {
                let mapped: Option<Vec<usize>> = tuple
                    .iter()
                    .map(|p| pts.binary_search(p).ok())
                    .collect();
                if let Some(t) = mapped {
                    out.tables[sym].insert(t);
                }
            }
        }
        Ok((out, pts))
    }

    /// The same structure with `extra` fresh isolated points appended.
    pub fn extended(&self, extra: usize) -> FinStructure {
        let mut out = self.clone();
        out.domain_size += extra;
        out
    }

    /// Removes every tuple of `sym` equal to `tuple` (used to strip a
    /// single fact; callers handle symmetric pairs themselves).
    pub fn remove_tuple(&mut self, sym: usize, tuple: &[usize]) {
        self.tables[sym].remove(tuple);
    }

    /// Relabels the structure along a bijection of its domain:
    /// point `p` becomes `f(p)`.
    pub fn relabel(&self, f: &crate::perm::Permutation) -> Result<FinStructure> {
        if f.degree() != self.domain_size {
            return Err(Error::DegreeMismatch(f.degree(), self.domain_size));
        }
        let mut out = FinStructure::with_signature(self.domain_size, self.signature.clone());
        for (sym, table) in self.tables.iter().enumerate() {
            for tuple in table {
                out.tables[sym].insert(tuple.iter().map(|&p| f.apply(p)).collect());
            }
        }
        Ok(out)
    }

    /// Whether `f` (given as an image vector) is an automorphism.
    pub fn is_automorphism(&self, f: &crate::perm::Permutation) -> bool {
        if f.degree() != self.domain_size {
            return false;
        }
        self.tables.iter().all(|table| {
            table.iter().all(|tuple| {
                table.contains(&tuple.iter().map(|&p| f.apply(p)).collect::<Vec<_>>())
            })
        })
    }

    /// Lexicographically least relabeling of the structure. Quadratic in
    /// the number of relabelings (n!), so intended for small domains.
    pub fn canonical_form(&self) -> FinStructure {
        let n = self.domain_size;
        if n <= 1 {
            return self.clone();
        }
        let mut best: Option<FinStructure> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let f = crate::perm::Permutation::from_images(perm.clone()).expect("permutation");
            let candidate = self.relabel(&f).expect("degree matches");
            best = match best {
                None => Some(candidate),
                Some(b) if candidate < b => Some(candidate),
                Some(b) => Some(b),
            };
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least one relabeling")
    }

    /// Atomic type of an ordered tuple of distinct points: for each symbol
    /// the set of index patterns realized inside the tuple.
    pub fn ordered_type(&self, tuple: &[usize]) -> Vec<BTreeSet<Vec<usize>>> {
        let index_of = |p: usize| tuple.iter().position(|&q| q == p);
        self.tables
            .iter()
            .map(|table| {
                table
                    .iter()
                    .filter_map(|t| {
                        t.iter()
                            .map(|&p| index_of(p))
                            .collect::<Option<Vec<usize>>>()
                    })
                    .collect()
            })
            .collect()
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All induced embeddings of `a` into `m`, as image vectors (`out[i]` is
/// where point `i` of `a` lands). Sorted lexicographically.
pub fn embeddings(a: &FinStructure, m: &FinStructure) -> Result<Vec<Vec<usize>>> {
    search_embeddings(a, m, false)
}

/// Whether `a` embeds into `m` as an induced substructure.
pub fn embeds(a: &FinStructure, m: &FinStructure) -> Result<bool> {
    Ok(!search_embeddings(a, m, true)?.is_empty())
}

/// The lexicographically first induced embedding of `a` into `m`, if any.
pub fn find_embedding(a: &FinStructure, m: &FinStructure) -> Result<Option<Vec<usize>>> {
    Ok(search_embeddings(a, m, true)?.into_iter().next())
}

/// Whether `map` is an induced embedding of `a` into `m`: injective, and
/// tuple membership transfers in both directions on the image.
pub fn is_embedding(a: &FinStructure, m: &FinStructure, map: &[usize]) -> bool {
    if a.signature != m.signature || map.len() != a.domain_size {
        return false;
    }
    let mut seen = vec![false; m.domain_size];
    for &w in map {
        if w >= m.domain_size || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for (sym, table) in a.tables.iter().enumerate() {
        for tuple in table {
            let image: Vec<usize> = tuple.iter().map(|&p| map[p]).collect();
            if !m.has(sym, &image) {
                return false;
            }
        }
    }
    for (sym, table) in m.tables.iter().enumerate() {
        for tuple in table {
            let pre: Option<Vec<usize>> = tuple
                .iter()
                .map(|&q| map.iter().position(|&x| x == q))
                .collect();
            if let Some(p) = pre {
                if !a.has(sym, &p) {
                    return false;
                }
            }
        }
    }
    true
}

fn search_embeddings(
    a: &FinStructure,
    m: &FinStructure,
    stop_at_first: bool,
) -> Result<Vec<Vec<usize>>> {
    if a.signature != m.signature {
        return Err(Error::SignatureMismatch(
            "embedding requires equal signatures".into(),
        ));
    }
    let k = a.domain_size;
    let n = m.domain_size;
    if k > n {
        return Ok(Vec::new());
    }
    // Tuples of `a` indexed by their largest point, so each is checked as
    // soon as it is fully assigned.
    let mut a_by_last: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); k.max(1)];
    for (sym, table) in a.tables.iter().enumerate() {
        for tuple in table {
            let last = tuple.iter().copied().max().unwrap_or(0);
            a_by_last[last].push((sym, tuple));
        }
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; n];
    fn consistent(
        a: &FinStructure,
        m: &FinStructure,
        a_by_last: &[Vec<(usize, &Vec<usize>)>],
        map: &[usize],
        v: usize,
    ) -> bool {
        // Forward: every a-tuple now fully assigned must land in m.
        for &(sym, tuple) in &a_by_last[v] {
            let image: Vec<usize> = tuple.iter().map(|&p| map[p]).collect();
            if !m.has(sym, &image) {
                return false;
            }
        }
        // Backward: every m-tuple inside the current image with the newly
        // assigned point must pull back into a.
        let assigned: Vec<usize> = map[..=v].to_vec();
        let w = map[v];
        for (sym, table) in m.tables.iter().enumerate() {
            for tuple in table {
                if !tuple.contains(&w) {
                    continue;
                }
                let pre: Option<Vec<usize>> = tuple
                    .iter()
                    .map(|&q| assigned.iter().position(|&x| x == q))
                    .collect();
                if let Some(p) = pre {
                    if !a.has(sym, &p) {
                        return false;
                    }
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        a: &FinStructure,
        m: &FinStructure,
        a_by_last: &[Vec<(usize, &Vec<usize>)>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        out: &mut Vec<Vec<usize>>,
        stop_at_first: bool,
    ) {
        if stop_at_first && !out.is_empty() {
            return;
        }
        if v == a.domain_size {
            out.push(map.clone());
            return;
        }
        for w in 0..m.domain_size {
            if used[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if consistent(a, m, a_by_last, map, v) {
                rec(a, m, a_by_last, map, used, v + 1, out, stop_at_first);
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    rec(a, m, &a_by_last, &mut map, &mut used, 0, &mut out, stop_at_first);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn path(n: usize) -> FinStructure {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        FinStructure::graph(n, &edges).unwrap()
    }

    #[test]
    fn graph_stores_both_orientations() {
        let g = FinStructure::graph(3, &[(0, 1)]).unwrap();
        assert!(g.has(0, &[0, 1]));
        assert!(g.has(0, &[1, 0]));
        assert!(!g.has(0, &[0, 2]));
        assert!(FinStructure::graph(3, &[(1, 1)]).is_err());
        assert!(FinStructure::graph(3, &[(0, 7)]).is_err());
    }

    #[test]
    fn induced_substructure_of_a_path() {
        let p4 = path(4);
        let (sub, pts) = p4.induced(&[0, 1, 3]).unwrap();
        assert_eq!(pts, vec![0, 1, 3]);
        assert_eq!(sub.domain_size(), 3);
        assert!(sub.has(0, &[0, 1]));
        assert!(!sub.has(0, &[1, 2]));
        assert_eq!(sub.tuple_count(0), 2);
    }

    #[test]
    fn embeddings_of_an_edge_into_a_triangle() {
        let edge = FinStructure::graph(2, &[(0, 1)]).unwrap();
        let triangle = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let embs = embeddings(&edge, &triangle).unwrap();
        // Every ordered pair of distinct vertices.
        assert_eq!(embs.len(), 6);
        assert_eq!(embs[0], vec![0, 1]);
    }

    #[test]
    fn embeddings_are_induced() {
        // A non-edge cannot embed onto an edge.
        let non_edge = FinStructure::graph(2, &[]).unwrap();
        let triangle = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(embeddings(&non_edge, &triangle).unwrap().is_empty());
        // In a path 0-1-2, the non-edge {0,2} is the only one.
        let embs = embeddings(&non_edge, &path(3)).unwrap();
        assert_eq!(embs, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn embedding_requires_equal_signatures() {
        let a = FinStructure::pure_set(2);
        let g = FinStructure::graph(3, &[]).unwrap();
        assert!(matches!(
            embeddings(&a, &g),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn relabel_moves_tuples() {
        let g = FinStructure::graph(3, &[(0, 1)]).unwrap();
        let f = Permutation::from_cycles(3, "(0 2)").unwrap();
        let h = g.relabel(&f).unwrap();
        assert!(h.has(0, &[2, 1]));
        assert!(!h.has(0, &[0, 1]));
    }

    #[test]
    fn canonical_form_identifies_isomorphic_graphs() {
        let a = FinStructure::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = FinStructure::graph(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        // b is the path 2-0-3-1, isomorphic to a.
        assert_eq!(a.canonical_form(), b.canonical_form());
        let c = FinStructure::graph(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_ne!(a.canonical_form(), c.canonical_form());
    }

    #[test]
    fn automorphism_check() {
        let square = FinStructure::graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(square.is_automorphism(&Permutation::from_cycles(4, "(0 1 2 3)").unwrap()));
        assert!(!square.is_automorphism(&Permutation::from_cycles(4, "(0 1)").unwrap()));
    }

    #[test]
    fn ordered_type_distinguishes_edge_direction_patterns() {
        let p = path(3);
        let t1 = p.ordered_type(&[0, 1]);
        let t2 = p.ordered_type(&[1, 2]);
        let t3 = p.ordered_type(&[0, 2]);
        assert_eq!(t1, t2);
        assert_ne!(t1, t3);
    }
}
