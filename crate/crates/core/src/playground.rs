//! Small named structures used as test beds.
//!
//! The homogeneous presets are pure sets, cycles up to the pentagon, the
//! 3x3 rook's graph, and disjoint unions of equal-size cliques; paths and
//! longer cycles are deliberately inhomogeneous examples.

use crate::structure::FinStructure;

/// A set with no relations at all (empty signature).
pub fn pure_set(n: usize) -> FinStructure {
    FinStructure::pure_set(n)
}

/// A graph with no edges (graph signature, empty edge set).
pub fn edgeless(n: usize) -> FinStructure {
    FinStructure::graph(n, &[]).expect("no edges to reject")
}

/// The cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> FinStructure {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    FinStructure::graph(n, &edges).expect("cycle edges are valid")
}

/// The path on `n >= 2` vertices.
pub fn path(n: usize) -> FinStructure {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    FinStructure::graph(n, &edges).expect("path edges are valid")
}

/// The `k x k` rook's graph: vertices are cells, edges join cells in the
/// same row or column.
pub fn rook(k: usize) -> FinStructure {
    let id = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            for c2 in c + 1..k {
                edges.push((id(r, c), id(r, c2)));
            }
            for r2 in r + 1..k {
                edges.push((id(r, c), id(r2, c)));
            }
        }
    }
    FinStructure::graph(k * k, &edges).expect("rook edges are valid")
}

/// `k` disjoint cliques with `m` vertices each.
pub fn cliques(k: usize, m: usize) -> FinStructure {
    let mut edges = Vec::new();
    for b in 0..k {
        for i in 0..m {
            for j in i + 1..m {
                edges.push((b * m + i, b * m + j));
            }
        }
    }
    FinStructure::graph(k * m, &edges).expect("clique edges are valid")
}

/// The complete graph on `n` vertices.
pub fn complete(n: usize) -> FinStructure {
    cliques(1, n)
}

/// Looks up a structure by compact name: `pure<n>`, `edgeless<n>`,
/// `c<n>` or `cycle<n>`, `path<n>`, `rook<k>`, `k<n>` (complete graph),
/// and `cliques<k>x<m>`.
pub fn by_name(name: &str) -> Option<FinStructure> {
    let lower = name.to_ascii_lowercase();
    let tail_num = |prefix: &str| -> Option<usize> {
        lower.strip_prefix(prefix)?.parse().ok()
    };
    if let Some(rest) = lower.strip_prefix("cliques") {
        let (k, m) = rest.split_once('x')?;
        let k: usize = k.parse().ok()?;
        let m: usize = m.parse().ok()?;
        if k == 0 || m == 0 {
            return None;
        }
        return Some(cliques(k, m));
    }
    if let Some(n) = tail_num("pure") {
        return Some(pure_set(n));
    }
    if let Some(n) = tail_num("edgeless") {
        return Some(edgeless(n));
    }
    if let Some(n) = tail_num("cycle").or_else(|| tail_num("c")) {
        return (n >= 3).then(|| cycle(n));
    }
    if let Some(n) = tail_num("path") {
        return (n >= 2).then(|| path(n));
    }
    if let Some(k) = tail_num("rook") {
        return (k >= 2).then(|| rook(k));
    }
    if let Some(n) = tail_num("k") {
        return (n >= 1).then(|| complete(n));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{automorphism_group, is_homogeneous};

    #[test]
    fn rook_graph_shape() {
        let r = rook(3);
        assert_eq!(r.domain_size(), 9);
        // Each vertex has degree 4, so 9 * 4 / 2 = 18 edges.
        assert_eq!(r.tuple_count(0), 36);
    }

    #[test]
    fn rook_graph_automorphisms() {
        // Row/column permutations and the transpose: 3! * 3! * 2 = 72.
        assert_eq!(automorphism_group(&rook(3)).order(), 72);
    }

    #[test]
    fn rook_graph_is_homogeneous() {
        assert!(is_homogeneous(&rook(3)).unwrap().homogeneous);
    }

    #[test]
    fn clique_unions_are_homogeneous() {
        let m = cliques(2, 3);
        assert_eq!(automorphism_group(&m).order(), 72);
        assert!(is_homogeneous(&m).unwrap().homogeneous);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("pure5").unwrap().domain_size(), 5);
        assert_eq!(by_name("c5").unwrap().tuple_count(0), 10);
        assert_eq!(by_name("rook3").unwrap().domain_size(), 9);
        assert_eq!(by_name("cliques2x3").unwrap().domain_size(), 6);
        assert_eq!(by_name("k4").unwrap().tuple_count(0), 12);
        assert_eq!(by_name("path4").unwrap().domain_size(), 4);
        assert!(by_name("c2").is_none());
        assert!(by_name("nothing").is_none());
    }
}
