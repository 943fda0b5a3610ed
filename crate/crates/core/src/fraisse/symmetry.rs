//! Symmetries of a class presentation: permutations of the signature
//! symbols mapping the constraint system — and hence the class — onto
//! itself. For the sorted class of a graph these are exactly the graph's
//! automorphisms acting on sorts.

use super::{enumerate_members, is_member, ClassSpec, DEFAULT_MEMBER_CAP};
use crate::perm::{GeneratedGroup, Permutation};
use crate::structure::{automorphism_group, FinStructure};
use crate::{Error, Result};
use serde::Serialize;

/// One verified symmetry: how the symbols move, and the underlying sort
/// permutation when the spec partitions its domain.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryWitness {
    pub symbol_permutation: Permutation,
    pub sort_permutation: Option<Permutation>,
}

/// All verified symmetries, as a permutation group on symbol indices.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub group: GeneratedGroup,
    pub witnesses: Vec<SymmetryWitness>,
    pub members_checked: usize,
    pub truncated: bool,
}

const SKELETON_ELEMENT_CAP: u64 = 10_000;
const BRUTE_FORCE_CAP: u128 = 200_000;

/// Finds every symbol permutation preserving the class: candidates come
/// from the constraint system's shape, and each is verified by mapping
/// all members of size at most `check_bound` through it and re-testing
/// membership. Verified symmetries are closed under composition, so the
/// result is a group.
pub fn signature_symmetry_group(spec: &ClassSpec, check_bound: usize) -> Result<SymmetryReport> {
    if check_bound < 2 {
        return Err(Error::EnumerationUnsupported(
            "symmetry verification needs a size bound of at least 2".into(),
        ));
    }
    let list = enumerate_members(spec, check_bound, DEFAULT_MEMBER_CAP)?;
    let candidates = match skeleton_candidates(spec)? {
        Some(c) => c,
        None => brute_force_candidates(spec)?,
    };
    let mut witnesses = Vec::new();
    let mut verified = Vec::new();
    for sigma in candidates {
        if list
            .members
            .iter()
            .all(|m| member_maps_inside(spec, m, &sigma))
        {
            witnesses.push(SymmetryWitness {
                sort_permutation: sort_permutation(spec, &sigma),
                symbol_permutation: sigma.clone(),
            });
            verified.push(sigma);
        }
    }
    let group = GeneratedGroup::with_degree(spec.signature().len(), verified)?;
    Ok(SymmetryReport {
        group,
        witnesses,
        members_checked: list.members.len(),
        truncated: list.truncated,
    })
}

/// The member relabeled along a symbol permutation: symbol `sigma(i)`
/// receives the tuples of symbol `i`. Membership of the image is what a
/// symmetry must preserve.
fn member_maps_inside(spec: &ClassSpec, m: &FinStructure, sigma: &Permutation) -> bool {
    let mut image = FinStructure::with_signature(m.domain_size(), spec.signature().clone());
    for sym in 0..spec.signature().len() {
        for t in m.tuples(sym) {
            if image.add_tuple(sigma.apply(sym), t.clone()).is_err() {
                return false;
            }
        }
    }
    is_member(spec, &image).unwrap_or(false)
}

/// The induced permutation of sort positions, when the spec has a
/// partition and the symbol permutation maps it onto itself.
fn sort_permutation(spec: &ClassSpec, sigma: &Permutation) -> Option<Permutation> {
    let ps = spec.partition()?;
    let images: Option<Vec<usize>> = ps
        .iter()
        .map(|&u| ps.iter().position(|&v| v == sigma.apply(u)))
        .collect();
    Permutation::from_images(images?).ok()
}

/// Candidate symmetries for fully sorted specs: a partition, every
/// binary rule carrying a distinct sort pair, and no stray symbols. The
/// sort pairs form a graph on the sorts ("skeleton"); its automorphisms
/// lift uniquely to symbol permutations, and every class symmetry must
/// be such a lift. Returns `None` when the spec is not of this shape.
fn skeleton_candidates(spec: &ClassSpec) -> Result<Option<Vec<Permutation>>> {
    let Some(ps) = spec.partition() else {
        return Ok(None);
    };
    let nsorts = ps.len();
    let sig = spec.signature();
    if ps.len() + spec.binary_rules().len() != sig.len() {
        return Ok(None); // symbols outside the constraint system
    }
    let mut edge_symbol = vec![vec![usize::MAX; nsorts]; nsorts];
    let mut edges = Vec::new();
    for rule in spec.binary_rules() {
        let Some((l, k)) = rule.sorts else {
            return Ok(None);
        };
        if l == k || edge_symbol[l][k] != usize::MAX {
            return Ok(None); // loops and parallel rules need the generic path
        }
        edge_symbol[l][k] = rule.symbol;
        edge_symbol[k][l] = rule.symbol;
        edges.push((l, k));
    }
    let skeleton = FinStructure::graph(nsorts, &edges)?;
    let aut = automorphism_group(&skeleton);
    let sort_perms = if aut.order() <= SKELETON_ELEMENT_CAP {
        aut.elements()?
    } else {
        // Too many to list: generators still generate the right group
        // because verified symmetries compose.
        aut.generators().to_vec()
    };
    let mut out = Vec::new();
    for pi in sort_perms {
        let mut images = vec![usize::MAX; sig.len()];
        for (i, &u) in ps.iter().enumerate() {
            images[u] = ps[pi.apply(i)];
        }
        for rule in spec.binary_rules() {
            let (l, k) = rule.sorts.expect("checked above");
            let target = edge_symbol[pi.apply(l)][pi.apply(k)];
            debug_assert_ne!(target, usize::MAX, "skeleton automorphism maps edges");
            images[rule.symbol] = target;
        }
        out.push(Permutation::from_images(images)?);
    }
    Ok(Some(out))
}

/// Candidate symmetries for everything else: all arity-preserving symbol
/// permutations compatible with the constraint system, by backtracking
/// over symbols in order.
fn brute_force_candidates(spec: &ClassSpec) -> Result<Vec<Permutation>> {
    let sig = spec.signature();
    let n = sig.len();
    // Bound the raw search space by the product of arity-class sizes.
    let mut class_sizes: std::collections::BTreeMap<usize, u128> = Default::default();
    for i in 0..n {
        *class_sizes.entry(sig.arity(i)).or_insert(0) += 1;
    }
    let space: u128 = class_sizes
        .values()
        .map(|&c| (1..=c).product::<u128>())
        .product();
    if space > BRUTE_FORCE_CAP {
        return Err(Error::EnumerationUnsupported(format!(
            "{space} candidate symbol permutations exceed the search cap"
        )));
    }
    let in_partition: Vec<bool> = {
        let mut v = vec![false; n];
        if let Some(ps) = spec.partition() {
            for &u in ps {
                v[u] = true;
            }
        }
        v
    };
    let mut out = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(spec, &in_partition, 0, &mut images, &mut used, &mut out)?;
    Ok(out)
}

fn search(
    spec: &ClassSpec,
    in_partition: &[bool],
    sym: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) -> Result<()> {
    let sig = spec.signature();
    if sym == sig.len() {
        out.push(Permutation::from_images(images.clone())?);
        return Ok(());
    }
    for target in 0..sig.len() {
        if used[target]
            || sig.arity(target) != sig.arity(sym)
            || in_partition[target] != in_partition[sym]
        {
            continue;
        }
        // Rules must transport to rules; sort pairs must be consistent
        // with the partial sort map determined so far.
        match (spec.rule_for(sym), spec.rule_for(target)) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                if !sorts_compatible(spec, a.sorts, b.sorts, images) {
                    continue;
                }
            }
            _ => continue,
        }
        images[sym] = target;
        used[target] = true;
        search(spec, in_partition, sym + 1, images, used, out)?;
        images[sym] = usize::MAX;
        used[target] = false;
    }
    Ok(())
}

/// Whether mapping a rule with sorts `a` onto one with sorts `b` agrees
/// with the sort images already pinned down by the partial symbol map.
fn sorts_compatible(
    spec: &ClassSpec,
    a: Option<(usize, usize)>,
    b: Option<(usize, usize)>,
    images: &[usize],
) -> bool {
    let ps = match spec.partition() {
        Some(ps) => ps,
        None => return a.is_none() && b.is_none(),
    };
    match (a, b) {
        (None, None) => true,
        (Some((al, ak)), Some((bl, bk))) => {
            // The sort map is determined where partition unaries are
            // already assigned.
            let image_of = |s: usize| -> Option<usize> {
                let u = ps[s];
                if images[u] == usize::MAX {
                    None
                } else {
                    ps.iter().position(|&v| v == images[u])
                }
            };
            let want = (image_of(al), image_of(ak));
            let fits = |x: Option<usize>, y: usize| x.is_none_or(|v| v == y);
            (fits(want.0, bl) && fits(want.1, bk)) || (fits(want.0, bk) && fits(want.1, bl))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{colored_graph, gamma_class, graphs_class, kn_free, pure_set_class};
    use crate::perm::{group_isomorphic, named_group, FiniteGroup};
    use crate::playground;

    fn as_table(report: &SymmetryReport) -> FiniteGroup {
        FiniteGroup::from_generated(&report.group).unwrap()
    }

    #[test]
    fn triangle_class_symmetries_match_the_triangle() {
        let spec = gamma_class(&playground::complete(3)).unwrap();
        let report = signature_symmetry_group(&spec, 3).unwrap();
        assert_eq!(report.group.order(), 6);
        let s3 = named_group("S3").unwrap();
        assert!(group_isomorphic(&as_table(&report), &s3)
            .unwrap()
            .is_some());
        // Witnesses carry sort permutations.
        assert!(report
            .witnesses
            .iter()
            .all(|w| w.sort_permutation.is_some()));
    }

    #[test]
    fn edge_colors_permute_freely() {
        for n in [2usize, 3] {
            let spec = colored_graph(n).unwrap();
            let report = signature_symmetry_group(&spec, 3).unwrap();
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(report.group.order(), expected, "colors: {n}");
        }
    }

    #[test]
    fn clique_free_graphs_have_no_symmetry() {
        let spec = kn_free(3).unwrap();
        let report = signature_symmetry_group(&spec, 3).unwrap();
        assert_eq!(report.group.order(), 1);
        assert_eq!(report.witnesses.len(), 1);
    }

    #[test]
    fn plain_specs_have_single_symbols_or_none() {
        assert_eq!(
            signature_symmetry_group(&graphs_class(), 2)
                .unwrap()
                .group
                .order(),
            1
        );
        assert_eq!(
            signature_symmetry_group(&pure_set_class(), 2)
                .unwrap()
                .group
                .order(),
            1
        );
    }

    #[test]
    fn path_class_symmetry_is_the_path_reversal() {
        let spec = gamma_class(&playground::path(4)).unwrap();
        let report = signature_symmetry_group(&spec, 3).unwrap();
        assert_eq!(report.group.order(), 2);
        let flip = report
            .witnesses
            .iter()
            .find(|w| !w.symbol_permutation.is_identity())
            .unwrap();
        let pi = flip.sort_permutation.as_ref().unwrap();
        assert_eq!(pi.images(), &[3, 2, 1, 0]);
    }

    #[test]
    fn asymmetric_graph_class_has_trivial_symmetry() {
        // The smallest asymmetric tree: arms of lengths 1, 2, 3 joined
        // at a center (seven vertices, trivial automorphism group).
        let tree =
            FinStructure::graph(7, &[(3, 0), (3, 1), (1, 2), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(automorphism_group(&tree).order(), 1);
        let spec = gamma_class(&tree).unwrap();
        let report = signature_symmetry_group(&spec, 2).unwrap();
        assert_eq!(report.group.order(), 1);
    }

    #[test]
    fn sorted_square_class_matches_the_square() {
        let spec = gamma_class(&playground::cycle(4)).unwrap();
        let report = signature_symmetry_group(&spec, 3).unwrap();
        assert_eq!(report.group.order(), 8);
        let d4 = named_group("D4").unwrap();
        assert!(group_isomorphic(&as_table(&report), &d4)
            .unwrap()
            .is_some());
    }
}
