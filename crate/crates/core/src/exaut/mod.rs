//! Stabilizer lattices over closed point sets.
//!
//! A finite structure and a closure operator yield a family of closed
//! subsets; each closed set `K` and each subgroup `L` of the induced
//! automorphism group cut out the subgroup of full automorphisms whose
//! restriction to `K` lies in `L`. [`build_exaut`] assembles the whole
//! two-sorted picture — sets, pairs, order relations, transport tables,
//! and the pair-to-subgroup map — and the verifiers in [`verify`] test
//! its structural identities exhaustively.

mod model;
mod verify;

pub use model::{build_exaut, EAPair, ExAutModel, SubgroupHandle};
pub use verify::{
    inner_automorphism, verify_char_l, verify_char_pointwise, verify_equivariance,
    verify_equivariance_all_inner, verify_injectivity, verify_leq_correspondence,
    verify_op_shapes, verify_prop_normality,
};

use crate::fraisse::{class_acl, ClassSpec};
use crate::perm::{GeneratedGroup, Permutation};
use crate::structure::closure::acl_threshold_with;
use crate::structure::{automorphism_group, FinStructure};
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// Cap on the number of seed subsets [`enumerate_a`] will close.
const SUBSET_CAP: usize = 100_000;

/// Closure operator used to assemble closed-set families.
#[derive(Clone, Debug)]
pub enum ClosureKind {
    /// Points fixed by every automorphism fixing the seed pointwise.
    Dcl,
    /// Points whose orbit under the pointwise stabilizer of the seed
    /// has size at most the threshold; threshold 1 is [`ClosureKind::Dcl`].
    Threshold(usize),
    /// Points that cannot be duplicated over the seed inside a class:
    /// see [`class_acl`].
    ClassAcl { spec: ClassSpec, copies: usize },
}

impl ClosureKind {
    fn apply(&self, m: &FinStructure, aut: &GeneratedGroup, seed: &[usize]) -> Result<Vec<usize>> {
        match self {
            ClosureKind::Dcl => acl_threshold_with(aut, seed, 1),
            ClosureKind::Threshold(t) => acl_threshold_with(aut, seed, *t),
            ClosureKind::ClassAcl { spec, copies } => class_acl(spec, m, seed, *copies),
        }
    }

    /// Least closed superset of `seed`: applies the operator until the
    /// output stabilizes. One application need not be enough — fixing
    /// more points only shrinks stabilizer orbits, so the output of one
    /// round is a valid seed for the next.
    pub fn close(
        &self,
        m: &FinStructure,
        aut: &GeneratedGroup,
        seed: &[usize],
    ) -> Result<Vec<usize>> {
        let mut cur: Vec<usize> = seed.to_vec();
        cur.sort_unstable();
        cur.dedup();
        loop {
            let next = self.apply(m, aut, &cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }
}

/// Closed subsets reachable from seeds of bounded size, closed under
/// pairwise intersection.
#[derive(Clone, Debug)]
pub struct ClosedFamily {
    pub base: FinStructure,
    pub closure_kind: ClosureKind,
    pub size_bound: usize,
    /// Sorted point sets, ascending by size then lexicographically.
    pub sets: Vec<Vec<usize>>,
}

/// Size-then-lexicographic order on sorted point sets.
fn set_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl ClosedFamily {
    pub fn index_of(&self, k: &[usize]) -> Option<usize> {
        self.sets.binary_search_by(|s| set_order(s, k)).ok()
    }
}

/// Closures of every subset of at most `size_bound` points, then the
/// closures of all pairwise intersections until nothing new appears.
/// For the orbit-based operators an intersection of closed sets is
/// already closed (the operators are monotone and idempotent once
/// iterated); re-closing costs little and keeps the family honest for
/// class-based operators.
pub fn enumerate_a(
    m: &FinStructure,
    closure_kind: ClosureKind,
    size_bound: usize,
) -> Result<ClosedFamily> {
    let aut = automorphism_group(m);
    let mut seeds: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..size_bound {
        let mut next = Vec::new();
        for s in &frontier {
            let lo = s.last().map_or(0, |&x| x + 1);
            for v in lo..m.domain_size() {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        seeds.extend(next.iter().cloned());
        if seeds.len() > SUBSET_CAP {
            return Err(Error::EnumerationUnsupported(format!(
                "more than {SUBSET_CAP} seed subsets"
            )));
        }
        frontier = next;
    }

    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &seeds {
        sets.insert(closure_kind.close(m, &aut, s)?);
    }
    loop {
        let snapshot: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let inter: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                if sets.contains(&inter) {
                    continue;
                }
                grew |= sets.insert(closure_kind.close(m, &aut, &inter)?);
            }
        }
        if !grew {
            break;
        }
    }

    let mut list: Vec<Vec<usize>> = sets.into_iter().collect();
    list.sort_by(|a, b| set_order(a, b));
    Ok(ClosedFamily {
        base: m.clone(),
        closure_kind,
        size_bound,
        sets: list,
    })
}

/// The subgroup of `g` whose elements map `k` onto itself with
/// restriction inside `l` (`l` acts on positions of the sorted set).
/// Sits between the pointwise and setwise stabilizers of `k`: it is
/// generated by the pointwise stabilizer together with one setwise
/// element per restriction lying in `l`.
///
/// `l` must embed into the group of restrictions of setwise-stabilizing
/// elements; on a homogeneous structure that restriction group is the
/// full automorphism group of the induced substructure, so the check
/// enforces the usual pairing precondition.
pub fn g_kl(g: &GeneratedGroup, k: &[usize], l: &GeneratedGroup) -> Result<GeneratedGroup> {
    let mut pts: Vec<usize> = k.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if l.degree() != pts.len() {
        return Err(Error::DegreeMismatch(l.degree(), pts.len()));
    }
    let setwise = g.setwise_stabilizer(&pts)?;
    let pointwise = g.pointwise_stabilizer(&pts)?;
    // One representative per distinct restriction.
    let mut reps: HashMap<Permutation, Permutation> = HashMap::new();
    for e in setwise.elements()? {
        let r = e.restriction(&pts)?;
        reps.entry(r).or_insert(e);
    }
    if l.generators().iter().any(|x| !reps.contains_key(x)) {
        return Err(Error::NotASubgroupOfAutK);
    }
    let mut gens = pointwise.generators().to_vec();
    for (r, e) in reps {
        if l.contains(&r) {
            gens.push(e);
        }
    }
    GeneratedGroup::with_degree(g.degree(), gens)
}

/// Verdict on whether restriction maps the setwise stabilizer of a set
/// onto the full automorphism group of the induced substructure.
#[derive(Clone, Debug)]
pub struct StarReport {
    pub holds: bool,
    /// Order of setwise / pointwise, i.e. of the restriction image.
    pub quotient_order: u64,
    pub induced_aut_order: u64,
    /// An induced-substructure automorphism (on positions of the sorted
    /// set) that no full automorphism restricts to.
    pub non_extendable: Option<Permutation>,
}

/// The restriction map from the setwise stabilizer of `k` to the
/// automorphism group of the induced substructure has kernel exactly
/// the pointwise stabilizer, so the quotient embeds; the interesting
/// question is surjectivity — whether every induced automorphism
/// extends. Homogeneity guarantees it; this measures it.
pub fn verify_star(m: &FinStructure, k: &[usize]) -> Result<StarReport> {
    let mut pts: Vec<usize> = k.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let aut = automorphism_group(m);
    let setwise = aut.setwise_stabilizer(&pts)?;
    let pointwise = aut.pointwise_stabilizer(&pts)?;
    let mut restrictions: BTreeSet<Permutation> = BTreeSet::new();
    for e in setwise.elements()? {
        restrictions.insert(e.restriction(&pts)?);
    }
    let induced_aut = automorphism_group(&m.induced(&pts)?.0);
    let induced_order = induced_aut.order();
    let quotient_order = setwise.order() / pointwise.order();
    debug_assert_eq!(restrictions.len() as u64, quotient_order);
    let non_extendable = if (restrictions.len() as u64) < induced_order {
        induced_aut
            .elements()?
            .into_iter()
            .find(|p| !restrictions.contains(p))
    } else {
        None
    };
    Ok(StarReport {
        holds: non_extendable.is_none(),
        quotient_order,
        induced_aut_order: induced_order,
        non_extendable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::playground;

    #[test]
    fn bounded_family_of_an_edgeless_graph_is_all_small_subsets() {
        let m = playground::edgeless(4);
        let fam = enumerate_a(&m, ClosureKind::Dcl, 2).unwrap();
        // Empty set, 4 singletons, 6 pairs.
        assert_eq!(fam.sets.len(), 11);
        assert_eq!(fam.sets[0], Vec::<usize>::new());
        assert!(fam.index_of(&[1, 3]).is_some());
        assert!(fam.index_of(&[0, 1, 2]).is_none());
    }

    #[test]
    fn bound_zero_keeps_only_the_empty_closure() {
        let m = playground::cycle(5);
        let fam = enumerate_a(&m, ClosureKind::Dcl, 0).unwrap();
        assert_eq!(fam.sets, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn pairs_in_a_five_cycle_close_to_the_whole_domain() {
        let m = playground::cycle(5);
        let fam = enumerate_a(&m, ClosureKind::Dcl, 2).unwrap();
        // Empty set, singletons, and the full domain: a pair's pointwise
        // stabilizer in the dihedral group is trivial.
        assert_eq!(fam.sets.len(), 7);
        assert_eq!(fam.sets[6], vec![0, 1, 2, 3, 4]);
        assert!(fam.index_of(&[0, 1]).is_none());
    }

    #[test]
    fn rook_rows_are_closed() {
        let m = playground::rook(3);
        let fam = enumerate_a(&m, ClosureKind::Dcl, 2).unwrap();
        // Two points in a shared line close to the line; the closure of
        // two non-collinear points is the diagonal through them.
        assert!(fam.index_of(&[0, 1, 2]).is_some());
        assert!(fam.index_of(&[0, 4, 8]).is_some());
        assert!(fam.index_of(&[0, 1]).is_none());
    }

    #[test]
    fn threshold_two_on_a_six_cycle_pulls_in_antipodes() {
        let m = playground::cycle(6);
        // The stabilizer of a vertex keeps its antipode in an orbit of
        // size 1 and the two neighbor pairs in orbits of size 2.
        let fam = enumerate_a(&m, ClosureKind::Threshold(2), 1).unwrap();
        let with_zero = fam.sets.iter().find(|s| s.contains(&0)).unwrap();
        assert_eq!(*with_zero, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn class_closure_matches_duplication_failures() {
        use crate::fraisse::graphs_class;
        let m = playground::path(3);
        let kind = ClosureKind::ClassAcl {
            spec: graphs_class(),
            copies: 2,
        };
        // Graphs amalgamate freely: every point duplicates, closures add
        // nothing.
        let fam = enumerate_a(&m, kind, 1).unwrap();
        assert_eq!(fam.sets.len(), 4);
    }

    #[test]
    fn local_group_carves_the_expected_subgroup() {
        let g = GeneratedGroup::symmetric(4);
        let trivial = GeneratedGroup::trivial(2);
        let full = GeneratedGroup::symmetric(2);
        assert_eq!(g_kl(&g, &[0, 1], &trivial).unwrap().order(), 2);
        assert_eq!(g_kl(&g, &[0, 1], &full).unwrap().order(), 4);

        let s5 = GeneratedGroup::symmetric(5);
        let rot = GeneratedGroup::from_generators(&[Permutation::from_cycles(3, "(0 1 2)")
            .unwrap()])
        .unwrap();
        let h = g_kl(&s5, &[0, 1, 2], &rot).unwrap();
        assert_eq!(h.order(), 6);
        for e in h.elements().unwrap() {
            assert!(rot.contains(&e.restriction(&[0, 1, 2]).unwrap()));
        }
    }

    #[test]
    fn local_group_must_act_on_the_set() {
        let g = GeneratedGroup::symmetric(4);
        assert!(matches!(
            g_kl(&g, &[0, 1], &GeneratedGroup::symmetric(3)),
            Err(Error::DegreeMismatch(3, 2))
        ));
    }

    #[test]
    fn local_group_outside_the_restriction_image_is_rejected() {
        // In a path, the only automorphism is the reversal; the swap of
        // the two endpoints of one edge is not a restriction of it.
        let m = playground::path(4);
        let aut = automorphism_group(&m);
        assert!(matches!(
            g_kl(&aut, &[0, 1], &GeneratedGroup::symmetric(2)),
            Err(Error::NotASubgroupOfAutK)
        ));
    }

    #[test]
    fn star_holds_on_pure_sets_and_cycles() {
        let m = FinStructure::pure_set(5);
        let r = verify_star(&m, &[0, 1]).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotient_order, 2);

        let c5 = playground::cycle(5);
        let r = verify_star(&c5, &[0, 1]).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotient_order, 2);
        assert_eq!(r.induced_aut_order, 2);
    }

    #[test]
    fn star_fails_on_an_edge_of_a_path() {
        // Swapping the endpoints of the edge {0,1} is an automorphism of
        // the induced edge but extends to nothing: the path is not
        // homogeneous.
        let m = playground::path(4);
        let r = verify_star(&m, &[0, 1]).unwrap();
        assert!(!r.holds);
        assert_eq!(r.quotient_order, 1);
        assert_eq!(r.induced_aut_order, 2);
        let bad = r.non_extendable.unwrap();
        assert_eq!(bad.images(), &[1, 0]);

        // The two middle vertices fare better: the reversal swaps them.
        let r = verify_star(&m, &[1, 2]).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotient_order, 2);
    }

    #[test]
    fn star_on_the_empty_set_is_trivial() {
        let m = FinStructure::pure_set(3);
        let r = verify_star(&m, &[]).unwrap();
        assert!(r.holds);
        assert_eq!(r.quotient_order, 1);
        assert_eq!(r.induced_aut_order, 1);
    }
}
