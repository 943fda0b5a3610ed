//! Assembly of the two-sorted stabilizer model.

use super::{enumerate_a, g_kl, ClosedFamily, ClosureKind};
use crate::perm::{
    all_subgroups, group_isomorphic, FiniteGroup, GeneratedGroup, Permutation,
    DEFAULT_SUBGROUP_ORDER_BOUND,
};
use crate::structure::{automorphism_group, FinStructure};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Cap on the order of the full automorphism group: the model stores
/// its complete composition table.
pub const MODEL_ORDER_CAP: u64 = 1000;

/// A closed set paired with a subgroup of its induced automorphism
/// group, acting on positions of the sorted set.
#[derive(Clone, Debug)]
pub struct EAPair {
    pub set_index: usize,
    /// Sorted point set.
    pub k: Vec<usize>,
    pub local: GeneratedGroup,
    /// Sorted elements of `local`.
    pub local_elements: Vec<Permutation>,
}

/// A subgroup of the full automorphism group, with its element list
/// frozen for set comparisons and conjugation tests.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    pub group: GeneratedGroup,
    /// Sorted elements.
    pub elements: Vec<Permutation>,
}

impl SubgroupHandle {
    pub fn of(group: GeneratedGroup) -> Result<SubgroupHandle> {
        let elements = group.elements()?;
        Ok(SubgroupHandle { group, elements })
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Elementwise conjugate g · H · g⁻¹, sorted.
    pub fn conjugate_elements(&self, g: &Permutation) -> Vec<Permutation> {
        let gi = g.inverse();
        let mut out: Vec<Permutation> = self.elements.iter().map(|h| &(g * h) * &gi).collect();
        out.sort_unstable();
        out
    }
}

/// The two-sorted model: the automorphism group alongside every
/// (closed set, local subgroup) pair, with the order relations, the
/// transport tables, and the pair-to-subgroup map.
#[derive(Clone, Debug)]
pub struct ExAutModel {
    pub structure: FinStructure,
    pub aut: GeneratedGroup,
    /// The group sort: sorted elements of `aut`; index 0 is the identity.
    pub elements: Vec<Permutation>,
    /// Composition table on element indices, matching `elements`.
    pub group: FiniteGroup,
    pub family: ClosedFamily,
    /// The pair sort, grouped by set in family order.
    pub pairs: Vec<EAPair>,
    /// Pair index of (K, trivial) per family set: the closed-set sort
    /// embeds into the pair sort through these.
    pub trivial_pair: Vec<usize>,
    /// Isomorphism-class label of the induced automorphism group per
    /// family set; labels index `class_reps`.
    pub aut_class: Vec<usize>,
    /// First-encountered table per isomorphism class.
    pub class_reps: Vec<FiniteGroup>,
    /// leq_ea[i][j]: set_i ⊆ set_j and every local element of pair j
    /// stabilizes set_i's positions with restriction inside pair i's
    /// local group.
    pub leq_ea: Vec<Vec<bool>>,
    /// leq_a[s][t]: set s ⊆ set t.
    pub leq_a: Vec<Vec<bool>>,
    /// Family index of the closure of the empty set.
    pub empty_closure: usize,
    /// Family indices minimal among the sets other than `empty_closure`.
    pub p_min: Vec<usize>,
    /// op_set[e][s]: family index of elements[e](sets[s]).
    pub op_set: Vec<Vec<usize>>,
    /// op_pair[e][p]: pair index of the transport of pair p along
    /// elements[e] (image set, conjugated local group).
    pub op_pair: Vec<Vec<usize>>,
    /// j_table[p]: subgroup of `aut` stabilizing pair p's set setwise
    /// with restriction in its local group.
    pub j_table: Vec<SubgroupHandle>,
    /// (set index, sorted local elements) -> pair index.
    pair_lookup: BTreeMap<(usize, Vec<Permutation>), usize>,
}

impl ExAutModel {
    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn pair_index(&self, set_index: usize, local_elements: &[Permutation]) -> Option<usize> {
        self.pair_lookup
            .get(&(set_index, local_elements.to_vec()))
            .copied()
    }

    /// Pair indices with trivial local group, in family-set order.
    pub fn p_a(&self) -> &[usize] {
        &self.trivial_pair
    }
}

fn invariant_violation(what: &str) -> Error {
    Error::EnumerationUnsupported(format!(
        "closed-set family is not automorphism-invariant ({what})"
    ))
}

/// Builds the complete model over `m`: the closed-set family, every
/// (set, subgroup) pair, the order relations and minimality predicate,
/// the transport of sets and pairs along each automorphism, and the
/// pair-to-subgroup map.
pub fn build_exaut(
    m: &FinStructure,
    closure_kind: ClosureKind,
    size_bound: usize,
) -> Result<ExAutModel> {
    let aut = automorphism_group(m);
    if aut.order() > MODEL_ORDER_CAP {
        return Err(Error::OrderBoundExceeded {
            order: aut.order(),
            bound: MODEL_ORDER_CAP,
        });
    }
    let family = enumerate_a(m, closure_kind, size_bound)?;
    let elements = aut.elements()?;
    let group = FiniteGroup::from_generated(&aut)?;
    let nsets = family.sets.len();

    let mut pairs: Vec<EAPair> = Vec::new();
    let mut trivial_pair = vec![usize::MAX; nsets];
    let mut aut_class = Vec::with_capacity(nsets);
    let mut class_reps: Vec<FiniteGroup> = Vec::new();
    let mut pair_lookup: BTreeMap<(usize, Vec<Permutation>), usize> = BTreeMap::new();
    for (s, k) in family.sets.iter().enumerate() {
        let induced = m.induced(k)?.0;
        let autk = automorphism_group(&induced);
        let table = FiniteGroup::from_generated(&autk)?;
        let mut label = None;
        for (i, rep) in class_reps.iter().enumerate() {
            if group_isomorphic(rep, &table)?.is_some() {
                label = Some(i);
                break;
            }
        }
        aut_class.push(label.unwrap_or_else(|| {
            class_reps.push(table);
            class_reps.len() - 1
        }));
        for entry in all_subgroups(&autk, DEFAULT_SUBGROUP_ORDER_BOUND)?.entries {
            let p = pairs.len();
            if entry.order == 1 {
                trivial_pair[s] = p;
            }
            pair_lookup.insert((s, entry.elements.clone()), p);
            pairs.push(EAPair {
                set_index: s,
                k: k.clone(),
                local: entry.group,
                local_elements: entry.elements,
            });
        }
    }
    debug_assert!(trivial_pair.iter().all(|&p| p != usize::MAX));

    let mut leq_a = vec![vec![false; nsets]; nsets];
    for (s, a) in family.sets.iter().enumerate() {
        for (t, b) in family.sets.iter().enumerate() {
            leq_a[s][t] = a.iter().all(|x| b.binary_search(x).is_ok());
        }
    }

    // The closure of ∅ is the unique minimum of the family.
    let ec = family
        .closure_kind
        .close(m, &aut, &[])?;
    let empty_closure = family
        .index_of(&ec)
        .ok_or_else(|| invariant_violation("empty closure"))?;
    let p_min: Vec<usize> = (0..nsets)
        .filter(|&s| {
            s != empty_closure
                && (0..nsets)
                    .all(|t| t == s || t == empty_closure || !leq_a[t][s])
        })
        .collect();

    let npairs = pairs.len();
    let mut leq_ea = vec![vec![false; npairs]; npairs];
    for (i, p1) in pairs.iter().enumerate() {
        for (j, p2) in pairs.iter().enumerate() {
            if !leq_a[p1.set_index][p2.set_index] {
                continue;
            }
            // Positions of p1's set inside p2's (both sorted, so the
            // position list is increasing).
            let pos: Vec<usize> = p1
                .k
                .iter()
                .map(|x| p2.k.binary_search(x).expect("subset"))
                .collect();
            leq_ea[i][j] = p2.local_elements.iter().all(|pi| {
                if pos.iter().any(|&q| pos.binary_search(&pi.apply(q)).is_err()) {
                    return false;
                }
                let images: Vec<usize> = pos
                    .iter()
                    .map(|&q| pos.binary_search(&pi.apply(q)).expect("stabilized"))
                    .collect();
                let r = Permutation::from_images(images).expect("restriction is a bijection");
                p1.local_elements.binary_search(&r).is_ok()
            });
        }
    }

    let mut op_set = vec![vec![0usize; nsets]; elements.len()];
    let mut op_pair = vec![vec![0usize; npairs]; elements.len()];
    for (e, f) in elements.iter().enumerate() {
        for (s, k) in family.sets.iter().enumerate() {
            let mut img: Vec<usize> = k.iter().map(|&x| f.apply(x)).collect();
            img.sort_unstable();
            op_set[e][s] = family
                .index_of(&img)
                .ok_or_else(|| invariant_violation("set image"))?;
        }
        for (p, pair) in pairs.iter().enumerate() {
            let s2 = op_set[e][pair.set_index];
            let k2 = &family.sets[s2];
            // q: positions of pair.k -> positions of k2 along f.
            let q_images: Vec<usize> = pair
                .k
                .iter()
                .map(|&x| k2.binary_search(&f.apply(x)).expect("image point"))
                .collect();
            let q = Permutation::from_images(q_images).expect("image positions are a bijection");
            let qi = q.inverse();
            let mut conj: Vec<Permutation> = pair
                .local_elements
                .iter()
                .map(|g| &(&q * g) * &qi)
                .collect();
            conj.sort_unstable();
            op_pair[e][p] = *pair_lookup
                .get(&(s2, conj))
                .ok_or_else(|| invariant_violation("pair image"))?;
        }
    }

    let mut j_table = Vec::with_capacity(npairs);
    for pair in &pairs {
        j_table.push(SubgroupHandle::of(g_kl(&aut, &pair.k, &pair.local)?)?);
    }

    Ok(ExAutModel {
        structure: m.clone(),
        aut,
        elements,
        group,
        family,
        pairs,
        trivial_pair,
        aut_class,
        class_reps,
        leq_ea,
        leq_a,
        empty_closure,
        p_min,
        op_set,
        op_pair,
        j_table,
        pair_lookup,
    })
}

#[cfg(test)]
pub(super) fn sorted_image(f: &Permutation, k: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = k.iter().map(|&x| f.apply(x)).collect();
    img.sort_unstable();
    img
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::playground;

    #[test]
    fn single_point_model_is_tiny() {
        let m = FinStructure::pure_set(1);
        let model = build_exaut(&m, ClosureKind::Dcl, 1).unwrap();
        // dcl(∅) on one point is already the whole domain (the trivial
        // group fixes it), so the family is a single set.
        assert_eq!(model.family.sets, vec![vec![0]]);
        assert_eq!(model.pairs.len(), 1);
        assert_eq!(model.elements.len(), 1);
        assert!(model.p_min.is_empty());
    }

    #[test]
    fn pure_set_minimal_sets_are_the_singletons() {
        let m = FinStructure::pure_set(4);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        assert_eq!(model.family.sets[model.empty_closure], Vec::<usize>::new());
        let minima: Vec<&Vec<usize>> =
            model.p_min.iter().map(|&s| &model.family.sets[s]).collect();
        assert_eq!(minima, vec![&vec![0], &vec![1], &vec![2], &vec![3]]);
    }

    #[test]
    fn op_moves_a_singleton_where_the_element_points() {
        let m = FinStructure::pure_set(4);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        let swap = Permutation::from_cycles(4, "(0 1)").unwrap();
        let e = model.element_index(&swap).unwrap();
        let s0 = model.family.index_of(&[0]).unwrap();
        let s1 = model.family.index_of(&[1]).unwrap();
        assert_eq!(model.op_set[e][s0], s1);
        assert_eq!(model.op_set[e][s1], s0);
    }

    #[test]
    fn pair_counts_and_j_orders_on_a_small_pure_set() {
        let m = FinStructure::pure_set(4);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        // Sets: ∅, four singletons, six pairs. Pairs: one subgroup over
        // ∅ and each singleton, two over each two-point set.
        assert_eq!(model.family.sets.len(), 11);
        assert_eq!(model.pairs.len(), 1 + 4 + 6 * 2);
        for (p, pair) in model.pairs.iter().enumerate() {
            let j = &model.j_table[p];
            let pw = model.aut.pointwise_stabilizer(&pair.k).unwrap();
            let sw = model.aut.setwise_stabilizer(&pair.k).unwrap();
            if pair.local.order() == 1 {
                assert_eq!(j.group, pw);
            }
            if pair.local.order() == sw.order() / pw.order() {
                // Local group is everything the restriction map reaches.
                assert_eq!(j.group.order() , sw.order());
            }
            assert!(pw.is_normal_in(&sw).unwrap());
        }
    }

    #[test]
    fn transported_pair_keeps_its_conjugated_subgroup() {
        let m = playground::cycle(5);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        for (e, f) in model.elements.iter().enumerate() {
            for p in 0..model.pairs.len() {
                let q = model.op_pair[e][p];
                assert_eq!(
                    model.pairs[q].k,
                    sorted_image(f, &model.pairs[p].k),
                    "image set mismatch"
                );
                assert_eq!(
                    model.j_table[q].elements,
                    model.j_table[p].conjugate_elements(f),
                    "transport is conjugation"
                );
            }
        }
    }

    #[test]
    fn leq_ea_examples_on_a_pure_set() {
        let m = FinStructure::pure_set(4);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        let s01 = model.family.index_of(&[0, 1]).unwrap();
        let s0 = model.family.index_of(&[0]).unwrap();
        let triv_01 = model.trivial_pair[s01];
        let triv_0 = model.trivial_pair[s0];
        let full_01 = (0..model.pairs.len())
            .find(|&p| model.pairs[p].set_index == s01 && model.pairs[p].local.order() == 2)
            .unwrap();
        // ({0}, 1) ≤ ({0,1}, 1): the trivial restriction is trivial.
        assert!(model.leq_ea[triv_0][triv_01]);
        // ({0}, 1) ≰ ({0,1}, Sym): the swap moves 0 out of {0}.
        assert!(!model.leq_ea[triv_0][full_01]);
        // Reflexive, and downward only.
        assert!(model.leq_ea[full_01][full_01]);
        assert!(!model.leq_ea[triv_01][triv_0]);
    }

    #[test]
    fn aut_class_labels_group_by_isomorphism() {
        let m = FinStructure::pure_set(5);
        let model = build_exaut(&m, ClosureKind::Dcl, 2).unwrap();
        // Classes seen: trivial (∅ and singletons) and order two (pairs).
        assert_eq!(model.class_reps.len(), 2);
        let empty = model.empty_closure;
        for (s, k) in model.family.sets.iter().enumerate() {
            let expect = if k.len() == 2 { 1 } else { 0 };
            assert_eq!(model.aut_class[s], expect, "set {k:?}");
            if s == empty {
                assert_eq!(model.aut_class[s], 0);
            }
        }
    }

    #[test]
    fn model_order_cap_is_enforced() {
        let m = FinStructure::pure_set(7);
        assert!(matches!(
            build_exaut(&m, ClosureKind::Dcl, 1),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }
}
