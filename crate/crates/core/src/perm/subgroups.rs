//! Complete subgroup enumeration for small groups.

use super::{GeneratedGroup, Permutation};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Default order bound for [`all_subgroups`].
pub const DEFAULT_SUBGROUP_ORDER_BOUND: u64 = 1000;

/// Safety cap on the number of subgroups the enumeration will track.
const SUBGROUP_COUNT_CAP: usize = 50_000;

/// One subgroup of the enumerated parent.
#[derive(Clone, Debug)]
pub struct SubgroupEntry {
    pub group: GeneratedGroup,
    /// Sorted element list.
    pub elements: Vec<Permutation>,
    pub order: u64,
    pub index_in_parent: u64,
    pub is_normal_in_parent: bool,
}

/// All subgroups of a group, sorted by order then by element list.
#[derive(Clone, Debug)]
pub struct SubgroupList {
    pub parent_order: u64,
    pub entries: Vec<SubgroupEntry>,
}

impl SubgroupList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries whose element sets are minimal among the nontrivial ones.
    pub fn atoms(&self) -> Vec<&SubgroupEntry> {
        let nontrivial: Vec<&SubgroupEntry> =
            self.entries.iter().filter(|e| e.order > 1).collect();
        nontrivial
            .iter()
            .filter(|e| {
                !nontrivial
                    .iter()
                    .any(|f| f.order < e.order && is_subset(&f.elements, &e.elements))
            })
            .copied()
            .collect()
    }
}

fn is_subset(small: &[Permutation], big: &[Permutation]) -> bool {
    // Both sorted.
    let mut i = 0;
    for x in small {
        while i < big.len() && big[i] < *x {
            i += 1;
        }
        if i == big.len() || big[i] != *x {
            return false;
        }
    }
    true
}

/// Closure of a generator list as a sorted element vector.
fn element_closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = BTreeSet::from([Permutation::identity(degree)]);
    let mut queue = VecDeque::from([Permutation::identity(degree)]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = &p * g;
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Enumerates every subgroup of `g`.
///
/// Seeds with all cyclic subgroups, then processes discovered subgroups in
/// ascending order of size, joining each with every cyclic subgroup not
/// already inside it. Every subgroup is a join of an already-discovered
/// smaller subgroup with a cyclic one, so a single ascending pass is
/// complete. Errors when the parent order exceeds `bound`.
pub fn all_subgroups(g: &GeneratedGroup, bound: u64) -> Result<SubgroupList> {
    let parent_order = g.order();
    if parent_order > bound {
        return Err(Error::OrderBoundExceeded {
            order: parent_order,
            bound,
        });
    }
    let degree = g.degree();
    let elems = g.elements()?;

    // Cyclic subgroups, keyed by element set; value is a single generator.
    let mut cyclics: BTreeMap<Vec<Permutation>, Permutation> = BTreeMap::new();
    for e in &elems {
        if e.is_identity() {
            continue;
        }
        let mut members = vec![Permutation::identity(degree)];
        let mut x = e.clone();
        while !x.is_identity() {
            members.push(x.clone());
            x = &x * e;
        }
        members.sort_unstable();
        cyclics.entry(members).or_insert_with(|| e.clone());
    }

    // order -> (element set -> generating list).
    type Layered = BTreeMap<u64, BTreeMap<Vec<Permutation>, Vec<Permutation>>>;
    let mut pending: Layered = BTreeMap::new();
    pending
        .entry(1)
        .or_default()
        .insert(vec![Permutation::identity(degree)], Vec::new());
    for (members, gen) in &cyclics {
        pending
            .entry(members.len() as u64)
            .or_default()
            .insert(members.clone(), vec![gen.clone()]);
    }

    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut found: Vec<(Vec<Permutation>, Vec<Permutation>)> = Vec::new();
    while let Some((&order, _)) = pending.iter().next() {
        let layer = pending.remove(&order).expect("key just observed");
        for (members, gens) in layer {
            if !seen.insert(members.clone()) {
                continue;
            }
            if seen.len() > SUBGROUP_COUNT_CAP {
                return Err(Error::SubgroupEnumerationTooLarge(SUBGROUP_COUNT_CAP));
            }
            for (cyc_members, cyc_gen) in &cyclics {
                if is_subset(cyc_members, &members) {
                    continue;
                }
                let mut join_gens = gens.clone();
                join_gens.push(cyc_gen.clone());
                let join = element_closure(degree, &join_gens);
                if !seen.contains(&join) {
                    pending
                        .entry(join.len() as u64)
                        .or_default()
                        .entry(join)
                        .or_insert(join_gens);
                }
            }
            found.push((members, gens));
        }
    }

    let parent_gens = g.generators().to_vec();
    let mut entries = Vec::with_capacity(found.len());
    for (members, gens) in found {
        let order = members.len() as u64;
        let group = GeneratedGroup::with_degree(degree, gens)?;
        debug_assert_eq!(group.order(), order);
        let is_normal = parent_gens.iter().all(|c| {
            let ci = c.inverse();
            members
                .iter()
                .all(|h| members.binary_search(&(&(c * h) * &ci)).is_ok())
        });
        entries.push(SubgroupEntry {
            group,
            order,
            index_in_parent: parent_order / order,
            is_normal_in_parent: is_normal,
            elements: members,
        });
    }
    Ok(SubgroupList {
        parent_order,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: closed subsets found by extending each closed
    /// set with each outside element until nothing new appears.
    fn oracle_subgroups(g: &GeneratedGroup) -> BTreeSet<Vec<Permutation>> {
        let degree = g.degree();
        let elems = g.elements().unwrap();
        let mut out: BTreeSet<Vec<Permutation>> =
            BTreeSet::from([vec![Permutation::identity(degree)]]);
        let mut queue: VecDeque<Vec<Permutation>> = out.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            for x in &elems {
                if h.binary_search(x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x.clone());
                let j = element_closure(degree, &gens);
                if out.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        out
    }

    fn check_against_oracle(g: &GeneratedGroup, expected_count: usize) {
        let list = all_subgroups(g, DEFAULT_SUBGROUP_ORDER_BOUND).unwrap();
        let got: BTreeSet<Vec<Permutation>> =
            list.entries.iter().map(|e| e.elements.clone()).collect();
        assert_eq!(got.len(), list.entries.len(), "duplicate entries");
        assert_eq!(got, oracle_subgroups(g));
        assert_eq!(list.entries.len(), expected_count);
    }

    #[test]
    fn s3_has_six_subgroups() {
        check_against_oracle(&GeneratedGroup::symmetric(3), 6);
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let s4 = GeneratedGroup::symmetric(4);
        check_against_oracle(&s4, 30);
        let list = all_subgroups(&s4, DEFAULT_SUBGROUP_ORDER_BOUND).unwrap();
        let normals: Vec<u64> = list
            .entries
            .iter()
            .filter(|e| e.is_normal_in_parent)
            .map(|e| e.order)
            .collect();
        // 1, the Klein four-group, the alternating group, and S4 itself.
        assert_eq!(normals, vec![1, 4, 12, 24]);
        for e in &list.entries {
            assert_eq!(e.order * e.index_in_parent, 24);
            assert!(e.group.is_subgroup_of(&s4));
        }
    }

    #[test]
    fn a4_has_ten_subgroups_and_no_order_six() {
        let a4 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1 2)").unwrap(),
            Permutation::from_cycles(4, "(1 2 3)").unwrap(),
        ])
        .unwrap();
        check_against_oracle(&a4, 10);
        let list = all_subgroups(&a4, 100).unwrap();
        assert!(list.entries.iter().all(|e| e.order != 6));
    }

    #[test]
    fn quaternion_group_has_six_subgroups_all_normal() {
        let q8 = crate::perm::quaternion_table().regular_representation();
        let list = all_subgroups(&q8, 100).unwrap();
        assert_eq!(list.len(), 6);
        assert!(list.entries.iter().all(|e| e.is_normal_in_parent));
    }

    #[test]
    fn dihedral_hexagon_has_sixteen_subgroups() {
        let d6 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(6, "(0 1 2 3 4 5)").unwrap(),
            Permutation::from_cycles(6, "(1 5)(2 4)").unwrap(),
        ])
        .unwrap();
        check_against_oracle(&d6, 16);
    }

    #[test]
    fn order_bound_is_enforced() {
        let s5 = GeneratedGroup::symmetric(5);
        assert!(matches!(
            all_subgroups(&s5, 100),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }

    #[test]
    fn atoms_of_s3_are_its_prime_cyclic_subgroups() {
        let list = all_subgroups(&GeneratedGroup::symmetric(3), 100).unwrap();
        let atoms = list.atoms();
        assert_eq!(atoms.len(), 4);
        assert!(atoms.iter().all(|e| e.order == 2 || e.order == 3));
    }
}
