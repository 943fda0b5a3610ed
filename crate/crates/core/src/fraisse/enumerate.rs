//! Enumeration of class members up to isomorphism.

use super::{check_member, ClassSpec};
use crate::structure::FinStructure;
use crate::{Error, Result};
use std::collections::BTreeSet;

pub const DEFAULT_MEMBER_CAP: usize = 4000;

/// Members of a class up to isomorphism, in canonical form, ordered by
/// size. `truncated` is set when the cap cut the enumeration short.
#[derive(Clone, Debug)]
pub struct MemberList {
    pub members: Vec<FinStructure>,
    pub truncated: bool,
}

impl MemberList {
    pub fn of_size(&self, s: usize) -> impl Iterator<Item = &FinStructure> {
        self.members.iter().filter(move |m| m.domain_size() == s)
    }
}

/// A point decoration: the sort (position in the partition list) when the
/// spec has one, plus a mask over unaries outside the partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Deco {
    sort: Option<usize>,
    free_mask: u64,
}

/// Enumerates all members with at most `max_size` points, up to
/// isomorphism, stopping after `cap` structures. Only signatures whose
/// symbols are unary or covered by a symmetric-irreflexive rule are
/// supported: those members are determined by point decorations plus one
/// symbol set per unordered pair. The signature may be large; what must
/// stay small is the number of decorations and the number of relations
/// admissible on any single pair of points.
pub fn enumerate_members(spec: &ClassSpec, max_size: usize, cap: usize) -> Result<MemberList> {
    if max_size > 7 {
        return Err(Error::EnumerationUnsupported(
            "member enumeration handles sizes up to 7".into(),
        ));
    }
    let sig = spec.signature();
    let mut free_unaries = Vec::new();
    let mut binaries = Vec::new();
    for idx in 0..sig.len() {
        match sig.arity(idx) {
            1 => {
                if spec.partition().is_none_or(|ps| !ps.contains(&idx)) {
                    free_unaries.push(idx);
                }
            }
            2 if spec.rule_for(idx).is_some() => binaries.push(idx),
            _ => {
                return Err(Error::EnumerationUnsupported(format!(
                    "symbol {} is neither unary nor a symmetric binary",
                    sig.name(idx)
                )))
            }
        }
    }
    if free_unaries.len() > 16 {
        return Err(Error::EnumerationUnsupported(
            "too many free unary symbols for exhaustive enumeration".into(),
        ));
    }

    // All point decorations.
    let mut decorations = Vec::new();
    let free_masks = 1u64 << free_unaries.len();
    match spec.partition() {
        Some(ps) => {
            for sort in 0..ps.len() {
                for free_mask in 0..free_masks {
                    decorations.push(Deco {
                        sort: Some(sort),
                        free_mask,
                    });
                }
            }
        }
        None => {
            for free_mask in 0..free_masks {
                decorations.push(Deco {
                    sort: None,
                    free_mask,
                });
            }
        }
    }
    if decorations.len() > 512 {
        return Err(Error::EnumerationUnsupported(
            "too many point decorations for exhaustive enumeration".into(),
        ));
    }

    // Per decoration pair, the pair configurations surviving a two-point
    // membership check (this prunes wrong-sort relations and forbidden
    // two-point patterns early; bigger forbidden patterns are caught at
    // the leaves). Decoration sequences below are non-decreasing, so only
    // cells with i <= j are ever consulted.
    let mut pair_configs: Vec<Vec<Vec<Vec<usize>>>> =
        vec![vec![Vec::new(); decorations.len()]; decorations.len()];
    for (i, &di) in decorations.iter().enumerate() {
        for (j, &dj) in decorations.iter().enumerate().skip(i) {
            let candidates: Vec<usize> = binaries
                .iter()
                .copied()
                .filter(|&b| {
                    let rule = spec.rule_for(b).expect("listed binary has a rule");
                    ClassSpec::rule_admits(rule, di.sort, dj.sort)
                })
                .collect();
            if candidates.len() > 16 {
                return Err(Error::EnumerationUnsupported(
                    "too many relations admissible on one point pair".into(),
                ));
            }
            for choice in 0u32..(1 << candidates.len()) {
                let syms: Vec<usize> = candidates
                    .iter()
                    .enumerate()
                    .filter(|&(c, _)| choice & (1 << c) != 0)
                    .map(|(_, &b)| b)
                    .collect();
                let probe = build_structure(spec, &free_unaries, &[di, dj], &[(0, 1, &syms)])?;
                if check_member(spec, &probe)?.is_none() {
                    pair_configs[i][j].push(syms);
                }
            }
        }
    }

    let mut seen: BTreeSet<FinStructure> = BTreeSet::new();
    let mut truncated = false;
    'sizes: for s in 0..=max_size {
        if s > 0 && decorations.is_empty() {
            break;
        }
        // Non-decreasing decoration sequences: points are interchangeable
        // until relations are chosen, so this loses nothing up to
        // isomorphism.
        let mut deco_seq = vec![0usize; s];
        loop {
            let decos: Vec<Deco> = deco_seq.iter().map(|&d| decorations[d]).collect();
            let pairs: Vec<(usize, usize)> = (0..s)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .collect();
            let mut chosen: Vec<(usize, usize, usize)> = Vec::with_capacity(pairs.len());
            if !fill_pairs(
                spec,
                &free_unaries,
                &decos,
                &deco_seq,
                &pair_configs,
                &pairs,
                0,
                &mut chosen,
                &mut seen,
                cap,
            )? {
                truncated = true;
                break 'sizes;
            }
            if !next_nondecreasing(&mut deco_seq, decorations.len()) {
                break;
            }
        }
    }

    let mut members: Vec<FinStructure> = seen.into_iter().collect();
    members.sort_by_key(FinStructure::domain_size);
    Ok(MemberList { members, truncated })
}

/// Advances a non-decreasing sequence over `0..limit`; false at the end.
fn next_nondecreasing(seq: &mut [usize], limit: usize) -> bool {
    let n = seq.len();
    if n == 0 {
        return false;
    }
    let mut i = n;
    while i > 0 {
        i -= 1;
        if seq[i] + 1 < limit {
            let v = seq[i] + 1;
            for x in &mut seq[i..] {
                *x = v;
            }
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn fill_pairs(
    spec: &ClassSpec,
    free_unaries: &[usize],
    decos: &[Deco],
    deco_seq: &[usize],
    pair_configs: &[Vec<Vec<Vec<usize>>>],
    pairs: &[(usize, usize)],
    depth: usize,
    chosen: &mut Vec<(usize, usize, usize)>,
    seen: &mut BTreeSet<FinStructure>,
    cap: usize,
) -> Result<bool> {
    if depth == pairs.len() {
        let resolved: Vec<(usize, usize, &[usize])> = chosen
            .iter()
            .map(|&(i, j, c)| {
                let config = &pair_configs[deco_seq[i]][deco_seq[j]][c];
                (i, j, config.as_slice())
            })
            .collect();
        let candidate = build_structure(spec, free_unaries, decos, &resolved)?;
        if check_member(spec, &candidate)?.is_none() {
            seen.insert(candidate.canonical_form());
            if seen.len() >= cap {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let (i, j) = pairs[depth];
    for c in 0..pair_configs[deco_seq[i]][deco_seq[j]].len() {
        chosen.push((i, j, c));
        let more = fill_pairs(
            spec,
            free_unaries,
            decos,
            deco_seq,
            pair_configs,
            pairs,
            depth + 1,
            chosen,
            seen,
            cap,
        )?;
        chosen.pop();
        if !more {
            return Ok(false);
        }
    }
    Ok(true)
}

fn build_structure(
    spec: &ClassSpec,
    free_unaries: &[usize],
    decos: &[Deco],
    pairs: &[(usize, usize, &[usize])],
) -> Result<FinStructure> {
    let mut m = FinStructure::with_signature(decos.len(), spec.signature().clone());
    for (p, deco) in decos.iter().enumerate() {
        if let (Some(sort), Some(ps)) = (deco.sort, spec.partition()) {
            m.add_tuple(ps[sort], vec![p])?;
        }
        for (b, &u) in free_unaries.iter().enumerate() {
            if deco.free_mask & (1 << b) != 0 {
                m.add_tuple(u, vec![p])?;
            }
        }
    }
    for &(i, j, syms) in pairs {
        for &sym in syms {
            m.add_tuple(sym, vec![i, j])?;
            m.add_tuple(sym, vec![j, i])?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{
        colored_graph, gamma_class, graphs_class, kn_free, pure_set_class, BinaryRule,
    };
    use crate::playground;
    use crate::structure::Signature;

    #[test]
    fn graphs_up_to_four_points() {
        let list = enumerate_members(&graphs_class(), 4, DEFAULT_MEMBER_CAP).unwrap();
        assert!(!list.truncated);
        // 1 + 1 + 2 + 4 + 11 graphs of sizes 0..4 up to isomorphism.
        assert_eq!(list.of_size(0).count(), 1);
        assert_eq!(list.of_size(1).count(), 1);
        assert_eq!(list.of_size(2).count(), 2);
        assert_eq!(list.of_size(3).count(), 4);
        assert_eq!(list.of_size(4).count(), 11);
    }

    #[test]
    fn triangle_free_graphs_exclude_cliques() {
        let list = enumerate_members(&kn_free(3).unwrap(), 4, DEFAULT_MEMBER_CAP).unwrap();
        // Of the 4 graphs on 3 points, the triangle is excluded; of the 11
        // on 4 points, 11 - 4 = 7 remain (those containing a triangle are
        // K4, K4 minus an edge, K3 plus an isolated vertex, the paw).
        assert_eq!(list.of_size(3).count(), 3);
        assert_eq!(list.of_size(4).count(), 7);
    }

    #[test]
    fn pure_sets_one_per_size() {
        let list = enumerate_members(&pure_set_class(), 5, DEFAULT_MEMBER_CAP).unwrap();
        assert_eq!(list.members.len(), 6);
    }

    #[test]
    fn colored_members_have_exactly_one_color_per_pair() {
        let spec = colored_graph(2).unwrap();
        let list = enumerate_members(&spec, 3, DEFAULT_MEMBER_CAP).unwrap();
        // Size 2: one pair, two color choices. Size 3: three pairs, 2^3
        // labeled colorings; up to isomorphism 4 (monochromatic in either
        // color, or two-one in either color).
        assert_eq!(list.of_size(2).count(), 2);
        assert_eq!(list.of_size(3).count(), 4);
    }

    #[test]
    fn sorted_edge_class_members() {
        let spec = gamma_class(&playground::complete(2)).unwrap();
        let list = enumerate_members(&spec, 2, DEFAULT_MEMBER_CAP).unwrap();
        // Size 1: one point of either sort -> 2. Size 2: same sort (no
        // relation possible) 2; different sorts, related or not, 2.
        assert_eq!(list.of_size(1).count(), 2);
        assert_eq!(list.of_size(2).count(), 4);
    }

    #[test]
    fn wide_sorted_signatures_enumerate() {
        // 18 sorts and 18 edge relations: far beyond what a single-word
        // symbol mask would hold, but each pair admits at most one relation.
        let spec = gamma_class(&playground::cycle(18)).unwrap();
        let list = enumerate_members(&spec, 2, DEFAULT_MEMBER_CAP).unwrap();
        assert!(!list.truncated);
        assert_eq!(list.of_size(1).count(), 18);
        // Same sort 18; distinct non-adjacent sorts C(18,2) - 18 = 135;
        // adjacent sorts related or not, 2 * 18.
        assert_eq!(list.of_size(2).count(), 189);
    }

    #[test]
    fn crowded_pairs_are_rejected() {
        // 17 unconstrained binary symbols all land on the same pair.
        let symbols: Vec<(String, usize)> = (0..17).map(|i| (format!("E{i}"), 2)).collect();
        let sig = Signature::new(symbols).unwrap();
        let rules = (0..17)
            .map(|symbol| BinaryRule {
                symbol,
                sorts: None,
            })
            .collect();
        let spec = ClassSpec::new(sig, None, rules, Vec::new()).unwrap();
        let err = enumerate_members(&spec, 2, DEFAULT_MEMBER_CAP).unwrap_err();
        assert!(matches!(err, Error::EnumerationUnsupported(_)));
    }

    #[test]
    fn truncation_is_flagged() {
        let list = enumerate_members(&graphs_class(), 4, 5).unwrap();
        assert!(list.truncated);
        assert_eq!(list.members.len(), 5);
    }
}
