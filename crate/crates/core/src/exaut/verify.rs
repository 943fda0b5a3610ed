//! Checks tying the two-sorted model to the subgroup lattice it encodes.
//!
//! Each check reports exact or empirical status: exact checks decide a
//! finitary statement outright, empirical ones probe a claim whose
//! general form lives beyond the enumerated family, so a failure is a
//! recorded observation rather than a bug.

use super::{ExAutModel, SubgroupHandle};
use crate::perm::{group_isomorphic, quotient_group, Permutation};
use crate::report::{CheckReport, CheckStatus};
use crate::{Error, Result};
use serde_json::json;
use std::collections::BTreeMap;

fn is_subset(sub: &[Permutation], sup: &[Permutation]) -> bool {
    sub.iter().all(|p| sup.binary_search(p).is_ok())
}

fn is_normal_in_list(sub: &[Permutation], sup: &[Permutation]) -> bool {
    sup.iter().all(|g| {
        let gi = g.inverse();
        sub.iter().all(|h| sub.binary_search(&(&(g * h) * &gi)).is_ok())
    })
}

/// Distinct stabilizer subgroups in the range of the pair map, each
/// with one representative pair index.
fn dedup_range(model: &ExAutModel) -> Vec<(usize, &SubgroupHandle)> {
    let mut seen: BTreeMap<&[Permutation], usize> = BTreeMap::new();
    for (p, h) in model.j_table.iter().enumerate() {
        seen.entry(&h.elements).or_insert(p);
    }
    seen.into_values().map(|p| (p, &model.j_table[p])).collect()
}

/// Whether distinct pairs name distinct stabilizer subgroups. Holds
/// once the structure has enough room to separate local actions;
/// collisions are expected on very small domains.
pub fn verify_injectivity(model: &ExAutModel) -> CheckReport {
    let mut witnesses = Vec::new();
    for p in 0..model.pairs.len() {
        for q in (p + 1)..model.pairs.len() {
            if model.j_table[p].elements == model.j_table[q].elements {
                witnesses.push(json!({
                    "pair": p,
                    "other": q,
                    "set": model.pairs[p].k,
                    "other_set": model.pairs[q].k,
                    "order": model.j_table[p].elements.len(),
                }));
            }
        }
    }
    let ok = witnesses.is_empty();
    CheckReport::new(
        "pair-map-injective",
        CheckStatus::empirical(ok),
        format!(
            "{} pairs, {} collisions",
            model.pairs.len(),
            witnesses.len()
        ),
    )
    .with_witnesses(witnesses)
}

/// Whether the pair order mirrors reverse inclusion of stabilizers:
/// p ≤ q exactly when the subgroup named by q sits inside the one
/// named by p.
pub fn verify_leq_correspondence(model: &ExAutModel) -> CheckReport {
    let n = model.pairs.len();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let leq = model.leq_ea[i][j];
            let contains = is_subset(&model.j_table[j].elements, &model.j_table[i].elements);
            if leq != contains {
                witnesses.push(json!({
                    "lower": i,
                    "upper": j,
                    "pair_order": leq,
                    "group_containment": contains,
                }));
            }
        }
    }
    let ok = witnesses.is_empty();
    CheckReport::new(
        "order-matches-containment",
        CheckStatus::empirical(ok),
        format!("{} ordered pairs, {} mismatches", n * n, witnesses.len()),
    )
    .with_witnesses(witnesses)
}

/// Normality transfer between local groups and their stabilizers, both
/// directions. Shared set with nested normal local groups forcing
/// nested normal stabilizers is decided outright; the converse — every
/// normal containment in the range arises that way — is probed over
/// the enumerated family only.
pub fn verify_prop_normality(model: &ExAutModel) -> Vec<CheckReport> {
    let mut forward_checked = 0usize;
    let mut forward_witnesses = Vec::new();
    for (i, p1) in model.pairs.iter().enumerate() {
        for (j, p2) in model.pairs.iter().enumerate() {
            if p1.set_index != p2.set_index
                || !is_subset(&p1.local_elements, &p2.local_elements)
                || !is_normal_in_list(&p1.local_elements, &p2.local_elements)
            {
                continue;
            }
            forward_checked += 1;
            let h1 = &model.j_table[i].elements;
            let h2 = &model.j_table[j].elements;
            if !is_subset(h1, h2) || !is_normal_in_list(h1, h2) {
                forward_witnesses.push(json!({
                    "set": p1.k,
                    "lower_pair": i,
                    "upper_pair": j,
                }));
            }
        }
    }
    let forward_ok = forward_witnesses.is_empty();
    let forward = CheckReport::new(
        "nested-locals-nest-normally",
        CheckStatus::exact(forward_ok),
        format!(
            "{} shared-set normal nestings, {} violations",
            forward_checked, forward_witnesses.len()
        ),
    )
    .with_witnesses(forward_witnesses);

    // Group pair indices by stabilizer so representability can be
    // searched per subgroup rather than per pair.
    let range = dedup_range(model);
    let mut reps_of: BTreeMap<&[Permutation], Vec<usize>> = BTreeMap::new();
    for (p, h) in model.j_table.iter().enumerate() {
        reps_of.entry(&h.elements).or_default().push(p);
    }
    let mut backward_checked = 0usize;
    let mut backward_witnesses = Vec::new();
    for &(_, h1) in &range {
        for &(_, h2) in &range {
            if h1.elements == h2.elements
                || !is_subset(&h1.elements, &h2.elements)
                || !is_normal_in_list(&h1.elements, &h2.elements)
            {
                continue;
            }
            backward_checked += 1;
            let lows = &reps_of[h1.elements.as_slice()];
            let highs = &reps_of[h2.elements.as_slice()];
            let represented = lows.iter().any(|&p| {
                highs.iter().any(|&q| {
                    let a = &model.pairs[p];
                    let b = &model.pairs[q];
                    a.set_index == b.set_index
                        && is_subset(&a.local_elements, &b.local_elements)
                        && is_normal_in_list(&a.local_elements, &b.local_elements)
                })
            });
            if !represented {
                backward_witnesses.push(json!({
                    "lower_order": h1.elements.len(),
                    "upper_order": h2.elements.len(),
                }));
            }
        }
    }
    let backward_ok = backward_witnesses.is_empty();
    let backward = CheckReport::new(
        "normal-nestings-share-a-set",
        CheckStatus::empirical(backward_ok),
        format!(
            "{} proper normal containments in range, {} without a shared-set witness",
            backward_checked, backward_witnesses.len()
        ),
    )
    .with_witnesses(backward_witnesses);

    vec![forward, backward]
}

/// Whether the pointwise stabilizers of closed sets are exactly the
/// range subgroups with no proper normal subgroup in the range. The
/// family is finite, so a large closed set can inject small subgroups
/// into the range and break the comparison; agreement is expected when
/// the family stays below that scale.
pub fn verify_char_pointwise(model: &ExAutModel) -> CheckReport {
    let range = dedup_range(model);
    let minimal: Vec<&[Permutation]> = range
        .iter()
        .filter(|(_, h)| {
            !range.iter().any(|(_, h2)| {
                h2.elements.len() < h.elements.len()
                    && is_subset(&h2.elements, &h.elements)
                    && is_normal_in_list(&h2.elements, &h.elements)
            })
        })
        .map(|(_, h)| h.elements.as_slice())
        .collect();
    let mut pointwise: Vec<&[Permutation]> = model
        .trivial_pair
        .iter()
        .map(|&p| model.j_table[p].elements.as_slice())
        .collect();
    pointwise.sort_unstable();
    pointwise.dedup();

    let mut witnesses = Vec::new();
    for e in &minimal {
        if pointwise.binary_search(e).is_err() {
            witnesses.push(json!({"order": e.len(), "side": "minimal-but-not-pointwise"}));
        }
    }
    for e in &pointwise {
        // `minimal` is range order (sorted keys), so binary search works.
        if minimal.binary_search(e).is_err() {
            witnesses.push(json!({"order": e.len(), "side": "pointwise-but-not-minimal"}));
        }
    }
    let ok = witnesses.is_empty();
    CheckReport::new(
        "pointwise-are-normally-minimal",
        CheckStatus::empirical(ok),
        format!(
            "{} range subgroups, {} normally minimal, {} pointwise stabilizers",
            range.len(),
            minimal.len(),
            pointwise.len()
        ),
    )
    .with_witnesses(witnesses)
}

/// Whether each closed set's local-action label is recoverable from
/// the range: among range subgroups normally containing the pointwise
/// stabilizer there is a single maximum — the setwise stabilizer — and
/// its quotient by the pointwise stabilizer matches the label's class.
pub fn verify_char_l(model: &ExAutModel) -> Result<CheckReport> {
    let range = dedup_range(model);
    let mut witnesses = Vec::new();
    for (s, k) in model.family.sets.iter().enumerate() {
        let h = &model.j_table[model.trivial_pair[s]];
        let candidates: Vec<&(usize, &SubgroupHandle)> = range
            .iter()
            .filter(|(_, c)| {
                is_subset(&h.elements, &c.elements)
                    && is_normal_in_list(&h.elements, &c.elements)
            })
            .collect();
        let maximal: Vec<&&(usize, &SubgroupHandle)> = candidates
            .iter()
            .filter(|(_, c)| {
                !candidates.iter().any(|(_, c2)| {
                    c2.elements.len() > c.elements.len() && is_subset(&c.elements, &c2.elements)
                })
            })
            .collect();
        if maximal.len() != 1 {
            witnesses.push(json!({
                "set": k,
                "reason": "no unique maximal extension",
                "maximal_orders": maximal.iter().map(|(_, c)| c.elements.len()).collect::<Vec<_>>(),
            }));
            continue;
        }
        let top = maximal[0].1;
        let setwise = model.aut.setwise_stabilizer(k)?;
        if top.elements.len() as u64 != setwise.order() || !top.group.is_subgroup_of(&setwise) {
            witnesses.push(json!({
                "set": k,
                "reason": "maximal extension is not the setwise stabilizer",
                "maximal_order": top.elements.len(),
                "setwise_order": setwise.order(),
            }));
            continue;
        }
        let quotient = quotient_group(&top.group, &h.group)?;
        if group_isomorphic(&quotient, &model.class_reps[model.aut_class[s]])?.is_none() {
            witnesses.push(json!({
                "set": k,
                "reason": "quotient does not match the local-action label",
                "quotient_order": quotient.order(),
                "label_order": model.class_reps[model.aut_class[s]].order(),
            }));
        }
    }
    let ok = witnesses.is_empty();
    Ok(CheckReport::new(
        "labels-match-quotients",
        CheckStatus::empirical(ok),
        format!("{} closed sets, {} failures", model.family.sets.len(), witnesses.len()),
    )
    .with_witnesses(witnesses))
}

/// Structural identities of the transport tables that hold regardless
/// of any outer map: transporting a pair conjugates its stabilizer,
/// transport fixes the trivial-local embedding of sets, and the pair
/// order is preserved.
pub fn verify_op_shapes(model: &ExAutModel) -> CheckReport {
    let nelem = model.elements.len();
    let npairs = model.pairs.len();
    let nsets = model.family.sets.len();
    let mut witnesses = Vec::new();
    'outer: for e in 0..nelem {
        let f = &model.elements[e];
        for p in 0..npairs {
            let q = model.op_pair[e][p];
            if model.j_table[q].elements != model.j_table[p].conjugate_elements(f) {
                witnesses.push(json!({
                    "element": e, "pair": p,
                    "identity": "transport-conjugates-stabilizer",
                }));
                break 'outer;
            }
        }
        for s in 0..nsets {
            if model.op_pair[e][model.trivial_pair[s]]
                != model.trivial_pair[model.op_set[e][s]]
            {
                witnesses.push(json!({
                    "element": e, "set": s,
                    "identity": "transport-fixes-trivial-locals",
                }));
                break 'outer;
            }
        }
        for i in 0..npairs {
            for j in 0..npairs {
                if model.leq_ea[i][j]
                    != model.leq_ea[model.op_pair[e][i]][model.op_pair[e][j]]
                {
                    witnesses.push(json!({
                        "element": e, "lower": i, "upper": j,
                        "identity": "transport-preserves-order",
                    }));
                    break 'outer;
                }
            }
        }
    }
    let ok = witnesses.is_empty();
    CheckReport::new(
        "transport-identities",
        CheckStatus::exact(ok),
        format!(
            "{} elements x ({} pairs, {} sets) checked",
            nelem, npairs, nsets
        ),
    )
    .with_witnesses(witnesses)
}

/// Whether a verified abstract-group automorphism, given as an
/// element-index map, commutes with the transport tables: for every
/// element f and closed set K, F(j(Op(f, K))) = Op(F(f), F(j(K))),
/// and the same across every pair. Rejects maps that are not
/// composition-respecting bijections.
pub fn verify_equivariance(model: &ExAutModel, map: &[usize]) -> Result<CheckReport> {
    require_automorphism(model, map)?;
    let jsets = stabilizer_index_sets(model);
    let nelem = model.elements.len();

    let mut witnesses = Vec::new();
    for f in 0..nelem {
        for (s, _) in model.family.sets.iter().enumerate() {
            let p = model.trivial_pair[s];
            let lhs = apply_map(map, &jsets[model.op_pair[f][p]]);
            let rhs = conjugate_indices(model, map[f], &apply_map(map, &jsets[p]));
            if lhs != rhs {
                witnesses.push(json!({
                    "element": f, "set": s,
                    "identity": "map-commutes-with-set-transport",
                }));
            }
        }
        for p in 0..model.pairs.len() {
            let lhs = apply_map(map, &jsets[model.op_pair[f][p]]);
            let rhs = conjugate_indices(model, map[f], &apply_map(map, &jsets[p]));
            if lhs != rhs {
                witnesses.push(json!({
                    "element": f, "pair": p,
                    "identity": "map-commutes-with-pair-transport",
                }));
            }
        }
        if witnesses.len() > 8 {
            break;
        }
    }
    let ok = witnesses.is_empty();
    Ok(CheckReport::new(
        "outer-map-equivariance",
        CheckStatus::exact(ok),
        format!(
            "transport of {} sets and {} pairs along {} elements",
            model.family.sets.len(),
            model.pairs.len(),
            nelem
        ),
    )
    .with_witnesses(witnesses))
}

/// Runs the equivariance identities over every inner map. The per-map
/// set identities reduce to the pointwise conjugation identity
/// F(f·x·f⁻¹) = F(f)·F(x)·F(f)⁻¹ — every stabilizer maps elementwise —
/// so the sweep checks composition and that identity exhaustively.
pub fn verify_equivariance_all_inner(model: &ExAutModel) -> CheckReport {
    let nelem = model.elements.len();
    let conj = conjugation_table(model);
    let mut failed = Vec::new();
    'maps: for g in 0..nelem {
        let map = &conj[g];
        for i in 0..nelem {
            for j in 0..nelem {
                if map[model.group.mul(i, j)] != model.group.mul(map[i], map[j]) {
                    failed.push(json!({"inner": g, "identity": "composition", "left": i, "right": j}));
                    continue 'maps;
                }
                if map[conj[i][j]] != conj[map[i]][map[j]] {
                    failed.push(json!({"inner": g, "identity": "conjugation", "element": i, "point": j}));
                    continue 'maps;
                }
            }
        }
    }
    let ok = failed.is_empty();
    CheckReport::new(
        "inner-maps-equivariant",
        CheckStatus::exact(ok),
        format!("{} inner maps checked, {} failed", nelem, failed.len()),
    )
    .with_witnesses(failed)
}

/// The element-index map of conjugation by `g`.
pub fn inner_automorphism(model: &ExAutModel, g: &Permutation) -> Result<Vec<usize>> {
    model
        .element_index(g)
        .ok_or_else(|| Error::NotAMember("element is outside the automorphism group".into()))?;
    let gi = g.inverse();
    let mut map = Vec::with_capacity(model.elements.len());
    for h in &model.elements {
        let image = &(g * h) * &gi;
        map.push(
            model
                .element_index(&image)
                .ok_or_else(|| Error::NotAMember("conjugate left the group".into()))?,
        );
    }
    Ok(map)
}

fn require_automorphism(model: &ExAutModel, map: &[usize]) -> Result<()> {
    let n = model.elements.len();
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    if map.len() != n || sorted != (0..n).collect::<Vec<usize>>() {
        return Err(Error::NotAnAutomorphism);
    }
    for i in 0..n {
        for j in 0..n {
            if map[model.group.mul(i, j)] != model.group.mul(map[i], map[j]) {
                return Err(Error::NotAnAutomorphism);
            }
        }
    }
    Ok(())
}

/// Each stabilizer as an ascending list of element indices.
fn stabilizer_index_sets(model: &ExAutModel) -> Vec<Vec<usize>> {
    model
        .j_table
        .iter()
        .map(|h| {
            h.elements
                .iter()
                .map(|p| model.element_index(p).expect("stabilizers live in the group"))
                .collect()
        })
        .collect()
}

fn apply_map(map: &[usize], set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&i| map[i]).collect();
    out.sort_unstable();
    out
}

fn conjugate_indices(model: &ExAutModel, g: usize, set: &[usize]) -> Vec<usize> {
    let f = &model.elements[g];
    let fi = f.inverse();
    let mut out: Vec<usize> = set
        .iter()
        .map(|&i| {
            let h = &(f * &model.elements[i]) * &fi;
            model.element_index(&h).expect("conjugate stays in the group")
        })
        .collect();
    out.sort_unstable();
    out
}

fn conjugation_table(model: &ExAutModel) -> Vec<Vec<usize>> {
    model
        .elements
        .iter()
        .map(|g| inner_automorphism(model, g).expect("elements are members"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exaut::{build_exaut, ClosureKind};
    use crate::playground;
    use crate::structure::FinStructure;

    fn model(m: &FinStructure, bound: usize) -> ExAutModel {
        build_exaut(m, ClosureKind::Dcl, bound).unwrap()
    }

    #[test]
    fn injectivity_holds_once_points_separate() {
        let big = model(&FinStructure::pure_set(5), 2);
        assert_eq!(verify_injectivity(&big).status, CheckStatus::EmpiricalPass);
        // On two points each singleton determines the other, so the
        // family jumps straight to the full domain, whose full-action
        // pair names the whole group a second time.
        let tiny = model(&FinStructure::pure_set(2), 1);
        let report = verify_injectivity(&tiny);
        assert_eq!(report.status, CheckStatus::EmpiricalFail);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn complementary_halves_share_a_setwise_stabilizer() {
        // On four points the setwise stabilizers of {0,1} and {2,3}
        // coincide, so the pair map collides exactly there.
        let m = model(&FinStructure::pure_set(4), 2);
        let report = verify_injectivity(&m);
        assert_eq!(report.status, CheckStatus::EmpiricalFail);
        let sets: Vec<(String, String)> = report
            .witnesses
            .iter()
            .map(|w| (w["set"].to_string(), w["other_set"].to_string()))
            .collect();
        assert!(sets.iter().all(|(a, b)| {
            let a: Vec<u64> = serde_json::from_str(a).unwrap();
            let b: Vec<u64> = serde_json::from_str(b).unwrap();
            a.len() == 2 && b.len() == 2 && a.iter().all(|x| !b.contains(x))
        }));
    }

    #[test]
    fn order_mirrors_containment_until_pairs_collide() {
        let big = model(&FinStructure::pure_set(5), 2);
        assert_eq!(
            verify_leq_correspondence(&big).status,
            CheckStatus::EmpiricalPass
        );
        let c5 = model(&playground::cycle(5), 1);
        assert_eq!(
            verify_leq_correspondence(&c5).status,
            CheckStatus::EmpiricalPass
        );
        // The complementary-halves collision above breaks the
        // correspondence in both directions at once.
        let square = model(&FinStructure::pure_set(4), 2);
        assert_eq!(
            verify_leq_correspondence(&square).status,
            CheckStatus::EmpiricalFail
        );
    }

    #[test]
    fn normality_transfers_both_ways_here() {
        for m in [
            model(&FinStructure::pure_set(4), 2),
            model(&FinStructure::pure_set(2), 1),
            model(&playground::cycle(5), 2),
        ] {
            let reports = verify_prop_normality(&m);
            assert_eq!(reports.len(), 2);
            assert_eq!(reports[0].status, CheckStatus::ExactPass, "{}", reports[0].detail);
            assert_eq!(reports[1].status, CheckStatus::EmpiricalPass, "{}", reports[1].detail);
        }
    }

    #[test]
    fn pointwise_family_recovered_at_radius_one() {
        let c5 = playground::cycle(5);
        let narrow = model(&c5, 1);
        assert_eq!(
            verify_char_pointwise(&narrow).status,
            CheckStatus::EmpiricalPass
        );
        // At radius two the family reaches the full domain, whose pairs
        // pour every subgroup into the range; the trivial group then
        // undercuts each reflection.
        let wide = model(&c5, 2);
        let report = verify_char_pointwise(&wide);
        assert_eq!(report.status, CheckStatus::EmpiricalFail);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn pointwise_family_recovered_on_a_pure_set() {
        let m = model(&FinStructure::pure_set(5), 2);
        assert_eq!(verify_char_pointwise(&m).status, CheckStatus::EmpiricalPass);
    }

    #[test]
    fn labels_match_quotients_on_small_playgrounds() {
        let m = model(&FinStructure::pure_set(5), 2);
        let report = verify_char_l(&m).unwrap();
        assert_eq!(report.status, CheckStatus::EmpiricalPass, "{:?}", report.witnesses);
        let c5 = model(&playground::cycle(5), 2);
        let report = verify_char_l(&c5).unwrap();
        assert_eq!(report.status, CheckStatus::EmpiricalPass, "{:?}", report.witnesses);
    }

    #[test]
    fn transport_identities_are_exact() {
        let m = model(&FinStructure::pure_set(4), 2);
        assert_eq!(verify_op_shapes(&m).status, CheckStatus::ExactPass);
        let c5 = model(&playground::cycle(5), 2);
        assert_eq!(verify_op_shapes(&c5).status, CheckStatus::ExactPass);
    }

    #[test]
    fn identity_and_inner_maps_are_equivariant() {
        let m = model(&FinStructure::pure_set(4), 2);
        let identity: Vec<usize> = (0..m.elements.len()).collect();
        assert_eq!(
            verify_equivariance(&m, &identity).unwrap().status,
            CheckStatus::ExactPass
        );
        let swap = Permutation::from_cycles(4, "(0 1)").unwrap();
        let map = inner_automorphism(&m, &swap).unwrap();
        assert_eq!(
            verify_equivariance(&m, &map).unwrap().status,
            CheckStatus::ExactPass
        );
    }

    #[test]
    fn a_scrambled_map_is_rejected() {
        let m = model(&FinStructure::pure_set(4), 2);
        let mut map: Vec<usize> = (0..m.elements.len()).collect();
        map.swap(0, 1);
        assert!(matches!(
            verify_equivariance(&m, &map),
            Err(Error::NotAnAutomorphism)
        ));
        assert!(matches!(
            verify_equivariance(&m, &[0, 1, 2]),
            Err(Error::NotAnAutomorphism)
        ));
    }

    #[test]
    fn non_member_has_no_inner_map() {
        let c5 = model(&playground::cycle(5), 1);
        let odd = Permutation::from_cycles(5, "(0 1)").unwrap();
        assert!(matches!(
            inner_automorphism(&c5, &odd),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn all_inner_maps_are_equivariant_on_c5() {
        let c5 = model(&playground::cycle(5), 2);
        let report = verify_equivariance_all_inner(&c5);
        assert_eq!(report.status, CheckStatus::ExactPass, "{}", report.detail);
    }
}
