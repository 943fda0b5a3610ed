//! One-point extension properties and the staged construction of finite
//! structures realizing them.
//!
//! The certificate of interest: over every subset of at most `k` points,
//! every one-point extension the class allows is realized by an actual
//! point. Structures with this property look alike up to depth `k`, which
//! is what the staged builder aims for.

use super::{check_amalgamation, check_member, ClassSpec};
use crate::structure::FinStructure;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

/// An extension type over a subset that no point realizes: the structure
/// `extension` is the subset (in sorted order) plus the wanted point as
/// its last element.
#[derive(Clone, Debug, Serialize)]
pub struct MissingExtension {
    pub subset: Vec<usize>,
    pub extension: FinStructure,
}

/// Result of an extension-property check.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub ok: bool,
    pub subsets_checked: usize,
    pub extensions_checked: usize,
    pub missing: Vec<MissingExtension>,
}

/// One allowed one-point extension over a fixed subset: the unaries the
/// new point carries and, per subset element, the binaries joining them.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ExtType {
    unaries: BTreeSet<usize>,
    links: Vec<BTreeSet<usize>>,
}

const MISSING_LIST_CAP: usize = 100;

/// Whether every one-point extension allowed over subsets of at most `k`
/// points is realized in `m`. Requires `m` in the class; witnesses for
/// missing extensions are listed (up to an internal cap).
pub fn extension_property_check(
    m: &FinStructure,
    spec: &ClassSpec,
    k: usize,
) -> Result<ExtensionReport> {
    if let Some(v) = check_member(spec, m)? {
        return Err(Error::NotAMember(v.to_string()));
    }
    let mut report = ExtensionReport {
        ok: true,
        subsets_checked: 0,
        extensions_checked: 0,
        missing: Vec::new(),
    };
    let symbol_split = SymbolSplit::of(spec)?;
    for subset in subsets_up_to(m.domain_size(), k) {
        report.subsets_checked += 1;
        for ext in allowed_extensions(m, spec, &symbol_split, &subset)? {
            report.extensions_checked += 1;
            if realizing_point(m, spec, &subset, &ext).is_none() {
                report.ok = false;
                if report.missing.len() < MISSING_LIST_CAP {
                    report.missing.push(MissingExtension {
                        subset: subset.clone(),
                        extension: extension_structure(m, &subset, &ext)?,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Unary symbols and rule-covered binaries; anything else is out of
/// scope for the extension machinery.
struct SymbolSplit {
    unaries: Vec<usize>,
    binaries: Vec<usize>,
}

impl SymbolSplit {
    fn of(spec: &ClassSpec) -> Result<SymbolSplit> {
        let sig = spec.signature();
        let mut unaries = Vec::new();
        let mut binaries = Vec::new();
        for idx in 0..sig.len() {
            match sig.arity(idx) {
                1 => unaries.push(idx),
                2 if spec.rule_for(idx).is_some() => binaries.push(idx),
                _ => {
                    return Err(Error::EnumerationUnsupported(format!(
                        "symbol {} is neither unary nor a symmetric binary",
                        sig.name(idx)
                    )))
                }
            }
        }
        if unaries.len() > 16 || binaries.len() > 16 {
            return Err(Error::EnumerationUnsupported(
                "too many symbols for exhaustive extension enumeration".into(),
            ));
        }
        Ok(SymbolSplit { unaries, binaries })
    }
}

/// Sorted subsets of `{0, .., n-1}` with at most `k` elements, smallest
/// first, each in ascending order.
fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k.min(n) {
        let mut next = Vec::new();
        for s in &frontier {
            let lo = s.last().map_or(0, |&x| x + 1);
            for v in lo..n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// All extension types over `subset` that the class allows, i.e. whose
/// one-point extension structure is a member.
fn allowed_extensions(
    m: &FinStructure,
    spec: &ClassSpec,
    split: &SymbolSplit,
    subset: &[usize],
) -> Result<Vec<ExtType>> {
    // Candidate unary profiles for the new point.
    let mut profiles: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0u64..(1 << split.unaries.len()) {
        let profile: BTreeSet<usize> = split
            .unaries
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &u)| u)
            .collect();
        // Partition specs admit exactly one sort per point; pre-filter to
        // keep the product small.
        if let Some(ps) = spec.partition() {
            if ps.iter().filter(|u| profile.contains(u)).count() != 1 {
                continue;
            }
        }
        profiles.push(profile);
    }

    let mut out = Vec::new();
    'profiles: for profile in profiles {
        // Per subset element, binary sets that survive a two-point check.
        let mut per_point: Vec<Vec<BTreeSet<usize>>> = Vec::new();
        for &s in subset {
            let mut options = Vec::new();
            for mask in 0u64..(1 << split.binaries.len()) {
                let links: BTreeSet<usize> = split
                    .binaries
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &sym)| sym)
                    .collect();
                let probe = extension_structure(
                    m,
                    &[s],
                    &ExtType {
                        unaries: profile.clone(),
                        links: vec![links.clone()],
                    },
                )?;
                if check_member(spec, &probe)?.is_none() {
                    options.push(links);
                }
            }
            if options.is_empty() {
                continue 'profiles;
            }
            per_point.push(options);
        }
        // Product over subset elements, each candidate verified whole.
        let mut choice = vec![0usize; subset.len()];
        'product: loop {
            let ext = ExtType {
                unaries: profile.clone(),
                links: choice
                    .iter()
                    .zip(&per_point)
                    .map(|(&c, opts)| opts[c].clone())
                    .collect(),
            };
            let candidate = extension_structure(m, subset, &ext)?;
            if check_member(spec, &candidate)?.is_none() {
                out.push(ext);
            }
            // Advance the mixed-radix counter.
            for i in (0..choice.len()).rev() {
                choice[i] += 1;
                if choice[i] < per_point[i].len() {
                    continue 'product;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// The structure `induced(subset)` plus one fresh point decorated by the
/// extension type; the new point is the last one.
fn extension_structure(m: &FinStructure, subset: &[usize], ext: &ExtType) -> Result<FinStructure> {
    let (mut e, _) = m.induced(subset)?;
    let x = e.domain_size();
    e = e.extended(1);
    for &u in &ext.unaries {
        e.add_tuple(u, vec![x])?;
    }
    for (i, links) in ext.links.iter().enumerate() {
        for &sym in links {
            e.add_tuple(sym, vec![x, i])?;
            e.add_tuple(sym, vec![i, x])?;
        }
    }
    Ok(e)
}

/// A point of `m` outside `subset` realizing the extension type, if any.
fn realizing_point(
    m: &FinStructure,
    spec: &ClassSpec,
    subset: &[usize],
    ext: &ExtType,
) -> Option<usize> {
    let sig = spec.signature();
    'points: for y in 0..m.domain_size() {
        if subset.contains(&y) {
            continue;
        }
        for sym in 0..sig.len() {
            match sig.arity(sym) {
                1 => {
                    if m.has(sym, &[y]) != ext.unaries.contains(&sym) {
                        continue 'points;
                    }
                }
                2 => {
                    for (i, &s) in subset.iter().enumerate() {
                        if m.has(sym, &[y, s]) != ext.links[i].contains(&sym) {
                            continue 'points;
                        }
                    }
                }
                _ => {}
            }
        }
        return Some(y);
    }
    None
}

/// Outcome of the staged construction.
#[derive(Clone, Debug, Serialize)]
pub struct GenericBuildReport {
    pub structure: FinStructure,
    pub stages: usize,
    pub complete: bool,
    pub deficiencies: Vec<MissingExtension>,
}

const MAX_GENERIC_POINTS: usize = 64;

/// Grows a member of the class, stage by stage, toward the property that
/// every allowed one-point extension over at most `k` points is
/// realized. Each stage adds a witness for every extension still missing
/// (mandatory relations from the type, plus coin-flip optional relations
/// to unrelated points, repaired greedily if they break membership).
/// Requires the class to pass the amalgamation check at bound `k + 1`;
/// stops after `stage_bound` stages or when the point budget runs out,
/// reporting any extensions still missing.
pub fn generic_build(
    spec: &ClassSpec,
    k: usize,
    stage_bound: usize,
    seed: u64,
) -> Result<GenericBuildReport> {
    let amalg = check_amalgamation(spec, k + 1)?;
    if !amalg.ok() {
        let detail = amalg
            .amalgam_failures
            .first()
            .map(|f| f.violation.to_string())
            .or_else(|| {
                amalg
                    .hereditary_failures
                    .first()
                    .map(|f| f.violation.to_string())
            })
            .unwrap_or_else(|| "closure check failed".into());
        return Err(Error::SpecNotAmalgamating {
            size: k + 1,
            detail,
        });
    }
    let split = SymbolSplit::of(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = FinStructure::with_signature(0, spec.signature().clone());
    let mut stages = 0;
    while stages < stage_bound {
        stages += 1;
        let mut missing = Vec::new();
        for subset in subsets_up_to(m.domain_size(), k) {
            for ext in allowed_extensions(&m, spec, &split, &subset)? {
                if realizing_point(&m, spec, &subset, &ext).is_none() {
                    missing.push((subset.clone(), ext));
                }
            }
        }
        if missing.is_empty() {
            return Ok(GenericBuildReport {
                structure: m,
                stages,
                complete: true,
                deficiencies: Vec::new(),
            });
        }
        let mut budget_hit = false;
        for (subset, ext) in missing {
            // A witness added earlier in this stage may already cover it.
            if realizing_point(&m, spec, &subset, &ext).is_some() {
                continue;
            }
            if m.domain_size() >= MAX_GENERIC_POINTS {
                budget_hit = true;
                break;
            }
            add_witness(&mut m, spec, &split, &subset, &ext, &mut rng)?;
        }
        if budget_hit {
            break;
        }
    }
    let mut deficiencies = Vec::new();
    for subset in subsets_up_to(m.domain_size(), k) {
        for ext in allowed_extensions(&m, spec, &split, &subset)? {
            if realizing_point(&m, spec, &subset, &ext).is_none() && deficiencies.len() < 20 {
                deficiencies.push(MissingExtension {
                    subset: subset.clone(),
                    extension: extension_structure(&m, &subset, &ext)?,
                });
            }
        }
    }
    Ok(GenericBuildReport {
        structure: m,
        complete: deficiencies.is_empty(),
        stages,
        deficiencies,
    })
}

/// Adds one point realizing `ext` over `subset`: mandatory relations
/// first, then optional relations to the remaining points (coin flip per
/// admissible symbol), greedily dropped while they violate membership.
/// The mandatory part always survives: it is a free extension, and the
/// class passed the closure checks.
fn add_witness(
    m: &mut FinStructure,
    spec: &ClassSpec,
    split: &SymbolSplit,
    subset: &[usize],
    ext: &ExtType,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let x = m.domain_size();
    *m = m.extended(1);
    for &u in &ext.unaries {
        m.add_tuple(u, vec![x])?;
    }
    for (i, links) in ext.links.iter().enumerate() {
        for &sym in links {
            m.add_tuple(sym, vec![x, subset[i]])?;
            m.add_tuple(sym, vec![subset[i], x])?;
        }
    }
    let my_sort = spec
        .partition()
        .and_then(|ps| ps.iter().position(|&u| ext.unaries.contains(&u)));
    let mut optional: Vec<(usize, usize)> = Vec::new();
    for y in 0..x {
        if subset.contains(&y) {
            continue;
        }
        for &sym in &split.binaries {
            let rule = spec.rule_for(sym).expect("listed binary has a rule");
            if !ClassSpec::rule_admits(rule, my_sort, spec.sort_of(m, y)) {
                continue;
            }
            if rng.random_bool(0.5) {
                m.add_tuple(sym, vec![x, y])?;
                m.add_tuple(sym, vec![y, x])?;
                optional.push((sym, y));
            }
        }
    }
    while let Some(violation) = check_member(spec, m)? {
        let victim = match &violation {
            super::Violation::ForbiddenSubstructure { points, .. } => optional
                .iter()
                .position(|&(_, y)| points.contains(&y) && points.contains(&x)),
            _ => None,
        }
        .or(if optional.is_empty() {
            None
        } else {
            Some(optional.len() - 1)
        });
        let Some(idx) = victim else {
            return Err(Error::SpecNotAmalgamating {
                size: subset.len() + 1,
                detail: format!("mandatory extension violates membership: {violation}"),
            });
        };
        let (sym, y) = optional.remove(idx);
        m.remove_tuple(sym, &[x, y]);
        m.remove_tuple(sym, &[y, x]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{colored_graph, gamma_class, graphs_class, kn_free, pure_set_class};
    use crate::playground;

    #[test]
    fn cycle_misses_extensions_over_pairs() {
        let spec = graphs_class();
        let c5 = playground::cycle(5);
        // Over single points everything is realized (each vertex has both
        // neighbors and non-neighbors).
        assert!(extension_property_check(&c5, &spec, 1).unwrap().ok);
        // Adjacent vertices have no common neighbor.
        let report = extension_property_check(&c5, &spec, 2).unwrap();
        assert!(!report.ok);
        let w = &report.missing[0];
        assert_eq!(w.subset, vec![0, 1]);
        // The wanted point is adjacent to both.
        assert!(w.extension.has(0, &[2, 0]));
        assert!(w.extension.has(0, &[2, 1]));
    }

    #[test]
    fn empty_subset_extensions_require_an_inhabited_sort() {
        let spec = gamma_class(&playground::complete(2)).unwrap();
        let mut m = FinStructure::with_signature(1, spec.signature().clone());
        m.add_tuple(0, vec![0]).unwrap();
        // Sort P1 is uninhabited, so the empty-subset extension of sort
        // P1 is missing at k = 0.
        let report = extension_property_check(&m, &spec, 0).unwrap();
        assert!(!report.ok);
        assert_eq!(report.missing[0].subset, Vec::<usize>::new());
    }

    #[test]
    fn membership_is_required() {
        let spec = kn_free(3).unwrap();
        let k3 = playground::complete(3);
        assert!(matches!(
            extension_property_check(&k3, &spec, 1),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn generic_graph_realizes_depth_one() {
        let report = generic_build(&graphs_class(), 1, 8, 7).unwrap();
        assert!(report.complete, "deficiencies: {:?}", report.deficiencies);
        let check = extension_property_check(&report.structure, &graphs_class(), 1).unwrap();
        assert!(check.ok);
        // Every vertex has a neighbor and a non-neighbor, so the order is
        // at least 3.
        assert!(report.structure.domain_size() >= 3);
    }

    #[test]
    fn generic_graph_realizes_depth_two() {
        let report = generic_build(&graphs_class(), 2, 10, 11).unwrap();
        assert!(report.complete, "deficiencies: {:?}", report.deficiencies);
        let check = extension_property_check(&report.structure, &graphs_class(), 2).unwrap();
        assert!(check.ok, "missing: {:?}", check.missing.first());
    }

    #[test]
    fn generic_build_is_deterministic_per_seed() {
        let a = generic_build(&graphs_class(), 1, 6, 3).unwrap();
        let b = generic_build(&graphs_class(), 1, 6, 3).unwrap();
        assert_eq!(a.structure, b.structure);
    }

    #[test]
    fn generic_bipartite_structure_separates_first_sort_pairs() {
        let spec = gamma_class(&playground::complete(2)).unwrap();
        let report = generic_build(&spec, 1, 8, 5).unwrap();
        assert!(report.complete, "deficiencies: {:?}", report.deficiencies);
        let m = &report.structure;
        // Any two points of sort 0 are separated by some sort-1 point
        // related to exactly one of them: the extension types "related to
        // a, not to b" and vice versa are realized.
        let p0: Vec<usize> = (0..m.domain_size()).filter(|&p| m.has(0, &[p])).collect();
        assert!(p0.len() >= 2);
        let r = spec.signature().index_of("R0_1").unwrap();
        for (i, &a) in p0.iter().enumerate() {
            for &b in &p0[i + 1..] {
                let separated = (0..m.domain_size())
                    .any(|w| m.has(1, &[w]) && m.has(r, &[w, a]) != m.has(r, &[w, b]));
                assert!(separated, "sort-0 points {a} and {b} not separated");
            }
        }
    }

    #[test]
    fn colored_graphs_do_not_amalgamate_freely() {
        // Gluing two single points over the empty base leaves the new
        // pair without a color, which the class forbids; the builder
        // refuses such specs up front.
        let spec = colored_graph(3).unwrap();
        assert!(matches!(
            generic_build(&spec, 1, 8, 9),
            Err(Error::SpecNotAmalgamating { size: 2, .. })
        ));
    }

    #[test]
    fn pure_sets_just_accumulate_points() {
        let report = generic_build(&pure_set_class(), 2, 5, 0).unwrap();
        assert!(report.complete);
        // E(2) for pure sets needs exactly one point beyond every 2-set.
        assert_eq!(report.structure.domain_size(), 3);
    }

    #[test]
    fn non_amalgamating_spec_is_rejected() {
        use crate::fraisse::BinaryRule;
        use crate::structure::Signature;
        let non_edge = FinStructure::graph(2, &[]).unwrap();
        let spec = ClassSpec::new(
            Signature::graph(),
            None,
            vec![BinaryRule {
                symbol: 0,
                sorts: None,
            }],
            vec![non_edge],
        )
        .unwrap();
        assert!(matches!(
            generic_build(&spec, 1, 4, 0),
            Err(Error::SpecNotAmalgamating { .. })
        ));
    }
}
