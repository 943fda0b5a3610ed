//! Closure of a class under free amalgamation, checked exhaustively at
//! desk scale, plus the duplication-based closure operator it supports.

use super::{check_member, enumerate_members, ClassSpec, Violation, DEFAULT_MEMBER_CAP};
use crate::structure::{automorphism_group, embeddings, is_embedding, FinStructure};
use crate::{Error, Result};
use serde::Serialize;

/// A member that loses membership when one point is removed.
#[derive(Clone, Debug, Serialize)]
pub struct HereditaryFailure {
    pub member: FinStructure,
    pub removed_point: usize,
    pub violation: Violation,
}

/// A free amalgam that falls outside the class. An empty base witnesses
/// a joint-embedding failure.
#[derive(Clone, Debug, Serialize)]
pub struct AmalgamFailure {
    pub base: FinStructure,
    pub left: FinStructure,
    pub right: FinStructure,
    pub left_embedding: Vec<usize>,
    pub right_embedding: Vec<usize>,
    pub violation: Violation,
}

/// Outcome of the closure checks on members up to a size bound.
#[derive(Clone, Debug, Serialize)]
pub struct AmalgamationReport {
    pub size_bound: usize,
    pub members_checked: usize,
    pub truncated: bool,
    pub hereditary_failures: Vec<HereditaryFailure>,
    pub amalgam_failures: Vec<AmalgamFailure>,
    pub amalgams_checked: usize,
}

impl AmalgamationReport {
    /// No failures found (regardless of truncation).
    pub fn ok(&self) -> bool {
        self.hereditary_failures.is_empty() && self.amalgam_failures.is_empty()
    }
}

const FAILURE_LIST_CAP: usize = 50;

/// Glues `left` and `right` along two embeddings of a common base,
/// adding no relations beyond the two copies. Left points keep their
/// names; right points outside the base image are appended in order.
pub fn free_amalgam(
    base: &FinStructure,
    left: &FinStructure,
    left_emb: &[usize],
    right: &FinStructure,
    right_emb: &[usize],
) -> Result<FinStructure> {
    if !is_embedding(base, left, left_emb) || !is_embedding(base, right, right_emb) {
        return Err(Error::NotAMember(
            "amalgamation maps must be induced embeddings of the base".into(),
        ));
    }
    // Where each right point lands: base points onto the left copy,
    // fresh points after the left block.
    let mut right_to_out = vec![usize::MAX; right.domain_size()];
    for (a, &r) in right_emb.iter().enumerate() {
        right_to_out[r] = left_emb[a];
    }
    let mut next = left.domain_size();
    for slot in right_to_out.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut out = FinStructure::with_signature(next, left.signature().clone());
    for sym in 0..left.signature().len() {
        for t in left.tuples(sym) {
            out.add_tuple(sym, t.clone())?;
        }
        for t in right.tuples(sym) {
            out.add_tuple(sym, t.iter().map(|&p| right_to_out[p]).collect())?;
        }
    }
    Ok(out)
}

/// Induced embeddings of `a` into `b`, one per orbit under composition
/// with automorphisms of `b` (amalgams built from equivalent embeddings
/// are isomorphic).
fn embeddings_up_to_aut(a: &FinStructure, b: &FinStructure) -> Result<Vec<Vec<usize>>> {
    let all = embeddings(a, b)?;
    if all.len() <= 1 {
        return Ok(all);
    }
    let auts = automorphism_group(b).elements()?;
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for e in all {
        if seen.contains(&e) {
            continue;
        }
        for g in &auts {
            seen.insert(e.iter().map(|&p| g.apply(p)).collect());
        }
        reps.push(e);
    }
    Ok(reps)
}

/// Checks that the class behaves like a free amalgamation class on
/// members of at most `size_bound` points: removing a point never leaves
/// the class, and the free amalgam of two members over any common part
/// (the empty base covers joint embedding) is again a member.
pub fn check_amalgamation(spec: &ClassSpec, size_bound: usize) -> Result<AmalgamationReport> {
    check_amalgamation_with_cap(spec, size_bound, DEFAULT_MEMBER_CAP)
}

/// `check_amalgamation` against at most `member_cap` members. The amalgam
/// stage walks member triples, so classes with many small members need a
/// tighter cap than the enumeration default; the report's `truncated`
/// flag records that the verdict covers a prefix of the class.
pub fn check_amalgamation_with_cap(
    spec: &ClassSpec,
    size_bound: usize,
    member_cap: usize,
) -> Result<AmalgamationReport> {
    if size_bound == 0 {
        return Err(Error::EnumerationUnsupported(
            "size bound must be at least 1".into(),
        ));
    }
    let list = enumerate_members(spec, size_bound, member_cap)?;
    let mut report = AmalgamationReport {
        size_bound,
        members_checked: list.members.len(),
        truncated: list.truncated,
        hereditary_failures: Vec::new(),
        amalgam_failures: Vec::new(),
        amalgams_checked: 0,
    };

    for m in &list.members {
        for point in 0..m.domain_size() {
            let keep: Vec<usize> = (0..m.domain_size()).filter(|&p| p != point).collect();
            let (sub, _) = m.induced(&keep)?;
            if let Some(violation) = check_member(spec, &sub)? {
                if report.hereditary_failures.len() < FAILURE_LIST_CAP {
                    report.hereditary_failures.push(HereditaryFailure {
                        member: m.clone(),
                        removed_point: point,
                        violation,
                    });
                }
            }
        }
    }

    for (bi, b1) in list.members.iter().enumerate() {
        for b2 in &list.members[bi..] {
            for base in &list.members {
                if base.domain_size() > b1.domain_size().min(b2.domain_size()) {
                    continue;
                }
                let left_embs = embeddings_up_to_aut(base, b1)?;
                if left_embs.is_empty() {
                    continue;
                }
                let right_embs = embeddings_up_to_aut(base, b2)?;
                for e1 in &left_embs {
                    for e2 in &right_embs {
                        let glued = free_amalgam(base, b1, e1, b2, e2)?;
                        report.amalgams_checked += 1;
                        if let Some(violation) = check_member(spec, &glued)? {
                            if report.amalgam_failures.len() < FAILURE_LIST_CAP {
                                report.amalgam_failures.push(AmalgamFailure {
                                    base: base.clone(),
                                    left: b1.clone(),
                                    right: b2.clone(),
                                    left_embedding: e1.clone(),
                                    right_embedding: e2.clone(),
                                    violation,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Points of `m` that cannot be duplicated over the rest of the
/// structure: `a` is added to the result when `copies` fresh points,
/// each wired to `m` minus `a` exactly as `a` is, cannot coexist in a
/// member. Points of `anchor` are kept by definition. For a class closed
/// under free amalgamation the result is exactly `anchor`.
pub fn class_acl(
    spec: &ClassSpec,
    m: &FinStructure,
    anchor: &[usize],
    copies: usize,
) -> Result<Vec<usize>> {
    if let Some(v) = check_member(spec, m)? {
        return Err(Error::NotAMember(v.to_string()));
    }
    let mut anchor: Vec<usize> = anchor.to_vec();
    anchor.sort_unstable();
    anchor.dedup();
    for &p in &anchor {
        if p >= m.domain_size() {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: m.domain_size(),
            });
        }
    }
    let mut out = anchor.clone();
    for a in 0..m.domain_size() {
        if anchor.binary_search(&a).is_ok() {
            continue;
        }
        if !duplication_succeeds(spec, m, a, copies)? {
            out.push(a);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Builds `m` plus `copies - 1` fresh points, each related to the points
/// other than `a` exactly as `a` is (and to nothing else), and tests
/// membership. The tuples added are those of `a` with every occurrence
/// of `a` renamed to the copy.
fn duplication_succeeds(
    spec: &ClassSpec,
    m: &FinStructure,
    a: usize,
    copies: usize,
) -> Result<bool> {
    if copies <= 1 {
        return Ok(true);
    }
    let n = m.domain_size();
    let extra = copies - 1;
    let mut big = FinStructure::with_signature(n + extra, spec.signature().clone());
    for sym in 0..spec.signature().len() {
        for t in m.tuples(sym) {
            big.add_tuple(sym, t.clone())?;
            if t.contains(&a) {
                for c in 0..extra {
                    let copy = n + c;
                    big.add_tuple(
                        sym,
                        t.iter().map(|&p| if p == a { copy } else { p }).collect(),
                    )?;
                }
            }
        }
    }
    Ok(check_member(spec, &big)?.is_none())
}
