//! Orbit-based closure operators and homogeneity testing.

use super::{automorphism_group, FinStructure};
use crate::perm::{GeneratedGroup, Permutation};
use crate::structure::Signature;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Definable closure of `a`: points fixed by every automorphism fixing
/// `a` pointwise. Always contains `a`.
pub fn dcl(m: &FinStructure, a: &[usize]) -> Result<Vec<usize>> {
    acl_threshold(m, a, 1)
}

/// Threshold algebraic closure: points whose orbit under the pointwise
/// stabilizer of `a` has size at most `t`. `t = 1` is definable closure.
pub fn acl_threshold(m: &FinStructure, a: &[usize], t: usize) -> Result<Vec<usize>> {
    let aut = automorphism_group(m);
    acl_threshold_with(&aut, a, t)
}

/// [`acl_threshold`] against a precomputed automorphism group.
pub(crate) fn acl_threshold_with(
    aut: &GeneratedGroup,
    a: &[usize],
    t: usize,
) -> Result<Vec<usize>> {
    if t == 0 {
        return Err(Error::EnumerationUnsupported(
            "threshold must be at least 1".into(),
        ));
    }
    let stab = aut.pointwise_stabilizer(a)?;
    let mut out = Vec::new();
    for v in 0..aut.degree() {
        if stab.orbit(v)?.len() <= t {
            out.push(v);
        }
    }
    Ok(out)
}

/// Result of a homogeneity test.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    pub witness: Option<HomogeneityWitness>,
}

/// Two tuples with the same atomic type lying in different automorphism
/// orbits: the partial isomorphism `source[i] -> target[i]` does not
/// extend to an automorphism.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityWitness {
    pub size: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

/// Whether every isomorphism between induced substructures extends to an
/// automorphism. Checks ordered tuples of distinct points of every size
/// below the domain size, grouping them by atomic type and by
/// automorphism orbit; homogeneity holds exactly when the two partitions
/// agree. Full-domain tuples never disagree: a type-preserving bijection
/// of the whole domain is itself an automorphism. Returns the first
/// counterexample found, smallest size first.
pub fn is_homogeneous(m: &FinStructure) -> Result<HomogeneityReport> {
    let n = m.domain_size();
    if n > 200 || m.signature().symbols().len() > u16::MAX as usize {
        return Err(Error::EnumerationUnsupported(
            "homogeneity scan handles at most 200 points".into(),
        ));
    }
    let aut = automorphism_group(m);
    let mut enumerator = TupleScan::new(m, aut.generators().to_vec());
    for s in 1..n {
        if let Some(w) = enumerator.scan_size(s) {
            return Ok(HomogeneityReport {
                homogeneous: false,
                witness: Some(w),
            });
        }
    }
    Ok(HomogeneityReport {
        homogeneous: true,
        witness: None,
    })
}

/// Depth-first enumeration of ordered tuples of distinct points that
/// maintains the tuple's atomic-type encoding incrementally: each
/// relation tuple is charged to the position where its last point enters
/// the prefix, so equal encodings mean equal ordered types.
struct TupleScan<'a> {
    m: &'a FinStructure,
    gens: Vec<Permutation>,
    // Per point: relation tuples mentioning it, as (symbol, tuple).
    incidence: Vec<Vec<(usize, &'a Vec<usize>)>>,
    pos: Vec<usize>,
    cur: Vec<usize>,
    // Type encoding of `cur`, with per-position segment offsets.
    encoding: Vec<u8>,
    segments: Vec<usize>,
    types: HashMap<Vec<u8>, (usize, Vec<usize>)>,
    orbit_of: HashMap<Vec<usize>, usize>,
    next_orbit: usize,
    witness: Option<HomogeneityWitness>,
}

const UNPLACED: usize = usize::MAX;

impl<'a> TupleScan<'a> {
    fn new(m: &'a FinStructure, gens: Vec<Permutation>) -> Self {
        let n = m.domain_size();
        let mut incidence: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); n];
        for sym in 0..m.signature().symbols().len() {
            for t in m.tuples(sym) {
                let mut distinct: Vec<usize> = t.clone();
                distinct.sort_unstable();
                distinct.dedup();
                for p in distinct {
                    incidence[p].push((sym, t));
                }
            }
        }
        TupleScan {
            m,
            gens,
            incidence,
            pos: vec![UNPLACED; n],
            cur: Vec::new(),
            encoding: Vec::new(),
            segments: Vec::new(),
            types: HashMap::new(),
            orbit_of: HashMap::new(),
            next_orbit: 0,
            witness: None,
        }
    }

    fn scan_size(&mut self, s: usize) -> Option<HomogeneityWitness> {
        self.types.clear();
        self.orbit_of.clear();
        self.next_orbit = 0;
        self.witness = None;
        self.descend(s);
        self.witness.take()
    }

    fn descend(&mut self, s: usize) {
        if self.cur.len() == s {
            self.classify_leaf(s);
            return;
        }
        for v in 0..self.m.domain_size() {
            if self.pos[v] != UNPLACED {
                continue;
            }
            self.push_point(v);
            self.descend(s);
            self.pop_point(v);
            if self.witness.is_some() {
                return;
            }
        }
    }

    fn push_point(&mut self, v: usize) {
        self.pos[v] = self.cur.len();
        self.cur.push(v);
        self.segments.push(self.encoding.len());
        // Relation tuples whose last point just arrived (v is in each of
        // them, so "fully placed" first happens now), as length-prefixed
        // position patterns, sorted so the segment depends only on the
        // prefix as a set of patterns.
        let mut patterns: Vec<Vec<u8>> = Vec::new();
        'tuples: for &(sym, t) in &self.incidence[v] {
            let mut pat = Vec::with_capacity(t.len() + 3);
            pat.push((t.len() + 2) as u8);
            pat.push((sym >> 8) as u8);
            pat.push((sym & 0xFF) as u8);
            for &p in t {
                if self.pos[p] == UNPLACED {
                    continue 'tuples;
                }
                pat.push(self.pos[p] as u8);
            }
            patterns.push(pat);
        }
        patterns.sort_unstable();
        for pat in patterns {
            self.encoding.extend_from_slice(&pat);
        }
    }

    fn pop_point(&mut self, v: usize) {
        self.encoding.truncate(self.segments.pop().expect("push before pop"));
        self.cur.pop();
        self.pos[v] = UNPLACED;
    }

    fn classify_leaf(&mut self, s: usize) {
        let id = match self.orbit_of.get(self.cur.as_slice()) {
            Some(&id) => id,
            None => {
                let id = self.next_orbit;
                self.next_orbit += 1;
                let mut queue = VecDeque::from([self.cur.clone()]);
                self.orbit_of.insert(self.cur.clone(), id);
                while let Some(t) = queue.pop_front() {
                    for g in &self.gens {
                        let img: Vec<usize> = t.iter().map(|&p| g.apply(p)).collect();
                        if !self.orbit_of.contains_key(&img) {
                            self.orbit_of.insert(img.clone(), id);
                            queue.push_back(img);
                        }
                    }
                }
                id
            }
        };
        match self.types.get(self.encoding.as_slice()) {
            None => {
                self.types.insert(self.encoding.clone(), (id, self.cur.clone()));
            }
            Some((first_id, first_tuple)) => {
                if *first_id != id {
                    self.witness = Some(HomogeneityWitness {
                        size: s,
                        source: first_tuple.clone(),
                        target: self.cur.clone(),
                    });
                }
            }
        }
    }
}

/// A relational structure on the points of `g` whose automorphism group
/// is exactly `g`: one relation per orbit of `g` on tuples of each arity
/// up to `max_arity` (tuples may repeat entries). Symbols are named
/// `O<arity>_<index>` in orbit discovery order.
pub fn canonical_relational(g: &GeneratedGroup, max_arity: usize) -> Result<FinStructure> {
    let n = g.degree();
    if max_arity == 0 {
        return Err(Error::EnumerationUnsupported("max_arity must be >= 1".into()));
    }
    let mut total: u64 = 0;
    for a in 1..=max_arity as u32 {
        total = total.saturating_add((n as u64).saturating_pow(a));
    }
    if total > 2_000_000 {
        return Err(Error::EnumerationUnsupported(format!(
            "{total} tuples exceed the canonical presentation cap"
        )));
    }
    let gens = g.generators().to_vec();
    let mut symbols: Vec<(String, usize)> = Vec::new();
    let mut tables: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for arity in 1..=max_arity {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut counter = 0usize;
        let mut tuple = vec![0usize; arity];
        loop {
            if !seen.contains(&tuple) {
                // New orbit.
                let mut orbit = BTreeSet::from([tuple.clone()]);
                let mut queue = VecDeque::from([tuple.clone()]);
                while let Some(t) = queue.pop_front() {
                    for gperm in &gens {
                        let img: Vec<usize> = t.iter().map(|&p| gperm.apply(p)).collect();
                        if orbit.insert(img.clone()) {
                            queue.push_back(img);
                        }
                    }
                }
                seen.extend(orbit.iter().cloned());
                symbols.push((format!("O{arity}_{counter}"), arity));
                tables.push(orbit);
                counter += 1;
            }
            // Next tuple in lex order.
            let mut i = arity;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < n {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || n == 0 {
                break;
            }
        }
        if n == 0 {
            break;
        }
    }
    let signature = Signature::new(symbols)?;
    let mut out = FinStructure::with_signature(n, signature);
    for (sym, table) in tables.into_iter().enumerate() {
        for t in table {
            out.add_tuple(sym, t)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> FinStructure {
        FinStructure::graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn dcl_in_a_cycle_fixes_everything_from_two_points() {
        let m = c5();
        // Fixing two adjacent vertices kills the dihedral group.
        assert_eq!(dcl(&m, &[0, 1]).unwrap(), vec![0, 1, 2, 3, 4]);
        // Fixing one vertex leaves the reflection through it.
        assert_eq!(dcl(&m, &[0]).unwrap(), vec![0]);
        assert_eq!(dcl(&m, &[]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn acl_threshold_widens_with_t() {
        let m = c5();
        // Orbits under the stabilizer of vertex 0: {0}, {1,4}, {2,3}.
        assert_eq!(acl_threshold(&m, &[0], 1).unwrap(), vec![0]);
        assert_eq!(acl_threshold(&m, &[0], 2).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(acl_threshold(&m, &[0], 0).is_err());
    }

    #[test]
    fn pure_set_has_trivial_closures() {
        let m = FinStructure::pure_set(5);
        assert_eq!(dcl(&m, &[2, 4]).unwrap(), vec![2, 4]);
        assert_eq!(acl_threshold(&m, &[1], 2).unwrap(), vec![1]);
    }

    #[test]
    fn cycle_and_pure_set_are_homogeneous() {
        assert!(is_homogeneous(&c5()).unwrap().homogeneous);
        assert!(is_homogeneous(&FinStructure::pure_set(5)).unwrap().homogeneous);
    }

    #[test]
    fn path_is_not_homogeneous() {
        let p4 = FinStructure::graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let report = is_homogeneous(&p4).unwrap();
        assert!(!report.homogeneous);
        let w = report.witness.unwrap();
        // Already single points fail: an endpoint and a midpoint span
        // isomorphic one-point substructures but lie in different orbits.
        assert_eq!(w.size, 1);
        let t1 = p4.ordered_type(&w.source);
        let t2 = p4.ordered_type(&w.target);
        assert_eq!(t1, t2);
    }

    #[test]
    fn six_cycle_is_not_homogeneous() {
        let c6 = FinStructure::graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let report = is_homogeneous(&c6).unwrap();
        assert!(!report.homogeneous);
        assert_eq!(report.witness.unwrap().size, 2);
    }

    #[test]
    fn canonical_relational_recovers_the_group() {
        // For several groups G of small degree, Aut(canonical(G)) = G.
        let cases = vec![
            GeneratedGroup::cyclic_shift(4),
            GeneratedGroup::symmetric(4),
            GeneratedGroup::from_generators(&[
                Permutation::from_cycles(4, "(0 1)(2 3)").unwrap(),
                Permutation::from_cycles(4, "(0 2)(1 3)").unwrap(),
            ])
            .unwrap(),
            GeneratedGroup::from_generators(&[
                Permutation::from_cycles(5, "(0 1 2 3 4)").unwrap(),
                Permutation::from_cycles(5, "(1 2 4 3)").unwrap(),
            ])
            .unwrap(),
            GeneratedGroup::trivial(3),
        ];
        for g in cases {
            // Arity up to the degree: the orbit of (0, .., n-1) then pins
            // the automorphisms down to exactly g. Lower arities can fall
            // short, e.g. for 2-transitive proper subgroups.
            let m = canonical_relational(&g, g.degree().max(1)).unwrap();
            let aut = automorphism_group(&m);
            assert_eq!(aut.order(), g.order(), "degree {}", g.degree());
            for gen in g.generators() {
                assert!(aut.contains(gen));
            }
        }
    }

    #[test]
    fn canonical_relational_of_c4_has_expected_orbit_relations() {
        let g = GeneratedGroup::cyclic_shift(4);
        let m = canonical_relational(&g, 2).unwrap();
        // Arity 1: one orbit (transitive); arity 2: 4 orbits (the diagonal
        // plus three shift classes).
        let unary: Vec<_> = m
            .signature()
            .symbols()
            .iter()
            .filter(|(_, a)| *a == 1)
            .collect();
        let binary: Vec<_> = m
            .signature()
            .symbols()
            .iter()
            .filter(|(_, a)| *a == 2)
            .collect();
        assert_eq!(unary.len(), 1);
        assert_eq!(binary.len(), 4);
    }
}
