//! Recovering a point bijection from an abstract isomorphism of symmetry
//! groups. An isomorphism presented on generators is expanded to the full
//! element map, point stabilizers are pushed through it and matched
//! against the minimal-closed-set stabilizers of the target, and the
//! resulting bijection is certified by the conjugation identity and an
//! orbit-level definability comparison. A seeded scramble harness
//! produces solved instances for testing, and a generator-image search
//! exhibits the classical six-point isomorphism that no point bijection
//! induces.

use crate::exaut::ClosureKind;
use crate::perm::{GeneratedGroup, Permutation};
use crate::structure::{automorphism_group, canonical_relational, is_homogeneous, FinStructure};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Largest group the element-map expansion will materialize.
const EXPANSION_CAP: u64 = 200_000;

/// Tuple-space ceiling for the orbit comparisons in [`bidef_check`].
const TUPLE_SCAN_CAP: u64 = 2_000_000;

/// An isomorphism between two permutation groups, presented by images of
/// the source generators and expanded to the full element map on
/// construction. The expansion doubles as the verification: a clash
/// between two generator words for one element is a violated relation,
/// and the image set must exhaust the target.
#[derive(Clone, Debug)]
pub struct GroupIso {
    source: GeneratedGroup,
    target: GeneratedGroup,
    generator_images: Vec<Permutation>,
    /// `(g, F(g))` for every source element, sorted by `g`.
    graph: Vec<(Permutation, Permutation)>,
}

impl GroupIso {
    /// Expands `generator_images[i]` as the image of the `i`-th source
    /// generator. Fails with `NotAHomomorphism` when the images violate a
    /// relation of the source, and `NotBijectiveOntoTarget` when the
    /// extension is not a bijection onto the target group.
    pub fn new(
        source: GeneratedGroup,
        target: GeneratedGroup,
        generator_images: Vec<Permutation>,
    ) -> Result<GroupIso> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism);
        }
        for img in &generator_images {
            if img.degree() != target.degree() {
                return Err(Error::DegreeMismatch(target.degree(), img.degree()));
            }
            if !target.contains(img) {
                return Err(Error::NotBijectiveOntoTarget);
            }
        }
        let order = source.order();
        if order > EXPANSION_CAP {
            return Err(Error::OrderBoundExceeded {
                order,
                bound: EXPANSION_CAP,
            });
        }
        let e = Permutation::identity(source.degree());
        let mut map: BTreeMap<Permutation, Permutation> = BTreeMap::new();
        map.insert(e.clone(), Permutation::identity(target.degree()));
        let mut queue = VecDeque::from([e]);
        while let Some(g) = queue.pop_front() {
            let h = map.get(&g).expect("queued elements are mapped").clone();
            for (s, s_img) in source.generators().iter().zip(&generator_images) {
                let g2 = g.compose(s)?;
                let h2 = h.compose(s_img)?;
                match map.get(&g2) {
                    None => {
                        map.insert(g2.clone(), h2);
                        queue.push_back(g2);
                    }
                    Some(prev) if *prev != h2 => return Err(Error::NotAHomomorphism),
                    Some(_) => {}
                }
            }
        }
        let images: BTreeSet<&Permutation> = map.values().collect();
        if images.len() != map.len() || map.len() as u64 != target.order() {
            return Err(Error::NotBijectiveOntoTarget);
        }
        Ok(GroupIso {
            source,
            target,
            generator_images,
            graph: map.into_iter().collect(),
        })
    }

    /// The identity isomorphism of a group onto itself.
    pub fn identity(group: &GeneratedGroup) -> Result<GroupIso> {
        GroupIso::new(group.clone(), group.clone(), group.generators().to_vec())
    }

    /// The isomorphism `g -> sigma g sigma^{-1}` from `source` onto
    /// `target`. Fails when a conjugated generator falls outside the
    /// target.
    pub fn conjugation(
        source: &GeneratedGroup,
        target: &GeneratedGroup,
        sigma: &Permutation,
    ) -> Result<GroupIso> {
        let inv = sigma.inverse();
        let images: Vec<Permutation> = source
            .generators()
            .iter()
            .map(|g| sigma.compose(g)?.compose(&inv))
            .collect::<Result<_>>()?;
        GroupIso::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &GeneratedGroup {
        &self.source
    }

    pub fn target(&self) -> &GeneratedGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// `(g, F(g))` for every source element, ascending in `g`.
    pub fn pairs(&self) -> impl Iterator<Item = (&Permutation, &Permutation)> {
        self.graph.iter().map(|(g, h)| (g, h))
    }

    /// Image of one source element.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        match self.graph.binary_search_by(|(k, _)| k.cmp(g)) {
            Ok(i) => Ok(self.graph[i].1.clone()),
            Err(_) => Err(Error::NotAMember(
                "element outside the source group".into(),
            )),
        }
    }
}

/// A bijection between the points of two structures, as recovered from a
/// group isomorphism. [`verify_conjugation`] checks the defining
/// property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointBijection {
    pub map: Permutation,
}

/// A minimal nonempty closed set and its pointwise stabilizer.
#[derive(Clone, Debug)]
pub struct MinimalStabilizer {
    pub set: Vec<usize>,
    pub stabilizer: GeneratedGroup,
}

/// The stabilizers of the minimal nonempty closed sets of a structure,
/// with the ambient automorphism group. Point recovery needs
/// `singletons`; when it is false the structure cannot separate its
/// points by stabilizers and callers should expect ambiguity.
#[derive(Clone, Debug)]
pub struct MinimalStabilizerList {
    pub aut: GeneratedGroup,
    pub entries: Vec<MinimalStabilizer>,
    pub singletons: bool,
}

/// Closes every singleton and keeps the inclusion-minimal results, each
/// paired with its pointwise stabilizer. Every nonempty closed set
/// contains a singleton closure, so these are exactly the minimal
/// nonempty closed sets.
pub fn minimal_stabilizers(
    m: &FinStructure,
    closure_kind: &ClosureKind,
) -> Result<MinimalStabilizerList> {
    let aut = automorphism_group(m);
    let mut closures: Vec<Vec<usize>> = Vec::new();
    for a in 0..m.domain_size() {
        let k = closure_kind.close(m, &aut, &[a])?;
        if !closures.contains(&k) {
            closures.push(k);
        }
    }
    let mut minimal: Vec<Vec<usize>> = closures
        .iter()
        .filter(|k| {
            !closures
                .iter()
                .any(|o| o != *k && o.iter().all(|p| k.binary_search(p).is_ok()))
        })
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let singletons = minimal.iter().all(|k| k.len() == 1);
    let entries = minimal
        .into_iter()
        .map(|set| {
            let stabilizer = aut.pointwise_stabilizer(&set)?;
            Ok(MinimalStabilizer { set, stabilizer })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinimalStabilizerList {
        aut,
        entries,
        singletons,
    })
}

/// Recovers the point bijection behind `iso`: the image of each point
/// stabilizer of `m` is matched against the minimal stabilizers of `n`
/// under definable closure, and the matched singletons assemble the map.
/// `NoMinimalStabilizerMatch` means no point bijection induces `iso`;
/// `AmbiguousMatch` means the structures cannot separate points (a
/// non-singleton closure, coinciding stabilizers, or several equal
/// matches).
pub fn induced_bijection(
    iso: &GroupIso,
    m: &FinStructure,
    n: &FinStructure,
) -> Result<PointBijection> {
    if m.domain_size() != n.domain_size() {
        return Err(Error::DegreeMismatch(m.domain_size(), n.domain_size()));
    }
    if iso.source().degree() != m.domain_size() {
        return Err(Error::DegreeMismatch(m.domain_size(), iso.source().degree()));
    }
    if iso.target().degree() != n.domain_size() {
        return Err(Error::DegreeMismatch(n.domain_size(), iso.target().degree()));
    }
    let aut_m = automorphism_group(m);
    if iso.source().order() != aut_m.order()
        || !iso.source().generators().iter().all(|g| aut_m.contains(g))
    {
        return Err(Error::NotAnAutomorphism);
    }
    let targets = minimal_stabilizers(n, &ClosureKind::Dcl)?;
    if iso.target().order() != targets.aut.order()
        || !iso
            .target()
            .generators()
            .iter()
            .all(|g| targets.aut.contains(g))
    {
        return Err(Error::NotAnAutomorphism);
    }
    let target_sets: Vec<BTreeSet<Permutation>> = targets
        .entries
        .iter()
        .map(|e| Ok(e.stabilizer.elements()?.into_iter().collect()))
        .collect::<Result<_>>()?;

    let size = m.domain_size();
    let mut images = vec![usize::MAX; size];
    let mut taken = vec![false; size];
    for a in 0..size {
        let image_stab: BTreeSet<Permutation> = iso
            .pairs()
            .filter(|(g, _)| g.apply(a) == a)
            .map(|(_, h)| h.clone())
            .collect();
        let matches: Vec<usize> = target_sets
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == image_stab)
            .map(|(i, _)| i)
            .collect();
        let entry = match matches[..] {
            [] => return Err(Error::NoMinimalStabilizerMatch { point: a }),
            [one] => &targets.entries[one],
            _ => {
                return Err(Error::AmbiguousMatch {
                    point: a,
                    count: matches.len(),
                })
            }
        };
        if entry.set.len() != 1 {
            return Err(Error::AmbiguousMatch {
                point: a,
                count: entry.set.len(),
            });
        }
        let b = entry.set[0];
        if taken[b] {
            // Two source points push onto one stabilizer: no bijection
            // separates them.
            return Err(Error::AmbiguousMatch { point: a, count: 2 });
        }
        taken[b] = true;
        images[a] = b;
    }
    let map = Permutation::from_images(images)?;
    Ok(PointBijection { map })
}

/// Whether `iso` agrees with conjugation by `f` on every source
/// generator; with [`GroupIso`] verified, agreement on generators forces
/// agreement everywhere.
pub fn verify_conjugation(iso: &GroupIso, f: &PointBijection) -> bool {
    let inv = f.map.inverse();
    iso.source
        .generators()
        .iter()
        .zip(&iso.generator_images)
        .all(|(g, img)| match f.map.compose(g).and_then(|p| p.compose(&inv)) {
            Ok(conj) => conj == *img,
            Err(_) => false,
        })
}

/// [`verify_conjugation`] over the full expanded element map instead of
/// the generators.
pub fn verify_conjugation_all(iso: &GroupIso, f: &PointBijection) -> bool {
    let inv = f.map.inverse();
    iso.pairs()
        .all(|(g, img)| match f.map.compose(g).and_then(|p| p.compose(&inv)) {
            Ok(conj) => conj == *img,
            Err(_) => false,
        })
}

/// Orbit comparison at one arity: counts on both sides and whether `f`
/// carried the partition of source tuples exactly onto the target one.
#[derive(Clone, Debug, Serialize)]
pub struct ArityOrbits {
    pub arity: usize,
    pub source_orbits: usize,
    pub target_orbits: usize,
    pub matched: bool,
}

/// Outcome of [`bidef_check`].
#[derive(Clone, Debug, Serialize)]
pub struct BidefReport {
    pub arities: Vec<ArityOrbits>,
    pub pass: bool,
}

/// Checks that `f` identifies the invariant relations of the two
/// structures arity by arity: the orbit partition on source tuples must
/// map exactly onto the orbit partition on target tuples, for every
/// arity up to the bound. Relations preserved by all symmetries are
/// precisely the orbit unions, so this is definitional equivalence at
/// desk scale.
pub fn bidef_check(
    m: &FinStructure,
    n: &FinStructure,
    f: &PointBijection,
    arity_bound: usize,
) -> Result<BidefReport> {
    if m.domain_size() != n.domain_size() {
        return Err(Error::DegreeMismatch(m.domain_size(), n.domain_size()));
    }
    if f.map.degree() != m.domain_size() {
        return Err(Error::DegreeMismatch(m.domain_size(), f.map.degree()));
    }
    let am = automorphism_group(m);
    let an = automorphism_group(n);
    let size = m.domain_size();
    let mut arities = Vec::new();
    let mut pass = true;
    for arity in 1..=arity_bound {
        let (src_ids, source_orbits) = tuple_orbit_ids(&am, arity)?;
        let (tgt_ids, target_orbits) = tuple_orbit_ids(&an, arity)?;
        let mut matched = source_orbits == target_orbits;
        if matched {
            let mut assoc = vec![usize::MAX; source_orbits];
            for (idx, &s) in src_ids.iter().enumerate() {
                let image_idx = decode_tuple(idx, size, arity)
                    .into_iter()
                    .fold(0, |acc, p| acc * size + f.map.apply(p));
                let t = tgt_ids[image_idx];
                if assoc[s] == usize::MAX {
                    assoc[s] = t;
                } else if assoc[s] != t {
                    matched = false;
                    break;
                }
            }
        }
        pass &= matched;
        arities.push(ArityOrbits {
            arity,
            source_orbits,
            target_orbits,
            matched,
        });
    }
    Ok(BidefReport { arities, pass })
}

/// Orbit ids for all tuples (repetition allowed) of one arity, indexed
/// in lexicographic order, plus the orbit count.
fn tuple_orbit_ids(g: &GeneratedGroup, arity: usize) -> Result<(Vec<usize>, usize)> {
    let n = g.degree();
    let total = (n as u64)
        .checked_pow(arity as u32)
        .filter(|&t| t <= TUPLE_SCAN_CAP)
        .ok_or_else(|| {
            Error::EnumerationUnsupported(format!(
                "{n}^{arity} tuples exceed the orbit scan cap"
            ))
        })? as usize;
    let mut ids = vec![usize::MAX; total];
    let mut count = 0;
    for start in 0..total {
        if ids[start] != usize::MAX {
            continue;
        }
        ids[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(idx) = queue.pop_front() {
            let tuple = decode_tuple(idx, n, arity);
            for gen in g.generators() {
                let img = tuple.iter().fold(0, |acc, &p| acc * n + gen.apply(p));
                if ids[img] == usize::MAX {
                    ids[img] = count;
                    queue.push_back(img);
                }
            }
        }
        count += 1;
    }
    Ok((ids, count))
}

fn decode_tuple(mut idx: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut t = vec![0usize; arity];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// A solved reconstruction instance: the relabeled structure, the
/// induced group isomorphism, and the relabeling that produced both.
#[derive(Clone, Debug)]
pub struct ScrambleInstance {
    pub scrambled: FinStructure,
    pub iso: GroupIso,
    pub hidden: Permutation,
}

/// Relabels `m` by a seeded random permutation and presents the induced
/// isomorphism between the two symmetry groups on generators. The hidden
/// permutation is kept for grading recoveries.
pub fn scramble_harness(m: &FinStructure, seed: u64) -> Result<ScrambleInstance> {
    let size = m.domain_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..size).collect();
    points.shuffle(&mut rng);
    let hidden = Permutation::from_images(points)?;
    let scrambled = m.relabel(&hidden)?;
    let source = automorphism_group(m);
    let target = automorphism_group(&scrambled);
    let iso = GroupIso::conjugation(&source, &target, &hidden)?;
    Ok(ScrambleInstance {
        scrambled,
        iso,
        hidden,
    })
}

/// An isomorphism of the symmetric group on six points onto itself that
/// no relabeling of the points induces: the transposition generator
/// lands on a product of three disjoint transpositions, and conjugation
/// preserves cycle structure. Found by generator-image search pruned by
/// element orders, certified by the [`GroupIso`] expansion. Six is the
/// only degree where such a map exists.
pub fn outer_sym6() -> Result<GroupIso> {
    let s6 = GeneratedGroup::symmetric(6);
    let elements = s6.elements()?;
    let swap = s6.generators()[0].clone();
    let cycle = s6.generators()[1].clone();
    // Invariants of the generator pair that any automorphism preserves.
    let product_order = swap.compose(&cycle)?.order();
    let twist_order = swap
        .compose(&cycle.compose(&swap)?.compose(&cycle.inverse())?)?
        .order();
    let triples: Vec<&Permutation> = elements
        .iter()
        .filter(|p| p.cycle_type() == [2, 2, 2])
        .collect();
    let sixes: Vec<&Permutation> = elements.iter().filter(|p| p.order() == 6).collect();
    for t in &triples {
        for c in &sixes {
            if t.compose(c)?.order() != product_order {
                continue;
            }
            let twist = t.compose(&c.compose(t)?.compose(&c.inverse())?)?;
            if twist.order() != twist_order {
                continue;
            }
            if let Ok(iso) = GroupIso::new(
                s6.clone(),
                s6.clone(),
                vec![(*t).clone(), (*c).clone()],
            ) {
                return Ok(iso);
            }
        }
    }
    Err(Error::NotAHomomorphism)
}

/// Replaces a structure by its orbit-relational form on the same points
/// when it is not homogeneous: one relation per symmetry orbit on tuples
/// of arity up to `max_arity`, leaving the symmetry group unchanged but
/// making every orbit quantifier-free. Homogeneous structures come back
/// untouched; the flag reports whether a rewrite happened.
pub fn canonical_preprocess(m: &FinStructure, max_arity: usize) -> Result<(FinStructure, bool)> {
    if is_homogeneous(m)?.homogeneous {
        return Ok((m.clone(), false));
    }
    let aut = automorphism_group(m);
    Ok((canonical_relational(&aut, max_arity)?, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::playground;
    use crate::structure::Signature;

    fn pure_set(n: usize) -> FinStructure {
        FinStructure::with_signature(n, Signature::new(vec![]).unwrap())
    }

    #[test]
    fn minimal_stabilizers_of_a_pure_set_are_point_stabilizers() {
        let list = minimal_stabilizers(&pure_set(4), &ClosureKind::Dcl).unwrap();
        assert!(list.singletons);
        assert_eq!(list.entries.len(), 4);
        for (i, e) in list.entries.iter().enumerate() {
            assert_eq!(e.set, vec![i]);
            assert_eq!(e.stabilizer.order(), 6);
        }
    }

    #[test]
    fn a_single_point_has_one_trivial_stabilizer() {
        let list = minimal_stabilizers(&pure_set(1), &ClosureKind::Dcl).unwrap();
        assert!(list.singletons);
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].stabilizer.order(), 1);
    }

    #[test]
    fn cycle_stabilizers_are_the_reflections() {
        let list = minimal_stabilizers(&playground::cycle(5), &ClosureKind::Dcl).unwrap();
        assert!(list.singletons);
        assert_eq!(list.entries.len(), 5);
        assert!(list.entries.iter().all(|e| e.stabilizer.order() == 2));
    }

    #[test]
    fn trivial_point_stabilizers_collapse_the_closures() {
        // The path's only symmetry is the end-to-end reversal, so every
        // point stabilizer is trivial and every singleton closure is the
        // whole domain.
        let list = minimal_stabilizers(&playground::path(4), &ClosureKind::Dcl).unwrap();
        assert!(!list.singletons);
        assert_eq!(list.entries.len(), 1);
        assert_eq!(list.entries[0].set, vec![0, 1, 2, 3]);
    }

    #[test]
    fn expansion_accepts_conjugation_and_rejects_wrong_images() {
        let s3 = GeneratedGroup::symmetric(3);
        let id = GroupIso::identity(&s3).unwrap();
        assert_eq!(id.pairs().count(), 6);
        let g = Permutation::from_cycles(3, "(0 2 1)").unwrap();
        assert_eq!(id.apply(&g).unwrap(), g);

        // Sending the transposition to a 3-cycle breaks its order.
        let t_img = Permutation::from_cycles(3, "(0 1 2)").unwrap();
        let c_img = Permutation::from_cycles(3, "(0 1 2)").unwrap();
        assert!(matches!(
            GroupIso::new(s3.clone(), s3.clone(), vec![t_img, c_img]),
            Err(Error::NotAHomomorphism)
        ));

        // The sign map is a genuine homomorphism but lands on two elements.
        let t_img = Permutation::from_cycles(3, "(0 1)").unwrap();
        let c_img = Permutation::identity(3);
        assert!(matches!(
            GroupIso::new(s3.clone(), s3.clone(), vec![t_img, c_img]),
            Err(Error::NotBijectiveOntoTarget)
        ));
    }

    #[test]
    fn conjugation_recovers_the_conjugator() {
        let m = pure_set(5);
        let aut = automorphism_group(&m);
        let sigma = Permutation::from_cycles(5, "(0 1 2 3 4)").unwrap();
        let iso = GroupIso::conjugation(&aut, &aut, &sigma).unwrap();
        let f = induced_bijection(&iso, &m, &m).unwrap();
        assert_eq!(f.map, sigma);
        assert!(verify_conjugation(&iso, &f));
        assert!(verify_conjugation_all(&iso, &f));
    }

    #[test]
    fn identity_isomorphism_recovers_identity() {
        let m = playground::cycle(5);
        let aut = automorphism_group(&m);
        let iso = GroupIso::identity(&aut).unwrap();
        let f = induced_bijection(&iso, &m, &m).unwrap();
        assert!(f.map.is_identity());
    }

    #[test]
    fn a_wrong_bijection_fails_conjugation() {
        let m = pure_set(5);
        let aut = automorphism_group(&m);
        let sigma = Permutation::from_cycles(5, "(0 1 2 3 4)").unwrap();
        let iso = GroupIso::conjugation(&aut, &aut, &sigma).unwrap();
        let off = PointBijection {
            map: sigma.compose(&Permutation::from_cycles(5, "(0 1)").unwrap()).unwrap(),
        };
        assert!(!verify_conjugation(&iso, &off));
    }

    #[test]
    fn two_points_cannot_be_separated() {
        let m = pure_set(2);
        let aut = automorphism_group(&m);
        let iso = GroupIso::identity(&aut).unwrap();
        assert!(matches!(
            induced_bijection(&iso, &m, &m),
            Err(Error::AmbiguousMatch { .. })
        ));
    }

    #[test]
    fn scramble_instances_reproduce_and_solve() {
        let m = playground::cycle(5);
        let a = scramble_harness(&m, 11).unwrap();
        let b = scramble_harness(&m, 11).unwrap();
        assert_eq!(a.hidden, b.hidden);
        assert_eq!(a.scrambled, b.scrambled);
        let f = induced_bijection(&a.iso, &m, &a.scrambled).unwrap();
        assert!(verify_conjugation(&a.iso, &f));
        assert!(verify_conjugation_all(&a.iso, &f));
        // The cycle's symmetry group has trivial center, so the recovered
        // map is the hidden relabeling itself.
        assert_eq!(f.map, a.hidden);
    }

    #[test]
    fn seeded_sweep_round_trips_on_separated_playgrounds() {
        for m in [pure_set(4), pure_set(5), playground::cycle(5), playground::rook(3)] {
            for seed in 0..5 {
                let inst = scramble_harness(&m, seed).unwrap();
                let f = induced_bijection(&inst.iso, &m, &inst.scrambled).unwrap();
                assert!(verify_conjugation_all(&inst.iso, &f), "seed {seed}");
                let bidef = bidef_check(&m, &inst.scrambled, &f, 3).unwrap();
                assert!(bidef.pass, "seed {seed}");
            }
        }
    }

    #[test]
    fn orbit_partitions_differ_between_cycle_and_edgeless() {
        let m = playground::cycle(5);
        let n = playground::edgeless(5);
        let f = PointBijection {
            map: Permutation::identity(5),
        };
        let report = bidef_check(&m, &n, &f, 2).unwrap();
        assert!(!report.pass);
        assert_eq!(report.arities[0].arity, 1);
        assert!(report.arities[0].matched);
        // Pairs: diagonal, adjacent, non-adjacent against diagonal, other.
        assert_eq!(report.arities[1].source_orbits, 3);
        assert_eq!(report.arities[1].target_orbits, 2);
        assert!(!report.arities[1].matched);
    }

    #[test]
    fn six_points_admit_a_stabilizer_scrambling_isomorphism() {
        let iso = outer_sym6().unwrap();
        assert_eq!(iso.generator_images()[0].cycle_type(), vec![2, 2, 2]);
        let m = pure_set(6);
        assert!(matches!(
            induced_bijection(&iso, &m, &m),
            Err(Error::NoMinimalStabilizerMatch { .. })
        ));
    }

    #[test]
    fn preprocessing_rewrites_only_inhomogeneous_structures() {
        let (same, rewritten) = canonical_preprocess(&playground::cycle(5), 2).unwrap();
        assert!(!rewritten);
        assert_eq!(same, playground::cycle(5));

        // The path is not homogeneous: equal pair types at different
        // distances. Its orbit-relational form keeps the symmetries.
        let p4 = playground::path(4);
        let (canon, rewritten) = canonical_preprocess(&p4, 2).unwrap();
        assert!(rewritten);
        assert_eq!(
            automorphism_group(&canon).order(),
            automorphism_group(&p4).order()
        );
    }
}
