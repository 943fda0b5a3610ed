//! Permutation groups represented by a base and strong generating set.

use super::Permutation;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Hard cap for full element enumeration.
pub(crate) const ELEMENT_ENUM_CAP: u64 = 4_000_000;

/// A permutation group held as generators plus a stabilizer chain.
///
/// The chain is deterministic: base points are prescribed ones first, then
/// the least moved point each time a level is opened, and transversals are
/// grown by breadth-first search in point order. Two builds from the same
/// input produce identical chains.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators first discovered at this level; they fix the base
    /// points of all earlier levels. The generating set relevant to level i
    /// is the union of `parked` over levels >= i.
    parked: Vec<Permutation>,
    /// point in the orbit of `base` -> element mapping `base` to it.
    transversal: BTreeMap<usize, Permutation>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Permutation::identity(degree));
        Level {
            base,
            parked: Vec::new(),
            transversal,
        }
    }
}

struct Builder {
    degree: usize,
    chain: Vec<Level>,
}

impl Builder {
    fn new(degree: usize, prescribed: &[usize]) -> Self {
        let chain = prescribed
            .iter()
            .map(|&b| Level::new(degree, b))
            .collect();
        Builder { degree, chain }
    }

    /// Generators in force at `level`: everything parked at that level or
    /// deeper (all of which fix the earlier base points).
    fn gens_at(&self, level: usize) -> Vec<Permutation> {
        self.chain[level..]
            .iter()
            .flat_map(|l| l.parked.iter().cloned())
            .collect()
    }

    fn close_orbit(&mut self, level: usize) {
        let base = self.chain[level].base;
        let gens = self.gens_at(level);
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Permutation::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(p) = queue.pop_front() {
            let u = transversal[&p].clone();
            for s in &gens {
                let q = s.apply(p);
                if !transversal.contains_key(&q) {
                    transversal.insert(q, s * &u);
                    queue.push_back(q);
                }
            }
        }
        self.chain[level].transversal = transversal;
    }

    /// Sifts `g` through the current chain; on a non-identity residue,
    /// parks it where it got stuck (opening a level if needed), recloses
    /// the orbits at that level and above, and reports a change.
    fn sift_and_park(&mut self, g: Permutation) -> bool {
        let mut r = g;
        let mut level = 0;
        loop {
            if r.is_identity() {
                return false;
            }
            if level == self.chain.len() {
                let b = r.first_moved().expect("non-identity moves a point");
                self.chain.push(Level::new(self.degree, b));
            }
            let base = self.chain[level].base;
            let img = r.apply(base);
            if img == base {
                level += 1;
                continue;
            }
            match self.chain[level].transversal.get(&img) {
                Some(u) => {
                    r = &u.inverse() * &r;
                    level += 1;
                }
                None => {
                    self.chain[level].parked.push(r);
                    for i in (0..=level).rev() {
                        self.close_orbit(i);
                    }
                    return true;
                }
            }
        }
    }

    /// Runs Schreier generator sifting to a fixpoint.
    fn stabilize(&mut self) {
        loop {
            let mut changed = false;
            let mut level = 0;
            while level < self.chain.len() {
                let base = self.chain[level].base;
                let gens = self.gens_at(level);
                let points: Vec<usize> = self.chain[level].transversal.keys().copied().collect();
                'schreier: for p in points {
                    for s in &gens {
                        let up = match self.chain[level].transversal.get(&p) {
                            Some(u) => u.clone(),
                            None => continue,
                        };
                        let q = s.apply(p);
                        let uq = match self.chain[level].transversal.get(&q) {
                            Some(u) => u.clone(),
                            None => {
                                // Orbit fell out of date; reclose and retry.
                                self.close_orbit(level);
                                changed = true;
                                break 'schreier;
                            }
                        };
                        let gen = &uq.inverse() * &(s * &up);
                        debug_assert_eq!(gen.apply(base), base);
                        if self.sift_and_park(gen) {
                            changed = true;
                        }
                    }
                }
                level += 1;
            }
            if !changed {
                return;
            }
        }
    }

    fn finish(mut self, prescribed: usize, generators: Vec<Permutation>) -> GeneratedGroup {
        while self.chain.len() > prescribed {
            let last = self.chain.last().expect("nonempty");
            if last.transversal.len() == 1 && last.parked.is_empty() {
                self.chain.pop();
            } else {
                break;
            }
        }
        GeneratedGroup {
            degree: self.degree,
            generators,
            chain: self.chain,
        }
    }
}

impl GeneratedGroup {
    /// Builds the group generated by `gens`. Errors on an empty list (the
    /// degree would be ambiguous) and on mixed degrees.
    pub fn from_generators(gens: &[Permutation]) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        Self::with_degree(first.degree(), gens.to_vec())
    }

    /// Like [`from_generators`](Self::from_generators) but with an explicit
    /// degree, so the list may be empty (giving the trivial group).
    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(Self::build(degree, gens, &[]))
    }

    /// Rebuilds the same group with the given base prefix, used for
    /// stabilizer extraction.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> Result<Self> {
        for &p in prefix {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        Ok(Self::build(self.degree, self.generators.clone(), prefix))
    }

    fn build(degree: usize, generators: Vec<Permutation>, prescribed: &[usize]) -> Self {
        let mut builder = Builder::new(degree, prescribed);
        for g in &generators {
            builder.sift_and_park(g.clone());
        }
        builder.stabilize();
        builder.finish(prescribed.len(), generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::with_degree(degree, Vec::new()).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree);
        }
        let mut gens = vec![Permutation::from_cycles(degree, "(0 1)").expect("transposition")];
        if degree > 2 {
            let cycle: Vec<usize> = (1..degree).chain([0]).collect();
            gens.push(Permutation::from_images(cycle).expect("n-cycle"));
        }
        Self::with_degree(degree, gens).expect("symmetric group")
    }

    pub fn cyclic_shift(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree);
        }
        let cycle: Vec<usize> = (1..degree).chain([0]).collect();
        Self::with_degree(degree, vec![Permutation::from_images(cycle).expect("n-cycle")])
            .expect("cyclic group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Base points of the stabilizer chain, in chain order.
    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u64 {
        self.chain
            .iter()
            .map(|l| l.transversal.len() as u64)
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Sifts `p` through the chain; the residue is the identity exactly
    /// when `p` is a member.
    pub fn sift(&self, p: &Permutation) -> Permutation {
        let mut g = p.clone();
        for level in &self.chain {
            if g.is_identity() {
                return g;
            }
            let img = g.apply(level.base);
            if img == level.base {
                continue;
            }
            match level.transversal.get(&img) {
                Some(u) => g = &u.inverse() * &g,
                None => return g,
            }
        }
        g
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &GeneratedGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normal in `g`. Errors when `self` is not even a
    /// subgroup of `g`.
    pub fn is_normal_in(&self, g: &GeneratedGroup) -> Result<bool> {
        if !self.is_subgroup_of(g) {
            return Err(Error::NotASubgroup("normality test".into()));
        }
        for c in g.generators() {
            let ci = c.inverse();
            for h in self.strong_generators() {
                if !self.contains(&(&(c * &h) * &ci)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Union of the per-level strong generators and the input generators;
    /// generates the group.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: BTreeSet<Permutation> =
            self.chain.iter().flat_map(|l| l.parked.clone()).collect();
        for g in &self.generators {
            if !g.is_identity() {
                out.insert(g.clone());
            }
        }
        out.into_iter().collect()
    }

    pub fn orbit(&self, a: usize) -> Result<BTreeSet<usize>> {
        if a >= self.degree {
            return Err(Error::PointOutOfRange {
                point: a,
                degree: self.degree,
            });
        }
        let mut orbit = BTreeSet::from([a]);
        let mut queue = VecDeque::from([a]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if orbit.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        Ok(orbit)
    }

    /// Orbits on points, sorted by least element.
    pub fn point_orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for a in 0..self.degree {
            if seen[a] {
                continue;
            }
            let orb = self.orbit(a).expect("point in range");
            for &p in &orb {
                seen[p] = true;
            }
            out.push(orb);
        }
        out
    }

    /// All elements, sorted lexicographically by image vector. Errors when
    /// the order exceeds an internal cap.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > ELEMENT_ENUM_CAP {
            return Err(Error::OrderBoundExceeded {
                order,
                bound: ELEMENT_ENUM_CAP,
            });
        }
        let mut out = vec![Permutation::identity(self.degree)];
        // Left-to-right product of transversal representatives.
        for level in self.chain.iter().rev() {
            if level.transversal.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * level.transversal.len());
            for u in level.transversal.values() {
                for tail in &out {
                    next.push(u * tail);
                }
            }
            out = next;
        }
        out.sort_unstable();
        debug_assert_eq!(out.len() as u64, order);
        Ok(out)
    }

    /// Subgroup fixing every point of `a`.
    pub fn pointwise_stabilizer(&self, a: &[usize]) -> Result<GeneratedGroup> {
        let mut pts: Vec<usize> = a.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Ok(self.clone());
        }
        let rebuilt = self.with_base_prefix(&pts)?;
        let mut gens: Vec<Permutation> = rebuilt
            .chain
            .iter()
            .skip(pts.len())
            .flat_map(|l| l.parked.iter().cloned())
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Self::with_degree(self.degree, gens)
    }

    /// Subgroup mapping the set `a` onto itself.
    pub fn setwise_stabilizer(&self, a: &[usize]) -> Result<GeneratedGroup> {
        let mut pts: Vec<usize> = a.to_vec();
        pts.sort_unstable();
        pts.dedup();
        for &p in &pts {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if pts.is_empty() || pts.len() == self.degree {
            return Ok(self.clone());
        }
        let rebuilt = self.with_base_prefix(&pts)?;
        let k = pts.len();
        let in_set: BTreeSet<usize> = pts.iter().copied().collect();
        let mut gens: Vec<Permutation> = rebuilt
            .chain
            .iter()
            .skip(k)
            .flat_map(|l| l.parked.iter().cloned())
            .collect();
        // Depth-first search over coset representatives of the pointwise
        // stabilizer whose partial images stay inside the set.
        let mut stack = vec![(0usize, Permutation::identity(self.degree))];
        while let Some((level, prefix)) = stack.pop() {
            if level == k {
                if !prefix.is_identity() {
                    gens.push(prefix);
                }
                continue;
            }
            let lv = &rebuilt.chain[level];
            for (&pt, u) in &lv.transversal {
                if in_set.contains(&prefix.apply(pt)) {
                    stack.push((level + 1, &prefix * u));
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        Self::with_degree(self.degree, gens)
    }
}

impl PartialEq for GeneratedGroup {
    /// Equality as abstract sets of permutations.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.contains(g))
    }
}

impl Eq for GeneratedGroup {}
