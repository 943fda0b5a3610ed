//! Permutations of `{0, .., n-1}` and groups given by generators.

mod finite;
mod group;
mod subgroups;

pub use finite::{
    catalog_names, cyclic_table, dihedral4_table, group_isomorphic, klein_four_table, named_group,
    quaternion_table, quotient_group, symmetric3_table, FiniteGroup, GROUP_ISO_ORDER_CAP,
};
pub use group::GeneratedGroup;
pub use subgroups::{all_subgroups, SubgroupEntry, SubgroupList, DEFAULT_SUBGROUP_ORDER_BOUND};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// A permutation of `{0, .., n-1}`, stored as its image vector.
///
/// `images[x]` is the image of `x`. Degree 0 is permitted and denotes the
/// empty permutation (useful for structures with empty domain).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(Error::NotABijection(images));
            }
            if seen[y] {
                return Err(Error::NotABijection(images));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint cycle notation such as `(0 1)(2 3 4)`.
    ///
    /// `()` denotes the identity. Points may appear in at most one cycle.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { line: 0, msg };
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err("empty cycle expression".into()));
        }
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err(format!("expected '(' at {rest:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| err(format!("unclosed cycle in {text:?}")))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let p: usize = tok
                    .parse()
                    .map_err(|_| err(format!("bad point {tok:?}")))?;
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if used[p] {
                    return Err(err(format!("point {p} repeated across cycles")));
                }
                used[p] = true;
                cycle.push(p);
            }
            for w in 0..cycle.len() {
                images[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Checked composition; `(p.compose(q))(x) = p(q(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// Least moved point, or `None` for the identity.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(x, &y)| x != y).map(|(x, _)| x)
    }

    pub fn moved_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x != y)
            .map(|(x, _)| x)
            .collect()
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Nontrivial cycles, each rotated to start at its least point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type as a sorted list of nontrivial cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable();
        t
    }

    /// Restriction to an invariant set of points, as a permutation of
    /// `{0, .., |a|-1}` in the order given by the sorted set.
    pub fn restriction(&self, a: &[usize]) -> Result<Permutation> {
        let mut pts: Vec<usize> = a.to_vec();
        pts.sort_unstable();
        pts.dedup();
        for &p in &pts {
            if p >= self.degree() {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree(),
                });
            }
        }
        let index_of = |p: usize| pts.binary_search(&p).ok();
        let mut images = Vec::with_capacity(pts.len());
        for &p in &pts {
            match index_of(self.apply(p)) {
                Some(i) => images.push(i),
                None => return Err(Error::NotSetwiseInvariant(pts)),
            }
        }
        Ok(Permutation { images })
    }

    /// Raises to an integer power (negative means inverse powers).
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// Unchecked composition; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in composition");
        let images = rhs.images.iter().map(|&y| self.images[y]).collect();
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm[{}]{}", self.degree(), self)
    }
}
