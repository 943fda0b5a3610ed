//! Finite groups as Cayley tables, plus quotients and abstract isomorphism.

use super::{GeneratedGroup, Permutation};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Order cap for [`group_isomorphic`]; beyond it the search refuses to run.
pub const GROUP_ISO_ORDER_CAP: usize = 2000;

/// A finite group as a full multiplication table over `{0, .., n-1}` with
/// the identity at index 0. `table[a][b]` is the product `a * b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates and wraps a multiplication table: square, entries in
    /// range, identity at 0, rows and columns bijective, and associative
    /// (checked on a generating set, which suffices for latin squares).
    pub fn new(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(Error::InvalidTable("name count differs from order".into()));
            }
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(Error::InvalidTable(format!("column {j} repeats {}", row[j])));
                }
                seen[row[j]] = true;
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::InvalidTable("index 0 is not an identity".into()));
            }
        }
        let group = FiniteGroup { table, names };
        // Light's associativity test over a greedy generating set.
        let gens = group.greedy_generators();
        let n = group.order();
        for &s in &gens {
            for a in 0..n {
                for b in 0..n {
                    if group.table[group.table[a][s]][b] != group.table[a][group.table[s][b]] {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {s}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Builds the table of a permutation group from its sorted elements.
    pub fn from_generated(g: &GeneratedGroup) -> Result<Self> {
        let elems = g.elements()?;
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                table[i][j] = index[&(a * b)];
            }
        }
        let names = elems.iter().map(|e| e.to_string()).collect();
        // Element 0 is the identity because the element list is sorted.
        FiniteGroup::new(table, Some(names))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("row contains the identity")
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name_of(&self, i: usize) -> String {
        match &self.names {
            Some(ns) => ns[i].clone(),
            None => format!("g{i}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Multiset of element orders, as order -> count.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in 0..self.order() {
            *out.entry(self.element_order(a)).or_insert(0) += 1;
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Greedy generating set: scan elements in index order, keep those that
    /// enlarge the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.closure_of(&gens);
        for x in 1..self.order() {
            if !reached[x] {
                gens.push(x);
                reached = self.closure_of(&gens);
            }
        }
        gens
    }

    /// Characteristic vector of the subgroup generated by `gens`.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.order()];
        reached[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        reached
    }

    /// Left-translation action on itself; faithful, degree = order.
    pub fn regular_representation(&self) -> GeneratedGroup {
        let gens: Vec<Permutation> = self
            .greedy_generators()
            .iter()
            .map(|&s| {
                Permutation::from_images((0..self.order()).map(|x| self.table[s][x]).collect())
                    .expect("translation is a bijection")
            })
            .collect();
        GeneratedGroup::with_degree(self.order(), gens).expect("regular representation")
    }
}

/// Cyclic group of order `n`, elements named by exponent.
pub fn cyclic_table(n: usize) -> FiniteGroup {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::new(table, Some(names)).expect("cyclic table")
}

/// Klein four-group as bitwise xor on two bits.
pub fn klein_four_table() -> FiniteGroup {
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
    FiniteGroup::new(table, Some(names)).expect("klein table")
}

/// Quaternion group of order 8; elements 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion_table() -> FiniteGroup {
    // unit indices: 0 = 1, 1 = i, 2 = j, 3 = k; sign bit in the low bit.
    fn unit_mul(u: usize, v: usize) -> (bool, usize) {
        match (u, v) {
            (0, x) => (false, x),
            (x, 0) => (false, x),
            (1, 1) | (2, 2) | (3, 3) => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let idx = |neg: bool, unit: usize| 2 * unit + usize::from(neg);
    let mut table = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (ua, na) = (a / 2, a % 2 == 1);
            let (ub, nb) = (b / 2, b % 2 == 1);
            let (neg, unit) = unit_mul(ua, ub);
            table[a][b] = idx(neg ^ na ^ nb, unit);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    FiniteGroup::new(table, Some(names)).expect("quaternion table")
}

/// Symmetric group on 3 letters, via its permutation action.
pub fn symmetric3_table() -> FiniteGroup {
    FiniteGroup::from_generated(&GeneratedGroup::symmetric(3)).expect("s3 table")
}

/// Dihedral group of order 8, via the symmetries of a square.
pub fn dihedral4_table() -> FiniteGroup {
    let g = GeneratedGroup::from_generators(&[
        Permutation::from_cycles(4, "(0 1 2 3)").unwrap(),
        Permutation::from_cycles(4, "(1 3)").unwrap(),
    ])
    .expect("square symmetries");
    FiniteGroup::from_generated(&g).expect("d4 table")
}

/// Catalog of named small groups: Z1..Z8, V4, S3, D4, Q8.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    let up = name.to_ascii_uppercase();
    match up.as_str() {
        "V4" => Some(klein_four_table()),
        "S3" => Some(symmetric3_table()),
        "D4" => Some(dihedral4_table()),
        "Q8" => Some(quaternion_table()),
        _ => {
            let n: usize = up.strip_prefix('Z')?.parse().ok()?;
            if (1..=8).contains(&n) {
                Some(cyclic_table(n))
            } else {
                None
            }
        }
    }
}

/// Names accepted by [`named_group`], in catalog order.
pub fn catalog_names() -> Vec<&'static str> {
    vec!["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "V4", "S3", "D4", "Q8"]
}

/// Quotient of `g` by a normal subgroup `n`, as a table on the cosets.
/// Coset 0 is the identity coset; names are representative-based.
pub fn quotient_group(g: &GeneratedGroup, n: &GeneratedGroup) -> Result<FiniteGroup> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("quotient".into()));
    }
    if !n.is_normal_in(g)? {
        return Err(Error::NotNormal);
    }
    let elems = g.elements()?;
    let n_elems = n.elements()?;
    let mut coset_of: HashMap<Permutation, usize> = HashMap::new();
    let mut reps: Vec<Permutation> = Vec::new();
    for e in &elems {
        if coset_of.contains_key(e) {
            continue;
        }
        let idx = reps.len();
        reps.push(e.clone());
        for h in &n_elems {
            coset_of.insert(e * h, idx);
        }
    }
    let k = reps.len();
    let mut table = vec![vec![0; k]; k];
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            table[i][j] = coset_of[&(a * b)];
        }
    }
    let names = reps.iter().map(|r| format!("{r}N")).collect();
    FiniteGroup::new(table, Some(names))
}

/// Searches for an isomorphism between two finite groups, returned as an
/// element bijection (index in `a` -> index in `b`). Backtracks over images
/// of a greedy generating set, pruning by element order and by partial
/// multiplicative consistency. Errors above [`GROUP_ISO_ORDER_CAP`].
pub fn group_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    let n = a.order();
    if n > GROUP_ISO_ORDER_CAP || b.order() > GROUP_ISO_ORDER_CAP {
        return Err(Error::OrderBoundExceeded {
            order: n.max(b.order()) as u64,
            bound: GROUP_ISO_ORDER_CAP as u64,
        });
    }
    if n != b.order() || a.order_profile() != b.order_profile() {
        return Ok(None);
    }
    let gens = a.greedy_generators();
    if gens.is_empty() {
        return Ok(Some(vec![0]));
    }
    let orders_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let orders_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();

    struct Search<'s> {
        a: &'s FiniteGroup,
        b: &'s FiniteGroup,
        gens: &'s [usize],
        orders_a: &'s [usize],
        orders_b: &'s [usize],
    }

    impl Search<'_> {
        /// Extends the partial map with `g -> h` and closes it under
        /// products of mapped elements. Returns None on inconsistency.
        fn extend(
            &self,
            map: &[Option<usize>],
            used: &[Option<usize>],
            mapped: &[usize],
            g: usize,
            h: usize,
        ) -> Option<(Vec<Option<usize>>, Vec<Option<usize>>, Vec<usize>)> {
            let mut map = map.to_vec();
            let mut used = used.to_vec();
            let mut mapped = mapped.to_vec();
            let mut queue = VecDeque::new();
            let assign = |map: &mut Vec<Option<usize>>,
                          used: &mut Vec<Option<usize>>,
                          mapped: &mut Vec<usize>,
                          queue: &mut VecDeque<usize>,
                          x: usize,
                          y: usize| {
                match map[x] {
                    Some(cur) => cur == y,
                    None => {
                        if let Some(src) = used[y] {
                            return src == x;
                        }
                        map[x] = Some(y);
                        used[y] = Some(x);
                        mapped.push(x);
                        queue.push_back(x);
                        true
                    }
                }
            };
            if !assign(&mut map, &mut used, &mut mapped, &mut queue, g, h) {
                return None;
            }
            while let Some(x) = queue.pop_front() {
                let fx = map[x].expect("queued elements are mapped");
                // Pair x against everything mapped so far, both sides.
                let snapshot = mapped.clone();
                for &y in &snapshot {
                    let fy = map[y].expect("mapped");
                    let xy = self.a.mul(x, y);
                    let fxy = self.b.mul(fx, fy);
                    if !assign(&mut map, &mut used, &mut mapped, &mut queue, xy, fxy) {
                        return None;
                    }
                    let yx = self.a.mul(y, x);
                    let fyx = self.b.mul(fy, fx);
                    if !assign(&mut map, &mut used, &mut mapped, &mut queue, yx, fyx) {
                        return None;
                    }
                }
            }
            Some((map, used, mapped))
        }

        fn backtrack(
            &self,
            gi: usize,
            map: Vec<Option<usize>>,
            used: Vec<Option<usize>>,
            mapped: Vec<usize>,
        ) -> Option<Vec<usize>> {
            if gi == self.gens.len() {
                // The generators reach everything, so the map is total.
                debug_assert!(map.iter().all(|m| m.is_some()));
                return Some(map.into_iter().map(|m| m.expect("total")).collect());
            }
            let g = self.gens[gi];
            if let Some(h) = map[g] {
                // Already forced by closure; just descend.
                let _ = h;
                return self.backtrack(gi + 1, map, used, mapped);
            }
            for h in 0..self.b.order() {
                if used[h].is_some() || self.orders_b[h] != self.orders_a[g] {
                    continue;
                }
                if let Some((m2, u2, e2)) = self.extend(&map, &used, &mapped, g, h) {
                    if let Some(res) = self.backtrack(gi + 1, m2, u2, e2) {
                        return Some(res);
                    }
                }
            }
            None
        }
    }

    let search = Search {
        a,
        b,
        gens: &gens,
        orders_a: &orders_a,
        orders_b: &orders_b,
    };
    let mut map = vec![None; n];
    let mut used = vec![None; n];
    map[0] = Some(0);
    used[0] = Some(0);
    Ok(search.backtrack(0, map, used, vec![0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables_are_valid_groups() {
        for n in 1..=8 {
            let g = cyclic_table(n);
            assert_eq!(g.order(), n);
            assert!(g.is_abelian());
        }
    }

    #[test]
    fn light_test_rejects_nonassociative_loop() {
        // A latin square with identity that is not associative:
        // (1*1)*2 = 2 but 1*(1*2) = 4.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        assert!(matches!(
            FiniteGroup::new(table, None),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]], None).is_err());
        assert!(FiniteGroup::new(vec![vec![1, 0], vec![0, 1]], None).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 2]], None).is_err());
    }

    #[test]
    fn catalog_orders_and_profiles() {
        let s3 = named_group("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(
            s3.order_profile(),
            BTreeMap::from([(1, 1), (2, 3), (3, 2)])
        );
        let q8 = named_group("Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(
            q8.order_profile(),
            BTreeMap::from([(1, 1), (2, 1), (4, 6)])
        );
        let d4 = named_group("D4").unwrap();
        assert_eq!(
            d4.order_profile(),
            BTreeMap::from([(1, 1), (2, 5), (4, 2)])
        );
        assert!(named_group("Z9").is_none());
        assert!(named_group("z5").is_some());
        assert_eq!(named_group("V4").unwrap().order_profile()[&2], 3);
    }

    #[test]
    fn quaternion_relations_hold() {
        let q = quaternion_table();
        let (i, j, k, minus1) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, i), minus1);
        assert_eq!(q.mul(j, j), minus1);
        assert_eq!(q.mul(k, k), minus1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.mul(minus1, k));
        assert_eq!(q.mul(minus1, minus1), 0);
    }

    #[test]
    fn iso_distinguishes_z4_from_v4_and_d4_from_q8() {
        let z4 = cyclic_table(4);
        let v4 = klein_four_table();
        assert!(group_isomorphic(&z4, &v4).unwrap().is_none());
        let d4 = dihedral4_table();
        let q8 = quaternion_table();
        assert!(group_isomorphic(&d4, &q8).unwrap().is_none());
    }

    #[test]
    fn iso_finds_z6_as_a_product_of_coprime_cycles() {
        let g = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(5, "(0 1)(2 3 4)").unwrap(),
        ])
        .unwrap();
        let as_table = FiniteGroup::from_generated(&g).unwrap();
        let z6 = cyclic_table(6);
        let iso = group_isomorphic(&as_table, &z6).unwrap().expect("iso");
        // Verify the witness is a homomorphism.
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(iso[as_table.mul(x, y)], z6.mul(iso[x], iso[y]));
            }
        }
    }

    #[test]
    fn iso_connects_two_presentations_of_d4() {
        let other = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1 2 3)").unwrap(),
            Permutation::from_cycles(4, "(0 1)(2 3)").unwrap(),
        ])
        .unwrap();
        let t = FiniteGroup::from_generated(&other).unwrap();
        assert!(group_isomorphic(&t, &dihedral4_table()).unwrap().is_some());
    }

    #[test]
    fn quotient_of_s4_by_klein_four_is_s3() {
        let s4 = GeneratedGroup::symmetric(4);
        let v4 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::from_cycles(4, "(0 2)(1 3)").unwrap(),
        ])
        .unwrap();
        let q = quotient_group(&s4, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(group_isomorphic(&q, &symmetric3_table()).unwrap().is_some());
    }

    #[test]
    fn quotient_rejects_non_normal_and_non_subgroups() {
        let s4 = GeneratedGroup::symmetric(4);
        let c2 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1)").unwrap(),
        ])
        .unwrap();
        assert!(matches!(quotient_group(&s4, &c2), Err(Error::NotNormal)));
        let c5 = GeneratedGroup::cyclic_shift(5);
        assert!(matches!(
            quotient_group(&s4, &c5),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn quotient_of_a4_by_klein_four_is_z3() {
        let a4 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1 2)").unwrap(),
            Permutation::from_cycles(4, "(1 2 3)").unwrap(),
        ])
        .unwrap();
        let v4 = GeneratedGroup::from_generators(&[
            Permutation::from_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::from_cycles(4, "(0 2)(1 3)").unwrap(),
        ])
        .unwrap();
        let q = quotient_group(&a4, &v4).unwrap();
        assert!(group_isomorphic(&q, &cyclic_table(3)).unwrap().is_some());
    }

    #[test]
    fn regular_representation_is_faithful() {
        let q8 = quaternion_table();
        let reg = q8.regular_representation();
        assert_eq!(reg.order(), 8);
        let back = FiniteGroup::from_generated(&reg).unwrap();
        assert!(group_isomorphic(&back, &q8).unwrap().is_some());
    }
}
