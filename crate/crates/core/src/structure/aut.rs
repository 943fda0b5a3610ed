//! Automorphism groups of finite structures.

use super::FinStructure;
use crate::perm::{GeneratedGroup, Permutation};
use std::collections::BTreeMap;

/// Iterated equitable refinement. Starts from a coloring that singles out
/// the listed points (by list position), then repeatedly re-colors each
/// point by the multiset of colored tuple shapes it sits in, until the
/// number of colors stabilizes. Colors are dense ranks, and the procedure
/// commutes with isomorphisms, so matching points get matching colors.
pub fn refine_colors(m: &FinStructure, individualized: &[usize]) -> Vec<usize> {
    let n = m.domain_size();
    let mut colors = vec![0usize; n];
    for (i, &p) in individualized.iter().enumerate() {
        colors[p] = i + 1;
    }
    normalize(&mut colors);
    loop {
        // Signature of a point: old color plus, per symbol, the sorted list
        // of colored shapes of tuples containing it. A shape records the
        // tuple's colors and which positions hold the point itself.
        let mut sigs: Vec<(usize, Vec<Vec<Vec<usize>>>)> = (0..n)
            .map(|v| (colors[v], vec![Vec::new(); m.signature().len()]))
            .collect();
        for sym in 0..m.signature().len() {
            for tuple in m.tuples(sym) {
                for v in tuple.iter().copied().collect::<std::collections::BTreeSet<_>>() {
                    let mut shape: Vec<usize> = tuple.iter().map(|&p| colors[p]).collect();
                    for (pos, &p) in tuple.iter().enumerate() {
                        if p == v {
                            shape.push(pos);
                        }
                    }
                    sigs[v].1[sym].push(shape);
                }
            }
        }
        for s in &mut sigs {
            for per_sym in &mut s.1 {
                per_sym.sort_unstable();
            }
        }
        // Rank signatures lexicographically so the renaming only depends
        // on signature values, never on vertex order.
        let mut rank: BTreeMap<&(usize, Vec<Vec<Vec<usize>>>), usize> =
            sigs.iter().map(|s| (s, 0)).collect();
        for (i, v) in rank.values_mut().enumerate() {
            *v = i;
        }
        let old_count = count_colors(&colors);
        if rank.len() == old_count {
            return colors;
        }
        let new_colors: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        colors = new_colors;
    }
}

fn count_colors(colors: &[usize]) -> usize {
    let mut seen: Vec<bool> = vec![false; colors.len() + 1];
    let mut count = 0;
    for &c in colors {
        if !seen[c] {
            seen[c] = true;
            count += 1;
        }
    }
    count
}

fn normalize(colors: &mut [usize]) {
    let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sorted: Vec<usize> = colors.to_vec();
    sorted.sort_unstable();
    for c in sorted {
        let next = rank.len();
        rank.entry(c).or_insert(next);
    }
    for c in colors.iter_mut() {
        *c = rank[c];
    }
}

/// The automorphism group of a finite structure.
///
/// Walks a stabilizer chain: at each level it refines with the points
/// fixed so far individualized, picks the least point in a non-singleton
/// color class, and searches for one automorphism per candidate image of
/// that point. The witnesses found across levels generate the group.
pub fn automorphism_group(m: &FinStructure) -> GeneratedGroup {
    let n = m.domain_size();
    if n == 0 {
        return GeneratedGroup::trivial(0);
    }
    let incidence = incidence_lists(m);
    let mut fixed: Vec<usize> = Vec::new();
    let mut gens: Vec<Permutation> = Vec::new();
    loop {
        let colors = refine_colors(m, &fixed);
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            cells.entry(colors[v]).or_default().push(v);
        }
        let target = (0..n).find(|&v| cells[&colors[v]].len() > 1);
        let b = match target {
            None => break,
            Some(b) => b,
        };
        for &c in &cells[&colors[b]] {
            if c == b {
                continue;
            }
            if let Some(g) = find_automorphism(m, &incidence, &fixed, b, c) {
                gens.push(g);
            }
        }
        fixed.push(b);
    }
    GeneratedGroup::with_degree(n, gens).expect("generators share the degree")
}

type Incidence = Vec<Vec<(usize, Vec<usize>)>>;

fn incidence_lists(m: &FinStructure) -> Incidence {
    let mut out: Incidence = vec![Vec::new(); m.domain_size()];
    for sym in 0..m.signature().len() {
        for tuple in m.tuples(sym) {
            for v in tuple.iter().copied().collect::<std::collections::BTreeSet<_>>() {
                out[v].push((sym, tuple.clone()));
            }
        }
    }
    out
}

/// Searches for one automorphism fixing `fixed` pointwise and sending
/// `b` to `c`.
fn find_automorphism(
    m: &FinStructure,
    incidence: &Incidence,
    fixed: &[usize],
    b: usize,
    c: usize,
) -> Option<Permutation> {
    let n = m.domain_size();
    // Equivariant colorings on both sides: candidates for a point must
    // carry the color its image is required to have.
    let mut dom_list = fixed.to_vec();
    dom_list.push(b);
    let mut img_list = fixed.to_vec();
    img_list.push(c);
    let col_dom = refine_colors(m, &dom_list);
    let col_img = refine_colors(m, &img_list);

    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut seed: Vec<(usize, usize)> = fixed.iter().map(|&p| (p, p)).collect();
    seed.push((b, c));
    for (v, w) in seed {
        if map[v] == Some(w) {
            continue;
        }
        if map[v].is_some() || used[w] || col_dom[v] != col_img[w] {
            return None;
        }
        map[v] = Some(w);
        used[w] = true;
        if !locally_consistent(m, incidence, &map, v) {
            return None;
        }
    }
    // Assign remaining points in order of increasing candidate count.
    let mut order: Vec<usize> = (0..n).filter(|&v| map[v].is_none()).collect();
    let cell_size = |v: usize| col_dom.iter().filter(|&&c2| c2 == col_dom[v]).count();
    order.sort_by_key(|&v| (cell_size(v), v));
    if backtrack(m, incidence, &col_dom, &col_img, &order, 0, &mut map, &mut used) {
        let images: Vec<usize> = map.into_iter().map(|o| o.expect("total")).collect();
        let g = Permutation::from_images(images).expect("bijection by construction");
        debug_assert!(m.is_automorphism(&g));
        Some(g)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    m: &FinStructure,
    incidence: &Incidence,
    col_dom: &[usize],
    col_img: &[usize],
    order: &[usize],
    i: usize,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for w in 0..m.domain_size() {
        if used[w] || col_img[w] != col_dom[v] {
            continue;
        }
        map[v] = Some(w);
        used[w] = true;
        if locally_consistent(m, incidence, map, v)
            && backtrack(m, incidence, col_dom, col_img, order, i + 1, map, used)
        {
            return true;
        }
        map[v] = None;
        used[w] = false;
    }
    false
}

/// Checks the tuples touching `v` (forward) and touching its image
/// (backward) against the partial map.
fn locally_consistent(
    m: &FinStructure,
    incidence: &Incidence,
    map: &[Option<usize>],
    v: usize,
) -> bool {
    let w = map[v].expect("v was just assigned");
    for (sym, tuple) in &incidence[v] {
        let image: Option<Vec<usize>> = tuple.iter().map(|&p| map[p]).collect();
        if let Some(img) = image {
            if !m.has(*sym, &img) {
                return false;
            }
        }
    }
    // Inverse map restricted to assigned points.
    let pre = |q: usize| -> Option<usize> {
        map.iter()
            .position(|&o| o == Some(q))
    };
    for (sym, tuple) in &incidence[w] {
        let preimage: Option<Vec<usize>> = tuple.iter().map(|&q| pre(q)).collect();
        if let Some(p) = preimage {
            if !m.has(*sym, &p) {
                return false;
            }
        }
    }
    true
}
