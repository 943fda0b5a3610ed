//! Plain-text file formats for groups, Cayley tables, and structures.
//!
//! All formats are line based. Blank lines and lines starting with `#`
//! are ignored everywhere.
//!
//! Permutation group: a `degree n` header followed by one generator per
//! line in cycle notation, e.g. `(0 1)(2 3)`.
//!
//! Cayley table: an `order n` header followed by `n` rows of `n` indices;
//! row `i`, column `j` holds `i * j`, and `0` is the identity.
//!
//! Structure: a `domain n` header, then `rel NAME ARITY` headers each
//! followed by the relation's tuples, one per line as space-separated
//! points. A file may instead start with `graph n`, followed by one
//! `u v` edge per line (stored symmetrically).

use crate::perm::{FiniteGroup, GeneratedGroup, Permutation};
use crate::structure::{FinStructure, Signature};
use crate::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, got {token:?}")))
}

fn header(line: usize, text: &str, keyword: &str) -> Result<usize> {
    match text.split_whitespace().collect::<Vec<_>>()[..] {
        [kw, n] if kw == keyword => parse_usize(line, n, "a count"),
        _ => Err(parse_err(line, format!("expected `{keyword} <n>` header"))),
    }
}

/// Parses a permutation group file.
pub fn parse_group(text: &str) -> Result<GeneratedGroup> {
    let mut lines = content_lines(text);
    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty group file"))?;
    let degree = header(ln, first, "degree")?;
    let mut gens = Vec::new();
    for (ln, line) in lines {
        let p = Permutation::from_cycles(degree, line)
            .map_err(|e| parse_err(ln, e.to_string()))?;
        gens.push(p);
    }
    GeneratedGroup::with_degree(degree, gens)
}

/// Renders a group as a `degree` header plus one generator per line.
pub fn format_group(g: &GeneratedGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for gen in g.generators() {
        out.push_str(&gen.to_string());
        out.push('\n');
    }
    out
}

/// Parses a Cayley table file.
pub fn parse_cayley(text: &str) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty table file"))?;
    let order = header(ln, first, "order")?;
    let mut table = Vec::with_capacity(order);
    for (ln, line) in lines {
        let row: Result<Vec<usize>> = line
            .split_whitespace()
            .map(|t| parse_usize(ln, t, "an element index"))
            .collect();
        let row = row?;
        if row.len() != order {
            return Err(parse_err(ln, format!("expected {order} entries per row")));
        }
        table.push(row);
    }
    if table.len() != order {
        return Err(Error::InvalidTable(format!(
            "expected {order} rows, got {}",
            table.len()
        )));
    }
    FiniteGroup::new(table, None)
}

/// Renders a Cayley table as an `order` header plus the table rows.
pub fn format_cayley(g: &FiniteGroup) -> String {
    let mut out = format!("order {}\n", g.order());
    for row in g.table() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a generator-image file describing a map between two groups:
/// one `lhs -> rhs` pair per line, both sides in cycle notation. Left
/// sides act on `source_degree` points, right sides on `target_degree`.
pub fn parse_iso_pairs(
    text: &str,
    source_degree: usize,
    target_degree: usize,
) -> Result<Vec<(Permutation, Permutation)>> {
    let mut pairs = Vec::new();
    for (ln, line) in content_lines(text) {
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(parse_err(ln, "expected `<perm> -> <perm>`"));
        };
        let g = Permutation::from_cycles(source_degree, lhs.trim())
            .map_err(|e| parse_err(ln, e.to_string()))?;
        let h = Permutation::from_cycles(target_degree, rhs.trim())
            .map_err(|e| parse_err(ln, e.to_string()))?;
        pairs.push((g, h));
    }
    if pairs.is_empty() {
        return Err(parse_err(0, "no generator pairs in file"));
    }
    Ok(pairs)
}

/// Renders generator-image pairs, one `lhs -> rhs` line each.
pub fn format_iso_pairs(pairs: &[(Permutation, Permutation)]) -> String {
    let mut out = String::new();
    for (g, h) in pairs {
        out.push_str(&format!("{g} -> {h}\n"));
    }
    out
}

/// Parses a structure file against a known signature: `rel` headers must
/// name declared symbols with their declared arities, and symbols left
/// unmentioned get empty relations. The `graph` shorthand is accepted
/// when the signature is a single binary symbol.
pub fn parse_structure_with_signature(text: &str, sig: &Signature) -> Result<FinStructure> {
    let parsed = parse_structure(text)?;
    if parsed.signature() == sig {
        return Ok(parsed);
    }
    let mut out = FinStructure::with_signature(parsed.domain_size(), sig.clone());
    for (idx, (name, arity)) in parsed.signature().symbols().iter().enumerate() {
        let target = sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        if sig.arity(target) != *arity {
            return Err(Error::SignatureMismatch(format!(
                "symbol {name} declared with arity {arity}, expected {}",
                sig.arity(target)
            )));
        }
        for t in parsed.tuples(idx) {
            out.add_tuple(target, t.clone())?;
        }
    }
    Ok(out)
}

/// Parses a structure file (`domain` form or `graph` shorthand).
pub fn parse_structure(text: &str) -> Result<FinStructure> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (ln, first) = *lines
        .first()
        .ok_or_else(|| parse_err(0, "empty structure file"))?;
    let keyword = first.split_whitespace().next().unwrap_or("");
    if keyword == "graph" {
        let n = header(ln, first, "graph")?;
        let mut edges = Vec::new();
        for &(ln, line) in &lines[1..] {
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                [u, v] => edges.push((
                    parse_usize(ln, u, "a vertex")?,
                    parse_usize(ln, v, "a vertex")?,
                )),
                _ => return Err(parse_err(ln, "expected `u v` edge line")),
            }
        }
        return FinStructure::graph(n, &edges);
    }

    let n = header(ln, first, "domain")?;
    // First pass: collect the signature, preserving header order.
    let mut symbols = Vec::new();
    for &(ln, line) in &lines[1..] {
        if let Some(rest) = line.strip_prefix("rel ") {
            match rest.split_whitespace().collect::<Vec<_>>()[..] {
                [name, arity] => {
                    symbols.push((name.to_string(), parse_usize(ln, arity, "an arity")?));
                }
                _ => return Err(parse_err(ln, "expected `rel NAME ARITY` header")),
            }
        }
    }
    let sig = Signature::new(symbols)?;
    let mut m = FinStructure::with_signature(n, sig);
    let mut current: Option<usize> = None;
    for &(ln, line) in &lines[1..] {
        if let Some(rest) = line.strip_prefix("rel ") {
            let name = rest.split_whitespace().next().unwrap_or("");
            current = m.signature().index_of(name);
            continue;
        }
        let Some(symbol) = current else {
            return Err(parse_err(ln, "tuple line before any `rel` header"));
        };
        let tuple: Result<Vec<usize>> = line
            .split_whitespace()
            .map(|t| parse_usize(ln, t, "a point"))
            .collect();
        m.add_tuple(symbol, tuple?)?;
    }
    Ok(m)
}

/// Renders a structure in the `domain` form.
pub fn format_structure(m: &FinStructure) -> String {
    let mut out = format!("domain {}\n", m.domain_size());
    for (i, (name, arity)) in m.signature().symbols().iter().enumerate() {
        out.push_str(&format!("rel {name} {arity}\n"));
        for tuple in m.tuples(i) {
            let cells: Vec<String> = tuple.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Renders a graph structure in the `graph` shorthand; falls back to the
/// general form when the signature is not a single binary relation.
pub fn format_graph(m: &FinStructure) -> String {
    if m.signature().symbols().len() != 1 || m.signature().arity(0) != 2 {
        return format_structure(m);
    }
    let mut out = format!("graph {}\n", m.domain_size());
    for (u, v) in m.edge_pairs(0) {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named_group;
    use crate::playground;

    #[test]
    fn group_roundtrip() {
        let g = GeneratedGroup::symmetric(5);
        let parsed = parse_group(&format_group(&g)).unwrap();
        assert_eq!(parsed.order(), 120);
        assert_eq!(parsed, g);
    }

    #[test]
    fn group_file_with_comments() {
        let text = "# two transpositions\ndegree 4\n\n(0 1)\n(2 3)\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn group_file_errors_carry_line_numbers() {
        let err = parse_group("degree 3\n(0 5)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_group("order 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn cayley_roundtrip() {
        let q8 = named_group("Q8").unwrap();
        let parsed = parse_cayley(&format_cayley(&q8)).unwrap();
        assert_eq!(parsed.table(), q8.table());
    }

    #[test]
    fn cayley_rejects_non_group() {
        // Row 1 repeats an entry, so it is not a Latin square.
        let text = "order 2\n0 1\n1 1\n";
        assert!(parse_cayley(text).is_err());
    }

    #[test]
    fn iso_pairs_roundtrip() {
        let text = "# identity on one side\n(0 1) -> ()\n(0 1 2) -> (0 2 1)\n";
        let pairs = parse_iso_pairs(text, 4, 3).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0.images(), &[1, 0, 2, 3]);
        assert!(pairs[0].1.is_identity());
        let again = parse_iso_pairs(&format_iso_pairs(&pairs), 4, 3).unwrap();
        assert_eq!(again, pairs);
        assert!(parse_iso_pairs("(0 1)\n", 2, 2).is_err());
        assert!(parse_iso_pairs("", 2, 2).is_err());
    }

    #[test]
    fn structure_roundtrip() {
        let c5 = playground::cycle(5);
        let parsed = parse_structure(&format_structure(&c5)).unwrap();
        assert_eq!(parsed, c5);
    }

    #[test]
    fn graph_shorthand() {
        let text = "graph 4\n0 1\n1 2\n2 3\n";
        let m = parse_structure(text).unwrap();
        assert_eq!(m, playground::path(4));
        let again = parse_structure(&format_graph(&m)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn structure_with_two_relations() {
        let text = "domain 3\nrel R 1\n0\nrel E 2\n0 1\n1 0\n";
        let m = parse_structure(text).unwrap();
        assert_eq!(m.signature().symbols().len(), 2);
        assert!(m.has(0, &[0]));
        assert!(m.has(1, &[1, 0]));
        let back = parse_structure(&format_structure(&m)).unwrap();
        assert_eq!(back, m);
    }
}
