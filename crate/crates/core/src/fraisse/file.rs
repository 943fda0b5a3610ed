//! Plain-text format for class specifications.
//!
//! Layout: a `sig` block (one `NAME ARITY` line per symbol, closed by
//! `end`), then optional constraint lines in any order — one `partition`
//! line listing unary symbols, `symmetric_irreflexive NAME` lines with
//! an optional `sorts L K` suffix — and `forbid` blocks each holding a
//! structure file (see the structure format) closed by `end`. Blank
//! lines and `#` comments are ignored.

use super::{BinaryRule, ClassSpec};
use crate::io::parse_structure_with_signature;
use crate::structure::{FinStructure, Signature};
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a class specification file.
pub fn parse_class_spec(text: &str) -> Result<ClassSpec> {
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    let skip_blank = |i: &mut usize| {
        while *i < lines.len() {
            let t = lines[*i].trim();
            if t.is_empty() || t.starts_with('#') {
                *i += 1;
            } else {
                break;
            }
        }
    };

    skip_blank(&mut i);
    if i >= lines.len() || lines[i].trim() != "sig" {
        return Err(parse_err(i + 1, "expected `sig` block"));
    }
    i += 1;
    let mut symbols = Vec::new();
    loop {
        skip_blank(&mut i);
        if i >= lines.len() {
            return Err(parse_err(i, "unterminated `sig` block"));
        }
        let t = lines[i].trim();
        i += 1;
        if t == "end" {
            break;
        }
        match t.split_whitespace().collect::<Vec<_>>()[..] {
            [name, arity] => {
                let arity: usize = arity
                    .parse()
                    .map_err(|_| parse_err(i, format!("bad arity {arity:?}")))?;
                symbols.push((name.to_string(), arity));
            }
            _ => return Err(parse_err(i, "expected `NAME ARITY`")),
        }
    }
    let signature = Signature::new(symbols)?;

    let mut partition: Option<Vec<usize>> = None;
    let mut rules: Vec<BinaryRule> = Vec::new();
    let mut forbidden: Vec<FinStructure> = Vec::new();
    loop {
        skip_blank(&mut i);
        if i >= lines.len() {
            break;
        }
        let t = lines[i].trim();
        let line_no = i + 1;
        i += 1;
        let mut words = t.split_whitespace();
        match words.next() {
            Some("partition") => {
                if partition.is_some() {
                    return Err(parse_err(line_no, "two `partition` lines"));
                }
                let mut ps = Vec::new();
                for name in words {
                    let idx = signature
                        .index_of(name)
                        .ok_or_else(|| parse_err(line_no, format!("unknown symbol {name}")))?;
                    ps.push(idx);
                }
                partition = Some(ps);
            }
            Some("symmetric_irreflexive") => {
                let name = words
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing symbol name"))?;
                let symbol = signature
                    .index_of(name)
                    .ok_or_else(|| parse_err(line_no, format!("unknown symbol {name}")))?;
                let sorts = match words.next() {
                    None => None,
                    Some("sorts") => {
                        let l = words
                            .next()
                            .and_then(|w| w.parse().ok())
                            .ok_or_else(|| parse_err(line_no, "expected `sorts L K`"))?;
                        let k = words
                            .next()
                            .and_then(|w| w.parse().ok())
                            .ok_or_else(|| parse_err(line_no, "expected `sorts L K`"))?;
                        Some((l, k))
                    }
                    Some(other) => {
                        return Err(parse_err(line_no, format!("unexpected token {other}")))
                    }
                };
                rules.push(BinaryRule { symbol, sorts });
            }
            Some("forbid") => {
                let start = i;
                while i < lines.len() && lines[i].trim() != "end" {
                    i += 1;
                }
                if i >= lines.len() {
                    return Err(parse_err(line_no, "unterminated `forbid` block"));
                }
                let body = lines[start..i].join("\n");
                i += 1; // past `end`
                let f = parse_structure_with_signature(&body, &signature)?;
                forbidden.push(f);
            }
            Some(other) => return Err(parse_err(line_no, format!("unknown directive {other}"))),
            None => {}
        }
    }
    ClassSpec::new(signature, partition, rules, forbidden)
}

/// Renders a class specification in the file format.
pub fn format_class_spec(spec: &ClassSpec) -> String {
    let sig = spec.signature();
    let mut out = String::from("sig\n");
    for (name, arity) in sig.symbols() {
        out.push_str(&format!("{name} {arity}\n"));
    }
    out.push_str("end\n");
    if let Some(ps) = spec.partition() {
        let names: Vec<&str> = ps.iter().map(|&u| sig.name(u)).collect();
        out.push_str(&format!("partition {}\n", names.join(" ")));
    }
    for rule in spec.binary_rules() {
        match rule.sorts {
            None => out.push_str(&format!(
                "symmetric_irreflexive {}\n",
                sig.name(rule.symbol)
            )),
            Some((l, k)) => out.push_str(&format!(
                "symmetric_irreflexive {} sorts {l} {k}\n",
                sig.name(rule.symbol)
            )),
        }
    }
    for f in spec.forbidden() {
        out.push_str("forbid\n");
        out.push_str(&crate::io::format_structure(f));
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{colored_graph, gamma_class, graphs_class, kn_free};
    use crate::playground;

    #[test]
    fn builtin_specs_roundtrip() {
        let specs = vec![
            graphs_class(),
            kn_free(3).unwrap(),
            colored_graph(3).unwrap(),
            gamma_class(&playground::complete(3)).unwrap(),
            gamma_class(&playground::path(3)).unwrap(),
        ];
        for spec in specs {
            let text = format_class_spec(&spec);
            let back = parse_class_spec(&text).unwrap();
            assert_eq!(back, spec, "roundtrip failed for:\n{text}");
        }
    }

    #[test]
    fn hand_written_spec() {
        let text = "
# a bipartite-style class
sig
P0 1
P1 1
R 2
end
partition P0 P1
symmetric_irreflexive R sorts 0 1

forbid
domain 2
rel P0 1
0
1
end
";
        let spec = parse_class_spec(text).unwrap();
        assert_eq!(spec.signature().len(), 3);
        assert_eq!(spec.partition(), Some(&[0usize, 1][..]));
        assert_eq!(spec.binary_rules().len(), 1);
        assert_eq!(spec.forbidden().len(), 1);
        assert_eq!(spec.forbidden()[0].domain_size(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        assert!(matches!(
            parse_class_spec("partition P0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_class_spec("sig\nP0 1\nend\nnonsense here\n"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(parse_class_spec("sig\nP0 1\n").is_err());
        assert!(parse_class_spec("sig\nR 2\nend\nforbid\ndomain 1\n").is_err());
    }
}
