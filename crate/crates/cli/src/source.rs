//! Resolution of command-line designators into core objects: groups by
//! catalog name or file, structures by playground name or file, classes
//! by builtin name, constraint file, or underlying graph.

use autkit::exaut::ClosureKind;
use autkit::fraisse::{colored_graph, gamma_class, graphs_class, kn_free, pure_set_class, ClassSpec};
use autkit::io;
use autkit::perm::{catalog_names, named_group, FiniteGroup, GeneratedGroup};
use autkit::structure::FinStructure;
use autkit::{playground, Error, Result};
use std::fs;
use std::path::Path;

fn arg_err(msg: String) -> Error {
    Error::Parse { line: 0, msg }
}

fn stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string())
}

/// A group as the user supplied it: a full multiplication table or a
/// set of permutation generators.
pub enum GroupSource {
    Table(FiniteGroup),
    Perm(GeneratedGroup),
}

impl GroupSource {
    /// The multiplication table form; permutation groups are expanded
    /// element by element, so this is only for desk-scale orders.
    pub fn table(&self) -> Result<FiniteGroup> {
        match self {
            GroupSource::Table(t) => Ok(t.clone()),
            GroupSource::Perm(g) => FiniteGroup::from_generated(g),
        }
    }

    /// A faithful permutation action: tables act on themselves by left
    /// translation.
    pub fn permutations(&self) -> GeneratedGroup {
        match self {
            GroupSource::Table(t) => t.regular_representation(),
            GroupSource::Perm(g) => g.clone(),
        }
    }
}

/// Loads a group: a catalog name (`Z1`..`Z8`, `V4`, `S3`, `D4`, `Q8`),
/// a table file (`order` header), or a generator file (`degree` header).
pub fn load_group(arg: &str) -> Result<(GroupSource, String)> {
    if let Some(table) = named_group(arg) {
        return Ok((GroupSource::Table(table), arg.to_ascii_uppercase()));
    }
    if !Path::new(arg).exists() {
        return Err(arg_err(format!(
            "{arg:?} is neither a catalog group ({}) nor a file",
            catalog_names().join(", ")
        )));
    }
    let text = fs::read_to_string(arg)?;
    let keyword = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let source = match keyword {
        "order" => GroupSource::Table(io::parse_cayley(&text)?),
        "degree" => GroupSource::Perm(io::parse_group(&text)?),
        other => {
            return Err(arg_err(format!(
                "group file must start with `order` or `degree`, found {other:?}"
            )))
        }
    };
    Ok((source, stem(arg)))
}

/// Loads a structure: a playground name (`pureset:5`, `c5`, `path:4`,
/// `rook:3`, `k4`, `cliques:2x3`, `edgeless:4`) or a structure file.
pub fn load_structure(arg: &str) -> Result<(FinStructure, String)> {
    let compact: String = arg
        .to_ascii_lowercase()
        .chars()
        .filter(|c| *c != ':')
        .collect();
    let compact = compact
        .strip_prefix("pureset")
        .map(|rest| format!("pure{rest}"))
        .unwrap_or(compact);
    if let Some(m) = playground::by_name(&compact) {
        return Ok((m, compact));
    }
    if !Path::new(arg).exists() {
        return Err(arg_err(format!(
            "{arg:?} is neither a playground name nor a file"
        )));
    }
    let text = fs::read_to_string(arg)?;
    Ok((io::parse_structure(&text)?, stem(arg)))
}

/// Loads a class: a builtin name (`graphs`, `puresets`, `knfree:<n>`,
/// `colored:<n>`), a constraint file, or — via `gamma` — the class of
/// vertex/edge-decorated structures derived from a graph.
pub fn load_class(
    name: Option<&str>,
    spec: Option<&str>,
    gamma: Option<&str>,
) -> Result<(ClassSpec, String)> {
    match (name, spec, gamma) {
        (Some(n), None, None) => {
            let lower = n.to_ascii_lowercase();
            let (head, tail) = lower
                .split_once(':')
                .map_or((lower.as_str(), None), |(h, t)| (h, Some(t)));
            let num = || -> Result<usize> {
                tail.ok_or_else(|| arg_err(format!("{n:?} needs a size, e.g. `{head}:3`")))?
                    .parse()
                    .map_err(|_| arg_err(format!("bad size in {n:?}")))
            };
            let spec = match head {
                "graphs" => graphs_class(),
                "puresets" | "pureset" => pure_set_class(),
                "knfree" => kn_free(num()?)?,
                "colored" => colored_graph(num()?)?,
                _ => {
                    return Err(arg_err(format!(
                        "unknown class {n:?}; builtins are graphs, puresets, knfree:<n>, colored:<n>"
                    )))
                }
            };
            Ok((spec, lower))
        }
        (None, Some(path), None) => {
            let text = fs::read_to_string(path)?;
            Ok((autkit::fraisse::parse_class_spec(&text)?, stem(path)))
        }
        (None, None, Some(g)) => {
            let (graph, label) = load_structure(g)?;
            Ok((gamma_class(&graph)?, format!("gamma:{label}")))
        }
        _ => Err(arg_err(
            "give the class exactly one way: --name, --spec, or --gamma".into(),
        )),
    }
}

/// Parses the closure operator flag: `dcl`, `threshold:<t>`, or
/// `class:<constraint file>`.
pub fn parse_closure(arg: &str) -> Result<ClosureKind> {
    let lower = arg.to_ascii_lowercase();
    if lower == "dcl" {
        return Ok(ClosureKind::Dcl);
    }
    if let Some(t) = lower.strip_prefix("threshold:") {
        let t: usize = t
            .parse()
            .map_err(|_| arg_err(format!("bad threshold in {arg:?}")))?;
        if t == 0 {
            return Err(arg_err("threshold must be at least 1".into()));
        }
        return Ok(ClosureKind::Threshold(t));
    }
    if let Some(path) = arg.strip_prefix("class:") {
        let text = fs::read_to_string(path)?;
        return Ok(ClosureKind::ClassAcl {
            spec: autkit::fraisse::parse_class_spec(&text)?,
            copies: 2,
        });
    }
    Err(arg_err(format!(
        "unknown closure {arg:?}; use dcl, threshold:<t>, or class:<file>"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_resolve_by_name_case_insensitively() {
        let (g, label) = load_group("q8").unwrap();
        assert_eq!(g.table().unwrap().order(), 8);
        assert_eq!(label, "Q8");
        assert!(load_group("nothing").is_err());
    }

    #[test]
    fn playground_names_accept_colons_and_aliases() {
        let (m, label) = load_structure("pureset:5").unwrap();
        assert_eq!(m.domain_size(), 5);
        assert_eq!(label, "pure5");
        let (c, _) = load_structure("cycle:5").unwrap();
        assert_eq!(c.tuple_count(0), 10);
        assert!(load_structure("pureset:x").is_err());
    }

    #[test]
    fn builtin_classes_resolve() {
        let (spec, _) = load_class(Some("knfree:3"), None, None).unwrap();
        assert_eq!(spec.signature().symbols().len(), 1);
        assert!(load_class(Some("knfree"), None, None).is_err());
        assert!(load_class(None, None, None).is_err());
        let (gamma, label) = load_class(None, None, Some("c5")).unwrap();
        assert_eq!(label, "gamma:c5");
        assert!(gamma.signature().symbols().len() > 5);
    }

    #[test]
    fn closure_flags_parse() {
        assert!(matches!(parse_closure("dcl"), Ok(ClosureKind::Dcl)));
        assert!(matches!(
            parse_closure("threshold:2"),
            Ok(ClosureKind::Threshold(2))
        ));
        assert!(parse_closure("threshold:0").is_err());
        assert!(parse_closure("orbit").is_err());
    }
}
