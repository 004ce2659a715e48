//! Text and JSON formats for posets, complexes, functions and matchings.
//!
//! Line formats ignore everything after `#`. A poset file lists covers as
//! `a < b` (chains `a < b < c` allowed) and isolated elements as bare
//! identifiers. A document starting with `{` is read as JSON instead.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::SimplicialComplex;
use crate::matching::{Matching, MatchingError};
use crate::morse::{MorseError, MorseFunction};
use crate::poset::{Poset, PosetError};
use crate::rational::{self, Value};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Morse(#[from] MorseError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Nonempty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PosetDoc {
    #[serde(default)]
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl From<&Poset> for PosetDoc {
    fn from(p: &Poset) -> Self {
        PosetDoc { elements: p.ids().to_vec(), covers: p.cover_ids() }
    }
}

pub fn parse_poset(text: &str) -> Result<Poset, IoError> {
    if is_json(text) {
        let doc: PosetDoc = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        return Ok(Poset::new(doc.elements, doc.covers)?);
    }
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    for (n, line) in content_lines(text) {
        if line.contains('<') {
            let parts: Vec<&str> = line.split('<').map(str::trim).collect();
            if parts.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
                return Err(parse_err(n, format!("expected `a < b`, got `{line}`")));
            }
            elements.extend(parts.iter().map(|s| s.to_string()));
            for w in parts.windows(2) {
                covers.push((w[0].to_string(), w[1].to_string()));
            }
        } else {
            elements.extend(line.split_whitespace().map(str::to_string));
        }
    }
    Ok(Poset::new(elements, covers)?)
}

/// Line format: isolated elements first, then one cover per line.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::new();
    for x in 0..p.len() {
        if p.lower_covers(x).is_empty() && p.upper_covers(x).is_empty() {
            out.push_str(p.id(x));
            out.push('\n');
        }
    }
    for (a, b) in p.cover_ids() {
        out.push_str(&format!("{a} < {b}\n"));
    }
    out
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string_pretty(&PosetDoc::from(p)).expect("plain data")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ComplexDoc {
    facets: Vec<Vec<String>>,
}

/// One facet per line, vertices separated by whitespace.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, IoError> {
    if is_json(text) {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        return Ok(SimplicialComplex::from_facets(doc.facets));
    }
    let mut facets = Vec::new();
    for (n, line) in content_lines(text) {
        let facet: Vec<&str> = line.split_whitespace().collect();
        if facet.len() > 20 {
            return Err(parse_err(n, "facets are limited to 20 vertices"));
        }
        facets.push(facet);
    }
    Ok(SimplicialComplex::from_facets(facets))
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    k.facets().iter().map(|f| k.names(f).join(" ") + "\n").collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawValue {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct FunctionDoc {
    values: BTreeMap<String, RawValue>,
}

/// Lines `id value` with values as `p/q`, integers or decimals, or
/// `{"values": {id: "p/q"}}`.
pub fn parse_function(base: Arc<Poset>, text: &str) -> Result<MorseFunction, IoError> {
    let mut values: Vec<(String, Value)> = Vec::new();
    if is_json(text) {
        let doc: FunctionDoc = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        for (id, raw) in doc.values {
            let v = match raw {
                RawValue::Int(i) => rational::int(i),
                RawValue::Text(s) => rational::parse(&s).map_err(|e| IoError::Json(e.to_string()))?,
            };
            values.push((id, v));
        }
    } else {
        for (n, line) in content_lines(text) {
            let mut it = line.split_whitespace();
            let (Some(id), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err(n, format!("expected `id value`, got `{line}`")));
            };
            let v = rational::parse(v).map_err(|e| parse_err(n, e.to_string()))?;
            values.push((id.to_string(), v));
        }
    }
    Ok(MorseFunction::new(base, values)?)
}

/// Lines `id p/q` in identifier order.
pub fn write_function(f: &MorseFunction) -> String {
    f.base()
        .ids()
        .iter()
        .zip(f.values())
        .map(|(id, v)| format!("{id} {}\n", rational::format(v)))
        .collect()
}

pub fn function_to_json(f: &MorseFunction) -> serde_json::Value {
    let values: BTreeMap<&str, String> =
        f.base().ids().iter().map(String::as_str).zip(f.values().iter().map(rational::format)).collect();
    serde_json::json!({ "values": values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct MatchingDoc {
    pairs: Vec<(String, String)>,
}

/// Lines `source < target`, or `{"pairs": [[source, target], …]}`.
pub fn parse_matching(base: Arc<Poset>, text: &str) -> Result<Matching, IoError> {
    let pairs = if is_json(text) {
        let doc: MatchingDoc = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        doc.pairs
    } else {
        let mut pairs = Vec::new();
        for (n, line) in content_lines(text) {
            let parts: Vec<&str> = line.split('<').map(str::trim).collect();
            match parts.as_slice() {
                [a, b] if !a.is_empty() && !b.is_empty() => pairs.push((a.to_string(), b.to_string())),
                _ => return Err(parse_err(n, format!("expected `source < target`, got `{line}`"))),
            }
        }
        pairs
    };
    Ok(Matching::new(base, pairs)?)
}

pub fn write_matching(m: &Matching) -> String {
    m.pair_ids().into_iter().map(|(a, b)| format!("{a} < {b}\n")).collect()
}

pub fn matching_to_json(m: &Matching) -> serde_json::Value {
    serde_json::json!({ "pairs": m.pair_ids() })
}

/// Hasse diagram in dot format, matched covers drawn bold and reversed.
pub fn to_dot(p: &Poset, m: Option<&Matching>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for id in p.ids() {
        out.push_str(&format!("  \"{}\";\n", id.replace('"', "\\\"")));
    }
    for (a, b) in p.covers() {
        let matched = m.is_some_and(|m| m.contains(a, b));
        let style = if matched { " [style=bold, dir=back]" } else { "" };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\"{style};\n",
            p.id(a).replace('"', "\\\""),
            p.id(b).replace('"', "\\\"")
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    #[test]
    fn poset_formats() {
        assert_eq!(parse_poset("0 < 1\n1 < 2").unwrap(), fixtures::chain3());
        assert_eq!(parse_poset("0 < 1 < 2 # chain\n").unwrap(), fixtures::chain3());
        assert_eq!(parse_poset(r#"{"elements": ["p"], "covers": []}"#).unwrap(), fixtures::point());
        assert!(matches!(parse_poset("a < b\nb < a"), Err(IoError::Poset(PosetError::Cycle(_)))));
        assert_eq!(parse_poset("a <\n"), Err(parse_err(1, "expected `a < b`, got `a <`")));
        let p = parse_poset("x\na < b").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        assert_eq!(parse_poset(&poset_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn complex_formats() {
        let k = parse_complex("a b").unwrap();
        assert_eq!((k.count(0), k.count(1)), (2, 1));
        let k = parse_complex("a b\nb c\na c").unwrap();
        assert_eq!((k.count(0), k.count(1), k.dimension()), (3, 3, 1));
        assert!(parse_complex("").unwrap().face_poset().is_err());
        assert_eq!(parse_complex(&write_complex(&k)).unwrap(), k);
    }

    #[test]
    fn function_formats() {
        let p = Arc::new(fixtures::seg());
        let f = parse_function(p.clone(), "v0 0\nv1 2\ne 1/2\n").unwrap();
        assert_eq!(f.value_of("e").unwrap(), &ratio(1, 2));
        assert_eq!(parse_function(p.clone(), &write_function(&f)).unwrap(), f);
        let json = function_to_json(&f).to_string();
        assert_eq!(parse_function(p.clone(), &json).unwrap(), f);
        let g = parse_function(p.clone(), r#"{"values": {"v0": 0, "v1": "2", "e": "0.5"}}"#).unwrap();
        assert_eq!(g, f);
        assert!(matches!(parse_function(p.clone(), "v0 0\nv1 x\ne 1"), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_function(p, "v0 0\n"), Err(IoError::Morse(MorseError::MissingValue(_)))));
    }

    #[test]
    fn matching_formats() {
        let p = Arc::new(fixtures::tri());
        let m = parse_matching(p.clone(), "v0 < e01\nv1 < e12").unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(parse_matching(p.clone(), &write_matching(&m)).unwrap(), m);
        assert_eq!(parse_matching(p.clone(), &matching_to_json(&m).to_string()).unwrap(), m);
        assert!(parse_matching(p.clone(), "").unwrap().is_empty());
        assert!(matches!(parse_matching(p, "v0 e01"), Err(IoError::Parse { line: 1, .. })));
    }

    #[test]
    fn dot_output() {
        let p = fixtures::seg();
        let m = Matching::new(Arc::new(p.clone()), [("v1", "e")]).unwrap();
        let dot = to_dot(&p, Some(&m));
        assert!(dot.contains("\"v1\" -> \"e\" [style=bold, dir=back];"));
        assert!(dot.contains("\"v0\" -> \"e\";"));
    }
}
