//! JSON documents describing spaces, rings, and modules.
//!
//! ```json
//! {"elements": ["a", "b"], "proximity": {"kind": "table", "pairs": [[["a"], ["b"]]], "complete": true}}
//! {"elements": ["0", "1"], "zero": "0", "one": "1", "add": [["0","1"],["1","0"]], "mul": [["0","0"],["0","1"]]}
//! ```
//!
//! Module documents extend a ring document with `carrier`, `madd` and
//! `action` (one row per ring element). Diagnostics name the offending field.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::{build_module, build_ring, FiniteModule, FiniteRing};
use crate::descriptive::{Feature, ProbeAssignment};
use crate::error::{Error, Result};
use crate::ground::{GroundSet, Subset};
use crate::proximity::{build_relation, ProximityRelation, RelationSpec};

fn doc_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Document(format!("field `{field}`: {msg}"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    proximity: RawProximity,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProximity {
    kind: String,
    #[serde(default)]
    probe: Option<BTreeMap<String, Value>>,
    #[serde(default)]
    coords: Option<BTreeMap<String, Vec<f64>>>,
    #[serde(default)]
    epsilon: Option<f64>,
    #[serde(default)]
    pairs: Option<Vec<(Vec<String>, Vec<String>)>>,
    #[serde(default)]
    complete: Option<bool>,
}

/// A parsed space document.
#[derive(Clone, Debug)]
pub struct SpaceDocument {
    pub name: Option<String>,
    pub ground: GroundSet,
    pub spec: RelationSpec,
}

impl SpaceDocument {
    pub fn relation(&self) -> Result<ProximityRelation> {
        let rel = build_relation(&self.ground, &self.spec)?;
        Ok(match &self.name {
            Some(name) => rel.with_name(name.clone()),
            None => rel,
        })
    }

    /// Replace probe values of named elements. Only probe-equality spaces
    /// carry a probe.
    pub fn override_probe(&mut self, overrides: &[(String, Vec<Feature>)]) -> Result<()> {
        let RelationSpec::ProbeEquality(map) = &mut self.spec else {
            return Err(Error::Document("probe overrides need a probe-equality space".into()));
        };
        for (label, value) in overrides {
            self.ground.index_of(label)?;
            map.insert(label.clone(), value.clone());
        }
        Ok(())
    }
}

fn check_ground_size(n: usize, max_ground: usize, field: &str) -> Result<()> {
    if n > max_ground {
        return Err(doc_err(
            field,
            format!("{n} elements exceed the size cap of {max_ground}"),
        ));
    }
    Ok(())
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

fn ground_from(labels: Vec<String>, max_ground: usize, field: &str) -> Result<GroundSet> {
    check_ground_size(labels.len(), max_ground, field)?;
    GroundSet::new(labels).map_err(|e| doc_err(field, e))
}

/// Parse one feature: an integer, or a string `"p/q"` / `"n"`.
pub fn parse_feature(v: &Value) -> std::result::Result<Feature, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Feature::from_integer)
            .ok_or_else(|| format!("{n} is not an integer; write fractions as \"p/q\"")),
        Value::String(s) => parse_feature_str(s),
        other => Err(format!("{other} is not a feature value")),
    }
}

pub fn parse_feature_str(s: &str) -> std::result::Result<Feature, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not an integer or fraction p/q");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(format!("`{s}` has a zero denominator"));
            }
            Ok(Feature::new(p, q))
        }
        None => s.parse().map(Feature::from_integer).map_err(|_| bad()),
    }
}

fn parse_probe(raw: BTreeMap<String, Value>) -> Result<BTreeMap<String, Vec<Feature>>> {
    raw.into_iter()
        .map(|(label, v)| {
            let field = format!("proximity.probe.{label}");
            let values = match v {
                Value::Array(items) => items,
                scalar => vec![scalar],
            };
            let features = values
                .iter()
                .map(parse_feature)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| doc_err(&field, e))?;
            Ok((label, features))
        })
        .collect()
}

fn subset_of(ground: &GroundSet, labels: &[String], field: &str) -> Result<Subset> {
    for l in labels {
        if ground.index_of(l).is_err() {
            return Err(doc_err(field, format!("unknown element label `{l}`")));
        }
    }
    ground.subset(labels)
}

/// Parse a space document. `max_ground` bounds the element count.
pub fn parse_space(text: &str, max_ground: usize) -> Result<SpaceDocument> {
    let raw: RawSpace = parse_json(text)?;
    let ground = ground_from(raw.elements, max_ground, "elements")?;
    let p = raw.proximity;
    let kind = p.kind.as_str();

    let used: &[&str] = match kind {
        "overlap" | "containment" => &[],
        "probe-equality" => &["probe"],
        "gap-metric" => &["coords", "epsilon"],
        "table" => &["pairs", "complete"],
        other => return Err(doc_err("proximity.kind", Error::UnknownKind(other.to_string()))),
    };
    let present = [
        ("probe", p.probe.is_some()),
        ("coords", p.coords.is_some()),
        ("epsilon", p.epsilon.is_some()),
        ("pairs", p.pairs.is_some()),
        ("complete", p.complete.is_some()),
    ];
    if let Some((field, _)) = present.iter().find(|(f, set)| *set && !used.contains(f)) {
        return Err(doc_err(
            &format!("proximity.{field}"),
            format!("not used by kind `{kind}`"),
        ));
    }
    let missing = |field: &str| doc_err(&format!("proximity.{field}"), format!("required by kind `{kind}`"));

    let spec = match kind {
        "overlap" => RelationSpec::Overlap,
        "containment" => RelationSpec::Containment,
        "probe-equality" => {
            let map = parse_probe(p.probe.ok_or_else(|| missing("probe"))?)?;
            // Validate labels and arity now for a precise diagnostic.
            ProbeAssignment::from_labels(&ground, &map).map_err(|e| doc_err("proximity.probe", e))?;
            RelationSpec::ProbeEquality(map)
        }
        "gap-metric" => {
            let coords = p.coords.ok_or_else(|| missing("coords"))?;
            let epsilon = p.epsilon.ok_or_else(|| missing("epsilon"))?;
            for label in coords.keys() {
                if ground.index_of(label).is_err() {
                    return Err(doc_err("proximity.coords", format!("unknown element label `{label}`")));
                }
            }
            RelationSpec::GapMetric { coords, epsilon }
        }
        _ => {
            let raw_pairs = p.pairs.ok_or_else(|| missing("pairs"))?;
            let mut pairs = Vec::with_capacity(raw_pairs.len());
            for (i, (a, b)) in raw_pairs.iter().enumerate() {
                let sa = subset_of(&ground, a, &format!("proximity.pairs[{i}][0]"))?;
                let sb = subset_of(&ground, b, &format!("proximity.pairs[{i}][1]"))?;
                if sa.is_empty() || sb.is_empty() {
                    return Err(doc_err(&format!("proximity.pairs[{i}]"), "subsets must be nonempty"));
                }
                pairs.push((sa, sb));
            }
            RelationSpec::Table {
                pairs,
                complete: p.complete.unwrap_or(false),
            }
        }
    };
    let doc = SpaceDocument {
        name: raw.name,
        ground,
        spec,
    };
    doc.relation().map_err(|e| doc_err("proximity", e))?;
    Ok(doc)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    #[serde(default)]
    name: Option<String>,
    elements: Vec<String>,
    zero: String,
    #[serde(default)]
    one: Option<String>,
    add: Vec<Vec<String>>,
    mul: Vec<Vec<String>>,
    #[serde(default)]
    carrier: Option<Vec<String>>,
    #[serde(default)]
    madd: Option<Vec<Vec<String>>>,
    #[serde(default)]
    action: Option<Vec<Vec<String>>>,
}

/// A ring document, or a module document (ring plus carrier).
#[derive(Clone, Debug)]
pub enum AlgebraDocument {
    Ring(FiniteRing),
    Module(FiniteModule),
}

impl AlgebraDocument {
    pub fn ring(&self) -> &FiniteRing {
        match self {
            AlgebraDocument::Ring(r) => r,
            AlgebraDocument::Module(m) => m.ring(),
        }
    }
}

fn index_table(
    table: &[Vec<String>],
    rows: &GroundSet,
    cols: &GroundSet,
    target: &GroundSet,
    field: &str,
) -> Result<Vec<Vec<usize>>> {
    if table.len() != rows.len() {
        return Err(doc_err(
            field,
            format!("expected {} rows, found {}", rows.len(), table.len()),
        ));
    }
    table
        .iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != cols.len() {
                return Err(doc_err(
                    &format!("{field}[{r}]"),
                    format!(
                        "row `{}` has {} entries, expected {}",
                        rows.label(r),
                        row.len(),
                        cols.len()
                    ),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(c, label)| {
                    target.index_of(label).map_err(|_| {
                        doc_err(
                            &format!("{field}[{r}][{c}]"),
                            format!("unknown element label `{label}`"),
                        )
                    })
                })
                .collect()
        })
        .collect()
}

fn element(ground: &GroundSet, label: &str, field: &str) -> Result<usize> {
    ground
        .index_of(label)
        .map_err(|_| doc_err(field, format!("unknown element label `{label}`")))
}

/// Parse a ring or module document. The ring is not audited here; module
/// laws are (a module cannot be constructed otherwise).
pub fn parse_algebra(text: &str, max_ground: usize) -> Result<AlgebraDocument> {
    parse_algebra_named(text, max_ground, None)
}

fn parse_algebra_named(text: &str, max_ground: usize, fallback: Option<String>) -> Result<AlgebraDocument> {
    let mut raw: RawAlgebra = parse_json(text)?;
    raw.name = raw.name.or(fallback);
    let ground = ground_from(raw.elements, max_ground, "elements")?;
    let add = index_table(&raw.add, &ground, &ground, &ground, "add")?;
    let mul = index_table(&raw.mul, &ground, &ground, &ground, "mul")?;
    let zero = element(&ground, &raw.zero, "zero")?;
    let one = raw.one.as_deref().map(|l| element(&ground, l, "one")).transpose()?;
    let mut ring = build_ring(&ground, add, mul, zero, one)?;
    if let Some(name) = &raw.name {
        ring = ring.with_name(name.clone());
    }
    match (raw.carrier, raw.madd, raw.action) {
        (None, None, None) => Ok(AlgebraDocument::Ring(ring)),
        (Some(carrier), Some(madd), Some(action)) => {
            let carrier = ground_from(carrier, max_ground, "carrier")?;
            let madd = index_table(&madd, &carrier, &carrier, &carrier, "madd")?;
            let action = index_table(&action, &ground, &carrier, &carrier, "action")?;
            let module = build_module(&ring, &carrier, madd, action)?;
            Ok(AlgebraDocument::Module(match raw.name {
                Some(name) => module.with_name(name),
                None => module,
            }))
        }
        _ => Err(Error::Document(
            "module documents need all of `carrier`, `madd` and `action`".into(),
        )),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

pub fn load_space(path: &Path, max_ground: usize) -> Result<SpaceDocument> {
    with_path(path, parse_space(&read(path)?, max_ground))
}

pub fn load_algebra(path: &Path, max_ground: usize) -> Result<AlgebraDocument> {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    with_path(path, parse_algebra_named(&read(path)?, max_ground, stem))
}

/// `label=value,...` where a value is an integer, `p/q`, or a `:`-separated
/// tuple of those.
pub fn parse_probe_overrides(s: &str) -> Result<Vec<(String, Vec<Feature>)>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (label, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Document(format!("--probe: `{part}` is not label=value")))?;
            let features = value
                .split(':')
                .map(parse_feature_str)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Document(format!("--probe {}: {e}", label.trim())))?;
            Ok((label.trim().to_string(), features))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let probe =
            r#"{"elements":["a","b","c"],"proximity":{"kind":"probe-equality","probe":{"a":[1],"b":1,"c":["1/2"]}}}"#;
        let doc = parse_space(probe, 16).unwrap();
        let rel = doc.relation().unwrap();
        let s = |l: &str| doc.ground.subset([l]).unwrap();
        assert!(rel.near(&s("a"), &s("b")).unwrap());
        assert!(!rel.near(&s("a"), &s("c")).unwrap());

        let gap =
            r#"{"elements":["x","y"],"proximity":{"kind":"gap-metric","coords":{"x":[0.0],"y":[0.4]},"epsilon":0.5}}"#;
        assert!(parse_space(gap, 16)
            .unwrap()
            .relation()
            .unwrap()
            .tolerance()
            .unwrap()
            .related(0, 1));

        let table =
            r#"{"elements":["a","b","c"],"proximity":{"kind":"table","pairs":[[["b"],["c"]]],"complete":true}}"#;
        let doc = parse_space(table, 16).unwrap();
        assert!(doc.relation().unwrap().tolerance().unwrap().related(2, 1));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let cases = [
            (
                r#"{"elements":["a"],"proximity":{"kind":"overlap"},"extra":1}"#,
                "unknown field",
            ),
            (r#"{"elements":["a"],"proximity":{"kind":"fuzzy"}}"#, "proximity.kind"),
            (
                r#"{"elements":["a"],"proximity":{"kind":"overlap","epsilon":1.0}}"#,
                "proximity.epsilon",
            ),
            (
                r#"{"elements":["a"],"proximity":{"kind":"table","pairs":[[["a"],["z"]]]}}"#,
                "proximity.pairs[0][1]",
            ),
            (
                r#"{"elements":["a"],"proximity":{"kind":"probe-equality","probe":{"a":[1.5]}}}"#,
                "proximity.probe.a",
            ),
            (
                r#"{"elements":["a","b"],"proximity":{"kind":"probe-equality","probe":{"a":[1]}}}"#,
                "no probe value for element `b`",
            ),
            (r#"{"elements":["a","a"],"proximity":{"kind":"overlap"}}"#, "duplicate"),
        ];
        for (text, needle) in cases {
            let err = parse_space(text, 16).unwrap_err().to_string();
            assert!(err.contains(needle), "{err} should mention {needle}");
        }
        let err = parse_space(r#"{"elements":["a","b","c"],"proximity":{"kind":"overlap"}}"#, 2).unwrap_err();
        assert!(err.to_string().contains("size cap"));
    }

    #[test]
    fn ring_and_module_documents() {
        let z2 =
            r#"{"elements":["0","1"],"zero":"0","one":"1","add":[["0","1"],["1","0"]],"mul":[["0","0"],["0","1"]]}"#;
        let AlgebraDocument::Ring(r) = parse_algebra(z2, 16).unwrap() else {
            panic!()
        };
        assert_eq!(r.one(), Some(1));

        let module = r#"{"elements":["0","1"],"zero":"0","one":"1","add":[["0","1"],["1","0"]],"mul":[["0","0"],["0","1"]],
            "carrier":["e","f"],"madd":[["e","f"],["f","e"]],"action":[["e","e"],["e","f"]]}"#;
        let AlgebraDocument::Module(m) = parse_algebra(module, 16).unwrap() else {
            panic!()
        };
        assert_eq!(m.mzero(), 0);

        let bad = z2.replace(r#"["1","0"]],"mul""#, r#"["1","q"]],"mul""#);
        let err = parse_algebra(&bad, 16).unwrap_err().to_string();
        assert!(err.contains("add[1][1]") && err.contains("`q`"), "{err}");
    }

    #[test]
    fn probe_override_syntax() {
        let o = parse_probe_overrides("0=1, 1=7/2,x=1:2").unwrap();
        assert_eq!(o[1], ("1".to_string(), vec![Feature::new(7, 2)]));
        assert_eq!(o[2].1.len(), 2);
        assert!(parse_probe_overrides("a").is_err());
        assert!(parse_probe_overrides("a=1/0").is_err());
    }
}
