//! Set-definition files.
//!
//! ```json
//! {
//!   "universe": ["a", "b"],
//!   "sets": {
//!     "A":    {"type": "discrete", "grades": {"a": 0.3, "b": 0.9}},
//!     "S":    {"type": "sampled", "lo": 0, "hi": 1, "n": 3, "samples": [0, 0.5, 1]},
//!     "HIGH": {"type": "shape", "kind": "ramp-up", "params": [10, 16], "lo": 0, "hi": 30, "n": 31}
//!   }
//! }
//! ```
//!
//! Without an explicit `"universe"`, discrete sets share the sorted union of
//! every label the file mentions.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fuzzy_set::{Carrier, FuzzySet, Grid, Shape};
use crate::grade::Grade;

/// Named sets in file order.
#[derive(Clone, Debug, Default)]
pub struct SetDefinitions {
    pub sets: Vec<(String, FuzzySet)>,
}

impl SetDefinitions {
    pub fn get(&self, name: &str) -> Option<&FuzzySet> {
        self.sets.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sets.iter().map(|(n, _)| n.as_str())
    }
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn load_err(set: &str, index: impl ToString, message: impl Into<String>) -> Error {
    Error::Load {
        set: set.to_string(),
        index: index.to_string(),
        message: message.into(),
    }
}

fn grade_at(set: &str, index: impl ToString, v: &Value) -> Result<Grade> {
    let index = index.to_string();
    let x = v
        .as_f64()
        .ok_or_else(|| load_err(set, &index, format!("grade {v} is not a number")))?;
    Grade::new(x).map_err(|_| load_err(set, &index, format!("grade {x} outside [0, 1]")))
}

fn field<'a>(set: &str, obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| load_err(set, key, format!("missing field {key:?}")))
}

fn number(set: &str, obj: &Map<String, Value>, key: &str) -> Result<f64> {
    field(set, obj, key)?
        .as_f64()
        .ok_or_else(|| load_err(set, key, "expected a number"))
}

fn grid_of(set: &str, obj: &Map<String, Value>) -> Result<Grid> {
    let lo = number(set, obj, "lo")?;
    let hi = number(set, obj, "hi")?;
    let n = field(set, obj, "n")?
        .as_u64()
        .ok_or_else(|| load_err(set, "n", "expected a non-negative integer"))?;
    Grid::new(lo, hi, n as usize).map_err(|e| load_err(set, "grid", e.to_string()))
}

/// Parses a set-definition document.
///
/// `shape_grid`, when given, replaces the grid of every shape descriptor so
/// that shapes can be instantiated directly on a plotting grid.
pub fn parse(text: &str, shape_grid: Option<Grid>) -> Result<SetDefinitions> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    let top = doc
        .as_object()
        .ok_or_else(|| format_err("top level must be an object"))?;
    let sets = top
        .get("sets")
        .and_then(Value::as_object)
        .ok_or_else(|| format_err("missing \"sets\" object"))?;

    let explicit = match top.get("universe") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| format_err("universe labels must be strings"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => return Err(format_err("\"universe\" must be an array of strings")),
    };

    let mut descriptors = Vec::with_capacity(sets.len());
    for (name, desc) in sets {
        let obj = desc
            .as_object()
            .ok_or_else(|| load_err(name, "descriptor", "expected an object"))?;
        let kind = obj
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| load_err(name, "type", "missing descriptor type"))?;
        descriptors.push((name.as_str(), kind, obj));
    }

    let universe: Arc<[String]> = match explicit {
        Some(labels) => labels.into(),
        None => {
            let mut all = BTreeSet::new();
            for (_, kind, obj) in &descriptors {
                if *kind == "discrete" {
                    if let Some(grades) = obj.get("grades").and_then(Value::as_object) {
                        all.extend(grades.keys().cloned());
                    }
                }
            }
            all.into_iter().collect::<Vec<_>>().into()
        }
    };
    let discrete = match Carrier::discrete(universe.iter().cloned())? {
        Carrier::Discrete(labels) => labels,
        Carrier::Sampled(_) => unreachable!(),
    };

    let mut out = SetDefinitions::default();
    for (name, kind, obj) in descriptors {
        let set = match kind {
            "discrete" => {
                let grades = field(name, obj, "grades")?
                    .as_object()
                    .ok_or_else(|| load_err(name, "grades", "expected an object"))?;
                let mut pairs = Vec::with_capacity(grades.len());
                for (label, v) in grades {
                    if !discrete.contains(label) {
                        return Err(load_err(name, label, "label not in universe"));
                    }
                    pairs.push((label.as_str(), grade_at(name, label, v)?));
                }
                FuzzySet::discrete(Carrier::Discrete(discrete.clone()), pairs)?
            }
            "sampled" => {
                let grid = grid_of(name, obj)?;
                let samples = field(name, obj, "samples")?
                    .as_array()
                    .ok_or_else(|| load_err(name, "samples", "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| grade_at(name, i, v))
                    .collect::<Result<Vec<_>>>()?;
                FuzzySet::sampled(grid, samples)
                    .map_err(|e| load_err(name, "samples", e.to_string()))?
            }
            "shape" => {
                let shape_kind = field(name, obj, "kind")?
                    .as_str()
                    .ok_or_else(|| load_err(name, "kind", "expected a string"))?;
                let params = field(name, obj, "params")?
                    .as_array()
                    .ok_or_else(|| load_err(name, "params", "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        v.as_f64()
                            .ok_or_else(|| load_err(name, i, "parameter is not a number"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let shape = Shape::from_kind(shape_kind, &params)
                    .map_err(|e| load_err(name, "params", e.to_string()))?;
                let grid = match shape_grid {
                    Some(g) => g,
                    None => grid_of(name, obj)?,
                };
                FuzzySet::from_shape(shape, grid)?
            }
            other => {
                return Err(load_err(
                    name,
                    "type",
                    format!("unknown descriptor type {other:?}"),
                ))
            }
        };
        out.sets.push((name.to_string(), set));
    }
    Ok(out)
}

fn number_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Serializes named sets as a set-definition document.
///
/// Discrete sets must share one universe, which is written at top level.
pub fn to_json<'a, I>(sets: I) -> Result<Value>
where
    I: IntoIterator<Item = (&'a str, &'a FuzzySet)>,
{
    let mut universe: Option<&Carrier> = None;
    let mut out = Map::new();
    for (name, set) in sets {
        let desc = match set.carrier() {
            Carrier::Discrete(labels) => {
                match universe {
                    Some(u) if u != set.carrier() => {
                        return Err(Error::Incompatible(format!(
                            "set {name:?} uses a different discrete universe"
                        )))
                    }
                    _ => universe = Some(set.carrier()),
                }
                let grades: Map<String, Value> = labels
                    .iter()
                    .zip(set.grades())
                    .map(|(l, g)| (l.clone(), number_value(g.value())))
                    .collect();
                json!({"type": "discrete", "grades": grades})
            }
            Carrier::Sampled(grid) => {
                let samples: Vec<Value> = set
                    .grades()
                    .iter()
                    .map(|g| number_value(g.value()))
                    .collect();
                json!({
                    "type": "sampled",
                    "lo": number_value(grid.lo()),
                    "hi": number_value(grid.hi()),
                    "n": grid.len(),
                    "samples": samples,
                })
            }
        };
        out.insert(name.to_string(), desc);
    }
    let mut doc = Map::new();
    if let Some(labels) = universe.and_then(Carrier::labels) {
        doc.insert("universe".into(), json!(labels));
    }
    doc.insert("sets".into(), Value::Object(out));
    Ok(Value::Object(doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "universe": ["a", "b", "c"],
        "sets": {
            "A": {"type": "discrete", "grades": {"a": 0.3, "b": 0.9}},
            "S": {"type": "sampled", "lo": 0, "hi": 1, "n": 3, "samples": [0, 0.5, 1]},
            "HIGH": {"type": "shape", "kind": "ramp-up", "params": [10, 16], "lo": 0, "hi": 30, "n": 31}
        }
    }"#;

    #[test]
    fn loads_all_descriptor_forms() {
        let defs = parse(DOC, None).unwrap();
        assert_eq!(defs.names().collect::<Vec<_>>(), ["A", "S", "HIGH"]);
        let a = defs.get("A").unwrap();
        assert_eq!(a.grade_of("c"), Some(Grade::ZERO));
        assert_eq!(defs.get("S").unwrap().grades()[1].value(), 0.5);
        assert_eq!(defs.get("HIGH").unwrap().grades()[16], Grade::ONE);
    }

    #[test]
    fn implicit_universe_is_sorted_union() {
        let doc = r#"{"sets": {
            "X": {"type": "discrete", "grades": {"z": 0.1, "b": 0.2}},
            "Y": {"type": "discrete", "grades": {"a": 1}}
        }}"#;
        let defs = parse(doc, None).unwrap();
        let x = defs.get("X").unwrap();
        assert_eq!(x.carrier().labels().unwrap(), ["a", "b", "z"]);
        assert_eq!(x.carrier(), defs.get("Y").unwrap().carrier());
    }

    #[test]
    fn errors_name_set_and_index() {
        let bad = r#"{"sets": {"S": {"type": "sampled", "lo": 0, "hi": 1, "n": 3, "samples": [0, 1.5, 1]}}}"#;
        match parse(bad, None) {
            Err(Error::Load { set, index, .. }) => {
                assert_eq!(set, "S");
                assert_eq!(index, "1");
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad =
            r#"{"universe": ["a"], "sets": {"D": {"type": "discrete", "grades": {"b": 0.5}}}}"#;
        assert!(matches!(parse(bad, None), Err(Error::Load { .. })));
        let bad = r#"{"sets": {"D": {"type": "discrete", "grades": {"a": -0.5}}}}"#;
        assert!(matches!(parse(bad, None), Err(Error::Load { set, .. }) if set == "D"));
        assert!(parse("[]", None).is_err());
        assert!(parse("{", None).is_err());
    }

    #[test]
    fn shape_grid_override() {
        let grid = Grid::new(0.0, 30.0, 301).unwrap();
        let defs = parse(DOC, Some(grid)).unwrap();
        assert_eq!(defs.get("HIGH").unwrap().grades().len(), 301);
        assert_eq!(defs.get("S").unwrap().grades().len(), 3);
    }

    #[test]
    fn write_then_reload() {
        let defs = parse(DOC, None).unwrap();
        let doc = to_json(defs.sets.iter().map(|(n, s)| (n.as_str(), s))).unwrap();
        let again = parse(&doc.to_string(), None).unwrap();
        for ((n1, s1), (n2, s2)) in defs.sets.iter().zip(&again.sets) {
            assert_eq!(n1, n2);
            assert!(s1.approx_eq(s2, 0.0));
        }
    }
}
