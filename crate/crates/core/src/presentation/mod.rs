//! Bound-quiver presentations `kQ/<I>` with graded arrows, quadratic monomial
//! relations and special loops.
//!
//! A relation is stored as the ordered pair `(a, b)` meaning the path "a then
//! b", so `target(a) == source(b)`. Special loops are kept apart from the
//! relations; their idempotent relation is implicit.

mod derived;
mod fixtures;
mod generate;
mod validate;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

pub use derived::{dual, specialize, WeightedPresentation, WeightedRelation, WeightedTerm};
pub use fixtures::{fixture, FixtureParams, FIXTURE_NAMES};
pub use generate::{random_gentle, RandomOptions, MAX_ATTEMPTS};
pub use validate::{validate, AlgebraClass, ValidationReport, Violation, ViolationCode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub degree: i64,
}

impl Arrow {
    pub fn new(id: &str, source: &str, target: &str, degree: i64) -> Self {
        Arrow {
            id: id.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            degree,
        }
    }
}

/// Index tables built once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Index {
    vertex_pos: HashMap<String, usize>,
    arrow_pos: HashMap<String, usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    special: Vec<bool>,
    special_at: Vec<Option<usize>>,
    relations: HashSet<(usize, usize)>,
}

/// A structurally valid bound quiver. Gentleness is checked separately by
/// [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(String, String)>,
    special_loops: Vec<String>,
    index: Index,
}

#[derive(Serialize)]
struct Document<'a> {
    vertices: &'a [String],
    arrows: &'a [Arrow],
    relations: &'a [(String, String)],
    special_loops: &'a [String],
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Document {
            vertices: &self.vertices,
            arrows: &self.arrows,
            relations: &self.relations,
            special_loops: &self.special_loops,
        }
        .serialize(serializer)
    }
}

impl Presentation {
    /// Builds a presentation, checking the structural invariants. Error paths
    /// use the JSON document layout (`arrows[2].target`, `relations[0][1]`).
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<(String, String)>,
        special_loops: Vec<String>,
    ) -> Result<Self> {
        let mut vertex_pos = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_pos.insert(v.clone(), i).is_some() {
                return Err(Error::schema(
                    format!("vertices[{i}]"),
                    format!("duplicate vertex id `{v}`"),
                ));
            }
        }
        let mut arrow_pos = HashMap::new();
        let mut src = Vec::with_capacity(arrows.len());
        let mut tgt = Vec::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if arrow_pos.insert(a.id.clone(), i).is_some() {
                return Err(Error::schema(
                    format!("arrows[{i}].id"),
                    format!("duplicate arrow id `{}`", a.id),
                ));
            }
            let s = *vertex_pos.get(&a.source).ok_or_else(|| {
                Error::schema(
                    format!("arrows[{i}].source"),
                    format!("undeclared vertex `{}`", a.source),
                )
            })?;
            let t = *vertex_pos.get(&a.target).ok_or_else(|| {
                Error::schema(
                    format!("arrows[{i}].target"),
                    format!("undeclared vertex `{}`", a.target),
                )
            })?;
            src.push(s);
            tgt.push(t);
        }

        let mut special = vec![false; arrows.len()];
        let mut special_at: Vec<Option<usize>> = vec![None; vertices.len()];
        for (i, e) in special_loops.iter().enumerate() {
            let path = format!("special_loops[{i}]");
            let k = *arrow_pos
                .get(e)
                .ok_or_else(|| Error::schema(&path, format!("undeclared arrow `{e}`")))?;
            if src[k] != tgt[k] {
                return Err(Error::schema(&path, format!("`{e}` is not a loop")));
            }
            if special[k] {
                return Err(Error::schema(&path, format!("`{e}` listed twice")));
            }
            if let Some(other) = special_at[src[k]] {
                return Err(Error::schema(
                    &path,
                    format!(
                        "vertex `{}` already carries the special loop `{}`",
                        vertices[src[k]], arrows[other].id
                    ),
                ));
            }
            special[k] = true;
            special_at[src[k]] = Some(k);
        }

        let mut rel_set = HashSet::new();
        for (i, (a, b)) in relations.iter().enumerate() {
            let mut ends = [0usize; 2];
            for (slot, id) in [a, b].into_iter().enumerate() {
                let path = format!("relations[{i}][{slot}]");
                let k = *arrow_pos
                    .get(id)
                    .ok_or_else(|| Error::schema(&path, format!("undeclared arrow `{id}`")))?;
                if special[k] {
                    return Err(Error::schema(
                        &path,
                        format!("special loop `{id}` cannot occur in a relation"),
                    ));
                }
                ends[slot] = k;
            }
            if tgt[ends[0]] != src[ends[1]] {
                return Err(Error::schema(
                    format!("relations[{i}]"),
                    format!("`{a}` does not end where `{b}` starts"),
                ));
            }
            if !rel_set.insert((ends[0], ends[1])) {
                return Err(Error::schema(
                    format!("relations[{i}]"),
                    format!("duplicate relation ({a}, {b})"),
                ));
            }
        }

        Ok(Presentation {
            index: Index {
                vertex_pos,
                arrow_pos,
                src,
                tgt,
                special,
                special_at,
                relations: rel_set,
            },
            vertices,
            arrows,
            relations,
            special_loops,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[(String, String)] {
        &self.relations
    }

    pub fn special_loops(&self) -> &[String] {
        &self.special_loops
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.vertex_pos.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.index.arrow_pos.get(id).copied()
    }

    /// Source vertex index of arrow `a`.
    pub fn src(&self, a: usize) -> usize {
        self.index.src[a]
    }

    /// Target vertex index of arrow `a`.
    pub fn tgt(&self, a: usize) -> usize {
        self.index.tgt[a]
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.arrows[a].degree
    }

    pub fn is_special(&self, a: usize) -> bool {
        self.index.special[a]
    }

    /// The special loop sitting at vertex `v`, if any.
    pub fn special_at(&self, v: usize) -> Option<usize> {
        self.index.special_at[v]
    }

    /// Whether "a then b" is one of the listed relations.
    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.index.relations.contains(&(a, b))
    }

    /// Indices of the ordinary (non-special) arrows in declaration order.
    pub fn ordinary_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(|&a| !self.index.special[a])
    }

    pub fn ordinary_in(&self, v: usize) -> Vec<usize> {
        self.ordinary_arrows()
            .filter(|&a| self.tgt(a) == v)
            .collect()
    }

    pub fn ordinary_out(&self, v: usize) -> Vec<usize> {
        self.ordinary_arrows()
            .filter(|&a| self.src(a) == v)
            .collect()
    }

    pub fn orbifold_count(&self) -> usize {
        self.special_loops.len()
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.arrows.iter().all(|a| a.degree == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

/// Parses a presentation document.
///
/// `degree`, `relations` and `special_loops` may be omitted.
pub fn parse(document: &str) -> Result<Presentation> {
    let value: Value = serde_json::from_str(document).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<Presentation> {
    let root = value
        .as_object()
        .ok_or_else(|| Error::schema("$", "expected an object"))?;

    let vertices = string_array(root.get("vertices"), "vertices", true)?;

    let mut arrows = Vec::new();
    match root.get("arrows") {
        None => return Err(Error::schema("arrows", "missing field")),
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let path = format!("arrows[{i}]");
                let obj = item
                    .as_object()
                    .ok_or_else(|| Error::schema(&path, "expected an object"))?;
                let field = |name: &str| -> Result<String> {
                    match obj.get(name) {
                        Some(Value::String(s)) => Ok(s.clone()),
                        Some(_) => {
                            Err(Error::schema(format!("{path}.{name}"), "expected a string"))
                        }
                        None => Err(Error::schema(format!("{path}.{name}"), "missing field")),
                    }
                };
                let degree = match obj.get("degree") {
                    None | Some(Value::Null) => 0,
                    Some(v) => v.as_i64().ok_or_else(|| {
                        Error::schema(format!("{path}.degree"), "expected an integer")
                    })?,
                };
                arrows.push(Arrow {
                    id: field("id")?,
                    source: field("source")?,
                    target: field("target")?,
                    degree,
                });
            }
        }
        Some(_) => return Err(Error::schema("arrows", "expected an array")),
    }

    let mut relations = Vec::new();
    match root.get("relations") {
        None | Some(Value::Null) => {}
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                let pair = item
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::schema(format!("relations[{i}]"), "expected a pair"))?;
                let get = |k: usize| -> Result<String> {
                    pair[k].as_str().map(str::to_string).ok_or_else(|| {
                        Error::schema(format!("relations[{i}][{k}]"), "expected a string")
                    })
                };
                relations.push((get(0)?, get(1)?));
            }
        }
        Some(_) => return Err(Error::schema("relations", "expected an array")),
    }

    let special_loops = string_array(root.get("special_loops"), "special_loops", false)?;
    Presentation::new(vertices, arrows, relations, special_loops)
}

fn string_array(value: Option<&Value>, name: &str, required: bool) -> Result<Vec<String>> {
    match value {
        None | Some(Value::Null) if !required => Ok(Vec::new()),
        None => Err(Error::schema(name, "missing field")),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::schema(format!("{name}[{i}]"), "expected a string"))
            })
            .collect(),
        Some(_) => Err(Error::schema(name, "expected an array")),
    }
}
