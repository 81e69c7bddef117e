use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{validate, AlgebraClass, Arrow, Presentation};
use crate::error::{Error, Result};

/// One summand `coefficient * (first then second)` of a weighted relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedTerm {
    #[serde(serialize_with = "rational_string")]
    pub coefficient: BigRational,
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedRelation {
    pub terms: Vec<WeightedTerm>,
}

/// A bound quiver whose relations are linear combinations of parallel
/// length-two paths. Produced by [`specialize`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<WeightedRelation>,
}

fn rational_string<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl WeightedPresentation {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weighted presentation serializes")
    }
}

/// Resolved copies of vertex `v` in the admissible presentation: `v+`, `v-`
/// at a special vertex, `v` otherwise. Signs are the weights of the middle
/// vertex in a split relation.
fn split(p: &Presentation, v: usize) -> Vec<(String, i64)> {
    let name = &p.vertices()[v];
    if p.special_at(v).is_some() {
        vec![(format!("{name}+"), 1), (format!("{name}-"), -1)]
    } else {
        vec![(name.clone(), 1)]
    }
}

fn split_arrow_id(p: &Presentation, a: usize, i: &str, j: &str) -> String {
    let id = &p.arrows()[a].id;
    if p.special_at(p.src(a)).is_none() && p.special_at(p.tgt(a)).is_none() {
        id.clone()
    } else {
        format!("({i},{id},{j})")
    }
}

/// The admissible presentation `A^s`: every special vertex is split in two,
/// every ordinary arrow is copied between all resolved endpoints, and each
/// relation `(a, b)` becomes the signed sum over the resolved middle vertex.
pub fn specialize(p: &Presentation) -> Result<WeightedPresentation> {
    let report = validate(p);
    if report.algebra_class == AlgebraClass::Invalid {
        return Err(Error::InvalidInput(
            "specialize needs a gentle or skew-gentle presentation".into(),
        ));
    }
    let vertices = (0..p.vertices().len())
        .flat_map(|v| split(p, v).into_iter().map(|(n, _)| n))
        .collect();
    let mut arrows = Vec::new();
    for a in p.ordinary_arrows() {
        for (i, _) in split(p, p.src(a)) {
            for (j, _) in split(p, p.tgt(a)) {
                arrows.push(Arrow {
                    id: split_arrow_id(p, a, &i, &j),
                    source: i.clone(),
                    target: j.clone(),
                    degree: p.degree(a),
                });
            }
        }
    }
    let mut relations = Vec::new();
    for (x, y) in p.relations() {
        let a = p.arrow_index(x).expect("indexed");
        let b = p.arrow_index(y).expect("indexed");
        for (i, _) in split(p, p.src(a)) {
            for (k, _) in split(p, p.tgt(b)) {
                let terms = split(p, p.tgt(a))
                    .into_iter()
                    .map(|(j, sign)| WeightedTerm {
                        coefficient: if sign > 0 {
                            BigRational::one()
                        } else {
                            -BigRational::one()
                        },
                        first: split_arrow_id(p, a, &i, &j),
                        second: split_arrow_id(p, b, &j, &k),
                    })
                    .collect();
                relations.push(WeightedRelation { terms });
            }
        }
    }
    debug_assert!(relations
        .iter()
        .all(|r: &WeightedRelation| r.terms.iter().all(|t| !t.coefficient.is_zero())));
    Ok(WeightedPresentation {
        vertices,
        arrows,
        relations,
    })
}

/// Suffix marking the dual of an arrow.
pub const DUAL_SUFFIX: &str = "*";

/// The algebra of the dual dissection: every arrow reversed with degree
/// `1 - degree`, and `(b*, a*)` a relation exactly when `a` then `b` compose
/// without being a relation of `p`.
pub fn dual(p: &Presentation) -> Result<Presentation> {
    let report = validate(p);
    if report.algebra_class != AlgebraClass::Gentle || !report.smooth_proper {
        return Err(Error::InvalidInput(
            "dual needs a smooth-proper gentle presentation".into(),
        ));
    }
    let name = |a: usize| format!("{}{DUAL_SUFFIX}", p.arrows()[a].id);
    let arrows = p
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, x)| Arrow {
            id: name(a),
            source: x.target.clone(),
            target: x.source.clone(),
            degree: 1 - x.degree,
        })
        .collect();
    let mut relations = Vec::new();
    for a in 0..p.arrows().len() {
        for b in p.ordinary_out(p.tgt(a)) {
            if !p.is_relation(a, b) {
                relations.push((name(b), name(a)));
            }
        }
    }
    Presentation::new(p.vertices().to_vec(), arrows, relations, Vec::new())
}
