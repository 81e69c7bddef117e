use serde::Serialize;

use super::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraClass {
    Gentle,
    SkewGentle,
    Invalid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    OutDegree,
    InDegree,
    RelationSuccessor,
    RelationPredecessor,
    NonrelationSuccessor,
    NonrelationPredecessor,
    SpecialDegree,
    SpecialRelationMissing,
    Disconnected,
}

impl ViolationCode {
    /// Whether the violation disqualifies the algebra class.
    pub fn is_fatal(self) -> bool {
        self != ViolationCode::Disconnected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub algebra_class: AlgebraClass,
    pub finite_dimensional: bool,
    pub smooth_proper: bool,
    pub connected: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.algebra_class != AlgebraClass::Invalid
    }
}

/// Checks the (skew-)gentle conditions, finite dimensionality, smoothness and
/// connectedness. Violations are collected, never thrown.
pub fn validate(p: &Presentation) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |code, location: String, message: String| {
        violations.push(Violation {
            code,
            location,
            message,
        })
    };

    for (v, name) in p.vertices().iter().enumerate() {
        let ins = p.ordinary_in(v);
        let outs = p.ordinary_out(v);
        if outs.len() > 2 {
            push(
                ViolationCode::OutDegree,
                format!("vertex {name}"),
                format!("{} outgoing ordinary arrows", outs.len()),
            );
        }
        if ins.len() > 2 {
            push(
                ViolationCode::InDegree,
                format!("vertex {name}"),
                format!("{} incoming ordinary arrows", ins.len()),
            );
        }
        if let Some(e) = p.special_at(v) {
            let eid = &p.arrows()[e].id;
            if ins.len() > 1 || outs.len() > 1 {
                push(
                    ViolationCode::SpecialDegree,
                    format!("vertex {name}"),
                    format!(
                        "special vertex of `{eid}` has {} in / {} out",
                        ins.len(),
                        outs.len()
                    ),
                );
            }
            for &a in &ins {
                for &b in &outs {
                    if !p.is_relation(a, b) {
                        push(
                            ViolationCode::SpecialRelationMissing,
                            format!("vertex {name}"),
                            format!(
                                "({}, {}) must be a relation at the special vertex",
                                p.arrows()[a].id,
                                p.arrows()[b].id
                            ),
                        );
                    }
                }
            }
        }
    }

    for a in p.ordinary_arrows() {
        let id = &p.arrows()[a].id;
        let next = p.ordinary_out(p.tgt(a));
        let prev = p.ordinary_in(p.src(a));
        let rel_next = next.iter().filter(|&&b| p.is_relation(a, b)).count();
        let free_next = next.len() - rel_next;
        let rel_prev = prev.iter().filter(|&&c| p.is_relation(c, a)).count();
        let free_prev = prev.len() - rel_prev;
        let checks = [
            (
                rel_next,
                ViolationCode::RelationSuccessor,
                "relations starting with",
            ),
            (
                free_next,
                ViolationCode::NonrelationSuccessor,
                "non-relation continuations of",
            ),
            (
                rel_prev,
                ViolationCode::RelationPredecessor,
                "relations ending with",
            ),
            (
                free_prev,
                ViolationCode::NonrelationPredecessor,
                "non-relation predecessors of",
            ),
        ];
        for (count, code, what) in checks {
            if count > 1 {
                push(
                    code,
                    format!("arrow {id}"),
                    format!("{count} {what} `{id}`"),
                );
            }
        }
    }

    let connected = is_connected(p);
    if !connected {
        push(
            ViolationCode::Disconnected,
            "quiver".to_string(),
            "underlying graph is disconnected".to_string(),
        );
    }

    let finite_dimensional = !has_cycle(p, |a, b| {
        !p.is_relation(a, b) || p.special_at(p.tgt(a)).is_some()
    });
    let smooth_proper = finite_dimensional && !has_cycle(p, |a, b| p.is_relation(a, b));

    let algebra_class = if violations.iter().any(|v| v.code.is_fatal()) {
        AlgebraClass::Invalid
    } else if p.special_loops().is_empty() {
        AlgebraClass::Gentle
    } else {
        AlgebraClass::SkewGentle
    };

    ValidationReport {
        algebra_class,
        finite_dimensional,
        smooth_proper,
        connected,
        violations,
    }
}

/// Directed cycle search on ordinary arrows, with `a -> b` whenever the two
/// compose and `edge(a, b)` holds.
fn has_cycle(p: &Presentation, edge: impl Fn(usize, usize) -> bool) -> bool {
    let n = p.arrows().len();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            if p.is_special(a) {
                return Vec::new();
            }
            p.ordinary_out(p.tgt(a))
                .into_iter()
                .filter(|&b| edge(a, b))
                .collect()
        })
        .collect();
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (a, ref mut i)) = stack.last_mut() {
            if *i < succ[a].len() {
                let b = succ[a][*i];
                *i += 1;
                match state[b] {
                    0 => {
                        state[b] = 1;
                        stack.push((b, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[a] = 2;
                stack.pop();
            }
        }
    }
    false
}

fn is_connected(p: &Presentation) -> bool {
    let n = p.vertices().len();
    if n <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..p.arrows().len() {
        let (x, y) = (find(&mut parent, p.src(a)), find(&mut parent, p.tgt(a)));
        parent[x] = y;
    }
    let root = find(&mut parent, 0);
    (1..n).all(|v| find(&mut parent, v) == root)
}
