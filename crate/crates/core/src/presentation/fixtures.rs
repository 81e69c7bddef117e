use serde::{Deserialize, Serialize};

use super::{Arrow, Presentation};
use crate::error::{Error, Result};

pub const FIXTURE_NAMES: &[&str] = &[
    "A_n",
    "Kronecker",
    "E1",
    "E2",
    "S1",
    "S2",
    "Lambda",
    "Torus",
];

/// Size parameters for [`fixture`]. Unset fields fall back to the smallest
/// meaningful instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub m: Option<usize>,
}

impl FixtureParams {
    pub fn n(n: usize) -> Self {
        FixtureParams {
            n: Some(n),
            ..Default::default()
        }
    }

    pub fn lambda(r: usize, n: usize, m: usize) -> Self {
        FixtureParams {
            n: Some(n),
            r: Some(r),
            m: Some(m),
        }
    }
}

struct Builder {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(String, String)>,
    special: Vec<String>,
}

impl Builder {
    fn new<S: ToString>(vertices: impl IntoIterator<Item = S>) -> Self {
        Builder {
            vertices: vertices.into_iter().map(|v| v.to_string()).collect(),
            arrows: Vec::new(),
            relations: Vec::new(),
            special: Vec::new(),
        }
    }

    fn arrow(&mut self, id: &str, s: &str, t: &str, degree: i64) -> &mut Self {
        self.arrows.push(Arrow::new(id, s, t, degree));
        self
    }

    fn special(&mut self, id: &str, v: &str) -> &mut Self {
        self.arrows.push(Arrow::new(id, v, v, 0));
        self.special.push(id.to_string());
        self
    }

    fn rel(&mut self, a: &str, b: &str) -> &mut Self {
        self.relations.push((a.to_string(), b.to_string()));
        self
    }

    fn build(self) -> Presentation {
        Presentation::new(self.vertices, self.arrows, self.relations, self.special)
            .expect("fixtures are well formed")
    }
}

/// Named example presentations.
///
/// * `A_n`: linear quiver `1 -> 2 -> ... -> n`, no relations.
/// * `Kronecker`: two parallel arrows `a, b: 1 -> 2`.
/// * `E1`: the graded gentle algebra on four vertices whose surface is a disk
///   with three boundary components.
/// * `E2`: the skew-gentle algebra with special loops at 1 and 4.
/// * `S1`: spine `1 -> ... -> n` with a special loop at 1, closed off by
///   `alpha: n -> t` and `beta: b -> n` with `beta alpha = 0`; the branches
///   meet at the sink `r`.
/// * `S2`: path `1 -> ... -> n` with special loops at both ends (`n >= 2`).
/// * `Lambda`: the gentle one-cycle algebra `Lambda(r, n, m)`, `n > r >= 1`.
/// * `Torus`: a three-arrow gentle algebra whose surface has genus one.
pub fn fixture(name: &str, params: &FixtureParams) -> Result<Presentation> {
    let key = name.to_ascii_lowercase().replace(['_', '-'], "");
    match key.as_str() {
        "an" | "a" => {
            let n = params.n.unwrap_or(2);
            if n == 0 {
                return Err(Error::BadParams("A_n needs n >= 1".into()));
            }
            let mut b = Builder::new(1..=n);
            for i in 1..n {
                b.arrow(&format!("a{i}"), &i.to_string(), &(i + 1).to_string(), 0);
            }
            Ok(b.build())
        }
        "kronecker" => {
            let mut b = Builder::new(["1", "2"]);
            b.arrow("a", "1", "2", 0).arrow("b", "1", "2", 0);
            Ok(b.build())
        }
        "e1" => {
            let mut b = Builder::new(["1", "2", "3", "4"]);
            b.arrow("alpha", "1", "2", 1)
                .arrow("beta", "1", "2", 0)
                .arrow("theta", "2", "3", 0)
                .arrow("gamma", "3", "4", 1)
                .arrow("delta", "3", "4", 0)
                .rel("beta", "theta")
                .rel("theta", "delta");
            Ok(b.build())
        }
        "e2" => {
            let mut b = Builder::new(["1", "2", "3", "4", "5"]);
            b.arrow("alpha", "1", "3", 0)
                .arrow("mu", "2", "3", 0)
                .arrow("nu", "3", "4", 0)
                .arrow("beta", "3", "5", 0)
                .arrow("sigma", "4", "5", 0)
                .arrow("gamma", "2", "2", 0)
                .special("epsilon", "1")
                .special("eta", "4")
                .rel("alpha", "beta")
                .rel("mu", "nu")
                .rel("nu", "sigma")
                .rel("gamma", "gamma");
            Ok(b.build())
        }
        "s1" => {
            let n = params.n.unwrap_or(2);
            if n == 0 {
                return Err(Error::BadParams("S1 needs n >= 1".into()));
            }
            let mut vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            vs.extend(["t", "r", "b"].map(String::from));
            let mut b = Builder::new(vs);
            for i in 1..n {
                b.arrow(&format!("s{i}"), &i.to_string(), &(i + 1).to_string(), 0);
            }
            let last = n.to_string();
            b.arrow("alpha", &last, "t", 0)
                .arrow("c1", "t", "r", 0)
                .arrow("c2", "b", "r", 0)
                .arrow("beta", "b", &last, 0)
                .special("epsilon", "1")
                .rel("beta", "alpha");
            Ok(b.build())
        }
        "s2" => {
            let n = params.n.unwrap_or(2);
            if n < 2 {
                return Err(Error::BadParams("S2 needs n >= 2".into()));
            }
            let mut b = Builder::new(1..=n);
            for i in 1..n {
                b.arrow(&format!("s{i}"), &i.to_string(), &(i + 1).to_string(), 0);
            }
            b.special("epsilon", "1").special("eta", &n.to_string());
            Ok(b.build())
        }
        "lambda" => {
            let r = params.r.unwrap_or(1);
            let n = params.n.unwrap_or(2);
            let m = params.m.unwrap_or(0);
            if r < 1 || n <= r {
                return Err(Error::BadParams(format!(
                    "Lambda(r, n, m) needs n > r >= 1, got r = {r}, n = {n}"
                )));
            }
            let name = |i: i64| format!("a{i}");
            let mut vs: Vec<String> = (1..=m).rev().map(|k| format!("-{k}")).collect();
            vs.extend((0..n).map(|i| i.to_string()));
            let mut b = Builder::new(vs);
            for k in (1..=m as i64).rev() {
                b.arrow(&name(-k), &(-k).to_string(), &(1 - k).to_string(), 0);
            }
            for i in 0..n {
                b.arrow(
                    &name(i as i64),
                    &i.to_string(),
                    &((i + 1) % n).to_string(),
                    0,
                );
            }
            b.rel(&name(n as i64 - 1), &name(0));
            for i in (n - r)..(n - 1) {
                b.rel(&name(i as i64), &name(i as i64 + 1));
            }
            Ok(b.build())
        }
        "torus" => {
            let mut b = Builder::new(["1", "2"]);
            b.arrow("a", "1", "2", 0)
                .arrow("b", "1", "2", 0)
                .arrow("c", "2", "1", 0)
                .rel("b", "c")
                .rel("c", "a");
            Ok(b.build())
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}
