//! Minimal bands: recognition of the four admissible shapes and extraction of
//! one minimal band from an arbitrary band.
//!
//! Shapes, with `u`, `u'` closed ordinary strings whose squares are not words
//! and `z` an ordinary string:
//!
//! * `AsymTypeA`: the band visits no vertex twice.
//! * `AsymBarbell`: `u z u' z^-1`.
//! * `AsymSpecialBarbell`: `e* z u z^-1`.
//! * `SymDumbbell`: `e* z h* z^-1` with `z` nontrivial.
//!
//! In the barbell shapes `u`, `u'` and `z` pass through no vertex twice
//! (apart from the base of `u`, `u'`) and meet only where they are glued:
//! `V(u) ∩ V(z) = {s(z)}`, `V(u') ∩ V(z) = {t(z)}`, and `u`, `u'` are disjoint
//! unless `z` is trivial, in which case they share exactly the base vertex.

use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::presentation::Presentation;
use crate::words::{
    band_exists, invert, is_cyclic_word, is_pair_valid, rotate, Band, Letter, LetterGraph,
    Symmetry, Word,
};

/// Shape tags in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Shape {
    AsymTypeA,
    AsymBarbell,
    AsymSpecialBarbell,
    SymDumbbell,
}

/// The pieces witnessing a shape. Unused pieces are `None`; `z` is always a
/// word (possibly trivial) when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u: Option<Vec<Letter>>,
    pub u_prime: Option<Vec<Letter>>,
    pub z: Option<Word>,
    pub epsilon: Option<usize>,
    pub eta: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalBandCertificate {
    pub band: Band,
    pub shape: Shape,
    /// The rotation of the periodic part (or its inverse) that the
    /// decomposition concatenates to.
    pub rotation: Vec<Letter>,
    pub decomposition: Decomposition,
}

impl MinimalBandCertificate {
    /// Concatenation of the pieces in shape order.
    pub fn reassemble(&self) -> Vec<Letter> {
        let d = &self.decomposition;
        let z = d.z.as_ref().map(|w| w.letters.clone()).unwrap_or_default();
        let zi = invert(&z);
        let mut out = Vec::new();
        match self.shape {
            Shape::AsymTypeA => out.extend(d.u.clone().unwrap_or_default()),
            Shape::AsymBarbell => {
                out.extend(d.u.clone().unwrap_or_default());
                out.extend(z);
                out.extend(d.u_prime.clone().unwrap_or_default());
                out.extend(zi);
            }
            Shape::AsymSpecialBarbell => {
                out.extend(d.epsilon.map(Letter::Special));
                out.extend(z);
                out.extend(d.u.clone().unwrap_or_default());
                out.extend(zi);
            }
            Shape::SymDumbbell => {
                out.extend(d.epsilon.map(Letter::Special));
                out.extend(z);
                out.extend(d.eta.map(Letter::Special));
                out.extend(zi);
            }
        }
        out
    }

    pub fn to_json(&self, p: &Presentation) -> Value {
        let toks = |w: &Option<Vec<Letter>>| {
            w.as_ref()
                .map(|w| json!(w.iter().map(|l| l.token(p)).collect::<Vec<_>>()))
                .unwrap_or(Value::Null)
        };
        let d = &self.decomposition;
        let id = |a: Option<usize>| a.map(|a| json!(p.arrows()[a].id)).unwrap_or(Value::Null);
        json!({
            "shape": self.shape,
            "band": self.band.tokens(p),
            "symmetry": self.band.symmetry,
            "rotation": self.rotation.iter().map(|l| l.token(p)).collect::<Vec<_>>(),
            "u": toks(&d.u),
            "u_prime": toks(&d.u_prime),
            "z": d.z.as_ref().map(|z| z.to_json(p)).unwrap_or(Value::Null),
            "epsilon": id(d.epsilon),
            "eta": id(d.eta),
        })
    }
}

/// Cyclic vertex list of a closed walk: `s(w_1), ..., s(w_n)`.
fn cyclic_vertices(p: &Presentation, w: &[Letter]) -> Vec<usize> {
    w.iter().map(|l| l.source(p)).collect()
}

fn path_vertices(p: &Presentation, base: usize, w: &[Letter]) -> Vec<usize> {
    let mut out = vec![base];
    out.extend(w.iter().map(|l| l.target(p)));
    out
}

fn all_distinct(vs: &[usize]) -> bool {
    let mut seen = HashSet::new();
    vs.iter().all(|v| seen.insert(*v))
}

/// A closed ordinary string that visits no vertex twice and whose square is
/// not a word.
fn is_primitive_loop(p: &Presentation, u: &[Letter]) -> bool {
    !u.is_empty()
        && u.iter().all(|l| !l.is_special())
        && u[u.len() - 1].target(p) == u[0].source(p)
        && !is_pair_valid(p, u[u.len() - 1], u[0])
        && all_distinct(&cyclic_vertices(p, u))
}

fn set(vs: &[usize]) -> HashSet<usize> {
    vs.iter().copied().collect()
}

/// Checks `rotation = u z u' z^-1`.
fn match_barbell(p: &Presentation, w: &[Letter], lu: usize, lz: usize) -> Option<Decomposition> {
    let n = w.len();
    if lu == 0 || lu + 2 * lz >= n {
        return None;
    }
    let lu2 = n - lu - 2 * lz;
    let u = &w[..lu];
    let z = &w[lu..lu + lz];
    let u2 = &w[lu + lz..lu + lz + lu2];
    let zi = &w[lu + lz + lu2..];
    if zi != invert(z).as_slice() || z.iter().any(|l| l.is_special()) {
        return None;
    }
    if !is_primitive_loop(p, u) || !is_primitive_loop(p, u2) {
        return None;
    }
    let a = u[0].source(p);
    let zv = path_vertices(p, a, z);
    if !all_distinct(&zv) {
        return None;
    }
    let (su, su2, sz) = (
        set(&cyclic_vertices(p, u)),
        set(&cyclic_vertices(p, u2)),
        set(&zv),
    );
    let b = *zv.last().unwrap();
    if lz == 0 {
        let common: HashSet<usize> = su.intersection(&su2).copied().collect();
        if common != HashSet::from([a]) {
            return None;
        }
    } else {
        if su.intersection(&sz).copied().collect::<HashSet<_>>() != HashSet::from([a]) {
            return None;
        }
        if su2.intersection(&sz).copied().collect::<HashSet<_>>() != HashSet::from([b]) {
            return None;
        }
        if su.intersection(&su2).next().is_some() {
            return None;
        }
    }
    Some(Decomposition {
        u: Some(u.to_vec()),
        u_prime: Some(u2.to_vec()),
        z: Some(Word {
            letters: z.to_vec(),
            base: a,
        }),
        epsilon: None,
        eta: None,
    })
}

/// Checks `rotation = e* z u z^-1`.
fn match_special_barbell(p: &Presentation, w: &[Letter], lz: usize) -> Option<Decomposition> {
    let n = w.len();
    let Letter::Special(e) = w[0] else {
        return None;
    };
    if 1 + 2 * lz >= n {
        return None;
    }
    let z = &w[1..1 + lz];
    let u = &w[1 + lz..n - lz];
    let zi = &w[n - lz..];
    if zi != invert(z).as_slice() || z.iter().any(|l| l.is_special()) {
        return None;
    }
    if !is_primitive_loop(p, u) {
        return None;
    }
    let i = p.src(e);
    let zv = path_vertices(p, i, z);
    if !all_distinct(&zv) {
        return None;
    }
    let common: HashSet<usize> = set(&cyclic_vertices(p, u))
        .intersection(&set(&zv))
        .copied()
        .collect();
    if common != HashSet::from([*zv.last().unwrap()]) {
        return None;
    }
    Some(Decomposition {
        u: Some(u.to_vec()),
        u_prime: None,
        z: Some(Word {
            letters: z.to_vec(),
            base: i,
        }),
        epsilon: Some(e),
        eta: None,
    })
}

/// Checks `rotation = e* z h* z^-1`.
fn match_dumbbell(p: &Presentation, w: &[Letter]) -> Option<Decomposition> {
    let n = w.len();
    if n < 4 || !n.is_multiple_of(2) {
        return None;
    }
    let lz = (n - 2) / 2;
    let (Letter::Special(e), Letter::Special(h)) = (w[0], w[lz + 1]) else {
        return None;
    };
    let z = &w[1..=lz];
    if &w[lz + 2..] != invert(z).as_slice() || z.iter().any(|l| l.is_special()) {
        return None;
    }
    let zv = path_vertices(p, p.src(e), z);
    if !all_distinct(&zv) {
        return None;
    }
    Some(Decomposition {
        u: None,
        u_prime: None,
        z: Some(Word {
            letters: z.to_vec(),
            base: p.src(e),
        }),
        epsilon: Some(e),
        eta: Some(h),
    })
}

/// Pattern check of `band` against the four shapes; the first matching shape
/// in tie-break order wins.
pub fn is_minimal_band(p: &Presentation, band: &Band) -> Option<MinimalBandCertificate> {
    let w = &band.periodic_part;
    if !is_cyclic_word(p, w) {
        return None;
    }
    let n = w.len();
    let specials = w.iter().filter(|l| l.is_special()).count();
    let mut rotations = Vec::with_capacity(2 * n);
    for r in 0..n {
        rotations.push(rotate(w, r));
    }
    let wi = invert(w);
    for r in 0..n {
        rotations.push(rotate(&wi, r));
    }
    let cert = |shape, rotation: &Vec<Letter>, decomposition| MinimalBandCertificate {
        band: band.clone(),
        shape,
        rotation: rotation.clone(),
        decomposition,
    };

    if band.symmetry == Symmetry::Asymmetric && specials == 0 {
        if all_distinct(&cyclic_vertices(p, w)) {
            return Some(cert(
                Shape::AsymTypeA,
                &w.clone(),
                Decomposition {
                    u: Some(w.clone()),
                    u_prime: None,
                    z: None,
                    epsilon: None,
                    eta: None,
                },
            ));
        }
        for rot in &rotations {
            for lz in 0..n / 2 {
                for lu in 1..n {
                    if let Some(d) = match_barbell(p, rot, lu, lz) {
                        return Some(cert(Shape::AsymBarbell, rot, d));
                    }
                }
            }
        }
    }
    if band.symmetry == Symmetry::Asymmetric && specials == 1 {
        for rot in rotations.iter().filter(|r| r[0].is_special()) {
            for lz in 0..n / 2 {
                if let Some(d) = match_special_barbell(p, rot, lz) {
                    return Some(cert(Shape::AsymSpecialBarbell, rot, d));
                }
            }
        }
    }
    if band.symmetry == Symmetry::Symmetric && specials == 2 {
        for rot in rotations.iter().filter(|r| r[0].is_special()) {
            if let Some(d) = match_dumbbell(p, rot) {
                return Some(cert(Shape::SymDumbbell, rot, d));
            }
        }
    }
    None
}

/// Finds one minimal band, or `None` exactly when there is no band.
///
/// The shortest band is reduced by surgery first: cutting the walk at a
/// repeated vertex, or, when it carries a special letter, folding it at the
/// first repeated vertex after that letter. If surgery does not reach a
/// certified shape, simple cycles of the letter graph are searched by
/// increasing length.
pub fn find_minimal_band(p: &Presentation) -> Result<Option<MinimalBandCertificate>> {
    let Some(witness) = band_exists(p)? else {
        return Ok(None);
    };
    if let Some(c) = surgery(p, &witness) {
        return Ok(Some(c));
    }
    Ok(exhaustive(p))
}

fn surgery(p: &Presentation, start: &Band) -> Option<MinimalBandCertificate> {
    let mut current = start.clone();
    // every step strictly shortens the periodic part
    for _ in 0..=start.period {
        if let Some(c) = is_minimal_band(p, &current) {
            return Some(c);
        }
        let next = if current.contains_special() {
            fold_at_special(p, &current.periodic_part)
        } else {
            excise(p, &current.periodic_part)
        }?;
        if next.period >= current.period {
            return None;
        }
        current = next;
    }
    None
}

/// Cuts the closed walk at the first repeated vertex and keeps a piece that
/// is itself a band.
fn excise(p: &Presentation, w: &[Letter]) -> Option<Band> {
    let vs = cyclic_vertices(p, w);
    let n = w.len();
    for i in 0..n {
        for j in i + 1..n {
            if vs[i] != vs[j] {
                continue;
            }
            let inner = &w[i..j];
            let mut outer = w[j..].to_vec();
            outer.extend_from_slice(&w[..i]);
            for piece in [inner, outer.as_slice()] {
                if let Some(b) = Band::from_cycle(p, piece) {
                    return Some(b);
                }
            }
        }
    }
    None
}

/// Rotates to a special letter `e*` and folds at the first repeated vertex
/// `s(u_x) = t(u_y)` after it: an ordinary repeat yields
/// `e* u_2..u_{x-1} (u_x..u_y) u_{x-1}^-1..u_2^-1`, a repeated special letter
/// `h*` yields `e* u_2..u_{x-1} h* u_{x-1}^-1..u_2^-1`.
fn fold_at_special(p: &Presentation, w: &[Letter]) -> Option<Band> {
    let r = w.iter().position(|l| l.is_special())?;
    let w = rotate(w, r);
    let n = w.len();
    let i = w[0].source(p);
    // u_k = w[k - 1]; s(u_k) = source of w[k - 1], t(u_k) = target
    for x in 3..n {
        for y in x..n {
            let j = w[x - 1].source(p);
            if j == i || j != w[y - 1].target(p) {
                continue;
            }
            let prefix = &w[1..x - 2 + 1];
            let mut cand = vec![w[0]];
            cand.extend_from_slice(prefix);
            if w[x - 1].is_special() {
                if x != y {
                    continue;
                }
                cand.push(w[x - 1]);
            } else {
                cand.extend_from_slice(&w[x - 1..y]);
            }
            cand.extend(invert(prefix));
            if let Some(b) = Band::from_cycle(p, &cand) {
                return Some(b);
            }
        }
    }
    None
}

/// Simple cycles of the letter graph by increasing length, each quiver vertex
/// visited at most twice; the first certified one wins.
fn exhaustive(p: &Presentation) -> Option<MinimalBandCertificate> {
    let g = LetterGraph::new(p);
    let n = g.succ.len();
    let nv = p.vertices().len();
    for len in 1..=n {
        for s in 0..n {
            let mut path = vec![s];
            let mut on_path = vec![false; n];
            let mut visits = vec![0u8; nv];
            on_path[s] = true;
            visits[g.alphabet.letters[s].source(p)] += 1;
            let mut stack = vec![0usize];
            while let Some(i) = stack.last_mut() {
                let x = *path.last().unwrap();
                if *i >= g.succ[x].len() {
                    stack.pop();
                    let y = path.pop().unwrap();
                    on_path[y] = false;
                    visits[g.alphabet.letters[y].source(p)] -= 1;
                    continue;
                }
                let y = g.succ[x][*i];
                *i += 1;
                if y == s && path.len() == len {
                    let letters: Vec<Letter> =
                        path.iter().map(|&j| g.alphabet.letters[j]).collect();
                    if let Some(c) =
                        Band::from_cycle(p, &letters).and_then(|b| is_minimal_band(p, &b))
                    {
                        return Some(c);
                    }
                } else if y > s && !on_path[y] && path.len() < len {
                    let v = g.alphabet.letters[y].source(p);
                    if visits[v] < 2 {
                        visits[v] += 1;
                        on_path[y] = true;
                        path.push(y);
                        stack.push(0);
                    }
                }
            }
        }
    }
    None
}
