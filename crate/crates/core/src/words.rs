//! Letters, words, strings and bands.
//!
//! Every condition on a word is a condition on consecutive letters, so a word
//! is a walk in the *letter graph* (an edge `l1 -> l2` whenever `l1 l2` is a
//! word) and a band is a closed walk. Bands are enumerated as simple cycles of
//! that graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::{validate, AlgebraClass, Presentation};

/// Default cap on enumeration output.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A letter of the alphabet. Arrow indices refer to `Presentation::arrows`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Direct(usize),
    Inverse(usize),
    Special(usize),
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::Direct(a) => Letter::Inverse(a),
            Letter::Inverse(a) => Letter::Direct(a),
            s @ Letter::Special(_) => s,
        }
    }

    pub fn arrow(self) -> usize {
        match self {
            Letter::Direct(a) | Letter::Inverse(a) | Letter::Special(a) => a,
        }
    }

    pub fn is_special(self) -> bool {
        matches!(self, Letter::Special(_))
    }

    pub fn source(self, p: &Presentation) -> usize {
        match self {
            Letter::Direct(a) | Letter::Special(a) => p.src(a),
            Letter::Inverse(a) => p.tgt(a),
        }
    }

    pub fn target(self, p: &Presentation) -> usize {
        match self {
            Letter::Direct(a) | Letter::Special(a) => p.tgt(a),
            Letter::Inverse(a) => p.src(a),
        }
    }

    pub fn token(self, p: &Presentation) -> String {
        let id = &p.arrows()[self.arrow()].id;
        match self {
            Letter::Direct(_) => id.clone(),
            Letter::Inverse(_) => format!("{id}^-1"),
            Letter::Special(_) => format!("{id}*"),
        }
    }

    fn belongs_to(self, p: &Presentation) -> bool {
        let a = self.arrow();
        a < p.arrows().len() && (self.is_special() == p.is_special(a))
    }
}

/// Parses one token: `a`, `a^-1` or `e*`.
pub fn parse_letter(p: &Presentation, token: &str) -> Result<Letter> {
    let token = token.trim();
    if let Some(a) = p.arrow_index(token) {
        return Ok(if p.is_special(a) {
            Letter::Special(a)
        } else {
            Letter::Direct(a)
        });
    }
    if let Some(a) = token.strip_suffix("^-1").and_then(|t| p.arrow_index(t)) {
        if !p.is_special(a) {
            return Ok(Letter::Inverse(a));
        }
        return Ok(Letter::Special(a));
    }
    if let Some(a) = token.strip_suffix('*').and_then(|t| p.arrow_index(t)) {
        if p.is_special(a) {
            return Ok(Letter::Special(a));
        }
    }
    Err(Error::ForeignLetter(token.to_string()))
}

/// The alphabet in its fixed order: arrows in declaration order, direct before
/// inverse, special letters last.
pub fn letters(p: &Presentation) -> Vec<Letter> {
    let mut out: Vec<Letter> = p
        .ordinary_arrows()
        .flat_map(|a| [Letter::Direct(a), Letter::Inverse(a)])
        .collect();
    out.extend(
        (0..p.arrows().len())
            .filter(|&a| p.is_special(a))
            .map(Letter::Special),
    );
    out
}

/// Position of each letter in [`letters`], used as the total order on words.
#[derive(Debug, Clone)]
pub(crate) struct Alphabet {
    pub letters: Vec<Letter>,
    direct: Vec<usize>,
    special: Vec<usize>,
}

impl Alphabet {
    pub fn new(p: &Presentation) -> Self {
        let letters = letters(p);
        let mut direct = vec![usize::MAX; p.arrows().len()];
        let mut special = vec![usize::MAX; p.arrows().len()];
        for (i, l) in letters.iter().enumerate() {
            match *l {
                Letter::Direct(a) => direct[a] = i,
                Letter::Special(a) => special[a] = i,
                Letter::Inverse(_) => {}
            }
        }
        Alphabet {
            letters,
            direct,
            special,
        }
    }

    pub fn rank(&self, l: Letter) -> usize {
        match l {
            Letter::Direct(a) => self.direct[a],
            Letter::Inverse(a) => self.direct[a] + 1,
            Letter::Special(a) => self.special[a],
        }
    }

    pub fn key(&self, w: &[Letter]) -> Vec<usize> {
        w.iter().map(|&l| self.rank(l)).collect()
    }
}

/// A finite word. The base vertex is its source, which keeps source and
/// target defined for the trivial word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub base: usize,
}

impl Word {
    pub fn trivial(v: usize) -> Self {
        Word {
            letters: Vec::new(),
            base: v,
        }
    }

    /// A word from a nonempty letter sequence; the base is the first source.
    pub fn from_letters(p: &Presentation, letters: Vec<Letter>) -> Self {
        let base = letters[0].source(p);
        Word { letters, base }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn source(&self) -> usize {
        self.base
    }

    pub fn target(&self, p: &Presentation) -> usize {
        self.letters.last().map_or(self.base, |l| l.target(p))
    }

    pub fn inverse(&self, p: &Presentation) -> Word {
        Word {
            letters: invert(&self.letters),
            base: self.target(p),
        }
    }

    pub fn is_ordinary(&self) -> bool {
        !self.letters.iter().any(|l| l.is_special())
    }

    pub fn tokens(&self, p: &Presentation) -> Vec<String> {
        self.letters.iter().map(|l| l.token(p)).collect()
    }

    /// `["a", "b^-1", ...]`, or `{"trivial_at": v}` for a trivial word.
    pub fn to_json(&self, p: &Presentation) -> Value {
        if self.letters.is_empty() {
            json!({ "trivial_at": p.vertices()[self.base] })
        } else {
            json!(self.tokens(p))
        }
    }

    /// The vertices visited: `s(w_1), t(w_1), ..., t(w_n)`.
    pub fn vertex_sequence(&self, p: &Presentation) -> Vec<usize> {
        let mut out = vec![self.base];
        out.extend(self.letters.iter().map(|l| l.target(p)));
        out
    }

    pub fn display(&self, p: &Presentation) -> String {
        if self.letters.is_empty() {
            format!("1_{}", p.vertices()[self.base])
        } else {
            self.tokens(p).join(" ")
        }
    }
}

/// Parses a whitespace- or comma-separated token list. `1_v` is the trivial
/// word at `v`.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if let [single] = tokens.as_slice() {
        if let Some(v) = single.strip_prefix("1_").and_then(|v| p.vertex_index(v)) {
            return Ok(Word::trivial(v));
        }
    }
    if tokens.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    let letters = tokens
        .into_iter()
        .map(|t| parse_letter(p, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::from_letters(p, letters))
}

pub fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Where and why a sequence fails to be a word. Conditions are numbered:
/// 1 composability, 2 no letter followed by its inverse, 3 no repeated
/// special letter, 4 no relation (or inverse of one) as a subword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WordViolation {
    /// Index of the first letter of the offending pair.
    pub index: usize,
    pub condition: u8,
}

/// Condition violated by the two-letter sequence `l1 l2`, if any.
pub fn pair_violation(p: &Presentation, l1: Letter, l2: Letter) -> Option<u8> {
    if l1.target(p) != l2.source(p) {
        return Some(1);
    }
    if l1.is_special() && l2.is_special() {
        return Some(3);
    }
    if l2 == l1.inverse() {
        return Some(2);
    }
    match (l1, l2) {
        (Letter::Direct(a), Letter::Direct(b)) if p.is_relation(a, b) => Some(4),
        (Letter::Inverse(a), Letter::Inverse(b)) if p.is_relation(b, a) => Some(4),
        _ => None,
    }
}

pub fn is_pair_valid(p: &Presentation, l1: Letter, l2: Letter) -> bool {
    pair_violation(p, l1, l2).is_none()
}

/// Checks conditions (1)-(4), returning the first violation.
pub fn is_word(p: &Presentation, seq: &[Letter]) -> Result<Option<WordViolation>> {
    if let Some(l) = seq.iter().find(|l| !l.belongs_to(p)) {
        return Err(Error::ForeignLetter(format!("{l:?}")));
    }
    Ok(seq.windows(2).enumerate().find_map(|(i, w)| {
        pair_violation(p, w[0], w[1]).map(|condition| WordViolation {
            index: i,
            condition,
        })
    }))
}

/// Whether the cyclic word is valid, i.e. every rotation is a word.
pub fn is_cyclic_word(p: &Presentation, seq: &[Letter]) -> bool {
    !seq.is_empty() && (0..seq.len()).all(|i| is_pair_valid(p, seq[i], seq[(i + 1) % seq.len()]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StringTag {
    AsymmetricString,
    SymmetricString,
    NotCoadmissible,
    NotString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringClass {
    pub tag: StringTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl StringClass {
    fn plain(tag: StringTag) -> Self {
        StringClass { tag, witness: None }
    }

    fn with(tag: StringTag, witness: String) -> Self {
        StringClass {
            tag,
            witness: Some(witness),
        }
    }
}

/// Classifies a word as asymmetric string, symmetric string, non-coadmissible
/// word, or none of these.
///
/// A coadmissible trivial word counts as an asymmetric string.
pub fn classify_string(p: &Presentation, w: &Word) -> Result<StringClass> {
    if let Some(v) = is_word(p, &w.letters)? {
        return Ok(StringClass::with(
            StringTag::NotString,
            format!("condition ({}) fails at letter {}", v.condition, v.index),
        ));
    }
    let specials = (0..p.arrows().len()).filter(|&a| p.is_special(a));
    for e in specials {
        let eps = Letter::Special(e);
        let id = &p.arrows()[e].id;
        if w.letters.is_empty() {
            if p.src(e) == w.base {
                return Ok(StringClass::with(
                    StringTag::NotCoadmissible,
                    format!("{id}* is a word at the base vertex"),
                ));
            }
            continue;
        }
        if is_pair_valid(p, eps, w.letters[0]) {
            return Ok(StringClass::with(
                StringTag::NotCoadmissible,
                format!("{id}* extends the word on the left"),
            ));
        }
        if is_pair_valid(p, *w.letters.last().unwrap(), eps) {
            return Ok(StringClass::with(
                StringTag::NotCoadmissible,
                format!("{id}* extends the word on the right"),
            ));
        }
    }
    let inv = invert(&w.letters);
    if w.letters.is_empty() || w.letters != inv {
        return Ok(StringClass::plain(StringTag::AsymmetricString));
    }
    // w = w^-1 forces odd length with a special middle letter
    let h = w.letters.len() / 2;
    let u = &w.letters[..h];
    if u.is_empty() || u == invert(u).as_slice() {
        return Ok(StringClass::with(
            StringTag::NotString,
            "w = u e* u^-1 with u = u^-1".into(),
        ));
    }
    if let Some(k) = forbidden_power(u) {
        return Ok(StringClass::with(
            StringTag::NotString,
            format!("u has the excluded form (v e* v^-1 h*)^{k} v"),
        ));
    }
    Ok(StringClass::plain(StringTag::SymmetricString))
}

/// Finds `k >= 1` with `u = (v e* v^-1 h*)^k v` for some subword `v` and
/// special letters `e*`, `h*`.
fn forbidden_power(u: &[Letter]) -> Option<usize> {
    let n = u.len();
    let mut k = 1;
    while 2 * k <= n {
        let rest = n - 2 * k;
        if rest.is_multiple_of(2 * k + 1) {
            let l = rest / (2 * k + 1);
            let v = &u[..l];
            if u[l].is_special() && u[2 * l + 1].is_special() {
                let mut block = v.to_vec();
                block.push(u[l]);
                block.extend(invert(v));
                block.push(u[2 * l + 1]);
                let mut candidate = Vec::with_capacity(n);
                for _ in 0..k {
                    candidate.extend_from_slice(&block);
                }
                candidate.extend_from_slice(v);
                if candidate == u {
                    return Some(k);
                }
            }
        }
        k += 1;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    Asymmetric,
    Symmetric,
}

/// A band, stored through its periodic part in canonical position: the
/// rotation (of the word or its inverse) with the smallest letter sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub periodic_part: Vec<Letter>,
    pub period: usize,
    pub symmetry: Symmetry,
    pub canonical_key: Vec<usize>,
}

impl Band {
    /// Builds a band from a cyclic letter sequence; `None` unless every
    /// rotation is a word.
    pub fn from_cycle(p: &Presentation, cycle: &[Letter]) -> Option<Band> {
        if !is_cyclic_word(p, cycle) {
            return None;
        }
        let alphabet = Alphabet::new(p);
        Some(Self::build(&alphabet, cycle))
    }

    pub(crate) fn build(alphabet: &Alphabet, cycle: &[Letter]) -> Band {
        let period = primitive_period(cycle);
        let base = &cycle[..period];
        let inv = invert(base);
        let mut best: Option<(Vec<usize>, Vec<Letter>)> = None;
        let mut symmetric = false;
        for r in 0..period {
            let rot = rotate(base, r);
            if rot == inv {
                symmetric = true;
            }
            for cand in [rot, rotate(&inv, r)] {
                let key = alphabet.key(&cand);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, cand));
                }
            }
        }
        let (canonical_key, periodic_part) = best.expect("nonempty cycle");
        Band {
            periodic_part,
            period,
            symmetry: if symmetric {
                Symmetry::Symmetric
            } else {
                Symmetry::Asymmetric
            },
            canonical_key,
        }
    }

    pub fn word(&self, p: &Presentation) -> Word {
        Word::from_letters(p, self.periodic_part.clone())
    }

    pub fn tokens(&self, p: &Presentation) -> Vec<String> {
        self.periodic_part.iter().map(|l| l.token(p)).collect()
    }

    pub fn display(&self, p: &Presentation) -> String {
        self.tokens(p).join(" ")
    }

    pub fn contains_special(&self) -> bool {
        self.periodic_part.iter().any(|l| l.is_special())
    }

    pub fn to_json(&self, p: &Presentation) -> Value {
        json!({
            "periodic_part": self.tokens(p),
            "period": self.period,
            "symmetry": self.symmetry,
        })
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Asymmetric => "asymmetric",
            Symmetry::Symmetric => "symmetric",
        })
    }
}

pub fn rotate<T: Clone>(w: &[T], r: usize) -> Vec<T> {
    let mut out = w[r..].to_vec();
    out.extend_from_slice(&w[..r]);
    out
}

/// Smallest `d` with `w` equal to its rotation by `d`.
pub fn primitive_period<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[(i + d) % n]))
        .unwrap_or(n)
}

/// Adjacency of the letter graph, indexed by alphabet position.
pub(crate) struct LetterGraph {
    pub alphabet: Alphabet,
    pub succ: Vec<Vec<usize>>,
}

impl LetterGraph {
    pub fn new(p: &Presentation) -> Self {
        let alphabet = Alphabet::new(p);
        let ls = &alphabet.letters;
        let succ = ls
            .iter()
            .map(|&l1| {
                (0..ls.len())
                    .filter(|&j| is_pair_valid(p, l1, ls[j]))
                    .collect()
            })
            .collect();
        LetterGraph { alphabet, succ }
    }

    /// A shortest directed cycle through `s`, as node indices.
    fn shortest_cycle_through(&self, s: usize) -> Option<Vec<usize>> {
        let n = self.succ.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.succ[x] {
                if y == s {
                    let mut path = vec![x];
                    let mut c = x;
                    while c != s {
                        c = prev[c];
                        path.push(c);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

fn require_finite(p: &Presentation) -> Result<()> {
    let r = validate(p);
    if r.algebra_class == AlgebraClass::Invalid {
        return Err(Error::InvalidInput(
            "presentation is not gentle or skew-gentle".into(),
        ));
    }
    if !r.finite_dimensional {
        return Err(Error::InvalidInput(
            "presentation is not finite dimensional".into(),
        ));
    }
    Ok(())
}

/// A shortest band, if any exists (ties broken by canonical key).
pub fn band_exists(p: &Presentation) -> Result<Option<Band>> {
    require_finite(p)?;
    let g = LetterGraph::new(p);
    let mut best: Option<Band> = None;
    for s in 0..g.succ.len() {
        if let Some(cycle) = g.shortest_cycle_through(s) {
            let letters: Vec<Letter> = cycle.iter().map(|&i| g.alphabet.letters[i]).collect();
            let band = Band::build(&g.alphabet, &letters);
            let better = best
                .as_ref()
                .is_none_or(|b| (band.period, &band.canonical_key) < (b.period, &b.canonical_key));
            if better {
                best = Some(band);
            }
        }
    }
    Ok(best)
}

/// All bands of period at most `max_period` arising from simple cycles of the
/// letter graph, one per rotation/inversion class, ordered by period and key.
pub fn enumerate_bands(p: &Presentation, max_period: usize) -> Result<Vec<Band>> {
    enumerate_bands_capped(p, max_period, DEFAULT_CAP)
}

pub fn enumerate_bands_capped(
    p: &Presentation,
    max_period: usize,
    cap: usize,
) -> Result<Vec<Band>> {
    require_finite(p)?;
    let g = LetterGraph::new(p);
    let mut found: BTreeMap<(usize, Vec<usize>), Band> = BTreeMap::new();
    let mut visited = 0usize;
    let n = g.succ.len();
    for s in 0..n {
        // simple cycles whose smallest node is s
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut stack: Vec<usize> = vec![0];
        while let Some(i) = stack.last_mut() {
            let x = *path.last().unwrap();
            if *i >= g.succ[x].len() {
                stack.pop();
                on_path[path.pop().unwrap()] = false;
                continue;
            }
            let y = g.succ[x][*i];
            *i += 1;
            if y == s {
                visited += 1;
                if visited > cap {
                    return Err(Error::BudgetExceeded(cap));
                }
                let letters: Vec<Letter> = path.iter().map(|&j| g.alphabet.letters[j]).collect();
                let band = Band::build(&g.alphabet, &letters);
                found
                    .entry((band.period, band.canonical_key.clone()))
                    .or_insert(band);
            } else if y > s && !on_path[y] && path.len() < max_period {
                on_path[y] = true;
                path.push(y);
                stack.push(0);
            }
        }
    }
    Ok(found.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringEntry {
    pub word: Word,
    pub class: StringClass,
}

/// All words of length at most `max_len`, one per inversion pair (the one with
/// the smaller letter sequence), trivial words first, each classified.
pub fn enumerate_strings(p: &Presentation, max_len: usize) -> Result<Vec<StringEntry>> {
    enumerate_strings_capped(p, max_len, DEFAULT_CAP)
}

pub fn enumerate_strings_capped(
    p: &Presentation,
    max_len: usize,
    cap: usize,
) -> Result<Vec<StringEntry>> {
    require_finite(p)?;
    let g = LetterGraph::new(p);
    let mut words: Vec<Word> = (0..p.vertices().len()).map(Word::trivial).collect();
    if words.len() > cap {
        return Err(Error::BudgetExceeded(cap));
    }
    let mut by_len: Vec<Vec<Vec<usize>>> = Vec::new();
    if max_len >= 1 {
        let mut layer: Vec<Vec<usize>> = (0..g.succ.len()).map(|i| vec![i]).collect();
        while !layer.is_empty() {
            by_len.push(layer.clone());
            if by_len.len() == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &layer {
                for &y in &g.succ[*w.last().unwrap()] {
                    let mut v = w.clone();
                    v.push(y);
                    next.push(v);
                }
                if next.len() > 2 * cap {
                    return Err(Error::BudgetExceeded(cap));
                }
            }
            layer = next;
        }
    }
    for layer in by_len {
        let mut kept: Vec<Vec<usize>> = layer
            .into_iter()
            .filter(|w| {
                let inv: Vec<usize> = w
                    .iter()
                    .rev()
                    .map(|&i| g.alphabet.rank(g.alphabet.letters[i].inverse()))
                    .collect();
                *w <= inv
            })
            .collect();
        kept.sort();
        for w in kept {
            words.push(Word::from_letters(
                p,
                w.iter().map(|&i| g.alphabet.letters[i]).collect(),
            ));
            if words.len() > cap {
                return Err(Error::BudgetExceeded(cap));
            }
        }
    }
    words
        .into_iter()
        .map(|word| {
            let class = classify_string(p, &word)?;
            Ok(StringEntry { word, class })
        })
        .collect()
}

/// Number of words with exactly `len` letters (both orientations counted),
/// saturating at `u128::MAX`.
pub fn count_words(p: &Presentation, len: usize) -> Result<u128> {
    require_finite(p)?;
    if len == 0 {
        return Ok(p.vertices().len() as u128);
    }
    let g = LetterGraph::new(p);
    let mut ways = vec![1u128; g.succ.len()];
    for _ in 1..len {
        let mut next = vec![0u128; ways.len()];
        for (x, &c) in ways.iter().enumerate() {
            for &y in &g.succ[x] {
                next[y] = next[y].saturating_add(c);
            }
        }
        ways = next;
    }
    Ok(ways.iter().fold(0u128, |a, &b| a.saturating_add(b)))
}
