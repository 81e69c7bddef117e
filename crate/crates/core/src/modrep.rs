//! Representations over the rationals: Hom spaces, bricks, isomorphism
//! certificates, string modules and the one-parameter brick family on `S1`.
//!
//! A representation assigns a matrix of shape `dim(t(a)) x dim(s(a))` to each
//! arrow `a`; the path "a then b" acts as `M_b * M_a`. Representations live
//! over the specialized presentation, so special loops need no idempotent
//! conditions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::{fixture, specialize, FixtureParams, Presentation, WeightedPresentation};
use crate::words::{is_word, Letter, Word};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const RANDOM_TRIALS: usize = 64;
/// Largest Hom dimension for which the `{-1, 0, 1}` grid is searched.
pub const GRID_LIMIT: usize = 9;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| q(x)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self[(r, c)].recip();
            for j in 0..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let d = &f * &self[(r, j)];
                        self[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m[(r, f)].clone();
                }
                x
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!((0..self.rows)
            .map(|i| (0..self.cols)
                .map(|j| self[(i, j)].to_string())
                .collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub presentation: WeightedPresentation,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    /// Checks matrix shapes and that every weighted relation vanishes.
    pub fn new(
        presentation: WeightedPresentation,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != presentation.vertices.len() || maps.len() != presentation.arrows.len() {
            return Err(Error::InvalidInput("representation size mismatch".into()));
        }
        let ends = |a: usize| {
            let arrow = &presentation.arrows[a];
            (
                presentation.vertex_index(&arrow.source).unwrap(),
                presentation.vertex_index(&arrow.target).unwrap(),
            )
        };
        for (a, m) in maps.iter().enumerate() {
            let (s, t) = ends(a);
            if (m.rows, m.cols) != (dims[t], dims[s]) {
                return Err(Error::InvalidInput(format!(
                    "matrix of {} is {}x{}, expected {}x{}",
                    presentation.arrows[a].id, m.rows, m.cols, dims[t], dims[s]
                )));
            }
        }
        for rel in &presentation.relations {
            let mut acc: Option<Matrix> = None;
            for term in &rel.terms {
                let a = presentation.arrow_index(&term.first).unwrap();
                let b = presentation.arrow_index(&term.second).unwrap();
                let prod = maps[b].mul(&maps[a]).scale(&term.coefficient);
                acc = Some(match acc {
                    Some(x) => x.add(&prod),
                    None => prod,
                });
            }
            if acc.is_some_and(|m| !m.is_zero()) {
                let names: Vec<String> = rel
                    .terms
                    .iter()
                    .map(|t| format!("{} {}", t.first, t.second))
                    .collect();
                return Err(Error::InvalidInput(format!(
                    "relation {} does not vanish",
                    names.join(" + ")
                )));
            }
        }
        Ok(Representation {
            presentation,
            dims,
            maps,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.presentation != other.presentation {
            return Err(Error::MismatchedPresentations);
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(x.rows + y.rows, x.cols + y.cols);
                for i in 0..x.rows {
                    for j in 0..x.cols {
                        m[(i, j)] = x[(i, j)].clone();
                    }
                }
                for i in 0..y.rows {
                    for j in 0..y.cols {
                        m[(x.rows + i, x.cols + j)] = y[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Representation::new(self.presentation.clone(), dims, maps)
    }

    pub fn to_json(&self) -> Value {
        let dims: BTreeMap<&str, usize> = self
            .presentation
            .vertices
            .iter()
            .map(String::as_str)
            .zip(self.dims.iter().copied())
            .collect();
        let matrices: BTreeMap<&str, Value> = self
            .presentation
            .arrows
            .iter()
            .map(|a| a.id.as_str())
            .zip(self.maps.iter().map(Matrix::to_json))
            .collect();
        json!({ "dims": dims, "matrices": matrices })
    }
}

/// Module of an ordinary string: one basis vector per position of the vertex
/// sequence, arrows acting along the letters.
pub fn string_module(p: &Presentation, w: &Word) -> Result<Representation> {
    if let Some(l) = w.letters.iter().find(|l| l.is_special()) {
        return Err(Error::SpecialLetterPresent(l.token(p)));
    }
    if let Some(v) = is_word(p, &w.letters)? {
        return Err(Error::InvalidInput(format!(
            "not a word: letters {} and {} violate condition {}",
            v.index,
            v.index + 1,
            v.condition
        )));
    }
    let seq = w.vertex_sequence(p);
    if let Some(&v) = seq.iter().find(|&&v| p.special_at(v).is_some()) {
        return Err(Error::InvalidInput(format!(
            "string passes the special vertex {}",
            p.vertices()[v]
        )));
    }
    let wp = specialize(p)?;
    let mut dims = vec![0usize; p.vertices().len()];
    let mut local = Vec::with_capacity(seq.len());
    for &v in &seq {
        local.push(dims[v]);
        dims[v] += 1;
    }
    // vertex and arrow indices agree with the specialization here, since no
    // split vertex is involved
    let mut maps: Vec<Matrix> = wp
        .arrows
        .iter()
        .map(|a| {
            let s = wp.vertex_index(&a.source).unwrap();
            let t = wp.vertex_index(&a.target).unwrap();
            Matrix::zeros(dim_at(&wp, &dims, p, t), dim_at(&wp, &dims, p, s))
        })
        .collect();
    for (k, l) in w.letters.iter().enumerate() {
        let (a, from, to) = match *l {
            Letter::Direct(a) => (a, k, k + 1),
            Letter::Inverse(a) => (a, k + 1, k),
            Letter::Special(_) => unreachable!(),
        };
        let wa = wp.arrow_index(&p.arrows()[a].id).unwrap();
        maps[wa][(local[to], local[from])] = BigRational::one();
    }
    let wdims = (0..wp.vertices.len())
        .map(|v| dim_at(&wp, &dims, p, v))
        .collect();
    Representation::new(wp, wdims, maps)
}

fn dim_at(wp: &WeightedPresentation, dims: &[usize], p: &Presentation, wv: usize) -> usize {
    p.vertex_index(&wp.vertices[wv]).map_or(0, |v| dims[v])
}

/// The brick `M_lambda` over the specialization of `S1(n)`, `n >= 2`: `k` at
/// `1+` and `1-` embedded by `(1, lambda)^t` and `(1, 1)^t`, `k^2` along the
/// spine with identities, `alpha` acting by `(0 1)`, `beta` by `(1 0)^t`, and
/// `k` at `t`, `r`, `b`.
pub fn m_lambda(n: usize, lambda: &BigRational) -> Result<Representation> {
    if n < 2 {
        return Err(Error::BadParams(format!("m_lambda needs n >= 2, got {n}")));
    }
    let wp = specialize(&fixture("S1", &FixtureParams::n(n))?)?;
    let dims: Vec<usize> = wp
        .vertices
        .iter()
        .map(|v| match v.as_str() {
            "1+" | "1-" | "t" | "r" | "b" => 1,
            _ => 2,
        })
        .collect();
    let one = BigRational::one();
    let maps = wp
        .arrows
        .iter()
        .map(|a| match a.id.as_str() {
            "(1+,s1,2)" => Matrix::from_rows(&[vec![one.clone()], vec![lambda.clone()]]),
            "(1-,s1,2)" => Matrix::from_ints(2, 1, &[1, 1]),
            "alpha" => Matrix::from_ints(1, 2, &[0, 1]),
            "beta" => Matrix::from_ints(2, 1, &[1, 0]),
            "c1" | "c2" => Matrix::identity(1),
            _ => Matrix::identity(2),
        })
        .collect();
    Representation::new(wp, dims, maps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    /// Each element is a family of matrices `X_v: M_v -> N_v`.
    pub basis: Vec<Vec<Matrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coefficients: &[BigRational]) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = self.basis[0]
            .iter()
            .map(|m| Matrix::zeros(m.rows, m.cols))
            .collect();
        for (c, elem) in coefficients.iter().zip(&self.basis) {
            for (o, m) in out.iter_mut().zip(elem) {
                *o = o.add(&m.scale(c));
            }
        }
        out
    }
}

/// Solves `N_a X_s = X_t M_a` for all arrows.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    if m.presentation != n.presentation {
        return Err(Error::MismatchedPresentations);
    }
    let wp = &m.presentation;
    let nv = m.dims.len();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    // X_v entry (i, j) is unknown offset[v] + i * m.dims[v] + j
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (a, arrow) in wp.arrows.iter().enumerate() {
        let s = wp.vertex_index(&arrow.source).unwrap();
        let t = wp.vertex_index(&arrow.target).unwrap();
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![BigRational::zero(); unknowns];
                // (N_a X_s)_{ij} = sum_k N_a[i,k] X_s[k,j]
                for k in 0..n.dims[s] {
                    row[var(s, k, j)] += &na[(i, k)];
                }
                // (X_t M_a)_{ij} = sum_k X_t[i,k] M_a[k,j]
                for k in 0..m.dims[t] {
                    row[var(t, i, k)] -= &ma[(k, j)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::zeros(0, unknowns).kernel()
    } else {
        Matrix::from_rows(&rows).kernel()
    };
    let basis = kernel
        .into_iter()
        .map(|x| {
            (0..nv)
                .map(|v| {
                    let mut xv = Matrix::zeros(n.dims[v], m.dims[v]);
                    for i in 0..n.dims[v] {
                        for j in 0..m.dims[v] {
                            xv[(i, j)] = x[var(v, i, j)].clone();
                        }
                    }
                    xv
                })
                .collect()
        })
        .collect();
    Ok(HomSpace { basis })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

pub fn is_brick(m: &Representation) -> Result<bool> {
    Ok(hom_dim(m, m)? == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoSearch {
    pub isomorphic: bool,
    /// An invertible intertwiner when one was found.
    pub certificate: Option<Vec<Matrix>>,
    pub hom_dim: usize,
    pub random_trials: usize,
    pub grid_points: usize,
}

fn invertible_family(x: &[Matrix]) -> bool {
    x.iter().all(Matrix::is_invertible)
}

/// Looks for an invertible element of `Hom(M, N)`: seeded random integer
/// combinations first, then the `{-1, 0, 1}` grid when the Hom space is
/// small enough. Invertible elements form a dense open set when they exist,
/// so a miss after both searches is reported as non-isomorphic.
pub fn are_isomorphic(m: &Representation, n: &Representation) -> Result<IsoSearch> {
    are_isomorphic_seeded(m, n, DEFAULT_SEED)
}

pub fn are_isomorphic_seeded(
    m: &Representation,
    n: &Representation,
    seed: u64,
) -> Result<IsoSearch> {
    let hom = hom_space(m, n)?;
    let mut out = IsoSearch {
        isomorphic: false,
        certificate: None,
        hom_dim: hom.dim(),
        random_trials: 0,
        grid_points: 0,
    };
    if m.dims != n.dims {
        return Ok(out);
    }
    if m.total_dim() == 0 {
        out.isomorphic = true;
        out.certificate = Some(m.dims.iter().map(|_| Matrix::zeros(0, 0)).collect());
        return Ok(out);
    }
    if hom.dim() == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        out.random_trials += 1;
        let c: Vec<BigRational> = (0..hom.dim()).map(|_| q(rng.gen_range(-7..=7))).collect();
        let x = hom.combination(&c);
        if invertible_family(&x) {
            out.isomorphic = true;
            out.certificate = Some(x);
            return Ok(out);
        }
    }
    if hom.dim() <= GRID_LIMIT {
        let k = hom.dim();
        for code in 0..3usize.pow(k as u32) {
            out.grid_points += 1;
            let c: Vec<BigRational> = (0..k)
                .map(|i| q((code / 3usize.pow(i as u32) % 3) as i64 - 1))
                .collect();
            let x = hom.combination(&c);
            if invertible_family(&x) {
                out.isomorphic = true;
                out.certificate = Some(x);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// A representation supported at one vertex with all arrows zero.
pub fn simple_module(wp: &WeightedPresentation, v: usize) -> Result<Representation> {
    let mut dims = vec![0; wp.vertices.len()];
    dims[v] = 1;
    let maps = wp
        .arrows
        .iter()
        .map(|a| {
            Matrix::zeros(
                dims[wp.vertex_index(&a.target).unwrap()],
                dims[wp.vertex_index(&a.source).unwrap()],
            )
        })
        .collect();
    Representation::new(wp.clone(), dims, maps)
}

/// Parses a rational written as `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::BadParams(format!("not a rational number: '{text}'"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(num, den);
    debug_assert!(!r.denom().is_negative());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn fx(name: &str, params: FixtureParams) -> Presentation {
        fixture(name, &params).unwrap()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = Matrix::from_ints(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for x in k {
            let col = Matrix::from_rows(&x.iter().map(|e| vec![e.clone()]).collect::<Vec<_>>());
            assert!(m.mul(&col).is_zero());
        }
        assert!(Matrix::from_ints(2, 2, &[1, 2, 3, 4]).is_invertible());
        assert!(!Matrix::from_ints(2, 2, &[1, 2, 2, 4]).is_invertible());
    }

    #[test]
    fn a2_string_module() {
        let p = fx("A_n", FixtureParams::n(2));
        let m = string_module(&p, &parse_word(&p, "a1").unwrap()).unwrap();
        assert_eq!(m.dims, vec![1, 1]);
        assert_eq!(m.maps[0], Matrix::identity(1));
        assert!(is_brick(&m).unwrap());
        let s = string_module(&p, &parse_word(&p, "1_1").unwrap()).unwrap();
        assert_eq!(s.dims, vec![1, 0]);
        assert!(is_brick(&s).unwrap());
    }

    #[test]
    fn relation_pair_is_not_a_string() {
        let p = fx("E1", FixtureParams::default());
        let w = Word::from_letters(
            &p,
            vec![
                Letter::Direct(p.arrow_index("beta").unwrap()),
                Letter::Direct(p.arrow_index("theta").unwrap()),
            ],
        );
        assert!(matches!(string_module(&p, &w), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn special_letters_rejected() {
        let p = fx("S2", FixtureParams::n(2));
        let w = parse_word(&p, "epsilon* s1").unwrap();
        assert!(matches!(
            string_module(&p, &w),
            Err(Error::SpecialLetterPresent(_))
        ));
    }

    #[test]
    fn m_lambda_is_a_brick_family() {
        for n in [2, 3] {
            let ms: Vec<Representation> = (0..5).map(|l| m_lambda(n, &q(l)).unwrap()).collect();
            for (i, a) in ms.iter().enumerate() {
                assert!(is_brick(a).unwrap());
                for b in &ms[i + 1..] {
                    assert!(!are_isomorphic(a, b).unwrap().isomorphic);
                }
            }
        }
        let m0 = m_lambda(2, &q(0)).unwrap();
        assert_eq!(hom_dim(&m0, &m0).unwrap(), 1);
        assert!(matches!(m_lambda(1, &q(0)), Err(Error::BadParams(_))));
    }

    #[test]
    fn isomorphic_to_itself_with_certificate() {
        let m = m_lambda(2, &parse_rational("3/2").unwrap()).unwrap();
        let r = are_isomorphic(&m, &m).unwrap();
        assert!(r.isomorphic);
        assert!(r.certificate.is_some());
    }

    #[test]
    fn string_and_inverse_agree() {
        let p = fx("Kronecker", FixtureParams::default());
        let w = parse_word(&p, "a b^-1 a").unwrap();
        let m = string_module(&p, &w).unwrap();
        let mi = string_module(&p, &w.inverse(&p)).unwrap();
        assert!(are_isomorphic(&m, &mi).unwrap().isomorphic);
    }

    #[test]
    fn simples_and_sums() {
        let p = fx("A_n", FixtureParams::n(3));
        let wp = specialize(&p).unwrap();
        let s1 = simple_module(&wp, 0).unwrap();
        let s2 = simple_module(&wp, 1).unwrap();
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert!(!are_isomorphic(&s1, &s2).unwrap().isomorphic);
        let m = string_module(&p, &parse_word(&p, "a1 a2").unwrap()).unwrap();
        let sum = s1.direct_sum(&s2).unwrap();
        assert_eq!(
            hom_dim(&m, &sum).unwrap(),
            hom_dim(&m, &s1).unwrap() + hom_dim(&m, &s2).unwrap()
        );
        let other = m_lambda(2, &q(0)).unwrap();
        assert!(matches!(
            hom_dim(&m, &other),
            Err(Error::MismatchedPresentations)
        ));
    }

    #[test]
    fn json_shape() {
        let m = m_lambda(2, &q(5)).unwrap();
        let j = m.to_json();
        assert_eq!(j["dims"]["2"], 2);
        assert_eq!(j["matrices"]["(1+,s1,2)"], json!([["1"], ["5"]]));
    }
}
