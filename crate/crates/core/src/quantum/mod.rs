//! The quantum affine algebra `U(gl_n^)` acting on `V = span{e_t : t in Z}`
//! and on tensor space `V^{(x) r}`.
//!
//! Elements of `U` are free words in the generators; every identity is
//! checked through the module action. Words act with their rightmost letter
//! first.

pub mod duality;
pub mod hopf;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::linear::Combination;
use crate::schur::Weight;

/// A generator `E_i, F_i, K_i, K_i^-1, R, R^-1`, with `1 <= i <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
    R,
    RInv,
}

/// `t mod n` in `1..=n`.
pub fn class(t: i64, n: usize) -> usize {
    ((t - 1).rem_euclid(n as i64) + 1) as usize
}

fn next(i: usize, n: usize) -> usize {
    i % n + 1
}

impl Letter {
    pub fn index(&self) -> Option<usize> {
        match *self {
            Letter::E(i) | Letter::F(i) | Letter::K(i) | Letter::KInv(i) => Some(i),
            Letter::R | Letter::RInv => None,
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.index() {
            Some(i) if i == 0 || i > n => Err(Error::IndexOutOfRange { index: i, r: n }),
            _ => Ok(()),
        }
    }

    pub fn is_grouplike(&self) -> bool {
        !matches!(self, Letter::E(_) | Letter::F(_))
    }

    /// The action on `e_t`: `Some((t', k))` for `v^k e_t'`, `None` for zero.
    pub fn act_v(&self, t: i64, n: usize) -> Option<(i64, i32)> {
        let c = class(t, n);
        match *self {
            Letter::E(i) => (class(t - 1, n) == i).then_some((t - 1, 0)),
            Letter::F(i) => (c == i).then_some((t + 1, 0)),
            Letter::K(i) => Some((t, i32::from(c == i))),
            Letter::KInv(i) => Some((t, -i32::from(c == i))),
            Letter::R => Some((t + 1, 0)),
            Letter::RInv => Some((t - 1, 0)),
        }
    }
}

/// Exponent of `v` for `K_i K_{i+1}^-1` on `e_t`.
fn k_ratio(i: usize, t: i64, n: usize) -> i32 {
    let c = class(t, n);
    i32::from(c == i) - i32::from(c == next(i, n))
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "E{i}"),
            Letter::F(i) => write!(f, "F{i}"),
            Letter::K(i) => write!(f, "K{i}"),
            Letter::KInv(i) => write!(f, "Kinv{i}"),
            Letter::R => write!(f, "R"),
            Letter::RInv => write!(f, "Rinv"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Incompatible(format!("unknown generator {s:?}"));
        let idx = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        match s {
            "R" => return Ok(Letter::R),
            "Rinv" | "R^-1" => return Ok(Letter::RInv),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Kinv") {
            return Ok(Letter::KInv(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix('K') {
            if let Some(i) = rest.strip_suffix("^-1") {
                return Ok(Letter::KInv(idx(i)?));
            }
            return Ok(Letter::K(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix('E') {
            return Ok(Letter::E(idx(rest)?));
        }
        if let Some(rest) = s.strip_prefix('F') {
            return Ok(Letter::F(idx(rest)?));
        }
        Err(bad())
    }
}

/// A product of generators, read left to right as written.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().copied());
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.split(|c: char| c == '*' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A finite combination of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UElement {
    n: usize,
    terms: Combination<Word>,
}

impl UElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Combination::zero() }
    }

    pub fn one(n: usize) -> Self {
        Self::word(n, Word::empty())
    }

    pub fn word(n: usize, w: Word) -> Self {
        Self { n, terms: Combination::basis(w) }
    }

    pub fn letters(n: usize, letters: &[Letter]) -> Self {
        Self::word(n, Word(letters.to_vec()))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (w, c) in terms {
            for l in &w.0 {
                l.check(n)?;
            }
            out.terms.add_term(w, &c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &Combination<Word> {
        &self.terms
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { n: self.n, terms: self.terms.scale(c) }
    }

    pub fn mul(&self, other: &UElement) -> UElement {
        let mut out = Self::zero(self.n);
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                out.terms.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }
}

impl std::ops::Add for &UElement {
    type Output = UElement;
    fn add(self, rhs: &UElement) -> UElement {
        UElement { n: self.n, terms: &self.terms + &rhs.terms }
    }
}

impl std::ops::Sub for &UElement {
    type Output = UElement;
    fn sub(self, rhs: &UElement) -> UElement {
        UElement { n: self.n, terms: &self.terms - &rhs.terms }
    }
}

impl std::ops::Mul for &UElement {
    type Output = UElement;
    fn mul(self, rhs: &UElement) -> UElement {
        UElement::mul(self, rhs)
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

/// Basis tuple `(j_1, ..., j_r)` of tensor space.
pub type Key = Vec<i64>;

/// A finite combination of pure tensors `e_{j_1} (x) ... (x) e_{j_r}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorVector {
    n: usize,
    r: usize,
    terms: Combination<Key>,
}

impl TensorVector {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, terms: Combination::zero() }
    }

    pub fn basis(n: usize, key: Key) -> Self {
        let r = key.len();
        Self { n, r, terms: Combination::basis(key) }
    }

    pub fn term(n: usize, key: Key, c: LaurentPoly) -> Self {
        let r = key.len();
        Self { n, r, terms: Combination::term(key, c) }
    }

    pub fn from_combination(n: usize, r: usize, terms: Combination<Key>) -> Self {
        debug_assert!(terms.keys().all(|k| k.len() == r));
        Self { n, r, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &Combination<Key> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[i64]) -> LaurentPoly {
        self.terms.coeff(&key.to_vec())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { n: self.n, r: self.r, terms: self.terms.scale(c) }
    }

    pub fn add_term(&mut self, key: Key, c: &LaurentPoly) {
        assert_eq!(key.len(), self.r);
        self.terms.add_term(key, c);
    }

    /// Applies a linear map given on basis tuples.
    pub fn map(&self, f: impl FnMut(&Key) -> Combination<Key>) -> Self {
        Self { n: self.n, r: self.r, terms: self.terms.apply_linear(f) }
    }

    pub fn project_weight(&self, lambda: &Weight) -> Self {
        let mut out = Self::zero(self.n, self.r);
        for (k, c) in self.terms.iter() {
            if weight_parts(k, self.n) == lambda.parts() {
                out.terms.add_term(k.clone(), c);
            }
        }
        out
    }
}

impl std::ops::Add for &TensorVector {
    type Output = TensorVector;
    fn add(self, rhs: &TensorVector) -> TensorVector {
        TensorVector { n: self.n, r: self.r, terms: &self.terms + &rhs.terms }
    }
}

impl std::ops::Sub for &TensorVector {
    type Output = TensorVector;
    fn sub(self, rhs: &TensorVector) -> TensorVector {
        TensorVector { n: self.n, r: self.r, terms: &self.terms - &rhs.terms }
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})e{key:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    key: Vec<i64>,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    r: usize,
    terms: Vec<TensorTermJson>,
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            n: self.n,
            r: self.r,
            terms: self.terms.iter().map(|(k, c)| TensorTermJson { key: k.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = TensorJson::deserialize(d)?;
        let mut out = TensorVector::zero(json.n, json.r);
        for t in json.terms {
            if t.key.len() != json.r {
                return Err(D::Error::custom(format!("key {:?} does not have length {}", t.key, json.r)));
            }
            out.terms.add_term(t.key, &t.coeff);
        }
        Ok(out)
    }
}

/// Residue counts mod `n`.
pub fn weight_parts(key: &[i64], n: usize) -> Vec<usize> {
    let mut parts = vec![0; n];
    for &t in key {
        parts[class(t, n) - 1] += 1;
    }
    parts
}

pub fn weight_of(key: &[i64], n: usize) -> Result<Weight> {
    Weight::new(weight_parts(key, n))
}

/// The action of one generator on a basis tuple, through the iterated coproduct.
pub fn act_letter_on_key(l: Letter, key: &[i64], n: usize) -> Combination<Key> {
    let mut out = Combination::zero();
    match l {
        Letter::E(i) => {
            // sum_p 1 (x) ... (x) E_i (x) (K_i K_{i+1}^-1) (x) ...
            let mut tail: i32 = key.iter().map(|&t| k_ratio(i, t, n)).sum();
            for (p, &t) in key.iter().enumerate() {
                tail -= k_ratio(i, t, n);
                if let Some((t2, _)) = l.act_v(t, n) {
                    let mut k2 = key.to_vec();
                    k2[p] = t2;
                    out.add_term(k2, &LaurentPoly::v_pow(tail));
                }
            }
        }
        Letter::F(i) => {
            // sum_p (K_i^-1 K_{i+1}) (x) ... (x) F_i (x) 1 (x) ...
            let mut head: i32 = 0;
            for (p, &t) in key.iter().enumerate() {
                if let Some((t2, _)) = l.act_v(t, n) {
                    let mut k2 = key.to_vec();
                    k2[p] = t2;
                    out.add_term(k2, &LaurentPoly::v_pow(head));
                }
                head -= k_ratio(i, t, n);
            }
        }
        _ => {
            let mut k2 = Vec::with_capacity(key.len());
            let mut e = 0;
            for &t in key {
                let (t2, x) = l.act_v(t, n).expect("grouplike letters act invertibly");
                k2.push(t2);
                e += x;
            }
            out.add_term(k2, &LaurentPoly::v_pow(e));
        }
    }
    out
}

pub fn act_word_on_key(w: &Word, key: &[i64], n: usize) -> Combination<Key> {
    let mut cur = Combination::basis(key.to_vec());
    for &l in w.0.iter().rev() {
        cur = cur.apply_linear(|k| act_letter_on_key(l, k, n));
        if cur.is_zero() {
            break;
        }
    }
    cur
}

/// `u . x`.
pub fn act_tensor(u: &UElement, x: &TensorVector) -> Result<TensorVector> {
    if u.n != x.n {
        return Err(Error::Incompatible(format!("U for n = {} acting on tensor space for n = {}", u.n, x.n)));
    }
    let mut out = TensorVector::zero(x.n, x.r);
    for (w, c) in u.terms.iter() {
        let part = x.terms.apply_linear(|k| act_word_on_key(w, k, x.n));
        out.terms.add_scaled(&part, c);
    }
    Ok(out)
}

/// The action on `V` itself.
pub fn act_v(l: Letter, t: i64, n: usize) -> TensorVector {
    TensorVector::from_combination(n, 1, act_letter_on_key(l, &[t], n))
}

type Rule = Arc<dyn Fn(&[i64]) -> Result<Combination<Key>> + Send + Sync>;

/// A linear endomorphism of tensor space given on basis tuples.
#[derive(Clone)]
pub struct TensorOperator {
    n: usize,
    r: usize,
    rule: Rule,
}

impl TensorOperator {
    pub fn new(n: usize, r: usize, rule: impl Fn(&[i64]) -> Result<Combination<Key>> + Send + Sync + 'static) -> Self {
        Self { n, r, rule: Arc::new(rule) }
    }

    pub fn identity(n: usize, r: usize) -> Self {
        Self::new(n, r, |k| Ok(Combination::basis(k.to_vec())))
    }

    pub fn zero(n: usize, r: usize) -> Self {
        Self::new(n, r, |_| Ok(Combination::zero()))
    }

    pub fn from_u(u: &UElement, r: usize) -> Self {
        let u = u.clone();
        let n = u.n;
        Self::new(n, r, move |k| {
            let mut out = Combination::zero();
            for (w, c) in u.terms.iter() {
                out.add_scaled(&act_word_on_key(w, k, n), c);
            }
            Ok(out)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn apply_key(&self, key: &[i64]) -> Result<Combination<Key>> {
        (self.rule)(key)
    }

    pub fn apply_combination(&self, x: &Combination<Key>) -> Result<Combination<Key>> {
        let mut out = Combination::zero();
        for (k, c) in x.iter() {
            out.add_scaled(&(self.rule)(k)?, c);
        }
        Ok(out)
    }

    pub fn apply(&self, x: &TensorVector) -> Result<TensorVector> {
        Ok(TensorVector::from_combination(self.n, self.r, self.apply_combination(&x.terms)?))
    }

    /// `self o other` (apply `other` first).
    pub fn compose(&self, other: &TensorOperator) -> TensorOperator {
        let (a, b) = (self.clone(), other.rule.clone());
        Self::new(self.n, self.r, move |k| a.apply_combination(&b(k)?))
    }

    pub fn add(&self, other: &TensorOperator) -> TensorOperator {
        let (a, b) = (self.rule.clone(), other.rule.clone());
        Self::new(self.n, self.r, move |k| Ok(&a(k)? + &b(k)?))
    }

    pub fn scale(&self, c: &LaurentPoly) -> TensorOperator {
        let (a, c) = (self.rule.clone(), c.clone());
        Self::new(self.n, self.r, move |k| Ok(a(k)?.scale(&c)))
    }

    /// `self o proj_lambda`.
    pub fn restrict(&self, lambda: &Weight) -> TensorOperator {
        let (a, parts, n) = (self.rule.clone(), lambda.parts().to_vec(), self.n);
        Self::new(self.n, self.r, move |k| {
            if weight_parts(k, n) == parts {
                a(k)
            } else {
                Ok(Combination::zero())
            }
        })
    }

    /// Divides every output coefficient by `d`, failing if inexact.
    pub fn divide(&self, d: &LaurentPoly) -> TensorOperator {
        if d.is_one() {
            return self.clone();
        }
        let (a, d) = (self.rule.clone(), d.clone());
        Self::new(self.n, self.r, move |k| {
            let mut out = Combination::zero();
            for (key, c) in a(k)?.iter() {
                let q = c
                    .div_exact(&d)
                    .ok_or_else(|| Error::InexactDivision(format!("{c} by {d} at e{key:?}")))?;
                out.add_term(key.clone(), &q);
            }
            Ok(out)
        })
    }
}

pub fn projection(lambda: &Weight) -> TensorOperator {
    TensorOperator::identity(lambda.n(), lambda.r()).restrict(lambda)
}

/// All tuples of length `r` with entries in `lo..=hi`.
pub fn window_keys(r: usize, lo: i64, hi: i64) -> Vec<Key> {
    let mut out = vec![Vec::with_capacity(r)];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for k in &out {
            for t in lo..=hi {
                let mut k2 = k.clone();
                k2.push(t);
                next.push(k2);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, key: &[i64]) -> TensorVector {
        TensorVector::basis(n, key.to_vec())
    }

    #[test]
    fn natural_module() {
        assert_eq!(act_v(Letter::E(1), 2, 3), e(3, &[1]));
        assert_eq!(act_v(Letter::K(1), 4, 3), TensorVector::term(3, vec![4], LaurentPoly::v_pow(1)));
        assert_eq!(act_v(Letter::R, 5, 3), e(3, &[6]));
        assert!(act_v(Letter::E(2), 2, 3).is_zero());
        assert_eq!(act_v(Letter::F(3), 6, 3), e(3, &[7]));
        assert_eq!(act_v(Letter::KInv(3), 0, 3), TensorVector::term(3, vec![0], LaurentPoly::v_pow(-1)));
    }

    #[test]
    fn tensor_examples() {
        let u = UElement::letters(3, &[Letter::E(1)]);
        let expected = &TensorVector::term(3, vec![1, 2], LaurentPoly::v_pow(-1)) + &e(3, &[2, 1]);
        assert_eq!(act_tensor(&u, &e(3, &[2, 2])).unwrap(), expected);
        let r = UElement::letters(3, &[Letter::R]);
        assert_eq!(act_tensor(&r, &e(3, &[1, 2, 3])).unwrap(), e(3, &[2, 3, 4]));
    }

    #[test]
    fn k_acts_by_weight() {
        for key in window_keys(3, -4, 4) {
            let parts = weight_parts(&key, 3);
            for i in 1..=3 {
                let got = act_tensor(&UElement::letters(3, &[Letter::K(i)]), &e(3, &key)).unwrap();
                assert_eq!(got, TensorVector::term(3, key.clone(), LaurentPoly::v_pow(parts[i - 1] as i32)));
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(weight_parts(&[1, 5, 3], 3), vec![1, 1, 1]);
        assert_eq!(weight_parts(&[2, 2], 3), vec![0, 2, 0]);
    }

    #[test]
    fn parse_words() {
        let w: Word = "E1*F2 Kinv3 K1^-1 R Rinv".parse().unwrap();
        assert_eq!(
            w.0,
            vec![Letter::E(1), Letter::F(2), Letter::KInv(3), Letter::KInv(1), Letter::R, Letter::RInv]
        );
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert!("X1".parse::<Word>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = &e(3, &[1, 2, 3]) + &TensorVector::term(3, vec![0, 2, 4], LaurentPoly::q());
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<TensorVector>(&text).unwrap(), x);
    }
}
