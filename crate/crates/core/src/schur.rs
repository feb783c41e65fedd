//! The affine q-Schur algebra `End_H(sum_lambda x_lambda H)` in the
//! `phi`-basis, its `theta`-basis, the Hecke embedding, and q-tensor space.
//!
//! Products compose homomorphisms with the right factor applied first, so
//! `phi_{lambda,mu} phi_{mu,nu}` is nonzero only when the inner weights agree.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::{HeckeElement, KlTable};
use crate::linear::Combination;
use crate::weyl::{
    bruhat_lower_ideal, double_coset_elements, double_coset_rep, is_distinguished, is_double_distinguished,
    longest_double_coset_elt, ParabolicIndex, WindowPerm,
};

/// A composition of `r` into `n` nonnegative parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Weight {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Weight {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Weight::new(parts)
    }
}

impl From<Weight> for Vec<usize> {
    fn from(w: Weight) -> Self {
        w.parts
    }
}

impl Weight {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight { parts, reason: "n must be positive".into() });
        }
        let r: usize = parts.iter().sum();
        if r < 3 {
            return Err(Error::PeriodTooSmall(r));
        }
        Ok(Self { parts })
    }

    /// Checks that the weight lies in `Lambda(n, r)`.
    pub fn with_shape(parts: Vec<usize>, n: usize, r: usize) -> Result<Self> {
        if parts.len() != n || parts.iter().sum::<usize>() != r {
            return Err(Error::InvalidWeight { parts, reason: format!("expected {n} parts summing to {r}") });
        }
        Self::new(parts)
    }

    /// `(1^r, 0^(n-r))`; needs `n >= r`.
    pub fn omega(n: usize, r: usize) -> Result<Self> {
        if r < 3 {
            return Err(Error::PeriodTooSmall(r));
        }
        if n < r {
            return Err(Error::NTooSmall { n, r });
        }
        Ok(Self { parts: (0..n).map(|k| usize::from(k < r)).collect() })
    }

    /// Every composition of `r` into `n` parts, in lexicographic order.
    pub fn all(n: usize, r: usize) -> Result<Vec<Weight>> {
        if r < 3 {
            return Err(Error::PeriodTooSmall(r));
        }
        fn go(n: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Weight>) {
            if prefix.len() + 1 == n {
                prefix.push(left);
                out.push(Weight { parts: prefix.clone() });
                prefix.pop();
                return;
            }
            for k in 0..=left {
                prefix.push(k);
                go(n, left - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, r, &mut Vec::new(), &mut out);
        }
        out.sort();
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_omega(&self) -> bool {
        self.parts.iter().all(|&p| p <= 1) && self.parts.iter().take(self.r()).all(|&p| p == 1)
    }

    /// Generators `s_i` with `i, i+1` in the same block; never `s_r`.
    pub fn young_parabolic(&self) -> ParabolicIndex {
        let mut members = BTreeSet::new();
        let mut start = 1;
        for &p in &self.parts {
            for i in start..start + p.saturating_sub(1) {
                members.insert(i);
            }
            start += p;
        }
        ParabolicIndex::new(self.r(), members, 0).expect("blocks never contain s_r")
    }

    /// The tensor index sequence `1^lambda_1 2^lambda_2 ...`.
    pub fn block_key(&self) -> Vec<i64> {
        self.parts.iter().enumerate().flat_map(|(k, &p)| std::iter::repeat_n(k as i64 + 1, p)).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Index of the basis element `phi^d_{lambda,mu}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchurKey {
    pub lambda: Weight,
    pub mu: Weight,
    pub d: WindowPerm,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SchurElement {
    n: usize,
    r: usize,
    terms: Combination<SchurKey>,
}

fn check_pair(lambda: &Weight, mu: &Weight) -> Result<()> {
    if lambda.n() != mu.n() || lambda.r() != mu.r() {
        return Err(Error::Incompatible(format!("weights {lambda} and {mu} lie in different Lambda(n, r)")));
    }
    Ok(())
}

/// `sum_{w in W_lambda d W_mu} T_w`, the image of `x_mu` under `phi^d_{lambda,mu}`.
pub fn phi_value(lambda: &Weight, mu: &Weight, d: &WindowPerm) -> Result<HeckeElement> {
    check_pair(lambda, mu)?;
    if d.r() != lambda.r() {
        return Err(Error::PeriodMismatch(lambda.r(), d.r()));
    }
    type Key = (Weight, Weight, WindowPerm);
    static CACHE: OnceLock<Mutex<HashMap<Key, HeckeElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), mu.clone(), d.clone());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let (pl, pm) = (lambda.young_parabolic(), mu.young_parabolic());
    let mut h = HeckeElement::zero(d.r());
    for w in double_coset_elements(d, &pl, &pm) {
        h.add_term(w, &LaurentPoly::one());
    }
    cache.lock().unwrap().insert(key, h.clone());
    Ok(h)
}

/// Writes a homomorphic image of `x_mu` inside `x_lambda H` in the
/// `phi`-basis by repeatedly removing the double coset of a minimal
/// supporting element.
pub fn expand_in_phi(lambda: &Weight, mu: &Weight, value: &HeckeElement) -> Result<SchurElement> {
    check_pair(lambda, mu)?;
    let (pl, pm) = (lambda.young_parabolic(), mu.young_parabolic());
    let mut rest = value.clone();
    let mut out = SchurElement::zero(lambda.n(), lambda.r());
    let cap = value.len() + 1;
    for _ in 0..=cap {
        let Some(d) = rest
            .terms()
            .keys()
            .min_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)))
            .cloned()
        else {
            return Ok(out);
        };
        if !is_double_distinguished(&d, &pl, &pm) {
            return Err(Error::Expansion(format!(
                "minimal support element {d} of a {lambda} x {mu} value is not a double coset representative"
            )));
        }
        let c = rest.coeff(&d);
        rest = &rest - &phi_value(lambda, mu, &d)?.scale(&c);
        out.terms.add_term(SchurKey { lambda: lambda.clone(), mu: mu.clone(), d }, &c);
    }
    Err(Error::Expansion(format!("peeling a {lambda} x {mu} value did not terminate after {cap} steps")))
}

impl SchurElement {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, terms: Combination::zero() }
    }

    /// `phi^d_{lambda,mu}` with `d` replaced by its double coset representative.
    pub fn phi(lambda: &Weight, mu: &Weight, d: &WindowPerm) -> Result<Self> {
        check_pair(lambda, mu)?;
        if d.r() != lambda.r() {
            return Err(Error::PeriodMismatch(lambda.r(), d.r()));
        }
        let d = double_coset_rep(d, &lambda.young_parabolic(), &mu.young_parabolic());
        Ok(Self::basis_unchecked(lambda, mu, d))
    }

    /// `phi^d_{lambda,mu}`, rejecting a non-distinguished `d`.
    pub fn phi_strict(lambda: &Weight, mu: &Weight, d: &WindowPerm) -> Result<Self> {
        check_pair(lambda, mu)?;
        if d.r() != lambda.r() {
            return Err(Error::PeriodMismatch(lambda.r(), d.r()));
        }
        if !is_double_distinguished(d, &lambda.young_parabolic(), &mu.young_parabolic()) {
            return Err(Error::NotDistinguished(format!("{d} for ({lambda}, {mu})")));
        }
        Ok(Self::basis_unchecked(lambda, mu, d.clone()))
    }

    fn basis_unchecked(lambda: &Weight, mu: &Weight, d: WindowPerm) -> Self {
        Self {
            n: lambda.n(),
            r: lambda.r(),
            terms: Combination::basis(SchurKey { lambda: lambda.clone(), mu: mu.clone(), d }),
        }
    }

    /// `sum_lambda phi^e_{lambda,lambda}`.
    pub fn identity(n: usize, r: usize) -> Result<Self> {
        let e = WindowPerm::identity(r)?;
        let mut out = Self::zero(n, r);
        for l in Weight::all(n, r)? {
            out = &out + &Self::basis_unchecked(&l, &l, e.clone());
        }
        Ok(out)
    }

    pub fn from_terms(n: usize, r: usize, terms: impl IntoIterator<Item = (SchurKey, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(n, r);
        for (k, c) in terms {
            if k.lambda.n() != n || k.lambda.r() != r {
                return Err(Error::Incompatible(format!("weight {} is not in Lambda({n}, {r})", k.lambda)));
            }
            check_pair(&k.lambda, &k.mu)?;
            if !is_double_distinguished(&k.d, &k.lambda.young_parabolic(), &k.mu.young_parabolic()) {
                return Err(Error::NotDistinguished(format!("{} for ({}, {})", k.d, k.lambda, k.mu)));
            }
            out.terms.add_term(k, &c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &Combination<SchurKey> {
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

    pub fn coeff(&self, lambda: &Weight, mu: &Weight, d: &WindowPerm) -> LaurentPoly {
        self.terms.coeff(&SchurKey { lambda: lambda.clone(), mu: mu.clone(), d: d.clone() })
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { n: self.n, r: self.r, terms: self.terms.scale(c) }
    }

    fn check_same(&self, other: &SchurElement) -> Result<()> {
        if (self.n, self.r) != (other.n, other.r) {
            return Err(Error::Incompatible(format!(
                "Schur algebras S({}, {}) and S({}, {})",
                self.n, self.r, other.n, other.r
            )));
        }
        Ok(())
    }

    /// The image of `x_nu` under this homomorphism, split by target weight.
    pub fn evaluate(&self, nu: &Weight) -> Result<Vec<(Weight, HeckeElement)>> {
        let mut by_target: Vec<(Weight, HeckeElement)> = Vec::new();
        for (k, c) in self.terms.iter().filter(|(k, _)| &k.mu == nu) {
            let v = phi_value(&k.lambda, &k.mu, &k.d)?.scale(c);
            match by_target.iter_mut().find(|(l, _)| *l == k.lambda) {
                Some((_, h)) => *h = &*h + &v,
                None => by_target.push((k.lambda.clone(), v)),
            }
        }
        Ok(by_target)
    }

    /// Composite homomorphism `self o other`, re-expanded in the `phi`-basis.
    pub fn mul(&self, other: &SchurElement) -> Result<SchurElement> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n, self.r);
        for (kb, cb) in other.terms.iter() {
            let (mu, nu) = (&kb.lambda, &kb.mu);
            let pm = mu.young_parabolic();
            // phi_b(x_nu) = x_mu h with h summed over the coset's D_mu part
            let mut h = HeckeElement::zero(self.r);
            for w in double_coset_elements(&kb.d, &pm, &nu.young_parabolic()) {
                if is_distinguished(&w, &pm) {
                    h.add_term(w, &LaurentPoly::one());
                }
            }
            let mut grouped: Vec<(Weight, HeckeElement)> = Vec::new();
            for (ka, ca) in self.terms.iter().filter(|(ka, _)| &ka.mu == mu) {
                let v = (&phi_value(&ka.lambda, mu, &ka.d)? * &h).scale(&(ca * cb));
                match grouped.iter_mut().find(|(l, _)| *l == ka.lambda) {
                    Some((_, acc)) => *acc = &*acc + &v,
                    None => grouped.push((ka.lambda.clone(), v)),
                }
            }
            for (lambda, value) in grouped {
                out = &out + &expand_in_phi(&lambda, nu, &value)?;
            }
        }
        Ok(out)
    }

    /// True iff every `d` is a permutation of `1..=r`.
    pub fn is_finite_type(&self) -> bool {
        self.terms.keys().all(|k| is_finite_perm(&k.d))
    }
}

pub fn is_finite_perm(w: &WindowPerm) -> bool {
    let r = w.r() as i64;
    w.window().iter().all(|&x| (1..=r).contains(&x))
}

/// `T_d -> phi^d_{omega,omega}`.
pub fn embed_hecke(n: usize, h: &HeckeElement) -> Result<SchurElement> {
    let omega = Weight::omega(n, h.r())?;
    let mut out = SchurElement::zero(n, h.r());
    for (w, c) in h.terms().iter() {
        out.terms.add_term(SchurKey { lambda: omega.clone(), mu: omega.clone(), d: w.clone() }, c);
    }
    Ok(out)
}

/// `P_nu(q) = sum q^l(v)` over `v in W_mu` with `d v d^-1 in W_lambda`.
pub fn poincare_nu(lambda: &Weight, mu: &Weight, d: &WindowPerm) -> Result<LaurentPoly> {
    check_pair(lambda, mu)?;
    let pl = lambda.young_parabolic();
    let d_inv = d.inverse();
    let mut out = LaurentPoly::zero();
    for v in mu.young_parabolic().elements() {
        if pl.contains(&d.then(&v).then(&d_inv)) {
            out += &LaurentPoly::q_pow(v.length() as i32);
        }
    }
    Ok(out)
}

/// `theta^d_{lambda,mu} = v^l(w_0,mu) sum_z v^-l(d+) P_{z+,d+} phi^z_{lambda,mu}`,
/// summed over double coset representatives `z` with `z+ <= d+`.
pub fn theta(lambda: &Weight, mu: &Weight, d: &WindowPerm, table: &KlTable) -> Result<SchurElement> {
    check_pair(lambda, mu)?;
    let (pl, pm) = (lambda.young_parabolic(), mu.young_parabolic());
    if !is_double_distinguished(d, &pl, &pm) {
        return Err(Error::NotDistinguished(format!("{d} for ({lambda}, {mu})")));
    }
    let top = longest_double_coset_elt(d, &pl, &pm);
    let scale = pm.longest_element().length() as i32 - top.length() as i32;
    let mut out = SchurElement::zero(lambda.n(), lambda.r());
    for y in bruhat_lower_ideal(&top) {
        let z = double_coset_rep(&y, &pl, &pm);
        if longest_double_coset_elt(&z, &pl, &pm) != y {
            continue;
        }
        let p = table.kl_extended(&y, &top)?;
        out.terms.add_term(SchurKey { lambda: lambda.clone(), mu: mu.clone(), d: z }, &p.shift(scale));
    }
    Ok(out)
}

impl std::ops::Add for &SchurElement {
    type Output = SchurElement;
    fn add(self, rhs: &SchurElement) -> SchurElement {
        self.check_same(rhs).expect("incompatible Schur algebras");
        SchurElement { n: self.n, r: self.r, terms: &self.terms + &rhs.terms }
    }
}

impl std::ops::Sub for &SchurElement {
    type Output = SchurElement;
    fn sub(self, rhs: &SchurElement) -> SchurElement {
        self.check_same(rhs).expect("incompatible Schur algebras");
        SchurElement { n: self.n, r: self.r, terms: &self.terms - &rhs.terms }
    }
}

impl std::ops::Mul for &SchurElement {
    type Output = SchurElement;
    fn mul(self, rhs: &SchurElement) -> SchurElement {
        SchurElement::mul(self, rhs).expect("Schur product failed")
    }
}

impl fmt::Display for SchurElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})phi[{},{},{}]", key.lambda, key.mu, key.d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SchurElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct WindowOnly {
    window: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct SchurTermJson {
    lambda: Vec<usize>,
    mu: Vec<usize>,
    d: WindowOnly,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct SchurJson {
    n: usize,
    r: usize,
    terms: Vec<SchurTermJson>,
}

impl Serialize for SchurElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SchurJson {
            n: self.n,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| SchurTermJson {
                    lambda: k.lambda.parts.clone(),
                    mu: k.mu.parts.clone(),
                    d: WindowOnly { window: k.d.window().to_vec() },
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = SchurJson::deserialize(d)?;
        let mut terms = Vec::new();
        for t in json.terms {
            let lambda = Weight::with_shape(t.lambda, json.n, json.r).map_err(D::Error::custom)?;
            let mu = Weight::with_shape(t.mu, json.n, json.r).map_err(D::Error::custom)?;
            if t.d.window.len() != json.r {
                return Err(D::Error::custom(format!("window {:?} does not have length {}", t.d.window, json.r)));
            }
            let d = WindowPerm::new(t.d.window).map_err(D::Error::custom)?;
            terms.push((SchurKey { lambda, mu, d }, t.coeff));
        }
        SchurElement::from_terms(json.n, json.r, terms).map_err(D::Error::custom)
    }
}

/// Basis index `x_lambda T_d` of q-tensor space, `d` distinguished for `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QTensorKey {
    pub lambda: Weight,
    pub d: WindowPerm,
}

/// An element of `sum_lambda x_lambda H`, identified with the
/// `phi_{lambda,omega}` part of the Schur algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QTensorElement {
    n: usize,
    r: usize,
    terms: Combination<QTensorKey>,
}

impl QTensorElement {
    pub fn zero(n: usize, r: usize) -> Self {
        Self { n, r, terms: Combination::zero() }
    }

    /// `x_lambda T_d`.
    pub fn basis(lambda: &Weight, d: &WindowPerm) -> Result<Self> {
        Weight::omega(lambda.n(), lambda.r())?;
        if !is_distinguished(d, &lambda.young_parabolic()) {
            return Err(Error::NotDistinguished(format!("{d} for {lambda}")));
        }
        Ok(Self {
            n: lambda.n(),
            r: lambda.r(),
            terms: Combination::basis(QTensorKey { lambda: lambda.clone(), d: d.clone() }),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &Combination<QTensorKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { n: self.n, r: self.r, terms: self.terms.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { n: self.n, r: self.r, terms: &self.terms + &other.terms }
    }

    pub fn to_schur(&self) -> Result<SchurElement> {
        let omega = Weight::omega(self.n, self.r)?;
        let mut out = SchurElement::zero(self.n, self.r);
        for (k, c) in self.terms.iter() {
            out.terms.add_term(SchurKey { lambda: k.lambda.clone(), mu: omega.clone(), d: k.d.clone() }, c);
        }
        Ok(out)
    }

    pub fn from_schur(s: &SchurElement) -> Result<Self> {
        let omega = Weight::omega(s.n, s.r)?;
        let mut out = Self::zero(s.n, s.r);
        for (k, c) in s.terms.iter() {
            if k.mu != omega {
                return Err(Error::Incompatible(format!("phi term with source weight {} is not in q-tensor space", k.mu)));
            }
            out.terms.add_term(QTensorKey { lambda: k.lambda.clone(), d: k.d.clone() }, c);
        }
        Ok(out)
    }

    /// The left Schur action.
    pub fn act_schur_left(&self, s: &SchurElement) -> Result<Self> {
        Self::from_schur(&s.mul(&self.to_schur()?)?)
    }

    /// The right Hecke action `x_lambda T_d h`, re-expanded in the basis.
    pub fn act_hecke_right(&self, h: &HeckeElement) -> Result<Self> {
        let omega = Weight::omega(self.n, self.r)?;
        let mut out = Self::zero(self.n, self.r);
        let mut by_lambda: Vec<(Weight, HeckeElement)> = Vec::new();
        for (k, c) in self.terms.iter() {
            let v = (&phi_value(&k.lambda, &omega, &k.d)? * h).scale(c);
            match by_lambda.iter_mut().find(|(l, _)| *l == k.lambda) {
                Some((_, acc)) => *acc = &*acc + &v,
                None => by_lambda.push((k.lambda.clone(), v)),
            }
        }
        for (lambda, value) in by_lambda {
            let part = Self::from_schur(&expand_in_phi(&lambda, &omega, &value)?)?;
            out.terms += &part.terms;
        }
        Ok(out)
    }
}
