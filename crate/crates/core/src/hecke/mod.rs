//! The affine Hecke algebra of the extended affine Weyl group in the
//! `T`-basis, with `q = v^2`.

pub mod bernstein;
pub mod kl;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::linear::Combination;
use crate::weyl::{ParabolicIndex, WindowPerm};

pub use bernstein::{Bernstein, BernsteinElement, BernsteinKey};
pub use kl::KlTable;

/// A finite combination `sum c_w T_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    r: usize,
    terms: Combination<WindowPerm>,
}

impl HeckeElement {
    pub fn zero(r: usize) -> Self {
        Self { r, terms: Combination::zero() }
    }

    pub fn one(r: usize) -> Result<Self> {
        Ok(Self::t_basis(&WindowPerm::identity(r)?))
    }

    /// The basis element `T_w`.
    pub fn t_basis(w: &WindowPerm) -> Self {
        Self { r: w.r(), terms: Combination::basis(w.clone()) }
    }

    pub fn t_s(r: usize, i: usize) -> Result<Self> {
        Ok(Self::t_basis(&WindowPerm::gen_s(r, i)?))
    }

    pub fn t_rho(r: usize, z: i64) -> Result<Self> {
        Ok(Self::t_basis(&WindowPerm::gen_rho(r, z)?))
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = (WindowPerm, LaurentPoly)>) -> Result<Self> {
        let mut out = Self::zero(r);
        for (w, c) in terms {
            if w.r() != r {
                return Err(Error::PeriodMismatch(r, w.r()));
            }
            out.terms.add_term(w, &c);
        }
        Ok(out)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &Combination<WindowPerm> {
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

    pub fn coeff(&self, w: &WindowPerm) -> LaurentPoly {
        self.terms.coeff(w)
    }

    pub fn add_term(&mut self, w: WindowPerm, c: &LaurentPoly) {
        assert_eq!(w.r(), self.r, "period mismatch");
        self.terms.add_term(w, c);
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { r: self.r, terms: self.terms.scale(c) }
    }

    /// `h T_{s_i}`.
    pub fn mul_gen_right(&self, i: usize) -> Self {
        let mut out = Combination::zero();
        let q = LaurentPoly::q();
        let qm1 = LaurentPoly::q_minus_one();
        for (u, c) in self.terms.iter() {
            let us = u.mul_s_right(i);
            if u.is_right_descent(i) {
                out.add_term(us, &(c * &q));
                out.add_term(u.clone(), &(c * &qm1));
            } else {
                out.add_term(us, c);
            }
        }
        Self { r: self.r, terms: out }
    }

    /// `T_{s_i} h`.
    pub fn mul_gen_left(&self, i: usize) -> Self {
        let mut out = Combination::zero();
        let q = LaurentPoly::q();
        let qm1 = LaurentPoly::q_minus_one();
        for (u, c) in self.terms.iter() {
            let su = u.mul_s_left(i);
            if u.is_left_descent(i) {
                out.add_term(su, &(c * &q));
                out.add_term(u.clone(), &(c * &qm1));
            } else {
                out.add_term(su, c);
            }
        }
        Self { r: self.r, terms: out }
    }

    /// `h T_{s_i}^-1`, using `T_s^-1 = q^-1 T_s - (1 - q^-1)`.
    pub fn mul_gen_inverse_right(&self, i: usize) -> Self {
        let a = self.mul_gen_right(i).scale(&LaurentPoly::q_pow(-1));
        let b = self.scale(&(LaurentPoly::one() - LaurentPoly::q_pow(-1)));
        &a - &b
    }

    /// `T_{s_i}^-1 h`.
    pub fn mul_gen_inverse_left(&self, i: usize) -> Self {
        let a = self.mul_gen_left(i).scale(&LaurentPoly::q_pow(-1));
        let b = self.scale(&(LaurentPoly::one() - LaurentPoly::q_pow(-1)));
        &a - &b
    }

    /// `h T_rho^z`.
    pub fn mul_rho_right(&self, z: i64) -> Self {
        Self { r: self.r, terms: self.terms.map_keys(|u| u.mul_rho_right(z)) }
    }

    /// `T_rho^z h`.
    pub fn mul_rho_left(&self, z: i64) -> Self {
        Self { r: self.r, terms: self.terms.map_keys(|u| u.mul_rho_left(z)) }
    }

    /// `h T_w`, expanding `T_w = T_rho^z T_{s_i1} ... T_{s_im}`.
    pub fn mul_t_right(&self, w: &WindowPerm) -> Self {
        let (z, word) = w.reduced_word();
        let mut out = self.mul_rho_right(z);
        for i in word {
            out = out.mul_gen_right(i);
        }
        out
    }

    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        if self.r != other.r {
            return Err(Error::PeriodMismatch(self.r, other.r));
        }
        let mut out = Self::zero(self.r);
        for (w, c) in other.terms.iter() {
            out.terms.add_scaled(&self.mul_t_right(w).terms, c);
        }
        Ok(out)
    }

    /// `T_w^-1`.
    pub fn t_inverse(w: &WindowPerm) -> Self {
        let (z, word) = w.reduced_word();
        let mut out = Self::t_basis(&WindowPerm::identity(w.r()).expect("valid period"));
        for &i in word.iter().rev() {
            out = out.mul_gen_inverse_right(i);
        }
        out.mul_rho_right(-z)
    }

    /// Coefficientwise `v = 1`: the image in the group algebra.
    pub fn specialize_group_algebra(&self) -> BTreeMap<WindowPerm, BigInt> {
        self.terms.specialize_v1()
    }

    /// `x_pi = sum_{w in W_pi} T_w`.
    pub fn x_lambda(pi: &ParabolicIndex) -> Self {
        let mut out = Self::zero(pi.r());
        for w in pi.elements() {
            out.terms.add_term(w, &LaurentPoly::one());
        }
        out
    }

    /// Maximal length of a supporting basis element.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.length()).max().unwrap_or(0)
    }
}

/// Product in the group algebra of the extended affine Weyl group.
pub fn group_algebra_mul(
    a: &BTreeMap<WindowPerm, BigInt>,
    b: &BTreeMap<WindowPerm, BigInt>,
) -> BTreeMap<WindowPerm, BigInt> {
    let mut out: BTreeMap<WindowPerm, BigInt> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(x.then(y)).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

impl std::ops::Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.r, rhs.r, "period mismatch");
        HeckeElement { r: self.r, terms: &self.terms + &rhs.terms }
    }
}

impl std::ops::Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.r, rhs.r, "period mismatch");
        HeckeElement { r: self.r, terms: &self.terms - &rhs.terms }
    }
}

impl std::ops::Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        HeckeElement { r: self.r, terms: -&self.terms }
    }
}

impl std::ops::Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        HeckeElement::mul(self, rhs).expect("period mismatch")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})T{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct HeckeTermJson {
    window: Vec<i64>,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct HeckeJson {
    r: usize,
    terms: Vec<HeckeTermJson>,
}

impl Serialize for HeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HeckeJson {
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| HeckeTermJson { window: w.window().to_vec(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = HeckeJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in json.terms {
            if t.window.len() != json.r {
                return Err(serde::de::Error::custom(format!(
                    "window {:?} does not have length r = {}",
                    t.window, json.r
                )));
            }
            terms.push((WindowPerm::new(t.window).map_err(serde::de::Error::custom)?, t.coeff));
        }
        HeckeElement::from_terms(json.r, terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(w: &WindowPerm) -> HeckeElement {
        HeckeElement::t_basis(w)
    }

    fn s(r: usize, i: usize) -> WindowPerm {
        WindowPerm::gen_s(r, i).unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let t1 = HeckeElement::t_s(3, 1).unwrap();
        let e = WindowPerm::identity(3).unwrap();
        let expected =
            HeckeElement::from_terms(3, [(e, LaurentPoly::q()), (s(3, 1), LaurentPoly::q_minus_one())]).unwrap();
        assert_eq!(&t1 * &t1, expected);
    }

    #[test]
    fn rho_conjugation() {
        for r in 3..6 {
            for i in 1..=r {
                let lhs = &(&HeckeElement::t_rho(r, 1).unwrap() * &HeckeElement::t_s(r, i % r + 1).unwrap())
                    * &HeckeElement::t_rho(r, -1).unwrap();
                assert_eq!(lhs, HeckeElement::t_s(r, i).unwrap());
            }
        }
    }

    #[test]
    fn braid_relation() {
        let t1 = HeckeElement::t_s(3, 1).unwrap();
        let t2 = HeckeElement::t_s(3, 2).unwrap();
        assert_eq!(&(&t1 * &t2) * &t1, &(&t2 * &t1) * &t2);
        let s1s2 = s(3, 1).then(&s(3, 2));
        assert_eq!(&t1 * &t2, t(&s1s2));
        assert_eq!(t(&s1s2).len(), 1);
    }

    #[test]
    fn unit_and_inverse() {
        let one = HeckeElement::one(3).unwrap();
        let t2 = HeckeElement::t_s(3, 2).unwrap();
        assert_eq!(&one * &t2, t2);
        assert_eq!(&t2 * &one, t2);
        let w = WindowPerm::new(vec![4, -1, 3]).unwrap();
        assert_eq!(&t(&w) * &HeckeElement::t_inverse(&w), one);
        assert_eq!(&HeckeElement::t_inverse(&w) * &t(&w), one);
    }

    #[test]
    fn left_and_right_generators_agree_with_mul() {
        let w = WindowPerm::new(vec![4, -1, 3]).unwrap();
        let h = &t(&w) + &t(&s(3, 3)).scale(&LaurentPoly::v_pow(-3));
        for i in 1..=3 {
            let ti = HeckeElement::t_s(3, i).unwrap();
            assert_eq!(h.mul_gen_left(i), &ti * &h);
            assert_eq!(h.mul_gen_right(i), &h * &ti);
            assert_eq!(h.mul_gen_inverse_left(i).mul_gen_left(i), h);
        }
        assert_eq!(h.mul_rho_left(2), &HeckeElement::t_rho(3, 2).unwrap() * &h);
    }

    #[test]
    fn specialization_examples() {
        let t1 = HeckeElement::t_s(3, 1).unwrap();
        let e = WindowPerm::identity(3).unwrap();
        assert_eq!((&t1 * &t1).specialize_group_algebra(), BTreeMap::from([(e, BigInt::from(1))]));
        let conj = &(&HeckeElement::t_rho(3, 1).unwrap() * &HeckeElement::t_s(3, 2).unwrap())
            * &HeckeElement::t_rho(3, -1).unwrap();
        assert_eq!(conj.specialize_group_algebra(), BTreeMap::from([(s(3, 1), BigInt::from(1))]));
    }

    #[test]
    fn x_lambda_examples() {
        let e = WindowPerm::identity(3).unwrap();
        assert_eq!(HeckeElement::x_lambda(&ParabolicIndex::empty(3).unwrap()), t(&e));
        let p1 = ParabolicIndex::new(3, [1], 0).unwrap();
        assert_eq!(HeckeElement::x_lambda(&p1), &t(&e) + &t(&s(3, 1)));
        assert_eq!(HeckeElement::x_lambda(&p1.shifted(1)), &t(&e) + &t(&s(3, 2)));
        let p12 = ParabolicIndex::new(3, [1, 2], 0).unwrap();
        let x = HeckeElement::x_lambda(&p12);
        for i in [1, 2] {
            assert_eq!(x.mul_gen_right(i), x.scale(&LaurentPoly::q()));
        }
    }

    #[test]
    fn json_round_trip() {
        let h = &HeckeElement::t_s(3, 1).unwrap() * &HeckeElement::t_s(3, 1).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<HeckeElement>(&text).unwrap(), h);
        let parsed: HeckeElement =
            serde_json::from_str(r#"{"r":3,"terms":[{"window":[2,1,3],"coeff":{"0":1}}]}"#).unwrap();
        assert_eq!(parsed, HeckeElement::t_s(3, 1).unwrap());
        assert!(serde_json::from_str::<HeckeElement>(r#"{"r":3,"terms":[{"window":[1,1,3],"coeff":{"0":1}}]}"#)
            .is_err());
    }
}
