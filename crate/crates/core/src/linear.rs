//! Sparse finite linear combinations with Laurent-polynomial coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;

use crate::coeff::LaurentPoly;

/// `sum c_k [k]` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, LaurentPoly>,
}

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, LaurentPoly::one())
    }

    pub fn term(key: K, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(key, &c);
        out
    }

    pub fn add_term(&mut self, key: K, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> LaurentPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn get(&self, key: &K) -> Option<&LaurentPoly> {
        self.terms.get(key)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every coefficient by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(key, c)| (key.clone(), c.shift(k))).collect() }
    }

    pub fn map_keys<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> Combination<J> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn apply_linear<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<J>) -> Combination<J> {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn specialize_v1(&self) -> BTreeMap<K, BigInt> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let x = c.specialize_v1();
            if x != BigInt::from(0) {
                out.insert(k.clone(), x);
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, LaurentPoly> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, LaurentPoly)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }
}

impl<K: Ord + Clone> AddAssign<&Combination<K>> for Combination<K> {
    fn add_assign(&mut self, rhs: &Combination<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c);
        }
    }
}

impl<K: Ord + Clone> SubAssign<&Combination<K>> for Combination<K> {
    fn sub_assign(&mut self, rhs: &Combination<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), &-c);
        }
    }
}

impl<K: Ord + Clone> Add for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        Combination { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_prunes() {
        let mut a = Combination::term(1u8, LaurentPoly::q());
        a.add_term(1, &-LaurentPoly::q());
        assert!(a.is_zero());
        let b = Combination::term(2u8, LaurentPoly::v_pow(1));
        assert_eq!(&(&b + &b) - &b, b);
        assert!((&b + &-&b).is_zero());
    }
}
