//! The Bernstein presentation: commuting invertible `y_1, ..., y_r` with
//! `sigma_i = T_{s_i}` (`i < r`), and the basis `y^c T_w`, `w` finite.
//!
//! `y_i = Omega_{r-i+1} Omega_{r-i}^-1` where `Omega_k = v^-l(a_k) T_{a_k}` and
//! `a_k` translates the last `k` residue classes by `+r`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::linear::Combination;
use crate::weyl::WindowPerm;

/// `y^c T_w` with `w` a permutation of `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BernsteinKey {
    pub c: Vec<i64>,
    pub w: WindowPerm,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BernsteinElement {
    r: usize,
    terms: Combination<BernsteinKey>,
}

impl BernsteinElement {
    pub fn zero(r: usize) -> Self {
        Self { r, terms: Combination::zero() }
    }

    pub fn term(c: Vec<i64>, w: WindowPerm, coeff: LaurentPoly) -> Self {
        let r = w.r();
        assert_eq!(c.len(), r);
        Self { r, terms: Combination::term(BernsteinKey { c, w }, coeff) }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &Combination<BernsteinKey> {
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

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { r: self.r, terms: self.terms.scale(c) }
    }

    fn add_finite(&mut self, c: &[i64], finite: &HeckeElement, coeff: &LaurentPoly) {
        for (w, x) in finite.terms().iter() {
            self.terms.add_term(BernsteinKey { c: c.to_vec(), w: w.clone() }, &(x * coeff));
        }
    }
}

impl std::ops::Add for &BernsteinElement {
    type Output = BernsteinElement;
    fn add(self, rhs: &BernsteinElement) -> BernsteinElement {
        BernsteinElement { r: self.r, terms: &self.terms + &rhs.terms }
    }
}

impl std::ops::Sub for &BernsteinElement {
    type Output = BernsteinElement;
    fn sub(self, rhs: &BernsteinElement) -> BernsteinElement {
        BernsteinElement { r: self.r, terms: &self.terms - &rhs.terms }
    }
}

impl fmt::Display for BernsteinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})y^{:?}T{}", key.c, key.w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BernsteinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Laurent polynomial in two commuting variables `Y = y_i`, `Z = y_{i+1}`.
pub type PairPoly = Combination<(i64, i64)>;

fn pair_mono(a: i64, b: i64, c: LaurentPoly) -> PairPoly {
    Combination::term((a, b), c)
}

fn pair_shift(p: &PairPoly, da: i64, db: i64) -> PairPoly {
    p.map_keys(|&(a, b)| (a + da, b + db))
}

/// `sigma Y^a Z^b = Y^b Z^a sigma + Q`; returns `Q`.
pub fn sigma_past_monomial(a: i64, b: i64) -> PairPoly {
    static MEMO: Mutex<Option<HashMap<(i64, i64), PairPoly>>> = Mutex::new(None);
    if let Some(hit) = MEMO.lock().unwrap().get_or_insert_with(HashMap::new).get(&(a, b)) {
        return hit.clone();
    }
    let qm1 = LaurentPoly::q_minus_one();
    let out = if a != 0 {
        let e = a.signum();
        // sigma Y = Z sigma - (q-1) Z;  sigma Y^-1 = Z^-1 sigma + (q-1) Y^-1
        let mut q = pair_shift(&sigma_past_monomial(a - e, b), 0, e);
        if e > 0 {
            q += &pair_mono(a - 1, b + 1, -&qm1);
        } else {
            q += &pair_mono(a, b, qm1);
        }
        q
    } else if b != 0 {
        let e = b.signum();
        // sigma Z = Y sigma + (q-1) Z;  sigma Z^-1 = Y^-1 sigma - (q-1) Y^-1
        let mut q = pair_shift(&sigma_past_monomial(0, b - e), e, 0);
        if e > 0 {
            q += &pair_mono(0, b, qm1);
        } else {
            q += &pair_mono(-1, b + 1, -&qm1);
        }
        q
    } else {
        PairPoly::zero()
    };
    MEMO.lock().unwrap().get_or_insert_with(HashMap::new).insert((a, b), out.clone());
    out
}

/// `Y^a Z^b sigma = sigma Y^b Z^a + R`; returns `R`.
pub fn monomial_past_sigma(a: i64, b: i64) -> PairPoly {
    static MEMO: Mutex<Option<HashMap<(i64, i64), PairPoly>>> = Mutex::new(None);
    if let Some(hit) = MEMO.lock().unwrap().get_or_insert_with(HashMap::new).get(&(a, b)) {
        return hit.clone();
    }
    let qm1 = LaurentPoly::q_minus_one();
    let out = if b != 0 {
        let e = b.signum();
        // Z sigma = sigma Y + (q-1) Z;  Z^-1 sigma = sigma Y^-1 - (q-1) Y^-1
        let mut r = pair_shift(&monomial_past_sigma(a, b - e), e, 0);
        if e > 0 {
            r += &pair_mono(a, b, qm1);
        } else {
            r += &pair_mono(a - 1, b + 1, -&qm1);
        }
        r
    } else if a != 0 {
        let e = a.signum();
        // Y sigma = sigma Z - (q-1) Z;  Y^-1 sigma = sigma Z^-1 + (q-1) Y^-1
        let mut r = pair_shift(&monomial_past_sigma(a - e, 0), 0, e);
        if e > 0 {
            r += &pair_mono(a - 1, 1, -&qm1);
        } else {
            r += &pair_mono(a, 0, qm1);
        }
        r
    } else {
        PairPoly::zero()
    };
    MEMO.lock().unwrap().get_or_insert_with(HashMap::new).insert((a, b), out.clone());
    out
}

/// Embeds a two-variable polynomial at positions `i, i+1` of the exponent
/// vector `base`, which supplies the other exponents.
fn embed_pair(p: &PairPoly, base: &[i64], i: usize) -> Vec<(Vec<i64>, LaurentPoly)> {
    p.iter()
        .map(|(&(a, b), c)| {
            let mut e = base.to_vec();
            e[i - 1] = a;
            e[i] = b;
            (e, c.clone())
        })
        .collect()
}

/// The Bernstein generators for period `r` together with conversions
/// between the `T`-basis and the `y^c T_w` basis.
pub struct Bernstein {
    r: usize,
    y: Vec<HeckeElement>,
    y_inv: Vec<HeckeElement>,
    rho: BernsteinElement,
    rho_inv: BernsteinElement,
    monomials: Mutex<HashMap<Vec<i64>, HeckeElement>>,
}

fn omega(r: usize, k: usize) -> (HeckeElement, HeckeElement) {
    let t: Vec<i64> = (1..=r).map(|a| i64::from(a > r - k)).collect();
    let a = WindowPerm::translation(&t).expect("valid translation");
    let l = a.length() as i32;
    (
        HeckeElement::t_basis(&a).scale(&LaurentPoly::v_pow(-l)),
        HeckeElement::t_inverse(&a).scale(&LaurentPoly::v_pow(l)),
    )
}

impl Bernstein {
    pub fn new(r: usize) -> Result<Self> {
        WindowPerm::identity(r)?;
        let omegas: Vec<(HeckeElement, HeckeElement)> = (0..=r).map(|k| omega(r, k)).collect();
        let mut y = Vec::with_capacity(r);
        let mut y_inv = Vec::with_capacity(r);
        for i in 1..=r {
            let k = r - i + 1;
            y.push(&omegas[k].0 * &omegas[k - 1].1);
            y_inv.push(&omegas[k - 1].0 * &omegas[k].1);
        }
        let mut out = Self {
            r,
            y,
            y_inv,
            rho: BernsteinElement::zero(r),
            rho_inv: BernsteinElement::zero(r),
            monomials: Mutex::new(HashMap::new()),
        };
        // T_rho = v^(r-1) y_r T_c^-1 with c = [r, 1, ..., r-1]
        let mut cycle: Vec<i64> = vec![r as i64];
        cycle.extend(1..r as i64);
        let c = WindowPerm::new(cycle)?;
        let mut yr = vec![0; r];
        yr[r - 1] = 1;
        let mut rho = BernsteinElement::zero(r);
        rho.add_finite(&yr, &HeckeElement::t_inverse(&c), &LaurentPoly::v_pow(r as i32 - 1));
        let mut yr_inv = vec![0; r];
        yr_inv[r - 1] = -1;
        let c_part = BernsteinElement::term(vec![0; r], c, LaurentPoly::v_pow(1 - r as i32));
        let rho_inv = out.mul(&c_part, &BernsteinElement::term(yr_inv, WindowPerm::identity(r)?, LaurentPoly::one()));
        if out.to_hecke(&rho) != HeckeElement::t_rho(r, 1)? {
            return Err(Error::Expansion(format!("Bernstein form of T_rho fails to round-trip for r = {r}")));
        }
        out.rho = rho;
        out.rho_inv = rho_inv;
        Ok(out)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `y_i` in the `T`-basis.
    pub fn y(&self, i: usize) -> &HeckeElement {
        &self.y[i - 1]
    }

    pub fn y_inverse(&self, i: usize) -> &HeckeElement {
        &self.y_inv[i - 1]
    }

    /// `T_rho` in the Bernstein basis.
    pub fn rho(&self) -> &BernsteinElement {
        &self.rho
    }

    pub fn rho_inverse(&self) -> &BernsteinElement {
        &self.rho_inv
    }

    /// `y^c` in the `T`-basis.
    pub fn monomial(&self, c: &[i64]) -> HeckeElement {
        if let Some(hit) = self.monomials.lock().unwrap().get(c) {
            return hit.clone();
        }
        let mut out = HeckeElement::one(self.r).expect("valid period");
        for (i, &e) in c.iter().enumerate() {
            let factor = if e >= 0 { &self.y[i] } else { &self.y_inv[i] };
            for _ in 0..e.unsigned_abs() {
                out = &out * factor;
            }
        }
        self.monomials.lock().unwrap().insert(c.to_vec(), out.clone());
        out
    }

    pub fn to_hecke(&self, b: &BernsteinElement) -> HeckeElement {
        let mut out = HeckeElement::zero(self.r);
        for (key, c) in b.terms.iter() {
            let h = self.monomial(&key.c).mul_t_right(&key.w);
            out = &out + &h.scale(c);
        }
        out
    }

    /// `sigma_i X` for `i < r`.
    pub fn sigma_left(&self, i: usize, x: &BernsteinElement) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.r);
        for (key, coeff) in x.terms.iter() {
            let finite = HeckeElement::t_basis(&key.w);
            let mut swapped = key.c.clone();
            swapped.swap(i - 1, i);
            out.add_finite(&swapped, &finite.mul_gen_left(i), coeff);
            for (c, a) in embed_pair(&sigma_past_monomial(key.c[i - 1], key.c[i]), &key.c, i) {
                out.add_finite(&c, &finite, &(&a * coeff));
            }
        }
        out
    }

    /// `X sigma_i` for `i < r`.
    pub fn sigma_right(&self, x: &BernsteinElement, i: usize) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.r);
        for (key, coeff) in x.terms.iter() {
            let finite = HeckeElement::t_basis(&key.w).mul_gen_right(i);
            out.add_finite(&key.c, &finite, coeff);
        }
        out
    }

    pub fn mul(&self, a: &BernsteinElement, b: &BernsteinElement) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.r);
        for (kb, cb) in b.terms.iter() {
            // y^a T_u y^b T_w: move y^b left through T_u one generator at a time.
            let mut by_word: BTreeMap<Vec<usize>, BernsteinElement> = BTreeMap::new();
            for (ka, ca) in a.terms.iter() {
                let (_, word) = ka.w.reduced_word();
                let mut state = BernsteinElement::term(
                    kb.c.clone(),
                    WindowPerm::identity(self.r).expect("valid period"),
                    LaurentPoly::one(),
                );
                if let Some(hit) = by_word.get(&word) {
                    state = hit.clone();
                } else {
                    for &i in word.iter().rev() {
                        state = self.sigma_left(i, &state);
                    }
                    by_word.insert(word, state.clone());
                }
                for (ks, cs) in state.terms.iter() {
                    let c: Vec<i64> = ka.c.iter().zip(&ks.c).map(|(x, y)| x + y).collect();
                    let finite = HeckeElement::t_basis(&ks.w).mul_t_right(&kb.w);
                    out.add_finite(&c, &finite, &(&(ca * cs) * cb));
                }
            }
        }
        out
    }

    /// `T_{s_i}` in the Bernstein basis, `1 <= i <= r`.
    pub fn generator(&self, i: usize) -> BernsteinElement {
        let e = WindowPerm::identity(self.r).expect("valid period");
        if i < self.r {
            BernsteinElement::term(vec![0; self.r], e.mul_s_right(i), LaurentPoly::one())
        } else {
            // T_rho T_{s_1} T_rho^-1 = T_{s_r}
            self.mul(&self.sigma_right(&self.rho, 1), &self.rho_inv)
        }
    }

    /// Rewrites `h` in the basis `y^c T_w`.
    pub fn to_bernstein_basis(&self, h: &HeckeElement) -> BernsteinElement {
        let mut out = BernsteinElement::zero(self.r);
        let e = WindowPerm::identity(self.r).expect("valid period");
        let s_r = self.generator(self.r);
        for (w, coeff) in h.terms().iter() {
            let (z, word) = w.reduced_word();
            let mut x = BernsteinElement::term(vec![0; self.r], e.clone(), LaurentPoly::one());
            let step = if z >= 0 { &self.rho } else { &self.rho_inv };
            for _ in 0..z.unsigned_abs() {
                x = self.mul(&x, step);
            }
            for i in word {
                x = if i < self.r { self.sigma_right(&x, i) } else { self.mul(&x, &s_r) };
            }
            out = &out + &x.scale(coeff);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(r: usize) -> WindowPerm {
        WindowPerm::identity(r).unwrap()
    }

    fn unit_vec(r: usize, i: usize, x: i64) -> Vec<i64> {
        let mut c = vec![0; r];
        c[i - 1] = x;
        c
    }

    #[test]
    fn relations_hold() {
        for r in 3..=4 {
            let b = Bernstein::new(r).unwrap();
            let one = HeckeElement::one(r).unwrap();
            for i in 1..=r {
                assert_eq!(b.y(i) * b.y_inverse(i), one);
                assert_eq!(b.y_inverse(i) * b.y(i), one);
                for j in 1..=r {
                    assert_eq!(b.y(i) * b.y(j), b.y(j) * b.y(i));
                }
            }
            for i in 1..r {
                let t = HeckeElement::t_s(r, i).unwrap();
                assert_eq!(&(&t * b.y(i)) * &t, b.y(i + 1).scale(&LaurentPoly::q()));
                for j in (1..=r).filter(|&j| j != i && j != i + 1) {
                    assert_eq!(b.y(j) * &t, &t * b.y(j));
                }
            }
        }
    }

    #[test]
    fn last_generator_is_pure_translation() {
        let b = Bernstein::new(3).unwrap();
        let z = WindowPerm::new(vec![1, 2, 6]).unwrap();
        assert_eq!(b.y(3), &HeckeElement::t_basis(&z).scale(&LaurentPoly::v_pow(-2)));
    }

    #[test]
    fn commutation_rules_agree_with_hecke_products() {
        let r = 3;
        let b = Bernstein::new(r).unwrap();
        for i in 1..r {
            let t = HeckeElement::t_s(r, i).unwrap();
            for a in -2..=2 {
                for c in -2..=2 {
                    let mut exps = vec![0; r];
                    exps[i - 1] = a;
                    exps[i] = c;
                    let mono = b.monomial(&exps);
                    let mut swapped = exps.clone();
                    swapped.swap(i - 1, i);
                    let mut rhs = b.monomial(&swapped).mul_gen_right(i);
                    for (k, x) in embed_pair(&sigma_past_monomial(a, c), &exps, i) {
                        rhs = &rhs + &b.monomial(&k).scale(&x);
                    }
                    assert_eq!(mono.mul_gen_left(i), rhs);
                    let mut rhs = b.monomial(&swapped).mul_gen_left(i);
                    for (k, x) in embed_pair(&monomial_past_sigma(a, c), &exps, i) {
                        rhs = &rhs + &b.monomial(&k).scale(&x);
                    }
                    assert_eq!(&mono * &t, rhs);
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let r = 3;
        let b = Bernstein::new(r).unwrap();
        let one = HeckeElement::one(r).unwrap();
        assert_eq!(b.to_bernstein_basis(&one), BernsteinElement::term(vec![0; r], e(r), LaurentPoly::one()));
        assert_eq!(
            b.to_bernstein_basis(b.y(1)),
            BernsteinElement::term(unit_vec(r, 1, 1), e(r), LaurentPoly::one())
        );
        let rho = HeckeElement::t_rho(r, 1).unwrap();
        assert_eq!(b.to_hecke(&b.to_bernstein_basis(&rho)), rho);
        assert_eq!(b.to_hecke(b.rho_inverse()), HeckeElement::t_rho(r, -1).unwrap());
        for i in 1..=r {
            assert_eq!(b.to_hecke(&b.generator(i)), HeckeElement::t_s(r, i).unwrap());
        }
    }

    #[test]
    fn round_trip_and_multiplication() {
        let r = 3;
        let b = Bernstein::new(r).unwrap();
        let w = WindowPerm::new(vec![4, -1, 3]).unwrap();
        let h = &HeckeElement::t_basis(&w) + &HeckeElement::t_s(r, 3).unwrap().scale(&LaurentPoly::v_pow(3));
        let hb = b.to_bernstein_basis(&h);
        assert_eq!(b.to_hecke(&hb), h);
        let g = HeckeElement::t_rho(r, -1).unwrap().mul_gen_right(2);
        let gb = b.to_bernstein_basis(&g);
        assert_eq!(b.to_hecke(&b.mul(&hb, &gb)), &h * &g);
    }

    #[test]
    fn rho_has_expected_shape() {
        for r in 3..=5 {
            let b = Bernstein::new(r).unwrap();
            assert!(b.rho().terms().keys().all(|k| k.c == unit_vec(r, r, 1)));
        }
    }
}
