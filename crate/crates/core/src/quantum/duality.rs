//! Tensor space as a `(U, H)`-bimodule: the shifts `y_t`, the map `tau`, the
//! right Hecke action, `kappa` and the isomorphism with q-tensor space.
//!
//! The right action of `T_{s_i}` on a basis tuple `j = k + n c` (`k` in
//! `1..=n`) writes `e_j = e_k . y^-c`, moves the monomial past `T_{s_i}` with
//! `Y T = T Z - (q-1) Z` and `Z T = T Y + (q-1) Z` (`Y = y_i`, `Z = y_{i+1}`),
//! and applies the finite action to `e_k`. `T_rho` acts through its
//! Bernstein form.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{act_letter_on_key, class, hopf::generators, projection, weight_parts, window_keys, Key, Letter, TensorOperator, TensorVector, UElement};
use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::hecke::bernstein::{monomial_past_sigma, PairPoly};
use crate::hecke::{Bernstein, BernsteinElement, HeckeElement};
use crate::linalg::rank_at;
use crate::linear::Combination;
use crate::report::{Check, Report};
use crate::schur::{poincare_nu, QTensorElement, SchurElement, SchurKey, Weight};
use crate::weyl::{enumerate_up_to_length, is_distinguished, is_double_distinguished, WindowPerm};

/// Generators of `H` acting on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RightGen {
    /// `T_{s_i}`, `1 <= i <= r`.
    S(usize),
    Rho,
    RhoInv,
}

/// Which variable is moved past `T_{s_i}` first when rewriting `Y^a Z^b T_{s_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    ZFirst,
    YFirst,
}

/// `Y^a Z^b T = T Y^b Z^a + R`; returns `R`, peeling `Y` first.
fn remainder_y_first(a: i64, b: i64) -> PairPoly {
    let qm1 = LaurentPoly::q_minus_one();
    let mut out = PairPoly::zero();
    if a != 0 {
        let e = a.signum();
        for (&(x, y), c) in remainder_y_first(a - e, b).iter() {
            out.add_term((x, y + e), c);
        }
        if e > 0 {
            // Y T = T Z - (q-1) Z
            out.add_term((a - 1, b + 1), &-&qm1);
        } else {
            // Y^-1 T = T Z^-1 + (q-1) Y^-1
            out.add_term((a, b), &qm1);
        }
    } else if b != 0 {
        let e = b.signum();
        for (&(x, y), c) in remainder_y_first(0, b - e).iter() {
            out.add_term((x + e, y), c);
        }
        if e > 0 {
            out.add_term((0, b), &qm1);
        } else {
            out.add_term((-1, b + 1), &-&qm1);
        }
    }
    out
}

/// Sorting `key` by adjacent swaps: `e_key = v^-len e_sorted . T_{i_1} ... T_{i_len}`.
fn sort_word(key: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut k = key.to_vec();
    let mut swaps = Vec::new();
    while let Some(i) = (1..k.len()).find(|&i| k[i - 1] > k[i]) {
        k.swap(i - 1, i);
        swaps.push(i);
    }
    swaps.reverse();
    (k, swaps)
}

fn shift_keys(x: &Combination<Key>, offset: &[i64]) -> Combination<Key> {
    x.map_keys(|k| k.iter().zip(offset).map(|(a, b)| a + b).collect())
}

/// Observed exponent for one basis vector in the normalization report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExponentRecord {
    pub weight: Weight,
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub exponent: i32,
    /// `l(w_lambda)` (down maps) or `l(w)`, `w in W_mu` (up maps).
    pub length: usize,
}

/// Tensor space for fixed `n >= r >= 3`.
pub struct Duality {
    n: usize,
    r: usize,
    omega: Weight,
    bernstein: Bernstein,
    right_cache: Mutex<HashMap<(RightGen, Key), Combination<Key>>>,
    omega_x: Mutex<HashMap<Weight, Combination<Key>>>,
}

impl Duality {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        let omega = Weight::omega(n, r)?;
        Ok(Self {
            n,
            r,
            omega,
            bernstein: Bernstein::new(r)?,
            right_cache: Mutex::new(HashMap::new()),
            omega_x: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn omega(&self) -> &Weight {
        &self.omega
    }

    pub fn bernstein(&self) -> &Bernstein {
        &self.bernstein
    }

    /// `e_1 (x) ... (x) e_r`.
    pub fn e_omega(&self) -> TensorVector {
        TensorVector::basis(self.n, (1..=self.r as i64).collect())
    }

    fn check_vector(&self, x: &TensorVector) -> Result<()> {
        if x.n() != self.n || x.r() != self.r {
            return Err(Error::Incompatible(format!(
                "tensor for (n, r) = ({}, {}) used with ({}, {})",
                x.n(),
                x.r(),
                self.n,
                self.r
            )));
        }
        Ok(())
    }

    /// `j = k - n m` with `k` in `1..=n`; returns `(k, m)`, so `e_j = e_k . y^m`.
    pub fn split(&self, key: &[i64]) -> (Key, Vec<i64>) {
        let n = self.n as i64;
        let k: Key = key.iter().map(|&t| class(t, self.n) as i64).collect();
        let m = key.iter().zip(&k).map(|(j, k)| (k - j) / n).collect();
        (k, m)
    }

    fn join(&self, k: &[i64], m: &[i64]) -> Key {
        let n = self.n as i64;
        k.iter().zip(m).map(|(k, m)| k - n * m).collect()
    }

    /// `y_t`: shifts the `t`-th entry by `-n`.
    pub fn y_op(&self, t: usize) -> Result<TensorOperator> {
        self.y_power(t, 1)
    }

    /// `y_t^e`.
    pub fn y_power(&self, t: usize, e: i64) -> Result<TensorOperator> {
        if t == 0 || t > self.r {
            return Err(Error::IndexOutOfRange { index: t, r: self.r });
        }
        let shift = self.n as i64 * e;
        Ok(TensorOperator::new(self.n, self.r, move |k| {
            let mut k2 = k.to_vec();
            k2[t - 1] -= shift;
            Ok(Combination::basis(k2))
        }))
    }

    /// `e_k . T_{s_i}` for `k` in `1..=n`, `i < r`.
    fn finite_key(&self, key: &[i64], i: usize) -> Combination<Key> {
        let (a, b) = (key[i - 1], key[i]);
        let mut swapped = key.to_vec();
        swapped.swap(i - 1, i);
        let mut out = Combination::zero();
        if a == b {
            out.add_term(key.to_vec(), &LaurentPoly::q());
        } else {
            out.add_term(swapped, &LaurentPoly::v_pow(1));
            if a > b {
                out.add_term(key.to_vec(), &LaurentPoly::q_minus_one());
            }
        }
        out
    }

    /// The finite right action of `T_{s_i}` on `V_n^{(x) r}`.
    pub fn finite_hecke_right_action(&self, x: &TensorVector, i: usize) -> Result<TensorVector> {
        self.check_vector(x)?;
        if i == 0 || i >= self.r {
            return Err(Error::IndexOutOfRange { index: i, r: self.r });
        }
        let n = self.n as i64;
        if let Some(k) = x.terms().keys().find(|k| k.iter().any(|&t| !(1..=n).contains(&t))) {
            return Err(Error::Incompatible(format!("key {k:?} has entries outside 1..={n}")));
        }
        Ok(x.map(|k| self.finite_key(k, i)))
    }

    /// `e_key . T_{s_i}` for `i < r`, rewriting the y-monomial in the given order.
    pub fn sigma_key(&self, key: &[i64], i: usize, order: RewriteOrder) -> Combination<Key> {
        let (k, m) = self.split(key);
        let mut out = Combination::zero();
        let mut sm = m.clone();
        sm.swap(i - 1, i);
        for (k2, c) in self.finite_key(&k, i).iter() {
            out.add_term(self.join(k2, &sm), c);
        }
        let rest = match order {
            RewriteOrder::ZFirst => monomial_past_sigma(m[i - 1], m[i]),
            RewriteOrder::YFirst => remainder_y_first(m[i - 1], m[i]),
        };
        for (&(a, b), c) in rest.iter() {
            let mut m2 = m.clone();
            m2[i - 1] = a;
            m2[i] = b;
            out.add_term(self.join(&k, &m2), c);
        }
        out
    }

    fn right_comb(&self, x: &Combination<Key>, g: RightGen) -> Combination<Key> {
        x.apply_linear(|k| self.right_key(k, g))
    }

    fn bernstein_key(&self, key: &[i64], b: &BernsteinElement) -> Combination<Key> {
        let mut out = Combination::zero();
        for (bk, c) in b.terms().iter() {
            let n = self.n as i64;
            let shifted: Key = key.iter().zip(&bk.c).map(|(j, e)| j - n * e).collect();
            let mut cur = Combination::basis(shifted);
            let (_, word) = bk.w.reduced_word();
            for i in word {
                cur = self.right_comb(&cur, RightGen::S(i));
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    /// `e_key . g`.
    pub fn right_key(&self, key: &[i64], g: RightGen) -> Combination<Key> {
        let cache_key = (g, key.to_vec());
        if let Some(hit) = self.right_cache.lock().unwrap().get(&cache_key) {
            return hit.clone();
        }
        let out = match g {
            RightGen::S(i) if i < self.r => self.sigma_key(key, i, RewriteOrder::ZFirst),
            RightGen::S(_) => {
                // T_{s_r} = T_rho T_{s_1} T_rho^-1
                let a = self.right_key(key, RightGen::Rho);
                let b = self.right_comb(&a, RightGen::S(1));
                self.right_comb(&b, RightGen::RhoInv)
            }
            RightGen::Rho => self.bernstein_key(key, self.bernstein.rho()),
            RightGen::RhoInv => self.bernstein_key(key, self.bernstein.rho_inverse()),
        };
        self.right_cache.lock().unwrap().insert(cache_key, out.clone());
        out
    }

    pub fn right_generator(&self, x: &TensorVector, g: RightGen) -> Result<TensorVector> {
        self.check_vector(x)?;
        if let RightGen::S(i) = g {
            if i == 0 || i > self.r {
                return Err(Error::IndexOutOfRange { index: i, r: self.r });
            }
        }
        Ok(x.map(|k| self.right_key(k, g)))
    }

    fn right_t_comb(&self, x: &Combination<Key>, w: &WindowPerm) -> Combination<Key> {
        let (z, word) = w.reduced_word();
        let step = if z >= 0 { RightGen::Rho } else { RightGen::RhoInv };
        let mut cur = x.clone();
        for _ in 0..z.unsigned_abs() {
            cur = self.right_comb(&cur, step);
        }
        for i in word {
            cur = self.right_comb(&cur, RightGen::S(i));
        }
        cur
    }

    /// `x . h`.
    pub fn hecke_right_action(&self, x: &TensorVector, h: &HeckeElement) -> Result<TensorVector> {
        self.check_vector(x)?;
        if h.r() != self.r {
            return Err(Error::PeriodMismatch(self.r, h.r()));
        }
        let mut out = Combination::zero();
        for (w, c) in h.terms().iter() {
            out.add_scaled(&self.right_t_comb(x.terms(), w), c);
        }
        Ok(TensorVector::from_combination(self.n, self.r, out))
    }

    /// The right action of `h` as an operator.
    pub fn right_operator(self: &Arc<Self>, h: &HeckeElement) -> TensorOperator {
        let (me, h) = (self.clone(), h.clone());
        TensorOperator::new(self.n, self.r, move |k| {
            let mut out = Combination::zero();
            for (w, c) in h.terms().iter() {
                out.add_scaled(&me.right_t_comb(&Combination::basis(k.to_vec()), w), c);
            }
            Ok(out)
        })
    }

    /// The U-element whose action on `V_omega` is `tau(g)`.
    pub fn tau_element(&self, g: RightGen) -> Result<UElement> {
        let (n, r) = (self.n, self.r);
        Ok(match g {
            RightGen::S(i) => {
                if i == 0 || i > r {
                    return Err(Error::IndexOutOfRange { index: i, r });
                }
                if i == r && n > r {
                    // v F_r E_r - 1 is -1 on V_omega when n > r; use T_rho T_{s_1} T_rho^-1.
                    let a = self.tau_element(RightGen::Rho)?;
                    let b = self.tau_element(RightGen::S(1))?;
                    return Ok(a.mul(&b).mul(&self.tau_element(RightGen::RhoInv)?));
                }
                &UElement::letters(n, &[Letter::F(i), Letter::E(i)]).scale(&LaurentPoly::v_pow(1)) - &UElement::one(n)
            }
            RightGen::Rho => {
                let mut letters: Vec<Letter> = (r..n).map(Letter::E).collect();
                letters.push(Letter::RInv);
                UElement::letters(n, &letters)
            }
            RightGen::RhoInv => {
                let mut letters: Vec<Letter> = (r + 1..=n).rev().map(Letter::F).collect();
                letters.push(Letter::R);
                UElement::letters(n, &letters)
            }
        })
    }

    /// `tau(T_w)` as a U-element (product over `rho^z s_{i_1} ...`).
    pub fn tau_word(&self, w: &WindowPerm) -> Result<UElement> {
        if w.r() != self.r {
            return Err(Error::PeriodMismatch(self.r, w.r()));
        }
        let (z, word) = w.reduced_word();
        let step = self.tau_element(if z >= 0 { RightGen::Rho } else { RightGen::RhoInv })?;
        let mut out = UElement::one(self.n);
        for _ in 0..z.unsigned_abs() {
            out = out.mul(&step);
        }
        for i in word {
            out = out.mul(&self.tau_element(RightGen::S(i))?);
        }
        Ok(out)
    }

    /// `tau(g) o proj_omega`.
    pub fn tau(&self, g: RightGen) -> Result<TensorOperator> {
        Ok(TensorOperator::from_u(&self.tau_element(g)?, self.r).restrict(&self.omega))
    }

    /// `tau(T_w) o proj_omega`.
    pub fn tau_t(&self, w: &WindowPerm) -> Result<TensorOperator> {
        Ok(TensorOperator::from_u(&self.tau_word(w)?, self.r).restrict(&self.omega))
    }

    pub fn tau_hecke(&self, h: &HeckeElement) -> Result<TensorOperator> {
        let mut out = TensorOperator::zero(self.n, self.r);
        for (w, c) in h.terms().iter() {
            out = out.add(&self.tau_t(w)?.scale(c));
        }
        Ok(out)
    }

    fn finite_word(&self, start: Combination<Key>, word: &[usize]) -> Combination<Key> {
        let mut cur = start;
        for &i in word {
            cur = cur.apply_linear(|k| self.finite_key(k, i));
        }
        cur
    }

    /// `e_omega . x_mu` inside `V_n^{(x) r}`.
    fn omega_times_x(&self, mu: &Weight) -> Combination<Key> {
        if let Some(hit) = self.omega_x.lock().unwrap().get(mu) {
            return hit.clone();
        }
        let mut out = Combination::zero();
        for u in mu.young_parabolic().elements() {
            let (_, word) = u.reduced_word();
            out += &self.finite_word(Combination::basis((1..=self.r as i64).collect()), &word);
        }
        self.omega_x.lock().unwrap().insert(mu.clone(), out.clone());
        out
    }

    /// `kappa(phi^e_{lambda,omega})` on one basis tuple.
    fn down_key(&self, lambda: &Weight, key: &[i64]) -> Combination<Key> {
        if weight_parts(key, self.n) != self.omega.parts() {
            return Combination::zero();
        }
        let (k, m) = self.split(key);
        let (_, word) = sort_word(&k);
        let image = self.finite_word(Combination::basis(lambda.block_key()), &word);
        let shift: Vec<i64> = m.iter().map(|e| -(self.n as i64) * e).collect();
        shift_keys(&image, &shift).shift(-(word.len() as i32))
    }

    /// `kappa(phi^e_{omega,mu})` on one basis tuple.
    fn up_key(&self, mu: &Weight, key: &[i64]) -> Combination<Key> {
        if weight_parts(key, self.n) != mu.parts() {
            return Combination::zero();
        }
        let (k, m) = self.split(key);
        let (_, word) = sort_word(&k);
        let image = self.finite_word(self.omega_times_x(mu), &word);
        let shift: Vec<i64> = m.iter().map(|e| -(self.n as i64) * e).collect();
        shift_keys(&image, &shift).shift(-(word.len() as i32))
    }

    /// `kappa(phi^e_{lambda,omega})`: `V_omega -> V_lambda`.
    pub fn kappa_down(self: &Arc<Self>, lambda: &Weight) -> TensorOperator {
        let (me, lambda) = (self.clone(), lambda.clone());
        TensorOperator::new(self.n, self.r, move |k| Ok(me.down_key(&lambda, k)))
    }

    /// `kappa(phi^e_{omega,mu})`: `V_mu -> V_omega`.
    pub fn kappa_up(self: &Arc<Self>, mu: &Weight) -> TensorOperator {
        let (me, mu) = (self.clone(), mu.clone());
        TensorOperator::new(self.n, self.r, move |k| Ok(me.up_key(&mu, k)))
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.n() != self.n || w.r() != self.r {
            return Err(Error::Incompatible(format!("weight {w} is not in Lambda({}, {})", self.n, self.r)));
        }
        Ok(())
    }

    /// `kappa(phi^d_{lambda,mu})` via
    /// `phi^e_{lambda,omega} phi^d_{omega,omega} phi^e_{omega,mu} = P phi^d_{lambda,mu}`.
    pub fn kappa_phi(self: &Arc<Self>, key: &SchurKey) -> Result<TensorOperator> {
        let SchurKey { lambda, mu, d } = key;
        self.check_weight(lambda)?;
        self.check_weight(mu)?;
        if !is_double_distinguished(d, &lambda.young_parabolic(), &mu.young_parabolic()) {
            return Err(Error::NotDistinguished(format!("{d} for ({lambda}, {mu})")));
        }
        if lambda == mu && d.is_identity() {
            return Ok(projection(lambda));
        }
        let left = if *lambda == self.omega { projection(lambda) } else { self.kappa_down(lambda) };
        let right = if *mu == self.omega { projection(mu) } else { self.kappa_up(mu) };
        let p = poincare_nu(lambda, mu, d)?;
        Ok(left.compose(&self.tau_t(d)?).compose(&right).divide(&p))
    }

    pub fn kappa(self: &Arc<Self>, s: &SchurElement) -> Result<TensorOperator> {
        if s.n() != self.n || s.r() != self.r {
            return Err(Error::Incompatible("Schur element for a different (n, r)".into()));
        }
        let mut out = TensorOperator::zero(self.n, self.r);
        for (key, c) in s.terms().iter() {
            out = out.add(&self.kappa_phi(key)?.scale(c));
        }
        Ok(out)
    }

    /// `x_lambda T_d -> kappa(phi^d_{lambda,omega}) e_omega`.
    pub fn theta_iso(self: &Arc<Self>, x: &QTensorElement) -> Result<TensorVector> {
        if x.n() != self.n || x.r() != self.r {
            return Err(Error::Incompatible("q-tensor element for a different (n, r)".into()));
        }
        let e = self.e_omega();
        let mut out = TensorVector::zero(self.n, self.r);
        for (k, c) in x.terms().iter() {
            let key = SchurKey { lambda: k.lambda.clone(), mu: self.omega.clone(), d: k.d.clone() };
            out = &out + &self.kappa_phi(&key)?.apply(&e)?.scale(c);
        }
        Ok(out)
    }

    /// Preimage under `theta_iso`, searched among `x_lambda T_d` with
    /// `l(d) <= len_bound` and `|rho-power| <= rho_bound`.
    pub fn theta_iso_inverse(self: &Arc<Self>, x: &TensorVector, len_bound: usize, rho_bound: i64) -> Result<QTensorElement> {
        self.check_vector(x)?;
        let candidates = enumerate_up_to_length(self.r, len_bound, true, rho_bound)?;
        let mut out = QTensorElement::zero(self.n, self.r);
        let mut weights: Vec<Vec<usize>> = x.terms().keys().map(|k| weight_parts(k, self.n)).collect();
        weights.sort();
        weights.dedup();
        for parts in weights {
            let lambda = Weight::with_shape(parts, self.n, self.r)?;
            let part = x.project_weight(&lambda);
            let pl = lambda.young_parabolic();
            let mut basis = Vec::new();
            let mut images = Vec::new();
            for d in candidates.iter().filter(|d| is_distinguished(d, &pl)) {
                let b = QTensorElement::basis(&lambda, d)?;
                images.push(self.theta_iso(&b)?.terms().clone());
                basis.push(b);
            }
            let coeffs = crate::linalg::solve_unit_pivot(&images, part.terms())?;
            for (b, c) in basis.iter().zip(coeffs) {
                if !c.is_zero() {
                    out = out.add(&b.scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// Exponents of `kappa(phi^e_{lambda,omega})` on finite `V_omega` keys and of
    /// `kappa(phi^e_{omega,mu})` on `e_{l(mu)}`.
    pub fn normalization_exponents(self: &Arc<Self>) -> Result<(Vec<ExponentRecord>, Vec<ExponentRecord>)> {
        let mut down = Vec::new();
        let mut up = Vec::new();
        let omega_keys: Vec<Key> = permutations(self.r);
        for lambda in Weight::all(self.n, self.r)? {
            if lambda == self.omega {
                continue;
            }
            let pl = lambda.young_parabolic();
            for k in &omega_keys {
                let image = self.down_key(&lambda, k);
                if image.len() != 1 {
                    return Err(Error::Expansion(format!("kappa(phi^e_({lambda},omega)) e{k:?} has {} terms", image.len())));
                }
                let (target, c) = image.iter().next().unwrap();
                // w with e_omega . T_w = v^l(w) e_k, and w_lambda its W_lambda-part
                let (_, word) = sort_word(k);
                let w = WindowPerm::from_word(self.r, 0, &word)?;
                let (w_lambda, _) = crate::weyl::coset_decompose(&w, &pl);
                down.push(ExponentRecord {
                    weight: lambda.clone(),
                    source: k.clone(),
                    target: target.clone(),
                    exponent: monomial_exponent(c)?,
                    length: w_lambda.length(),
                });
            }
            let image = self.up_key(&lambda, &lambda.block_key());
            for (target, c) in image.iter() {
                let (_, word) = sort_word(target);
                up.push(ExponentRecord {
                    weight: lambda.clone(),
                    source: lambda.block_key(),
                    target: target.clone(),
                    exponent: monomial_exponent(c)?,
                    length: word.len(),
                });
            }
        }
        Ok((down, up))
    }
}

fn monomial_exponent(c: &LaurentPoly) -> Result<i32> {
    if c.len() == 1 && c.coeff(c.min_exp().unwrap()) == BigInt::from(1) {
        Ok(c.min_exp().unwrap())
    } else {
        Err(Error::Expansion(format!("coefficient {c} is not a power of v")))
    }
}

/// Permutations of `1..=r` as keys.
pub fn permutations(r: usize) -> Vec<Key> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for p in &out {
            for t in 1..=r as i64 {
                if !p.contains(&t) {
                    let mut p2 = p.clone();
                    p2.push(t);
                    next.push(p2);
                }
            }
        }
        out = next;
    }
    out
}

fn compare_keys(
    name: &str,
    keys: &[Key],
    mut lhs: impl FnMut(&Key) -> Result<Combination<Key>>,
    mut rhs: impl FnMut(&Key) -> Result<Combination<Key>>,
) -> Check {
    let mut check = Check::new(name);
    for k in keys {
        match (lhs(k), rhs(k)) {
            (Ok(a), Ok(b)) => {
                let ok = a == b;
                check.record(ok, || format!("e{k:?}: {a:?} != {b:?}"));
            }
            (Err(e), _) | (_, Err(e)) => check.record(false, || format!("e{k:?}: error {e}")),
        }
    }
    check
}

fn right_op(d: &Duality, g: RightGen) -> impl Fn(&Combination<Key>) -> Combination<Key> + '_ {
    move |x| d.right_comb(x, g)
}

fn y_shift(d: &Duality, t: usize, e: i64) -> impl Fn(&Combination<Key>) -> Combination<Key> + '_ {
    let n = d.n as i64;
    move |x| {
        x.map_keys(|k| {
            let mut k2 = k.clone();
            k2[t - 1] -= n * e;
            k2
        })
    }
}

/// Options for [`verify_affine_duality`].
#[derive(Clone, Debug)]
pub struct DualityOptions {
    pub n: usize,
    pub r: usize,
    /// Length bound for `tau` injectivity and the q-tensor basis.
    pub len_bound: usize,
    pub rho_bound: i64,
    /// Entries `-window..=window`.
    pub window: i64,
    pub kappa_samples: usize,
    pub seed: u64,
}

impl DualityOptions {
    pub fn new(n: usize, r: usize) -> Self {
        Self { n, r, len_bound: 3, rho_bound: 2, window: 2 * n as i64, kappa_samples: 30, seed: 0 }
    }
}

/// The duality checks on an index window.
pub fn verify_affine_duality(opts: &DualityOptions) -> Result<Report> {
    let d = Arc::new(Duality::new(opts.n, opts.r)?);
    let (n, r) = (opts.n, opts.r);
    let keys = window_keys(r, -opts.window, opts.window);
    let basis = |k: &Key| Combination::basis(k.clone());
    let mut report = Report::new("duality")
        .param("n", n)
        .param("r", r)
        .param("len", opts.len_bound)
        .param("window", opts.window)
        .param("rho_bound", opts.rho_bound)
        .param("seed", opts.seed);
    let letters = generators(n);
    let mut right_gens: Vec<RightGen> = (1..=r).map(RightGen::S).collect();
    right_gens.extend([RightGen::Rho, RightGen::RhoInv]);
    let act_u = |l: Letter, x: &Combination<Key>| x.apply_linear(|k| act_letter_on_key(l, k, n));

    // (a) commuting actions
    let mut check = Check::new("U generators commute with right Hecke generators");
    for &l in &letters {
        for &g in &right_gens {
            check.merge(compare_keys(
                "",
                &keys,
                |k| Ok(d.right_comb(&act_u(l, &basis(k)), g)),
                |k| Ok(act_u(l, &d.right_key(k, g))),
            ));
        }
    }
    report.push(check);

    let mut check = Check::new("y_t commutes with U generators");
    for &l in &letters {
        for t in 1..=r {
            let y = y_shift(&d, t, 1);
            check.merge(compare_keys("", &keys, |k| Ok(y(&act_u(l, &basis(k)))), |k| Ok(act_u(l, &y(&basis(k))))));
        }
    }
    report.push(check);

    let mut check = Check::new("y-rewriting is order independent");
    for i in 1..r {
        check.merge(compare_keys(
            "",
            &keys,
            |k| Ok(d.sigma_key(k, i, RewriteOrder::ZFirst)),
            |k| Ok(d.sigma_key(k, i, RewriteOrder::YFirst)),
        ));
    }
    report.push(check);

    // Bernstein y_t in the T-basis acts as the shift y_t.
    let mut check = Check::new("Bernstein y_t acts as the shift y_t");
    for t in 1..=r {
        let y = d.bernstein.y(t).clone();
        let yi = d.bernstein.y_inverse(t).clone();
        let (sp, sm) = (y_shift(&d, t, 1), y_shift(&d, t, -1));
        check.merge(compare_keys("", &keys, |k| Ok(hecke_on(&d, &basis(k), &y)), |k| Ok(sp(&basis(k)))));
        check.merge(compare_keys("", &keys, |k| Ok(hecke_on(&d, &basis(k), &yi)), |k| Ok(sm(&basis(k)))));
    }
    report.push(check);

    // (c) the Bernstein relations as right operators
    for c in bernstein_relations(&d, &keys) {
        report.push(c);
    }
    for c in lemma_checks(&d)? {
        report.push(c);
    }

    // tau
    for c in tau_checks(&d, opts, &keys)? {
        report.push(c);
    }

    // theta_iso
    for c in theta_checks(&d, opts)? {
        report.push(c);
    }

    // (d) kappa on sampled products
    report.push(kappa_products(&d, opts, &keys)?);

    let (down, up) = d.normalization_exponents()?;
    for (label, records, factor) in [("f", &down, 2), ("g", &up, 1)] {
        let mut by_weight: BTreeMap<&Weight, BTreeSet<i64>> = BTreeMap::new();
        for rec in records.iter() {
            by_weight.entry(&rec.weight).or_default().insert(rec.exponent as i64 - factor * rec.length as i64);
        }
        for (w, offsets) in by_weight {
            report.note(format!("{label}({w}) candidates (exponent - {factor} l): {offsets:?}"));
        }
    }

    // x_omega T_{s_r} is one basis key; its image in tensor space is not
    let s_r = QTensorElement::basis(d.omega(), &WindowPerm::gen_s(d.r, d.r)?)?;
    let image = d.theta_iso(&s_r)?;
    report.note(format!(
        "theta_iso(x_omega T_s{}) has {} term(s): {}",
        d.r,
        image.len(),
        image.terms().iter().map(|(k, c)| format!("({c}) {k:?}")).collect::<Vec<_>>().join(" + ")
    ));
    Ok(report)
}

fn hecke_on(d: &Duality, x: &Combination<Key>, h: &HeckeElement) -> Combination<Key> {
    let mut out = Combination::zero();
    for (w, c) in h.terms().iter() {
        out.add_scaled(&d.right_t_comb(x, w), c);
    }
    out
}

fn bernstein_relations(d: &Duality, keys: &[Key]) -> Vec<Check> {
    let r = d.r;
    let basis = |k: &Key| Combination::basis(k.clone());
    let q = LaurentPoly::q();
    let qinv = LaurentPoly::q_pow(-1);
    let s = |i| right_op(d, RightGen::S(i));
    // sigma^-1 = q^-1 sigma - (1 - q^-1)
    let s_inv = |i: usize, x: &Combination<Key>| {
        let mut out = d.right_comb(x, RightGen::S(i)).scale(&qinv);
        out.add_scaled(x, &(&qinv - &LaurentPoly::one()));
        out
    };
    let mut out = Vec::new();

    let mut c = Check::new("relation (1) sigma sigma^-1 = 1");
    for i in 1..r {
        c.merge(compare_keys("", keys, |k| Ok(s_inv(i, &s(i)(&basis(k)))), |k| Ok(basis(k))));
        c.merge(compare_keys("", keys, |k| Ok(s(i)(&s_inv(i, &basis(k)))), |k| Ok(basis(k))));
    }
    out.push(c);

    let mut c = Check::new("relation (2) braid");
    for i in 1..r.saturating_sub(1) {
        c.merge(compare_keys(
            "",
            keys,
            |k| Ok(s(i)(&s(i + 1)(&s(i)(&basis(k))))),
            |k| Ok(s(i + 1)(&s(i)(&s(i + 1)(&basis(k))))),
        ));
    }
    out.push(c);

    let mut c = Check::new("relation (3) distant sigma commute");
    for i in 1..r {
        for j in i + 2..r {
            c.merge(compare_keys("", keys, |k| Ok(s(j)(&s(i)(&basis(k)))), |k| Ok(s(i)(&s(j)(&basis(k))))));
        }
    }
    out.push(c);

    let mut c = Check::new("relation (4) (sigma + 1)(sigma - q) = 0");
    for i in 1..r {
        c.merge(compare_keys(
            "",
            keys,
            |k| {
                let x = basis(k);
                let a = &s(i)(&x) + &x;
                let mut b = s(i)(&a);
                b.add_scaled(&a, &-&q);
                Ok(b)
            },
            |_| Ok(Combination::zero()),
        ));
    }
    out.push(c);

    let mut c = Check::new("relation (5) y y^-1 = 1");
    for t in 1..=r {
        let (yp, ym) = (y_shift(d, t, 1), y_shift(d, t, -1));
        c.merge(compare_keys("", keys, |k| Ok(ym(&yp(&basis(k)))), |k| Ok(basis(k))));
        c.merge(compare_keys("", keys, |k| Ok(yp(&ym(&basis(k)))), |k| Ok(basis(k))));
    }
    out.push(c);

    let mut c = Check::new("relation (6) y_j y_k = y_k y_j");
    for a in 1..=r {
        for b in a + 1..=r {
            let (ya, yb) = (y_shift(d, a, 1), y_shift(d, b, 1));
            c.merge(compare_keys("", keys, |k| Ok(yb(&ya(&basis(k)))), |k| Ok(ya(&yb(&basis(k))))));
        }
    }
    out.push(c);

    let mut c = Check::new("relation (7) y_j sigma_i = sigma_i y_j");
    for i in 1..r {
        for j in (1..=r).filter(|&j| j != i && j != i + 1) {
            let y = y_shift(d, j, 1);
            // right operators: x . (y_j sigma_i) = (x . y_j) . sigma_i
            c.merge(compare_keys("", keys, |k| Ok(s(i)(&y(&basis(k)))), |k| Ok(y(&s(i)(&basis(k))))));
        }
    }
    out.push(c);

    let mut c = Check::new("relation (8) sigma_i y_i sigma_i = q y_{i+1}");
    for i in 1..r {
        let (yi, yj) = (y_shift(d, i, 1), y_shift(d, i + 1, 1));
        c.merge(compare_keys("", keys, |k| Ok(s(i)(&yi(&s(i)(&basis(k))))), |k| Ok(yj(&basis(k)).scale(&q))));
    }
    out.push(c);
    out
}

/// The Hecke-element forms on the special `V_omega` keys and as identities in `H`.
fn lemma_checks(d: &Duality) -> Result<Vec<Check>> {
    let r = d.r;
    let b = &d.bernstein;
    let q = LaurentPoly::q();
    let mut out = Vec::new();
    let perms = permutations(r);

    let mut c = Check::new("T_{s_i} y_i T_{s_i} = v^2 y_{i+1} on special keys");
    let mut c_alg = Check::new("T_{s_i} y_i T_{s_i} = v^2 y_{i+1} in H");
    for i in 1..r {
        let t = HeckeElement::t_s(r, i)?;
        let lhs = &(&t * b.y(i)) * &t;
        let rhs = b.y(i + 1).scale(&q);
        c_alg.record(lhs == rhs, || format!("i = {i}"));
        for k in perms.iter().filter(|k| k[i - 1] == r as i64 - 1 && k[i] == r as i64) {
            let x = Combination::basis(k.clone());
            let a = hecke_on(d, &x, &lhs);
            let bb = y_shift(d, i + 1, 1)(&x).scale(&q);
            c.record(a == bb, || format!("i = {i}, e{k:?}: {a:?} != {bb:?}"));
        }
    }
    out.push(c);
    out.push(c_alg);

    let mut c = Check::new("y_j T_{s_i} = T_{s_i} y_j on special keys");
    let mut c_alg = Check::new("y_j T_{s_i} = T_{s_i} y_j in H");
    for i in 1..r {
        let t = HeckeElement::t_s(r, i)?;
        for j in (1..=r).filter(|&j| j != i && j != i + 1) {
            let lhs = b.y(j) * &t;
            let rhs = &t * b.y(j);
            c_alg.record(lhs == rhs, || format!("i = {i}, j = {j}"));
            let special = perms
                .iter()
                .filter(|k| k[i - 1] == r as i64 - 2 && k[i] == r as i64 - 1 && k[j - 1] == r as i64);
            for k in special {
                let x = Combination::basis(k.clone());
                let (a, bb) = (hecke_on(d, &x, &lhs), hecke_on(d, &x, &rhs));
                c.record(a == bb, || format!("i = {i}, j = {j}, e{k:?}"));
            }
        }
    }
    out.push(c);
    out.push(c_alg);
    Ok(out)
}

fn tau_checks(d: &Arc<Duality>, opts: &DualityOptions, keys: &[Key]) -> Result<Vec<Check>> {
    let r = d.r;
    let omega_keys: Vec<Key> = keys.iter().filter(|k| weight_parts(k, d.n) == d.omega.parts()).cloned().collect();
    let mut out = Vec::new();
    let t = |g| d.tau(g);
    let q = LaurentPoly::q();

    let mut c = Check::new("tau satisfies the Hecke relations on V_omega");
    for i in 1..=r {
        let s = t(RightGen::S(i))?;
        let quad = &s.compose(&s);
        let rhs = s.scale(&LaurentPoly::q_minus_one()).add(&projection(&d.omega).scale(&q));
        c.merge(compare_keys("", &omega_keys, |k| quad.apply_key(k), |k| rhs.apply_key(k)));
        let j = i % r + 1;
        let sj = t(RightGen::S(j))?;
        let (a, b) = (s.compose(&sj).compose(&s), sj.compose(&s).compose(&sj));
        c.merge(compare_keys("", &omega_keys, |k| a.apply_key(k), |k| b.apply_key(k)));
        let conj = t(RightGen::Rho)?.compose(&sj).compose(&t(RightGen::RhoInv)?);
        c.merge(compare_keys("", &omega_keys, |k| conj.apply_key(k), |k| s.apply_key(k)));
    }
    let rr = t(RightGen::Rho)?.compose(&t(RightGen::RhoInv)?);
    c.merge(compare_keys("", &omega_keys, |k| rr.apply_key(k), |k| Ok(Combination::basis(k.clone()))));
    out.push(c);

    let elems = enumerate_up_to_length(r, opts.len_bound, true, opts.rho_bound)?;
    let e = d.e_omega();
    let mut images = Vec::new();
    let mut c = Check::new("tau(T_w) e_omega = e_omega . T_w");
    for w in &elems {
        let a = d.tau_t(w)?.apply(&e)?;
        let b = d.hecke_right_action(&e, &HeckeElement::t_basis(w))?;
        c.record(a == b, || format!("w = {w}: {a} != {b}"));
        images.push(a.terms().clone());
    }
    out.push(c);

    let mut c = Check::new("tau injective (exact rank)");
    let rank = rank_at(&images, &BigRational::new(BigInt::from(5), BigInt::from(3)));
    c.record(rank == images.len(), || format!("rank {rank} < {}", images.len()));
    out.push(c);

    let mut c = Check::new("tau at v = 1 permutes indices");
    for w in &elems {
        let a = d.tau_t(w)?.apply(&e)?;
        let at_one = a.terms().specialize_v1();
        // window period r, tensor period n
        let target: Key = (1..=r as i64)
            .map(|t| {
                let x = w.apply_inverse(t);
                let k = (x - 1).rem_euclid(r as i64) + 1;
                k + (x - k) / r as i64 * d.n as i64
            })
            .collect();
        let nonzero: Vec<_> = at_one.iter().filter(|(_, c)| **c != BigInt::from(0)).collect();
        let ok = nonzero.len() == 1 && *nonzero[0].0 == target && *nonzero[0].1 == BigInt::from(1);
        c.record(ok, || format!("w = {w}: {at_one:?}, expected e{target:?}"));
    }
    out.push(c);
    Ok(out)
}

fn qtensor_basis(d: &Duality, opts: &DualityOptions) -> Result<Vec<QTensorElement>> {
    let elems = enumerate_up_to_length(d.r, opts.len_bound, true, opts.rho_bound)?;
    let mut out = Vec::new();
    for lambda in Weight::all(d.n, d.r)? {
        let pl = lambda.young_parabolic();
        for w in elems.iter().filter(|w| is_distinguished(w, &pl)) {
            out.push(QTensorElement::basis(&lambda, w)?);
        }
    }
    Ok(out)
}

/// Generators of the Schur algebra used for the intertwining check.
fn schur_generators(d: &Duality) -> Result<Vec<SchurElement>> {
    let (n, r) = (d.n, d.r);
    let om = &d.omega;
    let mut out = Vec::new();
    let e = WindowPerm::identity(r)?;
    for lambda in Weight::all(n, r)? {
        out.push(SchurElement::phi(&lambda, &lambda, &e)?);
        if lambda != *om {
            out.push(SchurElement::phi(&lambda, om, &e)?);
            out.push(SchurElement::phi(om, &lambda, &e)?);
        }
    }
    out.push(SchurElement::phi(om, om, &WindowPerm::gen_s(r, 1)?)?);
    out.push(SchurElement::phi(om, om, &WindowPerm::gen_rho(r, 1)?)?);
    out.push(SchurElement::phi(om, om, &WindowPerm::gen_rho(r, -1)?)?);
    Ok(out)
}

fn theta_checks(d: &Arc<Duality>, opts: &DualityOptions) -> Result<Vec<Check>> {
    let r = d.r;
    let basis = qtensor_basis(d, opts)?;
    let mut hecke_gens: Vec<(String, HeckeElement)> =
        (1..=r).map(|i| (format!("T_s{i}"), HeckeElement::t_s(r, i).unwrap())).collect();
    hecke_gens.push(("T_rho".into(), HeckeElement::t_rho(r, 1)?));
    hecke_gens.push(("T_rho^-1".into(), HeckeElement::t_rho(r, -1)?));
    let gens = schur_generators(d)?;

    let mut right = Check::new("theta_iso intertwines the Hecke actions");
    let mut left = Check::new("theta_iso intertwines the Schur actions");
    let mut images = Vec::new();
    for x in &basis {
        let tx = d.theta_iso(x)?;
        images.push(tx.terms().clone());
        for (name, h) in &hecke_gens {
            let a = d.theta_iso(&x.act_hecke_right(h)?)?;
            let b = d.hecke_right_action(&tx, h)?;
            right.record(a == b, || format!("{x:?} . {name}: {a} != {b}"));
        }
        let lambda = &x.terms().keys().next().unwrap().lambda;
        for g in gens.iter().filter(|g| g.terms().keys().all(|k| k.mu == *lambda)) {
            let a = d.theta_iso(&x.act_schur_left(g)?)?;
            let b = d.kappa(g)?.apply(&tx)?;
            left.record(a == b, || format!("{g:?} on {x:?}: {a} != {b}"));
        }
    }
    let mut inj = Check::new("theta_iso injective (exact rank)");
    let rank = rank_at(&images, &BigRational::new(BigInt::from(5), BigInt::from(3)));
    inj.record(rank == images.len(), || format!("rank {rank} < {}", images.len()));

    let mut omega_case = Check::new("theta_iso(x_omega T_w) = e_omega . T_w");
    let e = d.e_omega();
    for x in basis.iter().filter(|x| x.terms().keys().all(|k| k.lambda == d.omega)) {
        let w = &x.terms().keys().next().unwrap().d;
        let a = d.theta_iso(x)?;
        let b = d.hecke_right_action(&e, &HeckeElement::t_basis(w))?;
        omega_case.record(a == b, || format!("w = {w}"));
    }
    Ok(vec![omega_case, right, left, inj])
}

fn kappa_products(d: &Arc<Duality>, opts: &DualityOptions, keys: &[Key]) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let weights = Weight::all(d.n, d.r)?;
    let elems = enumerate_up_to_length(d.r, 2, true, 1)?;
    let mut check = Check::new("kappa respects sampled products");
    let mut attempts = 0;
    while check.cases < opts.kappa_samples && attempts < 100 * opts.kappa_samples.max(1) {
        attempts += 1;
        let (l, m, nu) = (
            weights.choose(&mut rng).unwrap(),
            weights.choose(&mut rng).unwrap(),
            weights.choose(&mut rng).unwrap(),
        );
        let d1 = elems.choose(&mut rng).unwrap();
        let d2 = elems.choose(&mut rng).unwrap();
        let (pl, pm, pn) = (l.young_parabolic(), m.young_parabolic(), nu.young_parabolic());
        if !is_double_distinguished(d1, &pl, &pm) || !is_double_distinguished(d2, &pm, &pn) {
            continue;
        }
        let a = SchurElement::phi_strict(l, m, d1)?;
        let b = SchurElement::phi_strict(m, nu, d2)?;
        let ab = a.mul(&b)?;
        let lhs = d.kappa(&a)?.compose(&d.kappa(&b)?);
        let rhs = d.kappa(&ab)?;
        let source: Vec<Key> = keys.iter().filter(|k| weight_parts(k, d.n) == nu.parts()).cloned().collect();
        let sub = compare_keys("", &source, |k| lhs.apply_key(k), |k| rhs.apply_key(k));
        check.record(sub.passed, || {
            format!("phi^{d1}_({l},{m}) phi^{d2}_({m},{nu}): {}", sub.witnesses.first().cloned().unwrap_or_default())
        });
    }
    if check.cases < opts.kappa_samples {
        check.fail(format!("only {} products sampled", check.cases));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::act_tensor;

    fn dual(n: usize, r: usize) -> Arc<Duality> {
        Arc::new(Duality::new(n, r).unwrap())
    }

    fn e(n: usize, key: &[i64]) -> TensorVector {
        TensorVector::basis(n, key.to_vec())
    }

    #[test]
    fn finite_action_examples() {
        let d = dual(3, 3);
        let x = d.finite_hecke_right_action(&e(3, &[2, 2, 1]), 1).unwrap();
        assert_eq!(x, TensorVector::term(3, vec![2, 2, 1], LaurentPoly::q()));
        let x = d.finite_hecke_right_action(&e(3, &[1, 2, 3]), 1).unwrap();
        assert_eq!(x, TensorVector::term(3, vec![2, 1, 3], LaurentPoly::v_pow(1)));
        assert!(d.finite_hecke_right_action(&e(3, &[0, 2, 3]), 1).is_err());
    }

    #[test]
    fn y_op_shifts() {
        let d = dual(3, 3);
        let y = d.y_op(1).unwrap();
        assert_eq!(y.apply(&e(3, &[1, 2, 3])).unwrap(), e(3, &[-2, 2, 3]));
        assert!(d.y_op(4).is_err());
    }

    #[test]
    fn tau_of_rho_for_n_equal_r_is_r_inverse() {
        let d = dual(3, 3);
        let u = d.tau_element(RightGen::Rho).unwrap();
        assert_eq!(u, UElement::letters(3, &[Letter::RInv]));
        let d = dual(4, 3);
        let u = d.tau_element(RightGen::RhoInv).unwrap();
        assert_eq!(u, UElement::letters(4, &[Letter::F(4), Letter::R]));
    }

    #[test]
    fn split_join_round_trip() {
        let d = dual(3, 3);
        for k in window_keys(3, -5, 5) {
            let (base, m) = d.split(&k);
            assert!(base.iter().all(|&t| (1..=3).contains(&t)));
            assert_eq!(d.join(&base, &m), k);
        }
    }

    #[test]
    fn rewriting_orders_agree() {
        for a in -3..=3 {
            for b in -3..=3 {
                let mut x = remainder_y_first(a, b);
                x -= &monomial_past_sigma(a, b);
                assert!(x.is_zero(), "({a}, {b})");
            }
        }
    }

    #[test]
    fn special_s_r_gives_two_terms() {
        let d = dual(3, 3);
        let x = d.right_generator(&d.e_omega(), RightGen::S(3)).unwrap();
        assert_eq!(x.len(), 2, "{x}");
    }

    #[test]
    fn s_r_formula_matches_rho_conjugate_when_n_equals_r() {
        let d = dual(3, 3);
        let direct = TensorOperator::from_u(&d.tau_element(RightGen::S(3)).unwrap(), 3);
        let conj = d.tau_element(RightGen::Rho).unwrap();
        let conj = conj.mul(&d.tau_element(RightGen::S(1)).unwrap()).mul(&d.tau_element(RightGen::RhoInv).unwrap());
        let conj = TensorOperator::from_u(&conj, 3);
        for k in window_keys(3, -3, 6).into_iter().filter(|k| weight_parts(k, 3) == vec![1, 1, 1]) {
            assert_eq!(direct.apply_key(&k).unwrap(), conj.apply_key(&k).unwrap(), "{k:?}");
        }
    }

    #[test]
    fn s_r_literal_formula_is_degenerate_when_n_exceeds_r() {
        let d = dual(4, 3);
        let literal = &UElement::letters(4, &[Letter::F(3), Letter::E(3)]).scale(&LaurentPoly::v_pow(1)) - &UElement::one(4);
        let x = act_tensor(&literal, &d.e_omega()).unwrap();
        assert_eq!(x, d.e_omega().scale(&LaurentPoly::constant(-1)));
        let x = d.tau(RightGen::S(3)).unwrap().apply(&d.e_omega()).unwrap();
        assert_eq!(x, d.right_generator(&d.e_omega(), RightGen::S(3)).unwrap());
    }

    #[test]
    fn small_duality_run() {
        let mut opts = DualityOptions::new(3, 3);
        opts.window = 3;
        opts.len_bound = 1;
        opts.rho_bound = 1;
        opts.kappa_samples = 3;
        let report = verify_affine_duality(&opts).unwrap();
        assert!(report.passed, "{report}");
    }
}
