//! The extended affine Weyl group of period `r`, realised as periodic
//! permutations of the integers in window notation.
//!
//! Permutations act on the right: `(t)(uw) = ((t)u)w`, so `compose(u, w)`
//! applies `u` first. Left multiplication by `s_i` swaps window positions
//! `i, i+1`; right multiplication by `s_i` swaps the values in residue
//! classes `i, i+1`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the extended affine Weyl group, stored as its window
/// `((1)w, ..., (r)w)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WindowJson", into = "WindowJson")]
pub struct WindowPerm {
    window: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    r: usize,
    window: Vec<i64>,
}

impl TryFrom<WindowJson> for WindowPerm {
    type Error = Error;
    fn try_from(json: WindowJson) -> Result<Self> {
        if json.window.len() != json.r {
            return Err(Error::InvalidWindow {
                window: json.window,
                reason: format!("window length does not match r = {}", json.r),
            });
        }
        WindowPerm::new(json.window)
    }
}

impl From<WindowPerm> for WindowJson {
    fn from(w: WindowPerm) -> Self {
        WindowJson { r: w.r(), window: w.window }
    }
}

/// Representative of `t` modulo `r` in `1..=r`.
pub fn residue(t: i64, r: usize) -> usize {
    ((t - 1).rem_euclid(r as i64) + 1) as usize
}

fn check_period(r: usize) -> Result<()> {
    if r < 3 {
        Err(Error::PeriodTooSmall(r))
    } else {
        Ok(())
    }
}

impl WindowPerm {
    /// Validates a window: `r >= 3` and the entries hit every residue class
    /// mod `r` exactly once.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let r = window.len();
        check_period(r)?;
        let mut seen = vec![false; r];
        for &x in &window {
            let a = residue(x, r) - 1;
            if seen[a] {
                return Err(Error::InvalidWindow {
                    window,
                    reason: format!("two entries are congruent to {} mod {r}", a + 1),
                });
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    pub fn identity(r: usize) -> Result<Self> {
        check_period(r)?;
        Ok(Self { window: (1..=r as i64).collect() })
    }

    /// The Coxeter generator `s_i`, `1 <= i <= r`.
    pub fn gen_s(r: usize, i: usize) -> Result<Self> {
        check_period(r)?;
        if i == 0 || i > r {
            return Err(Error::IndexOutOfRange { index: i, r });
        }
        Ok(Self::identity(r)?.mul_s_right(i))
    }

    /// `rho^z`, the shift `t -> t + z`.
    pub fn gen_rho(r: usize, z: i64) -> Result<Self> {
        check_period(r)?;
        Ok(Self { window: (1..=r as i64).map(|t| t + z).collect() })
    }

    pub fn r(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&x, t)| x == t)
    }

    /// `(t)w`.
    pub fn apply(&self, t: i64) -> i64 {
        let r = self.r() as i64;
        let k = (t - 1).div_euclid(r);
        let a = (t - 1).rem_euclid(r) as usize;
        self.window[a] + k * r
    }

    /// `(t)w^-1`.
    pub fn apply_inverse(&self, t: i64) -> i64 {
        let a = residue(t, self.r());
        let (pos, &x) = self
            .window
            .iter()
            .enumerate()
            .find(|(_, &x)| residue(x, self.r()) == a)
            .expect("window has a complete residue system");
        pos as i64 + 1 + (t - x)
    }

    /// `u w`, applying `u` first.
    pub fn compose(&self, w: &WindowPerm) -> Result<WindowPerm> {
        if self.r() != w.r() {
            return Err(Error::PeriodMismatch(self.r(), w.r()));
        }
        Ok(WindowPerm { window: self.window.iter().map(|&x| w.apply(x)).collect() })
    }

    /// Like [`compose`](Self::compose) for operands already known to share a period.
    pub fn then(&self, w: &WindowPerm) -> WindowPerm {
        self.compose(w).expect("period mismatch")
    }

    pub fn inverse(&self) -> WindowPerm {
        let r = self.r();
        let mut window = vec![0; r];
        for (t, &x) in self.window.iter().enumerate() {
            let a = residue(x, r);
            let k = (x - a as i64) / r as i64;
            window[a - 1] = t as i64 + 1 - k * r as i64;
        }
        WindowPerm { window }
    }

    /// `w s_i`: values in classes `i` and `i+1` are exchanged.
    pub fn mul_s_right(&self, i: usize) -> WindowPerm {
        let r = self.r();
        let next = i % r + 1;
        let window = self
            .window
            .iter()
            .map(|&x| {
                let a = residue(x, r);
                if a == i {
                    x + 1
                } else if a == next {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        WindowPerm { window }
    }

    /// `s_i w`: positions `i` and `i+1` are exchanged.
    pub fn mul_s_left(&self, i: usize) -> WindowPerm {
        let r = self.r();
        let mut window = self.window.clone();
        if i < r {
            window.swap(i - 1, i);
        } else {
            let first = window[0];
            window[0] = window[r - 1] - r as i64;
            window[r - 1] = first + r as i64;
        }
        WindowPerm { window }
    }

    /// `rho^z w`.
    pub fn mul_rho_left(&self, z: i64) -> WindowPerm {
        WindowPerm { window: (1..=self.r() as i64).map(|t| self.apply(t + z)).collect() }
    }

    /// `w rho^z`.
    pub fn mul_rho_right(&self, z: i64) -> WindowPerm {
        WindowPerm { window: self.window.iter().map(|&x| x + z).collect() }
    }

    /// Number of crossings: pairs `i < j` with `1 <= i <= r`, `(i)w > (j)w`.
    pub fn length(&self) -> usize {
        let r = self.r() as i64;
        let mut count = 0i64;
        for i in 1..=r {
            let wi = self.window[(i - 1) as usize];
            for jp in 1..=r {
                let wj = self.window[(jp - 1) as usize];
                // j = jp + k r with j > i and (j)w = wj + k r < wi
                let k_min = (i - jp).div_euclid(r) + 1;
                let k_max = -((wj - wi).div_euclid(r)) - 1;
                if k_max >= k_min {
                    count += k_max - k_min + 1;
                }
            }
        }
        count as usize
    }

    /// `l(s_i w) < l(w)`, i.e. `(i)w > (i+1)w`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.apply(i as i64) > self.apply(i as i64 + 1)
    }

    /// `l(w s_i) < l(w)`, i.e. `(i)w^-1 > (i+1)w^-1`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        self.apply_inverse(i as i64) > self.apply_inverse(i as i64 + 1)
    }

    pub fn left_descents(&self) -> BTreeSet<usize> {
        (1..=self.r()).filter(|&i| self.is_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> BTreeSet<usize> {
        (1..=self.r()).filter(|&i| self.is_right_descent(i)).collect()
    }

    fn window_sum(&self) -> i64 {
        self.window.iter().sum()
    }

    /// The exponent `z` in `w = rho^z c`, `c` in the Coxeter group.
    pub fn rho_power(&self) -> i64 {
        let r = self.r() as i64;
        (self.window_sum() - r * (r + 1) / 2) / r
    }

    /// Membership in the (non-extended) affine Weyl group.
    pub fn is_coxeter(&self) -> bool {
        self.rho_power() == 0
    }

    /// `w = rho^z c` with `c` in the Coxeter group.
    pub fn rho_decompose(&self) -> (i64, WindowPerm) {
        let z = self.rho_power();
        (z, self.mul_rho_left(-z))
    }

    /// `w = rho^z s_{i_1} ... s_{i_m}` with `m = l(w)`.
    pub fn reduced_word(&self) -> (i64, Vec<usize>) {
        let (z, mut c) = self.rho_decompose();
        let mut word = Vec::with_capacity(c.length());
        while let Some(i) = (1..=c.r()).find(|&i| c.is_right_descent(i)) {
            c = c.mul_s_right(i);
            word.push(i);
        }
        debug_assert!(c.is_identity());
        word.reverse();
        (z, word)
    }

    /// Rebuilds `rho^z s_{i_1} ... s_{i_m}`.
    pub fn from_word(r: usize, z: i64, word: &[usize]) -> Result<WindowPerm> {
        let mut w = Self::gen_rho(r, z)?;
        for &i in word {
            if i == 0 || i > r {
                return Err(Error::IndexOutOfRange { index: i, r });
            }
            w = w.mul_s_right(i);
        }
        Ok(w)
    }

    /// `w = f z_t` with `f` a permutation of `1..=r` (one-line notation,
    /// `f[t-1] = (t)f`) and `z_t` the translation adding `r * t[a-1]` to
    /// class `a`.
    pub fn semidirect_decompose(&self) -> (Vec<usize>, Vec<i64>) {
        let r = self.r();
        let mut f = vec![0; r];
        let mut t = vec![0; r];
        for (pos, &x) in self.window.iter().enumerate() {
            let a = residue(x, r);
            f[pos] = a;
            t[a - 1] = (x - a as i64) / r as i64;
        }
        (f, t)
    }

    pub fn from_semidirect(f: &[usize], t: &[i64]) -> Result<WindowPerm> {
        if f.len() != t.len() {
            return Err(Error::PeriodMismatch(f.len(), t.len()));
        }
        let r = f.len();
        let window = f.iter().map(|&a| a as i64 + r as i64 * t[a - 1]).collect();
        WindowPerm::new(window)
    }

    /// The translation adding `r * t[a-1]` to every integer in class `a`.
    pub fn translation(t: &[i64]) -> Result<WindowPerm> {
        let f: Vec<usize> = (1..=t.len()).collect();
        Self::from_semidirect(&f, t)
    }
}

impl fmt::Display for WindowPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.window.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for WindowPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Strong Bruhat order, extended by `rho^a y <= rho^b w` iff `a = b` and
/// `y <= w`.
pub fn bruhat_leq(y: &WindowPerm, w: &WindowPerm) -> Result<bool> {
    if y.r() != w.r() {
        return Err(Error::PeriodMismatch(y.r(), w.r()));
    }
    let (a, y0) = y.rho_decompose();
    let (b, w0) = w.rho_decompose();
    if a != b {
        return Ok(false);
    }
    let mut memo = HashMap::new();
    Ok(coxeter_bruhat_leq(&y0, &w0, &mut memo))
}

// Lifting property: for a right descent s of w, y <= w iff min(y, ys) <= ws.
fn coxeter_bruhat_leq(
    y: &WindowPerm,
    w: &WindowPerm,
    memo: &mut HashMap<(WindowPerm, WindowPerm), bool>,
) -> bool {
    let (ly, lw) = (y.length(), w.length());
    if ly > lw {
        return false;
    }
    if lw == 0 {
        return y == w;
    }
    if ly == lw {
        return y == w;
    }
    if let Some(&hit) = memo.get(&(y.clone(), w.clone())) {
        return hit;
    }
    let s = (1..=w.r()).find(|&i| w.is_right_descent(i)).expect("nonidentity has a descent");
    let ws = w.mul_s_right(s);
    let result = if y.is_right_descent(s) {
        coxeter_bruhat_leq(&y.mul_s_right(s), &ws, memo)
    } else {
        coxeter_bruhat_leq(y, &ws, memo)
    };
    memo.insert((y.clone(), w.clone()), result);
    result
}

/// All elements of the Bruhat interval below `w` (same rho-power).
pub fn bruhat_lower_ideal(w: &WindowPerm) -> Vec<WindowPerm> {
    let (z, word) = w.reduced_word();
    let mut set: HashSet<WindowPerm> = HashSet::new();
    set.insert(WindowPerm::gen_rho(w.r(), z).expect("valid period"));
    for &i in &word {
        let extended: Vec<WindowPerm> = set.iter().map(|x| x.mul_s_right(i)).collect();
        set.extend(extended);
    }
    let mut out: Vec<WindowPerm> = set.into_iter().collect();
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out
}

/// Elements of the Coxeter group of length at most `max_len`, or with
/// `extended`, all `rho^z c` for `|z| <= rho_bound`. Sorted by
/// (rho-power, length, window).
pub fn enumerate_up_to_length(r: usize, max_len: usize, extended: bool, rho_bound: i64) -> Result<Vec<WindowPerm>> {
    let e = WindowPerm::identity(r)?;
    let mut seen: HashSet<WindowPerm> = HashSet::from([e.clone()]);
    let mut layer = vec![e];
    let mut all = layer.clone();
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 1..=r {
                let x = w.mul_s_right(i);
                if x.length() == len && seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = if extended {
        let mut out = Vec::with_capacity(all.len() * (2 * rho_bound as usize + 1));
        for z in -rho_bound..=rho_bound {
            out.extend(all.iter().map(|c| c.mul_rho_left(z)));
        }
        out
    } else {
        all
    };
    out.sort_by(|a, b| {
        a.rho_power()
            .cmp(&b.rho_power())
            .then(a.length().cmp(&b.length()))
            .then_with(|| a.cmp(b))
    });
    Ok(out)
}

/// A proper subset of the generators `{1..r}`, shifted by `t`: it
/// generates the finite parabolic subgroup `<s_{i+t} : i in members>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParabolicIndex {
    r: usize,
    members: BTreeSet<usize>,
    shift: i64,
}

impl ParabolicIndex {
    pub fn new(r: usize, members: impl IntoIterator<Item = usize>, shift: i64) -> Result<Self> {
        check_period(r)?;
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > r) {
            return Err(Error::IndexOutOfRange { index: bad, r });
        }
        if members.len() == r {
            return Err(Error::ImproperParabolic(r));
        }
        Ok(Self { r, members, shift })
    }

    pub fn empty(r: usize) -> Result<Self> {
        Self::new(r, [], 0)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The same subset shifted by a further `t`.
    pub fn shifted(&self, t: i64) -> Self {
        Self { shift: self.shift + t, ..self.clone() }
    }

    /// Generator indices after applying the shift.
    pub fn generators(&self) -> BTreeSet<usize> {
        self.members.iter().map(|&i| residue(i as i64 + self.shift, self.r)).collect()
    }

    /// All elements of the (finite) parabolic subgroup, sorted by length.
    pub fn elements(&self) -> Vec<WindowPerm> {
        type Cache = Mutex<HashMap<(usize, BTreeSet<usize>), Vec<WindowPerm>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let key = (self.r, self.generators());
        let cache = CACHE.get_or_init(Default::default);
        if let Some(hit) = cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let gens = key.1.clone();
        let e = WindowPerm::identity(self.r).expect("valid period");
        let mut seen = HashSet::from([e.clone()]);
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for &i in &gens {
                let x = w.mul_s_right(i);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut out: Vec<WindowPerm> = seen.into_iter().collect();
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        cache.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn contains(&self, w: &WindowPerm) -> bool {
        w.r() == self.r && coset_decompose(w, self).1.is_identity()
    }

    /// The unique element of maximal length.
    pub fn longest_element(&self) -> WindowPerm {
        let elements = self.elements();
        let top = elements.last().expect("group is nonempty").clone();
        debug_assert!(elements.iter().rev().skip(1).all(|w| w.length() < top.length()));
        top
    }

    /// Poincare polynomial `sum_w q^l(w)`.
    pub fn poincare(&self) -> crate::coeff::LaurentPoly {
        let mut p = crate::coeff::LaurentPoly::zero();
        for w in self.elements() {
            p += &crate::coeff::LaurentPoly::q_pow(w.length() as i32);
        }
        p
    }
}

/// `w = w_pi w^pi` with `w_pi` in the parabolic and `w^pi` distinguished;
/// lengths add.
pub fn coset_decompose(w: &WindowPerm, pi: &ParabolicIndex) -> (WindowPerm, WindowPerm) {
    let gens = pi.generators();
    let mut head = WindowPerm::identity(w.r()).expect("valid period");
    let mut tail = w.clone();
    while let Some(&i) = gens.iter().find(|&&i| tail.is_left_descent(i)) {
        tail = tail.mul_s_left(i);
        head = head.mul_s_right(i);
    }
    (head, tail)
}

/// Membership in the distinguished right coset representatives: `(t)w <
/// (t+1)w` for every generator `s_t` of the parabolic.
pub fn is_distinguished(w: &WindowPerm, pi: &ParabolicIndex) -> bool {
    pi.generators().iter().all(|&i| !w.is_left_descent(i))
}

/// Membership in the distinguished left coset representatives.
pub fn is_right_distinguished(w: &WindowPerm, pi: &ParabolicIndex) -> bool {
    pi.generators().iter().all(|&i| !w.is_right_descent(i))
}

/// The minimal-length element of the double coset `W_pi1 w W_pi2`.
pub fn double_coset_rep(w: &WindowPerm, left: &ParabolicIndex, right: &ParabolicIndex) -> WindowPerm {
    let (lg, rg) = (left.generators(), right.generators());
    let mut d = w.clone();
    loop {
        if let Some(&i) = lg.iter().find(|&&i| d.is_left_descent(i)) {
            d = d.mul_s_left(i);
        } else if let Some(&i) = rg.iter().find(|&&i| d.is_right_descent(i)) {
            d = d.mul_s_right(i);
        } else {
            return d;
        }
    }
}

pub fn is_double_distinguished(w: &WindowPerm, left: &ParabolicIndex, right: &ParabolicIndex) -> bool {
    is_distinguished(w, left) && is_right_distinguished(w, right)
}

/// Every element of `W_pi1 d W_pi2`.
pub fn double_coset_elements(d: &WindowPerm, left: &ParabolicIndex, right: &ParabolicIndex) -> Vec<WindowPerm> {
    let rights = right.elements();
    let mut set = HashSet::new();
    for u in left.elements() {
        let ud = u.then(d);
        for x in &rights {
            set.insert(ud.then(x));
        }
    }
    let mut out: Vec<WindowPerm> = set.into_iter().collect();
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out
}

/// The unique longest element `d^+` of the double coset of `d`.
pub fn longest_double_coset_elt(d: &WindowPerm, left: &ParabolicIndex, right: &ParabolicIndex) -> WindowPerm {
    let elements = double_coset_elements(d, left, right);
    let top = elements.last().expect("coset is nonempty").clone();
    let tied = elements.iter().filter(|w| w.length() == top.length()).count();
    assert_eq!(tied, 1, "double coset of {d} has {tied} elements of maximal length");
    top
}
