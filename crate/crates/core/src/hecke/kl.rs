//! Kazhdan-Lusztig polynomials `P_{y,w}` for the affine Weyl group, extended
//! to the extended group by `P_{rho^a y, rho^b w} = delta_{a,b} P_{y,w}`.
//! Polynomials are returned in `v` with only even exponents (`q = v^2`).

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::weyl::{bruhat_leq, bruhat_lower_ideal, WindowPerm};

type Pair = (WindowPerm, WindowPerm);

/// Memoized KL polynomials. Safe to share: lookups and fills lock the memo
/// only briefly.
#[derive(Default)]
pub struct KlTable {
    memo: Mutex<HashMap<Pair, LaurentPoly>>,
    ideals: Mutex<HashMap<WindowPerm, Vec<WindowPerm>>>,
}

impl KlTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `P_{y,w}` for `y, w` in the Coxeter group (rho-power zero).
    pub fn kl_polynomial(&self, y: &WindowPerm, w: &WindowPerm) -> Result<LaurentPoly> {
        if y.r() != w.r() {
            return Err(Error::PeriodMismatch(y.r(), w.r()));
        }
        if !y.is_coxeter() || !w.is_coxeter() {
            return Err(Error::Incompatible(format!("{y} and {w} must have rho-power zero")));
        }
        Ok(self.p(y, w))
    }

    /// `P` extended to the full group.
    pub fn kl_extended(&self, y: &WindowPerm, w: &WindowPerm) -> Result<LaurentPoly> {
        if y.r() != w.r() {
            return Err(Error::PeriodMismatch(y.r(), w.r()));
        }
        let (a, y0) = y.rho_decompose();
        let (b, w0) = w.rho_decompose();
        if a != b {
            return Ok(LaurentPoly::zero());
        }
        Ok(self.p(&y0, &w0))
    }

    /// Coefficient of `q^((l(w)-l(y)-1)/2)` in `P_{y,w}`; zero unless the
    /// length difference is odd.
    pub fn mu(&self, y: &WindowPerm, w: &WindowPerm) -> BigInt {
        let (ly, lw) = (y.length(), w.length());
        if lw <= ly || (lw - ly) % 2 == 0 {
            return BigInt::from(0);
        }
        self.p(y, w).coeff((lw - ly - 1) as i32)
    }

    fn lower_ideal(&self, w: &WindowPerm) -> Vec<WindowPerm> {
        if let Some(hit) = self.ideals.lock().unwrap().get(w) {
            return hit.clone();
        }
        let ideal = bruhat_lower_ideal(w);
        self.ideals.lock().unwrap().insert(w.clone(), ideal.clone());
        ideal
    }

    fn p(&self, x: &WindowPerm, w: &WindowPerm) -> LaurentPoly {
        if x == w {
            return LaurentPoly::one();
        }
        if x.length() >= w.length() || !bruhat_leq(x, w).expect("equal periods") {
            return LaurentPoly::zero();
        }
        let key = (x.clone(), w.clone());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let s = (1..=w.r()).find(|&i| w.is_left_descent(i)).expect("w is not the identity");
        let sw = w.mul_s_left(s);
        let sx = x.mul_s_left(s);
        let c = x.is_left_descent(s);
        let (e_sx, e_x) = if c { (0, 2) } else { (2, 0) };
        let mut out = self.p(&sx, &sw).shift(e_sx) + self.p(x, &sw).shift(e_x);
        let lw = w.length();
        for z in self.lower_ideal(&sw) {
            if z == sw || !z.is_left_descent(s) || z.length() < x.length() {
                continue;
            }
            let m = self.mu(&z, &sw);
            if m == BigInt::from(0) {
                continue;
            }
            let pxz = self.p(x, &z);
            if pxz.is_zero() {
                continue;
            }
            out -= &pxz.scale(&m).shift((lw - z.length()) as i32);
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }
}
