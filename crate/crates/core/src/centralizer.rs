//! Commutant of the Schur action on truncated q-tensor space.
//!
//! Unknown: a linear map `M` from the keys `x_lambda T_d` with `l(d) <= len`
//! into the span of keys with `l(d) <= out_len`. Equations: `M(g b) = g M(b)`
//! for every generator `g` and domain key `b` with `g b` inside the domain.
//! Everything is evaluated at `v := at`, so the solve is exact over `Q`.
//! Each solution is then compared with right multiplication by
//! `h = M(x_omega)`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::hecke::HeckeElement;
use crate::linalg::nullspace;
use crate::schur::{QTensorElement, QTensorKey, SchurElement, Weight};
use crate::weyl::{enumerate_up_to_length, is_distinguished, WindowPerm};

#[derive(Clone, Debug)]
pub struct CentralizerOutcome {
    pub domain: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub solutions: usize,
    pub failures: Vec<String>,
}

type Vector = BTreeMap<QTensorKey, BigRational>;

fn eval(x: &QTensorElement, at: &BigRational) -> Vector {
    x.terms().iter().map(|(k, c)| (k.clone(), c.eval(at))).filter(|(_, c)| !c.is_zero()).collect()
}

/// The generators `phi^1_{lambda,omega}`, `phi^1_{omega,lambda}`,
/// `phi^{s_i}_{omega,omega}` and `phi^{rho^+-1}_{omega,omega}`.
pub fn schur_generators(n: usize, r: usize) -> Result<Vec<(String, SchurElement)>> {
    let omega = Weight::omega(n, r)?;
    let e = WindowPerm::identity(r)?;
    let mut out = Vec::new();
    for lambda in Weight::all(n, r)?.into_iter().filter(|l| *l != omega) {
        out.push((format!("phi[{lambda},omega,e]"), SchurElement::phi(&lambda, &omega, &e)?));
        out.push((format!("phi[omega,{lambda},e]"), SchurElement::phi(&omega, &lambda, &e)?));
    }
    for i in 1..=r {
        out.push((format!("phi[omega,omega,s{i}]"), SchurElement::phi(&omega, &omega, &WindowPerm::gen_s(r, i)?)?));
    }
    for z in [1, -1] {
        out.push((format!("phi[omega,omega,rho^{z}]"), SchurElement::phi(&omega, &omega, &WindowPerm::gen_rho(r, z)?)?));
    }
    Ok(out)
}

/// Solves the commutant system at `v := at`. The weight idempotents are
/// imposed by keeping `M` block diagonal in `lambda`.
pub fn double_centralizer(
    n: usize,
    r: usize,
    len: usize,
    out_len: usize,
    rho_bound: i64,
    at: &BigRational,
) -> Result<CentralizerOutcome> {
    let omega = Weight::omega(n, r)?;
    let elems = enumerate_up_to_length(r, out_len, true, rho_bound)?;
    let mut range: BTreeMap<Weight, Vec<QTensorKey>> = BTreeMap::new();
    for lambda in Weight::all(n, r)? {
        let pl = lambda.young_parabolic();
        let keys: Vec<QTensorKey> =
            elems.iter().filter(|d| is_distinguished(d, &pl)).map(|d| QTensorKey { lambda: lambda.clone(), d: d.clone() }).collect();
        range.insert(lambda, keys);
    }
    let domain: Vec<QTensorKey> = range.values().flatten().filter(|k| k.d.length() <= len).cloned().collect();
    let domain_index: HashMap<&QTensorKey, usize> = domain.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut offset = Vec::with_capacity(domain.len());
    let mut unknowns = 0;
    for b in &domain {
        offset.push(unknowns);
        unknowns += range[&b.lambda].len();
    }
    let basis = |k: &QTensorKey| QTensorElement::basis(&k.lambda, &k.d);

    let gens = schur_generators(n, r)?;
    let mut equations = Vec::new();
    for (_, g) in &gens {
        let mut image: HashMap<QTensorKey, Vector> = HashMap::new();
        let mut act = |k: &QTensorKey| -> Result<Vector> {
            if let Some(x) = image.get(k) {
                return Ok(x.clone());
            }
            let x = eval(&basis(k)?.act_schur_left(g)?, at);
            image.insert(k.clone(), x.clone());
            Ok(x)
        };
        for (bi, b) in domain.iter().enumerate() {
            let gb = act(b)?;
            if !gb.keys().all(|k| domain_index.contains_key(k)) {
                continue;
            }
            let mut rows: BTreeMap<QTensorKey, BTreeMap<usize, BigRational>> = BTreeMap::new();
            for (k, c) in &gb {
                let ki = domain_index[k];
                for (j, target) in range[&k.lambda].iter().enumerate() {
                    *rows.entry(target.clone()).or_default().entry(offset[ki] + j).or_insert_with(BigRational::zero) += c;
                }
            }
            for (j, source) in range[&b.lambda].iter().enumerate() {
                for (k2, c2) in act(source)? {
                    *rows.entry(k2).or_default().entry(offset[bi] + j).or_insert_with(BigRational::zero) -= c2;
                }
            }
            equations.extend(rows.into_values());
        }
    }
    let equation_count = equations.len();
    let solutions = nullspace(equations, unknowns);

    // right multiplication by each T_d, d in the omega range
    let unit = domain_index[&QTensorKey { lambda: omega.clone(), d: WindowPerm::identity(r)? }];
    let mut right: Vec<Vec<Vector>> = Vec::new();
    for d in &range[&omega] {
        let t = HeckeElement::t_basis(&d.d);
        right.push(domain.iter().map(|b| Ok(eval(&basis(b)?.act_hecke_right(&t)?, at))).collect::<Result<_>>()?);
    }
    let mut failures = Vec::new();
    for (s, x) in solutions.iter().enumerate() {
        for (bi, b) in domain.iter().enumerate() {
            let mut predicted = Vector::new();
            for (j, images) in right.iter().enumerate() {
                let h = &x[offset[unit] + j];
                if h.is_zero() {
                    continue;
                }
                for (k, c) in &images[bi] {
                    *predicted.entry(k.clone()).or_insert_with(BigRational::zero) += h * c;
                }
            }
            predicted.retain(|_, c| !c.is_zero());
            let actual: Vector = range[&b.lambda]
                .iter()
                .enumerate()
                .map(|(j, k)| (k.clone(), x[offset[bi] + j].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if predicted != actual {
                failures.push(format!("solution {s} differs from right multiplication at x_{} T_{}", b.lambda, b.d));
            }
        }
    }
    Ok(CentralizerOutcome { domain: domain.len(), unknowns, equations: equation_count, solutions: solutions.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn commutant_is_right_multiplication_on_a_small_window() {
        let at = BigRational::new(BigInt::from(1), BigInt::from(3));
        let out = double_centralizer(3, 3, 0, 1, 0, &at).unwrap();
        assert!(out.solutions >= 1);
        assert!(out.failures.is_empty(), "{:?}", out.failures);
    }
}
