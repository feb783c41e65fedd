//! Worked examples for each module, with expected values computed by hand
//! from the defining rules or by the brute-force oracles in `common`.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use affine_schur::hecke::{Bernstein, HeckeElement, KlTable};
use affine_schur::quantum::duality::{Duality, RightGen};
use affine_schur::quantum::hopf::{antipode, counit};
use affine_schur::quantum::{act_tensor, act_v, weight_parts, window_keys, Letter, TensorVector, UElement};
use affine_schur::schur::{embed_hecke, phi_value, theta, SchurElement, Weight};
use affine_schur::weyl::{
    coset_decompose, double_coset_rep, enumerate_up_to_length, is_distinguished, longest_double_coset_elt,
    ParabolicIndex,
};
use affine_schur::{LaurentPoly, WindowPerm};
use common::*;

fn s(r: usize, i: usize) -> WindowPerm {
    WindowPerm::gen_s(r, i).unwrap()
}

fn pi(r: usize, members: &[usize], shift: i64) -> ParabolicIndex {
    ParabolicIndex::new(r, members.iter().copied(), shift).unwrap()
}

fn v(k: i32) -> LaurentPoly {
    LaurentPoly::v_pow(k)
}

// ------------------------------------------------------------------ weyl

#[test]
fn generators_in_window_notation() {
    assert_eq!(s(3, 1).window(), &[2, 1, 3]);
    assert_eq!(WindowPerm::gen_rho(3, 1).unwrap().window(), &[2, 3, 4]);
    assert_eq!(s(4, 2).length(), 1);
    assert_eq!(WindowPerm::gen_rho(5, -2).unwrap().length(), 0);
    let rho = WindowPerm::gen_rho(3, 1).unwrap();
    assert!(rho.left_descents().is_empty() && rho.right_descents().is_empty());
}

#[test]
fn translation_of_the_first_class() {
    let w = lib(&[4, 2, 3]);
    let dist = bfs(3, 4);
    assert_eq!(w.length(), 2);
    assert_eq!(dist[&vec![4, 2, 3]], 2);
    let (z, c) = w.rho_decompose();
    assert_eq!(z, 1);
    assert_eq!(c, lib(&compose(&rho(3, -1), &[4, 2, 3])));
    assert_eq!(c.length(), 2);
    let (z, word) = w.reduced_word();
    assert_eq!((z, word.len()), (1, 2));
    assert_eq!(WindowPerm::from_word(3, z, &word).unwrap(), w);
    assert_eq!(w.semidirect_decompose(), (vec![1, 2, 3], vec![1, 0, 0]));
}

#[test]
fn ball_of_radius_two_in_the_coxeter_group() {
    let got = enumerate_up_to_length(3, 2, false, 0).unwrap();
    let oracle = bfs(3, 2).into_keys().filter(|w| rho_power(w) == 0).count();
    assert_eq!(got.len(), oracle);
    assert_eq!(got.len(), 10);
}

#[test]
fn parabolic_subgroups() {
    let full = pi(3, &[1, 2], 0);
    let mut elems = full.elements();
    elems.sort();
    let mut oracle: Vec<WindowPerm> = parabolic(3, &[1, 2]).iter().map(|w| lib(w)).collect();
    oracle.sort();
    assert_eq!(elems, oracle);
    assert_eq!(elems.len(), 6);
    let shifted: BTreeSet<WindowPerm> = pi(3, &[1], 1).elements().into_iter().collect();
    assert_eq!(shifted, BTreeSet::from([WindowPerm::identity(3).unwrap(), s(3, 2)]));
    let top = full.longest_element();
    assert_eq!(top.window(), &[3, 2, 1]);
    assert_eq!(top.length(), 3);
}

#[test]
fn coset_decompositions() {
    let w = s(3, 1).compose(&s(3, 2)).unwrap();
    assert_eq!(coset_decompose(&w, &pi(3, &[1], 0)), (s(3, 1), s(3, 2)));
    let rho = WindowPerm::gen_rho(3, 1).unwrap();
    for members in [&[][..], &[1], &[2, 3], &[1, 3]] {
        let p = pi(3, members, 0);
        assert_eq!(coset_decompose(&rho, &p), (WindowPerm::identity(3).unwrap(), rho.clone()));
        assert!(is_distinguished(&rho, &p));
    }
}

/// `{u d x : u in W_left, x in W_right}` by the oracle.
fn double_coset(d: &WindowPerm, left: &[usize], right: &[usize]) -> BTreeSet<Win> {
    let mut out = BTreeSet::new();
    for u in parabolic(3, left) {
        for x in parabolic(3, right) {
            out.insert(compose(&compose(&u, d.window()), &x));
        }
    }
    out
}

#[test]
fn double_coset_extremes_by_brute_force() {
    let (l, r) = (pi(3, &[1], 0), pi(3, &[2], 0));
    let w = s(3, 1).compose(&s(3, 2)).unwrap();
    let coset = double_coset(&w, &[1], &[2]);
    let min = coset.iter().map(|x| crossings(x)).min().unwrap();
    let minimal: Vec<&Win> = coset.iter().filter(|x| crossings(x) == min).collect();
    assert_eq!(minimal.len(), 1);
    assert_eq!(double_coset_rep(&w, &l, &r), lib(minimal[0]));

    let rho = WindowPerm::gen_rho(3, 1).unwrap();
    let coset = double_coset(&rho, &[1], &[2]);
    let max = coset.iter().map(|x| crossings(x)).max().unwrap();
    let maximal: Vec<&Win> = coset.iter().filter(|x| crossings(x) == max).collect();
    assert_eq!(maximal.len(), 1);
    let top = longest_double_coset_elt(&rho, &l, &r);
    assert_eq!(top, lib(maximal[0]));
    // rho s_2 rho^-1 = s_1, so the coset is rho W_{(2)} and w+ = rho s_2
    assert_eq!(top, rho.compose(&s(3, 2)).unwrap());
}

// ----------------------------------------------------------------- hecke

#[test]
fn hecke_relations_on_generators() {
    let t = |i| HeckeElement::t_s(3, i).unwrap();
    let one = HeckeElement::one(3).unwrap();
    let q = LaurentPoly::q();
    assert_eq!(&t(1) * &t(1), &one.scale(&q) + &t(1).scale(&LaurentPoly::q_minus_one()));
    assert_eq!(&(&t(1) * &t(2)) * &t(1), &(&t(2) * &t(1)) * &t(2));
    let conj = &(&HeckeElement::t_rho(3, 1).unwrap() * &t(2)) * &HeckeElement::t_rho(3, -1).unwrap();
    assert_eq!(conj, t(1));
    // (T_s + 1)(T_s - q) = 0
    assert!((&(&t(1) + &one) * &(&t(1) - &one.scale(&q))).is_zero());
    assert_eq!(HeckeElement::t_basis(&WindowPerm::gen_rho(3, 1).unwrap()), HeckeElement::t_rho(3, 1).unwrap());
}

#[test]
fn specializations_at_one() {
    let t1 = HeckeElement::t_s(3, 1).unwrap();
    let x = &HeckeElement::one(3).unwrap().scale(&LaurentPoly::q()) + &t1.scale(&LaurentPoly::q_minus_one());
    let e = WindowPerm::identity(3).unwrap();
    assert_eq!(x.specialize_group_algebra(), [(e, 1.into())].into_iter().collect());
    let conj = &(&HeckeElement::t_rho(3, 1).unwrap() * &HeckeElement::t_s(3, 2).unwrap()) * &HeckeElement::t_rho(3, -1).unwrap();
    assert_eq!(conj.specialize_group_algebra(), [(s(3, 1), 1.into())].into_iter().collect());
}

#[test]
fn x_lambda_of_small_parabolics() {
    let e = HeckeElement::one(3).unwrap();
    assert_eq!(HeckeElement::x_lambda(&pi(3, &[1], 0)), &e + &HeckeElement::t_s(3, 1).unwrap());
    assert_eq!(HeckeElement::x_lambda(&pi(3, &[1], 1)), &e + &HeckeElement::t_s(3, 2).unwrap());
}

#[test]
fn bernstein_examples() {
    let b = Bernstein::new(3).unwrap();
    let t1 = HeckeElement::t_s(3, 1).unwrap();
    assert_eq!(&(&t1 * b.y(1)) * &t1, b.y(2).scale(&v(2)));
    assert_eq!(b.y(1) * b.y(2), b.y(2) * b.y(1));
    let t_rho = HeckeElement::t_rho(3, 1).unwrap();
    let expanded = b.to_bernstein_basis(&t_rho);
    assert_eq!(b.to_hecke(&expanded), t_rho);
    // T_rho = v^2 y_3 T_c^-1 with c = s_1 s_2: one y-monomial, spread over T_w
    let monomials: BTreeSet<&Vec<i64>> = expanded.terms().keys().map(|k| &k.c).collect();
    assert_eq!(monomials, BTreeSet::from([&vec![0, 0, 1]]));
    let c_inv = HeckeElement::t_inverse(&s(3, 1).compose(&s(3, 2)).unwrap());
    assert_eq!(&b.y(3).scale(&v(2)) * &c_inv, t_rho);
}

#[test]
fn kl_examples() {
    let table = KlTable::new();
    let w = s(5, 2).compose(&s(5, 1)).unwrap().compose(&s(5, 3)).unwrap().compose(&s(5, 2)).unwrap();
    let oracle = kl_oracle(4);
    let (y4, w4) = (vec![0, 2, 1, 3], vec![2, 3, 0, 1]);
    assert_eq!(embed(&w4, 5), w);
    assert_eq!(table.kl_polynomial(&s(5, 2), &w).unwrap(), oracle[&(y4, w4)]);
    assert_eq!(table.kl_polynomial(&s(5, 2), &w).unwrap(), LaurentPoly::from_q_coeffs(&[1, 1]));
    let rho = WindowPerm::gen_rho(3, 1).unwrap();
    let y = s(3, 1);
    assert!(table.kl_extended(&rho.compose(&y).unwrap(), &y).unwrap().is_zero());
    assert!(table.kl_polynomial(&s(3, 3), &s(3, 1).compose(&s(3, 2)).unwrap()).unwrap().is_zero());
}

// ----------------------------------------------------------------- schur

fn wt(parts: &[usize]) -> Weight {
    Weight::new(parts.to_vec()).unwrap()
}

#[test]
fn weights_and_young_parabolics() {
    assert_eq!(wt(&[2, 1]).young_parabolic().generators(), BTreeSet::from([1]));
    assert_eq!(wt(&[3]).young_parabolic().generators(), BTreeSet::from([1, 2]));
    assert_eq!(Weight::omega(3, 3).unwrap(), wt(&[1, 1, 1]));
    assert_eq!(Weight::omega(4, 3).unwrap(), wt(&[1, 1, 1, 0]));
    assert!(Weight::omega(2, 3).is_err());
}

#[test]
fn phi_values() {
    let omega = Weight::omega(3, 3).unwrap();
    let e = WindowPerm::identity(3).unwrap();
    for d in enumerate_up_to_length(3, 2, true, 1).unwrap() {
        assert_eq!(phi_value(&omega, &omega, &d).unwrap(), HeckeElement::t_basis(&d));
    }
    for lambda in Weight::all(3, 3).unwrap() {
        assert_eq!(phi_value(&lambda, &lambda, &e).unwrap(), HeckeElement::x_lambda(&lambda.young_parabolic()));
    }
    // n = 2: the double coset W_(2,1) e W_(1,2) = W_{s1} W_{s2}
    let (l, m) = (wt(&[2, 1]), wt(&[1, 2]));
    let mut expected = HeckeElement::zero(3);
    for w in double_coset(&e, &[1], &[2]) {
        expected.add_term(lib(&w), &LaurentPoly::one());
    }
    assert_eq!(expected.len(), 4);
    assert_eq!(phi_value(&l, &m, &e).unwrap(), expected);
}

#[test]
fn schur_identities() {
    let (n, r) = (3, 3);
    let omega = Weight::omega(n, r).unwrap();
    let e = WindowPerm::identity(r).unwrap();
    let one = SchurElement::identity(n, r).unwrap();
    for k in affine_schur::verify::schur_keys(n, r, 2, 1).unwrap().iter().step_by(7) {
        let x = SchurElement::phi(&k.lambda, &k.mu, &k.d).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }
    let weights = Weight::all(n, r).unwrap();
    for lambda in &weights {
        for d in enumerate_up_to_length(r, 2, true, 1).unwrap().iter().filter(|d| is_distinguished(d, &lambda.young_parabolic())) {
            let x = SchurElement::phi(lambda, &omega, d).unwrap();
            assert_eq!(x.mul(&SchurElement::phi(&omega, &omega, &e).unwrap()).unwrap(), x);
            for mu in &weights {
                let idem = SchurElement::phi(mu, mu, &e).unwrap();
                let expected = if mu == lambda { x.clone() } else { SchurElement::zero(n, r) };
                assert_eq!(idem.mul(&x).unwrap(), expected);
            }
        }
    }
}

#[test]
fn embedding_of_the_hecke_algebra() {
    let t1 = HeckeElement::t_s(3, 1).unwrap();
    let a = embed_hecke(3, &(&t1 * &t1)).unwrap();
    let b = embed_hecke(3, &t1).unwrap();
    assert_eq!(a, b.mul(&b).unwrap());
    assert!(b.is_finite_type());
    let omega = Weight::omega(3, 3).unwrap();
    let f = SchurElement::phi(&wt(&[2, 1, 0]), &omega, &s(3, 2)).unwrap();
    let g = SchurElement::phi(&omega, &wt(&[1, 1, 1]), &s(3, 1)).unwrap();
    assert!(f.is_finite_type() && g.is_finite_type());
    assert!(f.mul(&g).unwrap().is_finite_type());
}

#[test]
fn theta_has_a_unit_leading_coefficient() {
    let table = KlTable::new();
    for k in affine_schur::verify::schur_keys(3, 3, 2, 0).unwrap() {
        let th = theta(&k.lambda, &k.mu, &k.d, &table).unwrap();
        let (pl, pm) = (k.lambda.young_parabolic(), k.mu.young_parabolic());
        let top = longest_double_coset_elt(&k.d, &pl, &pm);
        let w0 = pm.longest_element().length() as i32;
        assert_eq!(th.coeff(&k.lambda, &k.mu, &k.d), v(w0 - top.length() as i32), "{} {} {}", k.lambda, k.mu, k.d);
    }
}

// --------------------------------------------------------------- quantum

#[test]
fn action_on_v() {
    use Letter::*;
    assert_eq!(act_v(E(1), 2, 3), TensorVector::basis(3, vec![1]));
    assert_eq!(act_v(K(1), 4, 3), TensorVector::term(3, vec![4], v(1)));
    assert_eq!(act_v(R, 5, 3), TensorVector::basis(3, vec![6]));
}

#[test]
fn action_on_tensors() {
    use Letter::*;
    let e1 = UElement::letters(3, &[E(1)]);
    let x = TensorVector::basis(3, vec![2, 2]);
    let mut expected = TensorVector::term(3, vec![1, 2], v(-1));
    expected.add_term(vec![2, 1], &LaurentPoly::one());
    assert_eq!(act_tensor(&e1, &x).unwrap(), expected);
    let r = UElement::letters(3, &[R]);
    assert_eq!(act_tensor(&r, &TensorVector::basis(3, vec![1, 2, 3])).unwrap(), TensorVector::basis(3, vec![2, 3, 4]));
}

#[test]
fn counit_and_antipode_examples() {
    use Letter::*;
    let n = 3;
    assert!(counit(&UElement::letters(n, &[K(1), R])).is_one());
    assert_eq!(antipode(&UElement::letters(n, &[R])), UElement::letters(n, &[RInv]));
    // S(E1 F2) = (-K2 K3^-1 F2)(-E1 K1^-1 K2), compared on V (x) V
    let lhs = antipode(&UElement::letters(n, &[E(1), F(2)]));
    let rhs = UElement::letters(n, &[K(2), KInv(3), F(2), E(1), KInv(1), K(2)]);
    for k in window_keys(2, -6, 6) {
        let x = TensorVector::basis(n, k);
        assert_eq!(act_tensor(&lhs, &x).unwrap(), act_tensor(&rhs, &x).unwrap());
    }
}

#[test]
fn y_shifts_one_factor() {
    for n in [3, 4] {
        let d = Duality::new(n, 3).unwrap();
        let x = TensorVector::basis(n, vec![1, 2, 3]);
        let y1 = d.y_op(1).unwrap().apply(&x).unwrap();
        assert_eq!(y1, TensorVector::basis(n, vec![1 - n as i64, 2, 3]));
    }
}

#[test]
fn r_moves_weight_spaces() {
    use Letter::*;
    let r = UElement::letters(4, &[R]);
    for k in window_keys(3, -4, 4) {
        let image = act_tensor(&r, &TensorVector::basis(4, k.clone())).unwrap();
        let mut parts = weight_parts(&k, 4);
        parts.rotate_right(1);
        for (out, _) in image.terms().iter() {
            assert_eq!(weight_parts(out, 4), parts);
        }
    }
}

#[test]
fn tau_relations_on_weight_omega() {
    let d = Arc::new(Duality::new(3, 3).unwrap());
    let q = LaurentPoly::q();
    let keys: Vec<Vec<i64>> = window_keys(3, -3, 6).into_iter().filter(|k| weight_parts(k, 3) == vec![1, 1, 1]).collect();
    for i in 1..=3 {
        let t = d.tau(RightGen::S(i)).unwrap();
        for k in &keys {
            let x = TensorVector::basis(3, k.clone());
            let tx = t.apply(&x).unwrap();
            let ttx = t.apply(&tx).unwrap();
            assert_eq!(ttx, &tx.scale(&LaurentPoly::q_minus_one()) + &x.scale(&q), "s_{i} on {k:?}");
        }
    }
    let (rho, inv) = (d.tau(RightGen::Rho).unwrap(), d.tau(RightGen::RhoInv).unwrap());
    for k in &keys {
        let x = TensorVector::basis(3, k.clone());
        assert_eq!(inv.apply(&rho.apply(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn right_action_on_small_keys() {
    let d = Duality::new(3, 3).unwrap();
    let x = TensorVector::basis(3, vec![2, 2, 3]);
    assert_eq!(d.right_generator(&x, RightGen::S(1)).unwrap(), x.scale(&LaurentPoly::q()));
    let x = TensorVector::basis(3, vec![1, 2, 3]);
    assert_eq!(d.right_generator(&x, RightGen::S(1)).unwrap(), TensorVector::term(3, vec![2, 1, 3], v(1)));
}

#[test]
fn theta_iso_of_the_unit_and_its_asymmetry() {
    let d = Arc::new(Duality::new(3, 3).unwrap());
    let omega = Weight::omega(3, 3).unwrap();
    let unit = affine_schur::schur::QTensorElement::basis(&omega, &WindowPerm::identity(3).unwrap()).unwrap();
    assert_eq!(d.theta_iso(&unit).unwrap(), TensorVector::basis(3, vec![1, 2, 3]));
    let x = affine_schur::schur::QTensorElement::basis(&omega, &s(3, 3)).unwrap();
    assert_eq!(x.terms().len(), 1);
    assert_eq!(d.theta_iso(&x).unwrap().len(), 2);
}
