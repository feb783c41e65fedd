//! Coproduct, counit and antipode on words, and the relation and Hopf-axiom
//! checks as operator identities on `V^{(x) k}`.

use rayon::prelude::*;

use super::{act_word_on_key, window_keys, Key, Letter, UElement, Word};
use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::linear::Combination;
use crate::report::{Check, Report};

pub type PairWord = (Word, Word);
pub type TripleWord = (Word, Word, Word);

fn next(i: usize, n: usize) -> usize {
    i % n + 1
}

fn prev(i: usize, n: usize) -> usize {
    (i + n - 2) % n + 1
}

fn letter_coproduct(l: Letter, n: usize) -> Combination<PairWord> {
    let w = |ls: &[Letter]| Word(ls.to_vec());
    let mut out = Combination::zero();
    match l {
        Letter::E(i) => {
            out.add_term((w(&[l]), w(&[Letter::K(i), Letter::KInv(next(i, n))])), &LaurentPoly::one());
            out.add_term((Word::empty(), w(&[l])), &LaurentPoly::one());
        }
        Letter::F(i) => {
            out.add_term((w(&[Letter::KInv(i), Letter::K(next(i, n))]), w(&[l])), &LaurentPoly::one());
            out.add_term((w(&[l]), Word::empty()), &LaurentPoly::one());
        }
        _ => out.add_term((w(&[l]), w(&[l])), &LaurentPoly::one()),
    }
    out
}

fn pair_product(a: &Combination<PairWord>, b: &Combination<PairWord>) -> Combination<PairWord> {
    let mut out = Combination::zero();
    for ((a1, a2), ca) in a.iter() {
        for ((b1, b2), cb) in b.iter() {
            out.add_term((a1.concat(b1), a2.concat(b2)), &(ca * cb));
        }
    }
    out
}

pub fn word_coproduct(w: &Word, n: usize) -> Combination<PairWord> {
    let mut out = Combination::basis((Word::empty(), Word::empty()));
    for &l in &w.0 {
        out = pair_product(&out, &letter_coproduct(l, n));
    }
    out
}

/// `Delta(u)` in the free algebra tensor square.
pub fn coproduct(u: &UElement) -> Combination<PairWord> {
    let mut out = Combination::zero();
    for (w, c) in u.terms().iter() {
        out.add_scaled(&word_coproduct(w, u.n()), c);
    }
    out
}

pub fn word_counit(w: &Word) -> LaurentPoly {
    if w.0.iter().all(Letter::is_grouplike) {
        LaurentPoly::one()
    } else {
        LaurentPoly::zero()
    }
}

pub fn counit(u: &UElement) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (w, c) in u.terms().iter() {
        out += &(c * &word_counit(w));
    }
    out
}

fn letter_antipode(l: Letter, n: usize) -> UElement {
    let minus = LaurentPoly::constant(-1);
    match l {
        Letter::E(i) => UElement::letters(n, &[l, Letter::KInv(i), Letter::K(next(i, n))]).scale(&minus),
        Letter::F(i) => UElement::letters(n, &[Letter::K(i), Letter::KInv(next(i, n)), l]).scale(&minus),
        Letter::K(i) => UElement::letters(n, &[Letter::KInv(i)]),
        Letter::KInv(i) => UElement::letters(n, &[Letter::K(i)]),
        Letter::R => UElement::letters(n, &[Letter::RInv]),
        Letter::RInv => UElement::letters(n, &[Letter::R]),
    }
}

/// `S`, extended antimultiplicatively.
pub fn antipode(u: &UElement) -> UElement {
    let n = u.n();
    let mut out = UElement::zero(n);
    for (w, c) in u.terms().iter() {
        let mut acc = UElement::one(n);
        for &l in w.0.iter().rev() {
            acc = acc.mul(&letter_antipode(l, n));
        }
        out = &out + &acc.scale(c);
    }
    out
}

fn tensor_keys(a: &Combination<Key>, b: &Combination<Key>) -> Combination<Key> {
    let mut out = Combination::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let mut k = ka.clone();
            k.extend_from_slice(kb);
            out.add_term(k, &(ca * cb));
        }
    }
    out
}

/// `sum a (x) b` acting on `key[..split] (x) key[split..]`.
pub fn act_pair(t: &Combination<PairWord>, key: &[i64], split: usize, n: usize) -> Combination<Key> {
    let mut out = Combination::zero();
    for ((a, b), c) in t.iter() {
        let la = act_word_on_key(a, &key[..split], n);
        if la.is_zero() {
            continue;
        }
        let lb = act_word_on_key(b, &key[split..], n);
        out.add_scaled(&tensor_keys(&la, &lb), c);
    }
    out
}

/// Action on `V (x) V (x) V`, one word per factor.
pub fn act_triple(t: &Combination<TripleWord>, key: &[i64], n: usize) -> Combination<Key> {
    assert_eq!(key.len(), 3);
    let mut out = Combination::zero();
    for ((a, b, c), coeff) in t.iter() {
        let la = act_word_on_key(a, &key[..1], n);
        if la.is_zero() {
            continue;
        }
        let lb = act_word_on_key(b, &key[1..2], n);
        if lb.is_zero() {
            continue;
        }
        let lc = act_word_on_key(c, &key[2..], n);
        out.add_scaled(&tensor_keys(&tensor_keys(&la, &lb), &lc), coeff);
    }
    out
}

/// `(Delta (x) 1) Delta(u)` and `(1 (x) Delta) Delta(u)`.
pub fn double_coproducts(u: &UElement) -> (Combination<TripleWord>, Combination<TripleWord>) {
    let n = u.n();
    let d = coproduct(u);
    let (mut left, mut right) = (Combination::zero(), Combination::zero());
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c2) in word_coproduct(a, n).iter() {
            left.add_term((a1.clone(), a2.clone(), b.clone()), &(c * c2));
        }
        for ((b1, b2), c2) in word_coproduct(b, n).iter() {
            right.add_term((a.clone(), b1.clone(), b2.clone()), &(c * c2));
        }
    }
    (left, right)
}

fn u_on_key(u: &UElement, key: &[i64]) -> Combination<Key> {
    let mut out = Combination::zero();
    for (w, c) in u.terms().iter() {
        out.add_scaled(&act_word_on_key(w, key, u.n()), c);
    }
    out
}

/// One instance of a defining relation, `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub number: usize,
    pub label: String,
    pub lhs: UElement,
    pub rhs: UElement,
}

/// Whether nodes `i, j` of the affine diagram are joined (`n >= 3`).
pub fn adjacent(i: usize, j: usize, n: usize) -> bool {
    i != j && (j == next(i, n) || j == prev(i, n))
}

pub fn epsilon_plus(i: usize, j: usize, n: usize) -> i32 {
    if j == i {
        1
    } else if j == prev(i, n) {
        -1
    } else {
        0
    }
}

/// Every instance of the defining relations for `1 <= i, j <= n`.
pub fn relations(n: usize) -> Result<Vec<Relation>> {
    if n < 3 {
        return Err(Error::NTooSmall { n, r: 3 });
    }
    use Letter::*;
    let w = |ls: &[Letter]| UElement::letters(n, ls);
    let one = UElement::one(n);
    let zero = UElement::zero(n);
    let mut out = Vec::new();
    let mut push = |number: usize, label: String, lhs: UElement, rhs: UElement| {
        out.push(Relation { number, label, lhs, rhs });
    };
    let two = LaurentPoly::v_pow(1) + LaurentPoly::v_pow(-1);
    for i in 1..=n {
        for j in 1..=n {
            push(1, format!("K{i} K{j}"), w(&[K(i), K(j)]), w(&[K(j), K(i)]));
            let ep = epsilon_plus(i, j, n);
            push(3, format!("K{i} E{j}"), w(&[K(i), E(j)]), w(&[E(j), K(i)]).scale(&LaurentPoly::v_pow(ep)));
            push(4, format!("K{i} F{j}"), w(&[K(i), F(j)]), w(&[F(j), K(i)]).scale(&LaurentPoly::v_pow(-ep)));
            let commutator = &w(&[E(i), F(j)]) - &w(&[F(j), E(i)]);
            let lhs = commutator.scale(&(LaurentPoly::v_pow(1) - LaurentPoly::v_pow(-1)));
            let rhs = if i == j {
                &w(&[K(i), KInv(next(i, n))]) - &w(&[KInv(i), K(next(i, n))])
            } else {
                zero.clone()
            };
            push(5, format!("E{i} F{j}"), lhs, rhs);
            if i != j && !adjacent(i, j, n) {
                push(6, format!("E{i} E{j}"), w(&[E(i), E(j)]), w(&[E(j), E(i)]));
                push(7, format!("F{i} F{j}"), w(&[F(i), F(j)]), w(&[F(j), F(i)]));
            }
            if adjacent(i, j, n) {
                let serre_e = &(&w(&[E(i), E(i), E(j)]) - &w(&[E(i), E(j), E(i)]).scale(&two)) + &w(&[E(j), E(i), E(i)]);
                push(8, format!("E{i} E{j}"), serre_e, zero.clone());
                let serre_f = &(&w(&[F(j), F(j), F(i)]) - &w(&[F(j), F(i), F(j)]).scale(&two)) + &w(&[F(i), F(j), F(j)]);
                push(9, format!("F{i} F{j}"), serre_f, zero.clone());
            }
        }
        push(2, format!("K{i} Kinv{i}"), w(&[K(i), KInv(i)]), one.clone());
        push(2, format!("Kinv{i} K{i}"), w(&[KInv(i), K(i)]), one.clone());
        let j = next(i, n);
        push(11, format!("K{j} -> K{i}"), w(&[RInv, K(j), R]), w(&[K(i)]));
        push(12, format!("Kinv{j} -> Kinv{i}"), w(&[RInv, KInv(j), R]), w(&[KInv(i)]));
        push(13, format!("E{j} -> E{i}"), w(&[RInv, E(j), R]), w(&[E(i)]));
        push(14, format!("F{j} -> F{i}"), w(&[RInv, F(j), R]), w(&[F(i)]));
    }
    push(10, "R Rinv".into(), w(&[R, RInv]), one.clone());
    push(10, "Rinv R".into(), w(&[RInv, R]), one);
    Ok(out)
}

/// All generators for a given `n`.
pub fn generators(n: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.extend([Letter::E(i), Letter::F(i), Letter::K(i), Letter::KInv(i)]);
    }
    out.extend([Letter::R, Letter::RInv]);
    out
}

fn compare(
    label: &str,
    keys: &[Key],
    lhs: impl Fn(&Key) -> Combination<Key> + Sync,
    rhs: impl Fn(&Key) -> Combination<Key> + Sync,
) -> Check {
    keys.par_iter()
        .fold(
            || Check::new(""),
            |mut c, k| {
                let (a, b) = (lhs(k), rhs(k));
                let ok = a == b;
                c.record(ok, || format!("{label} on e{k:?}: {a:?} != {b:?}"));
                c
            },
        )
        .reduce(
            || Check::new(""),
            |mut a, b| {
                a.merge(b);
                a
            },
        )
}

fn gather(name: &str, parts: impl IntoIterator<Item = Check>) -> Check {
    let mut out = Check::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}

/// Defining relations, coproduct, coassociativity, counit and antipode laws
/// on basis vectors of `V^{(x) k}`, `k <= r_max`, with entries in
/// `-window..=window`.
pub fn verify_hopf(n: usize, r_max: usize, window: i64) -> Result<Report> {
    let rels = relations(n)?;
    let mut report = Report::new("hopf").param("n", n).param("r", r_max).param("window", window);
    let key_sets: Vec<Vec<Key>> = (1..=r_max).map(|k| window_keys(k, -window, window)).collect();

    for number in 1..=14 {
        let parts: Vec<Check> = rels
            .iter()
            .filter(|rel| rel.number == number)
            .flat_map(|rel| {
                key_sets.iter().map(move |keys| {
                    compare(&format!("({}) {}", rel.number, rel.label), keys, |k| u_on_key(&rel.lhs, k), |k| {
                        u_on_key(&rel.rhs, k)
                    })
                })
            })
            .collect();
        report.push(gather(&format!("relation ({number})"), parts));
    }

    let gens: Vec<UElement> = generators(n).into_iter().map(|l| UElement::letters(n, &[l])).collect();
    let mut pairs = gens.clone();
    for a in generators(n) {
        for b in generators(n) {
            pairs.push(UElement::letters(n, &[a, b]));
        }
    }

    // The symbolic coproduct reproduces the action on V (x) V.
    if r_max >= 2 {
        let keys = &key_sets[1];
        let parts = gens.iter().map(|u| {
            let d = coproduct(u);
            compare(&format!("Delta({u})"), keys, |k| act_pair(&d, k, 1, n), |k| u_on_key(u, k))
        });
        report.push(gather("coproduct matches tensor action", parts.collect::<Vec<_>>()));
    }

    let v3 = window_keys(3, -window, window);
    let parts: Vec<Check> = gens
        .iter()
        .map(|u| {
            let (left, right) = double_coproducts(u);
            compare(&format!("coassociativity of {u}"), &v3, |k| act_triple(&left, k, n), |k| act_triple(&right, k, n))
        })
        .collect();
    report.push(gather("coassociativity", parts));

    let mut counit_left = Vec::new();
    let mut counit_right = Vec::new();
    let mut antipode_left = Vec::new();
    let mut antipode_right = Vec::new();
    for (idx, u) in pairs.iter().enumerate() {
        let d = coproduct(u);
        let (mut el, mut er) = (UElement::zero(n), UElement::zero(n));
        let (mut sl, mut sr) = (UElement::zero(n), UElement::zero(n));
        for ((a, b), c) in d.iter() {
            let ua = UElement::word(n, a.clone());
            let ub = UElement::word(n, b.clone());
            el = &el + &ub.scale(&(c * &word_counit(a)));
            er = &er + &ua.scale(&(c * &word_counit(b)));
            sl = &sl + &antipode(&ua).mul(&ub).scale(c);
            sr = &sr + &ua.mul(&antipode(&ub)).scale(c);
        }
        let unit = UElement::one(n).scale(&counit(u));
        // Single letters on every tested power; products of two letters on V.
        let sets = if idx < gens.len() { &key_sets[..] } else { &key_sets[..1] };
        for keys in sets {
            let on_u = |k: &Key| u_on_key(u, k);
            counit_left.push(compare(&format!("(eps x 1)Delta({u})"), keys, |k| u_on_key(&el, k), on_u));
            counit_right.push(compare(&format!("(1 x eps)Delta({u})"), keys, |k| u_on_key(&er, k), on_u));
            let on_unit = |k: &Key| u_on_key(&unit, k);
            antipode_left.push(compare(&format!("mu(S x 1)Delta({u})"), keys, |k| u_on_key(&sl, k), on_unit));
            antipode_right.push(compare(&format!("mu(1 x S)Delta({u})"), keys, |k| u_on_key(&sr, k), on_unit));
        }
    }
    report.push(gather("counit (eps x 1)", counit_left));
    report.push(gather("counit (1 x eps)", counit_right));
    report.push(gather("antipode mu(S x 1)", antipode_left));
    report.push(gather("antipode mu(1 x S)", antipode_right));
    Ok(report)
}
