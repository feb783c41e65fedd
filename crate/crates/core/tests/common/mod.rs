//! Oracles written from the definitions, sharing no group or Hecke code
//! with the library. Only `LaurentPoly` is borrowed for coefficients.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use affine_schur::{LaurentPoly, WindowPerm};

/// A periodic permutation stored as its window `((1)w, ..., (r)w)`.
pub type Win = Vec<i64>;

pub fn apply(w: &[i64], t: i64) -> i64 {
    let r = w.len() as i64;
    let k = (t - 1).rem_euclid(r);
    let q = (t - 1).div_euclid(r);
    w[k as usize] + q * r
}

/// `u` first, then `w`.
pub fn compose(u: &[i64], w: &[i64]) -> Win {
    (1..=u.len() as i64).map(|t| apply(w, apply(u, t))).collect()
}

pub fn identity(r: usize) -> Win {
    (1..=r as i64).collect()
}

pub fn gen_s(r: usize, i: usize) -> Win {
    let mut w = identity(r);
    if i < r {
        w.swap(i - 1, i);
    } else {
        w[0] = 0;
        w[r - 1] = r as i64 + 1;
    }
    w
}

pub fn rho(r: usize, z: i64) -> Win {
    (1..=r as i64).map(|t| t + z).collect()
}

pub fn rho_power(w: &[i64]) -> i64 {
    let r = w.len() as i64;
    (w.iter().sum::<i64>() - r * (r + 1) / 2) / r
}

pub fn inverse(w: &[i64]) -> Win {
    let r = w.len();
    let mut out = vec![0; r];
    for t in 1..=r as i64 {
        let x = w[(t - 1) as usize];
        let k = (x - 1).rem_euclid(r as i64);
        let q = (x - 1).div_euclid(r as i64);
        out[k as usize] = t - q * r as i64;
    }
    out
}

/// Pairs `i in 1..=r`, `j > i` with `(i)w > (j)w`.
pub fn crossings(w: &[i64]) -> usize {
    let r = w.len() as i64;
    let spread = w.iter().max().unwrap() - w.iter().min().unwrap();
    let mut count = 0;
    for i in 1..=r {
        for j in i + 1..=i + r * (spread + 2) {
            if apply(w, i) > apply(w, j) {
                count += 1;
            }
        }
    }
    count
}

pub fn lib(w: &[i64]) -> WindowPerm {
    WindowPerm::new(w.to_vec()).unwrap()
}

/// Number of `s_i` letters in a shortest word over `s_1..s_r, rho^+-1`;
/// rho-powers are confined to `-2..=2`.
pub fn bfs(r: usize, max_len: usize) -> HashMap<Win, usize> {
    let mut dist = HashMap::from([(identity(r), 0usize)]);
    let mut queue = VecDeque::from([identity(r)]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for z in [-1, 1] {
            let x = compose(&w, &rho(r, z));
            if rho_power(&x).abs() <= 2 && dist.get(&x).is_none_or(|&o| o > d) {
                dist.insert(x.clone(), d);
                queue.push_front(x);
            }
        }
        if d < max_len {
            for i in 1..=r {
                let x = compose(&w, &gen_s(r, i));
                if dist.get(&x).is_none_or(|&o| o > d + 1) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
    }
    dist
}

/// Elements of the subgroup generated by `s_i`, `i in pi`.
pub fn parabolic(r: usize, pi: &[usize]) -> Vec<Win> {
    let mut seen = BTreeSet::from([identity(r)]);
    let mut queue = VecDeque::from([identity(r)]);
    while let Some(w) = queue.pop_front() {
        for &i in pi {
            let x = compose(&w, &gen_s(r, i));
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen.into_iter().collect()
}

/// All factorizations `w = u d` with `u in W_pi` and `l(x d) = l(x) + l(d)`
/// for every `x in W_pi`.
pub fn coset_factorizations(w: &[i64], sub: &[Win]) -> Vec<(Win, Win)> {
    sub.iter()
        .map(|u| (u.clone(), compose(&inverse(u), w)))
        .filter(|(_, d)| sub.iter().all(|x| crossings(&compose(x, d)) == crossings(x) + crossings(d)))
        .collect()
}

/// Products of all subwords of `word` (right multiplication).
pub fn subwords(r: usize, word: &[usize]) -> BTreeSet<Win> {
    let mut set = BTreeSet::from([identity(r)]);
    for &i in word {
        let next: Vec<Win> = set.iter().map(|x| compose(x, &gen_s(r, i))).collect();
        set.extend(next);
    }
    set
}

/// A reduced word of a rho-power-zero element by repeatedly removing a
/// right descent (found from the window, not from the library).
pub fn reduced_word(w: &[i64]) -> Vec<usize> {
    let r = w.len();
    let mut w = w.to_vec();
    let mut word = Vec::new();
    while crossings(&w) > 0 {
        let i = (1..=r)
            .find(|&i| crossings(&compose(&w, &gen_s(r, i))) < crossings(&w))
            .expect("a descent exists");
        word.push(i);
        w = compose(&w, &gen_s(r, i));
    }
    word.reverse();
    word
}

// ------------------------------------------------------------ finite Hecke algebra

/// Permutations of `0..m` in one-line notation, composed left to right.
pub type Perm = Vec<usize>;

pub fn perm_mul(a: &[usize], b: &[usize]) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

pub fn all_perms(m: usize) -> Vec<Perm> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Perm| {
                let free: Vec<usize> = (0..m).filter(|x| !p.contains(x)).collect();
                free.into_iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn transposition(m: usize, i: usize) -> Perm {
    let mut p: Perm = (0..m).collect();
    p.swap(i - 1, i);
    p
}

pub type FiniteHecke = BTreeMap<Perm, LaurentPoly>;

fn add(h: &mut FiniteHecke, p: Perm, c: &LaurentPoly) {
    let e = h.entry(p.clone()).or_insert_with(LaurentPoly::zero);
    *e += c;
    if e.is_zero() {
        h.remove(&p);
    }
}

/// `h T_{s_i}` with `T_s^2 = (q-1) T_s + q`.
pub fn mul_s(h: &FiniteHecke, m: usize, i: usize) -> FiniteHecke {
    let s = transposition(m, i);
    let mut out = FiniteHecke::new();
    for (w, c) in h {
        let ws = perm_mul(w, &s);
        if inversions(&ws) > inversions(w) {
            add(&mut out, ws, c);
        } else {
            add(&mut out, ws, &(c * &LaurentPoly::q()));
            add(&mut out, w.clone(), &(c * &LaurentPoly::q_minus_one()));
        }
    }
    out
}

/// `h T_{s_i}^-1 = h (q^-1 T_s + (q^-1 - 1))`.
pub fn mul_s_inv(h: &FiniteHecke, m: usize, i: usize) -> FiniteHecke {
    let qi = LaurentPoly::v_pow(-2);
    let mut out = FiniteHecke::new();
    for (w, c) in mul_s(h, m, i) {
        add(&mut out, w, &(&c * &qi));
    }
    for (w, c) in h {
        add(&mut out, w.clone(), &(c * &(&qi - &LaurentPoly::one())));
    }
    out
}

fn finite_word(p: &[usize]) -> Vec<usize> {
    let m = p.len();
    let mut p = p.to_vec();
    let mut word = Vec::new();
    // s_ik ... s_i1 p = e, so p = s_i1 ... s_ik
    while let Some(i) = (1..m).find(|&i| p[i - 1] > p[i]) {
        p.swap(i - 1, i);
        word.push(i);
    }
    word
}

pub fn mul(a: &FiniteHecke, b: &FiniteHecke, m: usize) -> FiniteHecke {
    let mut out = FiniteHecke::new();
    for (w, c) in b {
        let mut x = a.clone();
        for i in finite_word(w) {
            x = mul_s(&x, m, i);
        }
        for (k, y) in x {
            add(&mut out, k, &(&y * c));
        }
    }
    out
}

pub fn basis(p: &[usize]) -> FiniteHecke {
    FiniteHecke::from([(p.to_vec(), LaurentPoly::one())])
}

/// `bar(T_w) = T_{w^-1}^-1`: a product of `T_s^-1` along a reduced word of `w`.
pub fn bar_t(p: &[usize]) -> FiniteHecke {
    let m = p.len();
    let mut x = basis(&(0..m).collect::<Vec<_>>());
    for i in finite_word(p) {
        x = mul_s_inv(&x, m, i);
    }
    x
}

/// KL polynomials `P_{y,w}` of `S_m` from bar-invariance of
/// `C_w = sum_y v^(l(y)-l(w)) P_{y,w} v^-l(y) T_y`.
pub fn kl_oracle(m: usize) -> BTreeMap<(Perm, Perm), LaurentPoly> {
    let mut perms = all_perms(m);
    perms.sort_by_key(|p| inversions(p));
    let bars: HashMap<Perm, FiniteHecke> = perms.iter().map(|p| (p.clone(), bar_t(p))).collect();
    let mut out = BTreeMap::new();
    for w in &perms {
        let lw = inversions(w) as i32;
        // coefficients a_y of the normalized basis v^-l(y) T_y
        let mut a: BTreeMap<Perm, LaurentPoly> = BTreeMap::from([(w.clone(), LaurentPoly::one())]);
        for x in perms.iter().rev().filter(|x| (inversions(x) as i32) < lw) {
            let lx = inversions(x) as i32;
            let mut rhs = LaurentPoly::zero();
            for (y, ay) in &a {
                // bar(v^-l(y) T_y) = v^l(y) bar(T_y); coefficient on v^-l(x) T_x
                let c = bars[y].get(x).cloned().unwrap_or_else(LaurentPoly::zero);
                rhs += &(&ay.bar() * &c.shift(inversions(y) as i32 + lx));
            }
            let ax = rhs.negative_part();
            assert_eq!(&ax - &ax.bar(), rhs, "no bar-invariant solution at {x:?}, {w:?}");
            if !ax.is_zero() {
                a.insert(x.clone(), ax);
            }
        }
        for (y, ay) in a {
            let ly = inversions(&y) as i32;
            out.insert((y, w.clone()), ay.shift(lw - ly));
        }
    }
    out
}

/// `p` (a permutation of `0..m`) as an element of the affine group of period `r > m`.
pub fn embed(p: &[usize], r: usize) -> WindowPerm {
    let mut window: Vec<i64> = p.iter().map(|&x| x as i64 + 1).collect();
    window.extend(p.len() as i64 + 1..=r as i64);
    WindowPerm::new(window).unwrap()
}
