//! Exact linear algebra on finite combinations.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::linear::Combination;

/// Rank over `Q` of the vectors after substituting `v := at`.
///
/// A full rank here proves linear independence over `Q(v)`.
pub fn rank_at<K: Ord + Clone>(vectors: &[Combination<K>], at: &BigRational) -> usize {
    let mut columns: BTreeMap<K, usize> = BTreeMap::new();
    for vec in vectors {
        for k in vec.keys() {
            let next = columns.len();
            columns.entry(k.clone()).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|vec| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (k, c) in vec.iter() {
                row[columns[k]] = c.eval(at);
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..columns.len() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `1 / c` for `c = +-v^k`.
pub fn unit_inverse(c: &LaurentPoly) -> Option<LaurentPoly> {
    if !c.is_unit() {
        return None;
    }
    let (e, x) = c.terms().next()?;
    let sign = if x.is_one() { 1 } else { -1 };
    Some(LaurentPoly::monomial(sign, -e))
}

/// Solves `sum a_i columns[i] = target` over Laurent polynomials by
/// elimination with unit pivots only. Fails if some column never receives a
/// unit pivot or the target is outside the span.
pub fn solve_unit_pivot<K: Ord + Clone>(columns: &[Combination<K>], target: &Combination<K>) -> Result<Vec<LaurentPoly>> {
    let m = columns.len();
    // rows: key -> (coefficients per column, target entry)
    let mut rows: BTreeMap<K, (Vec<LaurentPoly>, LaurentPoly)> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col.iter() {
            rows.entry(k.clone()).or_insert_with(|| (vec![LaurentPoly::zero(); m], LaurentPoly::zero())).0[j] = c.clone();
        }
    }
    for (k, c) in target.iter() {
        rows.entry(k.clone()).or_insert_with(|| (vec![LaurentPoly::zero(); m], LaurentPoly::zero())).1 = c.clone();
    }
    let mut rows: Vec<(Vec<LaurentPoly>, LaurentPoly)> = rows.into_values().collect();
    let mut pivot_row = vec![usize::MAX; m];
    let mut used = vec![false; rows.len()];
    let mut remaining: Vec<usize> = (0..m).collect();
    while !remaining.is_empty() {
        let found = remaining.iter().enumerate().find_map(|(pos, &j)| {
            (0..rows.len()).find(|&i| !used[i] && rows[i].0[j].is_unit()).map(|i| (pos, j, i))
        });
        let Some((pos, j, i)) = found else {
            return Err(Error::Expansion(format!("no unit pivot for {} remaining columns", remaining.len())));
        };
        remaining.swap_remove(pos);
        let inv = unit_inverse(&rows[i].0[j]).expect("unit");
        for x in rows[i].0.iter_mut() {
            *x = &*x * &inv;
        }
        rows[i].1 = &rows[i].1 * &inv;
        let (pc, pt) = rows[i].clone();
        for (i2, row) in rows.iter_mut().enumerate() {
            if i2 == i || row.0[j].is_zero() {
                continue;
            }
            let f = row.0[j].clone();
            for (x, p) in row.0.iter_mut().zip(&pc) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
            row.1 = &row.1 - &(&f * &pt);
        }
        used[i] = true;
        pivot_row[j] = i;
    }
    if rows.iter().enumerate().any(|(i, row)| !used[i] && !row.1.is_zero()) {
        return Err(Error::Expansion("target is not in the span of the columns".into()));
    }
    Ok(pivot_row.iter().map(|&i| rows[i].1.clone()).collect())
}

/// A basis of `{x : row . x = 0 for every row}` over `Q`; rows are sparse
/// maps from column to entry.
pub fn nullspace(rows: impl IntoIterator<Item = BTreeMap<usize, BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    // pivot column -> row with leading entry 1 at that column
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, x| !x.is_zero());
        let mut cursor = 0;
        while let Some((c, f)) = row.range(cursor..).find(|(c, _)| pivots.contains_key(c)).map(|(c, x)| (*c, x.clone())) {
            for (k, p) in &pivots[&c] {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= &f * p;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            cursor = c + 1;
        }
        let Some((&lead, x)) = row.iter().next() else {
            continue;
        };
        let inv = x.recip();
        for y in row.values_mut() {
            *y *= &inv;
        }
        pivots.insert(lead, row);
    }
    // back substitution, highest pivot first
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for &c in &cols {
        let mut row = pivots.remove(&c).expect("pivot");
        let later: Vec<(usize, BigRational)> =
            row.iter().filter(|(k, _)| **k != c && pivots.contains_key(k)).map(|(k, x)| (*k, x.clone())).collect();
        for (k, f) in later {
            for (j, p) in &pivots[&k] {
                let e = row.entry(*j).or_insert_with(BigRational::zero);
                *e -= &f * p;
                if e.is_zero() {
                    row.remove(j);
                }
            }
        }
        pivots.insert(c, row);
    }
    (0..ncols)
        .filter(|f| !pivots.contains_key(f))
        .map(|f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (&c, row) in &pivots {
                if let Some(e) = row.get(&f) {
                    x[c] = -e.clone();
                }
            }
            x
        })
        .collect()
}
