//! Independent oracles: brute-force relation evaluation and dense ranks.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ainf_core::ainfinity::AInfAlgebra;
use ainf_core::{Field, Scalar};

/// Every basis tuple (a_n, …, a_1) that can carry a nonzero term of some
/// relation, evaluated by summing over all splits. Returns the tuples whose
/// sum is nonzero, as id strings.
pub fn relation_failures(alg: &AInfAlgebra) -> Vec<Vec<String>> {
    let space = alg.space();
    let n = alg.dim();
    let bound = alg.maps().map(|(d, _)| d).max().unwrap_or(0);
    // chains run a_1 → a_2 → …, stored right to left
    let src = |k: usize| space.element(k).source;
    let tgt = |k: usize| space.element(k).target;

    let mut candidates = BTreeSet::new();
    for (_, m) in alg.maps() {
        for (inner, _) in m.entries() {
            for outer in 1..=bound {
                for left in 0..outer {
                    let right = outer - 1 - left;
                    let lefts = strings(n, left, |k| src(k) == tgt(inner[0]), &src, &tgt);
                    let rights = strings(n, right, |_| true, &src, &tgt);
                    for l in &lefts {
                        for r in &rights {
                            if let Some(&first) = r.first() {
                                if tgt(first) != src(*inner.last().unwrap()) {
                                    continue;
                                }
                            }
                            let mut t = l.clone();
                            t.extend_from_slice(inner);
                            t.extend_from_slice(r);
                            candidates.insert(t);
                        }
                    }
                }
            }
        }
    }

    let mut bad = Vec::new();
    for t in candidates {
        if !relation_at(alg, &t).iter().all(|(_, c)| c.is_zero()) {
            bad.push(t.iter().map(|&k| space.id(k).to_string()).collect());
        }
    }
    bad
}

/// Strings (b_m, …, b_1) with composable neighbours, b_1 accepted by `end`.
/// The leftmost element sits at index 0.
fn strings(
    n: usize,
    len: usize,
    end: impl Fn(usize) -> bool,
    src: &impl Fn(usize) -> usize,
    tgt: &impl Fn(usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = if len == 0 {
        vec![vec![]]
    } else {
        (0..n).filter(|&k| end(k)).map(|k| vec![k]).collect()
    };
    for _ in 1..len {
        let mut next = Vec::new();
        for s in &out {
            for k in 0..n {
                if src(k) == tgt(s[0]) {
                    let mut t = vec![k];
                    t.extend_from_slice(s);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

/// Σ_{r,s} (−1)^{‖a_1‖+…+‖a_r‖} μ(a_n, …, μ^s(a_{r+s}, …, a_{r+1}), a_r, …, a_1).
fn relation_at(alg: &AInfAlgebra, t: &[usize]) -> BTreeMap<usize, Scalar> {
    let field = alg.field();
    let space = alg.space();
    let n = t.len();
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for r in 0..n {
        let sign_exp: i64 = t[n - r..].iter().map(|&k| space.degree(k) - 1).sum();
        let sign = sign_of(field, sign_exp);
        for s in 1..=(n - r) {
            let inner = &t[n - r - s..n - r];
            let Some(m) = alg.mu(s) else { continue };
            let Some(v) = m.get(inner) else { continue };
            for (mid, c) in v.iter() {
                let mut outer = t[..n - r - s].to_vec();
                outer.push(mid);
                outer.extend_from_slice(&t[n - r..]);
                let Some(mo) = alg.mu(outer.len()) else {
                    continue;
                };
                let Some(w) = mo.get(&outer) else { continue };
                for (out, c2) in w.iter() {
                    let term = &(&sign * c) * c2;
                    let slot = acc.entry(out).or_insert_with(|| field.zero());
                    *slot += &term;
                }
            }
        }
    }
    acc
}

fn sign_of(field: Field, e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        field.one()
    } else {
        -field.one()
    }
}

/// Rank by plain Gaussian elimination on dense rows.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inverse().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in 0..cols {
                    let sub = &f * &pivot[j];
                    rows[r][j] = &rows[r][j] - &sub;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// dim H^k = dim C^k − rank(d on C^k) − rank(d on C^{k−1}), with d = μ¹.
pub fn cohomology_dims(alg: &AInfAlgebra) -> BTreeMap<i64, usize> {
    let field = alg.field();
    let space = alg.space();
    let degrees: BTreeSet<i64> = space.basis().iter().map(|b| b.degree).collect();
    let in_degree =
        |d: i64| -> Vec<usize> { (0..alg.dim()).filter(|&k| space.degree(k) == d).collect() };
    let rank_from = |d: i64| -> usize {
        let src = in_degree(d);
        let tgt = in_degree(d + 1);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let rows = src
            .iter()
            .map(|&k| {
                let image = alg
                    .mu(1)
                    .and_then(|m| m.get(&[k]).cloned())
                    .unwrap_or_default();
                tgt.iter()
                    .map(|&j| image.get(j).cloned().unwrap_or_else(|| field.zero()))
                    .collect()
            })
            .collect();
        dense_rank(rows)
    };
    let mut out = BTreeMap::new();
    for d in degrees {
        let h = in_degree(d).len() - rank_from(d) - rank_from(d - 1);
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

/// Structure constants keyed by ids, for basis-order-free comparisons.
pub fn constants(alg: &AInfAlgebra) -> BTreeMap<Vec<String>, BTreeMap<String, String>> {
    let space = alg.space();
    let mut out = BTreeMap::new();
    for (_, m) in alg.maps() {
        for (inputs, v) in m.entries() {
            let key = inputs.iter().map(|&k| space.id(k).to_string()).collect();
            let val: BTreeMap<String, String> = v
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (space.id(k).to_string(), c.to_text()))
                .collect();
            if !val.is_empty() {
                out.insert(key, val);
            }
        }
    }
    out
}

pub fn fields() -> [Field; 2] {
    [Field::Rational, Field::prime(3).unwrap()]
}
