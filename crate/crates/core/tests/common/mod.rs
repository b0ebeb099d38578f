//! Independent oracles. Nothing here calls into the crate's algorithms; words
//! are plain index vectors and polynomials plain maps.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use lie_gsb::{BracketTree, Word};

pub type Raw = Vec<u16>;
pub type RawPoly = BTreeMap<Raw, i64>;

pub fn raw(w: &Word) -> Raw {
    w.iter().map(|l| l.0).collect()
}

pub fn mobius(n: u64) -> i64 {
    let (mut n, mut k, mut m) = (n, 2, 1i64);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            m = -m;
        }
        k += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// `(1/d) Σ_{e|d} μ(e) q^{d/e}`.
pub fn witt(q: u64, d: u64) -> u64 {
    let s: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (s / d as i128) as u64
}

pub fn all_words(q: u16, d: usize) -> Vec<Raw> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Primitive necklaces of length `d`: rotation classes with `d` elements.
pub fn primitive_necklaces(q: u16, d: usize) -> usize {
    let mut seen = HashSet::new();
    let mut count = 0;
    for w in all_words(q, d) {
        let rots: Vec<Raw> = (0..d).map(|k| [&w[k..], &w[..k]].concat()).collect();
        let canon = rots.iter().min().unwrap().clone();
        if seen.insert(canon) {
            let distinct: HashSet<&Raw> = rots.iter().collect();
            if distinct.len() == d {
                count += 1;
            }
        }
    }
    count
}

/// Lex order with the empty word greatest: a proper prefix beats its
/// extensions.
pub fn lex_gt(a: &[u16], b: &[u16]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x > y;
        }
    }
    a.len() < b.len()
}

pub fn deglex_gt(a: &[u16], b: &[u16]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && lex_gt(a, b))
}

/// `w = uv` with `u, v` nonempty implies `w > vu`.
pub fn is_alsw_brute(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| lex_gt(w, &[&w[k..], &w[..k]].concat()))
}

/// Every way to write `w` as ALSWs `c1 ... cn` with `c1 ⪯ ... ⪯ cn` in lex.
pub fn factorizations_brute(w: &[u16]) -> Vec<Vec<Raw>> {
    if w.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 1..=w.len() {
        let head = &w[..k];
        if !is_alsw_brute(head) {
            continue;
        }
        for mut rest in factorizations_brute(&w[k..]) {
            if rest.first().map_or(true, |f| !lex_gt(head, f)) {
                rest.insert(0, head.to_vec());
                out.push(rest);
            }
        }
    }
    out
}

pub fn poly_add(acc: &mut RawPoly, p: &RawPoly, c: i64) {
    for (w, x) in p {
        let e = acc.entry(w.clone()).or_insert(0);
        *e += c * x;
        if *e == 0 {
            acc.remove(w);
        }
    }
}

pub fn poly_mul(p: &RawPoly, q: &RawPoly) -> RawPoly {
    let mut out = RawPoly::new();
    for (a, x) in p {
        for (b, y) in q {
            let mut w = a.clone();
            w.extend_from_slice(b);
            poly_add(&mut out, &RawPoly::from([(w, 1)]), x * y);
        }
    }
    out
}

pub fn commutator(p: &RawPoly, q: &RawPoly) -> RawPoly {
    let mut out = poly_mul(p, q);
    poly_add(&mut out, &poly_mul(q, p), -1);
    out
}

/// Naive associative expansion of a bracketing.
pub fn expand_tree(t: &BracketTree) -> RawPoly {
    match t {
        BracketTree::Leaf(l) => RawPoly::from([(vec![l.0], 1)]),
        BracketTree::Node(a, b) => commutator(&expand_tree(a), &expand_tree(b)),
    }
}

pub fn leading(p: &RawPoly) -> Option<(&Raw, i64)> {
    let mut best: Option<(&Raw, i64)> = None;
    for (w, c) in p {
        if best.map_or(true, |(b, _)| deglex_gt(w, b)) {
            best = Some((w, *c));
        }
    }
    best
}

/// Words reachable from `u` by single replacements `l ↔ r`, staying within
/// length `cap`.
pub fn congruence_class(rules: &[(Raw, Raw)], u: &[u16], cap: usize) -> HashSet<Raw> {
    let mut seen: HashSet<Raw> = HashSet::from([u.to_vec()]);
    let mut queue = VecDeque::from([u.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for (l, r) in rules {
            for (from, to) in [(l, r), (r, l)] {
                if from.len() > w.len() {
                    continue;
                }
                for pos in 0..=w.len() - from.len() {
                    if &w[pos..pos + from.len()] == from.as_slice() {
                        let next = [&w[..pos], to.as_slice(), &w[pos + from.len()..]].concat();
                        if next.len() <= cap && seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// Index of `t_ij` (`1 ≤ i < j ≤ m`) in the order `t_ij < t_kl` iff `i < k`
/// or `i = k, j < l`.
pub fn t_index(m: usize, i: usize, j: usize) -> u16 {
    let mut idx = 0;
    for a in 1..=m {
        for b in a + 1..=m {
            if (a, b) == (i, j) {
                return idx;
            }
            idx += 1;
        }
    }
    panic!("no t_{i}{j}")
}

/// The nine ambiguity families of the Drinfeld-Kohno relations over indices
/// `1..=m` (with `m = n - 1`), as `(family of f, family of g, w)` with
/// families numbered 1, 2, 3.
pub fn dk_ambiguity_oracle(m: usize) -> Vec<(usize, usize, Raw)> {
    let t = |i: usize, j: usize| t_index(m, i, j);
    let r = 1..=m;
    let mut out = Vec::new();
    // Leading words: (1) t_ij t_kl with k<i<j, k<l, l∉{i,j};
    // (2) t_jk t_ij and (3) t_jk t_ik with i<j<k.
    let lead1 = |i: usize, j: usize, k: usize, l: usize| k < i && i < j && k < l && l != i && l != j;
    for i in r.clone() {
        for j in r.clone() {
            for k in r.clone() {
                for l in r.clone() {
                    if !lead1(i, j, k, l) {
                        continue;
                    }
                    for m_ in r.clone() {
                        for q in r.clone() {
                            if lead1(k, l, m_, q) {
                                out.push((1, 1, vec![t(i, j), t(k, l), t(m_, q)]));
                            }
                        }
                        if m_ < k {
                            out.push((1, 2, vec![t(i, j), t(k, l), t(m_, k)]));
                            out.push((1, 3, vec![t(i, j), t(k, l), t(m_, l)]));
                        }
                    }
                }
            }
        }
    }
    for i in r.clone() {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for m_ in 1..i {
                    for q in m_ + 1..=m {
                        if q != i && q != j {
                            out.push((2, 1, vec![t(j, k), t(i, j), t(m_, q)]));
                        }
                        if q != i && q != k {
                            out.push((3, 1, vec![t(j, k), t(i, k), t(m_, q)]));
                        }
                    }
                    out.push((2, 2, vec![t(j, k), t(i, j), t(m_, i)]));
                    out.push((2, 3, vec![t(j, k), t(i, j), t(m_, j)]));
                    out.push((3, 2, vec![t(j, k), t(i, k), t(m_, i)]));
                    out.push((3, 3, vec![t(j, k), t(i, k), t(m_, k)]));
                }
            }
        }
    }
    out.sort();
    out
}

/// `Σ_i W(n-1-i, d)` for `i = 1..n-2`: ranks of a sum of free Lie algebras
/// on `n-2, n-3, ..., 1` generators.
pub fn dk_witt_sum(n: usize, d: usize) -> u64 {
    (1..=n - 2).map(|i| witt((n - 1 - i) as u64, d as u64)).sum()
}
