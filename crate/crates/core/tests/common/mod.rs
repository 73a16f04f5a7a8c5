//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the interlacing code under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ggp_core::{HalfInt, Lattice, LatticeSpectrum, Sign, SignedSpectrum, ValueWindow};

/// The eight admissible adjacent pairs, written out literally.
pub const ALLOWED: [(&str, &str); 8] = [
    ("(+)", "+"),
    ("+", "(+)"),
    ("-", "(-)"),
    ("(-)", "-"),
    ("+", "-"),
    ("-", "+"),
    ("(+)", "(-)"),
    ("(-)", "(+)"),
];

pub fn table_allows(a: &str, b: &str) -> bool {
    ALLOWED.contains(&(a, b))
}

fn tag(sign: Sign, small: bool) -> &'static str {
    match (sign, small) {
        (Sign::Plus, false) => "+",
        (Sign::Minus, false) => "-",
        (Sign::Plus, true) => "(+)",
        (Sign::Minus, true) => "(-)",
    }
}

/// Tries every placement of the small entries among the big ones, keeps the
/// weakly descending ones (cross ties within `tol` in either order) and checks
/// adjacency against [`ALLOWED`].
pub fn oracle_ggp(big: &SignedSpectrum, small: &SignedSpectrum, tol: f64) -> bool {
    let n = big.len() + small.len();
    let k = small.len();
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
        let (mut i, mut j) = (0, 0);
        let mut merged: Vec<(f64, &'static str)> = Vec::with_capacity(n);
        for pos in 0..n {
            if mask >> pos & 1 == 1 {
                merged.push((small.values()[j], tag(small.signs()[j], true)));
                j += 1;
            } else {
                merged.push((big.values()[i], tag(big.signs()[i], false)));
                i += 1;
            }
        }
        merged.windows(2).all(|w| w[0].0 >= w[1].0 - tol && table_allows(w[0].1, w[1].1))
    })
}

/// Every spectrum of signature `(p, q-1)` with distinct descending values on
/// `lattice` inside `window`, filtered by [`oracle_ggp`].
pub fn brute_force_small(big: &SignedSpectrum, lattice: Lattice, window: &ValueWindow, tol: f64) -> Vec<LatticeSpectrum> {
    let (p, q) = big.signature();
    let k = p + q - 1;
    let mut points: Vec<HalfInt> = Vec::new();
    let mut d = (2.0 * window.lo).ceil() as i64;
    while (d as f64) <= 2.0 * window.hi {
        let h = HalfInt::from_doubled(d);
        if lattice.contains(h) {
            points.push(h);
        }
        d += 1;
    }
    points.reverse();
    let mut out = BTreeSet::new();
    for subset in subsets(points.len(), k) {
        let values: Vec<HalfInt> = subset.iter().map(|&i| points[i]).collect();
        for signs in sign_vectors(k, p) {
            let small = SignedSpectrum::new(values.iter().map(|v| v.to_f64()).collect(), signs.clone()).unwrap();
            if oracle_ggp(big, &small, tol) {
                out.insert(LatticeSpectrum::new(values.clone(), signs).unwrap());
            }
        }
    }
    out.into_iter().collect()
}

/// Increasing index tuples of size `k` from `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All sign vectors of length `len` with exactly `plus` entries `+1`.
pub fn sign_vectors(len: usize, plus: usize) -> Vec<Vec<Sign>> {
    (0u32..1 << len)
        .filter(|m| m.count_ones() as usize == plus)
        .map(|m| (0..len).map(|i| if m >> i & 1 == 1 { Sign::Plus } else { Sign::Minus }).collect())
        .collect()
}

pub fn spectrum(values: &[f64], signs: &[i64]) -> SignedSpectrum {
    SignedSpectrum::from_ints(values, signs).unwrap()
}

/// Exhaustive strictly-interlacing weights, straight from the inequalities.
pub fn weyl_oracle(lambda: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let ranges: Vec<(i64, i64)> = lambda.windows(2).map(|w| (w[1], w[0])).collect();
    let mut cur = Vec::new();
    fn go(ranges: &[(i64, i64)], cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if cur.len() == ranges.len() {
            out.insert(cur.clone());
            return;
        }
        let (lo, hi) = ranges[cur.len()];
        for v in lo..=hi {
            cur.push(v);
            go(ranges, cur, out);
            cur.pop();
        }
    }
    go(&ranges, &mut cur, &mut out);
    out
}
