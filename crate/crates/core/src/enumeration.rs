//! Enumeration of interlacing partners and branching laws.
//!
//! Small spectra interlacing a fixed big one are produced in two stages:
//! first every admissible sign pattern is built by backtracking over the
//! alternation constraint, then the lattice values of the small entries are
//! filled in gap by gap. The discrete spectrum is infinite, so a finite
//! [`ValueWindow`] is mandatory.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{HalfInt, Lattice, LatticeSpectrum, ValueWindow};
use crate::spectrum::{Group, Sign, SignPattern, SignedSpectrum, Symbol, DEFAULT_TOL};

/// Harish-Chandra parameter of a discrete series of `U(p,q)`: distinct
/// values, integers when `p + q` is odd and half-integers when it is even.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarishChandraParameter {
    spectrum: LatticeSpectrum,
}

impl HarishChandraParameter {
    pub fn new(spectrum: LatticeSpectrum) -> Result<Self> {
        if spectrum.is_empty() {
            return Err(Error::InvalidSpectrum("parameter must have at least one value".into()));
        }
        let lattice = Lattice::for_group_size(spectrum.len());
        if let Some(v) = spectrum.values().iter().find(|&&v| !lattice.contains(v)) {
            let want = match lattice {
                Lattice::Integer => "integers",
                Lattice::HalfInteger => "half-integers",
            };
            return Err(Error::LatticeViolation(format!(
                "value {v} is off the lattice; a group of size {} needs {want}",
                spectrum.len()
            )));
        }
        if !spectrum.is_distinct() {
            return Err(Error::LatticeViolation(format!("values of {spectrum} are not distinct")));
        }
        Ok(HarishChandraParameter { spectrum })
    }

    pub fn from_spectrum(spec: &SignedSpectrum) -> Result<Self> {
        HarishChandraParameter::new(LatticeSpectrum::from_spectrum(spec)?)
    }

    pub fn spectrum(&self) -> &LatticeSpectrum {
        &self.spectrum
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::for_group_size(self.spectrum.len())
    }

    pub fn signature(&self) -> (usize, usize) {
        self.spectrum.signature()
    }
}

impl Serialize for HarishChandraParameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            values: &'a [HalfInt],
            signs: &'a [Sign],
            lattice: Lattice,
        }
        Out { values: self.spectrum.values(), signs: self.spectrum.signs(), lattice: self.lattice() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HarishChandraParameter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            values: Vec<HalfInt>,
            signs: Vec<Sign>,
            lattice: Option<Lattice>,
        }
        let raw = Raw::deserialize(d)?;
        let spectrum = LatticeSpectrum::new(raw.values, raw.signs).map_err(de::Error::custom)?;
        let hc = HarishChandraParameter::new(spectrum).map_err(de::Error::custom)?;
        match raw.lattice {
            Some(l) if l != hc.lattice() => Err(de::Error::custom(format!(
                "declared lattice {l} does not match group size {}",
                hc.spectrum.len()
            ))),
            _ => Ok(hc),
        }
    }
}

/// Every sign pattern of length `2(p+q) - 1` that interleaves `big_signs`
/// (order kept) with `p` copies of `⊕` and `q - 1` copies of `⊖` and uses only
/// allowed adjacent pairs.
pub fn enumerate_sign_patterns(big_signs: &[Sign]) -> Result<Vec<SignPattern>> {
    let p = big_signs.iter().filter(|&&s| s == Sign::Plus).count();
    let q = big_signs.len() - p;
    if q == 0 {
        return Err(Error::SignatureMismatch(format!("big signs have signature ({p},0); need q >= 1")));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(2 * big_signs.len() - 1);
    extend_patterns(big_signs, 0, p, q - 1, &mut current, &mut out);
    Ok(out)
}

fn extend_patterns(
    big: &[Sign],
    next_big: usize,
    oplus_left: usize,
    ominus_left: usize,
    current: &mut Vec<Symbol>,
    out: &mut Vec<SignPattern>,
) {
    if next_big == big.len() && oplus_left == 0 && ominus_left == 0 {
        out.push(SignPattern(current.clone()));
        return;
    }
    let fits = |s: Symbol, current: &Vec<Symbol>| current.last().is_none_or(|&l| l.kappa() != s.kappa());
    if next_big < big.len() {
        let s = Symbol::new(big[next_big], Group::Big);
        if fits(s, current) {
            current.push(s);
            extend_patterns(big, next_big + 1, oplus_left, ominus_left, current, out);
            current.pop();
        }
    }
    if oplus_left > 0 && fits(Symbol::OPLUS, current) {
        current.push(Symbol::OPLUS);
        extend_patterns(big, next_big, oplus_left - 1, ominus_left, current, out);
        current.pop();
    }
    if ominus_left > 0 && fits(Symbol::OMINUS, current) {
        current.push(Symbol::OMINUS);
        extend_patterns(big, next_big, oplus_left, ominus_left - 1, current, out);
        current.pop();
    }
}

/// All spectra of signature `(p, q-1)` with distinct values on `lattice`
/// inside `window` that interlace `big`, in ascending lexicographic order of
/// (values, signs). Uses [`DEFAULT_TOL`] for ties with big values.
pub fn enumerate_small_spectra(
    big: &SignedSpectrum,
    lattice: Lattice,
    window: &ValueWindow,
) -> Result<Vec<LatticeSpectrum>> {
    enumerate_small_spectra_with(big, lattice, window, DEFAULT_TOL, Execution::default())
}

/// [`enumerate_small_spectra`] with an explicit tie tolerance and execution
/// mode. Patterns are processed independently; the output order does not
/// depend on `exec`.
pub fn enumerate_small_spectra_with(
    big: &SignedSpectrum,
    lattice: Lattice,
    window: &ValueWindow,
    tol: f64,
    exec: Execution,
) -> Result<Vec<LatticeSpectrum>> {
    if big.len() < 2 {
        return Err(Error::RankTooSmall(big.len()));
    }
    big.ensure_regular(tol)?;
    let points = lattice.points(window);
    if points.is_empty() {
        return Err(Error::EmptyWindow { lo: window.lo, hi: window.hi });
    }
    let patterns = enumerate_sign_patterns(big.signs())?;
    let per_pattern = exec.map_slice(&patterns, |pattern| fill_pattern(big, pattern, lattice, window, tol));
    let found: BTreeSet<LatticeSpectrum> = per_pattern.into_iter().flatten().collect();
    Ok(found.into_iter().collect())
}

/// Assigns lattice values to the small entries of `pattern`.
fn fill_pattern(
    big: &SignedSpectrum,
    pattern: &SignPattern,
    lattice: Lattice,
    window: &ValueWindow,
    tol: f64,
) -> Vec<LatticeSpectrum> {
    let bv = big.values();
    let n = bv.len();
    // Admissible doubled-value range and sign of each small entry.
    let mut slots: Vec<(i64, i64, Sign)> = Vec::new();
    let mut seen_big = 0usize;
    for sym in pattern.symbols() {
        match sym.group {
            Group::Big => seen_big += 1,
            Group::Small => {
                let hi = if seen_big == 0 { window.hi } else { window.hi.min(bv[seen_big - 1] + tol) };
                let lo = if seen_big == n { window.lo } else { window.lo.max(bv[seen_big] - tol) };
                let hi = lattice.floor_point(hi).doubled();
                let lo = lattice.ceil_point(lo).doubled();
                if lo > hi {
                    return Vec::new();
                }
                slots.push((lo, hi, sym.sign));
            }
        }
    }
    let signs: Vec<Sign> = slots.iter().map(|s| s.2).collect();
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(slots.len());
    fill_slots(&slots, &signs, i64::MAX, &mut values, &mut out);
    out
}

fn fill_slots(
    slots: &[(i64, i64, Sign)],
    signs: &[Sign],
    ceiling: i64,
    values: &mut Vec<HalfInt>,
    out: &mut Vec<LatticeSpectrum>,
) {
    let k = values.len();
    if k == slots.len() {
        out.push(LatticeSpectrum::from_sorted(values.clone(), signs.to_vec()));
        return;
    }
    let (lo, hi, _) = slots[k];
    let mut v = hi.min(ceiling);
    while v >= lo {
        values.push(HalfInt::from_doubled(v));
        fill_slots(slots, signs, v - 2, values, out);
        values.pop();
        v -= 2;
    }
}

/// Discrete spectrum of the restriction to `U(p,q-1)` of the discrete series
/// with parameter `hc`, truncated to `window`: every parameter of the smaller
/// group interlacing `hc`, each with multiplicity one.
pub fn ggp_discrete_branching(
    hc: &HarishChandraParameter,
    window: &ValueWindow,
) -> Result<Vec<HarishChandraParameter>> {
    ggp_discrete_branching_with(hc, window, Execution::default())
}

pub fn ggp_discrete_branching_with(
    hc: &HarishChandraParameter,
    window: &ValueWindow,
    exec: Execution,
) -> Result<Vec<HarishChandraParameter>> {
    let big = hc.spectrum().to_spectrum()?;
    let lattice = Lattice::for_group_size(big.len() - 1);
    // The two lattices have opposite parity, so values never tie and exact
    // comparison is correct.
    enumerate_small_spectra_with(&big, lattice, window, 0.0, exec)?
        .into_iter()
        .map(HarishChandraParameter::new)
        .collect()
}

fn ensure_descending(lambda: &[i64]) -> Result<()> {
    match lambda.windows(2).position(|w| w[0] < w[1]) {
        Some(k) => Err(Error::NotDescending(k + 1)),
        None => Ok(()),
    }
}

/// Highest weights of `U(n-1)` occurring in the `U(n)` representation with
/// highest weight `lambda`, in descending lexicographic order.
pub fn weyl_branching(lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    if lambda.len() < 2 {
        return Err(Error::InvalidSpectrum(format!("need a weight of length >= 2, got {}", lambda.len())));
    }
    ensure_descending(lambda)?;
    let mut out = Vec::new();
    let mut mu = Vec::with_capacity(lambda.len() - 1);
    extend_weyl(lambda, &mut mu, &mut out);
    Ok(out)
}

fn extend_weyl(lambda: &[i64], mu: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let k = mu.len();
    if k + 1 == lambda.len() {
        out.push(mu.clone());
        return;
    }
    for m in (lambda[k + 1]..=lambda[k]).rev() {
        mu.push(m);
        extend_weyl(lambda, mu, out);
        mu.pop();
    }
}

/// Dimension of the `U(n)` representation with highest weight `lambda`:
/// `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`, computed exactly.
pub fn weyl_dimension(lambda: &[i64]) -> Result<BigUint> {
    ensure_descending(lambda)?;
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            let gap = (lambda[i] - lambda[j]) as u128 + (j - i) as u128;
            num *= BigUint::from(gap);
            den *= BigUint::from((j - i) as u64);
        }
    }
    debug_assert_eq!(&num % &den, BigUint::from(0u32));
    Ok(num / den)
}

/// All `+` signs sit above all `-` signs.
pub fn is_holomorphic_pattern(spec: &SignedSpectrum) -> bool {
    spec.signs().windows(2).all(|w| !(w[0] == Sign::Minus && w[1] == Sign::Plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(values: &[f64], signs: &[i64]) -> SignedSpectrum {
        SignedSpectrum::from_ints(values, signs).unwrap()
    }

    fn lat(values: &[f64], signs: &[i64]) -> LatticeSpectrum {
        LatticeSpectrum::from_spectrum(&spec(values, signs)).unwrap()
    }

    fn signs(s: &[i64]) -> Vec<Sign> {
        s.iter().map(|&x| Sign::from_value(x).unwrap()).collect()
    }

    fn patterns(s: &[i64]) -> Vec<String> {
        enumerate_sign_patterns(&signs(s)).unwrap().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn sign_patterns_small_cases() {
        assert_eq!(patterns(&[1, -1]), vec!["(+)+-"]);
        assert_eq!(patterns(&[1, 1, -1, -1, -1]), vec!["(+)+(+)+-(-)-(-)-"]);
        let mixed = patterns(&[1, -1, 1]);
        assert!(mixed.contains(&"(+)+-+(+)".to_string()));
        assert!(enumerate_sign_patterns(&signs(&[1, 1])).is_err());
    }

    #[test]
    fn sign_patterns_match_brute_force() {
        // Every placement of p ⊕'s and q-1 ⊖'s among 2n-1 slots, filtered.
        for big in [vec![1, -1, 1], vec![-1, 1, -1, 1], vec![1, -1, -1], vec![-1, -1]] {
            let bs = signs(&big);
            let n = bs.len();
            let p = big.iter().filter(|&&s| s == 1).count();
            let len = 2 * n - 1;
            let mut expect = BTreeSet::new();
            for mask in 0u32..(1 << len) {
                if mask.count_ones() as usize != n - 1 {
                    continue;
                }
                for smask in 0u32..(1 << (n - 1)) {
                    if smask.count_ones() as usize != p {
                        continue;
                    }
                    let (mut bi, mut si) = (0, 0);
                    let mut seq = Vec::new();
                    for pos in 0..len {
                        if mask >> pos & 1 == 1 {
                            let sign = if smask >> si & 1 == 1 { Sign::Plus } else { Sign::Minus };
                            seq.push(Symbol::new(sign, Group::Small));
                            si += 1;
                        } else {
                            seq.push(Symbol::new(bs[bi], Group::Big));
                            bi += 1;
                        }
                    }
                    let pat = SignPattern(seq);
                    if pat.is_allowed() {
                        expect.insert(pat.to_string());
                    }
                }
            }
            let got: BTreeSet<String> = patterns(&big).into_iter().collect();
            assert_eq!(got.len(), patterns(&big).len(), "duplicates for {big:?}");
            assert_eq!(got, expect, "{big:?}");
        }
    }

    #[test]
    fn small_spectra_for_u11() {
        let big = spec(&[2.0, 1.0], &[1, -1]);
        let w = ValueWindow::new(-5.0, 5.0).unwrap();
        let got = enumerate_small_spectra(&big, Lattice::Integer, &w).unwrap();
        let expect: Vec<_> = [2.0, 3.0, 4.0, 5.0].iter().map(|&v| lat(&[v], &[1])).collect();
        assert_eq!(got, expect);

        let w = ValueWindow::new(-5.0, 2.0).unwrap();
        assert_eq!(enumerate_small_spectra(&big, Lattice::Integer, &w).unwrap(), vec![lat(&[2.0], &[1])]);
        let w = ValueWindow::new(-5.0, 1.5).unwrap();
        assert!(enumerate_small_spectra(&big, Lattice::Integer, &w).unwrap().is_empty());

        let w = ValueWindow::new(0.2, 0.8).unwrap();
        assert!(matches!(
            enumerate_small_spectra(&big, Lattice::Integer, &w),
            Err(Error::EmptyWindow { .. })
        ));
    }

    #[test]
    fn small_spectra_contains_worked_example() {
        let big = spec(&[3.0, 1.0, 0.0], &[1, 1, -1]);
        let w = ValueWindow::new(-2.0, 6.0).unwrap();
        let got = enumerate_small_spectra(&big, Lattice::Integer, &w).unwrap();
        assert!(got.contains(&lat(&[4.0, 2.0], &[1, 1])));
        assert!(got.iter().all(|s| s.signature() == (2, 0)));
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted);
    }

    #[test]
    fn branching_u11() {
        let hc = HarishChandraParameter::new(lat(&[1.5, 0.5], &[1, -1])).unwrap();
        let w = ValueWindow::new(-4.0, 4.0).unwrap();
        let got = ggp_discrete_branching(&hc, &w).unwrap();
        let values: Vec<f64> = got.iter().map(|h| h.spectrum().values()[0].to_f64()).collect();
        assert_eq!(values, vec![2.0, 3.0, 4.0]);
        assert!(got.iter().all(|h| h.lattice() == Lattice::Integer && h.spectrum().signs() == [Sign::Plus]));
    }

    #[test]
    fn branching_u21() {
        let hc = HarishChandraParameter::new(lat(&[1.0, 0.0, -1.0], &[1, -1, 1])).unwrap();
        let w = ValueWindow::new(-3.0, 3.0).unwrap();
        let got: Vec<String> = ggp_discrete_branching(&hc, &w).unwrap().iter().map(|h| h.spectrum().to_string()).collect();
        // Unique pattern (+)+-+(+): one value above 1, one below -1.
        assert_eq!(
            got,
            vec![
                "(3/2, -5/2)/(+, +)",
                "(3/2, -3/2)/(+, +)",
                "(5/2, -5/2)/(+, +)",
                "(5/2, -3/2)/(+, +)"
            ]
        );
    }

    #[test]
    fn parity_violations_rejected() {
        let err = HarishChandraParameter::new(lat(&[2.0, 1.0, 0.0, -1.0], &[1, 1, -1, -1])).unwrap_err();
        assert!(matches!(err, Error::LatticeViolation(_)));
        assert!(HarishChandraParameter::new(lat(&[0.5, 1.5], &[1, -1])).is_ok());
        assert!(HarishChandraParameter::new(lat(&[1.5, 1.5], &[1, -1])).is_err());
        let json = r#"{"values":["3/2","1/2"],"signs":[1,-1],"lattice":"Z"}"#;
        assert!(serde_json::from_str::<HarishChandraParameter>(json).is_err());
        let json = r#"{"values":["3/2","1/2"],"signs":[1,-1],"lattice":"Z+1/2"}"#;
        let hc: HarishChandraParameter = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&hc).unwrap(), json);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_branching(&[2, 0]).unwrap(), vec![vec![2], vec![1], vec![0]]);
        assert_eq!(weyl_branching(&[1, 1]).unwrap(), vec![vec![1]]);
        assert_eq!(
            weyl_branching(&[3, 1, 0]).unwrap(),
            vec![vec![3, 1], vec![3, 0], vec![2, 1], vec![2, 0], vec![1, 1], vec![1, 0]]
        );
        assert!(matches!(weyl_branching(&[0, 1]), Err(Error::NotDescending(1))));
        assert!(weyl_branching(&[3]).is_err());
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(weyl_dimension(&[0, 0, 0]).unwrap(), BigUint::from(1u32));
        assert_eq!(weyl_dimension(&[1, 0]).unwrap(), BigUint::from(2u32));
        assert_eq!(weyl_dimension(&[3, 1, 0]).unwrap(), BigUint::from(15u32));
        let total: BigUint = weyl_branching(&[3, 1, 0]).unwrap().iter().map(|m| weyl_dimension(m).unwrap()).sum();
        assert_eq!(total, BigUint::from(15u32));
        // Adjoint of U(3): dimension 8.
        assert_eq!(weyl_dimension(&[1, 0, -1]).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn holomorphic_examples() {
        assert!(is_holomorphic_pattern(&spec(&[5.0, 4.0, 1.0], &[1, 1, -1])));
        assert!(!is_holomorphic_pattern(&spec(&[5.0, 4.0, 1.0], &[1, -1, 1])));
        let big = spec(&[5.0, 4.0, 1.0], &[1, 1, -1]);
        let w = ValueWindow::new(-3.0, 8.0).unwrap();
        for s in enumerate_small_spectra(&big, Lattice::Integer, &w).unwrap() {
            assert!(is_holomorphic_pattern(&s.to_spectrum().unwrap()));
        }
    }
}
