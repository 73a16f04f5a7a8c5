//! Signed spectra of regular elliptic elements and the signed interlacing
//! relation between a spectrum of `u(p,q)` and one of `u(p,q-1)`.
//!
//! A signed spectrum lists the real parts `χ_k` of the eigenvalues `iχ_k`
//! together with the sign of the defining Hermitian form on each eigenspace.
//! Two spectra interlace when their values can be merged in descending order
//! so that every adjacent pair of symbols is one of eight allowed pairs.
//!
//! Writing `κ = sign * group` with `BIG = +1` and `SMALL = -1`, a pair is
//! allowed exactly when the two `κ` values differ, so the relation is
//! "some descending merge alternates in `κ`". [`check_ggp`] decides that with
//! a dynamic program over merge prefixes; [`merge_candidates`] lists every
//! admissible merge explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default absolute tolerance on spectral values.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Sign of the defining Hermitian form on an eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be 1 or -1, got {other}"))),
        }
    }

    pub fn of(x: f64) -> Self {
        if x >= 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v).map_err(de::Error::custom)
    }
}

/// Which of the two spectra a symbol comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// The spectrum of the larger algebra `u(p,q)`.
    Big,
    /// The spectrum of `u(p,q-1)`.
    Small,
}

/// A sign tagged with its group: `+`, `-` for the big spectrum and
/// `⊕`, `⊖` for the small one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub sign: Sign,
    pub group: Group,
}

impl Symbol {
    pub const PLUS: Symbol = Symbol::new(Sign::Plus, Group::Big);
    pub const MINUS: Symbol = Symbol::new(Sign::Minus, Group::Big);
    pub const OPLUS: Symbol = Symbol::new(Sign::Plus, Group::Small);
    pub const OMINUS: Symbol = Symbol::new(Sign::Minus, Group::Small);

    pub const ALL: [Symbol; 4] = [Symbol::PLUS, Symbol::MINUS, Symbol::OPLUS, Symbol::OMINUS];

    pub const fn new(sign: Sign, group: Group) -> Self {
        Symbol { sign, group }
    }

    /// `sign * group` with `Big = +1`, `Small = -1`; allowed neighbours
    /// always carry opposite values.
    pub fn kappa(self) -> i8 {
        let g = match self.group {
            Group::Big => 1,
            Group::Small => -1,
        };
        self.sign.value() * g
    }

    pub fn ascii(self) -> &'static str {
        match (self.sign, self.group) {
            (Sign::Plus, Group::Big) => "+",
            (Sign::Minus, Group::Big) => "-",
            (Sign::Plus, Group::Small) => "(+)",
            (Sign::Minus, Group::Small) => "(-)",
        }
    }

    pub fn unicode(self) -> &'static str {
        match (self.sign, self.group) {
            (Sign::Plus, Group::Big) => "+",
            (Sign::Minus, Group::Big) => "\u{2212}",
            (Sign::Plus, Group::Small) => "\u{2295}",
            (Sign::Minus, Group::Small) => "\u{2296}",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii())
    }
}

/// Whether `a` may immediately precede `b` in an interlacing sign pattern.
///
/// True for exactly `⊕+`, `+⊕`, `-⊖`, `⊖-`, `+-`, `-+`, `⊕⊖`, `⊖⊕`.
pub fn pair_allowed(a: Symbol, b: Symbol) -> bool {
    (a.sign == b.sign) != (a.group == b.group)
}

/// A sequence of symbols, e.g. `(+)+-(-)-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern(pub Vec<Symbol>);

impl SignPattern {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every adjacent pair passes [`pair_allowed`].
    pub fn is_allowed(&self) -> bool {
        self.0.windows(2).all(|w| pair_allowed(w[0], w[1]))
    }

    pub fn to_unicode(&self) -> String {
        self.0.iter().map(|s| s.unicode()).collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(s.ascii())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | ',' | '\t' => {}
                '+' => out.push(Symbol::PLUS),
                '-' | '\u{2212}' => out.push(Symbol::MINUS),
                '\u{2295}' => out.push(Symbol::OPLUS),
                '\u{2296}' => out.push(Symbol::OMINUS),
                '(' => {
                    let inner = chars.get(i + 1).copied();
                    if chars.get(i + 2) != Some(&')') {
                        return Err(Error::Parse(format!("unterminated symbol at offset {i} in {s:?}")));
                    }
                    match inner {
                        Some('+') => out.push(Symbol::OPLUS),
                        Some('-') | Some('\u{2212}') => out.push(Symbol::OMINUS),
                        _ => return Err(Error::Parse(format!("bad symbol at offset {i} in {s:?}"))),
                    }
                    i += 2;
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
            }
            i += 1;
        }
        Ok(SignPattern(out))
    }
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses a real number written as a decimal or as an exact fraction `a/b`.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let value = if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        let den: f64 = den.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        if den == 0.0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        num / den
    } else {
        s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Parse(format!("non-finite number {s:?}")))
    }
}

/// Descending values with a sign per value: the data `(χ, z)` of an
/// elliptic orbit of signature `(p, q)`.
///
/// Values are sorted descending on construction. Ties are representable but
/// make the spectrum non-regular, which [`SignedSpectrum::ensure_regular`]
/// and the interlacing predicates reject.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignedSpectrum {
    values: Vec<f64>,
    signs: Vec<Sign>,
}

impl SignedSpectrum {
    pub fn new(values: Vec<f64>, signs: Vec<Sign>) -> Result<Self> {
        if values.len() != signs.len() {
            return Err(Error::LengthMismatch { expected: values.len(), actual: signs.len() });
        }
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("spectrum must have at least one value".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("non-finite value {v}")));
        }
        let mut pairs: Vec<(f64, Sign)> = values.into_iter().zip(signs).collect();
        // Equal values keep their input order, so construction is deterministic.
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let (values, signs) = pairs.into_iter().unzip();
        Ok(SignedSpectrum { values, signs })
    }

    /// Convenience constructor taking signs as `±1` integers.
    pub fn from_ints(values: &[f64], signs: &[i64]) -> Result<Self> {
        let signs = signs.iter().map(|&s| Sign::from_value(s)).collect::<Result<Vec<_>>>()?;
        SignedSpectrum::new(values.to_vec(), signs)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(p, q)`: number of `+1` and `-1` signs.
    pub fn signature(&self) -> (usize, usize) {
        let p = self.signs.iter().filter(|&&s| s == Sign::Plus).count();
        (p, self.signs.len() - p)
    }

    /// Smallest gap between consecutive values.
    pub fn min_gap(&self) -> f64 {
        self.values.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min)
    }

    pub fn is_regular(&self, tol: f64) -> bool {
        self.ensure_regular(tol).is_ok()
    }

    pub fn ensure_regular(&self, tol: f64) -> Result<()> {
        for w in self.values.windows(2) {
            let gap = w[0] - w[1];
            if gap <= 0.0 || gap < tol {
                return Err(Error::NonRegular(w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Values carrying the given sign, descending.
    pub fn values_with_sign(&self, sign: Sign) -> Vec<f64> {
        self.values.iter().zip(&self.signs).filter(|(_, &s)| s == sign).map(|(&v, _)| v).collect()
    }

    /// Applies `v -> scale * v + shift` to every value; `scale` must be nonzero.
    /// A negative scale reverses the order.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        SignedSpectrum::new(self.values.iter().map(|v| scale * v + shift).collect(), self.signs.clone())
    }

    /// Sign pattern of this spectrum alone, read in descending order.
    pub fn pattern(&self, group: Group) -> SignPattern {
        SignPattern(self.signs.iter().map(|&s| Symbol::new(s, group)).collect())
    }
}

impl fmt::Display for SignedSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")/(")?;
        for (k, s) in self.signs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        f.write_str(")")
    }
}

/// A value in JSON input: either a number or an exact string such as `"3/2"`.
struct RealValue(f64);

impl<'de> Deserialize<'de> for RealValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RealValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a fraction string like \"3/2\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<RealValue, E> {
                Ok(RealValue(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RealValue, E> {
                Ok(RealValue(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RealValue, E> {
                Ok(RealValue(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RealValue, E> {
                parse_real(v).map(RealValue).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub(crate) fn deserialize_reals<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<f64>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an array of numbers")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<f64>, A::Error> {
            let mut out = Vec::new();
            while let Some(RealValue(v)) = seq.next_element()? {
                out.push(v);
            }
            Ok(out)
        }
    }
    d.deserialize_seq(V)
}

impl<'de> Deserialize<'de> for SignedSpectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(deserialize_with = "deserialize_reals")]
            values: Vec<f64>,
            signs: Vec<Sign>,
        }
        let raw = Raw::deserialize(d)?;
        SignedSpectrum::new(raw.values, raw.signs).map_err(de::Error::custom)
    }
}

/// An interleaving of a big and a small spectrum in weakly descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergedSequence {
    pub entries: Vec<(f64, Symbol)>,
}

impl MergedSequence {
    pub fn pattern(&self) -> SignPattern {
        SignPattern(self.entries.iter().map(|&(_, s)| s).collect())
    }

    pub fn is_allowed(&self) -> bool {
        self.entries.windows(2).all(|w| pair_allowed(w[0].1, w[1].1))
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.ascii())
    }
}

/// Checks the shared preconditions of the interlacing predicates: signatures
/// `(p,q)` and `(p,q-1)` with `q >= 1`, and no internal near-ties.
pub fn validate_pair(big: &SignedSpectrum, small: &SignedSpectrum, tol: f64) -> Result<()> {
    if !(tol >= 0.0) {
        return Err(Error::ConfigInvalid(format!("tolerance must be non-negative, got {tol}")));
    }
    let (p, q) = big.signature();
    let (ps, qs) = small.signature();
    if q == 0 {
        return Err(Error::SignatureMismatch(format!("big spectrum has signature ({p},0); need q >= 1")));
    }
    if ps != p || qs + 1 != q {
        return Err(Error::SignatureMismatch(format!(
            "big has signature ({p},{q}), so small must have ({p},{}), got ({ps},{qs})",
            q - 1
        )));
    }
    big.ensure_regular(tol)?;
    small.ensure_regular(tol)?;
    Ok(())
}

// `a` may be placed before `b` when it is not below `b` by `tol` or more.
fn may_precede(a: f64, b: f64, tol: f64) -> bool {
    a >= b - tol
}

/// All weakly descending merges of `big` and `small`. Values from different
/// spectra that differ by less than `tol` may appear in either order.
pub fn merge_candidates(big: &SignedSpectrum, small: &SignedSpectrum, tol: f64) -> Result<Vec<MergedSequence>> {
    validate_pair(big, small, tol)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(big.len() + small.len());
    extend_merges(big, small, tol, 0, 0, &mut current, &mut out);
    Ok(out)
}

fn extend_merges(
    big: &SignedSpectrum,
    small: &SignedSpectrum,
    tol: f64,
    i: usize,
    j: usize,
    current: &mut Vec<(f64, Symbol)>,
    out: &mut Vec<MergedSequence>,
) {
    let (n, m) = (big.len(), small.len());
    if i == n && j == m {
        out.push(MergedSequence { entries: current.clone() });
        return;
    }
    if i < n && (j == m || may_precede(big.values[i], small.values[j], tol)) {
        current.push((big.values[i], Symbol::new(big.signs[i], Group::Big)));
        extend_merges(big, small, tol, i + 1, j, current, out);
        current.pop();
    }
    if j < m && (i == n || may_precede(small.values[j], big.values[i], tol)) {
        current.push((small.values[j], Symbol::new(small.signs[j], Group::Small)));
        extend_merges(big, small, tol, i, j + 1, current, out);
        current.pop();
    }
}

/// Whether `big` (signature `(p,q)`) and `small` (signature `(p,q-1)`)
/// satisfy the signed interlacing relation: some admissible descending merge
/// uses only allowed adjacent pairs.
pub fn check_ggp(big: &SignedSpectrum, small: &SignedSpectrum, tol: f64) -> Result<bool> {
    validate_pair(big, small, tol)?;
    let (n, m) = (big.len(), small.len());
    // reach[i][j] bit 0: some valid prefix ends with κ = +1; bit 1: κ = -1.
    let mut reach = vec![vec![0u8; m + 1]; n + 1];
    let bit = |k: i8| if k > 0 { 1u8 } else { 2u8 };
    let big_sym = |i: usize| Symbol::new(big.signs[i], Group::Big);
    let small_sym = |j: usize| Symbol::new(small.signs[j], Group::Small);
    for i in 0..=n {
        for j in 0..=m {
            let here = reach[i][j];
            let start = i == 0 && j == 0;
            if !start && here == 0 {
                continue;
            }
            if i < n && (j == m || may_precede(big.values[i], small.values[j], tol)) {
                let k = big_sym(i).kappa();
                if start || here & bit(-k) != 0 {
                    reach[i + 1][j] |= bit(k);
                }
            }
            if j < m && (i == n || may_precede(small.values[j], big.values[i], tol)) {
                let k = small_sym(j).kappa();
                if start || here & bit(-k) != 0 {
                    reach[i][j + 1] |= bit(k);
                }
            }
        }
    }
    Ok(reach[n][m] != 0)
}

fn ensure_weakly_descending(xs: &[f64]) -> Result<()> {
    for (k, w) in xs.windows(2).enumerate() {
        if !(w[0] >= w[1]) {
            return Err(Error::NotDescending(k + 1));
        }
    }
    Ok(())
}

/// Classical interlacing `λ_1 ≥ μ_1 ≥ λ_2 ≥ … ≥ μ_{n-1} ≥ λ_n`, exact comparison.
pub fn check_cauchy(lambda: &[f64], mu: &[f64]) -> Result<bool> {
    check_cauchy_tol(lambda, mu, 0.0)
}

/// [`check_cauchy`] with each inequality relaxed by `tol`.
pub fn check_cauchy_tol(lambda: &[f64], mu: &[f64], tol: f64) -> Result<bool> {
    if lambda.is_empty() || mu.len() + 1 != lambda.len() {
        return Err(Error::LengthMismatch { expected: lambda.len().saturating_sub(1), actual: mu.len() });
    }
    if !(tol >= 0.0) {
        return Err(Error::ConfigInvalid(format!("tolerance must be non-negative, got {tol}")));
    }
    ensure_weakly_descending(lambda)?;
    ensure_weakly_descending(mu)?;
    Ok(mu
        .iter()
        .enumerate()
        .all(|(k, &m)| lambda[k] + tol >= m && m + tol >= lambda[k + 1]))
}

/// Orders spectra by values, then signs; used for deterministic output.
pub fn cmp_spectra(a: &SignedSpectrum, b: &SignedSpectrum) -> Ordering {
    for (x, y) in a.values.iter().zip(&b.values) {
        match x.total_cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.values.len().cmp(&b.values.len()).then_with(|| a.signs.cmp(&b.signs))
}
