//! Exact integer and half-integer arithmetic for Harish-Chandra parameters.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spectrum::{parse_real, Sign, SignedSpectrum};

/// A multiple of 1/2, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Exact conversion; fails unless `x` is a multiple of 1/2.
    pub fn from_f64(x: f64) -> Result<Self> {
        let d = 2.0 * x;
        if !d.is_finite() || d.fract() != 0.0 || d.abs() > (1i64 << 52) as f64 {
            return Err(Error::LatticeViolation(format!("{x} is not a multiple of 1/2")));
        }
        Ok(HalfInt(d as i64))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad half-integer {s:?}")))?;
            return match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(Error::LatticeViolation(format!("{s:?} is not a multiple of 1/2"))),
            };
        }
        HalfInt::from_f64(parse_real(t)?)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = HalfInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, a half-integer, or a string like \"3/2\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<HalfInt, E> {
                Ok(HalfInt::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<HalfInt, E> {
                i64::try_from(v).map(HalfInt::from_int).map_err(E::custom)
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<HalfInt, E> {
                HalfInt::from_f64(v).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<HalfInt, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// `Z` or `Z + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    Integer,
    HalfInteger,
}

impl Lattice {
    /// Lattice of Harish-Chandra parameters for `U(p,q)` with `p + q = size`:
    /// integers when the size is odd, half-integers when it is even.
    pub fn for_group_size(size: usize) -> Self {
        if size % 2 == 1 {
            Lattice::Integer
        } else {
            Lattice::HalfInteger
        }
    }

    fn parity(self) -> i64 {
        match self {
            Lattice::Integer => 0,
            Lattice::HalfInteger => 1,
        }
    }

    pub fn contains(self, x: HalfInt) -> bool {
        x.doubled().rem_euclid(2) == self.parity()
    }

    /// Largest lattice point `<= x`.
    pub fn floor_point(self, x: f64) -> HalfInt {
        let mut d = (2.0 * x).floor() as i64;
        if d.rem_euclid(2) != self.parity() {
            d -= 1;
        }
        HalfInt(d)
    }

    /// Smallest lattice point `>= x`.
    pub fn ceil_point(self, x: f64) -> HalfInt {
        let mut d = (2.0 * x).ceil() as i64;
        if d.rem_euclid(2) != self.parity() {
            d += 1;
        }
        HalfInt(d)
    }

    /// Lattice points of `window`, ascending.
    pub fn points(self, window: &ValueWindow) -> Vec<HalfInt> {
        let lo = self.ceil_point(window.lo).doubled();
        let hi = self.floor_point(window.hi).doubled();
        (lo..=hi).step_by(2).map(HalfInt).collect()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Lattice::Integer => "Z",
            Lattice::HalfInteger => "Z+1/2",
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Lattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace(' ', "").as_str() {
            "Z" | "integer" => Ok(Lattice::Integer),
            "Z+1/2" | "half-integer" | "half" => Ok(Lattice::HalfInteger),
            other => Err(Error::Parse(format!("unknown lattice {other:?}; expected \"Z\" or \"Z+1/2\""))),
        }
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Closed interval `[lo, hi]` truncating an infinite discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValueWindow {
    pub lo: f64,
    pub hi: f64,
}

impl ValueWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidWindow(format!("bounds must be finite, got [{lo}, {hi}]")));
        }
        if !(lo < hi) {
            return Err(Error::InvalidWindow(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        Ok(ValueWindow { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl FromStr for ValueWindow {
    type Err = Error;

    /// `lo:hi`, each bound a decimal or a fraction.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window must look like lo:hi, got {s:?}")))?;
        ValueWindow::new(parse_real(lo)?, parse_real(hi)?)
    }
}

impl<'de> Deserialize<'de> for ValueWindow {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(deserialize_with = "real")]
            lo: f64,
            #[serde(deserialize_with = "real")]
            hi: f64,
        }
        fn real<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
            Ok(HalfIntOrReal::deserialize(d)?.0)
        }
        let raw = Raw::deserialize(d)?;
        ValueWindow::new(raw.lo, raw.hi).map_err(de::Error::custom)
    }
}

struct HalfIntOrReal(f64);

impl<'de> Deserialize<'de> for HalfIntOrReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(HalfIntOrReal(x)),
            Raw::Text(s) => parse_real(&s).map(HalfIntOrReal).map_err(de::Error::custom),
        }
    }
}

/// A signed spectrum with exact half-integer values, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeSpectrum {
    values: Vec<HalfInt>,
    signs: Vec<Sign>,
}

impl LatticeSpectrum {
    pub fn new(values: Vec<HalfInt>, signs: Vec<Sign>) -> Result<Self> {
        if values.len() != signs.len() {
            return Err(Error::LengthMismatch { expected: values.len(), actual: signs.len() });
        }
        let mut pairs: Vec<(HalfInt, Sign)> = values.into_iter().zip(signs).collect();
        pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
        let (values, signs) = pairs.into_iter().unzip();
        Ok(LatticeSpectrum { values, signs })
    }

    /// Builds from values already in strictly descending order.
    pub(crate) fn from_sorted(values: Vec<HalfInt>, signs: Vec<Sign>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] > w[1]));
        LatticeSpectrum { values, signs }
    }

    pub fn from_spectrum(spec: &SignedSpectrum) -> Result<Self> {
        let values = spec.values().iter().map(|&v| HalfInt::from_f64(v)).collect::<Result<Vec<_>>>()?;
        Ok(LatticeSpectrum { values, signs: spec.signs().to_vec() })
    }

    pub fn values(&self) -> &[HalfInt] {
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

    pub fn signature(&self) -> (usize, usize) {
        let p = self.signs.iter().filter(|&&s| s == Sign::Plus).count();
        (p, self.signs.len() - p)
    }

    pub fn is_distinct(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }

    pub fn on_lattice(&self, lattice: Lattice) -> bool {
        self.values.iter().all(|&v| lattice.contains(v))
    }

    pub fn to_spectrum(&self) -> Result<SignedSpectrum> {
        SignedSpectrum::new(self.values.iter().map(|v| v.to_f64()).collect(), self.signs.clone())
    }
}

impl fmt::Display for LatticeSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        let signs: Vec<&str> = self.signs.iter().map(|&s| if s == Sign::Plus { "+" } else { "-" }).collect();
        write!(f, "({})/({})", vals.join(", "), signs.join(", "))
    }
}

impl<'de> Deserialize<'de> for LatticeSpectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            values: Vec<HalfInt>,
            signs: Vec<Sign>,
        }
        let raw = Raw::deserialize(d)?;
        LatticeSpectrum::new(raw.values, raw.signs).map_err(de::Error::custom)
    }
}
