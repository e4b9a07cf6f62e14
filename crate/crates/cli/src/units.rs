//! Physical quantities written with an explicit unit suffix, e.g.
//! `"20 um"`, `"2 cm"`, `"-4 THz"`.
//!
//! Lengths accept `nm`, `um`, `mm`, `cm` and `m`. Frequencies accept `THz`
//! (ordinary frequency, converted to angular frequency `2πf`) and `rad/s`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    AngularFrequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Nanometre,
    Micrometre,
    Millimetre,
    Centimetre,
    Metre,
    Terahertz,
    RadianPerSecond,
}

impl Unit {
    const ALL: [Unit; 7] = [
        Unit::Nanometre,
        Unit::Micrometre,
        Unit::Millimetre,
        Unit::Centimetre,
        Unit::Metre,
        Unit::Terahertz,
        Unit::RadianPerSecond,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Nanometre => "nm",
            Unit::Micrometre => "um",
            Unit::Millimetre => "mm",
            Unit::Centimetre => "cm",
            Unit::Metre => "m",
            Unit::Terahertz => "THz",
            Unit::RadianPerSecond => "rad/s",
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Terahertz | Unit::RadianPerSecond => Dimension::AngularFrequency,
            _ => Dimension::Length,
        }
    }

    /// Factor to metres or rad/s.
    fn to_si(self) -> f64 {
        match self {
            Unit::Nanometre => 1e-9,
            Unit::Micrometre => 1e-6,
            Unit::Millimetre => 1e-3,
            Unit::Centimetre => 1e-2,
            Unit::Metre => 1.0,
            Unit::Terahertz => 2.0 * std::f64::consts::PI * 1e12,
            Unit::RadianPerSecond => 1.0,
        }
    }
}

/// A number with its unit, kept as written so that the canonical form
/// round-trips exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    /// Value in metres or rad/s.
    pub fn si(&self) -> f64 {
        self.value * self.unit.to_si()
    }

    /// Value in micrometres; lengths only.
    pub fn micrometres(&self) -> f64 {
        self.si() * 1e6
    }

    pub fn dimension(&self) -> Dimension {
        self.unit.dimension()
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest representation that round-trips; exponent form for very
        // large or small magnitudes.
        let v = self.value;
        if v != 0.0 && (v.abs() >= 1e6 || v.abs() < 1e-4) {
            write!(f, "{v:e} {}", self.unit.symbol())
        } else {
            write!(f, "{v} {}", self.unit.symbol())
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        // Longest symbol first so that "mm" is not read as "m".
        let mut units = Unit::ALL;
        units.sort_by_key(|u| std::cmp::Reverse(u.symbol().len()));
        for unit in units {
            if let Some(number) = t.strip_suffix(unit.symbol()) {
                let value: f64 = number
                    .trim()
                    .parse()
                    .map_err(|_| format!("cannot read the number in {s:?}"))?;
                if !value.is_finite() {
                    return Err(format!("{s:?} is not finite"));
                }
                return Ok(Self { value, unit });
            }
        }
        Err(format!(
            "{s:?} needs a unit suffix (one of nm, um, mm, cm, m, THz, rad/s)"
        ))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(QuantityVisitor)
    }
}

struct QuantityVisitor;

impl serde::de::Visitor<'_> for QuantityVisitor {
    type Value = Quantity;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a string such as \"20 um\"")
    }

    fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Quantity, E> {
        s.parse().map_err(E::custom)
    }

    fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Quantity, E> {
        Err(E::custom(format!("{v} needs a unit; write it as a string such as \"{v} um\"")))
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Quantity, E> {
        self.visit_f64(v as f64)
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Quantity, E> {
        self.visit_f64(v as f64)
    }
}
