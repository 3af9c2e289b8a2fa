//! Nonnegative lengths with half-unit resolution.
//!
//! The barycentric subdivision halves every edge, so lengths measured on it
//! are multiples of one half. They are stored as integer counts of halves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A nonnegative length stored as a number of half units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(u32);

impl Half {
    pub const ZERO: Half = Half(0);

    /// The length `halves / 2`.
    pub const fn from_halves(halves: u32) -> Self {
        Half(halves)
    }

    /// The whole length `units`.
    pub const fn from_units(units: u32) -> Self {
        Half(2 * units)
    }

    /// Number of half units.
    pub const fn halves(self) -> u32 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// Whole units, if the length is integral.
    pub const fn units(self) -> Option<u32> {
        if self.is_integral() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl FromStr for Half {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::NotHalfInteger(s.to_string());
        let s = s.trim();
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, f.trim_end_matches('0')),
            None => (s, ""),
        };
        let whole: u32 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let extra = match frac {
            "" => 0,
            "5" => 1,
            _ => return Err(bad()),
        };
        whole.checked_mul(2).and_then(|w| w.checked_add(extra)).map(Half).ok_or_else(bad)
    }
}

impl TryFrom<f64> for Half {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self, Error> {
        let doubled = x * 2.0;
        if x >= 0.0 && doubled.fract() == 0.0 && doubled <= f64::from(u32::MAX) {
            Ok(Half(doubled as u32))
        } else {
            Err(Error::NotHalfInteger(x.to_string()))
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_integral() {
            s.serialize_u32(self.0 / 2)
        } else {
            s.serialize_f64(self.as_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        Half::try_from(x).map_err(serde::de::Error::custom)
    }
}
