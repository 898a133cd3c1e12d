use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Character of the component group of the Levi factor, `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Plus, Parity::Minus];

    /// `(-1)^k`.
    pub fn of_power(k: i64) -> Parity {
        if k.rem_euclid(2) == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    /// `α + k`: `+` iff `α = (-1)^k`.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, k: u32) -> Parity {
        if self == Parity::of_power(k as i64) {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Parity::Plus),
            "-" | "minus" | "-1" => Ok(Parity::Minus),
            other => Err(Error::Parse(format!("parity `{other}`; expected + or -"))),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
