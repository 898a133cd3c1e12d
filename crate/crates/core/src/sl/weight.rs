use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// A weight of `sl(n)` in `ε`-coordinates. Representatives differing by a
/// multiple of `(1, ..., 1)` describe the same weight.
#[derive(Clone, Debug, Eq)]
pub struct Weight {
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight::new(vec![int(0); n])
    }

    /// The positive root `ε_i - ε_j` (1-based).
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut c = vec![int(0); n];
        c[i - 1] += int(1);
        c[j - 1] -= int(1);
        Weight::new(c)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Representative with coordinate sum zero.
    pub fn canonical(&self) -> Weight {
        let n = self.coords.len();
        if n == 0 {
            return self.clone();
        }
        let mean: Rational = self.coords.iter().sum::<Rational>() / int(n as i64);
        Weight::new(self.coords.iter().map(|c| c - &mean).collect())
    }

    /// Standard dot product of the stored representatives.
    pub fn dot(&self, other: &Weight) -> Rational {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// `⟨self, β^∨⟩ = 2⟨self, β⟩ / ⟨β, β⟩`.
    pub fn coroot_pairing(&self, beta: &Weight) -> Rational {
        int(2) * self.dot(beta) / beta.dot(beta)
    }

    /// Reflection `s_β(self) = self - ⟨self, β^∨⟩ β`.
    pub fn reflect(&self, beta: &Weight) -> Weight {
        self.add(&beta.scale(&-self.coroot_pairing(beta)))
    }

    /// Whether some permutation of coordinates maps `self` to `other`
    /// (Weyl group orbit membership in type A).
    pub fn same_orbit(&self, other: &Weight) -> bool {
        let mut a = self.canonical().coords;
        let mut b = other.canonical().coords;
        a.sort();
        b.sort();
        a == b
    }

    pub fn parse(s: &str) -> Result<Weight> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("weight `{s}` must be parenthesized")))?;
        inner
            .split(',')
            .map(parse_rational)
            .collect::<Result<_>>()
            .map(Weight::new)
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.canonical().coords == other.canonical().coords
    }
}

impl std::hash::Hash for Weight {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().coords.hash(state);
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>>>()
            .map(Weight::new)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn equality_modulo_trace() {
        let a = Weight::new(vec![int(1), int(0), int(-1)]);
        let b = Weight::new(vec![int(2), int(1), int(0)]);
        assert_eq!(a, b);
        assert_ne!(a, Weight::new(vec![int(0), int(1), int(-1)]));
    }

    #[test]
    fn reflection() {
        let eta = Weight::new(vec![int(1), int(0), int(-1)]);
        let b = Weight::root(3, 1, 2);
        assert_eq!(eta.coroot_pairing(&b), int(1));
        assert_eq!(eta.reflect(&b), Weight::new(vec![int(0), int(1), int(-1)]));
        assert!(eta.same_orbit(&Weight::new(vec![int(-1), int(1), int(0)])));
        assert!(!eta.same_orbit(&Weight::new(vec![rat(1, 2), int(0), int(-1)])));
    }

    #[test]
    fn parse_and_json() {
        let w = Weight::parse("(1/2, 0, -1/2)").unwrap();
        assert_eq!(w.to_string(), "(1/2, 0, -1/2)");
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Weight>(&s).unwrap(), w);
    }
}
