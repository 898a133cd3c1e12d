//! Polynomials in a single formal parameter `λ`, used to carry a generic
//! induction parameter through operator computations.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Coeff, Rational};

/// Either a concrete rational parameter or the formal symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Value(Rational),
    Generic,
}

impl Param {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Value(v) => Some(v),
            Param::Generic => None,
        }
    }

    pub fn parse(s: &str) -> Result<Param> {
        if s.trim().eq_ignore_ascii_case("generic") {
            Ok(Param::Generic)
        } else {
            parse_rational(s).map(Param::Value)
        }
    }

    pub fn to_lambda_poly(&self) -> LambdaPoly {
        match self {
            Param::Value(v) => LambdaPoly::constant(v.clone()),
            Param::Generic => LambdaPoly::symbol(),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(v) => write!(f, "{}", format_rational(v)),
            Param::Generic => write!(f, "generic"),
        }
    }
}

impl From<Rational> for Param {
    fn from(v: Rational) -> Self {
        Param::Value(v)
    }
}

impl Serialize for Param {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Param::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Element of `ℚ[λ]`; coefficients stored lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The formal parameter itself.
    pub fn symbol() -> Self {
        Self::from_coeffs(vec![int(0), int(1)])
    }

    /// `λ - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r.clone(), int(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(int(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(int(0), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &LambdaPoly) -> (LambdaPoly, LambdaPoly) {
        let dlead = divisor.leading().expect("division by zero polynomial").clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (LambdaPoly::default(), self.clone());
        }
        let mut quot = vec![int(0); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + ddeg] / &dlead;
            if !Zero::is_zero(&c) {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(ddeg);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(int(1) / l)),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &LambdaPoly) -> LambdaPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.coeffs.is_empty() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.coeffs.len() <= 1 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        // strip the factor λ^m
        let shift = self.coeffs.iter().take_while(|c| Zero::is_zero(*c)).count();
        if shift > 0 {
            roots.push(int(0));
        }
        let reduced = Self::from_coeffs(self.coeffs[shift..].to_vec());
        let squarefree = if reduced.coeffs.len() > 2 {
            reduced.div_rem(&reduced.gcd(&reduced.derivative())).0
        } else {
            reduced
        };
        let ints = squarefree.primitive_integer_coeffs();
        if ints.len() >= 2 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                        if Zero::is_zero(&squarefree.eval(&cand)) && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|c| c / &g).collect()
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Coeff for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly::default()
    }
    fn one() -> Self {
        Self::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(|| int(0));
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(|| int(0));
                    a + b
                })
                .collect(),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }
    fn negated(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(&abs))?,
                _ => {
                    if !One::is_one(&abs) {
                        write!(f, "{}*", format_rational(&abs))?;
                    }
                    write!(f, "λ")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reads a coefficient value at a parameter: the formal symbol is only
/// admissible for symbolic coefficient rings.
pub trait ParamCoeff: Coeff {
    fn from_param(p: &Param) -> Result<Self>;
}

impl ParamCoeff for Rational {
    fn from_param(p: &Param) -> Result<Self> {
        p.value().cloned().ok_or(Error::GenericParameter)
    }
}

impl ParamCoeff for LambdaPoly {
    fn from_param(p: &Param) -> Result<Self> {
        Ok(p.to_lambda_poly())
    }
}
