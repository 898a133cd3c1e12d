//! Sparse exact multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::rational::{format_rational, parse_rational, Coeff, Rational};

/// Which family of variables a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarSpace {
    /// Coordinates on the opposite nilradical.
    X,
    /// Weyl-algebra variables on the source side of the Fourier transform.
    Z,
    /// Dual variables on the nilradical.
    Zeta,
    /// Coordinates on the fiber `C^{n-1}`.
    Y,
    /// Basis vectors of the symmetric power fiber.
    E,
    /// Commuting symbols `N_1^-, ..., N_{n-1}^-` of the symmetric algebra.
    NMinus,
}

impl VarSpace {
    pub fn symbol(self) -> &'static str {
        match self {
            VarSpace::X => "x",
            VarSpace::Z => "z",
            VarSpace::Zeta => "zeta",
            VarSpace::Y => "y",
            VarSpace::E => "e",
            VarSpace::NMinus => "N",
        }
    }
}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C = Rational> {
    space: VarSpace,
    nvars: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(space: VarSpace, nvars: usize) -> Self {
        Polynomial {
            space,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, nvars: usize, c: C) -> Self {
        Self::monomial(space, MultiIndex::zeros(nvars), c)
    }

    pub fn one(space: VarSpace, nvars: usize) -> Self {
        Self::constant(space, nvars, C::one())
    }

    pub fn monomial(space: VarSpace, exponents: MultiIndex, c: C) -> Self {
        let mut p = Self::zero(space, exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The coordinate function `v_i` (0-based).
    pub fn var(space: VarSpace, nvars: usize, i: usize) -> Self {
        Self::monomial(space, MultiIndex::unit(nvars, i), C::one())
    }

    pub fn from_terms(space: VarSpace, nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, C)>) -> Self {
        let mut p = Self::zero(space, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, C> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Maximum total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    /// Accumulates `c * v^m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::SizeMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.space, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.space, self.nvars);
        }
        Polynomial {
            space: self.space,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.times(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Polynomial {
            space: self.space,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.negated())).collect(),
        }
    }

    /// Multiplies by the monomial `v^m`.
    pub fn shift(&self, m: &MultiIndex) -> Self {
        Polynomial {
            space: self.space,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.add(m), a.clone())).collect(),
        }
    }

    /// `∂^order / ∂v_idx^order`.
    pub fn diff(&self, idx: usize, order: u32) -> Result<Self> {
        if idx >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: idx,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.space, self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(idx);
            if e < order {
                continue;
            }
            let falling: i64 = ((e - order + 1)..=e).map(i64::from).product();
            out.add_term(m.with(idx, e - order), c.times(&C::from_int(falling)));
        }
        Ok(out)
    }

    /// `∂^m` for a full multi-index of derivative orders.
    pub fn diff_multi(&self, m: &MultiIndex) -> Result<Self> {
        let mut p = self.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                p = p.diff(i, e)?;
            }
        }
        Ok(p)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Polynomial {
            space: self.space,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_space(mut self, space: VarSpace) -> Self {
        self.space = space;
        self
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(
            self.space,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }
}

impl Polynomial<Rational> {
    /// Parses `3/2*x1^2*x2 - x3 + 1`. Variable indices are 1-based.
    pub fn parse(s: &str, space: VarSpace, nvars: usize) -> Result<Self> {
        let mut p = Self::zero(space, nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(p);
        }
        for (sign, term) in split_signed_terms(&compact)? {
            let (m, c) = parse_monomial(term, space, nvars)?;
            p.add_term(m, if sign { -c } else { c });
        }
        Ok(p)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::SizeMismatch {
                left: point.len(),
                right: self.nvars,
            });
        }
        let mut acc = Rational::from_integer(0.into());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Splits `a-b+c` into signed pieces, respecting `/` and `^` inside terms.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut neg = false;
    if let Some(&b) = bytes.first() {
        if b == b'-' || b == b'+' {
            neg = b == b'-';
            start = 1;
        }
    }
    let mut i = start;
    while i <= bytes.len() {
        let boundary = i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && !matches!(bytes[i - 1], b'/' | b'^' | b'*'));
        if boundary {
            let term = &s[start..i];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            out.push((neg, term));
            if i < bytes.len() {
                neg = bytes[i] == b'-';
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

/// Parses `coeff*v1^a*v2` into an exponent vector and a coefficient.
pub(crate) fn parse_monomial(term: &str, space: VarSpace, nvars: usize) -> Result<(MultiIndex, Rational)> {
    let mut coeff = <Rational as One>::one();
    let mut exps = vec![0u32; nvars];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (idx, e) = parse_var_power(factor, space.symbol())?;
        if idx >= nvars {
            return Err(Error::VariableOutOfRange { index: idx, nvars });
        }
        exps[idx] += e;
    }
    Ok((MultiIndex::new(exps), coeff))
}

/// Parses `v3^2` (symbol `v`) into `(2, 2)` with a 0-based index.
pub(crate) fn parse_var_power(factor: &str, symbol: &str) -> Result<(usize, u32)> {
    let bad = || Error::Parse(format!("bad factor `{factor}`"));
    let rest = factor.strip_prefix(symbol).ok_or_else(bad)?;
    let (idx, e) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let idx: usize = idx.parse().map_err(|_| bad())?;
    if idx == 0 {
        return Err(bad());
    }
    Ok((idx - 1, e))
}

pub(crate) fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    symbol: &str,
    m: &MultiIndex,
    leading_star: bool,
) -> fmt::Result {
    let mut first = !leading_star;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "{symbol}{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let constant = m.degree() == 0;
            if constant || !One::is_one(&abs) {
                f.write_str(&format_rational(&abs))?;
            }
            write_monomial(f, self.space.symbol(), m, !constant && !One::is_one(&abs))?;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial<crate::lambda::LambdaPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            write_monomial(f, self.space.symbol(), m, m.degree() > 0)?;
        }
        Ok(())
    }
}

macro_rules! checked_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> $tr for &Polynomial<C> {
            type Output = Polynomial<C>;
            /// Panics on mismatched variable spaces; use the `checked_*` form to recover.
            fn $method(self, rhs: Self) -> Polynomial<C> {
                self.$checked(rhs).expect("polynomial operands disagree")
            }
        }
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Self) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

checked_op!(Add, add, checked_add);
checked_op!(Sub, sub, checked_sub);
checked_op!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.negated()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: MultiIndex,
    #[serde(with = "crate::rational::serde_rational")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    space: VarSpace,
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            space: self.space,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exponents: m.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        if let Some(t) = raw.terms.iter().find(|t| t.exponents.len() != raw.nvars) {
            return Err(serde::de::Error::custom(format!(
                "exponent vector {} does not have {} entries",
                t.exponents, raw.nvars
            )));
        }
        Ok(Polynomial::from_terms(
            raw.space,
            raw.nvars,
            raw.terms.into_iter().map(|t| (t.exponents, t.coeff)),
        ))
    }
}
