//! Normal-ordered elements of the Weyl algebra `C[v, ∂/∂v]` and the algebraic
//! Fourier transform `∂/∂z_i ↦ -ζ_i`, `z_i ↦ ∂/∂ζ_i`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::LambdaPoly;
use crate::multi_index::MultiIndex;
use crate::poly::{parse_var_power, split_signed_terms, write_monomial, Polynomial, VarSpace};
use crate::rational::{format_rational, parse_rational, Coeff, Rational};

/// Key of a normal-ordered term `v^mult ∂^deriv`.
pub type WeylKey = (MultiIndex, MultiIndex);

#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement<C = Rational> {
    space: VarSpace,
    nvars: usize,
    terms: BTreeMap<WeylKey, C>,
}

impl<C: Coeff> WeylElement<C> {
    pub fn zero(space: VarSpace, nvars: usize) -> Self {
        WeylElement {
            space,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(space: VarSpace, nvars: usize, c: C) -> Self {
        Self::term(space, MultiIndex::zeros(nvars), MultiIndex::zeros(nvars), c)
    }

    pub fn one(space: VarSpace, nvars: usize) -> Self {
        Self::scalar(space, nvars, C::one())
    }

    pub fn term(space: VarSpace, mult: MultiIndex, deriv: MultiIndex, c: C) -> Self {
        let mut w = Self::zero(space, mult.len());
        w.add_term(mult, deriv, c);
        w
    }

    /// Multiplication by the coordinate `v_i`.
    pub fn mult(space: VarSpace, nvars: usize, i: usize) -> Self {
        Self::term(space, MultiIndex::unit(nvars, i), MultiIndex::zeros(nvars), C::one())
    }

    /// The partial derivative `∂/∂v_i`.
    pub fn deriv(space: VarSpace, nvars: usize, i: usize) -> Self {
        Self::term(space, MultiIndex::zeros(nvars), MultiIndex::unit(nvars, i), C::one())
    }

    /// `θ_i = v_i ∂/∂v_i`.
    pub fn theta(space: VarSpace, nvars: usize, i: usize) -> Self {
        Self::term(space, MultiIndex::unit(nvars, i), MultiIndex::unit(nvars, i), C::one())
    }

    /// The Euler operator `Σ_i v_i ∂/∂v_i`.
    pub fn euler(space: VarSpace, nvars: usize) -> Self {
        let mut w = Self::zero(space, nvars);
        for i in 0..nvars {
            w.add_term(MultiIndex::unit(nvars, i), MultiIndex::unit(nvars, i), C::one());
        }
        w
    }

    /// Multiplication operator by a polynomial.
    pub fn from_polynomial(p: &Polynomial<C>) -> Self {
        let mut w = Self::zero(p.space(), p.nvars());
        for (m, c) in p.terms() {
            w.add_term(m.clone(), MultiIndex::zeros(p.nvars()), c.clone());
        }
        w
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<WeylKey, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mult: &MultiIndex, deriv: &MultiIndex) -> C {
        self.terms
            .get(&(mult.clone(), deriv.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Highest derivative order appearing.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(_, d)| d.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mult: MultiIndex, deriv: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        let key = (mult, deriv);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn check_compatible(&self, space: VarSpace, nvars: usize) -> Result<()> {
        if self.space != space {
            return Err(Error::SpaceMismatch {
                left: self.space.to_string(),
                right: space.to_string(),
            });
        }
        if self.nvars != nvars {
            return Err(Error::SizeMismatch {
                left: self.nvars,
                right: nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other.space, other.nvars)?;
        let mut out = self.clone();
        for ((m, d), c) in &other.terms {
            out.add_term(m.clone(), d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&C::from_int(-1)))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.space, self.nvars);
        for ((m, d), a) in &self.terms {
            out.add_term(m.clone(), d.clone(), a.times(c));
        }
        out
    }

    /// Normal-ordered product `self · other`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other.space, other.nvars)?;
        let mut out = Self::zero(self.space, self.nvars);
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let coeff = c1.times(c2);
                for (k, m, e) in reorder(b, c) {
                    out.add_term(a.add(&m), e.add(d), coeff.times(&C::from_rational(&k)));
                }
            }
        }
        Ok(out)
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// Action on polynomials: `v^a ∂^b` sends `p` to `v^a ∂^b p`.
    pub fn apply(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        self.check_compatible(p.space(), p.nvars())?;
        let mut out = Polynomial::zero(self.space, self.nvars);
        for ((m, d), c) in &self.terms {
            let dp = p.diff_multi(d)?;
            for (e, a) in dp.terms() {
                out.add_term(e.add(m), a.times(c));
            }
        }
        Ok(out)
    }

    /// Algebraic Fourier transform from the `z`-side to the `ζ`-side.
    pub fn fourier(&self) -> Result<Self> {
        if self.space != VarSpace::Z {
            return Err(Error::WrongSide { expected: "z" });
        }
        let nv = self.nvars;
        let zero = MultiIndex::zeros(nv);
        let mut out = Self::zero(VarSpace::Zeta, nv);
        for ((m, d), c) in &self.terms {
            // z^m ∂^d ↦ ∂_ζ^m (-ζ)^d
            let sign = if d.degree() % 2 == 0 { 1 } else { -1 };
            let left = Self::term(VarSpace::Zeta, zero.clone(), m.clone(), c.times(&C::from_int(sign)));
            let right = Self::term(VarSpace::Zeta, d.clone(), zero.clone(), C::one());
            out = out.checked_add(&left.checked_mul(&right)?)?;
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> WeylElement<D> {
        let mut out = WeylElement::zero(self.space, self.nvars);
        for ((m, d), c) in &self.terms {
            out.add_term(m.clone(), d.clone(), f(c));
        }
        out
    }

    pub fn with_space(mut self, space: VarSpace) -> Self {
        self.space = space;
        self
    }
}

/// Rewrites `∂^b v^c` as `Σ k · v^m ∂^e` (normal order), applying the
/// Leibniz rule independently in each variable.
fn reorder(b: &MultiIndex, c: &MultiIndex) -> Vec<(Rational, MultiIndex, MultiIndex)> {
    let mut acc: Vec<(Rational, Vec<u32>, Vec<u32>)> = vec![(<Rational as One>::one(), Vec::new(), Vec::new())];
    for (&bi, &ci) in b.exponents().iter().zip(c.exponents()) {
        let mut next = Vec::new();
        for t in 0..=bi.min(ci) {
            // C(b, t) · c!/(c-t)!
            let binom = crate::rational::binomial(bi as u64, t as u64);
            let falling: u64 = ((ci - t + 1)..=ci).map(u64::from).product();
            let k = Rational::from_integer((binom * falling).into());
            for (kk, m, e) in &acc {
                let mut m = m.clone();
                let mut e = e.clone();
                m.push(ci - t);
                e.push(bi - t);
                next.push((kk * &k, m, e));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(k, m, e)| (k, MultiIndex::new(m), MultiIndex::new(e)))
        .collect()
}

macro_rules! weyl_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coeff> std::ops::$tr for &WeylElement<C> {
            type Output = WeylElement<C>;
            /// Panics on mismatched spaces; use the `checked_*` form to recover.
            fn $method(self, rhs: Self) -> WeylElement<C> {
                self.$checked(rhs).expect("Weyl operands disagree")
            }
        }
    };
}

weyl_op!(Add, add, checked_add);
weyl_op!(Sub, sub, checked_sub);
weyl_op!(Mul, mul, checked_mul);

impl WeylElement<LambdaPoly> {
    pub fn eval_lambda(&self, at: &Rational) -> WeylElement<Rational> {
        self.map_coeffs(|c| c.eval(at))
    }
}

impl WeylElement<Rational> {
    /// Parses `-z1*dz1^2 + 3*dz2`; derivative factors are `d` followed by the
    /// variable name.
    pub fn parse(s: &str, space: VarSpace, nvars: usize) -> Result<Self> {
        let mut w = Self::zero(space, nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(w);
        }
        let sym = space.symbol();
        let dsym = format!("d{sym}");
        for (neg, term) in split_signed_terms(&compact)? {
            let mut coeff = <Rational as One>::one();
            let mut mult = vec![0u32; nvars];
            let mut deriv = vec![0u32; nvars];
            for factor in term.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (target, (idx, e)) = if factor.starts_with(&dsym) {
                    (&mut deriv, parse_var_power(factor, &dsym)?)
                } else {
                    (&mut mult, parse_var_power(factor, sym)?)
                };
                if idx >= nvars {
                    return Err(Error::VariableOutOfRange { index: idx, nvars });
                }
                target[idx] += e;
            }
            if neg {
                coeff = -coeff;
            }
            w.add_term(MultiIndex::new(mult), MultiIndex::new(deriv), coeff);
        }
        Ok(w)
    }
}

fn write_key(f: &mut fmt::Formatter<'_>, symbol: &str, m: &MultiIndex, d: &MultiIndex, star: bool) -> fmt::Result {
    write_monomial(f, symbol, m, star)?;
    let dsym = format!("d{symbol}");
    write_monomial(f, &dsym, d, star || m.degree() > 0)
}

impl fmt::Display for WeylElement<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((m, d), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let constant = m.degree() + d.degree() == 0;
            let show = constant || !One::is_one(&abs);
            if show {
                f.write_str(&format_rational(&abs))?;
            }
            write_key(f, self.space.symbol(), m, d, show && !constant)?;
        }
        Ok(())
    }
}

impl fmt::Display for WeylElement<LambdaPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((m, d), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            write_key(f, self.space.symbol(), m, d, m.degree() + d.degree() > 0)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WeylTermJson {
    mult: MultiIndex,
    deriv: MultiIndex,
    #[serde(with = "crate::rational::serde_rational")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct WeylJson {
    space: VarSpace,
    nvars: usize,
    terms: Vec<WeylTermJson>,
}

impl Serialize for WeylElement<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeylJson {
            space: self.space,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|((m, d), c)| WeylTermJson {
                    mult: m.clone(),
                    deriv: d.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WeylJson::deserialize(d)?;
        let mut w = WeylElement::zero(raw.space, raw.nvars);
        for t in raw.terms {
            if t.mult.len() != raw.nvars || t.deriv.len() != raw.nvars {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            w.add_term(t.mult, t.deriv, t.coeff);
        }
        Ok(w)
    }
}
