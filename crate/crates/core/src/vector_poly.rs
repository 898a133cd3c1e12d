use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{Polynomial, VarSpace};
use crate::rational::{Coeff, Rational};

/// A polynomial with values in a fiber, written in the basis of degree-`k`
/// fiber monomials: `Σ_label p_label ⊗ w_label`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorPolynomial<C = Rational> {
    degree: u32,
    components: BTreeMap<MultiIndex, Polynomial<C>>,
}

impl<C: Coeff> VectorPolynomial<C> {
    pub fn new(degree: u32) -> Self {
        VectorPolynomial {
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn from_components(
        degree: u32,
        components: impl IntoIterator<Item = (MultiIndex, Polynomial<C>)>,
    ) -> Result<Self> {
        let mut v = Self::new(degree);
        for (label, p) in components {
            v.insert(label, p)?;
        }
        Ok(v)
    }

    /// Adds `p ⊗ w_label`; rejects labels of the wrong degree.
    pub fn insert(&mut self, label: MultiIndex, p: Polynomial<C>) -> Result<()> {
        if label.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: label.degree(),
                right: self.degree,
            });
        }
        let sum = match self.components.remove(&label) {
            Some(old) => old.checked_add(&p)?,
            None => p,
        };
        if !sum.is_zero() {
            self.components.insert(label, sum);
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<MultiIndex, Polynomial<C>> {
        &self.components
    }

    pub fn get(&self, label: &MultiIndex) -> Option<&Polynomial<C>> {
        self.components.get(label)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        VectorPolynomial {
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(l, p)| (l.clone(), p.scale(c)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (l, p) in &other.components {
            out.insert(l.clone(), p.clone())?;
        }
        Ok(out)
    }

    /// Applies a linear map to every component polynomial.
    pub fn map_polys(&self, mut f: impl FnMut(&Polynomial<C>) -> Result<Polynomial<C>>) -> Result<Self> {
        let mut out = Self::new(self.degree);
        for (l, p) in &self.components {
            out.insert(l.clone(), f(p)?)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    label: MultiIndex,
    poly: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct VectorPolyJson {
    degree: u32,
    components: Vec<ComponentJson>,
}

impl Serialize for VectorPolynomial<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorPolyJson {
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(l, p)| ComponentJson {
                    label: l.clone(),
                    poly: p.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorPolynomial<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = VectorPolyJson::deserialize(d)?;
        VectorPolynomial::from_components(raw.degree, raw.components.into_iter().map(|c| (c.label, c.poly)))
            .map_err(serde::de::Error::custom)
    }
}

/// Convenience: `Σ_label v^label ⊗ w_label` over all degree-`k` labels, the
/// diagonal element pairing each monomial with its dual basis vector.
pub fn diagonal(space: VarSpace, nvars: usize, k: u32) -> VectorPolynomial {
    let mut v = VectorPolynomial::new(k);
    for m in crate::multi_index::monomial_basis(nvars, k) {
        let p = Polynomial::monomial(space, m.clone(), Rational::one());
        v.insert(m, p).expect("labels have degree k");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn labels_share_degree() {
        let mut v = VectorPolynomial::<Rational>::new(2);
        let p = Polynomial::var(VarSpace::Zeta, 2, 0);
        assert!(v.insert(MultiIndex::new(vec![1, 1]), p.clone()).is_ok());
        assert!(matches!(
            v.insert(MultiIndex::new(vec![1, 0]), p),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn cancellation_removes_component() {
        let label = MultiIndex::new(vec![2]);
        let p = Polynomial::var(VarSpace::Zeta, 1, 0);
        let mut v = VectorPolynomial::new(2);
        v.insert(label.clone(), p.clone()).unwrap();
        v.insert(label, p.scale(&int(-1))).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn diagonal_json_round_trip() {
        let v = diagonal(VarSpace::Zeta, 2, 2);
        assert_eq!(v.components().len(), 3);
        let s = serde_json::to_string(&v).unwrap();
        let w: VectorPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(v, w);
    }
}
