use std::cmp::Ordering;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, int, Rational};

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree the vector with the larger leading exponent first, so that
/// `(2,0) < (1,1) < (0,2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn with(&self, i: usize, value: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] = value;
        MultiIndex(e)
    }

    /// `k_1! k_2! ... k_m!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All exponent vectors of `nvars` entries summing to `degree`, in graded-lex order.
pub fn monomial_basis(nvars: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, remaining: usize, degree: u32, out: &mut Vec<MultiIndex>) {
        if remaining == 1 {
            prefix.push(degree);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=degree).rev() {
            prefix.push(first);
            fill(prefix, remaining - 1, degree - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out
}

/// All exponent vectors of total degree at most `max_degree`.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree).flat_map(|d| monomial_basis(nvars, d)).collect()
}

/// Pairing of the normalized dual basis `y~_k = y^k / k!` against `e^k'`.
pub fn dual_pairing(y_dual: &MultiIndex, e_basis: &MultiIndex) -> Result<Rational> {
    if y_dual.degree() != e_basis.degree() {
        return Err(Error::DegreeMismatch {
            left: y_dual.degree(),
            right: e_basis.degree(),
        });
    }
    Ok(if y_dual == e_basis { int(1) } else { int(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn basis_small_cases() {
        assert_eq!(monomial_basis(2, 2), vec![mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]);
        assert_eq!(monomial_basis(1, 5), vec![mi(&[5])]);
        assert_eq!(monomial_basis(3, 0), vec![mi(&[0, 0, 0])]);
    }

    // Stars-and-bars oracle: brute-force count over the full box [0, d]^nvars.
    fn brute_count(nvars: usize, degree: u32) -> usize {
        let mut count = 0;
        let mut idx = vec![0u32; nvars];
        loop {
            if idx.iter().sum::<u32>() == degree {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == nvars {
                    return count;
                }
                idx[i] += 1;
                if idx[i] <= degree {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn basis_count_matches_binomial() {
        for nvars in 1..=6usize {
            for degree in 0..=8u32 {
                let basis = monomial_basis(nvars, degree);
                let expected = binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1);
                assert_eq!(basis.len() as u64, expected, "nvars={nvars} degree={degree}");
                if nvars <= 4 && degree <= 6 {
                    assert_eq!(basis.len(), brute_count(nvars, degree));
                }
                assert!(basis.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn pairing_is_kronecker() {
        assert_eq!(dual_pairing(&mi(&[2, 0]), &mi(&[2, 0])).unwrap(), int(1));
        assert_eq!(dual_pairing(&mi(&[2, 0]), &mi(&[1, 1])).unwrap(), int(0));
        assert_eq!(dual_pairing(&mi(&[0, 0, 3]), &mi(&[0, 0, 3])).unwrap(), int(1));
        assert!(matches!(
            dual_pairing(&mi(&[1, 0]), &mi(&[1, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn graded_order() {
        assert!(mi(&[0, 0]) < mi(&[0, 1]));
        assert!(mi(&[1, 0]) < mi(&[0, 1]));
        assert!(mi(&[0, 3]) < mi(&[4, 0]));
    }
}
