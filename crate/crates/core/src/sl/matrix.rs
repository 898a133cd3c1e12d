use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSpace};
use crate::rational::{format_rational, int, Coeff, Rational};

/// A traceless `n × n` rational matrix, i.e. an element of `sl(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl GMatrix {
    /// Builds from row-major entries; rejects matrices with nonzero trace.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch {
                left: entries.len(),
                right: n * n,
            });
        }
        let trace: Rational = (0..n).map(|i| &entries[i * n + i]).sum();
        if !trace.is_zero() {
            return Err(Error::NotTraceless(format_rational(&trace)));
        }
        Ok(GMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        GMatrix {
            n,
            entries: vec![int(0); n * n],
        }
    }

    /// Off-diagonal matrix unit `E_{i,j}` (1-based, `i ≠ j`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j, "diagonal matrix units are not traceless");
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = int(1);
        m
    }

    /// `E_{i,i} - E_{j,j}` (1-based).
    pub fn diag_difference(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (i - 1)] += int(1);
        m.entries[(j - 1) * n + (j - 1)] -= int(1);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    fn check(&self, other: &GMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GMatrix) -> Result<GMatrix> {
        self.check(other)?;
        Ok(GMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> GMatrix {
        GMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn sub(&self, other: &GMatrix) -> Result<GMatrix> {
        self.add(&other.scale(&int(-1)))
    }

    fn product(&self, other: &GMatrix) -> Vec<Rational> {
        let n = self.n;
        let mut out = vec![int(0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * &other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// `Tr(XY)`.
    pub fn trace_form(&self, other: &GMatrix) -> Result<Rational> {
        self.check(other)?;
        let p = self.product(other);
        Ok((0..self.n).map(|i| &p[i * self.n + i]).sum())
    }

    /// Commutator `XY - YX`.
    pub fn bracket(&self, other: &GMatrix) -> Result<GMatrix> {
        self.check(other)?;
        let xy = self.product(other);
        let yx = other.product(self);
        Ok(GMatrix {
            n: self.n,
            entries: xy.iter().zip(&yx).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn to_poly(&self, nvars: usize) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|c| Polynomial::constant(VarSpace::X, nvars, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format_rational(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GMatrixJson {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for GMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GMatrixJson {
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| format_rational(self.get(i, j))).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GMatrixJson::deserialize(d)?;
        let entries = raw
            .entries
            .iter()
            .flatten()
            .map(|s| crate::rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        GMatrix::new(raw.n, entries).map_err(serde::de::Error::custom)
    }
}

/// An `n × n` matrix whose entries are polynomials in `x_1, ..., x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(VarSpace::X, n - 1); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.n + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn trace(&self) -> Polynomial {
        (0..self.n).fold(Polynomial::zero(VarSpace::X, self.n - 1), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }

    fn product(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut out = PolyMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let e = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = e;
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &PolyMatrix) -> PolyMatrix {
        self.product(other).add(&other.product(self).scale(&int(-1)))
    }

    /// Value at `x = point`.
    pub fn eval(&self, point: &[Rational]) -> Result<GMatrix> {
        let entries = self.entries.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
        GMatrix::new(self.n, entries)
    }

    /// The constant term, as an ordinary matrix.
    pub fn constant_part(&self) -> Result<GMatrix> {
        self.eval(&vec![int(0); self.n - 1])
    }

    /// Largest total degree among the entries.
    pub fn degree(&self) -> u32 {
        self.entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}
