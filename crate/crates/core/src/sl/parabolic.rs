use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{Polynomial, VarSpace};
use crate::rational::{int, rat, Coeff, Rational};
use crate::weyl::WeylElement;

use super::matrix::{GMatrix, PolyMatrix};

/// A labelled element of the standard basis of `sl(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub matrix: GMatrix,
}

/// The decomposition `sl(n) = n₋ ⊕ m ⊕ a ⊕ n₊` for the parabolic with Levi
/// block sizes `(1, n-1)`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    n: usize,
    nplus: Vec<GMatrix>,
    nminus: Vec<GMatrix>,
    h0: GMatrix,
}

impl ParabolicData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("n = {n}; need n >= 2")));
        }
        let nplus = (1..n).map(|j| GMatrix::unit(n, 1, j + 1)).collect();
        let nminus = (1..n).map(|j| GMatrix::unit(n, j + 1, 1)).collect();
        let d = n as i64 - 1;
        let mut diag = vec![int(0); n * n];
        diag[0] = int(1);
        for i in 1..n {
            diag[i * n + i] = rat(-1, d);
        }
        let h0 = GMatrix::new(n, diag)?;
        Ok(ParabolicData { n, nplus, nminus, h0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N_j^+ = E_{1,j+1}`, `j = 1..n-1` (stored 0-based).
    pub fn nplus(&self) -> &[GMatrix] {
        &self.nplus
    }

    /// `N_j^- = E_{j+1,1}`.
    pub fn nminus(&self) -> &[GMatrix] {
        &self.nminus
    }

    /// `H̃₀ = diag(n-1, -1, ..., -1) / (n-1)`.
    pub fn h0(&self) -> &GMatrix {
        &self.h0
    }

    /// All `n² - 1` basis elements: `N_j^±`, `H̃₀`, then the `m` block.
    pub fn basis(&self) -> Vec<BasisElement> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n - 1);
        for j in 1..n {
            out.push(BasisElement {
                label: format!("N{j}+"),
                matrix: self.nplus[j - 1].clone(),
            });
        }
        for j in 1..n {
            out.push(BasisElement {
                label: format!("N{j}-"),
                matrix: self.nminus[j - 1].clone(),
            });
        }
        out.push(BasisElement {
            label: "H0".into(),
            matrix: self.h0.clone(),
        });
        for i in 2..=n {
            for j in 2..=n {
                if i != j {
                    out.push(BasisElement {
                        label: format!("E{i},{j}"),
                        matrix: GMatrix::unit(n, i, j),
                    });
                }
            }
        }
        for i in 2..n {
            out.push(BasisElement {
                label: format!("H{i},{}", i + 1),
                matrix: GMatrix::diag_difference(n, i, i + 1),
            });
        }
        out
    }

    /// `Σ_j x_j N_j^-` as a polynomial matrix.
    fn z_matrix(&self) -> PolyMatrix {
        let nv = self.n - 1;
        let mut z = PolyMatrix::zero(self.n);
        for j in 0..nv {
            z.set(j + 1, 0, Polynomial::var(VarSpace::X, nv, j));
        }
        z
    }

    /// `Ad(n̄⁻¹)X = e^{-ad Z} X` with `n̄ = exp Z`, `Z = Σ x_j N_j^-`.
    pub fn ad_conjugate(&self, x: &GMatrix) -> PolyMatrix {
        let z = self.z_matrix();
        let mut term = x.to_poly(self.n - 1);
        let mut total = term.clone();
        let mut k = 1i64;
        loop {
            // next term: (-1/k) [Z, term]
            term = z.bracket(&term).scale(&rat(-1, k));
            if term.is_zero() {
                return total;
            }
            total = total.add(&term);
            k += 1;
        }
    }

    /// Splits a polynomial matrix into its `n₋`, `m`, `a` and `n₊` parts.
    pub fn decompose(&self, y: &PolyMatrix) -> Decomposition {
        let n = self.n;
        let nv = n - 1;
        let nminus = (1..n).map(|j| y.get(j, 0).clone()).collect();
        let nplus = (1..n).map(|j| y.get(0, j).clone()).collect();
        // a-coefficient: Tr(Y_l H̃₀) / Tr(H̃₀²)
        let h_norm = self.h0.trace_form(&self.h0).expect("same size");
        let mut a = Polynomial::zero(VarSpace::X, nv);
        for i in 0..n {
            a = &a + &y.get(i, i).scale(self.h0.get(i, i));
        }
        let a = a.scale(&(int(1) / h_norm));
        let mut m = PolyMatrix::zero(n);
        for i in 1..n {
            for j in 1..n {
                let mut e = y.get(i, j).clone();
                if i == j {
                    e = &e - &a.scale(self.h0.get(i, i));
                }
                m.set(i, j, e);
            }
        }
        let corner = y.get(0, 0) - &a.scale(self.h0.get(0, 0));
        debug_assert!(corner.is_zero(), "traceless input has no corner residue");
        Decomposition { nminus, m, a, nplus }
    }

    pub fn decompose_matrix(&self, y: &GMatrix) -> Result<MatrixDecomposition> {
        let d = self.decompose(&y.to_poly(self.n - 1));
        let c = |p: &Polynomial| p.eval(&vec![int(0); self.n - 1]);
        Ok(MatrixDecomposition {
            nminus: d.nminus.iter().map(c).collect::<Result<_>>()?,
            m: d.m.constant_part()?,
            a: c(&d.a)?,
            nplus: d.nplus.iter().map(c).collect::<Result<_>>()?,
        })
    }

    pub fn recompose(&self, d: &Decomposition) -> PolyMatrix {
        let nv = self.n - 1;
        let mut y = d.m.add(&self.h0.to_poly(nv).scale_poly(&d.a));
        for j in 0..nv {
            let mut e = y.get(j + 1, 0).clone();
            e = &e + &d.nminus[j];
            y.set(j + 1, 0, e);
            let mut e = y.get(0, j + 1).clone();
            e = &e + &d.nplus[j];
            y.set(0, j + 1, e);
        }
        y
    }

    /// `2ρ(n₊)(H̃₀) = Tr(ad H̃₀ |_{n₊})`.
    pub fn two_rho_nplus(&self) -> Rational {
        self.nplus
            .iter()
            .enumerate()
            .map(|(j, x)| self.h0.bracket(x).expect("same size").get(0, j + 1).clone())
            .sum()
    }

    /// The action of `Y ∈ l` on `Pol(n₊)` induced by `p(X) ↦ p(Ad(l⁻¹)X)`,
    /// differentiated: `-Σ_{r,s} c_{rs} ζ_r ∂/∂ζ_s`, where
    /// `[Y, N_r^+] = Σ_s c_{rs} N_s^+`.
    pub fn ad_sharp(&self, y: &GMatrix) -> Result<WeylElement> {
        let d = self.decompose_matrix(y)?;
        if d.nminus.iter().chain(&d.nplus).any(|c| !c.is_zero()) {
            return Err(Error::NotInSubalgebra("the Levi factor l"));
        }
        let nv = self.n - 1;
        let mut w = WeylElement::zero(VarSpace::Zeta, nv);
        for (r, np) in self.nplus.iter().enumerate() {
            let b = y.bracket(np)?;
            for s in 0..nv {
                let c = b.get(0, s + 1);
                w.add_term(MultiIndex::unit(nv, r), MultiIndex::unit(nv, s), -c.clone());
            }
        }
        Ok(w)
    }
}

impl PolyMatrix {
    fn scale_poly(&self, p: &Polynomial) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.n());
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, self.get(i, j) * p);
            }
        }
        out
    }
}

/// Parts of a polynomial matrix: coefficients of `N_j^∓`, the `m` block, and
/// the coefficient of `H̃₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub nminus: Vec<Polynomial>,
    pub m: PolyMatrix,
    pub a: Polynomial,
    pub nplus: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixDecomposition {
    pub nminus: Vec<Rational>,
    pub m: GMatrix,
    pub a: Rational,
    pub nplus: Vec<Rational>,
}

impl MatrixDecomposition {
    pub fn is_pure_m(&self) -> bool {
        self.a.is_zero() && self.nminus.iter().chain(&self.nplus).all(Coeff::is_zero)
    }
}
