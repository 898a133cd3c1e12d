//! `m ⊕ a`-equivariance of `Pol^k(n₊) ⊗ W`-valued solutions, `W = poly^k`.
//!
//! Invariants of `m` have weight zero, and the weight-zero subspace of
//! `Pol^k(n₊) ⊗ W` is spanned by the pairs `ζ^𝐤 ⊗ ỹ_𝐤`. On that subspace it
//! suffices to impose the Chevalley generators `E_{i+1,i+2}`, `E_{i+2,i+1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{rational_nullspace, SparseRow};
use crate::multi_index::{monomial_basis, MultiIndex};
use crate::poly::{Polynomial, VarSpace};
use crate::principal::{dsigma_fiber, Fiber};
use crate::rational::{int, rat, Coeff, Rational};
use crate::sl::{GMatrix, ParabolicData, Parity};
use crate::vector_poly::VectorPolynomial;

/// `Y · ψ` for `Y` in the `m` block, acting on `Pol(n₊)` through `Ad_#` and
/// on the fiber `poly^k` contragrediently.
pub fn levi_action(pd: &ParabolicData, y: &GMatrix, psi: &VectorPolynomial) -> Result<VectorPolynomial> {
    let k = psi.degree();
    let sharp = pd.ad_sharp(y)?;
    let mut out = psi.map_polys(|p| sharp.apply(p))?;
    for ((o, i), c) in dsigma_fiber(y, Fiber::Poly(k))? {
        if let Some(p) = psi.get(&i) {
            out.insert(o, p.scale(&c))?;
        }
    }
    Ok(out)
}

/// Chevalley generators of `m ≅ sl(n-1)` with their labels.
pub fn chevalley_generators(n: usize) -> Vec<(String, GMatrix)> {
    let mut out = Vec::new();
    for i in 2..n {
        out.push((format!("E{i},{}", i + 1), GMatrix::unit(n, i, i + 1)));
        out.push((format!("E{},{i}", i + 1), GMatrix::unit(n, i + 1, i)));
    }
    out
}

/// Nonzero residuals `Y · ψ` over the full `m` basis.
pub fn equivariance_residual(n: usize, psi: &VectorPolynomial) -> Result<Vec<(String, VectorPolynomial)>> {
    let pd = ParabolicData::new(n)?;
    let mut out = Vec::new();
    for be in pd.basis() {
        if !pd.decompose_matrix(&be.matrix)?.is_pure_m() {
            continue;
        }
        let r = levi_action(&pd, &be.matrix, psi)?;
        if !r.is_zero() {
            out.push((be.label, r));
        }
    }
    Ok(out)
}

/// Eigenvalue of `H̃₀` on `Pol^k(n₊)` under `Ad_#`.
pub fn a_eigenvalue(n: usize, k: u32) -> Result<Rational> {
    let pd = ParabolicData::new(n)?;
    let nv = n - 1;
    let sharp = pd.ad_sharp(pd.h0())?;
    let m = monomial_basis(nv, k).into_iter().next().expect("nonempty basis");
    let p = Polynomial::monomial(VarSpace::Zeta, m.clone(), int(1));
    Ok(sharp.apply(&p)?.coeff(&m))
}

/// The weight-zero vector `ζ^𝐤 ⊗ ỹ_𝐤`.
pub fn zero_weight_vector(nv: usize, label: &MultiIndex) -> VectorPolynomial {
    let mut v = VectorPolynomial::new(label.degree());
    v.insert(
        label.clone(),
        Polynomial::monomial(VarSpace::Zeta, label.clone(), int(1)),
    )
    .expect("label has the vector degree");
    debug_assert_eq!(label.len(), nv);
    v
}

/// Linear conditions on coefficients `c_𝐤` of `Σ c_𝐤 ζ^𝐤 ⊗ ỹ_𝐤` expressing
/// `m`-invariance. Columns follow `monomial_basis(n - 1, k)`.
pub fn invariance_rows(n: usize, k: u32) -> Result<Vec<SparseRow<Rational>>> {
    let pd = ParabolicData::new(n)?;
    let nv = n - 1;
    let cols = monomial_basis(nv, k);
    let mut rows: BTreeMap<(String, MultiIndex, MultiIndex), SparseRow<Rational>> = BTreeMap::new();
    for (label, y) in chevalley_generators(n) {
        for (c, m) in cols.iter().enumerate() {
            let r = levi_action(&pd, &y, &zero_weight_vector(nv, m))?;
            for (w, p) in r.components() {
                for (mono, v) in p.terms() {
                    rows.entry((label.clone(), w.clone(), mono.clone()))
                        .or_default()
                        .insert(c, v.clone());
                }
            }
        }
    }
    Ok(rows.into_values().collect())
}

/// Result of imposing `M A`-equivariance on an F-system kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Equivariance {
    pub n: usize,
    pub k: u32,
    /// Basis of equivariant solutions in `Pol^k(n₊) ⊗ poly^k`.
    pub solutions: Vec<VectorPolynomial>,
    /// Required `ν - λ`, read off from the `H̃₀`-eigenvalue on `Pol^k(n₊)`.
    #[serde(with = "crate::rational::serde_rational")]
    pub nu_shift: Rational,
    /// Required parity shift `β = α + k` (the `sgn^k` twist).
    pub parity_shift: u32,
}

impl Equivariance {
    pub fn hom_dimension(&self) -> usize {
        self.solutions.len()
    }

    /// Whether the target parameters `(β, ν)` are compatible with source `(α, λ)`.
    pub fn admits(&self, lambda: &Rational, nu: &Rational, alpha: Parity, beta: Parity) -> bool {
        nu - lambda == self.nu_shift && alpha.add(self.parity_shift) == beta
    }
}

/// Filters an F-system kernel `K ⊂ Pol^k(n₊)` down to `m`-invariant elements
/// of `K ⊗ poly^k` and records the `a`- and parity constraints.
pub fn impose_equivariance(kernel: &[Polynomial], n: usize, k: u32) -> Result<Equivariance> {
    let nu_shift = -a_eigenvalue(n, k)?;
    if kernel.is_empty() {
        return Ok(Equivariance {
            n,
            k,
            solutions: Vec::new(),
            nu_shift,
            parity_shift: k,
        });
    }
    let nv = n - 1;
    let cols = monomial_basis(nv, k);
    let mut rows = invariance_rows(n, k)?;
    // annihilator functionals φ of K: c_𝐤 φ(ζ^𝐤) = 0 keeps each component in K
    let index: BTreeMap<_, _> = cols.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let kernel_rows: Vec<SparseRow<Rational>> = kernel
        .iter()
        .map(|p| p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect())
        .collect();
    for phi in rational_nullspace(&kernel_rows, cols.len()) {
        for (c, v) in phi.into_iter().enumerate() {
            if !v.is_zero() {
                rows.push([(c, v)].into_iter().collect());
            }
        }
    }
    let solutions = rational_nullspace(&rows, cols.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = VectorPolynomial::new(k);
            for (c, m) in coeffs.iter().zip(&cols) {
                if !c.is_zero() {
                    v.insert(m.clone(), Polynomial::monomial(VarSpace::Zeta, m.clone(), c.clone()))?;
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Equivariance {
        n,
        k,
        solutions,
        nu_shift,
        parity_shift: k,
    })
}

/// `ν - λ = nk/(n-1)` in closed form.
pub fn nu_shift_formula(n: usize, k: u32) -> Rational {
    rat(n as i64 * k as i64, n as i64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector_poly::diagonal;

    #[test]
    fn psi_is_invariant() {
        for n in 2..=5 {
            for k in 0..=3 {
                let psi = diagonal(VarSpace::Zeta, n - 1, k);
                assert!(equivariance_residual(n, &psi).unwrap().is_empty(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn perturbed_psi_is_rejected() {
        let mut psi = diagonal(VarSpace::Zeta, 2, 2);
        psi.insert(
            MultiIndex::new(vec![2, 0]),
            Polynomial::monomial(VarSpace::Zeta, MultiIndex::new(vec![1, 1]), int(1)),
        )
        .unwrap();
        assert!(!equivariance_residual(3, &psi).unwrap().is_empty());
    }

    #[test]
    fn invariants_of_full_space() {
        // with K = Pol^k the invariants are exactly the multiples of ψ_k
        for n in 2..=5 {
            let nv = n - 1;
            for k in 0..=3u32 {
                let kernel: Vec<Polynomial> = monomial_basis(nv, k)
                    .into_iter()
                    .map(|m| Polynomial::monomial(VarSpace::Zeta, m, int(1)))
                    .collect();
                let eq = impose_equivariance(&kernel, n, k).unwrap();
                assert_eq!(eq.hom_dimension(), 1);
                assert_eq!(eq.solutions[0], diagonal(VarSpace::Zeta, nv, k));
                assert_eq!(eq.nu_shift, nu_shift_formula(n, k));
            }
        }
    }

    #[test]
    fn empty_kernel_gives_nothing() {
        let eq = impose_equivariance(&[], 3, 2).unwrap();
        assert_eq!(eq.hom_dimension(), 0);
    }

    #[test]
    fn parameter_constraints() {
        let eq = impose_equivariance(&[Polynomial::one(VarSpace::Zeta, 2)], 3, 0).unwrap();
        assert!(eq.admits(&int(5), &int(5), Parity::Minus, Parity::Minus));
        let kernel: Vec<Polynomial> = monomial_basis(2, 1)
            .into_iter()
            .map(|m| Polynomial::monomial(VarSpace::Zeta, m, int(1)))
            .collect();
        let eq = impose_equivariance(&kernel, 3, 1).unwrap();
        assert!(eq.admits(&int(0), &rat(3, 2), Parity::Plus, Parity::Minus));
        assert!(!eq.admits(&int(0), &rat(3, 2), Parity::Plus, Parity::Plus));
        assert!(!eq.admits(&int(0), &int(2), Parity::Plus, Parity::Minus));
    }

    // The component γ = diag(-1, 1, ..., 1, -1) of M acts on ζ_j by g_1 g_{j+1}
    // and on y_b by g_{b+1}; every weight-zero pair picks up the same sign,
    // which must agree with the sgn^k rule β = α + k.
    #[test]
    fn gamma_sign_matches_parity_rule() {
        for n in 3..=5usize {
            let mut g = vec![1i64; n];
            g[0] = -1;
            g[n - 1] = -1;
            for k in 0..=4u32 {
                for m in monomial_basis(n - 1, k) {
                    let sign: i64 = (0..n - 1).map(|j| (g[0] * g[j + 1] * g[j + 1]).pow(m.get(j))).product();
                    assert_eq!(sign, Parity::Plus.add(k).sign(), "n={n} {m}");
                }
            }
        }
    }
}
