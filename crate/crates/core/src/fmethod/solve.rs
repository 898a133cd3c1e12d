use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lambda::{LambdaPoly, Param};
use crate::linalg::{lambda_rank, rational_nullspace, SparseRow};
use crate::multi_index::monomial_basis;
use crate::poly::{Polynomial, VarSpace};
use crate::rational::{Coeff, Rational};
use crate::vector_poly::VectorPolynomial;

use super::equivariance::{impose_equivariance, invariance_rows, Equivariance};
use super::fsystem::FSystem;

/// A parameter value where the generic answer changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalValue {
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
    pub kernel_dim: usize,
    pub hom_dimension: usize,
}

/// Solutions of the F-system on `Pol^k(n₊)` and the equivariant part.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpace {
    pub n: usize,
    pub k: u32,
    pub lambda: Param,
    pub pol_dim: usize,
    pub kernel_dim: usize,
    /// Kernel basis in `Pol^k(n₊)` (empty for generic `λ`).
    pub kernel: Vec<Polynomial>,
    /// Equivariant solutions in `Pol^k(n₊) ⊗ poly^k` (empty for generic `λ`).
    pub basis: Vec<VectorPolynomial>,
    pub hom_dimension: usize,
    /// Values of `λ` where kernel or hom dimension differ from the generic one.
    pub exceptional: Vec<ExceptionalValue>,
    #[serde(skip)]
    pub equivariance: Option<Equivariance>,
}

impl SolutionSpace {
    /// Exceptional values where a nonzero equivariant solution appears.
    pub fn hom_values(&self) -> Vec<&ExceptionalValue> {
        self.exceptional.iter().filter(|e| e.hom_dimension > 0).collect()
    }
}

/// Rows over `ℚ[λ]` cutting out `Sol` inside the weight-zero span of
/// `ζ^𝐤 ⊗ ỹ_𝐤`: invariance rows plus `c_𝐤 · op_j(ζ^𝐤) = 0`.
fn generic_hom_rows(fs: &FSystem<LambdaPoly>, k: u32) -> Result<Vec<SparseRow<LambdaPoly>>> {
    let nv = fs.nvars();
    let mut rows: Vec<SparseRow<LambdaPoly>> = invariance_rows(fs.n, k)?
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, LambdaPoly::constant(v))).collect())
        .collect();
    for (c, m) in monomial_basis(nv, k).into_iter().enumerate() {
        let mono = Polynomial::monomial(VarSpace::Zeta, m, LambdaPoly::one());
        for r in fs.residuals(&mono)? {
            for v in r.terms().values() {
                rows.push([(c, v.clone())].into_iter().collect());
            }
        }
    }
    Ok(rows)
}

/// Solves the F-system in degree `k`.
///
/// For a numeric `λ` this returns an explicit kernel and the equivariant
/// solutions. For the generic parameter, ranks are computed over `ℚ(λ)` and
/// every rational `λ₀` where the kernel or the hom space jumps is reported.
pub fn solve_degree(fs: &FSystem<LambdaPoly>, k: u32) -> Result<SolutionSpace> {
    let n = fs.n;
    let nv = fs.nvars();
    let cols = monomial_basis(nv, k);
    match &fs.lambda {
        Param::Value(l0) => solve_at(&fs.specialize(l0), k),
        Param::Generic => {
            let kr = lambda_rank(&fs.matrix_rows(k)?, cols.len());
            let hr = lambda_rank(&generic_hom_rows(fs, k)?, cols.len());
            let mut values: BTreeMap<Rational, ExceptionalValue> = BTreeMap::new();
            for (l0, _) in kr.exceptional.iter().chain(&hr.exceptional) {
                values.entry(l0.clone()).or_insert_with(|| ExceptionalValue {
                    lambda: l0.clone(),
                    kernel_dim: cols.len() - kr.rank_at(l0),
                    hom_dimension: cols.len() - hr.rank_at(l0),
                });
            }
            Ok(SolutionSpace {
                n,
                k,
                lambda: Param::Generic,
                pol_dim: cols.len(),
                kernel_dim: kr.generic_nullity(),
                kernel: Vec::new(),
                basis: Vec::new(),
                hom_dimension: hr.generic_nullity(),
                exceptional: values.into_values().collect(),
                equivariance: None,
            })
        }
    }
}

/// Solves a numerically specialized F-system exactly over `ℚ`.
pub fn solve_at(fs: &FSystem<Rational>, k: u32) -> Result<SolutionSpace> {
    let n = fs.n;
    let nv = fs.nvars();
    let cols = monomial_basis(nv, k);
    let kernel: Vec<Polynomial> = rational_nullspace(&fs.matrix_rows(k)?, cols.len())
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(
                VarSpace::Zeta,
                nv,
                cols.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    let eq = impose_equivariance(&kernel, n, k)?;
    Ok(SolutionSpace {
        n,
        k,
        lambda: fs.lambda.clone(),
        pol_dim: cols.len(),
        kernel_dim: kernel.len(),
        kernel,
        basis: eq.solutions.clone(),
        hom_dimension: eq.hom_dimension(),
        exceptional: Vec::new(),
        equivariance: Some(eq),
    })
}
