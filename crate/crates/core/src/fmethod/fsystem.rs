use crate::error::{Error, Result};
use crate::lambda::{LambdaPoly, Param, ParamCoeff};
use crate::linalg::SparseRow;
use crate::multi_index::monomial_basis;
use crate::poly::{Polynomial, VarSpace};
use crate::principal::{dpi, BundleParams, Fiber};
use crate::rational::{Coeff, Rational};
use crate::sl::{ParabolicData, Parity};
use crate::weyl::WeylElement;

/// The ζ-side operators `op_j = Fourier(dπ_{λ*}(N_j^+))`, one per `N_j^+`,
/// for the trivial source bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct FSystem<C = LambdaPoly> {
    pub n: usize,
    pub lambda: Param,
    pub operators: Vec<WeylElement<C>>,
}

/// Builds the F-system and checks `-ζ_j · op_j = θ_j (λ - 1 + E_ζ)` and
/// `op_j(1) = 0` exactly.
pub fn assemble_fsystem<C: ParamCoeff>(n: usize, lambda: &Param) -> Result<FSystem<C>> {
    let pd = ParabolicData::new(n)?;
    let nv = n - 1;
    let params = BundleParams::new(n, Fiber::Trivial, Parity::Plus, lambda.clone()).twisted();
    let lam = C::from_param(lambda)?;
    let shift = WeylElement::scalar(VarSpace::Zeta, nv, lam.minus(&C::one()));
    let euler = WeylElement::euler(VarSpace::Zeta, nv);
    let one = Polynomial::one(VarSpace::Zeta, nv);
    let mut operators = Vec::with_capacity(nv);
    for (j, x) in pd.nplus().iter().enumerate() {
        let op = dpi::<C>(x, &params)?;
        let scalar = op
            .entries()
            .values()
            .next()
            .cloned()
            .unwrap_or_else(|| WeylElement::zero(VarSpace::X, nv));
        let op_j = scalar.with_space(VarSpace::Z).fourier()?;
        let lhs = (&WeylElement::mult(VarSpace::Zeta, nv, j) * &op_j).scale(&C::from_int(-1));
        let rhs = &WeylElement::theta(VarSpace::Zeta, nv, j) * &(&shift + &euler);
        if lhs != rhs {
            return Err(Error::Internal(format!("F-system identity fails for j = {}", j + 1)));
        }
        if !op_j.apply(&one)?.is_zero() {
            return Err(Error::Internal(format!("op_{} does not annihilate 1", j + 1)));
        }
        operators.push(op_j);
    }
    Ok(FSystem {
        n,
        lambda: lambda.clone(),
        operators,
    })
}

impl<C: Coeff> FSystem<C> {
    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    /// Residuals `op_j(p)` for every `j`.
    pub fn residuals(&self, p: &Polynomial<C>) -> Result<Vec<Polynomial<C>>> {
        self.operators.iter().map(|op| op.apply(p)).collect()
    }

    pub fn annihilates(&self, p: &Polynomial<C>) -> Result<bool> {
        Ok(self.residuals(p)?.iter().all(Polynomial::is_zero))
    }

    /// The stacked linear map `Pol^k → ⊕_j Pol^{k-1}` in the monomial bases.
    /// Columns follow `monomial_basis(n - 1, k)`.
    pub fn matrix_rows(&self, k: u32) -> Result<Vec<SparseRow<C>>> {
        let nv = self.nvars();
        let cols = monomial_basis(nv, k);
        let targets = if k == 0 { Vec::new() } else { monomial_basis(nv, k - 1) };
        let index: std::collections::BTreeMap<_, _> = targets.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut rows = vec![SparseRow::new(); nv * targets.len()];
        for (c, m) in cols.iter().enumerate() {
            let mono = Polynomial::monomial(VarSpace::Zeta, m.clone(), C::one());
            for (j, op) in self.operators.iter().enumerate() {
                for (t, v) in op.apply(&mono)?.terms() {
                    let r = index.get(t).ok_or_else(|| {
                        Error::Internal(format!("op_{} leaves degree {}", j + 1, k.saturating_sub(1)))
                    })?;
                    rows[j * targets.len() + r].insert(c, v.clone());
                }
            }
        }
        Ok(rows)
    }
}

impl FSystem<LambdaPoly> {
    pub fn specialize(&self, at: &Rational) -> FSystem<Rational> {
        FSystem {
            n: self.n,
            lambda: Param::Value(at.clone()),
            operators: self.operators.iter().map(|w| w.eval_lambda(at)).collect(),
        }
    }
}
