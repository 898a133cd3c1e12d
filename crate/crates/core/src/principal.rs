//! The infinitesimal action of `sl(n)` on the polynomial model `C[x] ⊗ W` of
//! sections over the open Bruhat cell.
//!
//! For `X ∈ sl(n)` write `Ad(n̄⁻¹)X = Σ g_r(x) N_r^- + c(x) H̃₀ + M(x) + (n₊-part)`
//! with `n̄ = exp(Σ x_j N_j^-)`. Then
//!
//! `dπ(X) = χ c(x) + dσ(M(x)) - Σ_r g_r(x) ∂/∂x_r`
//!
//! where `χ = λ` for the untwisted bundle and `χ = n - λ` (with the dual
//! fiber) for the twisted one.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{Param, ParamCoeff};
use crate::multi_index::{monomial_basis, monomials_up_to, MultiIndex};
use crate::poly::{Polynomial, VarSpace};
use crate::rational::{int, Coeff, Rational};
use crate::sl::{GMatrix, ParabolicData, Parity};
use crate::vector_poly::VectorPolynomial;
use crate::weyl::WeylElement;

/// The representation of the Levi block `GL(n-1)` on the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "k", rename_all = "lowercase")]
pub enum Fiber {
    Trivial,
    /// Homogeneous degree-`k` polynomials on `C^{n-1}` (contragredient action),
    /// in the basis `ỹ_𝐤 = y^𝐤 / 𝐤!`.
    Poly(u32),
    /// `S^k(C^{n-1})` in the monomial basis `e^𝐤`.
    Sym(u32),
}

impl Fiber {
    pub fn degree(self) -> u32 {
        match self {
            Fiber::Trivial => 0,
            Fiber::Poly(k) | Fiber::Sym(k) => k,
        }
    }

    pub fn dual(self) -> Fiber {
        match self {
            Fiber::Trivial => Fiber::Trivial,
            Fiber::Poly(k) => Fiber::Sym(k),
            Fiber::Sym(k) => Fiber::Poly(k),
        }
    }

    /// Basis labels: degree-`k` exponent vectors in `n - 1` variables.
    pub fn basis(self, n: usize) -> Vec<MultiIndex> {
        monomial_basis(n - 1, self.degree())
    }

    pub fn dim(self, n: usize) -> usize {
        self.basis(n).len()
    }

    /// Human-readable label such as `poly^3_2`.
    pub fn label(self, n: usize) -> String {
        match self {
            Fiber::Trivial => "triv".into(),
            Fiber::Poly(k) => format!("poly^{k}_{}", n - 1),
            Fiber::Sym(k) => format!("sym^{k}_{}", n - 1),
        }
    }
}

/// A linear map on the fiber, keyed by `(output label, input label)`.
pub type FiberMap = BTreeMap<(MultiIndex, MultiIndex), Rational>;

/// Contributions of the block matrix unit `E_{a+1,b+1}` (0-based `a, b` in
/// the Levi block) to `dσ`, as `(out, in, coefficient)` triples.
fn block_unit_action(fiber: Fiber, nv: usize, a: usize, b: usize) -> Vec<(MultiIndex, MultiIndex, Rational)> {
    let k = fiber.degree();
    let mut out = Vec::new();
    for m in monomial_basis(nv, k) {
        match fiber {
            Fiber::Trivial => {}
            Fiber::Sym(_) => {
                // e_a ∂/∂e_b e^m = m_b e^{m - e_b + e_a}
                let mb = m.get(b);
                if mb > 0 {
                    let target = m.with(b, mb - 1);
                    let target = target.with(a, target.get(a) + 1);
                    out.push((target, m.clone(), int(mb as i64)));
                }
            }
            Fiber::Poly(_) => {
                // -y_b ∂/∂y_a acting on ỹ_m = y^m / m!
                let ma = m.get(a);
                if ma > 0 {
                    let coeff = if a == b { ma as i64 } else { m.get(b) as i64 + 1 };
                    let target = m.with(a, ma - 1);
                    let target = target.with(b, target.get(b) + 1);
                    out.push((target, m.clone(), int(-coeff)));
                }
            }
        }
    }
    out
}

/// `dσ(Y)` for `Y` in the `m` block (first row and column zero).
pub fn dsigma_fiber(y: &GMatrix, fiber: Fiber) -> Result<FiberMap> {
    let n = y.n();
    let pd = ParabolicData::new(n)?;
    if !pd.decompose_matrix(y)?.is_pure_m() {
        return Err(Error::NotInSubalgebra("the m block"));
    }
    let nv = n - 1;
    let mut out = FiberMap::new();
    for a in 0..nv {
        for b in 0..nv {
            let c = y.get(a + 1, b + 1);
            if c.is_zero() {
                continue;
            }
            for (o, i, v) in block_unit_action(fiber, nv, a, b) {
                let e = out.entry((o, i)).or_insert_with(|| int(0));
                *e += v * c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Parameters `(σ, α, λ)` of an induced bundle, possibly twisted to
/// `σ^∨ ⊠ C_{2ρ-λ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleParams {
    pub n: usize,
    pub fiber: Fiber,
    pub alpha: Parity,
    pub lambda: Param,
    pub dual_twist: bool,
}

impl BundleParams {
    pub fn new(n: usize, fiber: Fiber, alpha: Parity, lambda: Param) -> Self {
        BundleParams {
            n,
            fiber,
            alpha,
            lambda,
            dual_twist: false,
        }
    }

    pub fn twisted(mut self) -> Self {
        self.dual_twist = !self.dual_twist;
        self
    }

    /// The fiber the Levi factor actually acts on.
    pub fn acting_fiber(&self) -> Fiber {
        if self.dual_twist {
            self.fiber.dual()
        } else {
            self.fiber
        }
    }

    /// Value of the `a`-character on `H̃₀`: `λ`, or `n - λ` when twisted.
    pub fn character<C: ParamCoeff>(&self) -> Result<C> {
        let l = C::from_param(&self.lambda)?;
        Ok(if self.dual_twist {
            C::from_int(self.n as i64).minus(&l)
        } else {
            l
        })
    }
}

/// A matrix of differential operators on `C[x] ⊗ W_in → C[x] ⊗ W_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct PDOperator<C = Rational> {
    nvars: usize,
    out_degree: u32,
    in_degree: u32,
    entries: BTreeMap<(MultiIndex, MultiIndex), WeylElement<C>>,
}

impl<C: Coeff> PDOperator<C> {
    pub fn zero(nvars: usize, out_degree: u32, in_degree: u32) -> Self {
        PDOperator {
            nvars,
            out_degree,
            in_degree,
            entries: BTreeMap::new(),
        }
    }

    /// `w ⊗ id` on a fiber with labels of the given degree.
    pub fn scalar(w: WeylElement<C>, degree: u32) -> Self {
        let nv = w.nvars();
        let mut op = Self::zero(nv, degree, degree);
        for l in monomial_basis(nv, degree) {
            op.add_entry(l.clone(), l, w.clone());
        }
        op
    }

    pub fn identity(nvars: usize, degree: u32) -> Self {
        Self::scalar(WeylElement::one(VarSpace::X, nvars), degree)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &BTreeMap<(MultiIndex, MultiIndex), WeylElement<C>> {
        &self.entries
    }

    pub fn entry(&self, out: &MultiIndex, inp: &MultiIndex) -> Option<&WeylElement<C>> {
        self.entries.get(&(out.clone(), inp.clone()))
    }

    pub fn add_entry(&mut self, out: MultiIndex, inp: MultiIndex, w: WeylElement<C>) {
        let key = (out, inp);
        let sum = match self.entries.remove(&key) {
            Some(old) => &old + &w,
            None => w,
        };
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((o, i), w) in &other.entries {
            out.add_entry(o.clone(), i.clone(), w.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars, self.out_degree, self.in_degree);
        for ((o, i), w) in &self.entries {
            out.add_entry(o.clone(), i.clone(), w.scale(c));
        }
        out
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.out_degree, other.in_degree);
        let mut by_out: BTreeMap<&MultiIndex, Vec<(&MultiIndex, &WeylElement<C>)>> = BTreeMap::new();
        for ((m, i), b) in &other.entries {
            by_out.entry(m).or_default().push((i, b));
        }
        for ((o, m), a) in &self.entries {
            for (i, b) in by_out.get(m).into_iter().flatten() {
                out.add_entry(o.clone(), (*i).clone(), a * *b);
            }
        }
        out
    }

    pub fn bracket(&self, other: &Self) -> Self {
        self.compose(other).add(&other.compose(self).scale(&C::from_int(-1)))
    }

    pub fn apply(&self, f: &VectorPolynomial<C>) -> Result<VectorPolynomial<C>> {
        if f.degree() != self.in_degree {
            return Err(Error::DegreeMismatch {
                left: f.degree(),
                right: self.in_degree,
            });
        }
        let mut out = VectorPolynomial::new(self.out_degree);
        for ((o, i), w) in &self.entries {
            if let Some(p) = f.get(i) {
                out.insert(o.clone(), w.apply(p)?)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PDOperator<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (idx, ((o, i), w)) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "[{o}<-{i}] {w}")?;
        }
        Ok(())
    }
}

/// `dπ(X)` on `C[x] ⊗ W` for the given bundle.
pub fn dpi<C: ParamCoeff>(x: &GMatrix, params: &BundleParams) -> Result<PDOperator<C>> {
    let n = params.n;
    if x.n() != n {
        return Err(Error::SizeMismatch { left: x.n(), right: n });
    }
    let pd = ParabolicData::new(n)?;
    let nv = n - 1;
    let fiber = params.acting_fiber();
    let k = fiber.degree();
    let parts = pd.decompose(&pd.ad_conjugate(x));
    let lift = |p: &Polynomial| p.map_coeffs(C::from_rational);

    // scalar part: χ c(x) - Σ g_r(x) ∂_r
    let chi = params.character::<C>()?;
    let mut scalar = WeylElement::from_polynomial(&lift(&parts.a).scale(&chi));
    for (r, g) in parts.nminus.iter().enumerate() {
        let dr = WeylElement::deriv(VarSpace::X, nv, r);
        let gw = WeylElement::from_polynomial(&lift(g));
        scalar = &scalar - &(&gw * &dr);
    }
    let mut op = PDOperator::scalar(scalar, k);

    // fiber part: dσ(M(x)) as multiplication operators
    if fiber != Fiber::Trivial {
        for a in 0..nv {
            for b in 0..nv {
                let mab = parts.m.get(a + 1, b + 1);
                if mab.is_zero() {
                    continue;
                }
                for (o, i, v) in block_unit_action(fiber, nv, a, b) {
                    let w = WeylElement::from_polynomial(&lift(&mab.scale(&v)));
                    op.add_entry(o, i, w);
                }
            }
        }
    }
    Ok(op)
}

/// The first point where an intertwining check failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub element: String,
    pub fiber_label: String,
    pub monomial: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntertwiningReport {
    pub passed: bool,
    pub elements_checked: usize,
    pub inputs_checked: usize,
    pub witness: Option<Witness>,
}

/// Checks `D ∘ dπ_src(X) = dπ_dst(X) ∘ D` on every input `x^m ⊗ w`
/// with `|m| ≤ max_deg`, for every basis element `X` of `sl(n)`.
pub fn verify_intertwining(
    d: &PDOperator,
    src: &BundleParams,
    dst: &BundleParams,
    max_deg: u32,
) -> Result<IntertwiningReport> {
    if src.n != dst.n {
        return Err(Error::SizeMismatch {
            left: src.n,
            right: dst.n,
        });
    }
    let n = src.n;
    let nv = n - 1;
    let pd = ParabolicData::new(n)?;
    let basis = pd.basis();
    let src_deg = src.acting_fiber().degree();
    let src_labels = monomial_basis(nv, src_deg);
    let monos = monomials_up_to(nv, max_deg);
    let per_element: Vec<Result<(usize, Option<Witness>)>> = basis
        .par_iter()
        .map(|be| {
            let ps = dpi::<Rational>(&be.matrix, src)?;
            let pt = dpi::<Rational>(&be.matrix, dst)?;
            let lhs = d.compose(&ps);
            let rhs = pt.compose(d);
            let mut count = 0;
            for label in &src_labels {
                for m in &monos {
                    count += 1;
                    let mut f = VectorPolynomial::new(src_deg);
                    f.insert(label.clone(), Polynomial::monomial(VarSpace::X, m.clone(), int(1)))?;
                    let residual = lhs.apply(&f)?.checked_add(&rhs.apply(&f)?.scale(&int(-1)))?;
                    if !residual.is_zero() {
                        let text = residual
                            .components()
                            .iter()
                            .map(|(l, p)| format!("{l}: {p}"))
                            .collect::<Vec<_>>()
                            .join("; ");
                        let witness = Witness {
                            element: be.label.clone(),
                            fiber_label: label.to_string(),
                            monomial: Polynomial::monomial(VarSpace::X, m.clone(), int(1)).to_string(),
                            residual: text,
                        };
                        return Ok((count, Some(witness)));
                    }
                }
            }
            Ok((count, None))
        })
        .collect();
    let mut inputs = 0;
    let mut witness = None;
    let mut elements = 0;
    for r in per_element {
        let (c, w) = r?;
        elements += 1;
        inputs += c;
        if w.is_some() {
            witness = w;
            break;
        }
    }
    Ok(IntertwiningReport {
        passed: witness.is_none(),
        elements_checked: elements,
        inputs_checked: inputs,
        witness,
    })
}
