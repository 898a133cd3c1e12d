//! From F-system solutions to differential operators and Verma module maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::Param;
use crate::multi_index::MultiIndex;
use crate::poly::{Polynomial, VarSpace};
use crate::principal::{dpi, BundleParams, Fiber, PDOperator};
use crate::rational::{int, rat, Rational};
use crate::sl::{ParabolicData, Parity};
use crate::vector_poly::{diagonal, VectorPolynomial};
use crate::weyl::WeylElement;

/// Basis convention of the target fiber `poly^k`.
pub const NORMALIZATION: &str = "y~_k = y^k/k!";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct DerivTerm {
    deriv: MultiIndex,
    #[serde(with = "crate::rational::serde_rational")]
    coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct OperatorComponent {
    label: MultiIndex,
    terms: Vec<DerivTerm>,
}

#[derive(Serialize, Deserialize)]
struct DiffOperatorJson {
    n: usize,
    k: u32,
    normalization: String,
    components: Vec<OperatorComponent>,
}

/// A constant-coefficient operator `C[x] → C[x] ⊗ poly^k`, stored as the
/// coefficient of `∂^𝐝/∂x^𝐝` in the `ỹ_label` component.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperatorSpec {
    pub n: usize,
    pub k: u32,
    pub components: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Rational>>,
}

impl DiffOperatorSpec {
    pub fn nvars(&self) -> usize {
        self.n - 1
    }

    pub fn to_pd_operator(&self) -> PDOperator {
        let nv = self.nvars();
        let mut op = PDOperator::zero(nv, self.k, 0);
        for (label, terms) in &self.components {
            for (d, c) in terms {
                let w = WeylElement::term(VarSpace::X, MultiIndex::zeros(nv), d.clone(), c.clone());
                op.add_entry(label.clone(), MultiIndex::zeros(nv), w);
            }
        }
        op
    }

    /// Human-readable form such as `d^2/dx1^2 ⊗ y~(2,0) + ...`.
    pub fn display(&self) -> String {
        let nv = self.nvars();
        let mut parts = Vec::new();
        for (label, terms) in &self.components {
            for (d, c) in terms {
                let w = WeylElement::term(VarSpace::X, MultiIndex::zeros(nv), d.clone(), c.clone());
                parts.push(format!("({w}) ⊗ y~{label}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Serialize for DiffOperatorSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiffOperatorJson {
            n: self.n,
            k: self.k,
            normalization: NORMALIZATION.into(),
            components: self
                .components
                .iter()
                .map(|(label, terms)| OperatorComponent {
                    label: label.clone(),
                    terms: terms
                        .iter()
                        .map(|(d, c)| DerivTerm {
                            deriv: d.clone(),
                            coeff: c.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOperatorSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiffOperatorJson::deserialize(d)?;
        if raw.normalization != NORMALIZATION {
            return Err(serde::de::Error::custom(format!(
                "unknown normalization {:?}",
                raw.normalization
            )));
        }
        let components = raw
            .components
            .into_iter()
            .map(|c| (c.label, c.terms.into_iter().map(|t| (t.deriv, t.coeff)).collect()))
            .collect();
        Ok(DiffOperatorSpec {
            n: raw.n,
            k: raw.k,
            components,
        })
    }
}

/// An element of `Hom(S^k(C^{n-1}), S(n₋))`: the image of each `e_label`
/// as a polynomial in commuting symbols `N_1^-, ..., N_{n-1}^-`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VermaHomSpec {
    pub n: usize,
    pub k: u32,
    pub components: VectorPolynomial,
}

impl VermaHomSpec {
    pub fn image(&self, label: &MultiIndex) -> Option<&Polynomial> {
        self.components.get(label)
    }
}

fn check_homogeneous(n: usize, psi: &VectorPolynomial) -> Result<()> {
    let k = psi.degree();
    for (label, p) in psi.components() {
        if p.nvars() != n - 1 || label.len() != n - 1 {
            return Err(Error::SizeMismatch {
                left: p.nvars(),
                right: n - 1,
            });
        }
        if p.space() != VarSpace::Zeta {
            return Err(Error::SpaceMismatch {
                left: p.space().to_string(),
                right: VarSpace::Zeta.to_string(),
            });
        }
        if !p.is_homogeneous(k) {
            return Err(Error::DegreeMismatch {
                left: p.degree().unwrap_or(0),
                right: k,
            });
        }
    }
    Ok(())
}

/// `symb⁻¹`: each `ζ^𝐝` becomes `∂^𝐝/∂x^𝐝` with the same coefficient.
pub fn symbol_inverse(n: usize, psi: &VectorPolynomial) -> Result<DiffOperatorSpec> {
    check_homogeneous(n, psi)?;
    let components = psi
        .components()
        .iter()
        .map(|(label, p)| (label.clone(), p.terms().clone()))
        .collect();
    Ok(DiffOperatorSpec {
        n,
        k: psi.degree(),
        components,
    })
}

/// `F_c⁻¹ ⊗ id`: each `ζ^𝐝` becomes the monomial `N^-_𝐝` in `S(n₋)`.
pub fn fc_inverse(n: usize, psi: &VectorPolynomial) -> Result<VermaHomSpec> {
    check_homogeneous(n, psi)?;
    Ok(VermaHomSpec {
        n,
        k: psi.degree(),
        components: psi.map_polys(|p| Ok(p.clone().with_space(VarSpace::NMinus)))?,
    })
}

/// `F_c ⊗ id` computed from the action: `u ↦ \widehat{dπ_{λ*}}(u) 1` with
/// `N_j^-` acting through the Fourier transform of the twisted `dπ(N_j^-)`.
pub fn fc(spec: &VermaHomSpec) -> Result<VectorPolynomial> {
    let n = spec.n;
    let nv = n - 1;
    let pd = ParabolicData::new(n)?;
    let params = BundleParams::new(n, Fiber::Trivial, Parity::Plus, Param::Value(int(0))).twisted();
    let ops = pd
        .nminus()
        .iter()
        .map(|x| {
            let op = dpi::<Rational>(x, &params)?;
            let w = op
                .entries()
                .values()
                .next()
                .cloned()
                .unwrap_or_else(|| WeylElement::zero(VarSpace::X, nv));
            w.with_space(VarSpace::Z).fourier()
        })
        .collect::<Result<Vec<_>>>()?;
    let one = Polynomial::one(VarSpace::Zeta, nv);
    spec.components.map_polys(|p| {
        let mut out = Polynomial::zero(VarSpace::Zeta, nv);
        for (m, c) in p.terms() {
            let mut v = one.clone();
            for (j, op) in ops.iter().enumerate() {
                for _ in 0..m.get(j) {
                    v = op.apply(&v)?;
                }
            }
            out = out.checked_add(&v.scale(c))?;
        }
        Ok(out)
    })
}

/// `ψ_k = Σ_𝐤 ζ^𝐤 ⊗ ỹ_𝐤`.
pub fn psi_k(n: usize, k: u32) -> VectorPolynomial {
    diagonal(VarSpace::Zeta, n - 1, k)
}

/// `D_k = Σ_𝐤 ∂^𝐤/∂x^𝐤 ⊗ ỹ_𝐤`.
pub fn d_k(n: usize, k: u32) -> DiffOperatorSpec {
    symbol_inverse(n, &psi_k(n, k)).expect("ψ_k is homogeneous")
}

/// `φ_k = Σ_𝐤 N^-_𝐤 ⊗ ỹ_𝐤`.
pub fn phi_k(n: usize, k: u32) -> VermaHomSpec {
    fc_inverse(n, &psi_k(n, k)).expect("ψ_k is homogeneous")
}

/// `ν = 1 + k/(n-1)`.
pub fn target_nu(n: usize, k: u32) -> Rational {
    int(1) + rat(k as i64, n as i64 - 1)
}

/// Source `(triv, 1-k)^α` and target `(poly^k, 1+k/(n-1))^{α+k}` of `D_k`.
pub fn dk_bundles(n: usize, k: u32, alpha: Parity) -> (BundleParams, BundleParams) {
    let src = BundleParams::new(n, Fiber::Trivial, alpha, Param::Value(int(1 - k as i64)));
    let dst = BundleParams::new(n, Fiber::Poly(k), alpha.add(k), Param::Value(target_nu(n, k)));
    (src, dst)
}
