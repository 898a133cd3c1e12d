//! Classification tables for intertwining operators and Verma module maps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{LambdaPoly, Param};
use crate::principal::Fiber;
use crate::rational::{is_nonneg_integer, Rational};
use crate::sl::Parity;

use super::fsystem::assemble_fsystem;
use super::operators::{fc_inverse, symbol_inverse, DiffOperatorSpec, VermaHomSpec};
use super::solve::{solve_at, solve_degree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "identity")]
    Identity,
    /// Differential operators between principal series of `G`.
    #[serde(rename = "Lambda_G")]
    LambdaG,
    /// `(g, P)`-homomorphisms between generalized Verma modules.
    #[serde(rename = "Lambda_gP")]
    LambdaGP,
    /// `g`-homomorphisms, no parity data.
    #[serde(rename = "Lambda_g")]
    LambdaLie,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Identity, Family::LambdaG, Family::LambdaGP, Family::LambdaLie];

    pub fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::LambdaG => "Lambda_G",
            Family::LambdaGP => "Lambda_gP",
            Family::LambdaLie => "Lambda_g",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "identity" | "id" => Ok(Family::Identity),
            "G" | "Lambda_G" => Ok(Family::LambdaG),
            "gP" | "Lambda_gP" => Ok(Family::LambdaGP),
            "g" | "Lambda_g" => Ok(Family::LambdaLie),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of a classification table.
///
/// `Lambda_G` rows use `(λ, ν)`; the Verma-side families use `(s, r)`.
/// The identity row carries the generic parameter with `ν = λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub family: Family,
    pub n: usize,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Parity>,
    pub fiber: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Param>,
    #[serde(rename = "homDim")]
    pub hom_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<DiffOperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verma: Option<VermaHomSpec>,
}

/// `poly^k_1` and `sym^k_1` are both regarded as `triv`.
pub fn fiber_label(n: usize, fiber: Fiber) -> String {
    if n == 2 {
        "triv".into()
    } else {
        fiber.label(n)
    }
}

/// Equivariant solutions found in one degree at one exceptional `λ`.
#[derive(Clone, Debug)]
struct DegreeResult {
    k: u32,
    lambda: Rational,
    nu: Rational,
    parity_shift: u32,
    hom_dim: usize,
    operator: DiffOperatorSpec,
    verma: VermaHomSpec,
}

fn solve_family(n: usize, k: u32) -> Result<Vec<DegreeResult>> {
    let fs = assemble_fsystem::<LambdaPoly>(n, &Param::Generic)?;
    let generic = solve_degree(&fs, k)?;
    let mut out = Vec::new();
    for ev in generic.hom_values() {
        let at = solve_degree(&assemble_fsystem(n, &Param::Value(ev.lambda.clone()))?, k)?;
        let eq = at
            .equivariance
            .as_ref()
            .ok_or_else(|| Error::Internal("numeric solve without equivariance data".into()))?;
        let psi = at
            .basis
            .first()
            .ok_or_else(|| Error::Internal(format!("no solution at λ = {}", ev.lambda)))?;
        out.push(DegreeResult {
            k,
            lambda: ev.lambda.clone(),
            nu: &ev.lambda + &eq.nu_shift,
            parity_shift: eq.parity_shift,
            hom_dim: at.hom_dimension,
            operator: symbol_inverse(n, psi)?,
            verma: fc_inverse(n, psi)?,
        });
    }
    Ok(out)
}

/// All records for `k ≤ kmax`, both parities, ordered by
/// `(family, k, α)`.
pub fn classify(n: usize, kmax: u32) -> Result<Vec<ClassificationRecord>> {
    if n < 2 {
        return Err(Error::Unsupported(format!("n = {n} (need n >= 2)")));
    }
    let per_degree: Vec<Result<Vec<DegreeResult>>> = (1..=kmax).into_par_iter().map(|k| solve_family(n, k)).collect();
    let mut found = Vec::new();
    for r in per_degree {
        found.extend(r?);
    }
    let mut out = Vec::new();
    for alpha in Parity::BOTH {
        out.push(ClassificationRecord {
            family: Family::Identity,
            n,
            k: 0,
            alpha: Some(alpha),
            beta: Some(alpha),
            fiber: "triv".into(),
            lambda: Some(Param::Generic),
            nu: Some(Param::Generic),
            s: None,
            r: None,
            hom_dim: 1,
            operator: None,
            verma: None,
        });
    }
    for d in &found {
        for alpha in Parity::BOTH {
            out.push(ClassificationRecord {
                family: Family::LambdaG,
                n,
                k: d.k,
                alpha: Some(alpha),
                beta: Some(alpha.add(d.parity_shift)),
                fiber: fiber_label(n, Fiber::Poly(d.k)),
                lambda: Some(Param::Value(d.lambda.clone())),
                nu: Some(Param::Value(d.nu.clone())),
                s: None,
                r: None,
                hom_dim: d.hom_dim,
                operator: Some(d.operator.clone()),
                verma: None,
            });
        }
    }
    for d in &found {
        for alpha in Parity::BOTH {
            out.push(ClassificationRecord {
                family: Family::LambdaGP,
                n,
                k: d.k,
                alpha: Some(alpha),
                beta: Some(alpha.add(d.parity_shift)),
                fiber: fiber_label(n, Fiber::Sym(d.k)),
                lambda: None,
                nu: None,
                s: Some(Param::Value(-d.lambda.clone())),
                r: Some(Param::Value(-d.nu.clone())),
                hom_dim: d.hom_dim,
                operator: None,
                verma: Some(d.verma.clone()),
            });
        }
    }
    for d in &found {
        out.push(ClassificationRecord {
            family: Family::LambdaLie,
            n,
            k: d.k,
            alpha: None,
            beta: None,
            fiber: fiber_label(n, Fiber::Sym(d.k)),
            lambda: None,
            nu: None,
            s: Some(Param::Value(-d.lambda.clone())),
            r: Some(Param::Value(-d.nu.clone())),
            hom_dim: d.hom_dim,
            operator: None,
            verma: Some(d.verma.clone()),
        });
    }
    Ok(out)
}

/// Lowest degree bound scanned by [`reducibility`].
pub const REDUCIBILITY_SCAN: u32 = 6;

/// Outcome of the reducibility test for `M_p(triv, s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reducibility {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub s: Rational,
    pub reducible: bool,
    /// Smallest degree `k ≥ 1` with a nonzero map into `M_p(triv, s)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_hom_dim: Option<usize>,
    /// Every degree `1..=scanned_up_to` was solved exactly at `λ = -s`.
    pub scanned_up_to: u32,
}

/// `M_p(triv, s)` is reducible iff `Sol^k` is nonzero at `λ = -s` for some
/// `k ≥ 1`. Degrees up to `max(REDUCIBILITY_SCAN, s + 1)` are solved
/// exactly; higher degrees are covered by the generic rank computation,
/// whose only exceptional value in degree `k` is `λ = 1 - k`.
pub fn reducibility(n: usize, s: &Rational) -> Result<Reducibility> {
    let lambda = -s.clone();
    let mut bound = REDUCIBILITY_SCAN;
    if is_nonneg_integer(s) {
        let predicted: u32 = (s + Rational::from_integer(1.into()))
            .to_integer()
            .try_into()
            .map_err(|_| Error::Unsupported(format!("s = {s} is too large")))?;
        bound = bound.max(predicted);
    }
    let fs = assemble_fsystem::<Rational>(n, &Param::Value(lambda))?;
    let mut out = Reducibility {
        n,
        s: s.clone(),
        reducible: false,
        witness_k: None,
        witness_hom_dim: None,
        scanned_up_to: bound,
    };
    for k in 1..=bound {
        let sol = solve_at(&fs, k)?;
        if sol.hom_dimension > 0 {
            out.reducible = true;
            out.witness_k = Some(k);
            out.witness_hom_dim = Some(sol.hom_dimension);
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmethod::operators::{d_k, phi_k};
    use crate::rational::{int, rat};

    fn rows(n: usize, kmax: u32, family: Family, alpha: Option<Parity>) -> Vec<ClassificationRecord> {
        classify(n, kmax)
            .unwrap()
            .into_iter()
            .filter(|r| r.family == family && (alpha.is_none() || r.alpha == alpha))
            .collect()
    }

    #[test]
    fn lambda_g_for_n3() {
        let g = rows(3, 2, Family::LambdaG, Some(Parity::Plus));
        assert_eq!(g.len(), 2);
        for (r, k) in g.iter().zip(1..) {
            assert_eq!(r.k, k);
            assert_eq!(r.beta, Some(Parity::Plus.add(k)));
            assert_eq!(r.lambda, Some(Param::Value(int(1 - k as i64))));
            assert_eq!(r.nu, Some(Param::Value(int(1) + rat(k as i64, 2))));
            assert_eq!(r.fiber, format!("poly^{k}_2"));
            assert_eq!(r.hom_dim, 1);
            assert_eq!(r.operator.as_ref(), Some(&d_k(3, k)));
        }
    }

    #[test]
    fn verma_side_parameters() {
        for r in rows(4, 3, Family::LambdaGP, None) {
            let k = r.k as i64;
            assert_eq!(r.s, Some(Param::Value(int(k - 1))));
            assert_eq!(r.r, Some(Param::Value(-(int(1) + rat(k, 3)))));
            assert_eq!(r.fiber, format!("sym^{k}_3"));
            assert_eq!(r.verma.as_ref(), Some(&phi_k(4, r.k)));
        }
        assert_eq!(rows(4, 3, Family::LambdaLie, None).len(), 3);
    }

    #[test]
    fn n2_labels_are_trivial() {
        for r in classify(2, 3).unwrap() {
            assert_eq!(r.fiber, "triv");
        }
    }

    #[test]
    fn kmax_zero_gives_identity_only() {
        let all = classify(3, 0).unwrap();
        assert!(all.iter().all(|r| r.family == Family::Identity));
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn reducibility_examples() {
        let r = reducibility(4, &int(2)).unwrap();
        assert!(r.reducible);
        assert_eq!(r.witness_k, Some(3));
        assert!(!reducibility(4, &int(-1)).unwrap().reducible);
        assert!(!reducibility(3, &rat(1, 2)).unwrap().reducible);
    }

    #[test]
    fn json_round_trip() {
        for r in classify(3, 2).unwrap() {
            let s = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<ClassificationRecord>(&s).unwrap(), r);
        }
    }
}
