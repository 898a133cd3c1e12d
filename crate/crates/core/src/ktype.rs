//! K-types of `I(triv, λ)^α` for `K = SO(n)`, in terms of spherical
//! harmonics `H^m(R^n)`. Only `n ≥ 3` is modelled.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmethod::operators::d_k;
use crate::lambda::Param;
use crate::linalg::{rational_rank, SparseRow};
use crate::multi_index::{monomials_up_to, MultiIndex};
use crate::poly::{Polynomial, VarSpace};
use crate::principal::{dpi, BundleParams, Fiber};
use crate::rational::{binomial, int, Rational};
use crate::sl::{ParabolicData, Parity};
use crate::vector_poly::VectorPolynomial;

/// `dim H^m(R^n) = C(n+m-1, m) - C(n+m-3, m-2)`.
pub fn harmonic_dim(n: usize, m: u32) -> u64 {
    let (n, m) = (n as u64, m as u64);
    let all = binomial(n + m - 1, m);
    if m < 2 {
        all
    } else {
        all - binomial(n + m - 3, m - 2)
    }
}

/// Parity of a harmonic degree: `α = (-1)^m`.
fn degree_of(parity: Parity, l: u32) -> u32 {
    2 * l + u32::from(parity == Parity::Minus)
}

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "K-type formulas require n >= 3 (got n = {n})"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeTerm {
    pub m: u32,
    pub dim: u64,
}

/// A sum of `H^m(R^n)` over degrees `m = 2ℓ` (`α = +`) or `m = 2ℓ + 1`
/// (`α = -`). Infinite sums are kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KTypeFormula {
    /// `⊕_{ℓ=0}^{last}`; `last = None` is the zero module.
    Finite {
        n: usize,
        parity: Parity,
        last: Option<u32>,
    },
    /// `⊕_{ℓ ≥ start}`.
    Tail { n: usize, parity: Parity, start: u32 },
    /// `⊕_{ℓ ≥ 0}`, the whole induced representation.
    Full { n: usize, parity: Parity },
}

impl KTypeFormula {
    pub fn zero(n: usize, parity: Parity) -> Self {
        KTypeFormula::Finite { n, parity, last: None }
    }

    pub fn parity(&self) -> Parity {
        match self {
            KTypeFormula::Finite { parity, .. }
            | KTypeFormula::Tail { parity, .. }
            | KTypeFormula::Full { parity, .. } => *parity,
        }
    }

    fn n(&self) -> usize {
        match self {
            KTypeFormula::Finite { n, .. } | KTypeFormula::Tail { n, .. } | KTypeFormula::Full { n, .. } => *n,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, KTypeFormula::Finite { last: None, .. })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KTypeFormula::Finite { .. })
    }

    fn l_range(&self) -> (u32, Option<u32>) {
        match self {
            KTypeFormula::Finite { last: None, .. } => (1, Some(0)),
            KTypeFormula::Finite { last: Some(l), .. } => (0, Some(*l)),
            KTypeFormula::Tail { start, .. } => (*start, None),
            KTypeFormula::Full { .. } => (0, None),
        }
    }

    /// Terms with `m ≤ max_m`.
    pub fn terms_up_to(&self, max_m: u32) -> Vec<KTypeTerm> {
        let (lo, hi) = self.l_range();
        let parity = self.parity();
        let n = self.n();
        (lo..)
            .take_while(|l| hi.is_none_or(|h| *l <= h))
            .map(|l| degree_of(parity, l))
            .take_while(|m| *m <= max_m)
            .map(|m| KTypeTerm {
                m,
                dim: harmonic_dim(n, m),
            })
            .collect()
    }

    /// All terms of a finite formula.
    pub fn terms(&self) -> Option<Vec<KTypeTerm>> {
        match self {
            KTypeFormula::Finite { last, parity, .. } => {
                Some(self.terms_up_to(last.map_or(0, |l| degree_of(*parity, l))))
            }
            _ => None,
        }
    }

    pub fn total_dim(&self) -> Option<u64> {
        self.terms().map(|t| t.iter().map(|t| t.dim).sum())
    }

    pub fn contains(&self, m: u32) -> bool {
        if Parity::of_power(m as i64) != self.parity() {
            return false;
        }
        let l = m / 2;
        let (lo, hi) = self.l_range();
        l >= lo && hi.is_none_or(|h| l <= h)
    }
}

impl fmt::Display for KTypeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let odd = if self.parity() == Parity::Minus { "+1" } else { "" };
        match self {
            KTypeFormula::Finite { last: None, .. } => write!(f, "0"),
            KTypeFormula::Finite { .. } => {
                let terms = self.terms().unwrap_or_default();
                let parts: Vec<String> = terms.iter().map(|t| format!("H^{}[{}]", t.m, t.dim)).collect();
                write!(f, "{}", parts.join(" + "))
            }
            KTypeFormula::Tail { start, .. } => write!(f, "sum_{{l >= {start}}} H^{{2l{odd}}}"),
            KTypeFormula::Full { .. } => write!(f, "sum_{{l >= 0}} H^{{2l{odd}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReducibleCase {
    /// `λ = -m`: finite-dimensional subrepresentation `F(-m)`.
    A,
    /// `λ = n + m`: infinite-dimensional subrepresentation `T(n+m)`.
    B,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
    pub alpha: Parity,
    pub irreducible: bool,
    pub case: Option<ReducibleCase>,
    pub sub: KTypeFormula,
    pub quotient: KTypeFormula,
}

/// `F(-m)^α`.
pub fn finite_constituent(n: usize, m: u32, alpha: Parity) -> KTypeFormula {
    let last = match alpha {
        Parity::Plus => Some(m / 2),
        Parity::Minus => (m >= 1).then(|| (m - 1) / 2),
    };
    KTypeFormula::Finite { n, parity: alpha, last }
}

/// `T(n+m)^α`.
pub fn tail_constituent(n: usize, m: u32, alpha: Parity) -> KTypeFormula {
    let start = match alpha {
        Parity::Plus => (m + 2) / 2,
        Parity::Minus => m.div_ceil(2),
    };
    KTypeFormula::Tail {
        n,
        parity: alpha,
        start,
    }
}

fn as_int(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

/// Irreducibility and composition factors of `I(triv, λ)^α`.
pub fn composition_series(n: usize, lambda: &Rational, alpha: Parity) -> Result<CompositionReport> {
    require_n(n)?;
    let mut report = CompositionReport {
        n,
        lambda: lambda.clone(),
        alpha,
        irreducible: true,
        case: None,
        sub: KTypeFormula::Full { n, parity: alpha },
        quotient: KTypeFormula::zero(n, alpha),
    };
    let Some(l) = as_int(lambda) else {
        return Ok(report);
    };
    if l <= 0 && alpha == Parity::of_power(l) {
        let m = (-l) as u32;
        report.irreducible = false;
        report.case = Some(ReducibleCase::A);
        report.sub = finite_constituent(n, m, alpha);
        report.quotient = tail_constituent(n, m, alpha);
    } else if l >= n as i64 && alpha == Parity::of_power(l + n as i64) {
        let m = (l - n as i64) as u32;
        report.irreducible = false;
        report.case = Some(ReducibleCase::B);
        report.sub = tail_constituent(n, m, alpha);
        report.quotient = finite_constituent(n, m, alpha);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelImage {
    pub n: usize,
    pub k: u32,
    pub alpha: Parity,
    pub ker: KTypeFormula,
    pub im: KTypeFormula,
}

/// K-types of `Ker(D_k)^α` and `Im(D_k)^α`.
pub fn kernel_image_ktypes(n: usize, k: u32, alpha: Parity) -> Result<KernelImage> {
    require_n(n)?;
    let (ker, im) = if k >= 1 && alpha == Parity::of_power(1 - k as i64) {
        (finite_constituent(n, k - 1, alpha), tail_constituent(n, k - 1, alpha))
    } else {
        (KTypeFormula::zero(n, alpha), KTypeFormula::Full { n, parity: alpha })
    };
    Ok(KernelImage { n, k, alpha, ker, im })
}

/// Exact checks of the polynomial model `Ker(D_k) = C_{≤k-1}[x]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteModelReport {
    pub n: usize,
    pub k: u32,
    pub max_deg: u32,
    /// `dim Ker(D_k) ∩ C_{≤max_deg}[x]`.
    pub kernel_dim: usize,
    /// `dim C_{≤k-1}[x]`.
    pub expected_dim: usize,
    pub kernel_ok: bool,
    pub invariant_ok: bool,
    /// Total dimension of the finite K-type formula (`n ≥ 3` only).
    pub ktype_dim: Option<u64>,
    pub dim_ok: bool,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub fn finite_model_check(n: usize, k: u32, max_deg: u32) -> Result<FiniteModelReport> {
    if k == 0 {
        return Err(Error::Unsupported("finite model check requires k >= 1".into()));
    }
    let pd = ParabolicData::new(n)?;
    let nv = n - 1;
    let d = d_k(n, k).to_pd_operator();
    let monos = monomials_up_to(nv, max_deg);
    let mut failure = None;

    // (a) kernel of D_k on C_{≤max_deg}[x]
    let mut rows: std::collections::BTreeMap<(MultiIndex, MultiIndex), SparseRow<Rational>> = Default::default();
    let mut low_annihilated = true;
    for (c, m) in monos.iter().enumerate() {
        let mut f = VectorPolynomial::new(0);
        f.insert(
            MultiIndex::zeros(nv),
            Polynomial::monomial(VarSpace::X, m.clone(), int(1)),
        )?;
        let image = d.apply(&f)?;
        if m.degree() < k && !image.is_zero() {
            low_annihilated = false;
            failure.get_or_insert_with(|| format!("D_k does not annihilate x^{m}"));
        }
        for (label, p) in image.components() {
            for (mono, v) in p.terms() {
                rows.entry((label.clone(), mono.clone()))
                    .or_default()
                    .insert(c, v.clone());
            }
        }
    }
    let rows: Vec<_> = rows.into_values().collect();
    let kernel_dim = monos.len() - rational_rank(&rows, monos.len());
    let expected_dim = monomials_up_to(nv, (k - 1).min(max_deg)).len();
    let kernel_ok = low_annihilated && kernel_dim == expected_dim;
    if !kernel_ok {
        failure.get_or_insert_with(|| format!("kernel dimension {kernel_dim}, expected {expected_dim}"));
    }

    // (b) C_{≤k-1}[x] is stable under dπ_{1-k}
    let params = BundleParams::new(n, Fiber::Trivial, Parity::Plus, Param::Value(int(1 - k as i64)));
    let mut invariant_ok = true;
    'outer: for be in pd.basis() {
        let op = dpi::<Rational>(&be.matrix, &params)?;
        for m in monomials_up_to(nv, k - 1) {
            let mut f = VectorPolynomial::new(0);
            f.insert(
                MultiIndex::zeros(nv),
                Polynomial::monomial(VarSpace::X, m.clone(), int(1)),
            )?;
            let out = op.apply(&f)?;
            if out.components().values().any(|p| p.degree().is_some_and(|d| d >= k)) {
                invariant_ok = false;
                failure.get_or_insert_with(|| format!("dπ({}) raises x^{m} above degree {}", be.label, k - 1));
                break 'outer;
            }
        }
    }

    // (c) dimension count against the K-type formula
    let (ktype_dim, dim_ok) = if n >= 3 {
        let alpha = Parity::of_power(1 - k as i64);
        let total = kernel_image_ktypes(n, k, alpha)?.ker.total_dim();
        let closed = binomial(k as u64 - 1 + nv as u64, nv as u64);
        let ok = total == Some(closed) && closed == monomials_up_to(nv, k - 1).len() as u64;
        if !ok {
            failure.get_or_insert_with(|| format!("K-type dimension {total:?} vs dim C_<=k-1 = {closed}"));
        }
        (total, ok)
    } else {
        (None, true)
    };

    Ok(FiniteModelReport {
        n,
        k,
        max_deg,
        kernel_dim,
        expected_dim,
        kernel_ok,
        invariant_ok,
        ktype_dim,
        dim_ok,
        passed: kernel_ok && invariant_ok && dim_ok,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::monomial_basis;
    use crate::rational::rat;

    // dim ker(Δ: Pol^m(R^n) → Pol^{m-2}(R^n)) by exact elimination
    fn laplacian_kernel_dim(n: usize, m: u32) -> u64 {
        let cols = monomial_basis(n, m);
        if m < 2 {
            return cols.len() as u64;
        }
        let index: std::collections::BTreeMap<_, _> = monomial_basis(n, m - 2)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut rows = vec![SparseRow::new(); index.len()];
        for (c, mono) in cols.iter().enumerate() {
            let p = Polynomial::monomial(VarSpace::X, mono.clone(), int(1));
            for i in 0..n {
                for (t, v) in p.diff(i, 2).unwrap().terms() {
                    *rows[index[t]].entry(c).or_insert_with(|| int(0)) += v;
                }
            }
        }
        (cols.len() - rational_rank(&rows, cols.len())) as u64
    }

    #[test]
    fn harmonic_dim_matches_laplacian() {
        for n in 2..=5 {
            for m in 0..=6 {
                assert_eq!(harmonic_dim(n, m), laplacian_kernel_dim(n, m), "n={n} m={m}");
            }
        }
        assert_eq!(harmonic_dim(3, 2), 5);
        assert_eq!(harmonic_dim(4, 1), 4);
    }

    #[test]
    fn composition_examples() {
        let r = composition_series(3, &int(-2), Parity::Plus).unwrap();
        assert_eq!(r.case, Some(ReducibleCase::A));
        assert_eq!(
            r.sub.terms().unwrap(),
            vec![KTypeTerm { m: 0, dim: 1 }, KTypeTerm { m: 2, dim: 5 }]
        );
        assert!(composition_series(3, &rat(1, 2), Parity::Minus).unwrap().irreducible);
        assert!(composition_series(3, &int(-2), Parity::Minus).unwrap().irreducible);
        let r = composition_series(3, &int(3), Parity::Plus).unwrap();
        assert_eq!(r.case, Some(ReducibleCase::B));
        assert!(!r.sub.is_finite() && r.quotient.is_finite());
        assert!(matches!(
            composition_series(2, &int(0), Parity::Plus),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn constituents_tile_the_series() {
        for n in 3..=5 {
            for l in -6i64..=12 {
                for alpha in Parity::BOTH {
                    let r = composition_series(n, &int(l), alpha).unwrap();
                    for m in 0..=20 {
                        let inside = Parity::of_power(m as i64) == alpha;
                        let count = u32::from(r.sub.contains(m)) + u32::from(r.quotient.contains(m));
                        assert_eq!(count, u32::from(inside), "n={n} λ={l} {alpha} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_image_table() {
        let t = kernel_image_ktypes(3, 3, Parity::Plus).unwrap();
        assert_eq!(t.ker.total_dim(), Some(6));
        assert_eq!(
            t.im,
            KTypeFormula::Tail {
                n: 3,
                parity: Parity::Plus,
                start: 2
            }
        );
        let t = kernel_image_ktypes(3, 2, Parity::Plus).unwrap();
        assert!(t.ker.is_zero());
        assert_eq!(
            t.im,
            KTypeFormula::Full {
                n: 3,
                parity: Parity::Plus
            }
        );
        let t = kernel_image_ktypes(4, 2, Parity::Minus).unwrap();
        assert_eq!(t.ker.terms().unwrap(), vec![KTypeTerm { m: 1, dim: 4 }]);
        assert_eq!(
            t.im,
            KTypeFormula::Tail {
                n: 4,
                parity: Parity::Minus,
                start: 1
            }
        );
        let t = kernel_image_ktypes(4, 0, Parity::Minus).unwrap();
        assert!(t.ker.is_zero());
    }

    #[test]
    fn finite_model() {
        for (n, k) in [(3, 1), (3, 3), (4, 2), (2, 2)] {
            let r = finite_model_check(n, k, k + 2).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert_eq!(finite_model_check(3, 3, 5).unwrap().ktype_dim, Some(6));
    }

    #[test]
    fn formula_json_round_trip() {
        let f = tail_constituent(4, 3, Parity::Minus);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<KTypeFormula>(&s).unwrap(), f);
    }
}
