//! Strategies and law checks shared by the property and acceptance targets.
#![allow(dead_code)]

use fmk_core::rational::rat;
use fmk_core::{
    dpi, BundleParams, Fiber, GMatrix, MultiIndex, PDOperator, Param, Parity, Polynomial, Rational, VarSpace, Weight,
    WeylElement,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestCaseError};

pub const CASES: u32 = 256;

pub fn config(seed: u64) -> Config {
    Config {
        cases: CASES,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn multi_index(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max_deg, nvars)
        .prop_filter("bounded degree", move |e| e.iter().sum::<u32>() <= max_deg)
        .prop_map(MultiIndex::new)
}

pub fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((multi_index(nvars, 3), rational()), 0..5)
        .prop_map(move |terms| Polynomial::from_terms(VarSpace::X, nvars, terms))
}

pub fn weyl(nvars: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((multi_index(nvars, 2), multi_index(nvars, 2), rational()), 0..4).prop_map(move |terms| {
        let mut w = WeylElement::zero(VarSpace::X, nvars);
        for (m, d, c) in terms {
            w.add_term(m, d, c);
        }
        w
    })
}

/// A traceless `n × n` rational matrix.
pub fn gmatrix(n: usize) -> impl Strategy<Value = GMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |raw| {
        let mut entries: Vec<Rational> = raw.into_iter().map(|a| rat(a, 1)).collect();
        let trace: Rational = (0..n - 1).map(|i| entries[i * n + i].clone()).sum();
        entries[n * n - 1] = -trace;
        GMatrix::new(n, entries).unwrap()
    })
}

pub fn bundle(n: usize) -> impl Strategy<Value = BundleParams> {
    (0u32..=2, any::<bool>(), any::<bool>(), rational()).prop_map(move |(k, poly, twist, lambda)| {
        let fiber = match (k, poly) {
            (0, _) => Fiber::Trivial,
            (k, true) => Fiber::Poly(k),
            (k, false) => Fiber::Sym(k),
        };
        let b = BundleParams::new(n, fiber, Parity::Plus, Param::Value(lambda));
        if twist {
            b.twisted()
        } else {
            b
        }
    })
}

pub fn weight(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(rational(), n).prop_map(Weight::new)
}

/// A root `e_i - e_j`, either sign.
pub fn root(n: usize) -> impl Strategy<Value = Weight> {
    (1..=n, 1..=n)
        .prop_filter("distinct", |(i, j)| i != j)
        .prop_map(move |(i, j)| Weight::root(n, i, j))
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn ring_axioms(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<(), TestCaseError> {
    let zero = Polynomial::zero(VarSpace::X, a.nvars());
    let one = Polynomial::one(VarSpace::X, a.nvars());
    check(a + b == b + a, "addition commutes")?;
    check(a * b == b * a, "multiplication commutes")?;
    check(&(a + b) + c == a + &(b + c), "addition associates")?;
    check(&(a * b) * c == a * &(b * c), "multiplication associates")?;
    check(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    check(a + &zero == *a && a * &one == *a, "identities")?;
    check(
        (a + &-a.clone()).is_zero() && (a - b) + b.clone() == *a && (a * &zero).is_zero(),
        "inverses",
    )?;
    for i in 0..a.nvars() {
        let lhs = (a * b).diff(i, 1).unwrap();
        let rhs = &(&a.diff(i, 1).unwrap() * b) + &(a * &b.diff(i, 1).unwrap());
        check(lhs == rhs, "Leibniz rule")?;
    }
    Ok(())
}

pub fn weyl_homomorphism(a: &WeylElement, b: &WeylElement, p: &Polynomial) -> Result<(), TestCaseError> {
    let lhs = (a * b).apply(p).unwrap();
    let rhs = a.apply(&b.apply(p).unwrap()).unwrap();
    check(lhs == rhs, "(ab)p = a(bp)")?;
    let sum = (a + b).apply(p).unwrap();
    check(sum == &a.apply(p).unwrap() + &b.apply(p).unwrap(), "(a+b)p = ap + bp")
}

pub fn weyl_associativity(a: &WeylElement, b: &WeylElement, c: &WeylElement) -> Result<(), TestCaseError> {
    check(&(a * b) * c == a * &(b * c), "(ab)c = a(bc)")?;
    check(a * &(b + c) == &(a * b) + &(a * c), "a(b+c) = ab + ac")?;
    let jacobi = &(&a.bracket(&b.bracket(c).unwrap()).unwrap() + &b.bracket(&c.bracket(a).unwrap()).unwrap())
        + &c.bracket(&a.bracket(b).unwrap()).unwrap();
    check(jacobi.is_zero(), "Jacobi identity")
}

pub fn fourier_homomorphism(a: &WeylElement, b: &WeylElement) -> Result<(), TestCaseError> {
    let (az, bz) = (a.clone().with_space(VarSpace::Z), b.clone().with_space(VarSpace::Z));
    let lhs = (&az * &bz).fourier().unwrap();
    let rhs = &az.fourier().unwrap() * &bz.fourier().unwrap();
    check(lhs == rhs, "Fourier(ab) = Fourier(a) Fourier(b)")
}

pub fn dpi_bracket(x: &GMatrix, y: &GMatrix, params: &BundleParams) -> Result<(), TestCaseError> {
    let px: PDOperator = dpi(x, params).unwrap();
    let py: PDOperator = dpi(y, params).unwrap();
    let pxy: PDOperator = dpi(&x.bracket(y).unwrap(), params).unwrap();
    check(pxy == px.bracket(&py), "dpi([X,Y]) = [dpi X, dpi Y]")
}

pub fn reflection_laws(mu: &Weight, nu: &Weight, beta: &Weight) -> Result<(), TestCaseError> {
    check(mu.reflect(beta).reflect(beta) == *mu, "s_b^2 = 1")?;
    check(
        mu.reflect(beta).dot(&nu.reflect(beta)) == mu.dot(nu),
        "s_b is an isometry",
    )?;
    check(beta.reflect(beta) == beta.scale(&rat(-1, 1)), "s_b(b) = -b")?;
    check(mu.reflect(beta).same_orbit(mu), "reflections stay in the orbit")
}
