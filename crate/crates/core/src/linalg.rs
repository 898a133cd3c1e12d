//! Sparse fraction-free Gaussian elimination over `ℤ` and over `ℚ[λ]`.
//!
//! Rows are sparse maps from column to entry. Elimination only ever cancels
//! leading entries, so pivots appear in increasing column order and the
//! resulting basis is reproducible.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::lambda::LambdaPoly;
use crate::rational::{int, Coeff, Rational};

pub type SparseRow<R> = BTreeMap<usize, R>;

/// Integral domain with a gcd, as needed for fraction-free elimination.
pub trait EliminationRing: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, other: &Self) -> Self;
    /// Whether `self` is a unit (dividing by it loses no specialization).
    fn is_unit(&self) -> bool;
}

impl EliminationRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl EliminationRing for LambdaPoly {
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self.times(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.minus(other)
    }
    fn gcd(&self, other: &Self) -> Self {
        LambdaPoly::gcd(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.div_rem(other).0
    }
    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }
}

/// Row-echelon form built incrementally, one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon<R: EliminationRing> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<R>>,
    /// Non-unit factors divided out of rows during elimination.
    removed: Vec<R>,
}

impl<R: EliminationRing> Echelon<R> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            removed: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    pub fn pivot_rows(&self) -> &BTreeMap<usize, SparseRow<R>> {
        &self.pivots
    }

    pub fn removed_factors(&self) -> &[R] {
        &self.removed
    }

    /// Reduces `row` against the current pivots and keeps it if it is
    /// independent. Returns whether the rank grew.
    pub fn push(&mut self, mut row: SparseRow<R>) -> bool {
        row.retain(|_, v| !v.is_zero());
        self.strip_content(&mut row);
        loop {
            let Some((&lead, a)) = row.iter().next() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, row);
                return true;
            };
            let p = &pivot[&lead];
            let g = a.gcd(p);
            let row_mult = p.exact_div(&g);
            let piv_mult = a.exact_div(&g);
            let mut next = SparseRow::new();
            for (&c, v) in &row {
                if c != lead {
                    next.insert(c, v.mul(&row_mult));
                }
            }
            for (&c, v) in pivot {
                if c == lead {
                    continue;
                }
                let term = v.mul(&piv_mult);
                let entry = match next.remove(&c) {
                    Some(cur) => cur.sub(&term),
                    None => {
                        let zero = term.sub(&term);
                        zero.sub(&term)
                    }
                };
                if !entry.is_zero() {
                    next.insert(c, entry);
                }
            }
            row = next;
            self.strip_content(&mut row);
        }
    }

    fn strip_content(&mut self, row: &mut SparseRow<R>) {
        let mut iter = row.values();
        let Some(first) = iter.next() else {
            return;
        };
        let content = iter.fold(first.clone(), |g, v| g.gcd(v));
        if content.is_unit() || content.is_zero() {
            return;
        }
        for v in row.values_mut() {
            *v = v.exact_div(&content);
        }
        self.removed.push(content);
    }
}

fn clear_denominators(row: &SparseRow<Rational>) -> SparseRow<BigInt> {
    let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .filter(|(_, v)| !Zero::is_zero(*v))
        .map(|(&c, v)| (c, (v * Rational::from_integer(lcm.clone())).to_integer()))
        .collect()
}

pub fn rational_echelon(rows: &[SparseRow<Rational>], ncols: usize) -> Echelon<BigInt> {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.push(clear_denominators(r));
    }
    ech
}

pub fn rational_rank(rows: &[SparseRow<Rational>], ncols: usize) -> usize {
    rational_echelon(rows, ncols).rank()
}

/// Basis of `{ v : row · v = 0 for every row }`, one vector per free column,
/// normalized so that the free coordinate equals 1.
pub fn rational_nullspace(rows: &[SparseRow<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = rational_echelon(rows, ncols);
    nullspace_from_echelon(&ech)
}

pub fn nullspace_from_echelon(ech: &Echelon<BigInt>) -> Vec<Vec<Rational>> {
    let ncols = ech.ncols();
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![int(0); ncols];
            x[f] = int(1);
            for (&pc, row) in ech.pivots.iter().rev() {
                let mut acc = int(0);
                for (&c, v) in row.range(pc + 1..) {
                    if !Zero::is_zero(&x[c]) {
                        acc += &x[c] * Rational::from_integer(v.clone());
                    }
                }
                x[pc] = -acc / Rational::from_integer(row[&pc].clone());
            }
            x
        })
        .collect()
}

/// Rank of a `ℚ[λ]` matrix for generic `λ`, together with every rational
/// value of `λ` where the specialized rank is smaller.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaRank {
    pub ncols: usize,
    pub generic_rank: usize,
    /// `(λ₀, rank at λ₀)` for each value where the rank drops, sorted by `λ₀`.
    pub exceptional: Vec<(Rational, usize)>,
}

impl LambdaRank {
    pub fn generic_nullity(&self) -> usize {
        self.ncols - self.generic_rank
    }

    pub fn rank_at(&self, lambda: &Rational) -> usize {
        self.exceptional
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, r)| *r)
            .unwrap_or(self.generic_rank)
    }
}

pub fn specialize(rows: &[SparseRow<LambdaPoly>], at: &Rational) -> Vec<SparseRow<Rational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|(&c, p)| (c, p.eval(at)))
                .filter(|(_, v)| !Zero::is_zero(v))
                .collect()
        })
        .collect()
}

/// Generic rank over `ℚ(λ)` plus exceptional values.
///
/// Any `λ₀` where the rank drops is a root of a pivot's leading entry or of a
/// factor removed during elimination; each such rational root is confirmed by
/// an exact rank computation at `λ₀`.
pub fn lambda_rank(rows: &[SparseRow<LambdaPoly>], ncols: usize) -> LambdaRank {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.push(r.clone());
    }
    let generic_rank = ech.rank();
    let mut candidates: Vec<Rational> = Vec::new();
    let leads = ech.pivots.iter().map(|(c, row)| &row[c]);
    for p in leads.chain(ech.removed.iter()) {
        for root in p.rational_roots() {
            if !candidates.contains(&root) {
                candidates.push(root);
            }
        }
    }
    candidates.sort();
    let exceptional = candidates
        .into_iter()
        .filter_map(|l0| {
            let r = rational_rank(&specialize(rows, &l0), ncols);
            (r < generic_rank).then_some((l0, r))
        })
        .collect();
    LambdaRank {
        ncols,
        generic_rank,
        exceptional,
    }
}
