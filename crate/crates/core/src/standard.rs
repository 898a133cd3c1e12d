//! Standardness of `φ_k` via linkage sequences and Boe's criterion.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, is_nonneg_integer, rat, Rational};
use crate::sl::Weight;

pub const DEFAULT_LINK_DEPTH: usize = 3;

/// Type `A_{n-1}` with `Δ⁺ = {ε_i - ε_j : i < j}` and the Levi simple roots
/// `Π(l) = {ε_i - ε_{i+1} : i ≥ 2}` of the `(1, n-1)` parabolic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemA {
    pub n: usize,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    pub levi_simple_roots: Vec<Weight>,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("root system of sl({n})")));
        }
        let mut positive_roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                positive_roots.push(Weight::root(n, i, j));
            }
        }
        let simple_roots: Vec<Weight> = (1..n).map(|i| Weight::root(n, i, i + 1)).collect();
        let levi_simple_roots = simple_roots[1..].to_vec();
        Ok(RootSystemA {
            n,
            positive_roots,
            simple_roots,
            levi_simple_roots,
        })
    }

    /// `ρ = ½ Σ_{Δ⁺} α`.
    pub fn rho(&self) -> Weight {
        self.positive_roots
            .iter()
            .fold(Weight::zero(self.n), |acc, a| acc.add(a))
            .scale(&rat(1, 2))
    }

    /// `μ ∈ P⁺_l` iff `⟨μ, α^∨⟩ ∈ 1 + Z_{≥0}` for every `α ∈ Π(l)`.
    pub fn is_l_dominant(&self, mu: &Weight) -> bool {
        self.levi_simple_roots.iter().all(|a| {
            let p = mu.coroot_pairing(a);
            p >= int(1) && p.is_integer()
        })
    }

    /// Label such as `e1-e2` for a positive root.
    pub fn root_label(beta: &Weight) -> String {
        let i = beta.coords().iter().position(|c| *c == int(1)).unwrap_or(0);
        let j = beta.coords().iter().position(|c| *c == int(-1)).unwrap_or(0);
        format!("e{}-e{}", i + 1, j + 1)
    }
}

/// `dχ = (1/n)(n-1, -1, ..., -1)`.
pub fn d_chi(n: usize) -> Weight {
    let mut c = vec![rat(-1, n as i64); n];
    c[0] = rat(n as i64 - 1, n as i64);
    Weight::new(c)
}

/// `ω₁ = (1/(n-1))(0, n-2, -1, ..., -1)`.
pub fn omega_1(n: usize) -> Weight {
    let d = n as i64 - 1;
    let mut c = vec![rat(-1, d); n];
    c[0] = int(0);
    c[1] = rat(n as i64 - 2, d);
    Weight::new(c)
}

fn mu_eta_definitional(n: usize, k: u32) -> (Weight, Weight) {
    let rho = RootSystemA::new(n).expect("n >= 2").rho();
    let k = k as i64;
    let nu = int(1) + rat(k, n as i64 - 1);
    let mu = omega_1(n).scale(&int(k)).add(&d_chi(n).scale(&-nu)).add(&rho);
    let eta = d_chi(n).scale(&int(k - 1)).add(&rho);
    (mu, eta)
}

fn mu_eta_closed(n: usize, k: u32) -> (Weight, Weight) {
    let (ni, k) = (n as i64, k as i64);
    let den = 2 * ni;
    let lead = rat((ni - 1) * (ni - 2 + 2 * k), den);
    let rest = |i: i64| rat(2 * (1 - k) + ni * (ni - 2 * i + 1), den);
    let mut mu = vec![rest(2), lead.clone()];
    let mut eta = vec![lead, rest(2)];
    for i in 3..=ni {
        mu.push(rest(i));
        eta.push(rest(i));
    }
    (Weight::new(mu), Weight::new(eta))
}

/// `(μ^k, η^k)` with `μ^k = kω₁ - (1 + k/(n-1))dχ + ρ` and
/// `η^k = (k-1)dχ + ρ`, computed from the definition and from the
/// coordinate formulas, which must agree.
pub fn mu_eta_weights(n: usize, k: u32) -> Result<(Weight, Weight)> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "standardness requires n >= 3 (got n = {n})"
        )));
    }
    let (mu, eta) = mu_eta_definitional(n, k);
    let (mu_c, eta_c) = mu_eta_closed(n, k);
    if mu != mu_c || eta != eta_c {
        return Err(Error::Internal(format!(
            "weight formulas disagree at n = {n}, k = {k}: {mu} vs {mu_c}, {eta} vs {eta_c}"
        )));
    }
    Ok((mu.canonical(), eta.canonical()))
}

/// A sequence `(β₁, ..., β_t)` linking `η` to `μ`, with the weights
/// `η_i = s_{β_i} ⋯ s_{β₁} η`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkageSequence {
    pub roots: Vec<String>,
    pub weights: Vec<Weight>,
}

impl LinkageSequence {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `η₁`, absent for the empty sequence.
    pub fn first_step(&self) -> Option<&Weight> {
        self.weights.get(1)
    }
}

/// All sequences of length `≤ max_len` linking `η` to `μ`, by breadth-first
/// search. Sequences with the same weight path are reported once.
pub fn linkage_search(eta: &Weight, mu: &Weight, rs: &RootSystemA, max_len: usize) -> Vec<LinkageSequence> {
    let key = |w: &Weight| w.canonical().coords().to_vec();
    let target = key(mu);
    let mut seen_paths: BTreeSet<Vec<Vec<Rational>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back(LinkageSequence {
        roots: Vec::new(),
        weights: vec![eta.clone()],
    });
    while let Some(seq) = queue.pop_front() {
        let last = seq.weights.last().expect("path starts at η");
        if key(last) == target {
            let path: Vec<_> = seq.weights.iter().map(key).collect();
            if seen_paths.insert(path) {
                out.push(seq.clone());
            }
        }
        if seq.len() == max_len {
            continue;
        }
        for beta in &rs.positive_roots {
            if !is_nonneg_integer(&last.coroot_pairing(beta)) {
                continue;
            }
            let mut next = seq.clone();
            next.weights.push(last.reflect(beta).canonical());
            next.roots.push(RootSystemA::root_label(beta));
            queue.push_back(next);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoeResult {
    pub standard_nonzero: bool,
    /// Linking sequences whose `η₁` is not in `P⁺_l`.
    pub failures: Vec<LinkageSequence>,
}

/// Boe's criterion: the standard map `N_p(μ) → N_p(η)` is nonzero iff
/// `η₁ ∈ P⁺_l` for every sequence linking `η` to `μ`. A nonzero map of
/// full Verma modules is assumed.
pub fn boe_check(links: &[LinkageSequence], rs: &RootSystemA) -> BoeResult {
    let failures: Vec<_> = links
        .iter()
        .filter(|s| s.first_step().is_some_and(|w| !rs.is_l_dominant(w)))
        .cloned()
        .collect();
    BoeResult {
        standard_nonzero: failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardnessRow {
    pub n: usize,
    pub k: u32,
    pub mu: Weight,
    pub eta: Weight,
    pub mu_l_dominant: bool,
    pub eta_l_dominant: bool,
    pub same_orbit: bool,
    pub search_depth: usize,
    pub links: Vec<LinkageSequence>,
    pub identity_case: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<LinkageSequence>,
}

pub fn standardness_row(n: usize, k: u32, depth: usize) -> Result<StandardnessRow> {
    let rs = RootSystemA::new(n)?;
    let (mu, eta) = mu_eta_weights(n, k)?;
    let links = linkage_search(&eta, &mu, &rs, depth);
    let boe = boe_check(&links, &rs);
    let verdict = if boe.standard_nonzero {
        "standard"
    } else {
        "non-standard"
    };
    Ok(StandardnessRow {
        n,
        k,
        mu_l_dominant: rs.is_l_dominant(&mu),
        eta_l_dominant: rs.is_l_dominant(&eta),
        same_orbit: mu.same_orbit(&eta),
        identity_case: mu == eta,
        search_depth: depth,
        mu,
        eta,
        links,
        verdict: verdict.into(),
        failures: boe.failures,
    })
}

pub fn standardness_report(n: usize, kmax: u32, depth: usize) -> Result<Vec<StandardnessRow>> {
    (0..=kmax)
        .into_par_iter()
        .map(|k| standardness_row(n, k, depth))
        .collect()
}
