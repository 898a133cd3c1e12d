//! Acceptance criteria 1 through 8. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use fmk_core::fmethod::equivariance::equivariance_residual;
use fmk_core::fmethod::{
    d_k, dk_bundles, fc, impose_equivariance, nu_shift_formula, phi_k, psi_k, reducibility, solve_at,
};
use fmk_core::ktype::kernel_image_ktypes;
use fmk_core::rational::{int, rat};
use fmk_core::standard::{standardness_row, RootSystemA};
use fmk_core::{
    assemble_fsystem, finite_model_check, harmonic_dim, mu_eta_weights, solve_degree, verify_intertwining,
    BundleParams, Coeff, LambdaPoly, MultiIndex, Param, Parity, Polynomial, Rational, VarSpace, Weight, WeylElement,
};
use num::{Signed, Zero};
use proptest::test_runner::TestRunner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// Exponent vectors of total degree `d` in `nv` variables, by brute force.
fn exponents(nv: usize, d: u32) -> Vec<Vec<u32>> {
    if nv == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=d)
        .flat_map(|a| {
            exponents(nv - 1, d - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn count_up_to(nv: usize, d: u32) -> usize {
    (0..=d).map(|e| exponents(nv, e).len()).sum()
}

fn random_lambda(rng: &mut ChaCha8Rng, avoid: &Rational) -> Rational {
    loop {
        let l = rat(rng.gen_range(-40..=40), rng.gen_range(1..=7));
        if &l != avoid {
            return l;
        }
    }
}

fn mono(space: VarSpace, e: &[u32]) -> Polynomial {
    Polynomial::monomial(space, MultiIndex::new(e.to_vec()), int(1))
}

/// Rank over Q by plain Gaussian elimination on dense rows.
fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !Zero::is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !Zero::is_zero(&row[c]) {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= y * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim ker(Δ : Pol^m(R^n) → Pol^{m-2}(R^n))`.
fn laplacian_kernel_dim(n: usize, m: u32) -> usize {
    let cols = exponents(n, m);
    if m < 2 {
        return cols.len();
    }
    let targets = exponents(n, m - 2);
    let index: BTreeMap<_, _> = targets.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut rows = vec![vec![<Rational as Zero>::zero(); cols.len()]; targets.len()];
    for (c, e) in cols.iter().enumerate() {
        for i in 0..n {
            if e[i] >= 2 {
                let mut t = e.clone();
                t[i] -= 2;
                rows[index[&t]][c] += int((e[i] * (e[i] - 1)) as i64);
            }
        }
    }
    cols.len() - dense_rank(rows)
}

fn c1_dichotomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut random_cases = 0;
    for n in 2..=6 {
        let fs = assemble_fsystem::<LambdaPoly>(n, &Param::Generic).map_err(|e| e.to_string())?;
        for k in 1..=6u32 {
            let crit = int(1 - k as i64);
            let pol_dim = exponents(n - 1, k).len();
            let sol = solve_degree(&fs, k).map_err(|e| e.to_string())?;
            ensure!(sol.kernel_dim == 0, "n={n} k={k}: generic kernel {}", sol.kernel_dim);
            ensure!(
                sol.exceptional.len() == 1 && sol.exceptional[0].lambda == crit,
                "n={n} k={k}: exceptional values {:?}",
                sol.exceptional.iter().map(|e| e.lambda.to_string()).collect::<Vec<_>>()
            );
            let e = &sol.exceptional[0];
            ensure!(
                e.kernel_dim == pol_dim && e.hom_dimension == 1,
                "n={n} k={k}: kernel {} (want {pol_dim}), homDim {}",
                e.kernel_dim,
                e.hom_dimension
            );
            let at = solve_at(&fs.specialize(&crit), k).map_err(|e| e.to_string())?;
            ensure!(
                at.kernel_dim == pol_dim && at.hom_dimension == 1,
                "n={n} k={k}: direct solve at 1-k"
            );
            for _ in 0..20 {
                let l = random_lambda(&mut rng, &crit);
                let s = solve_at(&fs.specialize(&l), k).map_err(|e| e.to_string())?;
                ensure!(s.kernel_dim == 0, "n={n} k={k} lambda={l}: kernel {}", s.kernel_dim);
                random_cases += 1;
            }
        }
    }
    Ok(format!("30 (n,k) cells, {random_cases} random lambda"))
}

fn c2_intertwining() -> Outcome {
    let mut cells = 0;
    for n in 2..=4 {
        for k in 0..=4u32 {
            for alpha in [Parity::Plus, Parity::Minus] {
                let d = d_k(n, k).to_pd_operator();
                let (src, dst) = dk_bundles(n, k, alpha);
                let r = verify_intertwining(&d, &src, &dst, k + 3).map_err(|e| e.to_string())?;
                ensure!(r.passed, "n={n} k={k} alpha={alpha}: witness {:?}", r.witness);
                ensure!(
                    r.elements_checked == n * n - 1,
                    "n={n}: {} basis elements",
                    r.elements_checked
                );
                ensure!(
                    r.inputs_checked == (n * n - 1) * count_up_to(n - 1, k + 3),
                    "n={n} k={k}: {} inputs",
                    r.inputs_checked
                );
                let shifted = BundleParams::new(n, src.fiber, alpha, Param::Value(int(2 - k as i64)));
                let bad = verify_intertwining(&d, &shifted, &dst, k + 3).map_err(|e| e.to_string())?;
                ensure!(
                    !bad.passed && bad.witness.is_some(),
                    "n={n} k={k}: perturbed lambda passed"
                );
                cells += 1;
            }
        }
    }
    Ok(format!(
        "{cells} cells pass, every lambda+1 perturbation yields a witness"
    ))
}

fn c3_fourier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0003);
    let mut checks = 0;
    for n in 2..=6 {
        let nv = n - 1;
        let fs = assemble_fsystem::<LambdaPoly>(n, &Param::Generic).map_err(|e| e.to_string())?;
        let lam = LambdaPoly::symbol();
        let shift = WeylElement::scalar(VarSpace::Zeta, nv, lam.minus(&LambdaPoly::from_int(1)));
        let euler = WeylElement::euler(VarSpace::Zeta, nv);
        for (j, op) in fs.operators.iter().enumerate() {
            let lhs = (&WeylElement::mult(VarSpace::Zeta, nv, j) * op).scale(&LambdaPoly::constant(int(-1)));
            let rhs = &WeylElement::theta(VarSpace::Zeta, nv, j) * &(&shift + &euler);
            ensure!(lhs == rhs, "n={n} j={}: structural identity", j + 1);
            checks += 1;
        }
        for _ in 0..40 {
            let l = rat(rng.gen_range(-30..=30), rng.gen_range(1..=5));
            let sp = fs.specialize(&l);
            let k = rng.gen_range(0..=5u32);
            for e in exponents(nv, k) {
                let p = mono(VarSpace::Zeta, &e);
                for (j, op) in sp.operators.iter().enumerate() {
                    let got = (&WeylElement::mult(VarSpace::Zeta, nv, j) * op)
                        .apply(&p)
                        .map_err(|e| e.to_string())?;
                    // (λ - 1 + k) θ_j ζ^e = (λ - 1 + k) e_j ζ^e
                    let want = p.scale(&(-(&l - int(1) + int(k as i64)) * int(e[j] as i64)));
                    ensure!(got == want, "n={n} lambda={l} e={e:?} j={}", j + 1);
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} exact identities"))
}

fn c4_verma() -> Outcome {
    let mut cells = 0;
    for n in 2..=5 {
        let nv = n - 1;
        for k in 1..=5u32 {
            let lambda = int(1 - k as i64);
            let fs = assemble_fsystem::<Rational>(n, &Param::Value(lambda.clone())).map_err(|e| e.to_string())?;
            let psi = psi_k(n, k);
            for (label, p) in psi.components() {
                ensure!(
                    fs.annihilates(p).map_err(|e| e.to_string())?,
                    "n={n} k={k}: op_j psi[{label}] != 0"
                );
            }
            let residual = equivariance_residual(n, &psi).map_err(|e| e.to_string())?;
            ensure!(
                residual.is_empty(),
                "n={n} k={k}: m-residual at {:?}",
                residual.first().map(|r| &r.0)
            );
            let kernel: Vec<Polynomial> = exponents(nv, k).iter().map(|e| mono(VarSpace::Zeta, e)).collect();
            let eq = impose_equivariance(&kernel, n, k).map_err(|e| e.to_string())?;
            ensure!(eq.hom_dimension() == 1, "n={n} k={k}: homDim {}", eq.hom_dimension());
            let want_shift = rat(n as i64 * k as i64, n as i64 - 1);
            ensure!(
                eq.nu_shift == want_shift && nu_shift_formula(n, k) == want_shift,
                "n={n} k={k}: nu - lambda"
            );
            for alpha in [Parity::Plus, Parity::Minus] {
                let (_, dst) = dk_bundles(n, k, alpha);
                let nu = dst.lambda.value().cloned().ok_or("generic target")?;
                ensure!(
                    eq.admits(&lambda, &nu, alpha, dst.alpha) && dst.alpha == alpha.add(k),
                    "n={n} k={k}: (beta, nu) not admitted"
                );
                ensure!(
                    !eq.admits(&lambda, &nu, alpha, dst.alpha.add(1)),
                    "n={n} k={k}: wrong beta admitted"
                );
            }
            let phi = phi_k(n, k);
            ensure!(
                phi.components.components().len() == exponents(nv, k).len(),
                "n={n} k={k}: phi size"
            );
            for e in exponents(nv, k) {
                let label = MultiIndex::new(e.clone());
                let img = phi
                    .image(&label)
                    .ok_or_else(|| format!("n={n} k={k}: missing {label}"))?;
                ensure!(*img == mono(VarSpace::NMinus, &e), "n={n} k={k}: phi[{label}] = {img}");
            }
            ensure!(
                fc(&phi).map_err(|e| e.to_string())? == psi,
                "n={n} k={k}: F_c(phi_k) != psi_k"
            );
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn c5_ktypes() -> Outcome {
    let mut cells = 0;
    for n in 3..=5 {
        let nv = n - 1;
        for k in 1..=6u32 {
            let r = finite_model_check(n, k, k + 3).map_err(|e| e.to_string())?;
            ensure!(r.passed, "n={n} k={k}: {:?}", r.failure);
            ensure!(
                r.kernel_dim == count_up_to(nv, k - 1),
                "n={n} k={k}: kernel dim {}",
                r.kernel_dim
            );
            let good = Parity::of_power(1 - k as i64);
            let ker = kernel_image_ktypes(n, k, good).map_err(|e| e.to_string())?.ker;
            ensure!(
                ker.total_dim() == Some(count_up_to(nv, k - 1) as u64),
                "n={n} k={k}: K-type sum {:?}",
                ker.total_dim()
            );
            let other = kernel_image_ktypes(n, k, good.add(1)).map_err(|e| e.to_string())?.ker;
            ensure!(other.is_zero(), "n={n} k={k}: kernel at the other parity is {other}");
            cells += 1;
        }
    }
    let mut harmonic = 0;
    for n in 2..=5 {
        for m in 0..=8 {
            let want = laplacian_kernel_dim(n, m) as u64;
            ensure!(
                harmonic_dim(n, m) == want,
                "harmonic_dim({n},{m}) = {} vs {want}",
                harmonic_dim(n, m)
            );
            harmonic += 1;
        }
    }
    Ok(format!("{cells} finite models, {harmonic} harmonic dimensions"))
}

fn c6_reducibility() -> Outcome {
    let mut scanned = 0;
    for n in [3, 4] {
        for twice in -6..=10i64 {
            let s = rat(twice, 2);
            let r = reducibility(n, &s).map_err(|e| e.to_string())?;
            let expect = s.is_integer() && !s.is_negative();
            ensure!(r.reducible == expect, "n={n} s={s}: reducible = {}", r.reducible);
            if expect {
                let want = (&s + int(1)).to_integer();
                ensure!(
                    r.witness_k.map(|k| k.into()) == Some(want),
                    "n={n} s={s}: witness {:?}",
                    r.witness_k
                );
            }
            scanned += 1;
        }
    }
    Ok(format!("{scanned} values of s"))
}

fn c7_standardness() -> Outcome {
    let mut rows = 0;
    for n in 3..=5 {
        let rs = RootSystemA::new(n).map_err(|e| e.to_string())?;
        let ni = n as i64;
        let d_chi: Weight = Weight::new(
            (0..n)
                .map(|i| if i == 0 { rat(ni - 1, ni) } else { rat(-1, ni) })
                .collect(),
        );
        let omega: Weight = Weight::new(
            (0..n)
                .map(|i| match i {
                    0 => int(0),
                    1 => rat(ni - 2, ni - 1),
                    _ => rat(-1, ni - 1),
                })
                .collect(),
        );
        let rho = Weight::new((0..n).map(|i| rat(ni - 1 - 2 * i as i64, 2)).collect());
        for k in 0..=5u32 {
            let ki = k as i64;
            let mu = omega
                .scale(&int(ki))
                .add(&d_chi.scale(&-(int(1) + rat(ki, ni - 1))))
                .add(&rho);
            let eta = d_chi.scale(&int(ki - 1)).add(&rho);
            let (mu_lib, eta_lib) = mu_eta_weights(n, k).map_err(|e| e.to_string())?;
            ensure!(
                mu_lib == mu.canonical() && eta_lib == eta.canonical(),
                "n={n} k={k}: weights"
            );
            let row = standardness_row(n, k, 3).map_err(|e| e.to_string())?;
            ensure!(row.verdict == "standard", "n={n} k={k}: verdict {}", row.verdict);
            if k == 0 {
                ensure!(row.identity_case, "n={n}: k=0 is not flagged as identity");
            } else {
                ensure!(
                    !row.identity_case && row.links.len() == 1,
                    "n={n} k={k}: {} links",
                    row.links.len()
                );
                let link = &row.links[0];
                ensure!(link.roots == ["e1-e2"], "n={n} k={k}: link {:?}", link.roots);
                let eta1 = link.first_step().ok_or("empty link")?;
                ensure!(*eta1 == row.mu && rs.is_l_dominant(eta1), "n={n} k={k}: eta_1 = {eta1}");
            }
            rows += 1;
        }
    }
    let (mu, eta) = mu_eta_weights(3, 1).map_err(|e| e.to_string())?;
    ensure!(eta == Weight::new(vec![int(1), int(0), int(-1)]), "eta^1 = {eta}");
    ensure!(mu == Weight::new(vec![int(0), int(1), int(-1)]), "mu^1 = {mu}");
    Ok(format!("{rows} rows standard"))
}

fn c8_properties() -> Outcome {
    use common::*;
    let mut suites = 0;
    let mut run = |seed: u64, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| -> Result<(), String> {
        let mut runner = TestRunner::new(config(seed));
        f(&mut runner)?;
        suites += 1;
        Ok(())
    };
    run(1, &|r| {
        r.run(&(polynomial(2), polynomial(2), polynomial(2)), |(a, b, c)| {
            ring_axioms(&a, &b, &c)
        })
        .map_err(|e| e.to_string())
    })?;
    run(2, &|r| {
        r.run(&(polynomial(3), polynomial(3), polynomial(3)), |(a, b, c)| {
            ring_axioms(&a, &b, &c)
        })
        .map_err(|e| e.to_string())
    })?;
    run(3, &|r| {
        r.run(&(weyl(2), weyl(2), polynomial(2)), |(a, b, p)| {
            weyl_homomorphism(&a, &b, &p)
        })
        .map_err(|e| e.to_string())
    })?;
    run(4, &|r| {
        r.run(&(weyl(2), weyl(2), weyl(2)), |(a, b, c)| weyl_associativity(&a, &b, &c))
            .map_err(|e| e.to_string())
    })?;
    run(5, &|r| {
        r.run(&(weyl(3), weyl(3)), |(a, b)| fourier_homomorphism(&a, &b))
            .map_err(|e| e.to_string())
    })?;
    run(6, &|r| {
        r.run(&(gmatrix(3), gmatrix(3), bundle(3)), |(x, y, p)| {
            dpi_bracket(&x, &y, &p)
        })
        .map_err(|e| e.to_string())
    })?;
    run(7, &|r| {
        r.run(&(gmatrix(4), gmatrix(4), bundle(4)), |(x, y, p)| {
            dpi_bracket(&x, &y, &p)
        })
        .map_err(|e| e.to_string())
    })?;
    run(8, &|r| {
        r.run(&(weight(4), weight(4), root(4)), |(m, n, b)| {
            reflection_laws(&m, &n, &b)
        })
        .map_err(|e| e.to_string())
    })?;
    Ok(format!("{suites} suites x {CASES} cases"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("F-system dichotomy", c1_dichotomy),
        ("operator correctness", c2_intertwining),
        ("Fourier identity", c3_fourier),
        ("Verma side", c4_verma),
        ("kernel and K-type identities", c5_ktypes),
        ("reducibility", c6_reducibility),
        ("standardness", c7_standardness),
        ("property suites", c8_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
