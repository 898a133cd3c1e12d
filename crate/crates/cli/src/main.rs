mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fmk_core::fmethod::operators::{d_k, dk_bundles, phi_k, psi_k, target_nu};
use fmk_core::ktype::{finite_model_check, kernel_image_ktypes, FiniteModelReport};
use fmk_core::principal::IntertwiningReport;
use fmk_core::rational::{format_rational, parse_rational};
use fmk_core::standard::{standardness_report, DEFAULT_LINK_DEPTH};
use fmk_core::{
    assemble_fsystem, classify, reducibility, verify_intertwining, ClassificationRecord, Error, Family, Param, Parity,
    Rational,
};

use table::Table;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fmk",
    version,
    about = "Intertwining operators for (SL(n,R), P(1,n-1)) by the F-method"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classification tables (identity row plus the requested family).
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: u32,
        /// `+`, `-` or `both`.
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        alpha: String,
        /// `G`, `gP`, `g` or `all`.
        #[arg(long, default_value = "G")]
        family: String,
        #[command(flatten)]
        output: Output,
    },
    /// Emit `D_k` and `φ_k`.
    BuildOperator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Check `D_k` against `dπ` and the F-system at the given `λ`.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Source parameter; defaults to `1 - k`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        alpha: String,
        /// Largest input degree; defaults to `k + 3`.
        #[arg(long)]
        max_deg: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// K-types of the kernel and image of `D_k`.
    Ktypes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "both", allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        output: Output,
    },
    /// Standardness of `φ_k` for `k ≤ kmax`.
    Standardness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: u32,
        #[arg(long, default_value_t = DEFAULT_LINK_DEPTH)]
        depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Reducibility of `M_p(triv, s)` for `s` in `a..b` (inclusive) or a single value.
    Reducibility {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1/2")]
        step: String,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::Parse(_) | Error::GenericParameter => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn parse_alphas(s: &str) -> std::result::Result<Vec<Parity>, Failure> {
    if s == "both" {
        return Ok(Parity::BOTH.to_vec());
    }
    s.parse::<Parity>()
        .map(|p| vec![p])
        .map_err(|_| Failure::Usage(format!("invalid --alpha {s:?} (use +, - or both)")))
}

fn parse_alpha(s: &str) -> std::result::Result<Parity, Failure> {
    s.parse::<Parity>()
        .map_err(|_| Failure::Usage(format!("invalid --alpha {s:?} (use + or -)")))
}

fn check_n(n: usize, min: usize) -> CmdResult {
    if n < min {
        let why = if min >= 3 {
            "unsupported: K-type and standardness results assume n >= 3"
        } else {
            "n must be at least 2"
        };
        return Err(Failure::Usage(format!("{why} (got n = {n})")));
    }
    Ok(())
}

fn emit(output: &Output, json: &impl Serialize, table: impl FnOnce() -> String) -> CmdResult {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(json).map_err(|e| Failure::Internal(e.to_string()))? + "\n",
        Format::Table => table(),
    };
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

fn param_text(p: &Option<Param>) -> String {
    p.as_ref().map_or_else(String::new, ToString::to_string)
}

fn parity_text(p: &Option<Parity>) -> String {
    p.map_or_else(String::new, |p| p.to_string())
}

fn cmd_classify(n: usize, kmax: u32, alpha: &str, family: &str, output: &Output) -> CmdResult {
    check_n(n, 2)?;
    let alphas = parse_alphas(alpha)?;
    let families: Vec<Family> = if family == "all" {
        Family::ALL.to_vec()
    } else {
        vec![Family::Identity, Family::parse(family)?]
    };
    let records: Vec<ClassificationRecord> = classify(n, kmax)?
        .into_iter()
        .filter(|r| families.contains(&r.family))
        .filter(|r| r.alpha.is_none_or(|a| alphas.contains(&a)))
        .collect();
    emit(output, &records, || {
        let mut t = Table::new(&[
            "family", "k", "alpha", "beta", "fiber", "lambda", "nu", "s", "r", "homDim", "map",
        ]);
        for r in &records {
            let map = match (&r.operator, &r.verma, r.family) {
                (Some(op), _, _) => op.display(),
                (_, Some(v), _) => v
                    .components
                    .components()
                    .iter()
                    .map(|(l, p)| format!("e{l} -> {p}"))
                    .collect::<Vec<_>>()
                    .join("; "),
                (_, _, Family::Identity) => "id".into(),
                _ => String::new(),
            };
            t.row(vec![
                r.family.to_string(),
                r.k.to_string(),
                parity_text(&r.alpha),
                parity_text(&r.beta),
                r.fiber.clone(),
                param_text(&r.lambda),
                param_text(&r.nu),
                param_text(&r.s),
                param_text(&r.r),
                r.hom_dim.to_string(),
                map,
            ]);
        }
        t.render()
    })
}

#[derive(Serialize)]
struct BuiltOperator {
    n: usize,
    k: u32,
    source: String,
    target: String,
    operator: fmk_core::DiffOperatorSpec,
    verma: fmk_core::VermaHomSpec,
}

fn cmd_build_operator(n: usize, k: u32, output: &Output) -> CmdResult {
    check_n(n, 2)?;
    let (src, dst) = dk_bundles(n, k, Parity::Plus);
    let built = BuiltOperator {
        n,
        k,
        source: format!("I(triv, {})^alpha", src.lambda),
        target: format!(
            "I({}, {})^(alpha+{k})",
            fmk_core::fmethod::fiber_label(n, dst.fiber),
            dst.lambda
        ),
        operator: d_k(n, k),
        verma: phi_k(n, k),
    };
    emit(output, &built, || {
        let mut s = format!("D_{k}: {} -> {}\n", built.source, built.target);
        s += &format!("  {}\n", built.operator.display());
        s += &format!("phi_{k}:\n");
        for (l, p) in built.verma.components.components() {
            s += &format!("  e{l} -> {p}\n");
        }
        s
    })
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    k: u32,
    lambda: String,
    nu: String,
    alpha: Parity,
    beta: Parity,
    max_deg: u32,
    passed: bool,
    intertwining: IntertwiningReport,
    /// Components of `op_j ψ_k` that do not vanish.
    fsystem_residuals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    finite_model: Option<FiniteModelReport>,
}

fn cmd_verify(n: usize, k: u32, lambda: Option<&str>, alpha: &str, max_deg: Option<u32>, output: &Output) -> CmdResult {
    check_n(n, 2)?;
    let alpha = parse_alpha(alpha)?;
    let (mut src, dst) = dk_bundles(n, k, alpha);
    if let Some(l) = lambda {
        let value = parse_rational(l)?;
        src.lambda = Param::Value(value);
    }
    let lam = src
        .lambda
        .value()
        .cloned()
        .ok_or(Failure::Usage("--lambda must be a number".into()))?;
    let max_deg = max_deg.unwrap_or(k + 3);
    let intertwining = verify_intertwining(&d_k(n, k).to_pd_operator(), &src, &dst, max_deg)?;
    let fs = assemble_fsystem::<Rational>(n, &src.lambda)?;
    let mut fsystem_residuals = Vec::new();
    for (label, p) in psi_k(n, k).components() {
        for (j, r) in fs.residuals(p)?.iter().enumerate() {
            if !r.is_zero() {
                fsystem_residuals.push(format!("op_{}(zeta^{label}) = {r}", j + 1));
            }
        }
    }
    let finite_model = if k >= 1 && lam == Rational::from_integer((1 - k as i64).into()) {
        Some(finite_model_check(n, k, max_deg)?)
    } else {
        None
    };
    let passed = intertwining.passed && fsystem_residuals.is_empty() && finite_model.as_ref().is_none_or(|f| f.passed);
    let report = VerifyReport {
        n,
        k,
        lambda: format_rational(&lam),
        nu: format_rational(&target_nu(n, k)),
        alpha,
        beta: dst.alpha,
        max_deg,
        passed,
        intertwining,
        fsystem_residuals,
        finite_model,
    };
    emit(output, &report, || {
        let mut s = format!(
            "D_{k}: I(triv, {})^{alpha} -> I(poly^{k}, {})^{}  (inputs up to degree {max_deg})\n",
            report.lambda, report.nu, report.beta
        );
        let i = &report.intertwining;
        s += &format!(
            "intertwining: {} ({} elements, {} inputs)\n",
            if i.passed { "PASS" } else { "FAIL" },
            i.elements_checked,
            i.inputs_checked
        );
        if let Some(w) = &i.witness {
            s += &format!(
                "  witness: X = {}, input {} ⊗ {}: residual {}\n",
                w.element, w.monomial, w.fiber_label, w.residual
            );
        }
        s += &format!(
            "F-system on psi_k: {}\n",
            if report.fsystem_residuals.is_empty() {
                "PASS"
            } else {
                "FAIL"
            }
        );
        for r in report.fsystem_residuals.iter().take(3) {
            s += &format!("  {r}\n");
        }
        if let Some(f) = &report.finite_model {
            s += &format!(
                "finite model: {} (kernel dim {} of expected {})\n",
                if f.passed { "PASS" } else { "FAIL" },
                f.kernel_dim,
                f.expected_dim
            );
        }
        s += if report.passed {
            "verdict: PASS\n"
        } else {
            "verdict: FAIL\n"
        };
        s
    })?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn cmd_ktypes(n: usize, k: u32, alpha: &str, output: &Output) -> CmdResult {
    check_n(n, 3)?;
    let rows = parse_alphas(alpha)?
        .into_iter()
        .map(|a| kernel_image_ktypes(n, k, a))
        .collect::<fmk_core::Result<Vec<_>>>()?;
    emit(output, &rows, || {
        let mut t = Table::new(&["n", "k", "alpha", "ker", "dim ker", "im"]);
        for r in &rows {
            t.row(vec![
                r.n.to_string(),
                r.k.to_string(),
                r.alpha.to_string(),
                r.ker.to_string(),
                r.ker.total_dim().map_or_else(|| "inf".into(), |d| d.to_string()),
                r.im.to_string(),
            ]);
        }
        t.render()
    })
}

fn cmd_standardness(n: usize, kmax: u32, depth: usize, output: &Output) -> CmdResult {
    check_n(n, 3)?;
    let rows = standardness_report(n, kmax, depth)?;
    emit(output, &rows, || {
        let mut t = Table::new(&["k", "mu", "eta", "links", "mu in P+_l", "verdict"]);
        for r in &rows {
            let links: Vec<String> = r
                .links
                .iter()
                .map(|l| {
                    if l.is_empty() {
                        "()".into()
                    } else {
                        format!("({})", l.roots.join(", "))
                    }
                })
                .collect();
            let verdict = if r.identity_case {
                format!("{} (identity)", r.verdict)
            } else {
                r.verdict.clone()
            };
            t.row(vec![
                r.k.to_string(),
                r.mu.to_string(),
                r.eta.to_string(),
                links.join(" "),
                r.mu_l_dominant.to_string(),
                verdict,
            ]);
        }
        t.render()
    })
}

fn parse_range(s: &str, step: &str) -> std::result::Result<Vec<Rational>, Failure> {
    let Some((a, b)) = s.split_once("..") else {
        return Ok(vec![parse_rational(s)?]);
    };
    let (a, b, step) = (parse_rational(a)?, parse_rational(b)?, parse_rational(step)?);
    if step <= Rational::from_integer(0.into()) {
        return Err(Failure::Usage("--step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut x = a;
    while x <= b {
        out.push(x.clone());
        x += &step;
    }
    Ok(out)
}

fn cmd_reducibility(n: usize, s: &str, step: &str, output: &Output) -> CmdResult {
    check_n(n, 2)?;
    let values = parse_range(s, step)?;
    let rows = values
        .iter()
        .map(|s| reducibility(n, s))
        .collect::<fmk_core::Result<Vec<_>>>()?;
    emit(output, &rows, || {
        let mut t = Table::new(&["s", "reducible", "witness k", "scanned k"]);
        for r in &rows {
            t.row(vec![
                format_rational(&r.s),
                r.reducible.to_string(),
                r.witness_k.map_or_else(String::new, |k| k.to_string()),
                format!("1..={}", r.scanned_up_to),
            ]);
        }
        t.render()
    })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify {
            n,
            kmax,
            alpha,
            family,
            output,
        } => cmd_classify(n, kmax, &alpha, &family, &output),
        Command::BuildOperator { n, k, output } => cmd_build_operator(n, k, &output),
        Command::Verify {
            n,
            k,
            lambda,
            alpha,
            max_deg,
            output,
        } => cmd_verify(n, k, lambda.as_deref(), &alpha, max_deg, &output),
        Command::Ktypes { n, k, alpha, output } => cmd_ktypes(n, k, &alpha, &output),
        Command::Standardness { n, kmax, depth, output } => cmd_standardness(n, kmax, depth, &output),
        Command::Reducibility { n, s, step, output } => cmd_reducibility(n, &s, &step, &output),
    }
}

fn configure_threads() {
    if let Some(t) = std::env::var("FMK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // an already-initialized pool keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
