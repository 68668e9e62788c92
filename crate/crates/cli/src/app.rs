use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kravchuk_core::derivations::{
    cayley_k1, cayley_k2, dixmier_sigma, Derivation, DerivationKind, Slice,
};
use kravchuk_core::identities::{
    classify, discriminant_identity, first_refutation, phi_k, sweep, CheckRecord, Conjecture, ConjectureCheck,
    IdentityReport, Verdict,
};
use kravchuk_core::intertwine::{build_psi, PsiKind};
use kravchuk_core::kravchuk::{dkda_expansion, dkdx_expansion, kravchuk};
use kravchuk_core::poly::{render, Polynomial, Variable};
use serde_json::{json, Value};

use crate::parse::{parse_expr, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kravchuk", version, about = "Exact identities for Kravchuk polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    W,
    K1,
    K2,
}

impl From<KindArg> for DerivationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::W => DerivationKind::Weitzenbock,
            KindArg::K1 => DerivationKind::Kravchuk1,
            KindArg::K2 => DerivationKind::Kravchuk2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KravchukKind {
    K1,
    K2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapArg {
    Ak1,
    Ak2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpArg {
    Dx,
    Da,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print K_n(x, a).
    Poly { n: usize },
    /// Expand dK_n/dx or dK_n/da in lower Kravchuk polynomials and check it.
    Derive {
        #[arg(long, value_enum)]
        op: OpArg,
        n: usize,
    },
    /// Apply a derivation to an expression.
    Derivation {
        #[command(subcommand)]
        action: DerivationAction,
    },
    /// Kernel membership.
    Kernel {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Cayley element of a Kravchuk derivation.
    Cayley {
        #[arg(long, value_enum)]
        derivation: KravchukKind,
        n: usize,
    },
    /// Dixmier image sigma(x_n) and its phi_K image.
    Sigma {
        #[arg(long, value_enum)]
        derivation: KravchukKind,
        n: usize,
    },
    /// Intertwining maps.
    Intertwine {
        #[arg(long, value_enum)]
        map: MapArg,
        #[command(subcommand)]
        action: IntertwineAction,
    },
    /// Substitute x_i -> K_i(x, a) and classify the result.
    Identity {
        #[command(subcommand)]
        action: IdentityAction,
    },
    /// Sweep one of the conjectures over n.
    Conjecture {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The 5x5 determinant identity.
    DiscriminantDemo,
    /// Parse/render round trips on random polynomials.
    SelfTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DerivationAction {
    Apply {
        #[arg(long, value_enum)]
        kind: KindArg,
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
enum KernelAction {
    Check {
        #[arg(long, value_enum)]
        derivation: KindArg,
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
enum IntertwineAction {
    Apply { expr: String },
}

#[derive(Subcommand, Debug)]
enum IdentityAction {
    Verify {
        expr: String,
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] kravchuk_core::error::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: EXIT_OK }
    }

    fn verdict(body: String, verified: bool) -> Self {
        Output { body, code: if verified { EXIT_OK } else { EXIT_REFUTED } }
    }
}

fn render_poly(p: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Latex => render::to_latex(p),
        Format::Json => render::to_json(p).to_string(),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Highest generator index in `p`, at least 1.
fn inferred_n(p: &Polynomial) -> usize {
    p.max_index().unwrap_or(0).max(1)
}

fn generators_only(p: &Polynomial) -> Result<(), CliError> {
    for v in [Variable::X, Variable::A] {
        if p.contains_var(v) {
            return Err(CliError::Usage(format!("expression must only use x0, x1, ...; found `{v}`")));
        }
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            if !out.body.is_empty() {
                println!("{}", out.body);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Poly { n } => Ok(Output::ok(render_poly(&kravchuk(n), format))),
        Command::Derive { op, n } => derive(op, n, format),
        Command::Derivation { action: DerivationAction::Apply { kind, expr } } => {
            let p = parse_expr(&expr)?;
            generators_only(&p)?;
            let d = Derivation::build(kind.into(), inferred_n(&p))?;
            Ok(Output::ok(render_poly(&d.apply(&p)?, format)))
        }
        Command::Kernel { action: KernelAction::Check { derivation, expr } } => {
            let p = parse_expr(&expr)?;
            generators_only(&p)?;
            let d = Derivation::build(derivation.into(), inferred_n(&p))?;
            let image = d.apply(&p)?;
            let member = image.is_zero();
            let body = match format {
                Format::Json => pretty(&json!({
                    "derivation": DerivationKind::from(derivation).label(),
                    "input": render::to_json(&p),
                    "image": render::to_json(&image),
                    "in_kernel": member,
                })),
                _ => format!("in kernel: {member}"),
            };
            Ok(Output::verdict(body, member))
        }
        Command::Cayley { derivation, n } => cayley(derivation, n, format),
        Command::Sigma { derivation, n } => sigma(derivation, n, format),
        Command::Intertwine { map, action: IntertwineAction::Apply { expr } } => {
            let p = parse_expr(&expr)?;
            generators_only(&p)?;
            let kind = match map {
                MapArg::Ak1 => PsiKind::Ak1,
                MapArg::Ak2 => PsiKind::Ak2,
            };
            let psi = build_psi(kind, inferred_n(&p))?;
            Ok(Output::ok(render_poly(&psi.apply(&p)?, format)))
        }
        Command::Identity { action: IdentityAction::Verify { expr, expect } } => {
            let p = parse_expr(&expr)?;
            generators_only(&p)?;
            let expected = expect.as_deref().map(parse_expr).transpose()?;
            let report = classify(&p, inferred_n(&p), expected.as_ref())?;
            let verified = report.verdict != Some(Verdict::Refuted);
            Ok(Output::verdict(identity_body(&report, format), verified))
        }
        Command::Conjecture { which, max_n, out } => conjecture(which, max_n, out, format),
        Command::DiscriminantDemo => discriminant(format),
        Command::SelfTest { seed, cases } => self_test(seed, cases),
    }
}

fn derive(op: OpArg, n: usize, format: Format) -> Result<Output, CliError> {
    let (expansion, var, name) = match op {
        OpArg::Dx => (dkdx_expansion(n)?, Variable::X, "x"),
        OpArg::Da => (dkda_expansion(n)?, Variable::A, "a"),
    };
    let direct = kravchuk(n).partial_derivative(var);
    let matches = direct == expansion;
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "variable": name,
            "expansion": render::to_json(&expansion),
            "matches_direct_derivative": matches,
        })),
        _ => format!(
            "dK_{n}/d{name} = {}\nmatches direct derivative: {matches}",
            render_poly(&expansion, format)
        ),
    };
    Ok(Output::verdict(body, matches))
}

fn cayley(kind: KravchukKind, n: usize, format: Format) -> Result<Output, CliError> {
    let body = match kind {
        KravchukKind::K1 => {
            let c = cayley_k1(n)?;
            let image = phi_k(&c, n)?;
            match format {
                Format::Json => pretty(&json!({
                    "n": n,
                    "cayley": render::to_json(&c),
                    "phi": render::to_json(&image),
                })),
                _ => format!("C_{n} = {}\nphi(C_{n}) = {}", render_poly(&c, format), render_poly(&image, format)),
            }
        }
        KravchukKind::K2 => {
            let c = cayley_k2(n)?;
            let image = phi_k(&c.numerator, n)?.scale(&c.scalar);
            match format {
                Format::Json => pretty(&json!({
                    "n": n,
                    "numerator": render::to_json(&c.numerator),
                    "scalar": c.scalar.to_string(),
                    "pivot_power": c.pivot_power,
                    "phi_sigma": render::to_json(&image),
                })),
                _ => format!(
                    "sigma(x{n}) = {} * ({}) / x0^{}\nphi(sigma(x{n})) = {}",
                    c.scalar,
                    render_poly(&c.numerator, format),
                    c.pivot_power,
                    render_poly(&image, format)
                ),
            }
        }
    };
    Ok(Output::ok(body))
}

fn sigma(kind: KravchukKind, n: usize, format: Format) -> Result<Output, CliError> {
    let kind = match kind {
        KravchukKind::K1 => DerivationKind::Kravchuk1,
        KravchukKind::K2 => DerivationKind::Kravchuk2,
    };
    let d = Derivation::build(kind, n.max(1))?;
    let s = dixmier_sigma(&d, n, &Slice::standard(&d)?)?;
    // phi(x0) = 1, so the denominator drops out
    let image = phi_k(s.numerator(), n)?;
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "numerator": render::to_json(s.numerator()),
            "pivot": s.pivot().to_string(),
            "pivot_power": s.pivot_power(),
            "phi": render::to_json(&image),
        })),
        _ => format!(
            "sigma(x{n}) = ({}) / {}^{}\nphi(sigma(x{n})) = {}",
            render_poly(s.numerator(), format),
            s.pivot(),
            s.pivot_power(),
            render_poly(&image, format)
        ),
    };
    Ok(Output::ok(body))
}

fn identity_body(r: &IdentityReport, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "input": render::to_json(&r.input),
            "image": render::to_json(&r.image),
            "classification": r.classification.to_string(),
            "expected": r.expected.as_ref().map(render::to_json),
            "residual": render::to_json(&r.residual),
            "verdict": r.verdict.map(|v| v.to_string()),
        })),
        _ => {
            let mut s = format!(
                "phi({}) = {}\nclassification: {}",
                render_poly(&r.input, format),
                render_poly(&r.image, format),
                r.classification
            );
            if let (Some(e), Some(v)) = (&r.expected, r.verdict) {
                let _ = write!(s, "\nexpected: {}\nverdict: {v}", render_poly(e, format));
            }
            s
        }
    }
}

fn conjecture(which: u8, max_n: usize, out: Option<PathBuf>, format: Format) -> Result<Output, CliError> {
    let conj = Conjecture::from_number(which).ok_or_else(|| CliError::Usage(format!("no conjecture {which}")))?;
    if max_n < conj.min_n() {
        return Err(CliError::Usage(format!("conjecture {which} needs --max-n >= {}", conj.min_n())));
    }
    let checks = sweep(conj, max_n)?;
    let body = match format {
        Format::Json => {
            let records: Vec<CheckRecord> = checks.iter().map(ConjectureCheck::record).collect();
            serde_json::to_string_pretty(&records).expect("serializable")
        }
        Format::Text => conjecture_text(&checks),
        Format::Latex => conjecture_latex(&checks),
    };
    let verified = checks.iter().all(|c| c.verdict == Verdict::Verified);
    match out {
        Some(path) => {
            std::fs::write(&path, format!("{body}\n"))?;
            Ok(Output::verdict(String::new(), verified))
        }
        None => Ok(Output::verdict(body, verified)),
    }
}

fn check_ids(checks: &[ConjectureCheck]) -> Vec<&str> {
    let mut ids: Vec<&str> = Vec::new();
    for c in checks {
        if !ids.contains(&c.check_id.as_str()) {
            ids.push(&c.check_id);
        }
    }
    ids
}

fn conjecture_text(checks: &[ConjectureCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = writeln!(s, "{} n={}: {}", c.check_id, c.n, c.verdict);
        let _ = writeln!(s, "  lhs = {}", c.lhs);
        let _ = writeln!(s, "  rhs = {}", c.rhs);
        for note in &c.notes {
            let _ = writeln!(s, "  {note}");
        }
    }
    for id in check_ids(checks) {
        match first_refutation(checks, id) {
            Some(n) => {
                let _ = writeln!(s, "{id}: first refuted at n={n}");
            }
            None => {
                let _ = writeln!(s, "{id}: verified for every n checked");
            }
        }
    }
    s.trim_end().to_string()
}

fn conjecture_latex(checks: &[ConjectureCheck]) -> String {
    let mut s = String::from("\\begin{align*}\n");
    for c in checks {
        let rel = if c.verdict == Verdict::Verified { "=" } else { "\\neq" };
        let _ = writeln!(
            s,
            "&\\text{{{} }}(n={}):\\ {} {rel} {} \\\\",
            c.check_id,
            c.n,
            render::to_latex(&c.lhs),
            render::to_latex(&c.rhs)
        );
    }
    s.push_str("\\end{align*}");
    s
}

fn discriminant(format: Format) -> Result<Output, CliError> {
    let r = discriminant_identity()?;
    let verified = r.verdict() == Verdict::Verified;
    let body = match format {
        Format::Json => pretty(&json!({
            "raw_determinant": render::to_json(&r.raw_determinant),
            "displayed_expansion": render::to_json(&r.displayed_expansion),
            "raw_matches": r.raw_matches(),
            "raw_cofactor": r.raw_cofactor.as_ref().map(render::to_json),
            "psi_determinant": render::to_json(&r.psi_determinant),
            "psi_in_kernel": r.psi_in_kernel,
            "image": render::to_json(&r.image),
            "expected_image": render::to_json(&r.expected_image),
            "image_matches": r.image_matches(),
            "expansion_image": render::to_json(&r.expansion_image),
            "verdict": r.verdict().to_string(),
        })),
        _ => {
            let p = |q: &Polynomial| render_poly(q, format);
            let mut s = String::new();
            let _ = writeln!(s, "det = {}", p(&r.raw_determinant));
            let _ = writeln!(s, "displayed expansion = {}", p(&r.displayed_expansion));
            let _ = writeln!(s, "det matches displayed expansion: {}", r.raw_matches());
            if let Some(c) = &r.raw_cofactor {
                let _ = writeln!(s, "det = ({}) * displayed expansion", p(c));
            }
            let _ = writeln!(s, "psi_ak1(det) in ker D_K1: {}", r.psi_in_kernel);
            let _ = writeln!(s, "phi(psi_ak1(det)) = {}", p(&r.image));
            let _ = writeln!(s, "expected = {}", p(&r.expected_image));
            let _ = writeln!(s, "phi(psi_ak1(displayed expansion)) = {}", p(&r.expansion_image));
            let _ = write!(s, "verdict: {}", r.verdict());
            s
        }
    };
    Ok(Output::verdict(body, verified))
}

fn self_test(seed: u64, cases: usize) -> Result<Output, CliError> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(seed);
    let vars = [Variable::Indexed(0), Variable::Indexed(1), Variable::Indexed(2), Variable::X, Variable::A];
    let mut failures = 0;
    for _ in 0..cases {
        let mut p = Polynomial::zero();
        for _ in 0..rng.gen_range(0..5) {
            let c = kravchuk_core::arith::rat(rng.gen_range(-20..=20), rng.gen_range(1..=6));
            let mut t = Polynomial::constant(c);
            for _ in 0..rng.gen_range(0..4) {
                t = &t * &Polynomial::var(vars[rng.gen_range(0..vars.len())]);
            }
            p += t;
        }
        if parse_expr(&p.to_string()).ok().as_ref() != Some(&p) {
            failures += 1;
            eprintln!("round trip failed: {p}");
        }
    }
    Ok(Output::verdict(format!("self-test: {} of {cases} round trips ok", cases - failures), failures == 0))
}
