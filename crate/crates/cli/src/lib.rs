//! Command-line front end: `alex`, `sw`, `distinguish` and `verify`.
//!
//! [`run`] takes the argument vector and two output sinks and returns the
//! process exit status: 0 on success, 1 on bad input, 2 when a
//! verification property fails.

use std::collections::BTreeSet;
use std::io::Write;

use braid_alex::braidmatrix::{
    char_det_capped, word_matrix, ColoredBraidWord, DEFAULT_DIMENSION_CAP,
};
use braid_alex::family::{
    delta_closed, delta_det_capped, delta_seed, delta_with, embed, term_count_formula, Embedding,
    EmbeddingKind, FamilyParams, Method,
};
use braid_alex::laurent::{ExponentVector, LaurentPolynomial, Var, VarNames};
use braid_alex::swinv::{basic_classes, distinguish, sw_invariant_with, Parity};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub const DIM_CAP_ENV: &str = "BRAID_ALEX_DIM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "braid-alex",
    version,
    about = "Alexander polynomials and Seiberg-Witten basic classes of the B(q;k,m) braid family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Δ_{q;k,m}, or det(I - x·Γ) of an arbitrary colored word
    Alex(AlexArgs),
    /// Print the Seiberg-Witten invariant and its basic classes
    Sw(SwArgs),
    /// Compare basic-class counts over a range of k
    Distinguish(DistinguishArgs),
    /// Run the equivalence, recursion, count and symmetry checks over a grid
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Det,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Det => Method::Determinant,
            MethodArg::Closed => Method::ClosedForm,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmbeddingArg {
    Phi,
    Psi,
}

impl From<EmbeddingArg> for EmbeddingKind {
    fn from(e: EmbeddingArg) -> Self {
        match e {
            EmbeddingArg::Phi => EmbeddingKind::Phi,
            EmbeddingArg::Psi => EmbeddingKind::Psi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct EmbeddingFlags {
    #[arg(long, value_enum, default_value = "psi")]
    embedding: EmbeddingArg,
    /// Rim torus index (1 or 2)
    #[arg(long, default_value_t = 1)]
    rim: u8,
}

impl EmbeddingFlags {
    fn embedding(&self) -> Result<Embedding, String> {
        Embedding::new(self.embedding.into(), self.rim).map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct AlexArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
    #[command(flatten)]
    embedding: EmbeddingFlags,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Colored braid word, e.g. "n: 2; w: t2 s1 t1"
    #[arg(long, conflicts_with_all = ["q", "k", "m"])]
    word: Option<String>,
}

#[derive(Args, Debug)]
struct SwArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    embedding: EmbeddingFlags,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct DistinguishArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k_min: u32,
    #[arg(long)]
    k_max: u32,
    #[command(flatten)]
    embedding: EmbeddingFlags,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    q_max: u32,
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    #[arg(long, default_value_t = 3)]
    m_max: u32,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Usage(msg)
    }
}

fn err_string(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = dimension_cap().and_then(|cap| match cli.command {
        Command::Alex(a) => alex(a, cap, out),
        Command::Sw(a) => sw(a, cap, out),
        Command::Distinguish(a) => distinguish_cmd(a, out),
        Command::Verify(a) => verify(a, cap, out),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification) => EXIT_VERIFY_FAILED,
    }
}

fn dimension_cap() -> Result<usize, Failure> {
    match std::env::var(DIM_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{DIM_CAP_ENV} must be a nonnegative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_DIMENSION_CAP),
    }
}

fn write_line(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(err_string)
}

fn print_poly(out: &mut dyn Write, p: &LaurentPolynomial, format: Format) -> Result<(), Failure> {
    match format {
        Format::Text => write_line(out, &p.render()),
        Format::Json => write_line(out, &p.to_json()),
    }
}

fn alex(a: AlexArgs, cap: usize, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(text) = &a.word {
        let word: ColoredBraidWord = text.parse().map_err(err_string)?;
        let gamma = word_matrix(&word).map_err(err_string)?;
        let delta = char_det_capped(&gamma, Var::X, cap).map_err(err_string)?;
        return print_poly(out, &delta, a.format);
    }
    let (Some(q), Some(k), Some(m)) = (a.q, a.k, a.m) else {
        return Err(Failure::Usage(
            "alex needs either --word or all of --q, --k, --m".into(),
        ));
    };
    let p = FamilyParams::new(q, k, m).map_err(err_string)?;
    let e = a.embedding.embedding()?;
    let delta = embed(
        delta_with(&p, a.method.into(), cap).map_err(err_string)?,
        &e,
    );
    print_poly(out, &delta, a.format)
}

#[derive(Serialize)]
struct SwJson<'a> {
    q: u32,
    k: u32,
    m: u32,
    embedding: &'static str,
    rim: u8,
    parity: &'static str,
    basic_classes: usize,
    sw: &'a LaurentPolynomial,
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Symmetric => "symmetric",
        Parity::Antisymmetric => "antisymmetric",
    }
}

fn sw(a: SwArgs, cap: usize, out: &mut dyn Write) -> Result<(), Failure> {
    let p = FamilyParams::new(a.q, a.k, a.m).map_err(err_string)?;
    let e = a.embedding.embedding()?;
    let inv = sw_invariant_with(&p, &e, Method::Determinant, cap).map_err(err_string)?;
    match a.format {
        Format::Json => {
            let body = SwJson {
                q: a.q,
                k: a.k,
                m: a.m,
                embedding: e.kind().name(),
                rim: e.rim(),
                parity: parity_name(inv.parity()),
                basic_classes: inv.basic_class_count(),
                sw: inv.polynomial(),
            };
            write_line(out, &serde_json::to_string(&body).map_err(err_string)?)
        }
        Format::Text => {
            write_line(
                out,
                &format!(
                    "SW = {}",
                    inv.polynomial().render_with(VarNames::XI_TAU_ZETA)
                ),
            )?;
            write_line(out, &format!("parity: {}", parity_name(inv.parity())))?;
            write_line(out, &format!("basic classes: {}", inv.basic_class_count()))?;
            for (ExponentVector { x, s, t }, c) in basic_classes(&inv) {
                write_line(out, &format!("  (ξ, τ, ζ) = ({x}, {s}, {t}): {c}"))?;
            }
            Ok(())
        }
    }
}

fn distinguish_cmd(a: DistinguishArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.k_min < 1 || a.k_min > a.k_max {
        return Err(Failure::Usage(format!(
            "need 1 ≤ --k-min ≤ --k-max, got {}..{}",
            a.k_min, a.k_max
        )));
    }
    let e = a.embedding.embedding()?;
    let ks: BTreeSet<u32> = (a.k_min..=a.k_max).collect();
    let report = distinguish(a.q, a.m, &ks, &e).map_err(err_string)?;
    match a.format {
        Format::Json => write_line(out, &report.to_json()),
        Format::Text => write!(out, "{}", report.render_text()).map_err(err_string),
    }
}

/// One property evaluated over the grid; `None` when every case holds,
/// otherwise the first failing tuple in (q, k, m) order.
struct PropertyOutcome {
    name: &'static str,
    cases: usize,
    counterexample: Option<FamilyParams>,
}

fn check<F>(name: &'static str, cases: &[FamilyParams], holds: F) -> PropertyOutcome
where
    F: Fn(&FamilyParams) -> bool + Sync,
{
    let results: Vec<bool> = cases.par_iter().map(&holds).collect();
    let counterexample = cases
        .iter()
        .zip(&results)
        .find(|(_, ok)| !**ok)
        .map(|(p, _)| *p);
    PropertyOutcome {
        name,
        cases: cases.len(),
        counterexample,
    }
}

fn grid(
    q_range: std::ops::RangeInclusive<u32>,
    k_max: u32,
    m_range: std::ops::RangeInclusive<u32>,
) -> Vec<FamilyParams> {
    let mut cases = Vec::new();
    for q in q_range {
        for k in 1..=k_max {
            for m in m_range.clone() {
                if let Ok(p) = FamilyParams::new(q, k, m) {
                    cases.push(p);
                }
            }
        }
    }
    cases
}

fn verify(a: VerifyArgs, cap: usize, out: &mut dyn Write) -> Result<(), Failure> {
    if a.q_max < 2 || a.k_max < 1 {
        return Err(Failure::Usage("need --q-max ≥ 2 and --k-max ≥ 1".into()));
    }
    let full = grid(2..=a.q_max, a.k_max, 0..=a.m_max);
    let positive_m = grid(2..=a.q_max, a.k_max, 1..=a.m_max.max(1));
    let recursion_cases = grid(2..=a.q_max.saturating_sub(1), a.k_max, 0..=a.m_max);
    let xt = LaurentPolynomial::monomial(1, (1, 0, 1));

    let outcomes = [
        check("equivalence (det = closed)", &full, |p| {
            delta_det_capped(p, cap).is_ok_and(|d| d == delta_closed(p))
        }),
        check("recursion (closed form)", &recursion_cases, |p| {
            let prev = p
                .prev_q()
                .map(|pp| delta_closed(&pp))
                .unwrap_or_else(|| delta_seed(p.m()));
            let here = delta_closed(p);
            &delta_closed(&p.next_q()) - &here == &xt * &(&here - &prev)
        }),
        check("term count (closed form)", &positive_m, |p| {
            term_count_formula(p) == Some(delta_closed(p).term_count() as u64)
        }),
        check("sw symmetry", &positive_m, |p| {
            [Embedding::psi(), Embedding::phi()]
                .iter()
                .all(|e| sw_invariant_with(p, e, Method::Determinant, cap).is_ok())
        }),
    ];

    let mut failed = false;
    for o in &outcomes {
        let line = match o.counterexample {
            None => format!("PASS {} ({} cases)", o.name, o.cases),
            Some(p) => {
                failed = true;
                format!(
                    "FAIL {} ({} cases): first counterexample {}",
                    o.name, o.cases, p
                )
            }
        };
        write_line(out, &line)?;
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
