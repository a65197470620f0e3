//! Command-line front end: `construct`, `solve`, `verify`, `hecke-check`, `emit`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::exactalg::{MultiPoly, Scalar};
use crate::jordan::{rank2_csoi, Frame};
use crate::jrep::{build_rep, split_module, RepSpec};
use crate::pluriharm::{
    derived_coeffs, paper_coeffs, pluriharmonic_solve, rank2_symbol_basis, CoeffVector, Provenance,
    SymbolSpace,
};
use crate::sbdo::{coord_names, emit_operator, parse_operator, rank2_operator, Format, OperatorDocument};
use crate::verify::{run_suite, AlgebraChoice, Stages, SuiteConfig, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sbdo", version, about = "Exact symmetry breaking differential operators on tube domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve for the symbol and print the operator with its coefficient table.
    Construct(Common),
    /// Print the pluri-harmonic coefficient vectors of the symbol space.
    Solve(Common),
    /// Run the full verification suite.
    Verify(Common),
    /// Run only the Hecke-formula checks.
    HeckeCheck(Common),
    /// Print an operator document, built from the options or read from --input.
    Emit(EmitArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `spin:<n>` or `symm:<r>`.
    #[arg(long, default_value = "spin:4", value_parser = parse_algebra)]
    pub algebra: AlgebraChoice,
    /// `clifford:<copies>` or `symm:<r>x<q>`.
    #[arg(long, default_value = "clifford:2", value_parser = parse_rep)]
    pub rep: RepArg,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient vector `a_0,..,a_p` replacing the solved one.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_scalar)]
    pub coeffs: Option<Vec<Scalar>>,
    /// Symbol replacing the rank-2 one, e.g. `y1` or `y1*y2+-1*y3^2`.
    #[arg(long)]
    pub symbol: Option<String>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EmitArgs {
    #[command(flatten)]
    pub common: Common,
    /// Frame of the emitted operator: `f` or `original`.
    #[arg(long, default_value = "f")]
    pub frame: String,
    /// Operator document to re-emit.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepArg {
    Clifford(usize),
    Symm(usize, usize),
}

fn parse_algebra(s: &str) -> Result<AlgebraChoice, String> {
    let (kind, v) = s.split_once(':').ok_or("expected spin:<n> or symm:<r>")?;
    let v: usize = v.parse().map_err(|_| format!("bad size in {s:?}"))?;
    match kind {
        "spin" if v >= 4 => Ok(AlgebraChoice::Spin { n: v }),
        "spin" => Err(format!("spin factors need n >= 4, got {v}")),
        "symm" if v >= 1 => Ok(AlgebraChoice::Symm { r: v }),
        _ => Err(format!("unknown algebra {s:?}")),
    }
}

fn parse_rep(s: &str) -> Result<RepArg, String> {
    let (kind, v) = s.split_once(':').ok_or("expected clifford:<copies> or symm:<r>x<q>")?;
    match kind {
        "clifford" => v.parse().map(RepArg::Clifford).map_err(|_| format!("bad copies in {s:?}")),
        "symm" => {
            let (r, q) = v.split_once('x').ok_or("expected symm:<r>x<q>")?;
            Ok(RepArg::Symm(
                r.parse().map_err(|_| format!("bad r in {s:?}"))?,
                q.parse().map_err(|_| format!("bad q in {s:?}"))?,
            ))
        }
        _ => Err(format!("unknown representation {s:?}")),
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.trim().parse::<Scalar>().map_err(|e| format!("{s:?}: {e}"))
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// Terms separated by `+`, each `coef*monomial`, `monomial` or `coef`.
pub fn parse_symbol(s: &str, names: &[String]) -> Result<MultiPoly, String> {
    let mut p = MultiPoly::zero(names.len());
    for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, key) = match term.split_once('*') {
            Some((c, rest)) if c.parse::<Scalar>().is_ok() => (c.parse::<Scalar>().unwrap(), rest),
            _ => match term.parse::<Scalar>() {
                Ok(c) => (c, ""),
                Err(_) => (Scalar::one(), term),
            },
        };
        let e = MultiPoly::parse_monomial_key(key, names).map_err(|e| e.to_string())?;
        p.add_term(e, coef);
    }
    Ok(p)
}

fn rep_spec(a: AlgebraChoice, r: RepArg) -> Result<RepSpec, String> {
    match (a, r) {
        (AlgebraChoice::Spin { n }, RepArg::Clifford(copies)) => Ok(RepSpec::Clifford { n, copies }),
        (AlgebraChoice::Symm { r }, RepArg::Symm(r2, q)) if r == r2 => Ok(RepSpec::SymmModule { r, q }),
        _ => Err(format!("representation {r:?} does not fit algebra {a:?}")),
    }
}

struct Failure {
    code: i32,
    msg: String,
}

fn config_err(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_CONFIG, msg: msg.to_string() }
}

fn suite_config(c: &Common, hecke_only: bool) -> Result<SuiteConfig, Failure> {
    let rep = rep_spec(c.algebra, c.rep).map_err(config_err)?;
    let symbol = match &c.symbol {
        None => None,
        Some(s) => {
            let (frame, dim) = match c.algebra {
                AlgebraChoice::Spin { n } => (Frame::FBasis, n),
                AlgebraChoice::Symm { r } => (Frame::Original, r * (r + 1) / 2),
            };
            Some(parse_symbol(s, &coord_names(frame, dim)).map_err(config_err)?)
        }
    };
    let mut cfg = SuiteConfig::new(c.algebra, rep, c.p);
    cfg.samples = c.samples;
    cfg.seed = c.seed;
    cfg.coeffs = c.coeffs.clone();
    cfg.symbol = symbol;
    cfg.stages = if hecke_only { Stages::Hecke } else { Stages::All };
    Ok(cfg)
}

fn show(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", "))
}

struct Built {
    table: serde_json::Value,
    text_table: String,
    op: crate::sbdo::Rank2Operator,
}

fn build_rank2(c: &Common) -> Result<Built, Failure> {
    let AlgebraChoice::Spin { n } = c.algebra else {
        return Err(config_err("construct and emit build rank-2 operators on spin factors"));
    };
    let spec = rep_spec(c.algebra, c.rep).map_err(config_err)?;
    let rep = build_rep(spec).map_err(config_err)?;
    let csoi = rank2_csoi(n, Frame::Original).map_err(config_err)?;
    let split = split_module(&rep, &csoi).map_err(config_err)?;
    let n1 = split.dims[0];
    let m = Scalar::ratio(n1 as i64, 2);
    let space = rank2_symbol_basis(n, c.p, c.p).map_err(config_err)?;
    let sols = pluriharmonic_solve(&rep, &csoi, &space).map_err(config_err)?;
    let derived = derived_coeffs(n, &m, c.p).map_err(config_err)?;
    let paper = paper_coeffs(n, &m, c.p).map_err(config_err)?;
    let nullspace = (sols.len() == 1).then(|| sols[0].clone());
    let used = match (&c.coeffs, &nullspace) {
        (Some(v), _) => CoeffVector {
            coeffs: v.clone(),
            provenance: Provenance::Recurrence,
            convention: None,
            ..derived.clone()
        },
        (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(Failure {
                code: EXIT_CHECK_FAILED,
                msg: format!("solver returned {} independent solutions", sols.len()),
            })
        }
    };
    if used.coeffs.len() != c.p + 1 {
        return Err(config_err(format!("{} coefficients for p = {}", used.coeffs.len(), c.p)));
    }
    let weight = Scalar::from_int((rep.dim_e / (2 * rep.algebra.rank())) as i64);
    let op = rank2_operator(n, &weight, c.p, &used).map_err(config_err)?;
    let table = json!({
        "n": n,
        "n1": n1,
        "m": m,
        "p": c.p,
        "nullspace": nullspace.as_ref().map(|s| &s.coeffs),
        "derived": derived.coeffs,
        "paper": paper.coeffs,
        "used": used.coeffs,
    });
    let mut text_table = format!("coefficients (n = {n}, m = {m}, p = {})\n", c.p);
    if let Some(s) = &nullspace {
        text_table += &format!("  nullspace  {}\n", show(&s.coeffs));
    }
    text_table += &format!(
        "  derived    {}\n  printed    {}\n  used       {}\n",
        show(&derived.coeffs),
        show(&paper.coeffs),
        show(&used.coeffs)
    );
    Ok(Built { table, text_table, op })
}

fn doc_value(d: &crate::sbdo::DiffOperator) -> serde_json::Value {
    serde_json::to_value(OperatorDocument::from_operator(d)).expect("documents serialize")
}

fn construct(c: &Common) -> Result<(String, i32), Failure> {
    let b = build_rank2(c)?;
    let out = match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "coefficients": b.table,
            "operator": doc_value(&b.op.f_basis),
            "original_frame": {
                "operator": doc_value(&b.op.original),
                "display": b.op.display,
            },
        }))
        .expect("serializes"),
        Format::Text => {
            let terms: Vec<String> =
                b.op.display
                    .iter()
                    .enumerate()
                    .map(|(j, bj)| format!("({bj}) (d0^2 - d1^2)^{} Delta^{j}", c.p - j))
                    .collect();
            format!(
                "{}\n[f-basis]\n{}\n[original frame]\n{}D = {}\n",
                b.text_table,
                emit_operator(&b.op.f_basis, Format::Text),
                emit_operator(&b.op.original, Format::Text),
                terms.join(" + ")
            )
        }
    };
    Ok((out, EXIT_OK))
}

fn solve(c: &Common) -> Result<(String, i32), Failure> {
    let spec = rep_spec(c.algebra, c.rep).map_err(config_err)?;
    let rep = build_rep(spec).map_err(config_err)?;
    let (csoi, space) = match c.algebra {
        AlgebraChoice::Spin { n } => (
            rank2_csoi(n, Frame::Original).map_err(config_err)?,
            rank2_symbol_basis(n, c.p, c.p).map_err(config_err)?,
        ),
        AlgebraChoice::Symm { r } => {
            if c.p > 0 {
                return Err(config_err("symbol spaces for Symm(r) are only built in for p = 0"));
            }
            (
                crate::jordan::diagonal_csoi(r).map_err(config_err)?,
                SymbolSpace {
                    algebra: rep.algebra.clone(),
                    degrees: vec![0; r],
                    basis: vec![MultiPoly::one(rep.algebra.dim())],
                },
            )
        }
    };
    let sols = pluriharmonic_solve(&rep, &csoi, &space).map_err(config_err)?;
    let code = if sols.is_empty() { EXIT_CHECK_FAILED } else { EXIT_OK };
    let out = match c.format {
        Format::Json => serde_json::to_string_pretty(&sols).expect("serializes"),
        Format::Text => {
            let mut s = format!("{} solution(s)\n", sols.len());
            for v in &sols {
                s += &format!("  {}\n", show(&v.coeffs));
            }
            s
        }
    };
    Ok((out, code))
}

fn report_output(r: &VerificationReport, f: Format) -> (String, i32) {
    let code = if r.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    let out = match f {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    };
    (out, code)
}

fn verify(c: &Common, hecke_only: bool) -> Result<(String, i32), Failure> {
    let cfg = suite_config(c, hecke_only)?;
    let r = run_suite(&cfg).map_err(|e| match e {
        crate::verify::VerifyError::Config(_) => config_err(e),
        other => Failure { code: EXIT_CHECK_FAILED, msg: other.to_string() },
    })?;
    Ok(report_output(&r, c.format))
}

fn emit(a: &EmitArgs) -> Result<(String, i32), Failure> {
    if let Some(path) = &a.input {
        let text =
            std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        let d = parse_operator(&text).map_err(config_err)?;
        return Ok((emit_operator(&d, a.common.format), EXIT_OK));
    }
    let b = build_rank2(&a.common)?;
    let d = match a.frame.as_str() {
        "f" => &b.op.f_basis,
        "original" => &b.op.original,
        other => return Err(config_err(format!("unknown frame {other:?}"))),
    };
    Ok((emit_operator(d, a.common.format), EXIT_OK))
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let (common, result) = match &cli.command {
        Command::Construct(c) => (c, construct(c)),
        Command::Solve(c) => (c, solve(c)),
        Command::Verify(c) => (c, verify(c, false)),
        Command::HeckeCheck(c) => (c, verify(c, true)),
        Command::Emit(a) => (&a.common, emit(a)),
    };
    match result {
        Ok((mut out, code)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &out) {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return EXIT_CONFIG;
                }
            } else {
                let _ = stdout.write_all(out.as_bytes());
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}
