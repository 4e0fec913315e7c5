//! Command dispatch for the `endw` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
//! parse or file errors.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use endw::endaut::{conjugate, decompose_blackbox};
use endw::freealg::DEFAULT_MAX_DEGREE;
use endw::galois::{in_double_prime, PrincipalBasicIdeal};
use endw::{normalize, AlgebraKind, BasicElementWitness, Context, Field};

use crate::error::ToolError;
use crate::parse::{located, parse_bijection, parse_canonical, parse_endomorphism, parse_expression, parse_tame};
use crate::suites::{run_suites, Suite, SuiteConfig};
use crate::table::{parse_table, table_of, write_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn parse_field(text: &str) -> Result<Field, String> {
    if text == "q" {
        return Ok(Field::Rational);
    }
    let d = text
        .strip_prefix("qsqrt:")
        .ok_or_else(|| format!("expected `q` or `qsqrt:<d>`, got `{text}`"))?
        .parse::<i64>()
        .map_err(|e| e.to_string())?;
    Field::quadratic(d).map_err(|e| e.to_string())
}

fn parse_kind(text: &str) -> Result<AlgebraKind, String> {
    match text {
        "comm" => Ok(AlgebraKind::Commutative),
        "assoc" => Ok(AlgebraKind::Associative),
        _ => Err(format!("expected `comm` or `assoc`, got `{text}`")),
    }
}

/// Exact computations with endomorphisms of free commutative and free
/// associative algebras.
#[derive(Debug, Parser)]
#[command(name = "endw", version)]
pub struct Cli {
    /// Coefficient field: `q` or `qsqrt:<d>` with `d` square-free.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Algebra kind: `comm` or `assoc`.
    #[arg(long, global = true, value_parser = parse_kind)]
    pub kind: Option<AlgebraKind>,
    /// Number of generators.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub vars: Option<u16>,
    /// Degree cap for products.
    #[arg(long = "max-degree", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: Option<u32>,
    /// Seed for the verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print `s ∘ t` (`t` acts first).
    Compose { s: String, t: String },
    /// Print `μ s μ⁻¹` for a bijection word `μ`.
    Conjugate { mu: String, s: String },
    /// Rewrite a bijection word into canonical form.
    Normalize { word: String },
    /// Recover the canonical form of the bijection tabulated in a file.
    Decompose {
        file: PathBuf,
        /// Candidate automorphism word; may be repeated.
        #[arg(long)]
        witness: Vec<String>,
    },
    /// Print the table of a bijection word on the standard probes.
    Table { mu: String },
    /// Principal ideals of basic elements.
    Ideal {
        #[command(subcommand)]
        command: IdealCommand,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Debug, Subcommand)]
pub enum IdealCommand {
    /// Decide whether `f` lies in the ideal generated by `φ(x_i)`.
    Member {
        f: String,
        /// Automorphism word `φ`.
        phi: String,
        /// Generator index `i`, starting at 1.
        index: usize,
    },
}

/// Captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Cli {
    fn context(&self) -> Context {
        let ctx = Context::new(
            self.kind.unwrap_or(AlgebraKind::Commutative),
            self.vars.map_or(2, usize::from),
            self.field.unwrap_or(Field::Rational),
        );
        ctx.with_max_degree(self.max_degree.map_or(DEFAULT_MAX_DEGREE, |d| d as usize))
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            field: self.field,
            kind: self.kind,
            vars: self.vars.map(usize::from),
            max_degree: self.max_degree.map(|d| d as usize),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_USAGE },
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), ToolError> {
    let ctx = cli.context();
    let mut out = String::new();
    match &cli.command {
        Command::Compose { s, t } => {
            let s = parse_endomorphism(&ctx, s).map_err(|e| located(e, "endomorphism", s))?;
            let t = parse_endomorphism(&ctx, t).map_err(|e| located(e, "endomorphism", t))?;
            writeln!(out, "{}", s.compose(&t)?).expect("string");
        }
        Command::Conjugate { mu, s } => {
            let mu = parse_canonical(&ctx, mu).map_err(|e| located(e, "bijection", mu))?;
            let s = parse_endomorphism(&ctx, s).map_err(|e| located(e, "endomorphism", s))?;
            writeln!(out, "{}", conjugate(&mu, &s)?).expect("string");
        }
        Command::Normalize { word } => {
            let w = parse_bijection(&ctx, word).map_err(|e| located(e, "bijection", word))?;
            writeln!(out, "{}", normalize(&w)).expect("string");
        }
        Command::Table { mu } => {
            let mu = parse_canonical(&ctx, mu).map_err(|e| located(e, "bijection", mu))?;
            out.push_str(&write_table(&table_of(&mu)?));
        }
        Command::Decompose { file, witness } => {
            let text = std::fs::read_to_string(file).map_err(|source| ToolError::Io { path: file.clone(), source })?;
            let table = parse_table(&ctx, &file.display().to_string(), &text)?;
            let witnesses = witness
                .iter()
                .map(|w| parse_tame(&ctx, w).map_err(|e| located(e, "automorphism", w)))
                .collect::<Result<Vec<_>, _>>()?;
            let (canon, report) = match decompose_blackbox(&table, &witnesses) {
                Ok(r) => r,
                Err(endw::Error::Decomposition(e)) => {
                    writeln!(out, "FAIL decompose {e}").expect("string");
                    return Ok((out, EXIT_CHECK_FAILED));
                }
                Err(e) => return Err(e.into()),
            };
            writeln!(out, "{canon}").expect("string");
            writeln!(out, "normalizer {}", report.normalizer).expect("string");
            match report.witness {
                Some(k) => writeln!(out, "witness {}", k + 1),
                None => writeln!(out, "witness none"),
            }
            .expect("string");
            for v in &report.violations {
                writeln!(out, "violation {} => {} expected {}", v.key, v.found, v.expected).expect("string");
            }
            if !report.violations.is_empty() {
                return Ok((out, EXIT_CHECK_FAILED));
            }
        }
        Command::Ideal { command: IdealCommand::Member { f, phi, index } } => {
            let f_el = parse_expression(&ctx, f).map_err(|e| located(e, "expression", f))?;
            let phi = parse_tame(&ctx, phi).map_err(|e| located(e, "automorphism", phi))?;
            if *index == 0 || *index > ctx.vars {
                return Err(ToolError::Usage(format!("generator index must be in 1..={}", ctx.vars)));
            }
            let ideal = PrincipalBasicIdeal::new(BasicElementWitness::new(phi, index - 1)?)?;
            let member = in_double_prime(&f_el, &ideal)?;
            writeln!(out, "generator {}", ideal.generator()).expect("string");
            writeln!(out, "residue {}", ideal.residue(&f_el)?).expect("string");
            writeln!(out, "{}", if member { "member" } else { "not a member" }).expect("string");
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::from_name(suite).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    ToolError::Usage(format!("unknown suite `{suite}`; expected one of {} or all", names.join(", ")))
                })?]
            };
            let lines = run_suites(&suites, &cli.suite_config());
            let failed = lines.iter().filter(|l| !l.pass).count();
            for l in &lines {
                writeln!(out, "{l}").expect("string");
            }
            writeln!(out, "summary {} passed {} failed", lines.len() - failed, failed).expect("string");
            return Ok((out, if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED }));
        }
    }
    Ok((out, EXIT_OK))
}
