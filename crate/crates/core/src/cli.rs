//! The `lgroup` command line.
//!
//! ```text
//! lgroup check --group cyclic:3 --prime 3
//! lgroup sweep --max-order 16 --primes 2,3,5,7 --out gap.csv
//! lgroup verify --group dihedral:4 --prime 3 --format structured
//! lgroup derivations --group symmetric:3 --prime 5
//! ```
//!
//! Exit status is 0 on success (whatever the mathematical verdicts), 1 on
//! usage errors (bad flags, unparsable specs, order cap exceeded, I/O) and
//! 2 when an internal identity fails to verify.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::amenability::{
    certify, derivation_spaces, sweep, Bimodule, Certificate, DerivationReport, SweepRow,
};
use crate::catalog::GroupSpec;
use crate::field::{FieldDescriptor, Prime};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::hopf::{eq1_check, lemma2_iso_check, verify_hopf_axioms, CheckReport, QuotientReport};
use crate::{Error, Execution};

/// Environment variable overriding the largest group order accepted.
pub const ORDER_CAP_VAR: &str = "LGROUP_ORDER_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lgroup",
    version,
    about = "Exact certificates for p-adic group algebras of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Johnson and Schikhof verdicts, virtual diagonal and invariant checks for one group.
    Check {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: Prime,
    },
    /// Johnson/Schikhof table over the catalog.
    Sweep {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<Prime>,
        /// Run rows one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Hopf axioms, the E*/E compatibility and the enveloping quotient isomorphism.
    Verify {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: Prime,
    },
    /// Derivation and inner-derivation spaces for the stock bimodules.
    Derivations {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: Prime,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_invariant_failure() => EXIT_INVARIANT,
            CliError::Failed(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        }
    }
}

/// Order cap from the environment, falling back to the default.
pub fn order_cap() -> Result<usize, String> {
    match std::env::var(ORDER_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{ORDER_CAP_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing regular output to `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "lgroup: {e}");
            e.exit_code()
        }
    }
}

fn build(spec: &GroupSpec, cap: usize) -> Result<Arc<FiniteGroup>, CliError> {
    if let Some(order) = spec.order().filter(|n| *n > cap) {
        return Err(CliError::Usage(format!(
            "group {spec} has order {order}, above the order cap {cap} (set {ORDER_CAP_VAR} to raise it)"
        )));
    }
    let g = spec.build().map_err(Error::from)?;
    if g.order() > cap {
        return Err(CliError::Usage(format!(
            "group {spec} has order {}, above the order cap {cap} (set {ORDER_CAP_VAR} to raise it)",
            g.order()
        )));
    }
    Ok(Arc::new(g))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, body),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cap = order_cap().map_err(CliError::Usage)?;
    match &cli.command {
        Command::Check { group, prime } => {
            let g = build(group, cap)?;
            let cert = certify(&g, &FieldDescriptor::q_p(*prime), cap)?;
            let body = match cli.format {
                Format::Structured => json(&cert),
                Format::Text => render_certificate(&cert),
            };
            emit(&cli.out, stdout, &body)?;
            if !cert.all_passed() {
                return Err(CliError::Failed(format!(
                    "checks failed: {}",
                    cert.failed_checks().join(", ")
                )));
            }
        }
        Command::Sweep {
            max_order,
            primes,
            sequential,
        } => {
            if *max_order > cap {
                return Err(CliError::Usage(format!(
                    "--max-order {max_order} is above the order cap {cap} (set {ORDER_CAP_VAR} to raise it)"
                )));
            }
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            let rows = sweep(*max_order, primes, cap, exec)?;
            let table = sweep_table(&rows);
            let doc = json(&rows);
            match &cli.out {
                Some(path) => {
                    write_file(path, &table)?;
                    write_file(&path.with_extension("json"), &doc)?;
                }
                None => emit(
                    &None,
                    stdout,
                    match cli.format {
                        Format::Text => &table,
                        Format::Structured => &doc,
                    },
                )?,
            }
        }
        Command::Verify { group, prime } => {
            let g = build(group, cap)?;
            let report = VerifyReport {
                group: g.name().to_string(),
                prime: prime.get(),
                hopf: verify_hopf_axioms(&g, *prime),
                dual_compatibility: eq1_check(&g, *prime, Execution::default()),
                quotient: lemma2_iso_check(&g, *prime, cap)?,
            };
            let body = match cli.format {
                Format::Structured => json(&report),
                Format::Text => render_verify(&report),
            };
            emit(&cli.out, stdout, &body)?;
            if !report.all_passed() {
                return Err(CliError::Failed("verification checks failed".into()));
            }
        }
        Command::Derivations { group, prime } => {
            let g = build(group, cap)?;
            let reports = Bimodule::stock(&g)?
                .iter()
                .map(|x| derivation_spaces(&g, x))
                .collect::<Result<Vec<_>, _>>()?;
            let doc = DerivationDocument {
                group: g.name().to_string(),
                prime: prime.get(),
                bimodules: reports,
            };
            let body = match cli.format {
                Format::Structured => json(&doc),
                Format::Text => render_derivations(&doc),
            };
            emit(&cli.out, stdout, &body)?;
            if !doc.bimodules.iter().all(DerivationReport::all_inner) {
                return Err(CliError::Failed(
                    "found a derivation that is not inner".into(),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    group: String,
    prime: u64,
    hopf: CheckReport,
    dual_compatibility: CheckReport,
    quotient: QuotientReport,
}

impl VerifyReport {
    fn all_passed(&self) -> bool {
        self.hopf.all_passed() && self.dual_compatibility.all_passed() && self.quotient.all_passed()
    }
}

#[derive(Debug, Serialize)]
struct DerivationDocument {
    group: String,
    prime: u64,
    bimodules: Vec<DerivationReport>,
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn render_certificate(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group      {} (order {})", c.group.name, c.group.order);
    let _ = writeln!(s, "prime      {}", c.prime);
    let norm = c
        .johnson
        .mean_norm_exponent
        .map_or("none".to_string(), |a| a.to_string());
    let _ = writeln!(
        s,
        "johnson    {} (mean norm exponent {norm})",
        c.johnson.amenable
    );
    if let Some(m) = &c.johnson.mean {
        let first = m
            .values()
            .first()
            .map(ToString::to_string)
            .unwrap_or_default();
        let _ = writeln!(s, "mean       constant {first} on every element");
    }
    let _ = writeln!(s, "schikhof   {}", c.schikhof.amenable);
    if let Some(w) = &c.schikhof.method_lattice.witness {
        let _ = writeln!(
            s,
            "witness    S1 = {{{}}}, S2 = {{{}}}, index {}",
            w.s1.join(", "),
            w.s2.join(", "),
            w.index
        );
    }
    let _ = writeln!(
        s,
        "lattice    {} pairs checked, {} divisible by p",
        c.schikhof.method_lattice.pairs_checked, c.schikhof.method_lattice.failing_pairs
    );
    let g = c.diagonal.tensor.tensor();
    let group = g.group();
    let terms: Vec<String> = group
        .elements()
        .flat_map(|x| group.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| !g.coeff(x, y).is_zero())
        .map(|(x, y)| {
            format!(
                "{} δ_{}⊗δ_{}",
                g.coeff(x, y),
                group.label(x),
                group.label(y)
            )
        })
        .collect();
    let _ = writeln!(s, "diagonal   {}", terms.join(" + "));
    for (name, v) in &c.checks {
        let _ = writeln!(s, "check      {name}: {v}");
    }
    s
}

fn render_verify(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group {} prime {}", r.group, r.prime);
    for c in r
        .hopf
        .checks
        .iter()
        .chain(&r.dual_compatibility.checks)
        .chain(&r.quotient.checks)
    {
        let _ = writeln!(
            s,
            "{:<32} {:>6} inputs  {}",
            c.name,
            c.checked,
            pass(c.passed)
        );
        for f in &c.failures {
            let _ = writeln!(s, "    failed on {f}");
        }
    }
    let _ = writeln!(
        s,
        "{:<32} {:>6}/{:<6} {}",
        "quotient_dimension",
        r.quotient.quotient_dim,
        r.quotient.expected_dim,
        pass(r.quotient.quotient_dim == r.quotient.expected_dim)
    );
    s
}

fn render_derivations(d: &DerivationDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group {} prime {}", d.group, d.prime);
    for r in &d.bimodules {
        let _ = writeln!(
            s,
            "{:<14} dim X {:>4}  derivations {:>4}  inner {:>4}  all inner {}",
            r.bimodule,
            r.module_dim,
            r.derivation_dim,
            r.inner_dim,
            pass(r.all_inner())
        );
    }
    s
}

/// Comma-separated rendering with a header row.
pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("lgroup").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_cyclic_three() {
        let (code, out, _) = run_capture(&["check", "--group", "cyclic:3", "--prime", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("johnson    true"));
        assert!(out.contains("schikhof   false"));
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_capture(&["check", "--group", "cyclic:x", "--prime", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("\"x\""), "{err}");
        let (code, _, err) = run_capture(&["check", "--group", "cyclic:3", "--prime", "4"]);
        assert_eq!(code, 1, "{err}");
        let (code, _, err) = run_capture(&["check", "--group", "cyclic:30", "--prime", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap 24"), "{err}");
        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn sweep_table_quotes_product_names() {
        let rows = vec![SweepRow {
            group: "product:2,3".into(),
            order: 6,
            prime: 5,
            johnson: true,
            schikhof: true,
            mean_norm_exponent: 0,
            p_divides_order: false,
        }];
        let t = sweep_table(&rows);
        assert_eq!(
            t,
            "group,order,prime,johnson,schikhof,mean_norm_exponent,p_divides_order\n\"product:2,3\",6,5,true,true,0,false\n"
        );
    }
}
