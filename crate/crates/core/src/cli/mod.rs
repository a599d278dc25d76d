//! Experiment runner: one [`ExperimentConfig`] in, one JSON (or CSV) report out.
//!
//! Exit codes: `0` success, `1` a verification missed its threshold (or a
//! probe control was not recovered), `2` usage error. Output is deterministic
//! for a given config.

pub mod expr;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::euler_phi;
use crate::cot_expansion::{expand, ExpansionRecord};
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::hurwitz::hurwitz_zeta;
use crate::identities::{
    verify_exact_ratio, verify_lemma3, verify_lemma4, zeta_representation_probe, ResidualRecord, ZetaProbeRecord,
};
use crate::numerics::digits_to_bits;
use crate::relation::{find_integer_relation, inputs_digest, probe_dimension, ProbeMode, RelationReport, RelationReportRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 10;
pub const DEFAULT_BOUND: u64 = 1_000_000;

const DIMENSION_NOTE: &str = "for odd k and coprime q, r > 2: dim V_k(q) >= phi(q)/2 + 1 or dim V_k(r) >= phi(r)/2 + 1; \
a representation of zeta(k) by the minus values at q would force dim V_k(q) = phi(q)/2";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Integer table of D^{k-1}(pi cot pi z).
    ExpandCot,
    /// zeta(k, a/q); defaults to a = q = 1.
    EvalZeta,
    /// Reflection identity at (k, a, q).
    VerifyLemma3,
    /// Euler-factor identity at (k, q).
    VerifyLemma4,
    /// Exact cyclotomic ratio for odd k, checked numerically.
    ExactRatio,
    /// Relation search over a spanning set of V_k(q).
    ProbeDim,
    /// Search for zeta(k) in the span of the minus values, with controls.
    ProbeZeta,
    /// Relation search over user-supplied expressions.
    FindRelation,
    /// Whether a cyclotomic element lies in Q(zeta_d).
    SubfieldTest,
    /// Run a file of JSON configs, one per line.
    Batch,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Everything one run depends on. Batch lines are this struct in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ProbeMode>,
    #[serde(default, alias = "output_format")]
    pub format: OutputFormat,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            k: None,
            q: None,
            a: None,
            digits: None,
            bound: None,
            mode: None,
            format: OutputFormat::Json,
            values: Vec::new(),
            element: None,
            d: None,
        }
    }
}

/// Command line of the `chowla-milnor` binary.
#[derive(Debug, Parser)]
#[command(name = "chowla-milnor", version, about = "Hurwitz zeta identities and Chowla-Milnor dimension probes")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Config file for `batch`.
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub a: Option<u64>,
    /// Decimal digits of precision (at least 10).
    #[arg(long)]
    pub digits: Option<u32>,
    /// Largest absolute relation coefficient searched.
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<ProbeMode>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Expressions for `find-relation`, e.g. `pi^2` `hurwitz(2,1,3)` `sqrt(2)`.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub values: Vec<String>,
    /// Element for `subfield-test` as `q; c0, c1, ...`.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    #[arg(long)]
    pub d: Option<u64>,
}

impl Cli {
    pub fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            command: self.command,
            k: self.k,
            q: self.q,
            a: self.a,
            digits: self.digits,
            bound: self.bound,
            mode: self.mode,
            format: self.format,
            values: self.values.clone(),
            element: self.element.clone(),
            d: self.d,
        }
    }

    /// Runs either a single experiment or a batch file.
    pub fn execute(&self) -> Outcome {
        if self.command == Command::Batch {
            match &self.file {
                Some(path) => batch(path),
                None => Outcome::usage("batch needs a config file path"),
            }
        } else if let Some(extra) = &self.file {
            Outcome::usage(format!("unexpected argument `{}`", extra.display()))
        } else {
            run(&self.config())
        }
    }
}

/// Exit status plus the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Self::error(&Error::Usage(msg.into()))
    }

    fn error(e: &Error) -> Self {
        Outcome { exit_code: EXIT_USAGE, stdout: String::new(), stderr: format!("{e}\n") }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaValueRecord {
    pub k: u32,
    pub a: u64,
    pub q: u64,
    pub digits: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatioRecord {
    pub k: u32,
    pub a: u64,
    pub q: u64,
    /// Canonical text `q; c_0, c_1, …` in the power basis.
    pub element: String,
    /// `σ_{−1}(ρ) = −ρ` holds exactly.
    pub purely_imaginary: bool,
    pub check: ResidualRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeDimRecord {
    pub k: u32,
    pub q: u64,
    pub mode: ProbeMode,
    /// Dimension of the probed spanning set if it were independent.
    pub spanning_set_size: usize,
    pub report: RelationReportRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeZetaCliRecord {
    #[serde(flatten)]
    pub probe: ZetaProbeRecord,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldRecord {
    pub element: String,
    pub d: u64,
    pub in_subfield: bool,
}

/// Any single-run report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Report {
    Expansion(ExpansionRecord),
    Zeta(ZetaValueRecord),
    Residual(ResidualRecord),
    ExactRatio(ExactRatioRecord),
    ProbeDim(ProbeDimRecord),
    ProbeZeta(ProbeZetaCliRecord),
    Relation(RelationReportRecord),
    Subfield(SubfieldRecord),
}

fn missing(name: &str, command: Command) -> Error {
    let cmd = command.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Error::Usage(format!("{cmd} needs --{name}"))
}

fn signed(name: &str, x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Usage(format!("--{name} = {x} is out of range")))
}

/// Runs `config` and reports whether every check it performed passed.
pub fn evaluate(config: &ExperimentConfig) -> Result<(Report, bool)> {
    let cmd = config.command;
    let k = || config.k.ok_or_else(|| missing("k", cmd));
    let q = || config.q.ok_or_else(|| missing("q", cmd));
    let a = || config.a.ok_or_else(|| missing("a", cmd));
    let digits = config.digits.unwrap_or(DEFAULT_DIGITS);
    if digits < MIN_DIGITS {
        return Err(Error::Usage(format!("--digits must be at least {MIN_DIGITS}, got {digits}")));
    }
    let shown = digits as usize;
    let prec = digits_to_bits(digits);
    let bound = config.bound.unwrap_or(DEFAULT_BOUND);

    Ok(match cmd {
        Command::ExpandCot => (Report::Expansion(expand(k()?)?.record()), true),
        Command::EvalZeta => {
            let (k, a, q) = (k()?, config.a.unwrap_or(1), config.q.unwrap_or(1));
            let value = hurwitz_zeta(k, signed("a", a)?, signed("q", q)?, prec)?;
            (Report::Zeta(ZetaValueRecord { k, a, q, digits, value: value.to_decimal(shown) }), true)
        }
        Command::VerifyLemma3 => {
            let r = verify_lemma3(k()?, signed("a", a()?)?, signed("q", q()?)?, prec)?;
            (Report::Residual(r.record(shown)), r.pass)
        }
        Command::VerifyLemma4 => {
            let r = verify_lemma4(k()?, q()?, prec)?;
            (Report::Residual(r.record(shown)), r.pass)
        }
        Command::ExactRatio => {
            let (k, a, q) = (k()?, a()?, q()?);
            let (rho, check) = verify_exact_ratio(k, signed("a", a)?, signed("q", q)?, prec)?;
            let purely_imaginary = rho.galois_apply(-1)? == rho.neg();
            let pass = check.pass && purely_imaginary;
            let record =
                ExactRatioRecord { k, a, q, element: rho.to_string(), purely_imaginary, check: check.record(shown) };
            (Report::ExactRatio(record), pass)
        }
        Command::ProbeDim => {
            let (k, q) = (k()?, q()?);
            let mode = config.mode.unwrap_or(ProbeMode::Full);
            let report = if q == 2 { half_point_report(k, prec, bound)? } else { probe_dimension(k, q, mode, prec, bound)? };
            let spanning_set_size = match (q, mode) {
                (2, _) => 1,
                (_, ProbeMode::Full) => euler_phi(q) as usize,
                _ => euler_phi(q) as usize / 2,
            };
            let record = ProbeDimRecord { k, q, mode, spanning_set_size, report: report.record(shown) };
            (Report::ProbeDim(record), true)
        }
        Command::ProbeZeta => {
            let r = zeta_representation_probe(k()?, q()?, prec, bound)?;
            let ok = r.controls_recovered();
            (Report::ProbeZeta(ProbeZetaCliRecord { probe: r.record(shown), note: DIMENSION_NOTE.into() }), ok)
        }
        Command::FindRelation => {
            if config.values.is_empty() {
                return Err(missing("values", cmd));
            }
            let values = config.values.iter().map(|v| expr::evaluate(v, prec)).collect::<Result<Vec<_>>>()?;
            (Report::Relation(find_integer_relation(&values, prec, bound)?.record(shown)), true)
        }
        Command::SubfieldTest => {
            let text = config.element.as_deref().ok_or_else(|| missing("element", cmd))?;
            let d = config.d.ok_or_else(|| missing("d", cmd))?;
            let x: CyclotomicElement = text.parse()?;
            let in_subfield = x.is_in_subfield(d)?;
            (Report::Subfield(SubfieldRecord { element: x.to_string(), d, in_subfield }), true)
        }
        Command::Batch => return Err(Error::Usage("batch cannot be nested inside a config".into())),
    })
}

/// `V_k(2)` is spanned by the single value `ζ(k, 1/2)`, which is never zero.
fn half_point_report(k: u32, prec: u32, bound: u64) -> Result<RelationReport> {
    let v = hurwitz_zeta(k, 1, 2, prec)?;
    Ok(RelationReport {
        inputs_digest: inputs_digest(std::slice::from_ref(&v)),
        inputs: vec![v],
        relations: Vec::new(),
        coefficient_bound: bound,
        precision_bits: prec,
        empirical_independent_count: 1,
    })
}

/// Runs one experiment and renders its report.
pub fn run(config: &ExperimentConfig) -> Outcome {
    match evaluate(config) {
        Ok((report, pass)) => match render(&report, config.format) {
            Ok(stdout) => Outcome {
                exit_code: if pass { EXIT_OK } else { EXIT_FAILED },
                stdout,
                stderr: if pass { String::new() } else { "verification failed\n".into() },
            },
            Err(e) => Outcome::error(&e),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn render(report: &Report, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string(report).expect("reports serialize") + "\n"),
        OutputFormat::Csv => to_csv(report),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let joined = items.iter().map(scalar).collect::<Vec<_>>().join(";");
            out.push((prefix.to_string(), joined));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One header row and one data row; nested fields use dotted names and
/// scalar lists are joined with `;`.
fn to_csv(report: &Report) -> Result<String> {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut cells = Vec::new();
    flatten("", &value, &mut cells);
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Usage(format!("csv output failed: {e}"));
    w.write_record(cells.iter().map(|(k, _)| k)).map_err(io)?;
    w.write_record(cells.iter().map(|(_, v)| v)).map_err(io)?;
    let bytes = w.into_inner().map_err(|e| Error::Usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
}

/// One line of batch output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchLine {
    /// 1-based line number in the config file.
    pub line: usize,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn batch_line(line: usize, text: &str) -> BatchLine {
    let failed = |exit_code, msg: String| BatchLine { line, exit_code, report: None, error: Some(msg) };
    let config: ExperimentConfig = match serde_json::from_str(text) {
        Ok(c) => c,
        Err(e) => return failed(EXIT_USAGE, format!("malformed config: {e}")),
    };
    match evaluate(&config) {
        Ok((report, pass)) => BatchLine {
            line,
            exit_code: if pass { EXIT_OK } else { EXIT_FAILED },
            report: Some(report),
            error: None,
        },
        Err(e) => failed(EXIT_USAGE, e.to_string()),
    }
}

/// Runs every non-blank line of `text` as a JSON config, in order.
pub fn batch_lines(text: &str) -> (Vec<BatchLine>, i32) {
    let lines: Vec<BatchLine> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| batch_line(i + 1, l))
        .collect();
    let code = if lines.iter().all(|l| l.exit_code == EXIT_OK) { EXIT_OK } else { EXIT_FAILED };
    (lines, code)
}

/// Batch mode over a file; results are JSON lines in input order.
pub fn batch(path: &Path) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("cannot read {}: {e}", path.display())),
    };
    let (lines, exit_code) = batch_lines(&text);
    let stdout: String =
        lines.iter().map(|l| serde_json::to_string(l).expect("batch lines serialize") + "\n").collect();
    let failures: String = lines
        .iter()
        .filter(|l| l.exit_code != EXIT_OK)
        .map(|l| format!("line {}: exit {}\n", l.line, l.exit_code))
        .collect();
    Outcome { exit_code, stdout, stderr: failures }
}
