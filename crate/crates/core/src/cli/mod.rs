//! `reecd` command line: parses a run configuration, executes the selected
//! checks for every `(f, d)` and renders one JSON or Markdown report.

mod markdown;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::elimination::{
    degree_lemma_checks, degree_sets_check, degree_table_check, elimination_check,
    eta_inertia_check, final_degree_check, gcd_check, maximal_filter_check,
    solvable_quotient_checks, step3_divisibility_check, Bounds, CheckReport, EliminationError,
    Status,
};
use crate::exactmath::divisors;
use crate::ree::{AlmostSimpleSpec, DegreeFormulas, ReeParams};

pub use markdown::render_markdown;

#[derive(Debug, Parser)]
#[command(
    name = "reecd",
    version,
    about = "Character-degree checks for almost simple groups with socle 2G2(3^f)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree table per f, certified and superset degree sets per (f, d)
    Degrees(Opts),
    /// Maximal subgroups and the index divisibility filter
    Maximals(Opts),
    /// Chief-factor candidate elimination
    Eliminate(Opts),
    /// Arithmetic lemma checks
    Lemmas(Opts),
    /// Everything above
    All(Opts),
}

impl Command {
    fn parts(&self) -> (CommandKind, &Opts) {
        match self {
            Command::Degrees(o) => (CommandKind::Degrees, o),
            Command::Maximals(o) => (CommandKind::Maximals, o),
            Command::Eliminate(o) => (CommandKind::Eliminate, o),
            Command::Lemmas(o) => (CommandKind::Lemmas, o),
            Command::All(o) => (CommandKind::All, o),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Odd values of f >= 3: a list such as 3,5,7 or an inclusive range A..B
    #[arg(long = "f", value_name = "LIST|A..B")]
    pub f: String,
    /// `all` or a list of extension indices, each dividing every f
    #[arg(long = "d", value_name = "all|LIST", default_value = "all")]
    pub d: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also require e·k to match a 3-adic valuation in the degree superset
    #[arg(long)]
    pub strict: bool,
    /// Omit the timestamp header
    #[arg(long)]
    pub no_header: bool,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Read the degree formulas from this file instead of the built-in table
    #[arg(long, value_name = "PATH")]
    pub degree_table: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub m_max: u32,
    #[arg(long, default_value_t = 200)]
    pub n_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Degrees,
    Maximals,
    Eliminate,
    Lemmas,
    All,
}

impl CommandKind {
    fn name(&self) -> &'static str {
        match self {
            CommandKind::Degrees => "degrees",
            CommandKind::Maximals => "maximals",
            CommandKind::Eliminate => "eliminate",
            CommandKind::Lemmas => "lemmas",
            CommandKind::All => "all",
        }
    }

    fn runs(&self, part: CommandKind) -> bool {
        *self == CommandKind::All || *self == part
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DPolicy {
    AllDivisors,
    List(Vec<u32>),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub f_values: Vec<u32>,
    pub d_policy: DPolicy,
    pub format: Format,
    pub strict: bool,
    pub header: bool,
    pub bounds: Bounds,
    pub formulas: DegreeFormulas,
    pub table_source: String,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError::Invalid(msg.into()))
}

/// Parses `3,5,7` or `A..B` (odd values in the inclusive range).
pub fn parse_f_values(spec: &str) -> Result<Vec<u32>, UsageError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return invalid("empty f list");
    }
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| UsageError::Invalid(format!("not an integer: {s:?}")))
    };
    let raw: Vec<i64> = match spec.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            (a..=b).filter(|v| v.rem_euclid(2) == 1).collect()
        }
        None => spec.split(',').map(parse).collect::<Result<_, _>>()?,
    };
    if raw.is_empty() {
        return invalid("empty f list");
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in raw {
        let params = ReeParams::new(f).map_err(|e| UsageError::Invalid(e.to_string()))?;
        if seen.insert(params.f()) {
            out.push(params.f());
        }
    }
    Ok(out)
}

pub fn parse_d_policy(spec: &str, f_values: &[u32]) -> Result<DPolicy, UsageError> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(DPolicy::AllDivisors);
    }
    let mut ds = Vec::new();
    for tok in spec.split(',') {
        let d: u32 = tok.trim().parse().map_err(|_| {
            UsageError::Invalid(format!(
                "d must be `all` or positive integers (got {tok:?})"
            ))
        })?;
        if d == 0 {
            return invalid("d must be positive");
        }
        if let Some(f) = f_values.iter().find(|&&f| f % d != 0) {
            return invalid(format!("d = {d} does not divide f = {f}"));
        }
        if !ds.contains(&d) {
            ds.push(d);
        }
    }
    if ds.is_empty() {
        return invalid("empty d list");
    }
    Ok(DPolicy::List(ds))
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Result<Self, UsageError> {
        let (kind, opts) = command.parts();
        let f_values = parse_f_values(&opts.f)?;
        let d_policy = parse_d_policy(&opts.d, &f_values)?;
        let bounds = Bounds {
            m_max: opts.m_max,
            n_max: opts.n_max,
        };
        if kind.runs(CommandKind::Eliminate) {
            if bounds.m_max < 20 || bounds.n_max < 8 {
                return invalid("need --m-max >= 20 and --n-max >= 8");
            }
            let worst = f_values.iter().max().copied().unwrap_or(3);
            if u64::from(bounds.m_max + 1) * u64::from(bounds.m_max) / 2 <= 3 * u64::from(worst) {
                return invalid(format!(
                    "--m-max {} too small for f = {worst}",
                    bounds.m_max
                ));
            }
        }
        let (formulas, table_source) = match &opts.degree_table {
            None => (DegreeFormulas::standard(), "built-in".to_string()),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| UsageError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                let formulas = DegreeFormulas::parse(&text)
                    .map_err(|e| UsageError::Invalid(format!("{}: {e}", path.display())))?;
                (formulas, path.display().to_string())
            }
        };
        Ok(RunConfig {
            command: kind,
            f_values,
            d_policy,
            format: opts.format,
            strict: opts.strict,
            header: !opts.no_header,
            bounds,
            formulas,
            table_source,
            out: opts.out.clone(),
        })
    }

    fn d_values(&self, f: u32) -> Vec<u32> {
        match &self.d_policy {
            DPolicy::AllDivisors => divisors(u64::from(f))
                .into_iter()
                .map(|d| d as u32)
                .collect(),
            DPolicy::List(ds) => ds.clone(),
        }
    }

    fn config_json(&self) -> Value {
        json!({
            "command": self.command.name(),
            "f": self.f_values,
            "d": match &self.d_policy {
                DPolicy::AllDivisors => json!("all"),
                DPolicy::List(ds) => json!(ds),
            },
            "strict": self.strict,
            "m_max": self.bounds.m_max,
            "n_max": self.bounds.n_max,
            "degree_table": self.table_source,
        })
    }
}

/// Runs every check selected by `config`, in a fixed order.
pub fn run_checks(config: &RunConfig) -> Vec<CheckReport> {
    let cmd = config.command;
    let mut reports = Vec::new();
    for &f in &config.f_values {
        let params = ReeParams::new(i64::from(f)).expect("validated f");
        let (table_report, table) = degree_table_check(&config.formulas, &params);
        reports.push(table_report);
        let Some(table) = table else { continue };
        if cmd.runs(CommandKind::Lemmas) {
            reports.push(gcd_check(&params));
            reports.push(eta_inertia_check(&params));
        }
        for d in config.d_values(f) {
            let spec = AlmostSimpleSpec::with_table(table.clone(), d).expect("validated d");
            if cmd.runs(CommandKind::Degrees) {
                reports.push(degree_sets_check(&spec));
            }
            if cmd.runs(CommandKind::Lemmas) {
                reports.extend(degree_lemma_checks(&spec));
                match solvable_quotient_checks(&spec) {
                    Ok(r) => reports.extend(r),
                    Err(e) => reports.push(CheckReport {
                        check_id: "step1.solvable-quotient".into(),
                        f,
                        d: Some(d),
                        status: Status::NotApplicable,
                        detail: e.to_string(),
                        witness: Value::Null,
                        anchor: "d != 1".into(),
                    }),
                }
                reports.push(step3_divisibility_check(&spec));
                reports.push(final_degree_check(&spec));
            }
            if cmd.runs(CommandKind::Maximals) {
                reports.push(maximal_filter_check(&spec));
            }
            if cmd.runs(CommandKind::Eliminate) {
                match elimination_check(&spec, config.bounds, config.strict) {
                    Ok(r) => reports.push(r),
                    Err(e) => reports.push(elimination_error_report(f, d, &e)),
                }
            }
        }
    }
    reports
}

fn elimination_error_report(f: u32, d: u32, e: &EliminationError) -> CheckReport {
    CheckReport {
        check_id: "step2.elimination".into(),
        f,
        d: Some(d),
        status: Status::Fail,
        detail: e.to_string(),
        witness: json!({ "error": e.to_string() }),
        anchor: "|S|_p^k = 3^{3f}".into(),
    }
}

/// One line per failed check: id, `(f, d)` and the evaluated relation.
pub fn failure_line(r: &CheckReport) -> String {
    let d = r.d.map_or("-".to_string(), |d| d.to_string());
    format!("FAIL {} f={} d={}: {}", r.check_id, r.f, d, r.detail)
}

const CLOSURE_NOTE: &str = "Lie type beyond m_max: the smallest Steinberg exponent at rank \
m_max + 1 is (m_max + 1)m_max/2 > 3f, so e·N·k = 3f has no solution. A_n beyond n_max: \
alt_16_witness supplies a degree divisible by 16 for every n >= 8.";

pub fn build_report(config: &RunConfig, reports: &[CheckReport], unix_time: Option<u64>) -> Value {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(failure_line)
        .collect();
    let mut summary = json!({
        "total": reports.len(),
        "pass": count(Status::Pass),
        "fail": count(Status::Fail),
        "not_applicable": count(Status::NotApplicable),
        "status": if failures.is_empty() { "pass" } else { "fail" },
        "failures": failures,
    });
    if config.command.runs(CommandKind::Eliminate) {
        summary["closure"] = json!(CLOSURE_NOTE);
    }
    let mut report = json!({
        "config": config.config_json(),
        "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        "summary": summary,
    });
    if let Some(t) = unix_time {
        report["header"] = json!({
            "generator": format!("reecd {}", env!("CARGO_PKG_VERSION")),
            "unix_time": t,
        });
    }
    report
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Md => render_markdown(report),
    }
}

/// Entry point shared by the binary and the tests. Returns the exit code:
/// 0 when every check passes, 1 when one fails, 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let config = match RunConfig::from_command(&cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let reports = run_checks(&config);
    let unix_time = config.header.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let text = render(&build_report(&config, &reports, unix_time), config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            // a closed pipe downstream is not an error worth panicking over
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
        }
    }
    let mut failed = false;
    for r in reports.iter().filter(|r| !r.passed()) {
        eprintln!("{}", failure_line(r));
        failed = true;
    }
    i32::from(failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_lists_and_ranges() {
        assert_eq!(parse_f_values("3,5,7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_f_values("3..11").unwrap(), vec![3, 5, 7, 9, 11]);
        assert_eq!(parse_f_values("4..7").unwrap(), vec![5, 7]);
        assert_eq!(parse_f_values("5,3,5").unwrap(), vec![5, 3]);
        let e = parse_f_values("4").unwrap_err().to_string();
        assert!(e.contains("f must be odd and ≥ 3"), "{e}");
        assert!(parse_f_values("").is_err());
        assert!(parse_f_values("8..8").is_err());
        assert!(parse_f_values("1..5").is_err());
        assert!(parse_f_values("x").is_err());
    }

    #[test]
    fn d_policies() {
        assert_eq!(parse_d_policy("all", &[9]).unwrap(), DPolicy::AllDivisors);
        assert_eq!(
            parse_d_policy("1,3", &[9, 15]).unwrap(),
            DPolicy::List(vec![1, 3])
        );
        let e = parse_d_policy("5", &[9]).unwrap_err().to_string();
        assert_eq!(e, "d = 5 does not divide f = 9");
        assert!(parse_d_policy("0", &[9]).is_err());
    }
}
