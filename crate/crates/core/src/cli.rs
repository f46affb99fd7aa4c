//! Command-line front end.
//!
//! Exit codes: 0 on success (and when every verification check passes),
//! 1 when a verification check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::formulas::{self, Family, GfRequest};
use crate::oracle::{CheckReport, Oracle, Suite, DEFAULT_MAX_BRUTE_N, TABLE1};
use crate::partition::{parse_word, PartitionError, Pattern, SetPartition};

#[derive(Debug, Parser)]
#[command(
    name = "noncrossing",
    version,
    about = "Exact counts of pattern-avoiding set partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
    /// Lines `n a(n)` starting at n = 0.
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Brute,
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of partitions of [n] avoiding 12...k12...d (or --pattern).
    Count {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Arbitrary forbidden pattern, counted by enumeration.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_BRUTE_N)]
        max_brute_n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Coefficients c_0..c_order of a generating function.
    Series {
        /// One of k2, k1, k0, q.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Grid of (k,2)-noncrossing counts; the defaults give k = 2..6, n = 0..12.
    Table {
        /// Inclusive range such as `2..6`, or a single value.
        #[arg(long, default_value = "2..6")]
        k: Range,
        #[arg(long, default_value = "0..12")]
        n: Range,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Whether a partition contains a pattern, with a witness.
    Check {
        partition: String,
        pattern: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Runs the cross-check suite; exit code 1 if any check fails.
    Verify {
        #[arg(long, default_value = "quick")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_MAX_BRUTE_N)]
        max_brute_n: usize,
        /// CSV with rows `k,c0,...,c12` for k = 2..6 replacing the published
        /// table (as written by `table --format csv`).
        #[arg(long)]
        table1: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
}

/// Inclusive integer range `a..b` (or a single value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range(RangeInclusive<usize>);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid range {s:?} (expected a..b)");
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
            None => (s, s),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(Range(lo..=hi))
    }
}

/// A usage or input error, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}

/// Parses `args` (including the program name) and executes the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(command: Command) -> Result<(String, u8), UsageError> {
    let text = match command {
        Command::Count {
            k,
            d,
            n,
            method,
            pattern,
            max_brute_n,
            format,
        } => cmd_count(k, d, n, method, pattern.as_deref(), max_brute_n, format)?,
        Command::Series {
            family,
            k,
            l,
            order,
            format,
        } => cmd_series(family, k, l, order, format)?,
        Command::Table { k, n, format } => cmd_table(k.0, n.0, format)?,
        Command::Check {
            partition,
            pattern,
            format,
        } => cmd_check(&partition, &pattern, format)?,
        Command::Verify {
            suite,
            max_brute_n,
            table1,
            format,
        } => {
            return cmd_verify(suite, max_brute_n, table1, format);
        }
    };
    Ok((text, 0))
}

fn cmd_count(
    k: Option<usize>,
    d: Option<usize>,
    n: usize,
    method: Method,
    pattern: Option<&str>,
    max_brute_n: usize,
    format: OutputFormat,
) -> Result<String, UsageError> {
    let oracle = Oracle::new(max_brute_n);
    let brute = |p: &Pattern| -> Result<BigInt, UsageError> {
        let counts = oracle.count_at(p, n)?;
        Ok(counts)
    };

    if let Some(pattern) = pattern {
        if method == Method::Series {
            return Err(UsageError(
                "no closed form for a free pattern; use --method brute".into(),
            ));
        }
        let p: Pattern = pattern.parse()?;
        let count = brute(&p)?;
        let record = json!({ "pattern": p.to_string(), "n": n, "count": count.to_string() });
        return Ok(render_count(
            &[("pattern", p.to_string())],
            n,
            &count,
            record,
            format,
        ));
    }

    let (k, d) = match (k, d) {
        (Some(k), Some(d)) => (k, d),
        _ => {
            return Err(UsageError(
                "--k and --d are required unless --pattern is given".into(),
            ))
        }
    };
    let crossing = Pattern::crossing(k, d)?;
    let count = match (method, d) {
        (Method::Brute, _) => brute(&crossing)?,
        (_, 2) => formulas::gf_k2(k, n)?.swap_remove(n),
        (_, 1) => formulas::gf_k1(k, n)?.swap_remove(n),
        (_, 0) => formulas::gf_k0(k, n),
        (Method::Series, _) => {
            return Err(UsageError(
                "no closed form; use --pattern with brute".into(),
            ));
        }
        (Method::Auto, _) => brute(&crossing)?,
    };
    let record = json!({ "k": k, "d": d, "n": n, "count": count.to_string() });
    Ok(render_count(
        &[("k", k.to_string()), ("d", d.to_string())],
        n,
        &count,
        record,
        format,
    ))
}

fn render_count(
    keys: &[(&str, String)],
    n: usize,
    count: &BigInt,
    record: Value,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Plain => format!("{count}\n"),
        OutputFormat::Bfile => format!("{n} {count}\n"),
        OutputFormat::Json => format!("{record}\n"),
        OutputFormat::Csv => {
            let header: Vec<&str> = keys.iter().map(|(k, _)| *k).collect();
            let values: Vec<&str> = keys.iter().map(|(_, v)| v.as_str()).collect();
            format!(
                "{},n,count\n{},{n},{count}\n",
                header.join(","),
                values.join(",")
            )
        }
    }
}

fn cmd_series(
    family: Family,
    k: Option<usize>,
    l: Option<usize>,
    order: usize,
    format: OutputFormat,
) -> Result<String, UsageError> {
    let (name, parameter) = match family {
        Family::Q => (
            "l",
            l.ok_or_else(|| UsageError("family q needs --l".into()))?,
        ),
        _ => (
            "k",
            k.ok_or_else(|| UsageError(format!("family {family} needs --k")))?,
        ),
    };
    let coeffs = GfRequest {
        family,
        parameter,
        order,
    }
    .expand()?;
    let mut s = String::new();
    match format {
        OutputFormat::Plain => {
            let line: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            writeln!(s, "{}", line.join(",")).unwrap();
        }
        OutputFormat::Bfile => write_bfile(&mut s, &coeffs),
        OutputFormat::Csv => {
            writeln!(s, "n,count").unwrap();
            for (n, c) in coeffs.iter().enumerate() {
                writeln!(s, "{n},{c}").unwrap();
            }
        }
        OutputFormat::Json => {
            let records: Vec<Value> = coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| match family.d() {
                    Some(d) => json!({ "k": parameter, "d": d, "n": n, "count": c.to_string() }),
                    None => json!({ name: parameter, "n": n, "count": c.to_string() }),
                })
                .collect();
            writeln!(s, "{}", Value::Array(records)).unwrap();
        }
    }
    Ok(s)
}

fn write_bfile(s: &mut String, coeffs: &[BigInt]) {
    for (n, c) in coeffs.iter().enumerate() {
        writeln!(s, "{n} {c}").unwrap();
    }
}

fn cmd_table(
    ks: RangeInclusive<usize>,
    ns: RangeInclusive<usize>,
    format: OutputFormat,
) -> Result<String, UsageError> {
    if *ks.start() < 2 {
        return Err(UsageError("table needs k >= 2".into()));
    }
    let n_max = *ns.end();
    let rows: Vec<(usize, Vec<BigInt>)> = ks
        .clone()
        .map(|k| Ok((k, formulas::gf_k2(k, n_max)?[*ns.start()..].to_vec())))
        .collect::<Result<_, UsageError>>()?;
    let mut s = String::new();
    match format {
        OutputFormat::Plain => {
            let mut cells: Vec<Vec<String>> = vec![std::iter::once("k\\n".to_string())
                .chain(ns.clone().map(|n| n.to_string()))
                .collect()];
            for (k, row) in &rows {
                cells.push(
                    std::iter::once(k.to_string())
                        .chain(row.iter().map(BigInt::to_string))
                        .collect(),
                );
            }
            let widths: Vec<usize> = (0..cells[0].len())
                .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap())
                .collect();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}"))
                    .collect();
                writeln!(s, "{}", line.join(" ")).unwrap();
            }
        }
        OutputFormat::Csv => {
            let header: Vec<String> = ns.clone().map(|n| n.to_string()).collect();
            writeln!(s, "k,{}", header.join(",")).unwrap();
            for (k, row) in &rows {
                let vals: Vec<String> = row.iter().map(BigInt::to_string).collect();
                writeln!(s, "{k},{}", vals.join(",")).unwrap();
            }
        }
        OutputFormat::Json => {
            let records: Vec<Value> = rows
                .iter()
                .flat_map(|(k, row)| {
                    ns.clone().zip(row).map(
                        move |(n, c)| json!({ "k": k, "d": 2, "n": n, "count": c.to_string() }),
                    )
                })
                .collect();
            writeln!(s, "{}", Value::Array(records)).unwrap();
        }
        OutputFormat::Bfile => {
            for (k, row) in &rows {
                writeln!(s, "# k={k}").unwrap();
                for (n, c) in ns.clone().zip(row) {
                    writeln!(s, "{n} {c}").unwrap();
                }
            }
        }
    }
    Ok(s)
}

fn cmd_check(partition: &str, pattern: &str, format: OutputFormat) -> Result<String, UsageError> {
    let p = SetPartition::new(parse_word(partition)?)?;
    let t = Pattern::new(parse_word(pattern)?).map_err(|e| match e {
        PartitionError::EmptyWord => UsageError("empty pattern".into()),
        other => UsageError(other.to_string()),
    })?;
    let witness = p.witness(&t);
    let joined = |w: &[usize]| w.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let s = match format {
        OutputFormat::Plain => match &witness {
            Some(w) => format!("contains\nwitness {}\n", joined(w)),
            None => "avoids\n".to_string(),
        },
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "partition": p.to_string(),
                "pattern": t.to_string(),
                "contains": witness.is_some(),
                "witness": witness,
            })
        ),
        _ => return Err(UsageError("check supports --format plain or json".into())),
    };
    Ok(s)
}

/// Reads rows `k,c0,...,c12` for k = 2..6; a header row starting with `k`
/// and blank lines are skipped.
fn read_table(path: &PathBuf) -> Result<[[u64; 13]; 5], UsageError> {
    let text = std::fs::read_to_string(path)?;
    let mut table = [[0u64; 13]; 5];
    let mut seen = [false; 5];
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('k'))
    {
        let fields: Vec<u64> = line
            .split(',')
            .map(|f| f.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| UsageError(format!("bad table row {line:?}")))?;
        let (k, vals) = fields
            .split_first()
            .ok_or_else(|| UsageError("empty row".into()))?;
        let row = (*k as usize)
            .checked_sub(2)
            .filter(|&r| r < 5 && vals.len() == 13)
            .ok_or_else(|| {
                UsageError(format!("table row {line:?} needs k in 2..6 and 13 values"))
            })?;
        table[row].copy_from_slice(vals);
        seen[row] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(UsageError("table must have rows for k = 2..6".into()));
    }
    Ok(table)
}

fn cmd_verify(
    suite: Suite,
    max_brute_n: usize,
    table1: Option<PathBuf>,
    format: OutputFormat,
) -> Result<(String, u8), UsageError> {
    let table = match &table1 {
        Some(path) => read_table(path)?,
        None => TABLE1,
    };
    let reports = Oracle::new(max_brute_n).run_suite(suite, Some(&table))?;
    let all_pass = reports.iter().all(CheckReport::passed);
    let s = match format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string(&reports).unwrap()),
        OutputFormat::Plain => plain_reports(&reports),
        _ => return Err(UsageError("verify supports --format plain or json".into())),
    };
    Ok((s, if all_pass { 0 } else { 1 }))
}

fn plain_reports(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(s, "{status} {} {}", r.name, params.join(" ")).unwrap();
        if let Some(d) = &r.first_discrepancy {
            writeln!(
                s,
                "    first discrepancy at {}: expected {}, got {}",
                d.index, d.expected, d.actual
            )
            .unwrap();
        }
        for note in &r.notes {
            writeln!(s, "    note: {note}").unwrap();
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(s, "{passed}/{} checks passed", reports.len()).unwrap();
    s
}
