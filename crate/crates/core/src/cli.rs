//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a violated invariant,
//! 2 for usage errors (bad arguments, unparsable input, exceeded caps).
//! JSON and CSV schemas are documented in the README.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dist::{
    check_symmetry, joint_distribution, mahonian_numbers, stat_distribution, table_stat_joint,
    DistributionVector, JointMatrix, Statistic, MAHONIAN_DP_CAP,
};
use crate::error::Error;
use crate::perm::{EnumLimit, Permutation};
use crate::table::{Codec, InversionTable};
use crate::verify::{verify, Check, Fault, VerifyOptions, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistStat {
    Inv,
    Maj,
    /// Dynamic-programming Mahonian numbers (no enumeration; n <= 20).
    Mahonian,
}

impl DistStat {
    fn name(self) -> &'static str {
        match self {
            DistStat::Inv => "inv",
            DistStat::Maj => "maj",
            DistStat::Mahonian => "mahonian",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mahonian",
    version,
    about = "Permutation statistics, inversion-table codecs and Mahonian numbers"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    pub format: OutputFormat,

    /// Override the exhaustive-enumeration cap (default 10, at most 20).
    #[arg(long = "max-enum", global = true)]
    pub max_enum: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print inv, maj and descent positions of a permutation.
    Stats {
        /// `241350` (single digits, n <= 10) or `2,4,1,3,5,0`.
        word: String,
    },
    /// Decode an inversion table into a permutation.
    Decode {
        #[arg(long, value_enum)]
        codec: Codec,
        /// Comma-separated entries, e.g. `0,1,0,3,3`.
        table: String,
    },
    /// Encode a permutation as an inversion table.
    Encode {
        #[arg(long, value_enum)]
        codec: Codec,
        word: String,
    },
    /// Print the distribution of a statistic as (k, count) rows.
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        stat: DistStat,
    },
    /// Print the joint (inv, maj) count matrix.
    Joint {
        #[arg(long)]
        n: usize,
        /// Count (sum, ascent sum) over inversion tables instead of (inv, maj) over permutations.
        #[arg(long)]
        tables: bool,
    },
    /// Run invariant checks exhaustively for every n <= n-max.
    Verify {
        #[arg(long = "n-max")]
        n_max: usize,
        /// Checks to run; repeat or comma-separate. Defaults to all.
        #[arg(long = "check", value_enum, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let limit = match cli.max_enum.map(EnumLimit::new).transpose() {
        Ok(l) => l.unwrap_or_default(),
        Err(_) => {
            return Outcome::usage(format!(
                "--max-enum may not exceed {} (n! must fit in 64 bits)",
                EnumLimit::MAX
            ))
        }
    };
    let fmt = cli.format;
    match &cli.command {
        Command::Stats { word } => match parse_word(word) {
            Ok(p) => Outcome::ok(render_stats(&p, fmt)),
            Err(e) => Outcome::usage(e),
        },
        Command::Decode { codec, table } => match table.parse::<InversionTable>() {
            Ok(t) => Outcome::ok(render_decode(*codec, &t, &codec.decode(&t), fmt)),
            Err(e) => Outcome::usage(format!("invalid table {table:?}: {e}")),
        },
        Command::Encode { codec, word } => match parse_word(word) {
            Ok(p) => Outcome::ok(render_encode(*codec, &p, &codec.encode(&p), fmt)),
            Err(e) => Outcome::usage(e),
        },
        Command::Dist { n, stat } => {
            let dist = match stat {
                DistStat::Mahonian => mahonian_numbers(*n),
                DistStat::Inv => stat_distribution(*n, Statistic::Inv, limit),
                DistStat::Maj => stat_distribution(*n, Statistic::Maj, limit),
            };
            match dist {
                Ok(d) => Outcome::ok(render_dist(stat.name(), &d, fmt)),
                Err(Error::CapExceeded { n, cap }) if *stat != DistStat::Mahonian => {
                    Outcome::usage(format!(
                        "n = {n} exceeds the enumeration cap of {cap}; use --stat mahonian \
                         for the dynamic-programming path (n <= {MAHONIAN_DP_CAP}) or raise --max-enum"
                    ))
                }
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Joint { n, tables } => {
            let (m, kind) = if *tables {
                (table_stat_joint(*n, limit), "sum-ascent")
            } else {
                (joint_distribution(*n, limit), "inv-maj")
            };
            match m {
                Ok(m) => Outcome::ok(render_joint(kind, &m, fmt)),
                Err(e) => Outcome::usage(e),
            }
        }
        Command::Verify {
            n_max,
            checks,
            inject_fault,
        } => {
            let mut opts = VerifyOptions::new(*n_max);
            opts.limit = limit;
            if !checks.is_empty() {
                opts.checks = checks.clone();
            }
            if *inject_fault {
                opts.fault = Fault::FlipMajDelta;
            }
            match verify(&opts) {
                Ok(report) => {
                    let code = if report.passed() {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    };
                    let mut out = Outcome::ok(render_verify(&report, fmt));
                    out.code = code;
                    if let Some(cx) = report
                        .first_failure()
                        .and_then(|r| r.counterexample.as_ref())
                    {
                        out.stderr = format!(
                            "counterexample: n={} input={} expected={} actual={}\n",
                            cx.n, cx.input, cx.expected, cx.actual
                        );
                    }
                    out
                }
                Err(e) => Outcome::usage(e),
            }
        }
    }
}

fn parse_word(text: &str) -> Result<Permutation, String> {
    text.parse::<Permutation>()
        .map_err(|e| format!("invalid permutation {text:?}: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn to_csv<R: Serialize>(header: &[&str], records: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

#[derive(Serialize)]
struct StatsData {
    inv: u64,
    maj: u64,
    descents: Vec<usize>,
}

#[derive(Serialize)]
struct StatsJson<'a> {
    n: usize,
    word: String,
    data: &'a StatsData,
}

fn render_stats(p: &Permutation, fmt: OutputFormat) -> String {
    let data = StatsData {
        inv: p.inv(),
        maj: p.maj(),
        descents: p.descent_positions(),
    };
    let descents = data
        .descents
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>();
    match fmt {
        OutputFormat::Plain => format!(
            "word: {p}\nn: {}\ninv: {}\nmaj: {}\ndescents: {}\n",
            p.len(),
            data.inv,
            data.maj,
            descents.join(",")
        ),
        OutputFormat::Json => to_json(&StatsJson {
            n: p.len(),
            word: p.to_string(),
            data: &data,
        }),
        OutputFormat::Csv => to_csv(
            &["word", "n", "inv", "maj", "descents"],
            [(
                p.to_string(),
                p.len(),
                data.inv,
                data.maj,
                descents.join(" "),
            )],
        ),
    }
}

#[derive(Serialize)]
struct CodecJson<'a> {
    n: usize,
    codec: Codec,
    input: &'a [usize],
    data: &'a [usize],
}

fn render_decode(codec: Codec, t: &InversionTable, p: &Permutation, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => format!("{p}\n"),
        OutputFormat::Json => to_json(&CodecJson {
            n: p.len(),
            codec,
            input: t.entries(),
            data: p.as_slice(),
        }),
        OutputFormat::Csv => to_csv(&["index", "value"], p.as_slice().iter().enumerate()),
    }
}

fn render_encode(codec: Codec, p: &Permutation, t: &InversionTable, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => format!("{t}\n"),
        OutputFormat::Json => to_json(&CodecJson {
            n: p.len(),
            codec,
            input: p.as_slice(),
            data: t.entries(),
        }),
        OutputFormat::Csv => to_csv(&["j", "entry"], t.entries().iter().enumerate()),
    }
}

#[derive(Serialize)]
struct KCount {
    k: usize,
    count: u64,
}

#[derive(Serialize)]
struct DistJson {
    n: usize,
    stat: &'static str,
    data: Vec<KCount>,
}

fn render_dist(stat: &'static str, d: &DistributionVector, fmt: OutputFormat) -> String {
    let rows = || {
        d.counts
            .iter()
            .enumerate()
            .map(|(k, &count)| KCount { k, count })
    };
    match fmt {
        OutputFormat::Plain => {
            let mut s = String::from("k\tcount\n");
            for r in rows() {
                let _ = writeln!(s, "{}\t{}", r.k, r.count);
            }
            s
        }
        OutputFormat::Json => to_json(&DistJson {
            n: d.n,
            stat,
            data: rows().collect(),
        }),
        OutputFormat::Csv => to_csv(&["k", "count"], rows().map(|r| (r.k, r.count))),
    }
}

#[derive(Serialize)]
struct JointJson {
    n: usize,
    stat: &'static str,
    symmetric: bool,
    data: Vec<Vec<u64>>,
}

fn render_joint(kind: &'static str, m: &JointMatrix, fmt: OutputFormat) -> String {
    let symmetric = check_symmetry(m).is_symmetric();
    match fmt {
        OutputFormat::Plain => {
            let width = m.rows().flatten().max().map_or(1, |v| v.to_string().len());
            let mut s = format!("# n={} {kind}: rows k, columns k'\n", m.n());
            for row in m.rows() {
                let cells: Vec<_> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(s, "{}", cells.join(" "));
            }
            let _ = writeln!(s, "symmetric: {}", if symmetric { "yes" } else { "no" });
            s
        }
        OutputFormat::Json => to_json(&JointJson {
            n: m.n(),
            stat: kind,
            symmetric,
            data: m.rows().map(<[u64]>::to_vec).collect(),
        }),
        OutputFormat::Csv => {
            let dim = m.dim();
            let cells = (0..dim).flat_map(|k| (0..dim).map(move |kp| (k, kp)));
            to_csv(
                &["k", "k_prime", "count"],
                cells.map(|(k, kp)| (k, kp, m.get(k, kp))),
            )
        }
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    n_max: usize,
    passed: bool,
    total_cases: u64,
    data: Vec<VerifyRow<'a>>,
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    check: Check,
    n: usize,
    cases: u64,
    passed: bool,
    counterexample: Option<&'a crate::verify::Counterexample>,
}

fn render_verify(report: &VerifyReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => {
            let mut s = String::new();
            for r in &report.results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = write!(
                    s,
                    "{status}  {:<21} n={:<2} cases={}",
                    r.check.name(),
                    r.n,
                    r.cases
                );
                if let Some(cx) = &r.counterexample {
                    let _ = write!(
                        s,
                        "  counterexample: input={} expected={} actual={}",
                        cx.input, cx.expected, cx.actual
                    );
                }
                s.push('\n');
            }
            let _ = writeln!(
                s,
                "{}: {} cases for n = 0..={} (0-length cases included)",
                if report.passed() { "ok" } else { "FAILED" },
                report.total_cases(),
                report.n_max
            );
            s
        }
        OutputFormat::Json => to_json(&VerifyJson {
            n_max: report.n_max,
            passed: report.passed(),
            total_cases: report.total_cases(),
            data: report
                .results
                .iter()
                .map(|r| VerifyRow {
                    check: r.check,
                    n: r.n,
                    cases: r.cases,
                    passed: r.passed(),
                    counterexample: r.counterexample.as_ref(),
                })
                .collect(),
        }),
        OutputFormat::Csv => to_csv(
            &[
                "check", "n", "cases", "status", "input", "expected", "actual",
            ],
            report.results.iter().map(|r| {
                let cx = r.counterexample.as_ref();
                (
                    r.check.name(),
                    r.n,
                    r.cases,
                    if r.passed() { "pass" } else { "fail" },
                    cx.map_or("", |c| c.input.as_str()),
                    cx.map_or("", |c| c.expected.as_str()),
                    cx.map_or("", |c| c.actual.as_str()),
                )
            }),
        ),
    }
}
