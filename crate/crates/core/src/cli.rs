//! `foldmul` command-line front end.
//!
//! Exit status: 0 on success, 2 on validation errors (including argument
//! parsing), 3 on I/O errors. CSV outputs start with a `# foldmul <kind> v1`
//! schema line followed by a header row.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bitnum::BitNum;
use crate::costmodel::{self, fixed3, to_f64, DEFAULT_K_MAX};
use crate::density::{density_series, Sampling, SeriesKind, SeriesParams};
use crate::folding::{multiply, trace};
use crate::hdlgen::{emit, Dialect, HdlConfig};
use crate::trials::{bench_folded, DEFAULT_SEED};

/// Environment variable overriding the default master seed.
pub const SEED_ENV: &str = "FOLDMUL_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "foldmul", version, about = "Operand-folding multiplier model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two operands and print the product and addition ledger.
    Multiply(MultiplyArgs),
    /// Print parts, characteristic vectors, bank states, and ledger.
    Trace(MultiplyArgs),
    /// Measure mean addition counts over random operands.
    Bench(BenchArgs),
    /// Optimal-k table and improvement ratios.
    Table(TableArgs),
    /// Optimal decomposition degree for an operand width.
    Optk(OptkArgs),
    /// Density dynamics series of repeated halving splits.
    Density(DensityArgs),
    /// Emit VHDL for the folded multiplier.
    Hdl(HdlArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct MultiplyArgs {
    /// Multiplicand (decimal, 0x…, or 0b…).
    #[arg(long)]
    pub a: String,
    /// Multiplier (decimal, 0x…, or 0b…).
    #[arg(long)]
    pub b: String,
    /// Operand width; defaults to the wider operand.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, conflicts_with = "m_range")]
    pub m: Option<u64>,
    #[arg(long, conflicts_with = "k_range")]
    pub k: Option<u32>,
    /// `lo..hi` (inclusive), `lo..=hi`, or a comma list.
    #[arg(long)]
    pub m_range: Option<String>,
    #[arg(long)]
    pub k_range: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, env = SEED_ENV, value_parser = parse_seed)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OptkArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    /// Node density per iteration.
    Iter,
    /// Node-only cumulative gain per depth.
    Nodes,
    /// Full ternary-tree residual per depth.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Bernoulli,
    Exact,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum, default_value_t = SeriesArg::Nodes)]
    pub series: SeriesArg,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    /// Block length in bits.
    #[arg(long, default_value_t = 4096)]
    pub b: usize,
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, env = SEED_ENV, value_parser = parse_seed)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = SamplingArg::Bernoulli)]
    pub sampling: SamplingArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DialectArg {
    Vhdl,
}

#[derive(Debug, Args)]
pub struct HdlArgs {
    #[arg(long, default_value_t = 32)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    #[arg(long, default_value = "Mult_Entity")]
    pub entity: String,
    #[arg(long, value_enum, default_value_t = DialectArg::Vhdl)]
    pub dialect: DialectArg,
    /// Output file; the dialect's extension is added when missing.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// Parses `lo..hi` (inclusive), `lo..=hi`, a comma list, or a single value.
pub fn parse_range(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Validation(format!("invalid range {s:?}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let values: Vec<u64> = if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        (num(lo)?..=num(hi)?).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(CliError::Validation(format!("range {s:?} is empty")));
    }
    Ok(values)
}

/// Text produced by a command and where it goes.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
}

fn csv_text<T: Serialize>(kind: &str, rows: &[T]) -> String {
    let mut buf = format!("# foldmul {kind} v1\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for r in rows {
            w.serialize(r).expect("serializing to memory");
        }
        w.flush().expect("flushing to memory");
    }
    String::from_utf8(buf).expect("csv output is UTF-8")
}

fn pretty(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}

fn parse_operand(s: &str, name: &str) -> Result<BitNum, CliError> {
    s.parse()
        .map_err(|e| CliError::Validation(format!("operand {name}: {e}")))
}

pub fn cmd_multiply(args: &MultiplyArgs) -> Result<String, CliError> {
    let a = parse_operand(&args.a, "A")?;
    let b = parse_operand(&args.b, "B")?;
    let m = args.m.unwrap_or(a.bit_length().max(b.bit_length()).max(1));
    let (product, ledger) = multiply(&a, &b, m, args.k).map_err(invalid)?;
    Ok(format!(
        "product = {product:#b}\ndecimal = {product}\nledger: {ledger}\n"
    ))
}

pub fn cmd_trace(args: &MultiplyArgs) -> Result<String, CliError> {
    let a = parse_operand(&args.a, "A")?;
    let b = parse_operand(&args.b, "B")?;
    let m = args.m.unwrap_or(a.bit_length().max(b.bit_length()).max(1));
    let t = trace(&a, &b, m, args.k).map_err(invalid)?;
    Ok(format!("{t}\n"))
}

#[derive(Debug, Serialize)]
struct BenchRecord {
    m: u64,
    k: u32,
    n: u64,
    f_avg: f64,
    f_wst: u128,
    measured_mean: f64,
    stderr: f64,
    trials: u64,
    seed: u64,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<String, CliError> {
    if args.trials < 1 {
        return Err(invalid("trials must be at least 1"));
    }
    let ms = match (&args.m_range, args.m) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(m)) => vec![m],
        (None, None) => vec![1024],
    };
    let ks = match (&args.k_range, args.k) {
        (Some(r), _) => parse_range(r)?
            .into_iter()
            .map(|k| u32::try_from(k).map_err(|_| invalid(format!("k = {k} out of range"))))
            .collect::<Result<_, _>>()?,
        (None, Some(k)) => vec![k],
        (None, None) => (1..=5).collect(),
    };
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut records = Vec::new();
    for &m in &ms {
        for &k in &ks {
            let row = bench_folded(m, k, args.trials, seed).map_err(invalid)?;
            records.push(BenchRecord {
                m,
                k,
                n: row.n,
                f_avg: to_f64(&row.f_avg),
                f_wst: row.f_wst,
                measured_mean: row.measured.mean(),
                stderr: row.measured.stderr(),
                trials: args.trials,
                seed,
            });
        }
    }
    Ok(match args.format {
        Format::Csv => csv_text("bench", &records),
        Format::Table => pretty(
            &[
                "m",
                "k",
                "n",
                "f_avg",
                "f_wst",
                "measured_mean",
                "stderr",
                "trials",
                "seed",
            ],
            &records
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.k.to_string(),
                        r.n.to_string(),
                        format!("{:.5}", r.f_avg),
                        r.f_wst.to_string(),
                        format!("{:.3}", r.measured_mean),
                        format!("{:.3}", r.stderr),
                        r.trials.to_string(),
                        r.seed.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

#[derive(Debug, Serialize)]
struct TableRecord {
    k: u32,
    m_min: u64,
    m_max: u64,
    avg_form: String,
    worst_form: String,
}

/// Improvement ratios printed under the table, with the printed values they
/// are compared against.
pub fn ratio_notes() -> String {
    let mut s = String::new();
    for m in [1024u64, 2048] {
        let k = costmodel::optimal_k(m, DEFAULT_K_MAX);
        let classical = to_f64(&costmodel::classical_improvement(m, k).unwrap());
        let csd = to_f64(&costmodel::csd_improvement(m, k).unwrap());
        let _ = writeln!(
            s,
            "m={m}: optimal k={k}, f_avg={}, improvement over classical {classical:.3}, over CSD {csd:.3}",
            to_f64(&costmodel::f_avg(m, k).unwrap())
        );
    }
    let csd_2048 = to_f64(&costmodel::csd_improvement(2048, 5).unwrap());
    let _ = writeln!(
        s,
        "note: the published CSD upper figure 1.560 does not follow from f_avg; (2048/3)/f_avg(2048,5) = {csd_2048:.3}"
    );
    s
}

pub fn cmd_table(args: &TableArgs) -> Result<String, CliError> {
    let rows = costmodel::table1();
    Ok(match args.format {
        Format::Csv => csv_text(
            "table",
            &rows
                .iter()
                .map(|r| TableRecord {
                    k: r.k,
                    m_min: *r.m_range.start(),
                    m_max: *r.m_range.end(),
                    avg_form: r.avg_form(),
                    worst_form: r.worst_form(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        format!("{} <= m <= {}", r.m_range.start(), r.m_range.end()),
                        r.avg_form(),
                        r.worst_form(),
                    ]
                })
                .collect();
            let mut s = pretty(&["optimal k", "range of m", "F_avg", "F_wst"], &body);
            s.push('\n');
            s.push_str(&ratio_notes());
            s
        }
    })
}

pub fn cmd_optk(args: &OptkArgs) -> Result<String, CliError> {
    if args.m < 1 || args.k_max < 1 {
        return Err(invalid("m and k-max must be at least 1"));
    }
    let k = costmodel::optimal_k(args.m, args.k_max);
    let f = costmodel::f_avg(args.m, k).map_err(invalid)?;
    Ok(format!("{k}\nf_avg({}, {k}) = {} (~{})\n", args.m, f, fixed3(&f)))
}

#[derive(Debug, Serialize)]
struct SeriesRecord {
    depth_or_iter: u32,
    predicted: f64,
    measured: f64,
    stderr: f64,
    trials: u64,
    seed: u64,
}

pub fn cmd_density(args: &DensityArgs) -> Result<String, CliError> {
    if args.trials < 1 {
        return Err(invalid("trials must be at least 1"));
    }
    let params = SeriesParams {
        kind: match args.series {
            SeriesArg::Iter => SeriesKind::Iteration,
            SeriesArg::Nodes => SeriesKind::NodesGain,
            SeriesArg::Full => SeriesKind::FullResidual,
        },
        delta0: args.delta,
        b: args.b,
        depth: args.depth,
        trials: args.trials,
        seed: args.seed.unwrap_or(DEFAULT_SEED),
        sampling: match args.sampling {
            SamplingArg::Bernoulli => Sampling::Bernoulli,
            SamplingArg::Exact => Sampling::ExactWeight,
        },
    };
    let points = density_series(&params).map_err(invalid)?;
    let records: Vec<SeriesRecord> = points
        .into_iter()
        .map(|p| SeriesRecord {
            depth_or_iter: p.depth_or_iter,
            predicted: p.predicted,
            measured: p.measured,
            stderr: p.stderr,
            trials: p.trials,
            seed: p.seed,
        })
        .collect();
    Ok(match args.format {
        Format::Csv => csv_text("density", &records),
        Format::Table => pretty(
            &["depth_or_iter", "predicted", "measured", "stderr", "trials", "seed"],
            &records
                .iter()
                .map(|r| {
                    vec![
                        r.depth_or_iter.to_string(),
                        format!("{:.6}", r.predicted),
                        format!("{:.6}", r.measured),
                        format!("{:.6}", r.stderr),
                        r.trials.to_string(),
                        r.seed.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    })
}

pub fn cmd_hdl(args: &HdlArgs) -> Result<String, CliError> {
    emit(&HdlConfig::new(args.m, args.k).with_entity_name(&args.entity)).map_err(invalid)
}

fn hdl_path(path: &Path, dialect: Dialect) -> PathBuf {
    if path.extension().is_some() {
        path.to_path_buf()
    } else {
        path.with_extension(dialect.extension())
    }
}

/// Runs a parsed command without touching stdout or the filesystem.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let (text, path) = match &cli.command {
        Command::Multiply(a) => (cmd_multiply(a)?, None),
        Command::Trace(a) => (cmd_trace(a)?, None),
        Command::Bench(a) => (cmd_bench(a)?, a.out.clone()),
        Command::Table(a) => (cmd_table(a)?, a.out.clone()),
        Command::Optk(a) => (cmd_optk(a)?, None),
        Command::Density(a) => (cmd_density(a)?, a.out.clone()),
        Command::Hdl(a) => {
            let dialect = match a.dialect {
                DialectArg::Vhdl => Dialect::Vhdl,
            };
            (cmd_hdl(a)?, a.out.as_deref().map(|p| hdl_path(p, dialect)))
        }
    };
    Ok(Output { text, path })
}

fn deliver(out: &Output) -> Result<(), CliError> {
    match &out.path {
        Some(path) => std::fs::write(path, &out.text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|out| deliver(&out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("3..=4").unwrap(), vec![3, 4]);
        assert_eq!(parse_range("8,16, 32").unwrap(), vec![8, 16, 32]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x10"), Ok(16));
        assert_eq!(parse_seed("42"), Ok(42));
        assert!(parse_seed("-1").is_err());
    }

    #[test]
    fn hdl_extension() {
        assert_eq!(
            hdl_path(Path::new("out/mul"), Dialect::Vhdl),
            PathBuf::from("out/mul.vhd")
        );
        assert_eq!(
            hdl_path(Path::new("mul.vhdl"), Dialect::Vhdl),
            PathBuf::from("mul.vhdl")
        );
    }
}
