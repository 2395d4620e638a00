//! `fishlab`: enumeration, statistic tables, involutions, series, conjecture
//! reports and the verification suite from the command line.
//!
//! Exit status: 0 when everything passes, 1 when a check fails, 2 on usage
//! or input errors.

use std::fmt::Write as _;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fishlab::catalan::psi;
use fishlab::fishmat::{enumerate_matrices, enumerate_matrices_parallel, Avoid, EnumOptions, FishburnMatrix};
use fishlab::ftriples::phi;
use fishlab::permlab::{conjecture_pat1_necessary, conjecture_pat2};
use fishlab::relcore::RelStructure;
use fishlab::series::{brute_p, f_formula, g_formula, g_from_f, p_closed_form, TruncatedSeries};
use fishlab::stats::{
    distribution_table, dyck_statistics, matrix_statistics, perm_statistics, ObjectKind, TableRequest,
};
use fishlab::verify::{all_passed, default_registry, fixtures, run_selected, run_suite, PhiCheck, Status, SuiteConfig};

const DEFAULT_MAX_WEIGHT: u32 = 8;
const MAX_DYCK_ORDER: usize = 14;
const MAX_PERM_SIZE: usize = 10;
const MAX_FORMULA_DEGREE: u32 = 24;

#[derive(Parser)]
#[command(
    name = "fishlab",
    version,
    about = "Exact combinatorics of interval orders and Fishburn matrices"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for enumeration; output order does not depend on it.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AvoidArg {
    /// No two nonzero cells in strictly NW position.
    Nw,
    /// No two nonzero cells in strictly SW position.
    Sw,
}

#[derive(Args)]
struct Filter {
    /// Only primitive matrices (all entries 0 or 1).
    #[arg(long)]
    primitive: bool,
    #[arg(long, value_enum)]
    avoid: Option<AvoidArg>,
}

impl Filter {
    fn options(&self) -> EnumOptions {
        EnumOptions {
            primitive_only: self.primitive,
            avoid: match self.avoid {
                None => Avoid::None,
                Some(AvoidArg::Nw) => Avoid::StrictNW,
                Some(AvoidArg::Sw) => Avoid::StrictSW,
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    Matrices,
    Dyck,
    Perms,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvolutionArg {
    Phi,
    Transpose,
    Psi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    /// F(x, y, z) from its closed form.
    F,
    /// G(x, y) = F(x, y, 1).
    G,
    G1,
    G2,
    G3,
    /// P(x, y, z) summed over primitive matrices.
    P,
    /// P(x, y, z) from its closed form.
    PClosed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureArg {
    Pat1,
    Pat2,
}

#[derive(Subcommand)]
enum Command {
    /// List the Fishburn matrices of one weight.
    Enumerate {
        #[arg(short = 'w', long)]
        weight: u32,
        #[command(flatten)]
        filter: Filter,
        /// Print only the number of matrices.
        #[arg(long)]
        count: bool,
    },
    /// Joint distribution of statistics over matrices, Dyck paths or
    /// pattern-avoiding permutations.
    Stats {
        #[arg(value_enum)]
        object: ObjectArg,
        /// Weight, order or size of the objects.
        #[arg(
            short = 'n',
            long = "order",
            visible_alias = "weight",
            short_alias = 'w',
            required_unless_present = "list"
        )]
        n: Option<usize>,
        /// Statistic names, comma separated or repeated.
        #[arg(short = 's', long = "stat", value_delimiter = ',', required_unless_present = "list")]
        stats: Vec<String>,
        #[command(flatten)]
        filter: Filter,
        /// List the statistics available for the object.
        #[arg(long)]
        list: bool,
    },
    /// Apply an involution to matrices (phi, transpose) or a C1-pair (psi),
    /// read from a file or standard input.
    Involution {
        #[arg(value_enum)]
        kind: InvolutionArg,
        input: Option<PathBuf>,
    },
    /// Expand a generating function.
    Series {
        #[arg(value_enum)]
        which: SeriesArg,
        #[arg(short = 'N', long, default_value_t = 8)]
        degree: u32,
    },
    /// Conjecture reports over bivincular-pattern-avoiding permutations.
    Conjecture {
        #[arg(value_enum)]
        which: ConjectureArg,
        #[arg(short = 'n', long = "order", default_value_t = 8)]
        n: usize,
    },
    /// Run verification checks.
    Verify {
        /// Run only these checks, in this order.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
        #[arg(short = 'w', long = "weight", default_value_t = 7)]
        max_weight: u32,
        #[arg(short = 'n', long = "order", default_value_t = 8)]
        max_dyck_order: usize,
        #[arg(short = 'N', long = "degree", default_value_t = 8)]
        series_degree: u32,
        /// Include elapsed times, which makes the output vary between runs.
        #[arg(long)]
        timings: bool,
        /// Replace phi by a deliberately wrong map.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => code,
        (Err(e), _) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        (Ok(_), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn weight_cap() -> Result<u32> {
    match std::env::var("FISHLAB_MAX_WEIGHT") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("FISHLAB_MAX_WEIGHT={v:?} is not a nonnegative integer")),
        Err(_) => Ok(DEFAULT_MAX_WEIGHT),
    }
}

fn check_weight(w: u32) -> Result<()> {
    let cap = weight_cap()?;
    if w > cap {
        bail!("weight {w} exceeds FISHLAB_MAX_WEIGHT={cap}");
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Enumerate { weight, filter, count } => {
            enumerate(*weight, filter.options(), *count, jobs, cli.format, out)?
        }
        Command::Stats {
            object,
            n,
            stats,
            filter,
            list,
        } => {
            if *list {
                list_stats(*object, cli.format, out)?;
            } else {
                stats_table(*object, n.unwrap_or(0), stats, filter.options(), jobs, cli.format, out)?;
            }
        }
        Command::Involution { kind, input } => involution(*kind, input.as_deref(), cli.format, out)?,
        Command::Series { which, degree } => series(*which, *degree, cli.format, out)?,
        Command::Conjecture { which, n } => conjecture(*which, *n, cli.format, out)?,
        Command::Verify {
            checks,
            list,
            max_weight,
            max_dyck_order,
            series_degree,
            timings,
            inject_fault,
        } => {
            let mut registry = default_registry();
            if *inject_fault {
                registry.replace(Box::new(PhiCheck::new(fixtures::corrupted_phi)));
            }
            if *list {
                for c in registry.iter() {
                    writeln!(out, "{}  {}", c.name(), c.description())?;
                }
                return Ok(ExitCode::SUCCESS);
            }
            check_weight(*max_weight)?;
            let cfg = SuiteConfig::new(*max_weight, *max_dyck_order, *series_degree).with_jobs(jobs);
            let reports = if checks.is_empty() {
                run_suite(&registry, &cfg)?
            } else {
                let names: Vec<&str> = checks.iter().map(String::as_str).collect();
                run_selected(&registry, &names, &cfg)?
            };
            match cli.format {
                Format::Json => {
                    let v: Vec<Value> = reports.iter().map(|r| r.to_json(*timings)).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Csv => {
                    writeln!(out, "check,status")?;
                    for r in &reports {
                        writeln!(out, "{},{}", r.name, r.status.to_string().to_lowercase())?;
                    }
                }
                Format::Text => {
                    for r in &reports {
                        writeln!(out, "{}", r.to_text(*timings))?;
                    }
                    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
                    writeln!(
                        out,
                        "{} passed, {} failed, {} flagged",
                        count(Status::Pass),
                        count(Status::Fail),
                        count(Status::Flagged)
                    )?;
                }
            }
            if !all_passed(&reports) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn matrix_csv_row(m: &FishburnMatrix) -> String {
    let entries: Vec<String> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{},{},{}", m.dim(), m.weight(), entries.join(";"))
}

fn write_matrix(m: &FishburnMatrix, format: Format, first: bool, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Text => {
            if !first {
                writeln!(out)?;
            }
            write!(out, "{}", m.to_text())?;
        }
        Format::Json => writeln!(out, "{}", m.to_json())?,
        Format::Csv => {
            if first {
                writeln!(out, "dim,weight,rows")?;
            }
            writeln!(out, "{}", matrix_csv_row(m))?;
        }
    }
    Ok(())
}

fn enumerate(
    weight: u32,
    options: EnumOptions,
    count_only: bool,
    jobs: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    check_weight(weight)?;
    if weight == 0 {
        bail!("weight must be positive");
    }
    if count_only {
        let n = if jobs > 1 {
            enumerate_matrices_parallel(weight, options, jobs).len()
        } else {
            enumerate_matrices(weight, options).count()
        };
        match format {
            Format::Text => writeln!(out, "{n}")?,
            Format::Json => writeln!(out, "{}", json!({ "weight": weight, "count": n }))?,
            Format::Csv => writeln!(out, "weight,count\n{weight},{n}")?,
        }
        return Ok(());
    }
    let mut first = true;
    let mut emit = |m: &FishburnMatrix, out: &mut dyn Write| -> Result<()> {
        let mut buf = Vec::new();
        write_matrix(m, format, first, &mut buf)?;
        out.write_all(&buf)?;
        first = false;
        Ok(())
    };
    if jobs > 1 {
        for m in enumerate_matrices_parallel(weight, options, jobs) {
            emit(&m, out)?;
        }
    } else {
        for m in enumerate_matrices(weight, options) {
            emit(&m, out)?;
        }
    }
    if first && format == Format::Csv {
        writeln!(out, "dim,weight,rows")?;
    }
    Ok(())
}

fn list_stats(object: ObjectArg, format: Format, out: &mut impl Write) -> Result<()> {
    let pairs: Vec<(String, String)> = match object {
        ObjectArg::Matrices => matrix_statistics()
            .iter()
            .map(|s| (s.name().to_string(), s.description().to_string()))
            .collect(),
        ObjectArg::Dyck => dyck_statistics()
            .iter()
            .map(|s| (s.name().to_string(), s.description().to_string()))
            .collect(),
        ObjectArg::Perms => perm_statistics()
            .iter()
            .map(|s| (s.name().to_string(), s.description().to_string()))
            .collect(),
    };
    match format {
        Format::Json => {
            let v: Vec<Value> = pairs
                .iter()
                .map(|(n, d)| json!({ "name": n, "description": d }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            writeln!(out, "name,description")?;
            for (n, d) in &pairs {
                writeln!(out, "{n},\"{d}\"")?;
            }
        }
        Format::Text => {
            for (n, d) in &pairs {
                writeln!(out, "{n:<12}{d}")?;
            }
        }
    }
    Ok(())
}

fn stats_table(
    object: ObjectArg,
    n: usize,
    stats: &[String],
    options: EnumOptions,
    jobs: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    let (kind, bound) = match object {
        ObjectArg::Matrices => (ObjectKind::Matrices, weight_cap()? as usize),
        ObjectArg::Dyck => (ObjectKind::Dyck, MAX_DYCK_ORDER),
        ObjectArg::Perms => (ObjectKind::Perms, MAX_PERM_SIZE),
    };
    let names: Vec<&str> = stats.iter().map(String::as_str).collect();
    let mut req = TableRequest::new(kind, n, &names);
    req.options = options;
    req.jobs = jobs;
    let table = distribution_table(&req, bound)?;
    match format {
        Format::Text => write!(out, "{}", table.to_text())?,
        Format::Csv => write!(out, "{}", table.to_csv())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json())?)?,
    }
    Ok(())
}

fn read_input(path: Option<&std::path::Path>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")?;
        }
    }
    Ok(text)
}

/// Matrices in text blocks separated by blank lines, or one JSON object
/// per line.
fn parse_matrices(text: &str) -> Result<Vec<FishburnMatrix>> {
    let trimmed = text.trim_start();
    let mut ms = Vec::new();
    if trimmed.starts_with('{') {
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            ms.push(FishburnMatrix::parse_json(line).with_context(|| format!("line {}", i + 1))?);
        }
    } else {
        let mut block = String::new();
        for line in text.lines().chain(std::iter::once("")) {
            if line.trim().is_empty() {
                if !block.is_empty() {
                    ms.push(FishburnMatrix::parse_text(&block).with_context(|| format!("matrix {}", ms.len() + 1))?);
                    block.clear();
                }
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
    }
    if ms.is_empty() {
        bail!("no matrix in input");
    }
    Ok(ms)
}

fn structure_json(s: &RelStructure) -> Value {
    let comps: Vec<Vec<[usize; 2]>> = s
        .components()
        .iter()
        .map(|r| r.pairs().map(|(a, b)| [a, b]).collect())
        .collect();
    json!({ "n": s.n(), "relations": comps })
}

fn involution(
    kind: InvolutionArg,
    input: Option<&std::path::Path>,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    let text = read_input(input)?;
    match kind {
        InvolutionArg::Phi | InvolutionArg::Transpose => {
            let cap = weight_cap()?;
            for (i, m) in parse_matrices(&text)?.iter().enumerate() {
                if m.weight() > cap {
                    bail!(
                        "matrix {} has weight {} above FISHLAB_MAX_WEIGHT={cap}",
                        i + 1,
                        m.weight()
                    );
                }
                let image = match kind {
                    InvolutionArg::Phi => phi(m),
                    _ => m.antidiagonal_transpose(),
                };
                write_matrix(&image, format, i == 0, out)?;
            }
        }
        InvolutionArg::Psi => {
            let pair = RelStructure::parse_text(&text).context("parsing C1-pair")?;
            let image = psi(&pair)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&structure_json(&image))?)?,
                Format::Text => write!(out, "{}", image.to_text())?,
                Format::Csv => {
                    writeln!(out, "relation,a,b")?;
                    for (i, r) in image.components().iter().enumerate() {
                        for (a, b) in r.pairs() {
                            writeln!(out, "{i},{a},{b}")?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn series(which: SeriesArg, degree: u32, format: Format, out: &mut impl Write) -> Result<()> {
    if degree > MAX_FORMULA_DEGREE {
        bail!("degree {degree} exceeds {MAX_FORMULA_DEGREE}");
    }
    let s: TruncatedSeries = match which {
        SeriesArg::F => f_formula(degree),
        SeriesArg::G => g_from_f(degree),
        SeriesArg::G1 => g_formula(degree, 1)?,
        SeriesArg::G2 => g_formula(degree, 2)?,
        SeriesArg::G3 => g_formula(degree, 3)?,
        SeriesArg::P => {
            check_weight(degree)?;
            brute_p(degree)
        }
        SeriesArg::PClosed => p_closed_form(degree),
    };
    match format {
        Format::Text => write!(out, "{}", s.to_text())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&s.to_json())?)?,
        Format::Csv => {
            writeln!(out, "x,y,z,coefficient")?;
            for (e, c) in s.terms() {
                writeln!(out, "{},{},{},{c}", e[0], e[1], e[2])?;
            }
        }
    }
    Ok(())
}

fn conjecture(which: ConjectureArg, n: usize, format: Format, out: &mut impl Write) -> Result<()> {
    match which {
        ConjectureArg::Pat2 => {
            let r = conjecture_pat2(n)?;
            match format {
                Format::Json => {
                    let rows: Vec<Value> = r
                        .table
                        .iter()
                        .map(|(&(a, b), &c)| json!({ "lrmax": a, "rlmax": b, "count": c }))
                        .collect();
                    let v = json!({
                        "n": r.n,
                        "total": r.total,
                        "symmetric": r.symmetric,
                        "asymmetric_cells": r.asymmetric_cells,
                        "rows": rows,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Csv => {
                    writeln!(out, "lrmax,rlmax,count")?;
                    for (&(a, b), &c) in &r.table {
                        writeln!(out, "{a},{b},{c}")?;
                    }
                }
                Format::Text => {
                    let mut s = String::new();
                    for (&(a, b), &c) in &r.table {
                        let _ = writeln!(s, "lrmax={a} rlmax={b}  {c}");
                    }
                    let _ = writeln!(s, "total {}\nsymmetric {}", r.total, r.symmetric);
                    write!(out, "{s}")?;
                }
            }
        }
        ConjectureArg::Pat1 => {
            let r = conjecture_pat1_necessary(n)?;
            let sides = [("permutations", &r.permutations), ("matrices", &r.matrices)];
            match format {
                Format::Json => {
                    let mut v = json!({
                        "n": r.n,
                        "multisets_equal": r.multisets_equal,
                        "closed_under_inverse": r.closed_under_inverse,
                    });
                    for (name, t) in sides {
                        let rows: Vec<Value> = t
                            .iter()
                            .map(|(&(a, b, c, d), &k)| json!({ "values": [a, b, c, d], "count": k }))
                            .collect();
                        v[name] = Value::Array(rows);
                    }
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Csv => {
                    writeln!(out, "side,a,b,c,d,count")?;
                    for (name, t) in sides {
                        for (&(a, b, c, d), &k) in t {
                            writeln!(out, "{name},{a},{b},{c},{d},{k}")?;
                        }
                    }
                }
                Format::Text => {
                    let mut s = String::new();
                    for (name, t) in sides {
                        let _ = writeln!(s, "{name}");
                        for (&(a, b, c, d), &k) in t {
                            let _ = writeln!(s, "  ({a}, {b}, {c}, {d})  {k}");
                        }
                    }
                    let _ = writeln!(
                        s,
                        "multisets_equal {}\nclosed_under_inverse {}",
                        r.multisets_equal, r.closed_under_inverse
                    );
                    write!(out, "{s}")?;
                }
            }
        }
    }
    Ok(())
}
