// SPDX-License-Identifier: Apache-2.0

//! The `hanoi` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments or
//! input, 3 oracle resource limit.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::count::{CountEngine, FrameBasis, MoveCount, StrategyId};
use crate::error::HanoiError;
use crate::generate::{generate_optimal, generate_strategy, MoveSequence};
use crate::oracle::{Search, StateGraphParams, DEFAULT_MEMORY_BUDGET};
use crate::puzzle::Move;
use crate::verify::replay_expecting;

/// Environment variable holding the default oracle memory budget in bytes.
pub const MEMORY_BUDGET_ENV: &str = "HANOI_MEMORY_BUDGET";

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "hanoi", version, about = "Multi-peg Tower of Hanoi solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Instance {
    /// Number of disks
    #[arg(long)]
    pub disks: u32,
    /// Number of pegs (at least 3)
    #[arg(long, default_value_t = 4, value_parser = parse_pegs)]
    pub pegs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the minimum move count T(N, K)
    Count {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Method::Stewart)]
        method: Method,
        /// Also print every minimizing split plan
        #[arg(long)]
        splits: bool,
    },
    /// Emit a move sequence
    Solve {
        #[command(flatten)]
        instance: Instance,
        /// optimal, s1, s2 or s3 (s1-s3 are four-peg strategies)
        #[arg(long, default_value = "optimal")]
        strategy: StrategyId,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolveFormat::Json)]
        format: SolveFormat,
        /// Stop after this many moves
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Replay a JSON move file and report
    Verify {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        moves: PathBuf,
        /// Fail unless the sequence has exactly this many moves
        #[arg(long)]
        expect_length: Option<MoveCount>,
    },
    /// Breadth-first search over the full state graph
    Oracle {
        #[command(flatten)]
        instance: Instance,
        /// Also count distinct shortest sequences
        #[arg(long)]
        count_paths: bool,
        /// Write one shortest sequence to this file
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Write per-layer state counts as CSV to this file
        #[arg(long)]
        layers: Option<PathBuf>,
        /// Byte budget for the search (overrides HANOI_MEMORY_BUDGET)
        #[arg(long)]
        memory_budget: Option<u64>,
    },
    /// Print T(n, K) for n = 0..=N
    Table {
        #[arg(long)]
        max_disks: u32,
        #[arg(long, default_value_t = 4, value_parser = parse_pegs)]
        pegs: usize,
        #[arg(long, value_enum, default_value_t = Method::Stewart)]
        method: Method,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Compare the four-peg strategies for n = 0..=N
    Compare {
        #[arg(long)]
        disks: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Stewart,
    Frame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Md,
    Text,
}

fn parse_pegs(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|e| format!("{e}"))?;
    if k < 3 {
        return Err(format!("at least 3 pegs are required, got {k}"));
    }
    Ok(k)
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: Option<String>,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit {
            code: EXIT_USAGE,
            message: Some(message.into()),
        }
    }
}

impl From<HanoiError> for Exit {
    fn from(e: HanoiError) -> Self {
        let code = match e {
            HanoiError::ResourceLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Exit {
            code,
            message: Some(e.to_string()),
        }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        // A closed pipe downstream (`| head`) is not an error.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Exit {
                code: EXIT_OK,
                message: None,
            };
        }
        Exit::usage(format!("I/O error: {e}"))
    }
}

type CliResult = Result<u8, Exit>;

/// Parses `argv` (program name first) and runs the subcommand, writing to
/// stdout and stderr. Returns the process exit code.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = dispatch(cli.command, out, err).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(exit) => {
            if let Some(message) = exit.message {
                let _ = writeln!(err, "error: {message}");
            }
            exit.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Count {
            instance,
            method,
            splits,
        } => count(instance, method, splits, out, err),
        Command::Solve {
            instance,
            strategy,
            out: path,
            format,
            limit,
        } => solve(instance, strategy, path.as_deref(), format, limit, out, err),
        Command::Verify {
            instance,
            moves,
            expect_length,
        } => verify(instance, &moves, expect_length, out),
        Command::Oracle {
            instance,
            count_paths,
            witness,
            layers,
            memory_budget,
        } => oracle(
            instance,
            count_paths,
            witness.as_deref(),
            layers.as_deref(),
            memory_budget,
            out,
        ),
        Command::Table {
            max_disks,
            pegs,
            method,
            format,
        } => table(max_disks, pegs, method, format, out),
        Command::Compare { disks, format } => compare(disks, format, out),
    }
}

fn counted(engine: &mut CountEngine, n: u32, k: usize, method: Method) -> Result<MoveCount, Exit> {
    Ok(match method {
        Method::Stewart => engine.stewart(n, k)?,
        Method::Frame => engine.frame(n, k)?,
    })
}

fn count(
    instance: Instance,
    method: Method,
    splits: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let Instance { disks: n, pegs: k } = instance;
    let mut engine = CountEngine::new();
    let value = counted(&mut engine, n, k, method)?;
    if method == Method::Frame && engine.frame_detail(n, k)?.basis == FrameBasis::SmallTowerFallback
    {
        writeln!(
            err,
            "note: {n} disks on {k} pegs is below Frame's n >= k range; used 2n - 1"
        )?;
    }
    writeln!(out, "{value}")?;
    if splits && n > 0 {
        for plan in engine.optimal_splits(n, k)? {
            writeln!(out, "{plan}")?;
        }
    }
    Ok(EXIT_OK)
}

fn open_output<'a>(
    path: Option<&Path>,
    stdout: &'a mut dyn Write,
) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(stdout)),
    })
}

/// Writes moves as the canonical JSON array, one move per line.
pub fn write_moves_json<W, I>(out: &mut W, moves: I) -> io::Result<u64>
where
    W: Write + ?Sized,
    I: IntoIterator<Item = Move>,
{
    let mut written = 0u64;
    out.write_all(b"[")?;
    for mv in moves {
        out.write_all(if written == 0 { b"\n" } else { b",\n" })?;
        serde_json::to_writer(&mut *out, &mv)?;
        written += 1;
    }
    out.write_all(if written == 0 { b"]\n" } else { b"\n]\n" })?;
    Ok(written)
}

/// Reads a canonical JSON move array.
pub fn read_moves_json(path: &Path) -> Result<Vec<Move>, String> {
    let file = File::open(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| format!("{} is not a JSON move array: {e}", path.display()))
}

fn solve(
    instance: Instance,
    strategy: StrategyId,
    path: Option<&Path>,
    format: SolveFormat,
    limit: Option<u64>,
    stdout: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let Instance { disks: n, pegs: k } = instance;
    let sequence: MoveSequence = match strategy {
        StrategyId::Optimal => generate_optimal(n, k)?,
        _ if k != 4 => {
            return Err(Exit::usage(format!(
                "strategy {strategy} is defined for 4 pegs only, got {k}"
            )))
        }
        _ => generate_strategy(n, strategy),
    };
    let total = sequence.declared_length().clone();
    let moves = sequence.take(limit.map_or(usize::MAX, |l| l.min(usize::MAX as u64) as usize));

    let mut out = open_output(path, stdout)?;
    let written = match format {
        SolveFormat::Json => write_moves_json(&mut out, moves)?,
        SolveFormat::Text => {
            let mut written = 0u64;
            for mv in moves {
                writeln!(out, "{mv}")?;
                written += 1;
            }
            written
        }
    };
    out.flush()?;
    if total != written {
        writeln!(err, "note: truncated to {written} of {total} moves")?;
    }
    Ok(EXIT_OK)
}

fn verify(
    instance: Instance,
    path: &Path,
    expected: Option<MoveCount>,
    out: &mut dyn Write,
) -> CliResult {
    let moves = read_moves_json(path).map_err(Exit::usage)?;
    let report = replay_expecting(instance.disks, instance.pegs, moves, expected.as_ref());
    serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn memory_budget(flag: Option<u64>) -> Result<u64, Exit> {
    if let Some(bytes) = flag {
        return Ok(bytes);
    }
    match std::env::var(MEMORY_BUDGET_ENV) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Exit::usage(format!("{MEMORY_BUDGET_ENV}={value} is not a byte count"))),
        Err(_) => Ok(DEFAULT_MEMORY_BUDGET),
    }
}

fn oracle(
    instance: Instance,
    count_paths: bool,
    witness: Option<&Path>,
    layers: Option<&Path>,
    budget: Option<u64>,
    out: &mut dyn Write,
) -> CliResult {
    let params =
        StateGraphParams::new(instance.disks, instance.pegs).with_budget(memory_budget(budget)?);
    let search = Search::run(params, count_paths)?;
    writeln!(out, "distance: {}", search.distance())?;
    if let Some(paths) = search.path_count() {
        writeln!(out, "shortest paths: {paths}")?;
    }
    if let Some(path) = witness {
        let mut file = BufWriter::new(File::create(path)?);
        write_moves_json(&mut file, search.witness())?;
        file.flush()?;
    }
    if let Some(path) = layers {
        search
            .write_layers_csv(File::create(path)?)
            .map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn table(
    max: u32,
    k: usize,
    method: Method,
    format: TableFormat,
    out: &mut dyn Write,
) -> CliResult {
    let mut engine = CountEngine::new();
    let rows = (0..=max)
        .map(|n| {
            Ok(vec![
                n.to_string(),
                counted(&mut engine, n, k, method)?.to_string(),
            ])
        })
        .collect::<Result<Vec<_>, Exit>>()?;
    write_table(out, format, &["n", "T"], &rows)
}

fn ratio(value: &MoveCount, base: &MoveCount) -> String {
    if base.is_zero() {
        "-".to_string()
    } else {
        format!("{:.4}", value.to_f64() / base.to_f64())
    }
}

fn compare(max: u32, format: TableFormat, out: &mut dyn Write) -> CliResult {
    let mut engine = CountEngine::new();
    let rows: Vec<Vec<String>> = (0..=max)
        .map(|n| {
            let [s1, s2, s3, opt] = StrategyId::ALL.map(|s| engine.strategy_count(n, s));
            vec![
                n.to_string(),
                s1.to_string(),
                s2.to_string(),
                s3.to_string(),
                opt.to_string(),
                ratio(&s1, &opt),
                ratio(&s3, &opt),
            ]
        })
        .collect();
    write_table(
        out,
        format,
        &["n", "S1", "S2", "S3", "OPTIMAL", "S1/OPTIMAL", "S3/OPTIMAL"],
        &rows,
    )
}

fn write_table(
    out: &mut dyn Write,
    format: TableFormat,
    header: &[&str],
    rows: &[Vec<String>],
) -> CliResult {
    match format {
        TableFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            let to_exit = |e: csv::Error| Exit::usage(format!("cannot write CSV: {e}"));
            writer.write_record(header).map_err(to_exit)?;
            for row in rows {
                writer.write_record(row).map_err(to_exit)?;
            }
            writer.flush()?;
        }
        TableFormat::Md => {
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(header.len()))?;
            for row in rows {
                writeln!(out, "| {} |", row.join(" | "))?;
            }
        }
        TableFormat::Text => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| {
                    rows.iter()
                        .map(|r| r[c].len())
                        .chain([header[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for row in rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(EXIT_OK)
}
