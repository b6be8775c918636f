//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 I/O failure, 4 search timeout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{
    grid16_design, grid16_field, render_power_notation, torus2_design, torus_design,
    walecki_cycles, walecki_paths,
};
use crate::error::{Error, Result};
use crate::graph::{design_to_dot, verify_design, Design, Target};
use crate::search::{scramble_simulation, DesignSearch, SearchStatus};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "grid-designs",
    version,
    about = "Grid and torus decompositions of complete graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the explicit designs.
    Construct(ConstructArgs),
    /// Check that a design JSON file partitions its complete graph.
    Verify { path: PathBuf },
    /// Exhaustively search for a design.
    Search(SearchArgs),
    /// Lay out 16 words in five 4x4 grids so every pair is adjacent once.
    Schedule {
        /// File with 16 distinct words, one per line.
        #[arg(long)]
        words: PathBuf,
    },
    /// Simulate random scrambles of a 4x4 grid.
    Simulate {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Torus,
    Torus2,
    Grid16,
    WaleckiCycles,
    WaleckiPaths,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Dot,
}

#[derive(clap::Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Prime for torus/torus2.
    #[arg(long)]
    p: Option<u32>,
    /// Vertex count for the Walecki designs.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// p4x4 for a path grid, c3x3 for a torus grid.
    #[arg(long)]
    target: Target,
    #[arg(long, default_value_t = 1)]
    limit: usize,
    #[arg(long)]
    budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Enumerate the first part too instead of fixing it.
    #[arg(long)]
    no_symmetry_reduction: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(&args, out),
        Command::Verify { path } => cmd_verify(&path, out),
        Command::Search(args) => cmd_search(&args, out),
        Command::Schedule { words } => cmd_schedule(&words, out),
        Command::Simulate { trials, seed } => cmd_simulate(trials, seed, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<u8> {
    let param = |what: &str| {
        args.p.or(args.n).ok_or_else(|| {
            Error::InvalidParameter(format!("{:?} needs --{what}", args.kind).to_lowercase())
        })
    };
    let design = match args.kind {
        Kind::Torus => torus_design(param("p")?)?,
        Kind::Torus2 => torus2_design(param("p")?)?,
        Kind::Grid16 => grid16_design(),
        Kind::WaleckiCycles => walecki_cycles(param("n")? as usize)?,
        Kind::WaleckiPaths => walecki_paths(param("n")? as usize)?,
    };
    let text = match args.format {
        Format::Json => design.to_json() + "\n",
        Format::Dot => design_to_dot(&design),
        Format::Ascii if args.kind == Kind::Grid16 => {
            render_power_notation(&grid16_field(), &design)?
        }
        Format::Ascii => design
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&text, args.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(path)?;
    let design = Design::from_json(&text)?;
    let report = verify_design(&design);
    writeln!(out, "{report}")?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<u8> {
    let mut search = DesignSearch::new(args.n, args.target)
        .limit(args.limit)
        .workers(args.workers)
        .symmetry_reduction(!args.no_symmetry_reduction);
    if let Some(secs) = args.budget_secs {
        let budget = Duration::try_from_secs_f64(secs)
            .map_err(|_| Error::InvalidParameter(format!("bad budget {secs}")))?;
        search = search.budget(budget);
    }
    let outcome = search.run()?;
    writeln!(out, "{}", serde_json::to_string_pretty(&outcome)?)?;
    Ok(if outcome.status == SearchStatus::Timeout {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    })
}

fn cmd_schedule(path: &Path, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(path)?;
    let words: Vec<String> = text.lines().map(|l| l.trim().to_string()).collect();
    let schedule = WordSchedule::new(words)?;
    write!(out, "{schedule}")?;
    Ok(EXIT_OK)
}

fn cmd_simulate(trials: u64, seed: u64, out: &mut dyn Write) -> Result<u8> {
    let stats = scramble_simulation(trials, seed)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&stats)?)?;
    Ok(EXIT_OK)
}

/// Five 4x4 arrangements of 16 words in which every pair of words is
/// adjacent exactly once. Word i (by input order) takes the place of vertex
/// i of the GF(16) design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSchedule {
    words: Vec<String>,
    grids: Vec<Vec<Vec<String>>>,
}

impl WordSchedule {
    pub fn new(words: Vec<String>) -> Result<Self> {
        if words.len() != 16 {
            return Err(Error::InvalidParameter(format!(
                "expected 16 words, got {}",
                words.len()
            )));
        }
        if let Some(i) = words.iter().position(String::is_empty) {
            return Err(Error::InvalidParameter(format!("word {} is empty", i + 1)));
        }
        let mut sorted = words.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!(
                "duplicate word {:?}",
                w[0]
            )));
        }
        let design = grid16_design();
        let grids = design
            .parts
            .iter()
            .map(|part| {
                (0..part.rows())
                    .map(|r| {
                        part.row(r)
                            .iter()
                            .map(|&v| words[v as usize].clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { words, grids })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn grids(&self) -> &[Vec<Vec<String>>] {
        &self.grids
    }

    /// Number of grid adjacencies between two words over all arrangements.
    pub fn pair_count(&self, a: &str, b: &str) -> usize {
        let target = Target::path(4, 4);
        self.grids
            .iter()
            .map(|g| {
                let flat: Vec<&str> = g.iter().flatten().map(String::as_str).collect();
                target
                    .position_edges()
                    .into_iter()
                    .filter(|&(x, y)| {
                        (flat[x] == a && flat[y] == b) || (flat[x] == b && flat[y] == a)
                    })
                    .count()
            })
            .sum()
    }
}

impl std::fmt::Display for WordSchedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self
            .words
            .iter()
            .map(|w| w.chars().count())
            .max()
            .unwrap_or(0);
        for (i, grid) in self.grids.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "Arrangement {}", i + 1)?;
            for row in grid {
                let cells: Vec<String> = row.iter().map(|w| format!("{w:<width$}")).collect();
                writeln!(f, "{}", cells.join("  ").trim_end())?;
            }
        }
        Ok(())
    }
}
