use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use unischeme::chartable::{canonical_fusion, char_table_closed, fuse};
use unischeme::io::{export_matrix_space, import_matrix, tensor_csv, SchemeDocument};
use unischeme::scheme::{verify_relation_matrix, BuildMode, SchemeDescriptor};
use unischeme::{run_verification, CharTable, Error, UnitarySpace};

#[derive(Parser)]
#[command(name = "unischeme", version, about = "Association schemes of unitary groups on isotropic vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the scheme and emit its parameters.
    Build(BuildArgs),
    /// Print the character table of the q = 2 scheme.
    Chartable(ChartableArgs),
    /// Export the relation matrix or the parameters.
    Export(ExportArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
    /// Re-check a previously written document or relation matrix.
    Check(CheckArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u32,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Bruteforce,
    Closed,
    Both,
}

impl From<Mode> for BuildMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Bruteforce => BuildMode::Bruteforce,
            Mode::Closed => BuildMode::Closed,
            Mode::Both => BuildMode::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Doc,
    Matrix,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FusionName {
    None,
    Symmetrize,
    Coarse,
}

impl FusionName {
    fn as_str(self) -> &'static str {
        match self {
            FusionName::None => "none",
            FusionName::Symmetrize => "symmetrize",
            FusionName::Coarse => "coarse",
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Mode::Both)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Doc)]
    format: Format,
}

#[derive(Args)]
struct ChartableArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = FusionName::None)]
    fusion: FusionName,
    /// Also write a document (or CSV) to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Doc)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Format::Matrix)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CheckArgs {
    /// A JSON document or a relation matrix.
    path: PathBuf,
    /// Dimension, required for relation matrices.
    #[arg(long)]
    n: Option<u32>,
    /// Field parameter, required for relation matrices.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn build_document(n: u32, q: u32, mode: BuildMode, seed: u64) -> Result<(SchemeDescriptor, SchemeDocument)> {
    let mut summary = Vec::new();
    let sd = match mode {
        BuildMode::Closed => SchemeDescriptor::build(n, q, mode)?,
        _ => {
            let us = UnitarySpace::new(n, q)?;
            let sd = SchemeDescriptor::from_space(&us, mode)?;
            unischeme::scheme::spot_check_representatives(&us, sd.tensor(), 5, seed)?;
            if mode == BuildMode::Both {
                summary.push("oracle equivalence: pass".to_string());
            }
            summary.push("representatives: pass".to_string());
            sd
        }
    };
    summary.insert(0, "invariants: pass".to_string());
    summary.push(match sd.commutativity_witness() {
        None => "commutative".to_string(),
        Some((h, i, j)) => format!("non-commutative, first violation ({h},{i},{j})"),
    });
    let doc = SchemeDocument::from_descriptor(&sd, seed, summary);
    Ok((sd, doc))
}

fn cmd_build(args: BuildArgs) -> Result<()> {
    let c = &args.common;
    let (sd, doc) = build_document(c.n, c.q, args.mode.into(), c.seed)?;
    let text = match args.format {
        Format::Doc => doc.to_json(),
        Format::Csv => tensor_csv(&sd),
        Format::Matrix => bail!("use `export` for relation matrices"),
    };
    emit(c.out.as_deref(), &text)
}

fn render_table(ct: &CharTable) -> String {
    let cells: Vec<Vec<String>> = (0..ct.dim())
        .map(|i| ct.row(i).iter().map(|e| e.pretty()).collect())
        .collect();
    // ω̄ carries a combining macron that takes no column
    let width_of = |c: &str| c.chars().filter(|&ch| ch != '\u{0304}').count();
    let width = cells.iter().flatten().map(|c| width_of(c)).max().unwrap_or(1);
    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .map(|c| format!("{}{c}", " ".repeat(width - width_of(c))))
            .collect();
        out.push_str(&format!("{} | {}\n", line.join(" "), ct.multiplicities()[i]));
    }
    out
}

fn table_csv(ct: &CharTable) -> String {
    let mut out = String::new();
    let header: Vec<String> = (0..ct.dim()).map(|j| format!("p{j}")).collect();
    out.push_str(&format!("{},m\n", header.join(",")));
    for i in 0..ct.dim() {
        let row: Vec<String> = ct.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&format!("{},{}\n", row.join(","), ct.multiplicities()[i]));
    }
    out
}

fn cmd_chartable(args: ChartableArgs) -> Result<()> {
    let ct = char_table_closed(args.n)?;
    let fusion = match canonical_fusion(args.n, args.fusion.as_str())? {
        Some(blocks) => Some(fuse(&ct, &blocks)?),
        None => None,
    };
    let shown = fusion.as_ref().map_or(&ct, |f| &f.table);
    emit(None, &render_table(shown))?;
    if let Some(path) = &args.out {
        let text = match args.format {
            Format::Doc => {
                let (_, mut doc) = build_document(args.n, 2, BuildMode::Closed, 0)?;
                doc.attach_char_table(&ct, fusion.as_ref().map(|f| (args.fusion.as_str(), f)))?;
                doc.to_json()
            }
            Format::Csv => table_csv(shown),
            Format::Matrix => bail!("character tables have no relation-matrix form"),
        };
        emit(Some(path), &text)?;
    }
    Ok(())
}

fn cmd_export(args: ExportArgs) -> Result<()> {
    let c = &args.common;
    let text = match args.format {
        Format::Matrix => export_matrix_space(&UnitarySpace::new(c.n, c.q)?)?,
        Format::Doc => build_document(c.n, c.q, BuildMode::Both, c.seed)?.1.to_json(),
        Format::Csv => tensor_csv(&build_document(c.n, c.q, BuildMode::Both, c.seed)?.0),
    };
    emit(c.out.as_deref(), &text)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let report = run_verification(args.n, args.q, args.seed)?;
    emit(None, &report.to_string())?;
    Ok(report.passed())
}

fn cmd_check(args: CheckArgs) -> Result<bool> {
    let text = fs::read_to_string(&args.path).with_context(|| format!("reading {}", args.path.display()))?;
    if text.trim_start().starts_with('{') {
        let doc = SchemeDocument::from_json(&text)?;
        let sd = doc.to_descriptor()?;
        doc.to_char_table()?;
        if doc.to_json() != text {
            bail!("document is not in canonical form");
        }
        println!("document for n = {}, q = {}: rank {}, consistent", sd.n(), sd.q(), sd.rank());
        return Ok(true);
    }
    let (Some(n), Some(q)) = (args.n, args.q) else {
        bail!("--n and --q are required to check a relation matrix");
    };
    let rm = import_matrix(&text)?;
    let sd = SchemeDescriptor::build(n, q, BuildMode::Closed)?;
    let report = verify_relation_matrix(&rm, &sd, args.seed);
    for v in &report.violations {
        println!("FAIL {v}");
    }
    if report.passed() {
        println!(
            "relation matrix of size {} and rank {}: axioms hold, {} pairs spot-checked",
            report.size, report.rank, report.pairs_checked
        );
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(a) => cmd_build(a).map(|_| true),
        Command::Chartable(a) => cmd_chartable(a).map(|_| true),
        Command::Export(a) => cmd_export(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Check(a) => cmd_check(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(err) => eprintln!("error: {err}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(2)
        }
    }
}
