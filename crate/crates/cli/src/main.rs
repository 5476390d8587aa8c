//! `residmod` command-line front end.
//!
//! Every subcommand prints `key=value` lines on stdout. Exit status: 0 on
//! success, 1 for usage errors, 2 for codec failures (capacity, framing,
//! corrupt stego), 3 for I/O and file format errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use residmod::{AnalyzerKind, Error};

#[derive(Parser, Debug)]
#[command(
    name = "residmod",
    version,
    about = "Reversible residual-modulation steganography"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hide a message in a PGM cover.
    Embed(EmbedArgs),
    /// Recover the message and the original cover from a stego PGM.
    Extract(ExtractArgs),
    /// Score the query pixels of a cover and compare against ground truth.
    Analyze(AnalyzeArgs),
    /// Report how many bits a cover can carry.
    Capacity(CapacityArgs),
    /// Rate-distortion sweep over images, analyzers, alphas and rates.
    Sweep(SweepArgs),
    /// Write the full-image ground-truth carrier map as a QMAP score file.
    GenTruth(GenTruthArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AnalyzerArg {
    Lv,
    Map,
    Oracle,
    Raster,
}

impl From<AnalyzerArg> for AnalyzerKind {
    fn from(a: AnalyzerArg) -> Self {
        match a {
            AnalyzerArg::Lv => AnalyzerKind::LocalVariance,
            AnalyzerArg::Map => AnalyzerKind::ExternalMap,
            AnalyzerArg::Oracle => AnalyzerKind::Oracle,
            AnalyzerArg::Raster => AnalyzerKind::Raster,
        }
    }
}

#[derive(Args, Debug)]
struct Maps {
    /// QMAP score file, required by `--analyzer map`.
    #[arg(long, value_name = "QMAP")]
    score_map: Option<PathBuf>,
    /// QMAP prediction file; replaces the interpolating predictor.
    #[arg(long, value_name = "QMAP")]
    pred_map: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[arg(long, value_name = "PGM")]
    cover: PathBuf,
    /// File whose bytes are the message.
    #[arg(
        long,
        value_name = "FILE",
        conflicts_with = "hex",
        required_unless_present = "hex"
    )]
    message: Option<PathBuf>,
    /// Message given as hex digits.
    #[arg(long, value_name = "HEX")]
    hex: Option<String>,
    #[arg(long)]
    alpha: u32,
    #[arg(long, value_enum)]
    analyzer: AnalyzerArg,
    #[command(flatten)]
    maps: Maps,
    /// Where to save the oracle route; the decoder needs it as `--score-map`.
    #[arg(long, value_name = "QMAP")]
    export_route_map: Option<PathBuf>,
    #[arg(long, value_name = "PGM")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long, value_name = "PGM")]
    stego: PathBuf,
    #[arg(long)]
    alpha: u32,
    /// `oracle` reads the route exported at embedding from `--score-map`.
    #[arg(long, value_enum)]
    analyzer: AnalyzerArg,
    #[command(flatten)]
    maps: Maps,
    #[arg(long, value_name = "PGM")]
    out_image: PathBuf,
    #[arg(long, value_name = "FILE")]
    out_message: PathBuf,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long, value_name = "PGM")]
    cover: PathBuf,
    #[arg(long)]
    alpha: u32,
    #[arg(long, value_enum)]
    analyzer: AnalyzerArg,
    #[command(flatten)]
    maps: Maps,
}

#[derive(Args, Debug)]
struct CapacityArgs {
    #[arg(long, value_name = "PGM")]
    cover: PathBuf,
    #[arg(long)]
    alpha: u32,
    #[arg(long, value_name = "QMAP")]
    pred_map: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(
        long,
        value_name = "PGM",
        conflicts_with = "corpus",
        required_unless_present = "corpus"
    )]
    cover: Option<PathBuf>,
    /// Directory of `.pgm` files, processed in file-name order.
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<u32>,
    /// Target rates in bits per pixel.
    #[arg(long, value_delimiter = ',', required = true)]
    rates: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    analyzers: Vec<AnalyzerArg>,
    #[command(flatten)]
    maps: Maps,
    /// Seed of the xorshift64* message generator.
    #[arg(long, value_parser = parse_seed)]
    seed: u64,
    #[arg(long, value_name = "CSV")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct GenTruthArgs {
    #[arg(long, value_name = "PGM")]
    cover: PathBuf,
    #[arg(long)]
    alpha: u32,
    #[arg(long, value_name = "QMAP")]
    pred_map: Option<PathBuf>,
    #[arg(long, value_name = "QMAP")]
    out: PathBuf,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    /// An input file that does not parse.
    Format(PathBuf, Error),
    Lib(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(..) | Failure::Format(..) => 3,
            Failure::Lib(e) => match e {
                Error::InvalidAlpha(_) | Error::Config(_) => 1,
                Error::CapacityExceeded { .. }
                | Error::FrameUnderflow { .. }
                | Error::CorruptStego(_)
                | Error::RegisterLengthMismatch { .. }
                | Error::PayloadTooLarge(_) => 2,
                _ => 3,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Format(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Extract(a) => commands::extract(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Capacity(a) => commands::capacity(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::GenTruth(a) => commands::gen_truth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("residmod: {f}");
            ExitCode::from(f.code())
        }
    }
}
