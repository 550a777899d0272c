//! The `karaflat` command line.
//!
//! Exit status is 0 on success, 1 when `verify` finds a mismatch and 2 for any
//! usage, input or parse error.

mod commands;
pub mod workload;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use karaflat_core::coeffwise::CoeffForm;
use karaflat_core::Algorithm;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "karaflat", version, about = "Flattened Karatsuba multiplication toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiply two polynomial files.
    Mul(MulArgs),
    /// Cross-check algorithms against schoolbook on seeded random inputs.
    Verify(VerifyArgs),
    /// Time algorithms on seeded random inputs and print CSV.
    Bench(BenchArgs),
    /// One coefficient of a product through the closed coefficient formulas.
    Coeff(CoeffArgs),
    /// Dump one of the integer sequences behind the flattened tree.
    Seq(SeqArgs),
    /// Truncated power-series product.
    Series(SeriesArgs),
}

#[derive(Debug, Args)]
pub struct MulArgs {
    #[arg(long, default_value = "gray", value_parser = parse_algorithm)]
    pub algo: Algorithm,
    pub a: PathBuf,
    pub b: PathBuf,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Operand lengths, each a power of two.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64,128,256,512,1024")]
    pub sizes: Vec<usize>,
    /// Random pairs per size.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, env = "KARAFLAT_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Largest coefficient magnitude.
    #[arg(long, default_value_t = 1_000_000)]
    pub coeff_bound: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// Algorithms to check; all Karatsuba variants when absent.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    pub algo: Vec<Algorithm>,
    /// Corrupt the first product computed, to exercise the mismatch path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub config: RunConfig,
    /// Algorithms to time; all of them when absent.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    pub algo: Vec<Algorithm>,
    /// CSV destination; standard output when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = FormArg::Tau)]
    pub form: FormArg,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormArg {
    Tau,
    Sierpinski,
}

impl From<FormArg> for CoeffForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Tau => CoeffForm::Tau,
            FormArg::Sierpinski => CoeffForm::Sierpinski,
        }
    }
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long, value_enum)]
    pub name: SeqName,
    /// Number of terms, for A268289 and A106400.
    #[arg(long)]
    pub count: Option<u64>,
    /// Triangle row, for A047999-row.
    #[arg(long)]
    pub row: Option<u64>,
    /// Output degree, for Sd.
    #[arg(long)]
    pub d: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    #[value(name = "A268289")]
    A268289,
    #[value(name = "A106400")]
    A106400,
    #[value(name = "A047999-row")]
    A047999Row,
    #[value(name = "Sd")]
    Sd,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum, default_value_t = SeriesForm::Partial)]
    pub form: SeriesForm,
    /// Number of output coefficients; both inputs need at least this many.
    #[arg(long)]
    pub order: usize,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesForm {
    Partial,
    Flat,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|_| {
        let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Mismatch => EXIT_MISMATCH,
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Mul(a) => commands::mul(a, out, err),
        Command::Verify(a) => commands::verify(a, out, err),
        Command::Bench(a) => commands::bench(a, out, err),
        Command::Coeff(a) => commands::coeff(a, out),
        Command::Seq(a) => commands::seq(a, out),
        Command::Series(a) => commands::series(a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Failure::Usage(msg) = &f {
                let _ = writeln!(err, "karaflat: {msg}");
            }
            f.code()
        }
    }
}
