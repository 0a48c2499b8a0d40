//! Command-line frontend for the dynsbox image cipher.
//!
//! Subcommands: gen-sboxes, encrypt, decrypt, analyze, apa-table.
//! Exit codes: 0 success, 2 input/validation error, 3 I/O error.
//! Output files are written atomically (temp file + rename), so a failed
//! run never leaves a partial file behind.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynsbox::cipher::{decrypt, encrypt};
use dynsbox::gf::{reconcile_convention, ApaTable};
use dynsbox::keyfile::parse_key_file;
use dynsbox::metrics::{cross_correlation, MetricsReport};
use dynsbox::pgm::{read_pgm, write_pgm};
use dynsbox::sbox::generate_bank;
use dynsbox::{CipherKey, GrayImage, SBoxBank};

#[derive(Parser)]
#[command(
    name = "dynsbox",
    version,
    about = "Chaotic dynamic S-box substitution cipher for grayscale PGM images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the dynamic S-box bank and write it as an SBXB file.
    GenSboxes {
        /// Key file (name=value lines).
        #[arg(long)]
        key: PathBuf,
        /// Output bank file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a binary PGM (P5) image.
    Encrypt {
        /// Input image.
        input: PathBuf,
        /// Key file (name=value lines).
        #[arg(long)]
        key: PathBuf,
        /// Output image.
        #[arg(long)]
        out: PathBuf,
        /// Load a pre-built bank file instead of regenerating from the key.
        #[arg(long)]
        bank: Option<PathBuf>,
    },
    /// Decrypt a binary PGM (P5) image.
    Decrypt {
        /// Input image.
        input: PathBuf,
        /// Key file (name=value lines).
        #[arg(long)]
        key: PathBuf,
        /// Output image.
        #[arg(long)]
        out: PathBuf,
        /// Load a pre-built bank file instead of regenerating from the key.
        #[arg(long)]
        bank: Option<PathBuf>,
    },
    /// Print image statistics as key=value lines; with a second image,
    /// also NPCR and cross-correlation.
    Analyze {
        /// Image to analyze.
        input: PathBuf,
        /// Optional second image for pairwise metrics.
        second: Option<PathBuf>,
    },
    /// Print the computed APA table (16x16 hex) and the convention
    /// reconciliation report.
    ApaTable,
}

/// Failure carrying the process exit code. Code 0 means "stop silently"
/// (stdout went away mid-print, e.g. piped into head).
struct Failure {
    code: u8,
    message: String,
}

impl From<dynsbox::Error> for Failure {
    fn from(e: dynsbox::Error) -> Self {
        let code = match e {
            dynsbox::Error::Io(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(context: &Path, e: io::Error) -> Failure {
    Failure {
        code: 3,
        message: format!("{}: {e}", context.display()),
    }
}

fn stdout_failure(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Failure {
            code: 0,
            message: String::new(),
        }
    } else {
        Failure {
            code: 3,
            message: format!("stdout: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code == 0 {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::GenSboxes { key, out } => cmd_gen_sboxes(&key, &out),
        Command::Encrypt {
            input,
            key,
            out,
            bank,
        } => cmd_crypt(&input, &key, &out, bank.as_deref(), true),
        Command::Decrypt {
            input,
            key,
            out,
            bank,
        } => cmd_crypt(&input, &key, &out, bank.as_deref(), false),
        Command::Analyze { input, second } => cmd_analyze(&input, second.as_deref()),
        Command::ApaTable => cmd_apa_table(),
    }
}

fn load_key(path: &Path) -> Result<CipherKey, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(parse_key_file(&text)?)
}

fn load_image(path: &Path) -> Result<GrayImage, Failure> {
    let bytes = fs::read(path).map_err(|e| io_failure(path, e))?;
    Ok(read_pgm(&bytes)?)
}

/// Writes through a temp file in the same directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| io_failure(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_failure(path, e)
    })
}

fn load_or_generate_bank(key: &CipherKey, bank_path: Option<&Path>) -> Result<SBoxBank, Failure> {
    match bank_path {
        Some(path) => {
            let bytes = fs::read(path).map_err(|e| io_failure(path, e))?;
            Ok(SBoxBank::from_bytes(&bytes)?)
        }
        None => Ok(generate_bank(&key.sbox_params)?),
    }
}

fn cmd_gen_sboxes(key_path: &Path, out: &Path) -> Result<(), Failure> {
    let key = load_key(key_path)?;
    let bank = generate_bank(&key.sbox_params)?;
    let bijective = bank.boxes().iter().filter(|b| b.is_bijective()).count();
    write_atomic(out, &bank.to_bytes())?;
    writeln!(
        io::stdout(),
        "generated {} S-boxes ({bijective} bijective) -> {}",
        bank.len(),
        out.display()
    )
    .map_err(stdout_failure)
}

fn cmd_crypt(
    input: &Path,
    key_path: &Path,
    out: &Path,
    bank_path: Option<&Path>,
    encrypting: bool,
) -> Result<(), Failure> {
    let key = load_key(key_path)?;
    let img = load_image(input)?;
    let bank = load_or_generate_bank(&key, bank_path)?;
    let result = if encrypting {
        encrypt(&img, &key, &bank)?
    } else {
        decrypt(&img, &key, &bank)?
    };
    write_atomic(out, &write_pgm(&result))?;
    writeln!(
        io::stdout(),
        "{} {} ({}x{}) -> {} ({}x{})",
        if encrypting { "encrypted" } else { "decrypted" },
        input.display(),
        img.width(),
        img.height(),
        out.display(),
        result.width(),
        result.height()
    )
    .map_err(stdout_failure)
}

fn print_report(
    w: &mut impl Write,
    label: &str,
    path: &Path,
    img: &GrayImage,
    report: &MetricsReport,
) -> io::Result<()> {
    writeln!(w, "{label}={}", path.display())?;
    writeln!(w, "width={}", img.width())?;
    writeln!(w, "height={}", img.height())?;
    writeln!(w, "entropy={:.4}", report.entropy_bits)?;
    match report.corr_adjacent {
        Some(r) => writeln!(w, "corr_adjacent={r:.6}")?,
        None => writeln!(w, "corr_adjacent=undefined")?,
    }
    writeln!(w, "chi_square={:.2}", report.chi_square)?;
    let hist: Vec<String> = report.histogram.iter().map(|c| c.to_string()).collect();
    writeln!(w, "histogram={}", hist.join(","))
}

fn cmd_analyze(input: &Path, second: Option<&Path>) -> Result<(), Failure> {
    let img = load_image(input)?;
    let mut out = io::stdout().lock();
    match second {
        None => {
            print_report(&mut out, "file", input, &img, &MetricsReport::for_image(&img))
                .map_err(stdout_failure)?;
        }
        Some(second) => {
            let other = load_image(second)?;
            let report = MetricsReport::for_pair(&img, &other)?;
            print_report(&mut out, "file", input, &img, &report).map_err(stdout_failure)?;
            print_report(
                &mut out,
                "file2",
                second,
                &other,
                &MetricsReport::for_image(&other),
            )
            .map_err(stdout_failure)?;
            let npcr_value = report.npcr_percent.expect("pair report carries npcr");
            let cross = cross_correlation(&img, &other)?;
            writeln!(out, "npcr={npcr_value:.4}").map_err(stdout_failure)?;
            writeln!(out, "corr_cross={cross:.6}").map_err(stdout_failure)?;
        }
    }
    Ok(())
}

fn cmd_apa_table() -> Result<(), Failure> {
    let report = reconcile_convention();
    let mut out = io::stdout().lock();
    write!(out, "{}", ApaTable::computed(report.selected).to_hex_grid())
        .map_err(stdout_failure)?;
    writeln!(out).map_err(stdout_failure)?;
    write!(out, "{report}").map_err(stdout_failure)
}
