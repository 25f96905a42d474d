use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::Settings;

/// Wiretap channel laboratory: secrecy capacity, equivocation, quantization
/// loss and the LPN cipher.
#[derive(Parser, Debug)]
#[command(name = "wiretap", version)]
struct Cli {
    /// `key=value` file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crossovers, binary entropies and secrecy capacity of the split channel.
    Capacity(CapacityArgs),
    /// Maximum equivocation loss over a grid of wiretap noise variances.
    LossCurve(LossCurveArgs),
    /// Eavesdropper equivocation of a coset code on a BSC.
    Equivocation(EquivocationArgs),
    /// Quantized mutual information and equivocation loss per quantizer size.
    QuantizerSweep(SweepArgs),
    /// Random full-rank coset code written in the code file format.
    RandomCode(RandomCodeArgs),
    /// LPN cipher: key generation, encryption, decryption.
    #[command(subcommand)]
    Lpn(LpnCommand),
}

#[derive(Args, Debug)]
struct CapacityArgs {
    #[arg(long)]
    sigma_m_sq: Option<f64>,
    #[arg(long)]
    sigma_w_sq: Option<f64>,
    /// Use this main-channel crossover instead of the one implied by the variances.
    #[arg(long)]
    override_p: Option<f64>,
    /// Use this wiretap crossover instead of the one implied by the variances.
    #[arg(long)]
    override_p_w: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LossCurveArgs {
    #[arg(long)]
    sigma_m_sq: Option<f64>,
    /// `start:end:points` (inclusive, evenly spaced) or a comma list.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Mc,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug)]
struct EquivocationArgs {
    /// Code file: `n,k_fine,k_coarse` header then the matrix.
    #[arg(long, conflicts_with_all = ["example1", "uncoded"])]
    code: Option<PathBuf>,
    /// The two-bit, one-message-bit example code.
    #[arg(long)]
    example1: bool,
    /// Direct transmission of this many bits.
    #[arg(long)]
    uncoded: Option<usize>,
    #[arg(long)]
    p_w: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Hex seed, at least 16 bytes.
    #[arg(long)]
    seed: Option<String>,
    /// Also simulate the legitimate receiver's block error rate on BSC(p_main).
    #[arg(long)]
    p_main: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    sigma_m_sq: Option<f64>,
    #[arg(long)]
    sigma_w_sq: Option<f64>,
    /// Comma list of quantizer sizes.
    #[arg(long)]
    levels: Option<String>,
    /// Outermost threshold; defaults to 1 + 6σ of the total wiretap noise.
    #[arg(long)]
    half_range: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RandomCodeArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k_fine: Option<usize>,
    #[arg(long)]
    k_coarse: Option<usize>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum LpnCommand {
    Keygen(KeygenArgs),
    Encrypt(EncryptArgs),
    Decrypt(DecryptArgs),
}

#[derive(Args, Debug)]
struct KeygenArgs {
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Block length: 23 (Golay) or 21 (three Hamming codes).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EncryptArgs {
    #[arg(long)]
    key: Option<PathBuf>,
    /// Plaintext as `len:hex`, or bare hex holding exactly `l` bits.
    #[arg(long)]
    message: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecryptArgs {
    #[arg(long)]
    key: Option<PathBuf>,
    #[arg(long)]
    ct: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<()> {
    let cfg = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Capacity(a) => commands::capacity(&cfg, a),
        Command::LossCurve(a) => commands::loss_curve(&cfg, a),
        Command::Equivocation(a) => commands::equivocation(&cfg, a),
        Command::QuantizerSweep(a) => commands::quantizer_sweep(&cfg, a),
        Command::RandomCode(a) => commands::random_code(&cfg, a),
        Command::Lpn(LpnCommand::Keygen(a)) => commands::lpn_keygen(&cfg, a),
        Command::Lpn(LpnCommand::Encrypt(a)) => commands::lpn_encrypt(&cfg, a),
        Command::Lpn(LpnCommand::Decrypt(a)) => commands::lpn_decrypt(&cfg, a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
