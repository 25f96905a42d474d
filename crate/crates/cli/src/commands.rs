use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use wiretap_core::channels::{default_half_range, AwgnSplitChannel, Bsc, Quantizer};
use wiretap_core::code::{
    block_error_rate, exact_equivocation, monte_carlo_equivocation_parallel, CosetCode,
    EquivocationReport, WiretapCodeParams,
};
use wiretap_core::info::{
    awgn_mutual_information, binary_entropy, equivocation_loss, quantized_mutual_information,
    secrecy_capacity_bsc, LossCurvePoint,
};
use wiretap_core::lpn::{self, LpnCiphertext, LpnKey, LpnParams};
use wiretap_core::report::format_f64;
use wiretap_core::{BitVector, PrngStream};

use crate::config::Settings;
use crate::{
    CapacityArgs, DecryptArgs, EncryptArgs, EquivocationArgs, KeygenArgs, LossCurveArgs, Mode,
    RandomCodeArgs, SweepArgs,
};

const DEFAULT_GRID: &str = "0.5:8:16";
const DEFAULT_LEVELS: &str = "2,4,8,16,32,64,128,256";

/// Writes to `out`, or to stdout when no path is given.
fn emit(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for row in rows {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

fn stream(cfg: &Settings, seed: Option<String>, label: &str) -> Result<PrngStream> {
    let seed: String = cfg.require(seed, "seed")?;
    Ok(PrngStream::from_hex_seed(&seed, label)?)
}

pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let number = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| anyhow!("bad grid value {t:?}: {e}"))
    };
    if let Some((start, rest)) = spec.split_once(':') {
        let (end, points) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("grid {spec:?} must be start:end:points"))?;
        let (start, end) = (number(start)?, number(end)?);
        let points: usize = points
            .trim()
            .parse()
            .map_err(|e| anyhow!("bad grid point count {points:?}: {e}"))?;
        if points == 0 {
            bail!("grid needs at least one point");
        }
        if points == 1 {
            if start != end {
                bail!("a one-point grid needs start == end");
            }
            return Ok(vec![start]);
        }
        let step = (end - start) / (points - 1) as f64;
        Ok((0..points)
            .map(|i| {
                if i + 1 == points {
                    end
                } else {
                    start + step * i as f64
                }
            })
            .collect())
    } else {
        spec.split(',').map(number).collect()
    }
}

pub fn capacity(cfg: &Settings, a: CapacityArgs) -> Result<()> {
    let override_p = cfg.optional(a.override_p, "override-p")?;
    let override_p_w = cfg.optional(a.override_p_w, "override-p-w")?;
    let implied = if override_p.is_some() && override_p_w.is_some() {
        None
    } else {
        let ch = AwgnSplitChannel::new(
            cfg.require(a.sigma_m_sq, "sigma-m-sq")?,
            cfg.require(a.sigma_w_sq, "sigma-w-sq")?,
        )?;
        Some(ch.crossover_probabilities())
    };
    let p = override_p.or(implied.map(|c| c.0)).expect("set above");
    let p_w = override_p_w.or(implied.map(|c| c.1)).expect("set above");
    let c_s = secrecy_capacity_bsc(p, p_w)?;
    let row = [p, p_w, binary_entropy(p)?, binary_entropy(p_w)?, c_s]
        .map(format_f64)
        .join(",");
    emit(a.out, &csv("p,p_w,h_p,h_p_w,secrecy_capacity", [row]))
}

pub fn loss_curve_csv(sigma_m_sq: f64, grid: &[f64]) -> Result<String> {
    let points = wiretap_core::info::loss_curve(sigma_m_sq, grid)?;
    Ok(csv(
        LossCurvePoint::CSV_HEADER,
        points.iter().map(LossCurvePoint::csv_row),
    ))
}

pub fn loss_curve(cfg: &Settings, a: LossCurveArgs) -> Result<()> {
    let sigma_m_sq = cfg.get(a.sigma_m_sq, "sigma-m-sq", 1.0)?;
    let grid = parse_grid(&cfg.get(a.grid, "grid", DEFAULT_GRID.to_string())?)?;
    emit(a.out, &loss_curve_csv(sigma_m_sq, &grid)?)
}

fn load_code(cfg: &Settings, a: &EquivocationArgs) -> Result<CosetCode> {
    if a.example1 {
        return Ok(CosetCode::example1());
    }
    if let Some(n) = a.uncoded {
        return Ok(CosetCode::uncoded(n));
    }
    match cfg.optional(a.code.clone(), "code")? {
        Some(path) => Ok(CosetCode::from_text(&read(&path)?)
            .with_context(|| format!("parsing code {}", path.display()))?),
        None => bail!("choose a code with --code FILE, --example1 or --uncoded N"),
    }
}

pub fn equivocation(cfg: &Settings, a: EquivocationArgs) -> Result<()> {
    let code = load_code(cfg, &a)?;
    let wiretap = Bsc::new(cfg.require(a.p_w, "p-w")?)?;
    let mode = cfg.get(a.mode, "mode", Mode::Exact)?;
    let p_main: Option<f64> = cfg.optional(a.p_main, "p-main")?;
    let needs_seed = mode == Mode::Mc || p_main.is_some();
    let mut rng = if needs_seed {
        Some(stream(cfg, a.seed, "equivocation")?)
    } else {
        None
    };
    let mut report: EquivocationReport = match mode {
        Mode::Exact => exact_equivocation(&code, &wiretap)?,
        Mode::Mc => {
            let samples = cfg.get(a.samples, "samples", 10_000)?;
            let workers = cfg.get(a.workers, "workers", 1)?;
            let rng = rng.as_mut().expect("seeded in mc mode");
            monte_carlo_equivocation_parallel(&code, &wiretap, samples, rng, workers)?
        }
    };
    if let Some(p) = p_main {
        let trials = cfg.get(a.trials, "trials", 10_000)?;
        let mut sub = rng
            .as_mut()
            .expect("seeded with --p-main")
            .derive("main-channel");
        let est = block_error_rate(&code, &Bsc::new(p)?, trials, &mut sub)?;
        report = report.with_error_rate(&est);
    }
    emit(
        a.out,
        &csv(EquivocationReport::CSV_HEADER, [report.csv_row()]),
    )
}

pub fn quantizer_sweep(cfg: &Settings, a: SweepArgs) -> Result<()> {
    let ch = AwgnSplitChannel::new(
        cfg.get(a.sigma_m_sq, "sigma-m-sq", 1.0)?,
        cfg.get(a.sigma_w_sq, "sigma-w-sq", 1.0)?,
    )?;
    let levels: Vec<usize> = cfg
        .get(a.levels, "levels", DEFAULT_LEVELS.to_string())?
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| anyhow!("bad quantizer size {t:?}: {e}"))
        })
        .collect::<Result<_>>()?;
    let total = ch.sigma_total_sq();
    let half_range = cfg.get(a.half_range, "half-range", default_half_range(total))?;
    let (p, p_w) = ch.crossover_probabilities();
    let mut rows = Vec::with_capacity(levels.len() + 1);
    for &l in &levels {
        let i = quantized_mutual_information(total, &Quantizer::uniform(l, half_range)?)?;
        let loss = equivocation_loss(p, p_w, i)?;
        rows.push(format!("{l},{},{}", format_f64(i), format_f64(loss)));
    }
    let i = awgn_mutual_information(total)?;
    let loss = equivocation_loss(p, p_w, i)?;
    rows.push(format!("inf,{},{}", format_f64(i), format_f64(loss)));
    emit(a.out, &csv("levels,i_x_zhat,loss", rows))
}

pub fn random_code(cfg: &Settings, a: RandomCodeArgs) -> Result<()> {
    let params = WiretapCodeParams::new(
        cfg.require(a.n, "n")?,
        cfg.require(a.k_fine, "k-fine")?,
        cfg.require(a.k_coarse, "k-coarse")?,
        1.0,
    )?;
    let code = CosetCode::random(&mut stream(cfg, a.seed, "random-code")?, &params)?;
    emit(a.out, &code.to_text())
}

pub fn lpn_keygen(cfg: &Settings, a: KeygenArgs) -> Result<()> {
    let params = LpnParams::new(
        cfg.get(a.l, "l", 4)?,
        cfg.get(a.m, "m", 8)?,
        cfg.get(a.k, "k", 16)?,
        cfg.get(a.n, "n", 23)?,
        cfg.get(a.p, "p", 0.05)?,
    )?;
    let key = lpn::keygen(&mut stream(cfg, a.seed, lpn::KEYGEN_LABEL)?, &params)?;
    emit(a.out, &key.to_text())
}

fn load_key(cfg: &Settings, key: Option<PathBuf>) -> Result<LpnKey> {
    let path: PathBuf = cfg.require(key, "key")?;
    LpnKey::from_text(&read(&path)?).with_context(|| format!("parsing key {}", path.display()))
}

fn parse_message(text: &str, l: usize) -> Result<BitVector> {
    let a = if text.contains(':') {
        BitVector::from_hex(text)?
    } else {
        BitVector::from_hex(&format!("{l}:{}", text.trim()))?
    };
    if a.len() != l {
        bail!("message has {} bits, the key expects {l}", a.len());
    }
    Ok(a)
}

pub fn lpn_encrypt(cfg: &Settings, a: EncryptArgs) -> Result<()> {
    let key = load_key(cfg, a.key)?;
    let params = *key.params();
    let message = parse_message(&cfg.require::<String>(a.message, "message")?, params.l)?;
    let mut rng = stream(cfg, a.seed, lpn::ENCRYPT_LABEL)?;
    let ct = lpn::encrypt(&key, &params, &message, &mut rng)?;
    emit(a.out, &ct.to_text())
}

pub fn lpn_decrypt(cfg: &Settings, a: DecryptArgs) -> Result<()> {
    let key = load_key(cfg, a.key)?;
    let path: PathBuf = cfg.require(a.ct, "ct")?;
    let ct = LpnCiphertext::from_text(&read(&path)?)
        .with_context(|| format!("parsing ciphertext {}", path.display()))?;
    let plain = lpn::decrypt(&key, key.params(), &ct)?;
    emit(a.out, &format!("{}\n", plain.to_hex()))
}
