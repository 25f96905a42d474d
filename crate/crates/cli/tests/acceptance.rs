//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use wiretap_core::channels::{default_half_range, normal_cdf, AwgnSplitChannel, Bsc, Quantizer};
use wiretap_core::code::{
    exact_equivocation, monte_carlo_equivocation_parallel, params_from_channel, CosetCode,
    WiretapCodeParams,
};
use wiretap_core::info::{
    awgn_mutual_information, binary_entropy, equivocation_loss, loss_curve,
    quantized_mutual_information,
};
use wiretap_core::lpn::{self, EncryptionNoise, LpnParams};
use wiretap_core::PrngStream;

const SEED: &[u8] = b"acceptance-suite-seed";

fn rng(label: &str) -> PrngStream {
    PrngStream::new(SEED, label).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn example1_equivocation() -> Outcome {
    let (d, t) = timed(|| {
        exact_equivocation(&CosetCode::example1(), &Bsc::new(0.25).unwrap())
            .unwrap()
            .equivocation
    });
    outcome(
        (d - 0.954).abs() <= 1e-3 && t < Duration::from_secs(1),
        format!("equivocation {d:.6} in {t:?}"),
    )
}

fn uncoded_baseline() -> Outcome {
    let d = exact_equivocation(&CosetCode::uncoded(1), &Bsc::new(0.25).unwrap())
        .unwrap()
        .equivocation;
    outcome((d - 0.811278).abs() <= 1e-4, format!("equivocation {d:.6}"))
}

fn max_loss_at_unit_variances() -> Outcome {
    let (loss, t) = timed(|| wiretap_core::info::max_equivocation_loss(1.0, 1.0).unwrap());
    outcome(
        (loss - 0.5).abs() <= 0.05 && t < Duration::from_secs(1),
        format!("loss {loss:.4} in {t:?}"),
    )
}

fn loss_curve_shape() -> Outcome {
    let grid: Vec<f64> = (0..16).map(|i| 0.5 + 7.5 * i as f64 / 15.0).collect();
    let curve = loss_curve(1.0, &grid).unwrap();
    let decreasing = curve.windows(2).all(|w| w[1].loss < w[0].loss);
    let at_one = wiretap_core::info::max_equivocation_loss(1.0, 1.0).unwrap();
    let at_eight = curve.last().unwrap().loss;
    outcome(
        decreasing && at_eight < 0.2 * at_one,
        format!(
            "{} points, strictly decreasing: {decreasing}, loss(8)/loss(1) = {:.3}",
            curve.len(),
            at_eight / at_one
        ),
    )
}

fn hard_decision_boundary() -> Outcome {
    let mut r = rng("boundary");
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = 0.5 * r.next_f64();
        let b = 0.5 * r.next_f64();
        let (p, p_w) = if a < b { (a, b) } else { (b, a) };
        let loss = equivocation_loss(p, p_w, 1.0 - binary_entropy(p_w).unwrap()).unwrap();
        worst = worst.max(loss.abs());
    }
    outcome(
        worst <= 1e-9,
        format!("largest |loss| {worst:.2e} over 20 pairs"),
    )
}

fn quantized_information_converges() -> Outcome {
    let h = default_half_range(2.0);
    let values: Vec<f64> = (1..=8)
        .map(|k| {
            quantized_mutual_information(2.0, &Quantizer::uniform(1 << k, h).unwrap()).unwrap()
        })
        .collect();
    let awgn = awgn_mutual_information(2.0).unwrap();
    let gap = (awgn - values[7]).abs();
    let monotone = values.windows(2).all(|w| w[1] >= w[0]);
    outcome(
        gap < 1e-3 && monotone,
        format!("|I - I_256| = {gap:.2e}, nondecreasing over L = 2..256: {monotone}"),
    )
}

fn sign_quantizer_consistency() -> Outcome {
    let mut r = rng("sign");
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let s2 = 0.05 + 10.0 * r.next_f64();
        let p_w = normal_cdf(-1.0 / s2.sqrt());
        let q = quantized_mutual_information(s2, &Quantizer::sign()).unwrap();
        worst = worst.max((q - (1.0 - binary_entropy(p_w).unwrap())).abs());
    }
    outcome(
        worst <= 1e-9,
        format!("largest gap {worst:.2e} over 10 variances"),
    )
}

fn oracle_cross_validation() -> Outcome {
    let mut r = rng("oracle");
    let shapes = [(8, 6, 2), (9, 6, 3), (10, 7, 3), (11, 8, 4), (12, 8, 4)];
    let mut pass = true;
    let mut worst = 0.0f64;
    for (i, &(n, kf, kc)) in shapes.iter().enumerate() {
        let code =
            CosetCode::random(&mut r, &WiretapCodeParams::new(n, kf, kc, 0.1).unwrap()).unwrap();
        let ch = Bsc::new(0.05 + 0.05 * i as f64).unwrap();
        let exact = exact_equivocation(&code, &ch).unwrap().equivocation;
        let est = monte_carlo_equivocation_parallel(&code, &ch, 10_000, &mut r, 4).unwrap();
        let z = (est.equivocation - exact).abs() / est.stderr;
        worst = worst.max(z);
        pass &= (est.equivocation - exact).abs() <= 3.0 * est.stderr;
    }
    outcome(
        pass,
        format!("5 codes, largest deviation {worst:.2} standard errors"),
    )
}

fn parameter_arithmetic() -> Outcome {
    let (p, p_w) = AwgnSplitChannel::new(1.0, 1.0)
        .unwrap()
        .crossover_probabilities();
    let eps = 1e-4;
    let params = params_from_channel(100_000, p, p_w, eps).unwrap();
    let bound = binary_entropy(p_w).unwrap() - binary_entropy(p).unwrap() - 3.0 * eps;
    outcome(
        params.rate() >= bound && params.k_msg > 0,
        format!(
            "k_fine {}, k_coarse {}, k_msg {}, rate {:.5} >= {bound:.5}",
            params.k_fine,
            params.k_coarse,
            params.k_msg,
            params.rate()
        ),
    )
}

fn lpn_roundtrip() -> Outcome {
    let p = 0.03;
    let params = LpnParams::toy(p).unwrap();
    let radius = params.family().unwrap().radius();
    let correctable: f64 = (0..=radius)
        .map(|w| {
            let choose = (0..w).fold(1.0, |acc, i| acc * (params.n - i) as f64 / (i + 1) as f64);
            choose * p.powi(w as i32) * (1.0 - p).powi((params.n - w) as i32)
        })
        .sum();
    let mut r = rng("lpn");
    let (mut ok, mut within, mut within_ok) = (0, 0, 0);
    let mut key = lpn::keygen(&mut r, &params).unwrap();
    for trial in 0..1000 {
        if trial % 100 == 0 {
            key = lpn::keygen(&mut r.derive("key"), &params).unwrap();
        }
        let mut enc = r.derive("message");
        let a = enc.next_bits(params.l);
        let noise = EncryptionNoise::sample(&key, &mut enc);
        let ct = lpn::encrypt_with(&key, &a, &noise).unwrap();
        let good = lpn::decrypt(&key, &params, &ct).unwrap() == a;
        ok += usize::from(good);
        if noise.v.weight() <= radius {
            within += 1;
            within_ok += usize::from(good);
        }
    }
    outcome(
        correctable >= 0.99 && within_ok == within && ok >= 980,
        format!(
            "P(correctable) {correctable:.4}, conditional {within_ok}/{within}, overall {ok}/1000"
        ),
    )
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<Vec<u8>, String> {
    let out = dir.join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_wiretap"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!(
            "{args:?} failed: {}",
            String::from_utf8_lossy(&status.stderr)
        ));
    }
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden")
        .join(name)
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let seed = "00000000000000000000000000005eed";
    let key_path = d.join("key.txt");
    let code_path = d.join("code.txt");
    let check = || -> Result<usize, String> {
        std::fs::write(&key_path, run_cli(d, &["lpn", "keygen", "--seed", seed])?).unwrap();
        std::fs::write(
            &code_path,
            run_cli(
                d,
                &[
                    "random-code",
                    "--n",
                    "10",
                    "--k-fine",
                    "7",
                    "--k-coarse",
                    "3",
                    "--seed",
                    seed,
                ],
            )?,
        )
        .unwrap();
        let key = key_path.to_str().unwrap();
        let code = code_path.to_str().unwrap();
        let runs: Vec<Vec<&str>> = vec![
            vec!["capacity", "--sigma-m-sq", "1", "--sigma-w-sq", "1"],
            vec!["loss-curve", "--sigma-m-sq", "1", "--grid", "0.5:8:16"],
            vec!["quantizer-sweep", "--sigma-m-sq", "1", "--sigma-w-sq", "1"],
            vec![
                "random-code",
                "--n",
                "10",
                "--k-fine",
                "7",
                "--k-coarse",
                "3",
                "--seed",
                seed,
            ],
            vec![
                "equivocation",
                "--code",
                code,
                "--p-w",
                "0.2",
                "--mode",
                "mc",
                "--samples",
                "2000",
                "--workers",
                "3",
                "--seed",
                seed,
                "--p-main",
                "0.05",
                "--trials",
                "500",
            ],
            vec![
                "equivocation",
                "--example1",
                "--p-w",
                "0.25",
                "--mode",
                "exact",
            ],
            vec!["lpn", "keygen", "--seed", seed],
            vec![
                "lpn",
                "encrypt",
                "--key",
                key,
                "--message",
                "4:0d",
                "--seed",
                seed,
            ],
        ];
        for args in &runs {
            if run_cli(d, args)? != run_cli(d, args)? {
                return Err(format!("{args:?} differs between runs"));
            }
        }
        let golden_key = std::fs::read(golden("toy_key.txt")).unwrap();
        if std::fs::read(&key_path).unwrap() != golden_key {
            return Err("keygen drifted from the golden key".into());
        }
        let ct = run_cli(
            d,
            &[
                "lpn",
                "encrypt",
                "--key",
                key,
                "--message",
                "4:0d",
                "--seed",
                seed,
            ],
        )?;
        if ct != std::fs::read(golden("toy_ct.txt")).unwrap() {
            return Err("encryption drifted from the golden ciphertext".into());
        }
        Ok(runs.len())
    };
    match check() {
        Ok(n) => outcome(
            true,
            format!("{n} seeded commands byte-identical, golden key and ciphertext match"),
        ),
        Err(e) => outcome(false, e),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("example-1 equivocation", example1_equivocation),
        ("uncoded baseline", uncoded_baseline),
        (
            "max equivocation loss at unit variances",
            max_loss_at_unit_variances,
        ),
        ("loss curve shape", loss_curve_shape),
        ("hard-decision boundary", hard_decision_boundary),
        ("quantized information approaches AWGN", quantized_information_converges),
        ("sign quantizer consistency", sign_quantizer_consistency),
        ("monte carlo vs exact equivocation", oracle_cross_validation),
        ("code parameter arithmetic", parameter_arithmetic),
        ("lpn round trip", lpn_roundtrip),
        ("bit-exact reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "{} {:>2}. {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
