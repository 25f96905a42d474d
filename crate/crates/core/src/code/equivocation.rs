use std::fmt;

use rayon::prelude::*;

use crate::channels::Bsc;
use crate::error::{Error, Result};
use crate::info::xlog2x;
use crate::prng::PrngStream;
use crate::report::format_f64;

use super::coset::CosetCode;
use super::decode::{Codebook, ErrorRate};

/// Largest block length for [`exact_equivocation`].
pub const MAX_EXACT_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivocationMethod {
    Exact,
    MonteCarlo,
}

impl fmt::Display for EquivocationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::MonteCarlo => "monte-carlo",
        })
    }
}

/// Eavesdropper equivocation `H(S|Z)/K` for one code and wiretap channel.
///
/// `error_prob` is the legitimate receiver's block error rate, filled in only
/// when a main channel was simulated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivocationReport {
    pub equivocation: f64,
    pub rate: f64,
    pub error_prob: Option<f64>,
    pub method: EquivocationMethod,
    pub stderr: f64,
}

impl EquivocationReport {
    pub const CSV_HEADER: &'static str = "equivocation,rate,error_prob,method,stderr";

    pub fn with_error_rate(mut self, est: &ErrorRate) -> Self {
        self.error_prob = Some(est.rate);
        self
    }

    /// CSV row; a missing error probability is an empty field.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            format_f64(self.equivocation),
            format_f64(self.rate),
            self.error_prob.map(format_f64).unwrap_or_default(),
            self.method,
            format_f64(self.stderr)
        )
    }
}

fn check_message(code: &CosetCode) -> Result<()> {
    if code.msg_len() == 0 {
        return Err(Error::Parameter(
            "equivocation is undefined for a code carrying no message bits".into(),
        ));
    }
    Ok(())
}

fn entropy(dist: &[f64]) -> f64 {
    dist.iter().map(|&q| xlog2x(q)).sum()
}

/// Exact equivocation, uniform message and coset member.
///
/// The posterior on `S` depends on `z` only through its syndrome, which is
/// `[0 ∥ S] ⊕ syn(e)` for the channel noise `e`. With `Q` the law of `syn(e)`
/// this gives `H(S|Z) = H(Q) − H(Q_zero)`, where `Q_zero` is the marginal of
/// the pinned block. `Q` is accumulated over all `2^n` noise patterns.
pub fn exact_equivocation(code: &CosetCode, wiretap: &Bsc) -> Result<EquivocationReport> {
    check_message(code)?;
    let n = code.n();
    if n > MAX_EXACT_N {
        return Err(Error::Capability {
            what: format!("exact equivocation over 2^{n} channel outputs"),
            limit: format!("n <= {MAX_EXACT_N}"),
        });
    }
    let h = code.h();
    let r = h.rows();
    let column_syndromes: Vec<usize> = (0..n).map(|c| h.column(c).to_u64() as usize).collect();
    let p = wiretap.p();
    let by_weight: Vec<f64> = (0..=n as i32)
        .map(|w| p.powi(w) * (1.0 - p).powi(n as i32 - w))
        .collect();

    let mut q = vec![0.0f64; 1 << r];
    let mut syndrome = 0usize;
    let mut e = 0u64;
    q[0] += by_weight[0];
    for i in 1u64..(1u64 << n) {
        let j = i.trailing_zeros() as usize;
        e ^= 1 << j;
        syndrome ^= column_syndromes[j];
        q[syndrome] += by_weight[e.count_ones() as usize];
    }

    let zero_mask = (1usize << code.zero_len()) - 1;
    let mut q_zero = vec![0.0f64; 1 << code.zero_len()];
    for (s, &mass) in q.iter().enumerate() {
        q_zero[s & zero_mask] += mass;
    }
    let k = code.msg_len() as f64;
    let delta = (entropy(&q) - entropy(&q_zero)) / k;
    Ok(EquivocationReport {
        equivocation: delta.clamp(0.0, 1.0),
        rate: code.rate(),
        error_prob: None,
        method: EquivocationMethod::Exact,
        stderr: 0.0,
    })
}

#[derive(Clone, Copy, Default)]
struct Moments {
    count: usize,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn merge(self, other: Self) -> Self {
        Self {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }
}

/// Draws `samples` triples `(s, x, z)` and adds up `H(S | Z = z)`, obtained by
/// weighting every fine codeword with its channel likelihood.
fn sample_posterior_entropies(
    code: &CosetCode,
    book: &Codebook,
    wiretap: &Bsc,
    samples: usize,
    rng: &mut PrngStream,
) -> Result<Moments> {
    let n = code.n();
    let p = wiretap.p();
    let by_distance: Vec<f64> = (0..=n as i32)
        .map(|d| p.powi(d) * (1.0 - p).powi(n as i32 - d))
        .collect();
    let mut posterior = vec![0.0f64; 1 << code.msg_len()];
    let mut m = Moments::default();
    for _ in 0..samples {
        let s = rng.next_bits(code.msg_len());
        let x = code.encode(&s, rng)?;
        let z = wiretap.transmit(&x, rng);
        posterior.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..book.len() {
            posterior[book.messages[i] as usize] +=
                by_distance[book.distance(i, z.words()) as usize];
        }
        let total: f64 = posterior.iter().sum();
        let h: f64 = posterior.iter().map(|&v| xlog2x(v / total)).sum();
        m.count += 1;
        m.sum += h;
        m.sum_sq += h * h;
    }
    Ok(m)
}

fn report_from(code: &CosetCode, m: Moments) -> EquivocationReport {
    let k = code.msg_len() as f64;
    let n = m.count as f64;
    let mean = m.sum / n;
    let var = if m.count > 1 {
        ((m.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    EquivocationReport {
        equivocation: (mean / k).clamp(0.0, 1.0),
        rate: code.rate(),
        error_prob: None,
        method: EquivocationMethod::MonteCarlo,
        stderr: (var / n).sqrt() / k,
    }
}

fn check_samples(code: &CosetCode, samples: usize) -> Result<Codebook> {
    check_message(code)?;
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    Codebook::build(code)
}

/// Monte Carlo estimate of the equivocation with its standard error.
pub fn monte_carlo_equivocation(
    code: &CosetCode,
    wiretap: &Bsc,
    samples: usize,
    rng: &mut PrngStream,
) -> Result<EquivocationReport> {
    let book = check_samples(code, samples)?;
    let m = sample_posterior_entropies(code, &book, wiretap, samples, rng)?;
    Ok(report_from(code, m))
}

/// Same estimator split over `workers` threads. Worker `i` draws from the
/// substream `worker-i` of `rng` and takes an equal share of the samples, so
/// the result depends only on the seed and the worker count.
pub fn monte_carlo_equivocation_parallel(
    code: &CosetCode,
    wiretap: &Bsc,
    samples: usize,
    rng: &mut PrngStream,
    workers: usize,
) -> Result<EquivocationReport> {
    if workers == 0 {
        return Err(Error::Parameter("need at least one worker".into()));
    }
    let book = check_samples(code, samples)?;
    let jobs: Vec<(usize, PrngStream)> = (0..workers)
        .map(|i| {
            let share = samples / workers + usize::from(i < samples % workers);
            (share, rng.derive(&format!("worker-{i}")))
        })
        .collect();
    let parts = jobs
        .into_par_iter()
        .map(|(share, mut stream)| {
            sample_posterior_entropies(code, &book, wiretap, share, &mut stream)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = parts.into_iter().fold(Moments::default(), Moments::merge);
    Ok(report_from(code, m))
}
