//! The split AWGN channel with antipodal signalling, the binary symmetric
//! channels it induces under sign quantization, and multi-level quantizers.

use libm::erfc;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::prng::PrngStream;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Bit 0 is sent as −1, bit 1 as +1.
#[inline]
pub fn bit_to_symbol(bit: bool) -> f64 {
    if bit {
        1.0
    } else {
        -1.0
    }
}

/// Main channel adds `N(0, sigma_m_sq)`; the wiretap observes the main
/// output plus a further independent `N(0, sigma_w_sq)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AwgnSplitChannel {
    sigma_m_sq: f64,
    sigma_w_sq: f64,
}

impl AwgnSplitChannel {
    pub fn new(sigma_m_sq: f64, sigma_w_sq: f64) -> Result<Self> {
        if !(sigma_m_sq > 0.0) || !sigma_m_sq.is_finite() {
            return Err(Error::Domain(format!(
                "main-channel variance must be positive, got {sigma_m_sq}"
            )));
        }
        if !(sigma_w_sq >= 0.0) || !sigma_w_sq.is_finite() {
            return Err(Error::Domain(format!(
                "wiretap variance must be nonnegative, got {sigma_w_sq}"
            )));
        }
        Ok(Self {
            sigma_m_sq,
            sigma_w_sq,
        })
    }

    /// Noiseless channel, for tests that pin the signal path.
    pub fn noiseless() -> Self {
        Self {
            sigma_m_sq: 0.0,
            sigma_w_sq: 0.0,
        }
    }

    pub fn sigma_m_sq(&self) -> f64 {
        self.sigma_m_sq
    }

    pub fn sigma_w_sq(&self) -> f64 {
        self.sigma_w_sq
    }

    /// Total noise variance seen by the wiretapper.
    pub fn sigma_total_sq(&self) -> f64 {
        self.sigma_m_sq + self.sigma_w_sq
    }

    /// `(p, p_w)`: crossover of the main and wiretap channels after sign quantization.
    pub fn crossover_probabilities(&self) -> (f64, f64) {
        (
            normal_cdf(-1.0 / self.sigma_m_sq.sqrt()),
            normal_cdf(-1.0 / self.sigma_total_sq().sqrt()),
        )
    }

    /// Sends `x` once; returns the main and wiretap observations.
    pub fn transmit(&self, x: &BitVector, rng: &mut PrngStream) -> (Vec<f64>, Vec<f64>) {
        let (sm, sw) = (self.sigma_m_sq.sqrt(), self.sigma_w_sq.sqrt());
        x.iter()
            .map(|bit| {
                let y = bit_to_symbol(bit) + sm * rng.gaussian();
                let w = y + sw * rng.gaussian();
                (y, w)
            })
            .unzip()
    }
}

/// Binary symmetric channel with crossover `p ∈ [0, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bsc {
    p: f64,
}

impl Bsc {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::Domain(format!(
                "BSC crossover must lie in [0, 1/2], got {p}"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Flips every bit independently with probability `p`.
    pub fn transmit(&self, x: &BitVector, rng: &mut PrngStream) -> BitVector {
        let flips = rng.bernoulli_bits(x.len(), self.p);
        x ^ &flips
    }
}

/// Crossover of `BSC(p)` followed by `BSC(p_y)`.
pub fn bsc_concatenate(p: f64, p_y: f64) -> f64 {
    p * (1.0 - p_y) + (1.0 - p) * p_y
}

/// The channel `BSC(p_y)` that degrades `BSC(p)` into `BSC(p_w)`.
pub fn degrading_channel(p: f64, p_w: f64) -> Result<Bsc> {
    for q in [p, p_w] {
        if !(0.0..0.5).contains(&q) {
            return Err(Error::Domain(format!(
                "crossover must lie in [0, 1/2), got {q}"
            )));
        }
    }
    if p > p_w {
        return Err(Error::NotDegraded { p, p_w });
    }
    let p_y = (p_w - p) / (1.0 - 2.0 * p);
    Bsc::new(p_y.clamp(0.0, 0.5))
}

/// Scalar quantizer with cells `(t[i-1], t[i]]`; the end cells are unbounded.
#[derive(Clone, Debug, PartialEq)]
pub struct Quantizer {
    thresholds: Vec<f64>,
}

impl Quantizer {
    pub fn new(thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::Parameter(
                "a quantizer needs at least one threshold".into(),
            ));
        }
        if thresholds.iter().any(|t| !t.is_finite()) {
            return Err(Error::Parameter("thresholds must be finite".into()));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(
                "thresholds must be strictly ascending".into(),
            ));
        }
        Ok(Self { thresholds })
    }

    /// The two-level sign quantizer.
    pub fn sign() -> Self {
        Self {
            thresholds: vec![0.0],
        }
    }

    /// `levels − 1` thresholds evenly spread over `[−half_range, half_range]`,
    /// endpoints included; two levels give the single threshold 0.
    pub fn uniform(levels: usize, half_range: f64) -> Result<Self> {
        if levels < 2 {
            return Err(Error::Parameter(format!(
                "need at least 2 levels, got {levels}"
            )));
        }
        if !(half_range > 0.0) || !half_range.is_finite() {
            return Err(Error::Parameter(format!(
                "half range must be positive, got {half_range}"
            )));
        }
        if levels == 2 {
            return Ok(Self::sign());
        }
        let gaps = (levels - 2) as f64;
        let thresholds = (0..levels - 1)
            .map(|i| -half_range + 2.0 * half_range * i as f64 / gaps)
            .collect();
        Self::new(thresholds)
    }

    pub fn levels(&self) -> usize {
        self.thresholds.len() + 1
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// Index of the cell containing `w`; a value on a threshold belongs to the
    /// cell whose upper edge it is.
    pub fn quantize(&self, w: f64) -> usize {
        self.thresholds.partition_point(|&t| t < w)
    }

    /// `(lower, upper)` edges of cell `i`, infinite at the ends.
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 {
            f64::NEG_INFINITY
        } else {
            self.thresholds[i - 1]
        };
        let hi = self.thresholds.get(i).copied().unwrap_or(f64::INFINITY);
        (lo, hi)
    }
}

/// Half range used for quantizer sweeps: the symbol mean plus six standard
/// deviations of the total wiretap noise.
pub fn default_half_range(sigma_total_sq: f64) -> f64 {
    1.0 + 6.0 * sigma_total_sq.sqrt()
}
