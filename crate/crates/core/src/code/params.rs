use crate::error::{Error, Result};
use crate::info::binary_entropy;

/// Dimensions of a coset wiretap code.
///
/// The fine code (dimension `k_fine`) is what the legitimate receiver
/// decodes; the coarse subcode (dimension `k_coarse`) is the randomisation
/// each message is spread over; `k_msg = k_fine − k_coarse` secret bits ride
/// on every block of `n` channel bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WiretapCodeParams {
    pub n: usize,
    pub k_fine: usize,
    pub k_coarse: usize,
    pub k_msg: usize,
    pub epsilon: f64,
}

impl WiretapCodeParams {
    pub fn new(n: usize, k_fine: usize, k_coarse: usize, epsilon: f64) -> Result<Self> {
        if k_coarse > k_fine || k_fine > n {
            return Err(Error::Parameter(format!(
                "need k_coarse <= k_fine <= n, got {k_coarse}, {k_fine}, {n}"
            )));
        }
        if !(epsilon > 0.0) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self {
            n,
            k_fine,
            k_coarse,
            k_msg: k_fine - k_coarse,
            epsilon,
        })
    }

    pub fn rate(&self) -> f64 {
        self.k_msg as f64 / self.n as f64
    }
}

/// Dimensions for a degraded pair `BSC(p)`, `BSC(p_w)`:
/// `k_fine = ⌊n(1 − h(p) − 2ε)⌋`, `k_coarse = ⌊n(1 − h(p_w) − 2ε)⌋`,
/// `k_msg = k_fine − k_coarse`.
///
/// A negative coarse dimension (wiretap close to useless) is clamped to zero.
pub fn params_from_channel(n: usize, p: f64, p_w: f64, epsilon: f64) -> Result<WiretapCodeParams> {
    if !(0.0..=0.5).contains(&p) || !(0.0..=0.5).contains(&p_w) {
        return Err(Error::Domain(format!(
            "crossovers ({p}, {p_w}) outside [0, 1/2]"
        )));
    }
    if p > p_w {
        return Err(Error::NotDegraded { p, p_w });
    }
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let nf = n as f64;
    let k_fine = (nf * (1.0 - binary_entropy(p)? - 2.0 * epsilon)).floor();
    let k_coarse = (nf * (1.0 - binary_entropy(p_w)? - 2.0 * epsilon)).floor();
    if k_fine <= 0.0 {
        return Err(Error::Parameter(format!(
            "fine-code dimension {k_fine} is not positive for n = {n}, p = {p}, epsilon = {epsilon}"
        )));
    }
    WiretapCodeParams::new(n, k_fine as usize, k_coarse.max(0.0) as usize, epsilon)
}
