use crate::channels::{normal_cdf, normal_pdf, Quantizer};
use crate::error::{Error, Result};

use super::discrete::{DiscreteChannelSpec, Transition};
use super::quadrature::{integrate, Integral};

/// Absolute tolerance on the mixture entropy integral.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const MAX_PIECES: usize = 20_000;

/// Density of `W = X + N(0, σ²)` with `X` uniform on `{−1, +1}`.
pub fn mixture_density(sigma_tot_sq: f64, w: f64) -> f64 {
    let s = sigma_tot_sq.sqrt();
    (normal_pdf((w + 1.0) / s) + normal_pdf((w - 1.0) / s)) / (2.0 * s)
}

fn check_variance(sigma_tot_sq: f64) -> Result<()> {
    if !(sigma_tot_sq > 0.0) || !sigma_tot_sq.is_finite() {
        return Err(Error::Domain(format!(
            "noise variance must be positive, got {sigma_tot_sq}"
        )));
    }
    Ok(())
}

/// Integration limits `±(1 + 8σ)`; the mass outside is below `2·Φ(−8) ≈ 1.2e-15`.
pub fn integration_half_width(sigma_tot_sq: f64) -> f64 {
    1.0 + 8.0 * sigma_tot_sq.sqrt()
}

/// `h(W) = −∫ f_W log₂ f_W`, in bits.
pub fn mixture_entropy(sigma_tot_sq: f64, abs_tol: f64) -> Result<Integral> {
    check_variance(sigma_tot_sq)?;
    let a = integration_half_width(sigma_tot_sq);
    let s = sigma_tot_sq.sqrt();
    // start from pieces no wider than σ so neither bump hides between nodes
    let pieces = ((2.0 * a / s).ceil() as usize).clamp(16, 4096);
    integrate(
        |w| {
            let f = mixture_density(sigma_tot_sq, w);
            if f > 0.0 {
                -f * f.log2()
            } else {
                0.0
            }
        },
        -a,
        a,
        abs_tol,
        pieces,
        MAX_PIECES,
    )
}

/// `I(X;W)` for uniform antipodal input and unquantized output, with the
/// quadrature error bound attached.
pub fn awgn_mutual_information_with_tolerance(sigma_tot_sq: f64, abs_tol: f64) -> Result<Integral> {
    let h = mixture_entropy(sigma_tot_sq, abs_tol)?;
    let conditional =
        0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * sigma_tot_sq).log2();
    Ok(Integral {
        value: (h.value - conditional).clamp(0.0, 1.0),
        ..h
    })
}

/// `I(X;W) = h(W) − ½·log₂(2πe·σ²)` in bits per channel use.
pub fn awgn_mutual_information(sigma_tot_sq: f64) -> Result<f64> {
    awgn_mutual_information_with_tolerance(sigma_tot_sq, DEFAULT_TOLERANCE).map(|i| i.value)
}

/// `P(a < Z ≤ b)` for standard normal `Z`, evaluated on whichever tail keeps
/// the subtraction away from 1.
fn normal_interval(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        (normal_cdf(-a) - normal_cdf(-b)).max(0.0)
    } else {
        (normal_cdf(b) - normal_cdf(a)).max(0.0)
    }
}

/// Discrete channel from `X ∈ {−1, +1}` to the quantizer cell of `W`.
pub fn quantized_transition(sigma_tot_sq: f64, q: &Quantizer) -> Result<Transition> {
    check_variance(sigma_tot_sq)?;
    let s = sigma_tot_sq.sqrt();
    let rows = [-1.0, 1.0]
        .iter()
        .map(|&x| {
            let mut row: Vec<f64> = (0..q.levels())
                .map(|i| {
                    let (lo, hi) = q.cell_bounds(i);
                    normal_interval((lo - x) / s, (hi - x) / s)
                })
                .collect();
            // absorb rounding so the row is stochastic to machine precision
            let total: f64 = row.iter().sum();
            row.iter_mut().for_each(|v| *v /= total);
            row
        })
        .collect();
    Transition::new(rows)
}

/// `I(X; [W]_q)` for uniform antipodal input.
pub fn quantized_mutual_information(sigma_tot_sq: f64, q: &Quantizer) -> Result<f64> {
    let t = quantized_transition(sigma_tot_sq, q)?;
    Ok(DiscreteChannelSpec::uniform(t).mutual_information())
}
