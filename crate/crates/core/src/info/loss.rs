use crate::channels::AwgnSplitChannel;
use crate::error::{Error, Result};
use crate::report::format_f64;

use super::awgn::awgn_mutual_information;
use super::discrete::binary_entropy;

/// Numerators above this negative value are treated as zero.
const NUMERATOR_SLACK: f64 = 1e-12;

/// One point of the maximum-equivocation-loss curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossCurvePoint {
    pub sigma_w_sq: f64,
    pub p: f64,
    pub p_w: f64,
    pub i_xw: f64,
    pub loss: f64,
}

impl LossCurvePoint {
    pub const CSV_HEADER: &'static str = "sigma_w_sq,p,p_w,i_xw,loss";

    pub fn csv_row(&self) -> String {
        [self.sigma_w_sq, self.p, self.p_w, self.i_xw, self.loss]
            .map(format_f64)
            .join(",")
    }
}

/// Equivocation lost per source bit when the eavesdropper's observation
/// carries `i_x_zhat` bits per use instead of the `1 − h(p_w)` of a hard
/// decision: `(h(p_w) − 1 + i_x_zhat) / (h(p_w) − h(p))`.
///
/// Once `i_x_zhat` reaches `1 − h(p)` the eavesdropper does at least as well
/// as the legitimate receiver and all secrecy is gone, so the value is capped
/// at 1.
pub fn equivocation_loss(p: f64, p_w: f64, i_x_zhat: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) || !(0.0..=0.5).contains(&p_w) {
        return Err(Error::Domain(format!(
            "crossovers ({p}, {p_w}) outside [0, 1/2]"
        )));
    }
    if !(0.0..=1.0).contains(&i_x_zhat) {
        return Err(Error::Domain(format!(
            "mutual information {i_x_zhat} outside [0, 1]"
        )));
    }
    if p > p_w {
        return Err(Error::NotDegraded { p, p_w });
    }
    if p == p_w {
        return Err(Error::NoSecrecy(p));
    }
    let h_w = binary_entropy(p_w)?;
    let numerator = h_w - 1.0 + i_x_zhat;
    if numerator < -NUMERATOR_SLACK {
        return Err(Error::Domain(format!(
            "I(X;Z^) = {i_x_zhat} is below the hard-decision value {}",
            1.0 - h_w
        )));
    }
    let denominator = h_w - binary_entropy(p)?;
    Ok((numerator.max(0.0) / denominator).min(1.0))
}

/// Loss against an eavesdropper with unquantized access to the wiretap output.
pub fn max_equivocation_loss(sigma_m_sq: f64, sigma_w_sq: f64) -> Result<f64> {
    loss_point(sigma_m_sq, sigma_w_sq).map(|pt| pt.loss)
}

fn loss_point(sigma_m_sq: f64, sigma_w_sq: f64) -> Result<LossCurvePoint> {
    if !(sigma_w_sq > 0.0) {
        return Err(Error::Domain(format!(
            "wiretap variance must be positive, got {sigma_w_sq}"
        )));
    }
    let channel = AwgnSplitChannel::new(sigma_m_sq, sigma_w_sq)?;
    let (p, p_w) = channel.crossover_probabilities();
    let i_xw = awgn_mutual_information(channel.sigma_total_sq())?;
    Ok(LossCurvePoint {
        sigma_w_sq,
        p,
        p_w,
        i_xw,
        loss: equivocation_loss(p, p_w, i_xw)?,
    })
}

/// Maximum equivocation loss over an ascending grid of wiretap variances.
pub fn loss_curve(sigma_m_sq: f64, sigma_w_grid: &[f64]) -> Result<Vec<LossCurvePoint>> {
    if sigma_w_grid.is_empty() {
        return Err(Error::Parameter("empty variance grid".into()));
    }
    if sigma_w_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "variance grid must be strictly ascending".into(),
        ));
    }
    sigma_w_grid
        .iter()
        .map(|&s| loss_point(sigma_m_sq, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loss_boundaries() {
        let (p, p_w) = (0.1, 0.3);
        let hw = binary_entropy(p_w).unwrap();
        let hp = binary_entropy(p).unwrap();
        assert!(equivocation_loss(p, p_w, 1.0 - hw).unwrap().abs() < 1e-12);
        assert!((equivocation_loss(p, p_w, 1.0 - hp).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(equivocation_loss(p, p_w, 0.99).unwrap(), 1.0);
    }

    #[test]
    fn loss_errors() {
        assert!(matches!(
            equivocation_loss(0.2, 0.2, 0.5),
            Err(Error::NoSecrecy(_))
        ));
        assert!(matches!(
            equivocation_loss(0.3, 0.2, 0.5),
            Err(Error::NotDegraded { .. })
        ));
        assert!(matches!(
            equivocation_loss(0.1, 0.3, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(equivocation_loss(0.1, 0.3, 1.5).is_err());
    }

    #[test]
    fn loss_monotone_in_information() {
        let (p, p_w) = (0.05, 0.2);
        let lo = 1.0 - binary_entropy(p_w).unwrap();
        let mut last = -1.0;
        for i in 0..100 {
            let v = equivocation_loss(p, p_w, lo + (1.0 - lo) * i as f64 / 99.0).unwrap();
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn max_loss_at_equal_variances() {
        let loss = max_equivocation_loss(1.0, 1.0).unwrap();
        assert!((loss - 0.5).abs() < 0.05, "{loss}");
        assert!(max_equivocation_loss(1.0, 8.0).unwrap() < loss);
    }

    #[test]
    fn max_loss_saturates_as_advantage_vanishes() {
        let mut last = 0.0;
        for s in [1.0, 0.7, 0.5, 0.3, 0.1, 0.01] {
            let v = max_equivocation_loss(1.0, s).unwrap();
            assert!(v >= last);
            last = v;
        }
        assert_eq!(last, 1.0);
        assert!(max_equivocation_loss(1.0, 0.0).is_err());
    }

    #[test]
    fn curve_validation() {
        assert!(loss_curve(1.0, &[]).is_err());
        assert!(loss_curve(1.0, &[2.0, 1.0]).is_err());
        let pts = loss_curve(1.0, &[1.0]).unwrap();
        assert_eq!(pts.len(), 1);
        assert!((pts[0].loss - 0.5).abs() < 0.05);
    }
}
