//! Globally adaptive Gauss–Kronrod (7/15) integration.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of per-interval `|Kronrod − Gauss|` differences.
    pub error_bound: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`, starting from `initial_pieces` equal
/// subintervals and bisecting the worst one until the summed error estimate
/// drops below `abs_tol`. Fails with [`Error::Numerical`] after `max_pieces`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    initial_pieces: usize,
    max_pieces: usize,
) -> Result<Integral> {
    let initial = initial_pieces.max(1);
    let width = (b - a) / initial as f64;
    let mut pieces: Vec<Piece> = (0..initial)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == initial { b } else { lo + width };
            gauss_kronrod(&f, lo, hi)
        })
        .collect();

    loop {
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= abs_tol || pieces.len() >= max_pieces {
            let value = pieces.iter().map(|p| p.value).sum();
            return if error <= abs_tol {
                Ok(Integral {
                    value,
                    error_bound: error,
                    intervals: pieces.len(),
                })
            } else {
                Err(Error::Numerical {
                    estimate: value,
                    error_bound: error,
                })
            };
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one piece");
        let Piece { a, b, .. } = pieces.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval cannot be split further in floating point
            let value = pieces.iter().map(|p| p.value).sum();
            return Err(Error::Numerical {
                estimate: value,
                error_bound: error,
            });
        }
        pieces.push(gauss_kronrod(&f, a, mid));
        pieces.push(gauss_kronrod(&f, mid, b));
    }
}
