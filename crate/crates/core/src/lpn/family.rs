use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Generator polynomial of the binary Golay code,
/// `x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`.
const GOLAY_GENERATOR: u64 = 0xC75;

/// Fine codes the cipher can be keyed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeFamily {
    /// The perfect `[23, 12, 7]` binary Golay code.
    Golay23,
    /// Three interleaved `[7, 4, 3]` Hamming codes.
    Hamming7x3,
}

impl CodeFamily {
    pub const ALL: [CodeFamily; 2] = [CodeFamily::Golay23, CodeFamily::Hamming7x3];

    pub fn for_length(n: usize) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.n() == n).ok_or_else(|| {
            Error::Parameter(format!(
                "no registered code of length {n} (available: 23 for Golay, 21 for Hamming x3)"
            ))
        })
    }

    pub fn n(self) -> usize {
        match self {
            Self::Golay23 => 23,
            Self::Hamming7x3 => 21,
        }
    }

    pub fn dimension(self) -> usize {
        12
    }

    /// Number of bit errors the minimum-distance decoder always corrects.
    pub fn radius(self) -> usize {
        match self {
            Self::Golay23 => 3,
            Self::Hamming7x3 => 1,
        }
    }

    /// Full-rank `(n − 12) × n` parity-check matrix.
    pub fn parity_check(self) -> BitMatrix {
        match self {
            Self::Golay23 => golay_parity_check(),
            Self::Hamming7x3 => hamming_7x3_parity_check(),
        }
    }
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Golay23 => "golay23",
            Self::Hamming7x3 => "hamming7x3",
        })
    }
}

fn golay_parity_check() -> BitMatrix {
    let rows = (0..12)
        .map(|shift| BitVector::from_u64(GOLAY_GENERATOR << shift, 23))
        .collect();
    let generator = BitMatrix::from_rows(rows).expect("rows share a length");
    BitMatrix::from_rows(generator.kernel_basis()).expect("kernel vectors share a length")
}

fn hamming_7x3_parity_check() -> BitMatrix {
    let block = [0b1010101u64, 0b1100110, 0b1111000];
    let rows = (0..3)
        .flat_map(|b| {
            block
                .iter()
                .map(move |&r| BitVector::from_u64(r << (7 * b), 21))
        })
        .collect();
    BitMatrix::from_rows(rows).expect("rows share a length")
}
