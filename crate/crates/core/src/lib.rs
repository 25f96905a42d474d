//! Wiretap-channel laboratory: the split AWGN/BSC channel model, coset-coding
//! wiretap codes with exact and Monte Carlo equivocation, the equivocation
//! lost to a finer-quantizing eavesdropper, and a shared-key cipher built from
//! a stochastic encoder plus a learning-parity-with-noise mask.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod code;
pub mod error;
pub mod gf2;
pub mod info;
pub mod lpn;
pub mod prng;
pub mod report;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use prng::PrngStream;
