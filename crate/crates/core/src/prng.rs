//! Seeded, labelled pseudorandom streams.
//!
//! Every stochastic operation in the crate draws from a [`PrngStream`]. A
//! stream is ChaCha20 in counter mode, keyed with SHA-256 over a domain tag,
//! the seed and a label, so equal `(seed, label)` pairs always reproduce the
//! same bits and distinct labels give unrelated streams.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

const DOMAIN_TAG: &[u8] = b"wiretap-prng v1";

/// Shortest accepted seed, in bytes.
pub const MIN_SEED_LEN: usize = 16;

/// Deterministic keyed bit generator.
///
/// Streams are single-owner; parallel workers get their own stream through
/// [`PrngStream::derive`].
#[derive(Clone, Debug)]
pub struct PrngStream {
    core: ChaCha20Rng,
    spare_gaussian: Option<f64>,
}

impl PrngStream {
    /// Creates the stream for `(seed, label)`. Seeds shorter than 16 bytes are rejected.
    pub fn new(seed: &[u8], label: &str) -> Result<Self> {
        if seed.len() < MIN_SEED_LEN {
            return Err(Error::Parameter(format!(
                "seed must be at least {MIN_SEED_LEN} bytes, got {}",
                seed.len()
            )));
        }
        Ok(Self::keyed(seed, label))
    }

    /// Parses a hex seed and creates the stream.
    pub fn from_hex_seed(seed_hex: &str, label: &str) -> Result<Self> {
        let seed = hex::decode(seed_hex.trim())
            .map_err(|e| Error::Parse(format!("seed is not valid hex: {e}")))?;
        Self::new(&seed, label)
    }

    fn keyed(seed: &[u8], label: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(DOMAIN_TAG);
        hasher.update((seed.len() as u64).to_le_bytes());
        hasher.update(seed);
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label.as_bytes());
        let digest = hasher.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest);
        Self {
            core: ChaCha20Rng::from_seed(key),
            spare_gaussian: None,
        }
    }

    /// Draws 32 fresh bytes from this stream and keys a child stream with them
    /// under `label`. Successive calls yield distinct children.
    pub fn derive(&mut self, label: &str) -> PrngStream {
        let mut child_seed = [0u8; 32];
        self.core.fill_bytes(&mut child_seed);
        Self::keyed(&child_seed, label)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.core.next_u32()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.core.next_u64()
    }

    pub fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.core.fill_bytes(dest)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `count` uniform bits, filled 64 at a time in packing order.
    pub fn next_bits(&mut self, count: usize) -> BitVector {
        let words = (0..count.div_ceil(64)).map(|_| self.next_u64()).collect();
        BitVector::from_words(words, count)
    }

    pub fn next_bit(&mut self) -> bool {
        self.next_u32() & 1 == 1
    }

    /// Uniform integer in `[0, bound)`, by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Bernoulli(p) via comparison of 32 fresh bits against `floor(p * 2^32)`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        u64::from(self.next_u32()) < bernoulli_threshold(p)
    }

    pub fn bernoulli_bits(&mut self, count: usize, p: f64) -> BitVector {
        let threshold = bernoulli_threshold(p);
        let mut out = BitVector::zeros(count);
        for i in 0..count {
            if u64::from(self.next_u32()) < threshold {
                out.set(i, true);
            }
        }
        out
    }

    /// Standard normal sample (Marsaglia polar method).
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let scale = (-2.0 * s.ln() / s).sqrt();
                self.spare_gaussian = Some(v * scale);
                return u * scale;
            }
        }
    }
}

/// Fixed-point threshold for a 32-bit Bernoulli comparison. Exact for every
/// `p` because scaling by a power of two does not round.
pub fn bernoulli_threshold(p: f64) -> u64 {
    (p.clamp(0.0, 1.0) * 4_294_967_296.0).floor() as u64
}
