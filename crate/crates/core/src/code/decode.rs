use std::cmp::Ordering;

use crate::channels::Bsc;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::prng::PrngStream;

use super::coset::CosetCode;

/// Largest fine-code dimension that is enumerated codeword by codeword.
pub const MAX_ENUMERATION_DIM: usize = 20;

/// Every fine codeword, packed, together with the message its syndrome carries.
#[derive(Clone, Debug)]
pub(crate) struct Codebook {
    pub(crate) n: usize,
    pub(crate) stride: usize,
    pub(crate) words: Vec<u64>,
    pub(crate) messages: Vec<u64>,
}

impl Codebook {
    pub(crate) fn build(code: &CosetCode) -> Result<Self> {
        let k = code.k_fine();
        if k > MAX_ENUMERATION_DIM {
            return Err(Error::Capability {
                what: format!("enumerating 2^{k} fine codewords"),
                limit: format!("k_fine <= {MAX_ENUMERATION_DIM}"),
            });
        }
        let n = code.n();
        let stride = n.div_ceil(64).max(1);
        let basis = code.fine_basis();
        let basis_msgs = basis
            .iter()
            .map(|b| code.message_of(b).map(|m| m.to_u64()))
            .collect::<Result<Vec<_>>>()?;
        let size = 1usize << k;
        let mut words = Vec::with_capacity(size * stride);
        let mut messages = Vec::with_capacity(size);
        let mut current = vec![0u64; stride];
        let mut msg = 0u64;
        words.extend_from_slice(&current);
        messages.push(msg);
        // Gray-code walk: step i flips basis vector trailing_zeros(i)
        for i in 1..size {
            let j = i.trailing_zeros() as usize;
            for (c, b) in current.iter_mut().zip(basis[j].words()) {
                *c ^= b;
            }
            msg ^= basis_msgs[j];
            words.extend_from_slice(&current);
            messages.push(msg);
        }
        Ok(Self {
            n,
            stride,
            words,
            messages,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.messages.len()
    }

    pub(crate) fn codeword(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn distance(&self, i: usize, y: &[u64]) -> u32 {
        self.codeword(i)
            .iter()
            .zip(y)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }
}

fn lex_cmp_words(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let bit = diff.trailing_zeros();
            return if (x >> bit) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

/// Exhaustive minimum-distance decoder for the fine code. On a BSC with
/// `p < 1/2` this is maximum likelihood; ties go to the lexicographically
/// smallest codeword.
#[derive(Clone, Debug)]
pub struct MlDecoder {
    codebook: Codebook,
    msg_len: usize,
}

impl MlDecoder {
    pub fn new(code: &CosetCode) -> Result<Self> {
        Ok(Self {
            codebook: Codebook::build(code)?,
            msg_len: code.msg_len(),
        })
    }

    pub fn n(&self) -> usize {
        self.codebook.n
    }

    fn best(&self, y: &BitVector) -> Result<usize> {
        if y.len() != self.codebook.n {
            return Err(Error::DimensionMismatch(format!(
                "received {} bits for a code of length {}",
                y.len(),
                self.codebook.n
            )));
        }
        let yw = y.words();
        let mut best = 0;
        let mut best_d = self.codebook.distance(0, yw);
        for i in 1..self.codebook.len() {
            let d = self.codebook.distance(i, yw);
            if d < best_d
                || (d == best_d
                    && lex_cmp_words(self.codebook.codeword(i), self.codebook.codeword(best))
                        == Ordering::Less)
            {
                best = i;
                best_d = d;
            }
        }
        Ok(best)
    }

    /// Nearest fine codeword to `y`.
    pub fn decode_codeword(&self, y: &BitVector) -> Result<BitVector> {
        let i = self.best(y)?;
        Ok(BitVector::from_words(
            self.codebook.codeword(i).to_vec(),
            self.codebook.n,
        ))
    }

    /// Message carried by the nearest fine codeword.
    pub fn decode(&self, y: &BitVector) -> Result<BitVector> {
        let i = self.best(y)?;
        Ok(BitVector::from_u64(self.codebook.messages[i], self.msg_len))
    }
}

/// One-shot maximum-likelihood decoding of `y` received over `BSC(p)`.
pub fn decode_ml(code: &CosetCode, y: &BitVector, p: f64) -> Result<BitVector> {
    Bsc::new(p)?;
    MlDecoder::new(code)?.decode(y)
}

/// Simulated block error rate with a 95% Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorRate {
    pub rate: f64,
    pub lower: f64,
    pub upper: f64,
    pub errors: usize,
    pub trials: usize,
}

impl ErrorRate {
    pub fn from_counts(errors: usize, trials: usize) -> Self {
        if trials == 0 {
            return Self {
                rate: 0.0,
                lower: 0.0,
                upper: 1.0,
                errors,
                trials,
            };
        }
        let z = 1.959_963_984_540_054;
        let n = trials as f64;
        let rate = errors as f64 / n;
        let denom = 1.0 + z * z / n;
        let center = (rate + z * z / (2.0 * n)) / denom;
        let half = z * (rate * (1.0 - rate) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        Self {
            rate,
            lower: (center - half).max(0.0),
            upper: (center + half).min(1.0),
            errors,
            trials,
        }
    }
}

/// Fraction of random messages that come back wrong after encoding, passing
/// through `main` and ML decoding.
pub fn block_error_rate(
    code: &CosetCode,
    main: &Bsc,
    trials: usize,
    rng: &mut PrngStream,
) -> Result<ErrorRate> {
    let decoder = MlDecoder::new(code)?;
    let mut errors = 0;
    for _ in 0..trials {
        let s = rng.next_bits(code.msg_len());
        let x = code.encode(&s, rng)?;
        let y = main.transmit(&x, rng);
        if decoder.decode(&y)? != s {
            errors += 1;
        }
    }
    Ok(ErrorRate::from_counts(errors, trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::params::WiretapCodeParams;
    use crate::gf2::BitMatrix;

    fn rng(label: &str) -> PrngStream {
        PrngStream::new(b"decoder-tests-seed", label).unwrap()
    }

    /// Hamming [7,4] fine code with the all-ones row as the single message row.
    pub(crate) fn hamming_coset_code() -> CosetCode {
        let h = BitMatrix::from_bit_rows(&[
            &[1, 0, 1, 0, 1, 0, 1],
            &[0, 1, 1, 0, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1],
            &[1, 1, 1, 1, 1, 1, 1],
        ]);
        CosetCode::new(h, 3).unwrap()
    }

    #[test]
    fn codebook_matches_fine_code() {
        let code = hamming_coset_code();
        let book = Codebook::build(&code).unwrap();
        assert_eq!(book.len(), 16);
        let mut seen = std::collections::HashSet::new();
        for i in 0..book.len() {
            let c = BitVector::from_words(book.codeword(i).to_vec(), 7);
            assert!(code.in_fine_code(&c).unwrap());
            assert_eq!(code.message_of(&c).unwrap().to_u64(), book.messages[i]);
            assert!(seen.insert(c.to_u64()));
        }
    }

    #[test]
    fn noiseless_decoding_recovers_message() {
        let mut r = rng("noiseless");
        let params = WiretapCodeParams::new(14, 10, 4, 0.1).unwrap();
        let code = CosetCode::random(&mut r, &params).unwrap();
        let dec = MlDecoder::new(&code).unwrap();
        for _ in 0..200 {
            let s = r.next_bits(code.msg_len());
            let x = code.encode(&s, &mut r).unwrap();
            assert_eq!(dec.decode(&x).unwrap(), s);
        }
    }

    #[test]
    fn hamming_corrects_every_single_flip() {
        let code = hamming_coset_code();
        let dec = MlDecoder::new(&code).unwrap();
        let mut r = rng("flip");
        for s in 0..2u64 {
            let s = BitVector::from_u64(s, 1);
            for _ in 0..10 {
                let x = code.encode(&s, &mut r).unwrap();
                for i in 0..7 {
                    let mut y = x.clone();
                    y.flip(i);
                    assert_eq!(decode_ml(&code, &y, 0.1).unwrap(), s);
                    assert_eq!(dec.decode_codeword(&y).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn ties_break_lexicographically() {
        // fine code {00, 11}; message is the first bit
        let code = CosetCode::new(BitMatrix::from_bit_rows(&[&[1, 1], &[1, 0]]), 1).unwrap();
        let dec = MlDecoder::new(&code).unwrap();
        for y in [0b01u64, 0b10] {
            let y = BitVector::from_u64(y, 2);
            assert_eq!(dec.decode_codeword(&y).unwrap(), BitVector::zeros(2));
            assert_eq!(dec.decode(&y).unwrap(), BitVector::zeros(1));
        }
    }

    #[test]
    fn enumeration_budget() {
        let code = CosetCode::uncoded(21);
        assert!(matches!(
            MlDecoder::new(&code),
            Err(Error::Capability { .. })
        ));
        assert!(MlDecoder::new(&CosetCode::uncoded(20)).is_ok());
    }

    #[test]
    fn length_mismatch() {
        let dec = MlDecoder::new(&hamming_coset_code()).unwrap();
        assert!(matches!(
            dec.decode(&BitVector::zeros(6)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn error_rate_noiseless_is_zero() {
        let code = hamming_coset_code();
        let est = block_error_rate(&code, &Bsc::new(0.0).unwrap(), 500, &mut rng("zero")).unwrap();
        assert_eq!(est.errors, 0);
        assert_eq!(est.rate, 0.0);
        assert!(est.upper > 0.0 && est.upper < 0.01);
    }

    #[test]
    fn error_rate_matches_correctable_patterns() {
        let p: f64 = 0.01;
        let expected = 1.0 - (1.0 - p).powi(7) - 7.0 * p * (1.0 - p).powi(6);
        let trials = 100_000;
        let est = block_error_rate(
            &hamming_coset_code(),
            &Bsc::new(p).unwrap(),
            trials,
            &mut rng("ber"),
        )
        .unwrap();
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!(
            (est.rate - expected).abs() < 4.0 * sigma,
            "{} vs {expected}",
            est.rate
        );
        assert!(est.lower <= est.rate && est.rate <= est.upper);
    }

    #[test]
    fn useless_channel_guesses() {
        let mut r = rng("half");
        let params = WiretapCodeParams::new(10, 6, 3, 0.1).unwrap();
        let code = CosetCode::random(&mut r, &params).unwrap();
        let trials = 20_000;
        let est = block_error_rate(&code, &Bsc::new(0.5).unwrap(), trials, &mut r).unwrap();
        let expected = 1.0 - 0.125;
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!((est.rate - expected).abs() < 4.0 * sigma);
    }
}
