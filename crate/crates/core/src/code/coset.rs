use crate::error::{Error, Result};
use crate::gf2::{AffineSolver, BitMatrix, BitVector};
use crate::prng::PrngStream;

use super::params::WiretapCodeParams;

/// Coset wiretap code given by a full-rank `(n − k_coarse) × n` matrix `h`.
///
/// A message `s` is sent as a uniformly chosen `x` with
/// `x · hᵀ = [0^{zero_len} ∥ s]`: the first `zero_len` syndrome bits pin the
/// fine code, the remaining `msg_len` bits carry the message.
#[derive(Clone, Debug)]
pub struct CosetCode {
    h: BitMatrix,
    zero_len: usize,
    solver: AffineSolver,
}

impl PartialEq for CosetCode {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.zero_len == other.zero_len
    }
}

impl Eq for CosetCode {}

impl CosetCode {
    pub fn new(h: BitMatrix, zero_len: usize) -> Result<Self> {
        if zero_len > h.rows() {
            return Err(Error::Parameter(format!(
                "zero block of {zero_len} rows in a matrix with {} rows",
                h.rows()
            )));
        }
        let solver = AffineSolver::new(&h);
        if solver.rank() != h.rows() {
            return Err(Error::Parameter(format!(
                "parity-check matrix has rank {} but {} rows",
                solver.rank(),
                h.rows()
            )));
        }
        Ok(Self {
            h,
            zero_len,
            solver,
        })
    }

    /// Random code with the given dimensions; `h` is uniform among full-rank matrices.
    pub fn random(rng: &mut PrngStream, params: &WiretapCodeParams) -> Result<Self> {
        let h = BitMatrix::random_full_rank(rng, params.n - params.k_coarse, params.n)?;
        Self::new(h, params.n - params.k_fine)
    }

    /// Extends a fine-code parity check with `msg_len` random rows, keeping full rank.
    pub fn extend_fine(rng: &mut PrngStream, fine_h: &BitMatrix, msg_len: usize) -> Result<Self> {
        let n = fine_h.cols();
        if fine_h.rank() != fine_h.rows() {
            return Err(Error::Parameter(
                "fine parity-check matrix is not full rank".into(),
            ));
        }
        if fine_h.rows() + msg_len > n {
            return Err(Error::Parameter(format!(
                "cannot carry {msg_len} message bits on a fine code of dimension {}",
                n - fine_h.rows()
            )));
        }
        let mut h = fine_h.clone();
        while h.rows() < fine_h.rows() + msg_len {
            let candidate = h.stack(&BitMatrix::from_rows(vec![rng.next_bits(n)])?)?;
            if candidate.rank() == candidate.rows() {
                h = candidate;
            }
        }
        Self::new(h, fine_h.rows())
    }

    /// The two-bit, one-message-bit code: `0 ↦ {00, 11}`, `1 ↦ {01, 10}`.
    pub fn example1() -> Self {
        Self::new(BitMatrix::from_bit_rows(&[&[1, 1]]), 0).expect("[1 1] has full rank")
    }

    /// Direct transmission of `n` bits: `h` is the identity, no randomisation.
    pub fn uncoded(n: usize) -> Self {
        Self::new(BitMatrix::identity(n), 0).expect("identity has full rank")
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn zero_len(&self) -> usize {
        self.zero_len
    }

    pub fn msg_len(&self) -> usize {
        self.h.rows() - self.zero_len
    }

    pub fn k_fine(&self) -> usize {
        self.n() - self.zero_len
    }

    pub fn k_coarse(&self) -> usize {
        self.n() - self.h.rows()
    }

    pub fn rate(&self) -> f64 {
        self.msg_len() as f64 / self.n() as f64
    }

    pub fn params(&self, epsilon: f64) -> Result<WiretapCodeParams> {
        WiretapCodeParams::new(self.n(), self.k_fine(), self.k_coarse(), epsilon)
    }

    /// `x · hᵀ`.
    pub fn syndrome(&self, x: &BitVector) -> Result<BitVector> {
        self.h.mul_vec(x)
    }

    /// Message bits of `x`'s syndrome, ignoring the zero block.
    pub fn message_of(&self, x: &BitVector) -> Result<BitVector> {
        Ok(self.syndrome(x)?.slice(self.zero_len, self.msg_len()))
    }

    /// Whether `x` lies in the fine code.
    pub fn in_fine_code(&self, x: &BitVector) -> Result<bool> {
        Ok(self.syndrome(x)?.truncate(self.zero_len).is_zero())
    }

    /// Basis of the fine code: solutions of the zero-block equations.
    pub fn fine_basis(&self) -> Vec<BitVector> {
        self.h.row_range(0, self.zero_len).kernel_basis()
    }

    /// Basis of the coarse subcode (the randomisation space).
    pub fn coarse_basis(&self) -> &[BitVector] {
        self.solver.kernel()
    }

    fn target(&self, s: &BitVector) -> Result<BitVector> {
        if s.len() != self.msg_len() {
            return Err(Error::DimensionMismatch(format!(
                "message of {} bits for a code carrying {}",
                s.len(),
                self.msg_len()
            )));
        }
        Ok(BitVector::zeros(self.zero_len).concat(s))
    }

    /// Stochastic encoding: uniform over the `2^k_coarse` members of the coset for `s`.
    pub fn encode(&self, s: &BitVector, rng: &mut PrngStream) -> Result<BitVector> {
        self.solver.solve(&self.target(s)?, rng)
    }

    /// Encoding with the coset member fixed by `coefficients` over [`coarse_basis`](Self::coarse_basis).
    pub fn encode_with_coefficients(
        &self,
        s: &BitVector,
        coefficients: &BitVector,
    ) -> Result<BitVector> {
        self.solver
            .solve_with_coefficients(&self.target(s)?, coefficients)
    }

    /// Two lines: `n,k_fine,k_coarse` then `h` in matrix hex form.
    pub fn to_text(&self) -> String {
        format!(
            "{},{},{}\n{}\n",
            self.n(),
            self.k_fine(),
            self.k_coarse(),
            self.h.to_hex()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code description".into()))?;
        let matrix = lines
            .next()
            .ok_or_else(|| Error::Parse("code description lacks a matrix line".into()))?;
        Self::from_lines(header, matrix)
    }

    pub(crate) fn from_lines(header: &str, matrix: &str) -> Result<Self> {
        let dims = header
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad code header {header:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [n, k_fine, k_coarse] = dims[..] else {
            return Err(Error::Parse(format!(
                "code header {header:?} needs three fields"
            )));
        };
        let h = BitMatrix::from_hex(matrix)?;
        if k_coarse > k_fine || k_fine > n || h.cols() != n || h.rows() != n - k_coarse {
            return Err(Error::Parse(format!(
                "code header {header:?} does not match a {}x{} matrix",
                h.rows(),
                h.cols()
            )));
        }
        Self::new(h, n - k_fine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn rng(label: &str) -> PrngStream {
        PrngStream::new(b"coset-code-tests", label).unwrap()
    }

    #[test]
    fn example1_layout() {
        let code = CosetCode::example1();
        assert_eq!(
            (code.n(), code.k_fine(), code.k_coarse(), code.msg_len()),
            (2, 2, 1, 1)
        );
        assert_eq!(code.rate(), 0.5);
    }

    #[test]
    fn example1_mapping_and_balance() {
        let code = CosetCode::example1();
        let mut r = rng("ex1");
        for (s, members) in [(0u64, [0b00u64, 0b11]), (1, [0b10, 0b01])] {
            let mut counts: HashMap<u64, usize> = HashMap::new();
            let draws = 10_000;
            for _ in 0..draws {
                let x = code.encode(&BitVector::from_u64(s, 1), &mut r).unwrap();
                *counts.entry(x.to_u64()).or_default() += 1;
            }
            assert_eq!(counts.len(), 2);
            let sigma = (draws as f64 * 0.25).sqrt();
            for m in members {
                let c = counts[&m] as f64;
                assert!((c - draws as f64 / 2.0).abs() < 5.0 * sigma);
            }
        }
    }

    #[test]
    fn encode_lands_in_correct_coset() {
        let params = WiretapCodeParams::new(12, 8, 3, 0.01).unwrap();
        let mut r = rng("coset");
        for _ in 0..50 {
            let code = CosetCode::random(&mut r, &params).unwrap();
            assert_eq!(code.h().rank(), 12 - 3);
            let s = r.next_bits(code.msg_len());
            let x = code.encode(&s, &mut r).unwrap();
            assert!(code.in_fine_code(&x).unwrap());
            assert_eq!(code.message_of(&x).unwrap(), s);
            assert_eq!(
                code.syndrome(&x).unwrap(),
                BitVector::zeros(code.zero_len()).concat(&s)
            );
        }
    }

    #[test]
    fn random_codes_have_full_rank() {
        let params = WiretapCodeParams::new(10, 6, 2, 0.01).unwrap();
        let mut r = rng("rank");
        for _ in 0..1000 {
            let code = CosetCode::random(&mut r, &params).unwrap();
            assert_eq!(code.h().rank(), 8);
        }
    }

    #[test]
    fn shape_arithmetic() {
        let params = WiretapCodeParams::new(7, 4, 3, 0.1).unwrap();
        let code = CosetCode::random(&mut rng("shape"), &params).unwrap();
        assert_eq!((code.h().rows(), code.h().cols()), (4, 7));
        assert_eq!(1usize << code.msg_len(), 2);
    }

    #[test]
    fn zero_message_code_accepts_only_empty_message() {
        let params = WiretapCodeParams::new(6, 3, 3, 0.1).unwrap();
        let mut r = rng("empty");
        let code = CosetCode::random(&mut r, &params).unwrap();
        assert_eq!(code.msg_len(), 0);
        assert!(code.encode(&BitVector::zeros(0), &mut r).is_ok());
        assert!(matches!(
            code.encode(&BitVector::zeros(1), &mut r),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn repeated_encodings_differ() {
        let params = WiretapCodeParams::new(16, 12, 8, 0.1).unwrap();
        let mut r = rng("repeat");
        let code = CosetCode::random(&mut r, &params).unwrap();
        let s = r.next_bits(code.msg_len());
        let distinct = (0..100)
            .filter(|_| code.encode(&s, &mut r).unwrap() != code.encode(&s, &mut r).unwrap())
            .count();
        // collision probability per pair is 2^-8
        assert!(distinct >= 95);
    }

    /// Solution sets for distinct messages never overlap.
    #[test]
    fn cosets_are_disjoint() {
        let params = WiretapCodeParams::new(8, 5, 2, 0.1).unwrap();
        let mut r = rng("disjoint");
        for _ in 0..5 {
            let code = CosetCode::random(&mut r, &params).unwrap();
            let mut owner: HashMap<u64, u64> = HashMap::new();
            for s in 0..(1u64 << code.msg_len()) {
                let target = BitVector::zeros(code.zero_len()).concat(&BitVector::from_u64(s, 3));
                for x in 0..(1u64 << 8) {
                    let xv = BitVector::from_u64(x, 8);
                    if code.syndrome(&xv).unwrap() == target {
                        assert!(owner.insert(x, s).is_none(), "x in two cosets");
                    }
                }
            }
            assert_eq!(owner.len(), (1 << code.msg_len()) * (1 << code.k_coarse()));
        }
    }

    #[test]
    fn extend_fine_keeps_fine_code() {
        let hamming = BitMatrix::from_bit_rows(&[
            &[1, 0, 1, 0, 1, 0, 1],
            &[0, 1, 1, 0, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1],
        ]);
        let code = CosetCode::extend_fine(&mut rng("ext"), &hamming, 2).unwrap();
        assert_eq!(code.h().row_range(0, 3), hamming);
        assert_eq!((code.k_fine(), code.k_coarse(), code.msg_len()), (4, 2, 2));
        assert!(CosetCode::extend_fine(&mut rng("ext"), &hamming, 5).is_err());
    }

    #[test]
    fn text_round_trip() {
        let params = WiretapCodeParams::new(12, 7, 3, 0.1).unwrap();
        let code = CosetCode::random(&mut rng("text"), &params).unwrap();
        let text = code.to_text();
        assert!(text.starts_with("12,7,3\n9,12:"));
        assert_eq!(CosetCode::from_text(&text).unwrap(), code);
        assert!(CosetCode::from_text("12,8,3\n".to_string().as_str()).is_err());
        let mismatched = text.replacen("12,7,3", "12,7,4", 1);
        assert!(CosetCode::from_text(&mismatched).is_err());
    }

    #[test]
    fn rank_deficient_matrix_rejected() {
        let h = BitMatrix::from_bit_rows(&[&[1, 1, 0], &[1, 1, 0]]);
        assert!(CosetCode::new(h, 1).is_err());
    }
}
