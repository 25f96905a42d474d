//! Shared-key cipher: the plaintext is padded with random bits, mixed by a
//! secret invertible matrix, stochastically encoded, and masked with
//! `u·S ⊕ v` where `u` is public and `v` is Bernoulli noise. Recovering `S`
//! from ciphertexts is a learning-parity-with-noise problem.
//!
//! Decryption never detects failure: a corrupted or forged ciphertext
//! decrypts silently to the wrong plaintext. The toy parameters are not sized
//! for security.

mod family;

use crate::code::{CosetCode, MlDecoder};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::prng::PrngStream;

pub use family::CodeFamily;

/// Stream label used by the command-line tool when generating keys.
pub const KEYGEN_LABEL: &str = "lpn-keygen";
/// Stream label used by the command-line tool when encrypting.
pub const ENCRYPT_LABEL: &str = "lpn-encrypt";

const KEY_MAGIC: &str = "lpn-key v1:";
const CT_MAGIC: &str = "lpn-ct v1:";

/// `l` plaintext bits, padded to `m` mixed bits, masked by a `k × n` key,
/// with noise rate `p` on the `n` ciphertext bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpnParams {
    pub l: usize,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub p: f64,
}

impl LpnParams {
    pub fn new(l: usize, m: usize, k: usize, n: usize, p: f64) -> Result<Self> {
        if l > m || m > n {
            return Err(Error::Parameter(format!(
                "need l <= m <= n, got {l}, {m}, {n}"
            )));
        }
        if k == 0 {
            return Err(Error::Parameter("key needs at least one row".into()));
        }
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::Parameter(format!(
                "noise rate must lie in (0, 1/2), got {p}"
            )));
        }
        let params = Self { l, m, k, n, p };
        let family = params.family()?;
        if m > family.dimension() {
            return Err(Error::Parameter(format!(
                "{family} carries at most {} bits per block, asked for m = {m}",
                family.dimension()
            )));
        }
        Ok(params)
    }

    /// Toy parameters on the Golay code: 4-bit plaintexts, 4 pad bits, 16-row key.
    pub fn toy(p: f64) -> Result<Self> {
        Self::new(4, 8, 16, 23, p)
    }

    pub fn family(&self) -> Result<CodeFamily> {
        CodeFamily::for_length(self.n)
    }

    fn header(&self) -> String {
        format!(
            "{} {},{},{},{},{}",
            KEY_MAGIC, self.l, self.m, self.k, self.n, self.p
        )
    }

    fn parse_header(line: &str) -> Result<Self> {
        let body = line
            .strip_prefix(KEY_MAGIC)
            .ok_or_else(|| Error::Parse(format!("not a key file header: {line:?}")))?;
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        let [l, m, k, n, p] = fields[..] else {
            return Err(Error::Parse(format!(
                "key header needs five fields: {line:?}"
            )));
        };
        let int = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad key parameter {t:?}: {e}")))
        };
        let p = p
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("bad noise rate {p:?}: {e}")))?;
        Self::new(int(l)?, int(m)?, int(k)?, int(n)?, p)
    }
}

/// Secret key: the mask matrix `S`, the mixing matrix `M` and the coset code.
#[derive(Clone, Debug)]
pub struct LpnKey {
    params: LpnParams,
    s_matrix: BitMatrix,
    mixing: BitMatrix,
    mixing_inv: BitMatrix,
    code: CosetCode,
    decoder: MlDecoder,
}

impl PartialEq for LpnKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && self.s_matrix == other.s_matrix
            && self.mixing == other.mixing
            && self.code == other.code
    }
}

impl LpnKey {
    pub fn from_parts(
        params: LpnParams,
        s_matrix: BitMatrix,
        mixing: BitMatrix,
        code: CosetCode,
    ) -> Result<Self> {
        if (s_matrix.rows(), s_matrix.cols()) != (params.k, params.n) {
            return Err(Error::DimensionMismatch(format!(
                "key matrix is {}x{}, parameters need {}x{}",
                s_matrix.rows(),
                s_matrix.cols(),
                params.k,
                params.n
            )));
        }
        if (mixing.rows(), mixing.cols()) != (params.m, params.m) {
            return Err(Error::DimensionMismatch(format!(
                "mixing matrix is {}x{}, parameters need {m}x{m}",
                mixing.rows(),
                mixing.cols(),
                m = params.m
            )));
        }
        if code.n() != params.n || code.msg_len() != params.m {
            return Err(Error::DimensionMismatch(format!(
                "code has length {} and carries {} bits, parameters need {} and {}",
                code.n(),
                code.msg_len(),
                params.n,
                params.m
            )));
        }
        let mixing_inv = mixing.invert()?;
        let decoder = MlDecoder::new(&code)?;
        Ok(Self {
            params,
            s_matrix,
            mixing,
            mixing_inv,
            code,
            decoder,
        })
    }

    pub fn params(&self) -> &LpnParams {
        &self.params
    }

    pub fn s_matrix(&self) -> &BitMatrix {
        &self.s_matrix
    }

    pub fn mixing(&self) -> &BitMatrix {
        &self.mixing
    }

    pub fn mixing_inv(&self) -> &BitMatrix {
        &self.mixing_inv
    }

    pub fn code(&self) -> &CosetCode {
        &self.code
    }

    /// Same key with `S` replaced.
    pub fn with_s_matrix(&self, s_matrix: BitMatrix) -> Result<Self> {
        Self::from_parts(
            self.params,
            s_matrix,
            self.mixing.clone(),
            self.code.clone(),
        )
    }

    /// Header line, then `S`, `M`, the code header and the code matrix, one per line.
    pub fn to_text(&self) -> String {
        format!(
            "{}\n{}\n{}\n{}",
            self.params.header(),
            self.s_matrix.to_hex(),
            self.mixing.to_hex(),
            self.code.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let [header, s, mixing, code_header, code_matrix] = lines[..] else {
            return Err(Error::Parse(format!(
                "key file needs 5 lines, found {}",
                lines.len()
            )));
        };
        let params = LpnParams::parse_header(header)?;
        let code = CosetCode::from_lines(code_header, code_matrix)?;
        Self::from_parts(
            params,
            BitMatrix::from_hex(s)?,
            BitMatrix::from_hex(mixing)?,
            code,
        )
    }
}

/// Ciphertext `z` with the public randomness `u` that travels beside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpnCiphertext {
    pub z: BitVector,
    pub u: BitVector,
}

impl LpnCiphertext {
    pub fn to_text(&self) -> String {
        format!(
            "{} {},{}\n{}\n{}\n",
            CT_MAGIC,
            self.z.len(),
            self.u.len(),
            self.z.to_hex(),
            self.u.to_hex()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let [header, z, u] = lines[..] else {
            return Err(Error::Parse(format!(
                "ciphertext file needs 3 lines, found {}",
                lines.len()
            )));
        };
        let dims = header
            .strip_prefix(CT_MAGIC)
            .ok_or_else(|| Error::Parse(format!("not a ciphertext header: {header:?}")))?;
        let (n, k) = dims
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad ciphertext header {header:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad ciphertext length {t:?}: {e}")))
        };
        let ct = Self {
            z: BitVector::from_hex(z)?,
            u: BitVector::from_hex(u)?,
        };
        if ct.z.len() != parse(n)? || ct.u.len() != parse(k)? {
            return Err(Error::Parse(
                "ciphertext lengths disagree with header".into(),
            ));
        }
        Ok(ct)
    }
}

/// Every random choice made by one encryption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncryptionNoise {
    /// Pad bits appended to the plaintext, length `m − l`.
    pub r: BitVector,
    /// Public mask selector, length `k`.
    pub u: BitVector,
    /// Bernoulli(p) noise, length `n`.
    pub v: BitVector,
    /// Coset member coefficients, length `k_coarse` of the key's code.
    pub coset: BitVector,
}

impl EncryptionNoise {
    /// All-zero choices for `key`.
    pub fn zero(key: &LpnKey) -> Self {
        let p = key.params();
        Self {
            r: BitVector::zeros(p.m - p.l),
            u: BitVector::zeros(p.k),
            v: BitVector::zeros(p.n),
            coset: BitVector::zeros(key.code().k_coarse()),
        }
    }

    /// Draws `r`, `u`, `v` and the coset choice from separate substreams of `rng`.
    pub fn sample(key: &LpnKey, rng: &mut PrngStream) -> Self {
        let p = key.params();
        Self {
            r: rng.derive("r").next_bits(p.m - p.l),
            u: rng.derive("u").next_bits(p.k),
            v: rng.derive("v").bernoulli_bits(p.n, p.p),
            coset: rng.derive("coset").next_bits(key.code().k_coarse()),
        }
    }
}

fn check_params(key: &LpnKey, params: &LpnParams) -> Result<()> {
    if key.params() != params {
        return Err(Error::Parameter(format!(
            "key was generated for {:?}, not {params:?}",
            key.params()
        )));
    }
    Ok(())
}

/// Fresh key: uniform `S`, uniform invertible `M`, and the family's fine code
/// extended by `m` random message rows.
pub fn keygen(rng: &mut PrngStream, params: &LpnParams) -> Result<LpnKey> {
    let params = LpnParams::new(params.l, params.m, params.k, params.n, params.p)?;
    let family = params.family()?;
    let s_matrix = BitMatrix::random(&mut rng.derive("s"), params.k, params.n);
    let mixing = BitMatrix::random_invertible(&mut rng.derive("mixing"), params.m)?;
    let code = CosetCode::extend_fine(&mut rng.derive("code"), &family.parity_check(), params.m)?;
    LpnKey::from_parts(params, s_matrix, mixing, code)
}

/// `z = f_E(M·(a ∥ r)) ⊕ u·S ⊕ v` with the given random choices.
pub fn encrypt_with(key: &LpnKey, a: &BitVector, noise: &EncryptionNoise) -> Result<LpnCiphertext> {
    let p = key.params();
    if a.len() != p.l {
        return Err(Error::DimensionMismatch(format!(
            "plaintext has {} bits, key expects {}",
            a.len(),
            p.l
        )));
    }
    if noise.r.len() != p.m - p.l || noise.u.len() != p.k || noise.v.len() != p.n {
        return Err(Error::DimensionMismatch(
            "encryption noise has wrong lengths".into(),
        ));
    }
    let mixed = key.mixing.mul_vec(&a.concat(&noise.r))?;
    let mut z = key.code.encode_with_coefficients(&mixed, &noise.coset)?;
    z ^= &key.s_matrix.vec_mul(&noise.u)?;
    z ^= &noise.v;
    Ok(LpnCiphertext {
        z,
        u: noise.u.clone(),
    })
}

pub fn encrypt(
    key: &LpnKey,
    params: &LpnParams,
    a: &BitVector,
    rng: &mut PrngStream,
) -> Result<LpnCiphertext> {
    check_params(key, params)?;
    encrypt_with(key, a, &EncryptionNoise::sample(key, rng))
}

/// `a = trunc_l(M⁻¹ · g(z ⊕ u·S))` with `g` the ML decoder of the key's code.
pub fn decrypt(key: &LpnKey, params: &LpnParams, ct: &LpnCiphertext) -> Result<BitVector> {
    check_params(key, params)?;
    if ct.z.len() != params.n || ct.u.len() != params.k {
        return Err(Error::DimensionMismatch(format!(
            "ciphertext is ({}, {}) bits, key expects ({}, {})",
            ct.z.len(),
            ct.u.len(),
            params.n,
            params.k
        )));
    }
    let y = &ct.z ^ &key.s_matrix.vec_mul(&ct.u)?;
    let mixed = key.decoder.decode(&y)?;
    Ok(key.mixing_inv.mul_vec(&mixed)?.truncate(params.l))
}
