use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::prng::PrngStream;

use super::BitVector;

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from row vectors of a common length. An empty list needs the
    /// column count spelled out, see [`BitMatrix::zeros`].
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} among rows of length {cols}",
                bad.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Literal constructor for small matrices; nonzero entries are ones.
    pub fn from_bit_rows(rows: &[&[u8]]) -> Self {
        Self::from_rows(rows.iter().map(|r| BitVector::from_bits(r)).collect())
            .expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    /// Column `c` as a vector of length `rows`.
    pub fn column(&self, c: usize) -> BitVector {
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.get(c) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_iter() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// `self · v` for a column vector `v`; equivalently `v · selfᵀ`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `v · self` for a row vector `v`: XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = BitVector::zeros(self.cols);
        for i in v.ones_iter() {
            out ^= &self.data[i];
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| other.vec_mul(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Rows of `self` followed by rows of `below`.
    pub fn stack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols && self.rows > 0 && below.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, below.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { below.cols };
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Rows `[start, start + count)`.
    pub fn row_range(&self, start: usize, count: usize) -> Self {
        Self {
            rows: count,
            cols: self.cols,
            data: self.data[start..start + count].to_vec(),
        }
    }

    pub fn random(rng: &mut PrngStream, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows).map(|_| rng.next_bits(cols)).collect(),
        }
    }

    /// Uniform `rows x cols` matrix of rank `rows`, by rejection sampling.
    pub fn random_full_rank(rng: &mut PrngStream, rows: usize, cols: usize) -> Result<Self> {
        if rows > cols {
            return Err(Error::Parameter(format!(
                "full row rank needs rows <= cols, got {rows}x{cols}"
            )));
        }
        loop {
            let m = Self::random(rng, rows, cols);
            if m.rank() == rows {
                return Ok(m);
            }
        }
    }

    pub fn random_invertible(rng: &mut PrngStream, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("invertible matrix needs n >= 1".into()));
        }
        Self::random_full_rank(rng, n, n)
    }

    /// `rows,cols:hex`; every row padded to whole bytes, rows concatenated.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self.data.iter().flat_map(BitVector::to_bytes).collect();
        format!("{},{}:{}", self.rows, self.cols, hex::encode(bytes))
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let (dims, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing `rows,cols:` header in {s:?}")))?;
        let (rows, cols) = dims
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad matrix header {dims:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad matrix dimension {t:?}: {e}")))
        };
        let (rows, cols) = (parse(rows)?, parse(cols)?);
        let bytes = hex::decode(body.trim()).map_err(|e| Error::Parse(format!("bad hex: {e}")))?;
        let stride = cols.div_ceil(8);
        if bytes.len() != rows * stride {
            return Err(Error::Parse(format!(
                "{rows}x{cols} matrix needs {} bytes, got {}",
                rows * stride,
                bytes.len()
            )));
        }
        let data = (0..rows)
            .map(|r| BitVector::from_bytes(&bytes[r * stride..(r + 1) * stride], cols))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows, cols, data })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            write!(f, "  ")?;
            for b in row.iter() {
                write!(f, "{}", u8::from(b))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}
