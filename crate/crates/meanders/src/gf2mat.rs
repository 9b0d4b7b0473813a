//! Bit-packed symmetric matrix algebra over GF(2).
//!
//! Rows are packed into `u64` words; the inner product `⟨m_i, m_j⟩` is
//! `popcount(row_i & row_j) mod 2`, so multiplication and idempotency checks
//! stay word-parallel. Matrices are plain values with structural equality.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permcore::PairSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("bad hex matrix file: {0}")]
    BadHex(String),
}

/// An `n × n` matrix over GF(2), rows bit-packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Gf2Matrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All ones except the main diagonal (the matrix of the full pair set).
    pub fn hollow_ones(n: usize) -> Self {
        let mut m = Gf2Matrix::all_ones(n);
        for i in 0..n {
            m.set(i, i, false);
        }
        m
    }

    pub fn all_ones(n: usize) -> Self {
        let mut m = Gf2Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Symmetric hollow matrix of a pair set: entry `(i-1, j-1)` is 1 iff
    /// `(i,j)` is in the set (both triangles are filled).
    pub fn from_pairset(s: &PairSet) -> Self {
        let mut m = Gf2Matrix::zero(s.n());
        for (i, j) in s.iter() {
            m.set(i - 1, j - 1, true);
            m.set(j - 1, i - 1, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        let w = i * self.words_per_row + j / 64;
        self.bits[w] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = i * self.words_per_row + j / 64;
        if value {
            self.bits[w] |= 1 << (j % 64);
        } else {
            self.bits[w] &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Parity of `⟨m_i, m_j⟩ = Σₖ m_{i,k} m_{j,k}` over GF(2).
    pub fn row_product_parity(&self, i: usize, j: usize) -> bool {
        let ones: u32 = self
            .row(i)
            .iter()
            .zip(self.row(j))
            .map(|(&a, &b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Parity of row `i`'s weight, `⟨m_i, m_i⟩`.
    pub fn row_weight_parity(&self, i: usize) -> bool {
        self.row_product_parity(i, i)
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_hollow(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i))
    }

    /// Entrywise XOR.
    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.n != other.n {
            return Err(Gf2Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a ^ b)
            .collect();
        Ok(Gf2Matrix {
            n: self.n,
            words_per_row: self.words_per_row,
            bits,
        })
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix product over GF(2): entry `(i,j)` is the parity of
    /// `row_i(self) & col_j(other)`, computed with AND + popcount.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.n != other.n {
            return Err(Gf2Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let bt = other.transpose();
        let mut out = Gf2Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let ones: u32 = self
                    .row(i)
                    .iter()
                    .zip(bt.row(j))
                    .map(|(&a, &b)| (a & b).count_ones())
                    .sum();
                if ones & 1 == 1 {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// Whether `M² = M` over GF(2).
    pub fn is_idempotent(&self) -> bool {
        self.mul(self).expect("square by construction") == *self
    }

    /// `M + diag(d)`.
    pub fn with_diagonal(&self, d: &[bool]) -> Gf2Matrix {
        assert_eq!(d.len(), self.n, "diagonal length must match dimension");
        let mut m = self.clone();
        for (i, &x) in d.iter().enumerate() {
            if x {
                m.set(i, i, !m.get(i, i));
            }
        }
        m
    }

    /// Solves `self · x = rhs` over GF(2), treating each row as one equation.
    ///
    /// Returns `None` when the system is inconsistent; otherwise the solution
    /// with every free variable set to 0 (Gaussian elimination, pivoting on
    /// the leading bit of each remaining row).
    pub fn solve(&self, rhs: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(rhs.len(), self.n, "one rhs bit per equation");
        let n = self.n;
        // augmented rows: matrix words plus one rhs bit
        let mut rows: Vec<(Vec<u64>, bool)> =
            (0..n).map(|i| (self.row(i).to_vec(), rhs[i])).collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut next_row = 0;
        for col in 0..n {
            let (w, b) = (col / 64, col % 64);
            let Some(pivot) = (next_row..n).find(|&r| rows[r].0[w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(next_row, pivot);
            for r in 0..n {
                if r != next_row && rows[r].0[w] >> b & 1 == 1 {
                    let (pivot_words, pivot_rhs) = rows[next_row].clone();
                    for (dst, src) in rows[r].0.iter_mut().zip(&pivot_words) {
                        *dst ^= src;
                    }
                    rows[r].1 ^= pivot_rhs;
                }
            }
            pivot_of_col[col] = Some(next_row);
            next_row += 1;
        }
        // zero rows with nonzero rhs are contradictions
        for (words, b) in rows.iter().skip(next_row) {
            if *b && words.iter().all(|&w| w == 0) {
                return None;
            }
        }
        let mut x = vec![false; n];
        for col in 0..n {
            if let Some(r) = pivot_of_col[col] {
                x[col] = rows[r].1;
            }
        }
        Some(x)
    }

    /// Rows as 0/1 bytes, for JSON and human inspection.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Gf2Matrix, Gf2Error> {
        let n = rows.len();
        let mut m = Gf2Matrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Gf2Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        Ok(m)
    }

    /// Compact golden-file format: a header documenting the bit order, then
    /// one hex-encoded row per line. Bit `j` of a row lives in byte `j / 8`
    /// at position `j % 8`; bytes are printed lowest-index first.
    pub fn to_hex_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# gf2 matrix: n={}; row bit j -> byte j/8, bit j%8; bytes hex, lowest first\n",
            self.n
        ));
        let bytes_per_row = self.n.div_ceil(8);
        for i in 0..self.n {
            let mut bytes = vec![0u8; bytes_per_row];
            for j in 0..self.n {
                if self.get(i, j) {
                    bytes[j / 8] |= 1 << (j % 8);
                }
            }
            for byte in bytes {
                out.push_str(&format!("{byte:02x}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_hex_text(text: &str) -> Result<Gf2Matrix, Gf2Error> {
        let header = text
            .lines()
            .find(|l| l.starts_with('#'))
            .ok_or_else(|| Gf2Error::BadHex("missing header".into()))?;
        let n: usize = header
            .split("n=")
            .nth(1)
            .and_then(|rest| rest.split(';').next())
            .and_then(|tok| tok.trim().parse().ok())
            .ok_or_else(|| Gf2Error::BadHex("header lacks n=".into()))?;
        let mut m = Gf2Matrix::zero(n);
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if rows.len() != n {
            return Err(Gf2Error::BadHex(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        for (i, line) in rows.iter().enumerate() {
            if line.len() != 2 * n.div_ceil(8) {
                return Err(Gf2Error::BadHex(format!("row {i} has wrong length")));
            }
            for (b, chunk) in line.as_bytes().chunks(2).enumerate() {
                let hex = std::str::from_utf8(chunk).expect("ascii hex");
                let byte = u8::from_str_radix(hex, 16)
                    .map_err(|_| Gf2Error::BadHex(format!("row {i}: bad hex {hex:?}")))?;
                for bit in 0..8 {
                    let j = b * 8 + bit;
                    if j < n && byte >> bit & 1 == 1 {
                        m.set(i, j, true);
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            if i + 1 < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gf2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        Gf2Matrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}
