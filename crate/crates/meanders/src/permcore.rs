//! Permutations in one-line notation and their inversion-set algebra.
//!
//! A [`Permutation`] is a word `(π(1), …, π(n))` over `1..=n`. A [`PairSet`]
//! is a set of ordered pairs `(i, j)` with `1 ≤ i < j ≤ n`, bit-packed for
//! O(1) membership and word-parallel symmetric difference. Together they
//! carry the inversion-set calculus: `R(στ) = τ⁻¹R(σ) △ R(τ)`, the
//! complement identity `¬R(π) = Δₙ ∖ R(π) = R(ωπ)`, and reconstruction of a
//! permutation from a valid inversion set.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Validation failure when building a [`Permutation`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("empty word is not a permutation")]
    Empty,
    #[error("value {value} at index {index} is out of range 1..={n}")]
    OutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("value {value} at index {index} duplicates an earlier entry")]
    Duplicate { index: usize, value: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("cannot parse permutation entry {token:?}")]
    Parse { token: String },
    #[error("pair #{index} ({i},{j}) must satisfy 1 <= i < j <= {n}")]
    BadPair {
        index: usize,
        i: usize,
        j: usize,
        n: usize,
    },
    #[error("ground set must be nonempty")]
    ZeroSize,
}

/// A permutation of `1..=n` in one-line notation: `word[i-1] = π(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Validates a one-line word: every value of `1..=n` exactly once.
    pub fn new(word: Vec<usize>) -> Result<Self, PermutationError> {
        if word.is_empty() {
            return Err(PermutationError::Empty);
        }
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (index, &value) in word.iter().enumerate() {
            if value < 1 || value > n {
                return Err(PermutationError::OutOfRange { index, value, n });
            }
            if seen[value] {
                return Err(PermutationError::Duplicate { index, value });
            }
            seen[value] = true;
        }
        Ok(Permutation { word })
    }

    /// The identity of `𝔖ₙ`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations need n >= 1");
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The order-reversing permutation `ω(i) = n+1-i`.
    pub fn reversal(n: usize) -> Self {
        assert!(n >= 1, "permutations need n >= 1");
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// Interprets `cycle` as the cyclic visiting order of `1..=n` and rotates
    /// it so the word begins with 1, yielding one-line notation.
    pub fn from_cycle(cycle: &[usize]) -> Result<Self, PermutationError> {
        let start = cycle.iter().position(|&v| v == 1).unwrap_or(0);
        let mut word = Vec::with_capacity(cycle.len());
        word.extend_from_slice(&cycle[start..]);
        word.extend_from_slice(&cycle[..start]);
        Permutation::new(word)
    }

    /// Parses a comma-separated one-line word such as `"1,4,3,2,5,6"`.
    pub fn parse(s: &str) -> Result<Self, PermutationError> {
        let word = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| PermutationError::Parse {
                        token: tok.trim().to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// Applies the permutation to a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composition `(στ)(i) = σ(τ(i))` where `self` is σ.
    pub fn compose(&self, tau: &Permutation) -> Result<Permutation, PermutationError> {
        if self.n() != tau.n() {
            return Err(PermutationError::SizeMismatch {
                left: self.n(),
                right: tau.n(),
            });
        }
        let word = tau.word.iter().map(|&t| self.word[t - 1]).collect();
        Ok(Permutation { word })
    }

    /// The inverse permutation: `compose(π, π⁻¹)` is the identity.
    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v - 1] = i + 1;
        }
        Permutation { word }
    }

    /// The inversion set `R(π) = {(i,j) : i < j, π(i) > π(j)}`.
    pub fn inversion_set(&self) -> PairSet {
        let n = self.n();
        let mut set = PairSet::empty(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.word[i - 1] > self.word[j - 1] {
                    set.insert(i, j);
                }
            }
        }
        set
    }

    /// The co-inversion set `¬R(π) = Δₙ ∖ R(π) = {(i,j) : i < j, π(i) < π(j)}`.
    pub fn co_inversion_set(&self) -> PairSet {
        self.inversion_set().complement()
    }

    /// Image of a pair set: each pair maps componentwise and is reordered so
    /// the smaller point comes first. Cardinality is preserved.
    pub fn pair_image(&self, s: &PairSet) -> Result<PairSet, PermutationError> {
        if self.n() != s.n() {
            return Err(PermutationError::SizeMismatch {
                left: self.n(),
                right: s.n(),
            });
        }
        let mut out = PairSet::empty(s.n());
        for (i, j) in s.iter() {
            let (a, b) = (self.apply(i), self.apply(j));
            out.insert(a.min(b), a.max(b));
        }
        Ok(out)
    }

    /// `R(στ)` computed without forming the composition:
    /// `τ⁻¹R(σ) △ R(τ)`. Always equals `inversion_set(compose(σ, τ))`.
    pub fn thurston_compose(
        sigma: &Permutation,
        tau: &Permutation,
    ) -> Result<PairSet, PermutationError> {
        let pulled = tau.inverse().pair_image(&sigma.inversion_set())?;
        pulled.symmetric_difference(&tau.inversion_set())
    }

    /// Reconstructs the unique permutation with inversion set `s`.
    ///
    /// Uses `π(i) = i - #{j<i : (j,i) ∈ s} + #{j>i : (i,j) ∈ s}`, which counts
    /// how many smaller positions hold larger values and vice versa.
    pub fn from_inversion_set(s: &PairSet) -> Result<Permutation, InvalidInversionSet> {
        if let Some(violation) = s.inversion_set_violation() {
            return Err(violation);
        }
        let n = s.n();
        let mut word = Vec::with_capacity(n);
        for i in 1..=n {
            let before = (1..i).filter(|&j| s.contains(j, i)).count();
            let after = ((i + 1)..=n).filter(|&j| s.contains(i, j)).count();
            word.push(i - before + after);
        }
        Ok(Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Permutation::parse(&text).map_err(D::Error::custom)
    }
}

/// The two closure conditions a set of pairs must satisfy to be the
/// inversion set of some permutation, with a witness triple `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidInversionSet {
    #[error("not transitively closed: ({i},{j}) and ({j},{k}) present but ({i},{k}) missing")]
    NotTransitive { i: usize, j: usize, k: usize },
    #[error("gap not covered: ({i},{k}) present but neither ({i},{j}) nor ({j},{k}) is")]
    GapUncovered { i: usize, j: usize, k: usize },
}

/// A set of pairs `(i,j)`, `1 ≤ i < j ≤ n`, stored as a bit-packed upper
/// triangle. Houses inversion sets, co-inversion sets, and the full set Δₙ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    n: usize,
    bits: Vec<u64>,
}

impl PairSet {
    fn word_count(n: usize) -> usize {
        (n * (n - 1) / 2).div_ceil(64)
    }

    fn bit_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(
            1 <= i && i < j && j <= self.n,
            "pair ({i},{j}) out of range for n={}",
            self.n
        );
        // row-major upper triangle: row i starts after rows of lengths n-1, …, n-i+1
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }

    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "pair sets need n >= 1");
        PairSet {
            n,
            bits: vec![0; Self::word_count(n)],
        }
    }

    /// The full set `Δₙ` of all C(n,2) pairs.
    pub fn full(n: usize) -> Self {
        let mut s = PairSet::empty(n);
        let total = n * (n - 1) / 2;
        for (w, word) in s.bits.iter_mut().enumerate() {
            let remaining = total - (w * 64).min(total);
            *word = if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        s
    }

    /// Builds from explicit pairs; each must satisfy `1 ≤ i < j ≤ n`.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, PermutationError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(PermutationError::ZeroSize);
        }
        let mut s = PairSet::empty(n);
        for (index, (i, j)) in pairs.into_iter().enumerate() {
            if i < 1 || j <= i || j > n {
                return Err(PermutationError::BadPair { index, i, j, n });
            }
            s.insert(i, j);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let idx = self.bit_index(i, j);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let idx = self.bit_index(i, j);
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        let idx = self.bit_index(i, j);
        self.bits[idx / 64] &= !(1 << (idx % 64));
    }

    fn zip_with(
        &self,
        other: &PairSet,
        f: impl Fn(u64, u64) -> u64,
    ) -> Result<PairSet, PermutationError> {
        if self.n != other.n {
            return Err(PermutationError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(PairSet { n: self.n, bits })
    }

    pub fn symmetric_difference(&self, other: &PairSet) -> Result<PairSet, PermutationError> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet, PermutationError> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet, PermutationError> {
        self.zip_with(other, |a, b| a & b)
    }

    /// Complement within Δₙ.
    pub fn complement(&self) -> PairSet {
        self.symmetric_difference(&PairSet::full(self.n))
            .expect("same n by construction")
    }

    /// Pairs in sorted (row-major) order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (1..=n)
            .flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.contains(i, j))
    }

    /// Whether this set is the inversion set of some permutation.
    pub fn is_valid_inversion_set(&self) -> bool {
        self.inversion_set_violation().is_none()
    }

    /// First violated closure condition, if any, with its witness triple.
    pub fn inversion_set_violation(&self) -> Option<InvalidInversionSet> {
        let n = self.n;
        for i in 1..n {
            for j in (i + 1)..n {
                for k in (j + 1)..=n {
                    if self.contains(i, j) && self.contains(j, k) && !self.contains(i, k) {
                        return Some(InvalidInversionSet::NotTransitive { i, j, k });
                    }
                    if self.contains(i, k) && !self.contains(i, j) && !self.contains(j, k) {
                        return Some(InvalidInversionSet::GapUncovered { i, j, k });
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct PairSetRepr {
    n: usize,
    pairs: Vec<[usize; 2]>,
}

impl Serialize for PairSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PairSetRepr {
            n: self.n,
            pairs: self.iter().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PairSetRepr::deserialize(d)?;
        PairSet::from_pairs(repr.n, repr.pairs.iter().map(|p| (p[0], p[1])))
            .map_err(D::Error::custom)
    }
}
