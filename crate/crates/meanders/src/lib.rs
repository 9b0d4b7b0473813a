//! Meandric permutations and their matrix criteria.
//!
//! A closed meander is a simple closed curve crossing an oriented line at
//! `2n` points; reading the crossings along the curve gives a permutation.
//! This crate provides:
//!
//! - [`permcore`]: permutations in one-line notation, pair sets, inversion
//!   sets, and the symmetric-difference composition law.
//! - [`gf2mat`]: bit-packed symmetric matrices over GF(2) with a linear
//!   solver.
//! - [`gaussdiag`]: chord diagrams, interlacement graphs, and the
//!   realizability decision with witness.
//! - [`meander`]: the geometric oracle, the matrix and graph criteria,
//!   exact enumeration, the criterion-vs-oracle audit, and a backtracking
//!   constructor.
//! - [`render`]: deterministic SVG/ASCII arc diagrams and DOT output.

pub mod gaussdiag;
pub mod gf2mat;
pub mod meander;
pub mod permcore;
pub mod render;

pub use gaussdiag::{ChordDiagram, InterlacementGraph, Obstruction, Realizability};
pub use gf2mat::Gf2Matrix;
pub use meander::{
    compare_criterion_oracle, count_meanders, criterion_is_meandric, enumerate_meanders,
    oracle_is_meandric, CriterionMode, DivergenceReport, MeanderError,
};
pub use permcore::{PairSet, Permutation, PermutationError};

/// Advances `word` to its lexicographic successor in place; returns false
/// when `word` was already the last arrangement.
pub fn next_permutation<T: Ord>(word: &mut [T]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| word[j] > word[i])
        .expect("successor exists");
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}
