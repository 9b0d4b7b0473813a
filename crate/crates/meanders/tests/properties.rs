//! Property tests: algebraic laws fuzzed against independent references.

use proptest::prelude::*;

use meanders::gaussdiag::{ChordDiagram, InterlacementGraph};
use meanders::gf2mat::Gf2Matrix;
use meanders::permcore::{PairSet, Permutation};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|word| Permutation::new(word).expect("shuffled range"))
    })
}

fn permutation_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (2..=max_n).prop_flat_map(|n| {
        let one = Just((1..=n).collect::<Vec<usize>>()).prop_shuffle();
        let other = Just((1..=n).collect::<Vec<usize>>()).prop_shuffle();
        (one, other).prop_map(|(a, b)| {
            (
                Permutation::new(a).expect("shuffled range"),
                Permutation::new(b).expect("shuffled range"),
            )
        })
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Gf2Matrix> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let mut m = Gf2Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, bits[i * n + j]);
            }
        }
        m
    })
}

fn symmetric_hollow_matrix(n: usize) -> impl Strategy<Value = Gf2Matrix> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let mut m = Gf2Matrix::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                m.set(i, j, bits[i * n + j]);
                m.set(j, i, bits[i * n + j]);
            }
        }
        m
    })
}

/// Double-occurrence word over `k` chords.
fn chord_word(max_k: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_k).prop_flat_map(|k| {
        let doubled: Vec<usize> = (1..=k).flat_map(|c| [c, c]).collect();
        Just(doubled).prop_shuffle()
    })
}

fn naive_mul(a: &Gf2Matrix, b: &Gf2Matrix) -> Gf2Matrix {
    let n = a.n();
    let mut out = Gf2Matrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = false;
            for k in 0..n {
                acc ^= a.get(i, k) && b.get(k, j);
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Exhaustive reference for realizability: try all 2^k diagonals with the
/// naive product.
fn brute_force_realizable(cd: &ChordDiagram) -> bool {
    let m = cd.interlacement().adjacency().clone();
    let k = m.n();
    (0u64..1 << k).any(|mask| {
        let d: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        let shifted = m.with_diagonal(&d);
        naive_mul(&shifted, &shifted) == shifted
    })
}

proptest! {
    #[test]
    fn inversion_set_roundtrip(pi in permutation(12)) {
        let r = pi.inversion_set();
        prop_assert!(r.is_valid_inversion_set());
        prop_assert_eq!(Permutation::from_inversion_set(&r).unwrap(), pi);
    }

    #[test]
    fn symmetric_difference_composition_law((sigma, tau) in permutation_pair(10)) {
        let direct = sigma.compose(&tau).unwrap().inversion_set();
        let via_pairs = Permutation::thurston_compose(&sigma, &tau).unwrap();
        prop_assert_eq!(direct, via_pairs);
    }

    #[test]
    fn complement_partitions_delta(pi in permutation(12)) {
        let r = pi.inversion_set();
        let co = pi.co_inversion_set();
        prop_assert!(r.intersection(&co).unwrap().is_empty());
        prop_assert_eq!(r.union(&co).unwrap(), PairSet::full(pi.n()));
    }

    #[test]
    fn full_pair_set_is_invariant(pi in permutation(12)) {
        let delta = PairSet::full(pi.n());
        prop_assert_eq!(pi.pair_image(&delta).unwrap(), delta);
    }

    #[test]
    fn symmetric_difference_laws((a, b) in permutation_pair(10), c in permutation(10)) {
        let (x, y) = (a.inversion_set(), b.inversion_set());
        prop_assert_eq!(
            x.symmetric_difference(&y).unwrap(),
            y.symmetric_difference(&x).unwrap()
        );
        prop_assert_eq!(x.symmetric_difference(&PairSet::empty(x.n())).unwrap(), x.clone());
        prop_assert_eq!(
            x.symmetric_difference(&x).unwrap(),
            PairSet::empty(x.n())
        );
        if c.n() == a.n() {
            let z = c.inversion_set();
            prop_assert_eq!(
                x.symmetric_difference(&y).unwrap().symmetric_difference(&z).unwrap(),
                x.symmetric_difference(&y.symmetric_difference(&z).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn matrix_product_matches_naive(a in matrix(20), b in matrix(20)) {
        prop_assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
    }

    #[test]
    fn matrix_product_is_associative(a in matrix(24), b in matrix(24), c in matrix(24)) {
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn matrix_product_distributes(a in matrix(32), b in matrix(32), c in matrix(32)) {
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn symmetric_square_diagonal_is_row_weight(a in symmetric_hollow_matrix(16)) {
        let sq = a.mul(&a).unwrap();
        prop_assert!(sq.is_symmetric());
        for i in 0..a.n() {
            prop_assert_eq!(sq.get(i, i), a.row_weight(i) % 2 == 1);
        }
    }

    #[test]
    fn inversion_matrices_sum_to_hollow_ones(pi in permutation(12)) {
        let sum = Gf2Matrix::from_pairset(&pi.inversion_set())
            .add(&Gf2Matrix::from_pairset(&pi.co_inversion_set()))
            .unwrap();
        prop_assert_eq!(sum, Gf2Matrix::hollow_ones(pi.n()));
    }

    #[test]
    fn word_graph_is_relabel_of_pair_graph(pi in permutation(12)) {
        let from_word = ChordDiagram::of_permutation(&pi).interlacement();
        let from_pairs = InterlacementGraph::of_permutation(&pi);
        for i in 0..=pi.n() {
            for j in 0..=pi.n() {
                let a = if i == 0 { 0 } else { pi.apply(i) };
                let b = if j == 0 { 0 } else { pi.apply(j) };
                prop_assert_eq!(from_word.adjacent(a, b), from_pairs.adjacent(i, j));
            }
        }
    }

    #[test]
    fn realizability_matches_brute_force(word in chord_word(12)) {
        let cd = ChordDiagram::new(word).unwrap();
        let verdict = cd.realizability();
        prop_assert_eq!(verdict.is_realizable(), brute_force_realizable(&cd));
        if let Some(witness) = verdict.witness() {
            let shifted = cd.interlacement().adjacency().with_diagonal(witness);
            prop_assert!(shifted.is_idempotent());
        }
    }

    #[test]
    fn accepted_diagrams_satisfy_necessary_conditions(word in chord_word(12)) {
        let cd = ChordDiagram::new(word).unwrap();
        if let Some(witness) = cd.realizability().witness() {
            let m = cd.interlacement().adjacency().clone();
            for i in 0..m.n() {
                prop_assert!(!m.row_weight_parity(i));
                for j in 0..m.n() {
                    if i != j && !m.get(i, j) {
                        prop_assert!(!m.row_product_parity(i, j));
                    }
                }
            }
            // the witness diagonal leaves every row of M + D with even
            // weight off the diagonal contribution
            let shifted = m.with_diagonal(witness);
            for i in 0..m.n() {
                prop_assert_eq!(shifted.row_weight(i) % 2 == 1, witness[i]);
            }
        }
    }

    #[test]
    fn interlacement_survives_rotation_and_reversal(word in chord_word(10), shift in 0usize..20, reverse in any::<bool>()) {
        let base = ChordDiagram::new(word.clone()).unwrap();
        let mut moved = word;
        let len = moved.len();
        moved.rotate_left(shift % len);
        if reverse {
            moved.reverse();
        }
        let transformed = ChordDiagram::new(moved).unwrap();
        prop_assert_eq!(base.interlacement(), transformed.interlacement());
        prop_assert_eq!(base.canonical_word(), transformed.canonical_word());
        prop_assert!(base.eq_labeled(&transformed));
    }
}
