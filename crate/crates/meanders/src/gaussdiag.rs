//! Chord diagrams (double-occurrence words), interlacement graphs, and the
//! realizability decision with witness.
//!
//! A [`ChordDiagram`] is a cyclic word of length `2k` in which each of the
//! `k` chord labels occurs exactly twice. Two diagrams are the same when
//! their words differ by rotation or reversal. The [`InterlacementGraph`]
//! joins two chords exactly when they cross, and a diagram comes from a
//! closed plane curve iff some diagonal matrix `D` makes `M + D` idempotent
//! over GF(2); [`ChordDiagram::realizability`] decides that by propagating
//! the diagonal over a spanning forest instead of searching all `2^k`
//! diagonals.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2mat::Gf2Matrix;
use crate::permcore::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordDiagramError {
    #[error("word length {0} is odd; chords need two endpoints each")]
    OddLength(usize),
    #[error("label {label} occurs {count} times; each label must occur exactly twice")]
    BadOccurrence { label: usize, count: usize },
}

/// A double-occurrence word read around a circle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ChordDiagram {
    word: Vec<usize>,
}

impl ChordDiagram {
    pub fn new(word: Vec<usize>) -> Result<Self, ChordDiagramError> {
        if word.len() % 2 != 0 {
            return Err(ChordDiagramError::OddLength(word.len()));
        }
        let mut labels: Vec<usize> = word.clone();
        labels.sort_unstable();
        let mut k = 0;
        while k < labels.len() {
            let label = labels[k];
            let count = labels[k..].iter().take_while(|&&l| l == label).count();
            if count != 2 {
                return Err(ChordDiagramError::BadOccurrence { label, count });
            }
            k += count;
        }
        Ok(ChordDiagram { word })
    }

    /// The diagram of a permutation: chords `0, 1, …, n` read around the
    /// circle as `(0, 1, …, n, 0, π(1), …, π(n))`; chord 0 crosses all others.
    pub fn of_permutation(pi: &Permutation) -> Self {
        let n = pi.n();
        let mut word = Vec::with_capacity(2 * n + 2);
        word.push(0);
        word.extend(1..=n);
        word.push(0);
        word.extend(pi.word().iter().copied());
        ChordDiagram { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn chord_count(&self) -> usize {
        self.word.len() / 2
    }

    /// Sorted chord labels.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = self.word.clone();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Labeled equivalence: some rotation of `other`, forward or reversed,
    /// matches this word exactly.
    pub fn eq_labeled(&self, other: &ChordDiagram) -> bool {
        if self.word.len() != other.word.len() {
            return false;
        }
        if self.word.is_empty() {
            return true;
        }
        let len = self.word.len();
        let mut reversed = other.word.clone();
        reversed.reverse();
        for candidate in [&other.word, &reversed] {
            for shift in 0..len {
                if (0..len).all(|p| self.word[p] == candidate[(p + shift) % len]) {
                    return true;
                }
            }
        }
        false
    }

    /// Canonical unlabeled form: chords renamed `1..=k` by first occurrence,
    /// minimized lexicographically over all rotations and both directions.
    pub fn canonical_word(&self) -> Vec<usize> {
        let len = self.word.len();
        if len == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<usize>> = None;
        let mut reversed = self.word.clone();
        reversed.reverse();
        for candidate in [&self.word, &reversed] {
            for shift in 0..len {
                let mut lookup = std::collections::HashMap::new();
                let mut renamed = Vec::with_capacity(len);
                for p in 0..len {
                    let label = candidate[(p + shift) % len];
                    let next = lookup.len() + 1;
                    renamed.push(*lookup.entry(label).or_insert(next));
                }
                if best.as_ref().is_none_or(|b| renamed < *b) {
                    best = Some(renamed);
                }
            }
        }
        best.unwrap()
    }

    fn endpoints(&self) -> Vec<(usize, (usize, usize))> {
        let labels = self.labels();
        labels
            .iter()
            .map(|&label| {
                let first = self.word.iter().position(|&l| l == label).unwrap();
                let second = first
                    + 1
                    + self.word[first + 1..]
                        .iter()
                        .position(|&l| l == label)
                        .unwrap();
                (label, (first, second))
            })
            .collect()
    }

    /// The interlacement graph: chords `a`, `b` are adjacent iff exactly one
    /// endpoint of `b` lies strictly between the endpoints of `a`.
    pub fn interlacement(&self) -> InterlacementGraph {
        let endpoints = self.endpoints();
        let k = endpoints.len();
        let labels: Vec<usize> = endpoints.iter().map(|&(l, _)| l).collect();
        let mut adj = Gf2Matrix::zero(k);
        for a in 0..k {
            let (_, (a1, a2)) = endpoints[a];
            for (b, &(_, (b1, b2))) in endpoints.iter().enumerate().skip(a + 1) {
                let inside = |p: usize| a1 < p && p < a2;
                if inside(b1) != inside(b2) {
                    adj.set(a, b, true);
                    adj.set(b, a, true);
                }
            }
        }
        InterlacementGraph { labels, adj }
    }

    /// Decides realizability, producing a witness diagonal or an obstruction.
    pub fn realizability(&self) -> Realizability {
        realizability_of(&self.interlacement())
    }
}

impl PartialEq for ChordDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.eq_labeled(other)
    }
}

impl Eq for ChordDiagram {}

impl TryFrom<Vec<usize>> for ChordDiagram {
    type Error = ChordDiagramError;
    fn try_from(word: Vec<usize>) -> Result<Self, Self::Error> {
        ChordDiagram::new(word)
    }
}

impl From<ChordDiagram> for Vec<usize> {
    fn from(cd: ChordDiagram) -> Vec<usize> {
        cd.word
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex label {0} not present in the graph")]
    UnknownVertex(usize),
    #[error("edge ({0},{1}) repeats a vertex or uses an unknown label")]
    BadEdge(usize, usize),
}

/// A graph on chord labels with a symmetric hollow GF(2) adjacency matrix.
/// Vertices are kept in sorted label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacementGraph {
    labels: Vec<usize>,
    adj: Gf2Matrix,
}

impl InterlacementGraph {
    /// Builds a graph from explicit vertices and edges.
    pub fn from_edges(
        mut labels: Vec<usize>,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        labels.sort_unstable();
        labels.dedup();
        let mut adj = Gf2Matrix::zero(labels.len());
        let index = |l: usize| labels.binary_search(&l).ok();
        for &(a, b) in edges {
            let (Some(i), Some(j)) = (index(a), index(b)) else {
                return Err(GraphError::BadEdge(a, b));
            };
            if i == j {
                return Err(GraphError::BadEdge(a, b));
            }
            adj.set(i, j, true);
            adj.set(j, i, true);
        }
        Ok(InterlacementGraph { labels, adj })
    }

    /// The graph of a permutation: vertex 0 adjacent to every point, and
    /// points `i < j` adjacent iff `(i,j)` lies in the co-inversion set.
    /// Its adjacency matrix is the bordered form of the co-inversion matrix.
    pub fn of_permutation(pi: &Permutation) -> Self {
        let n = pi.n();
        let co = pi.co_inversion_set();
        let mut adj = Gf2Matrix::zero(n + 1);
        for i in 1..=n {
            adj.set(0, i, true);
            adj.set(i, 0, true);
        }
        for (i, j) in co.iter() {
            adj.set(i, j, true);
            adj.set(j, i, true);
        }
        InterlacementGraph {
            labels: (0..=n).collect(),
            adj,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adj
    }

    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj.get(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, label: usize) -> usize {
        let i = self.index_of(label).expect("label in graph");
        self.adj.row_weight(i)
    }

    /// Edges as sorted label pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.labels.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if self.adj.get(i, j) {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.labels.len())
            .map(|i| self.adj.row_weight(i))
            .sum::<usize>()
            / 2
    }

    /// The induced subgraph with one vertex removed.
    pub fn without_vertex(&self, label: usize) -> Result<Self, GraphError> {
        let drop = self
            .index_of(label)
            .ok_or(GraphError::UnknownVertex(label))?;
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&i| i != drop).collect();
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        let mut adj = Gf2Matrix::zero(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.adj.get(i, j) {
                    adj.set(a, b, true);
                }
            }
        }
        Ok(InterlacementGraph { labels, adj })
    }
}

/// Outcome of the realizability decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Realizability {
    /// A diagonal `D` (in sorted label order) making `M + D` idempotent.
    Realizable {
        witness: Vec<bool>,
    },
    NotRealizable {
        obstruction: Obstruction,
    },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable { .. })
    }

    pub fn witness(&self) -> Option<&[bool]> {
        match self {
            Realizability::Realizable { witness } => Some(witness),
            Realizability::NotRealizable { .. } => None,
        }
    }
}

/// Why no diagonal works.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Chords `a`, `b` do not cross but their rows have an odd inner
    /// product; `a == b` means chord `a` crosses an odd number of chords.
    OddPairing { a: usize, b: usize },
    /// A cycle of crossings whose parity constraints sum to 1.
    InconsistentCycle { labels: Vec<usize> },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::OddPairing { a, b } if a == b => {
                write!(f, "chord {a} crosses an odd number of chords")
            }
            Obstruction::OddPairing { a, b } => write!(
                f,
                "chords {a} and {b} do not cross but share an odd number of crossings"
            ),
            Obstruction::InconsistentCycle { labels } => {
                write!(f, "inconsistent parity around cycle ")?;
                for (i, l) in labels.iter().enumerate() {
                    if i > 0 {
                        write!(f, "-")?;
                    }
                    write!(f, "{l}")?;
                }
                Ok(())
            }
        }
    }
}

/// Fast realizability over an interlacement graph.
///
/// `M + D` is idempotent iff every row of `M` has even weight, every
/// non-crossing pair has even inner product, and the system
/// `Xᵢ + Xⱼ = ⟨mᵢ, mⱼ⟩ + 1` over crossing pairs is consistent. The system is
/// solved by forest propagation with roots pinned to 0; every non-tree edge
/// closes a cycle whose parity must vanish.
pub fn realizability_of(graph: &InterlacementGraph) -> Realizability {
    let m = graph.adjacency();
    let k = graph.vertex_count();
    let labels = graph.labels();

    for i in 0..k {
        if m.row_weight_parity(i) {
            return Realizability::NotRealizable {
                obstruction: Obstruction::OddPairing {
                    a: labels[i],
                    b: labels[i],
                },
            };
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if !m.get(i, j) && m.row_product_parity(i, j) {
                return Realizability::NotRealizable {
                    obstruction: Obstruction::OddPairing {
                        a: labels[i],
                        b: labels[j],
                    },
                };
            }
        }
    }

    // Forest propagation: X over tree edges, then check non-tree edges.
    let mut x = vec![false; k];
    let mut parent: Vec<Option<usize>> = vec![None; k];
    let mut visited = vec![false; k];
    for root in 0..k {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in 0..k {
                if !m.get(u, v) {
                    continue;
                }
                if !visited[v] {
                    visited[v] = true;
                    parent[v] = Some(u);
                    x[v] = x[u] ^ m.row_product_parity(u, v) ^ true;
                    stack.push(v);
                }
            }
        }
    }
    for u in 0..k {
        for v in (u + 1)..k {
            if !m.get(u, v) || parent[v] == Some(u) || parent[u] == Some(v) {
                continue;
            }
            if x[u] ^ x[v] != m.row_product_parity(u, v) ^ true {
                return Realizability::NotRealizable {
                    obstruction: Obstruction::InconsistentCycle {
                        labels: cycle_labels(u, v, &parent, labels),
                    },
                };
            }
        }
    }
    Realizability::Realizable { witness: x }
}

/// The cycle closed by non-tree edge `(u, v)`: the tree path from `u` to `v`.
fn cycle_labels(u: usize, v: usize, parent: &[Option<usize>], labels: &[usize]) -> Vec<usize> {
    let path_to_root = |mut node: usize| {
        let mut path = vec![node];
        while let Some(p) = parent[node] {
            path.push(p);
            node = p;
        }
        path
    };
    let up = path_to_root(u);
    let vp = path_to_root(v);
    // trim the shared tail above the meeting point
    let mut ui = up.len();
    let mut vi = vp.len();
    while ui > 0 && vi > 0 && up[ui - 1] == vp[vi - 1] {
        ui -= 1;
        vi -= 1;
    }
    let mut cycle: Vec<usize> = up[..=ui.min(up.len() - 1)].to_vec();
    for &node in vp[..vi].iter().rev() {
        cycle.push(node);
    }
    cycle.into_iter().map(|i| labels[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(word: &[usize]) -> ChordDiagram {
        ChordDiagram::new(word.to_vec()).unwrap()
    }

    fn mu() -> Permutation {
        Permutation::parse("1,4,3,2,5,6").unwrap()
    }

    #[test]
    fn construction() {
        assert!(ChordDiagram::new(vec![1, 2, 1, 2]).is_ok());
        assert!(ChordDiagram::new(vec![0, 1, 2, 3, 4, 5, 6, 0, 1, 4, 3, 2, 5, 6]).is_ok());
        assert_eq!(
            ChordDiagram::new(vec![1, 1, 2]),
            Err(ChordDiagramError::OddLength(3))
        );
        assert_eq!(
            ChordDiagram::new(vec![1, 1, 2, 2, 2, 2]),
            Err(ChordDiagramError::BadOccurrence { label: 2, count: 4 })
        );
    }

    #[test]
    fn interlacement_basics() {
        let crossing = diagram(&[1, 2, 1, 2]).interlacement();
        assert_eq!(crossing.edges(), vec![(1, 2)]);

        let nested = diagram(&[1, 1, 2, 2]).interlacement();
        assert!(nested.edges().is_empty());
    }

    #[test]
    fn interlacement_of_permutation_diagram() {
        let cd = ChordDiagram::of_permutation(&mu());
        assert_eq!(cd.word(), &[0, 1, 2, 3, 4, 5, 6, 0, 1, 4, 3, 2, 5, 6]);
        let g = cd.interlacement();
        // chord 0 crosses all others
        for i in 1..=6 {
            assert!(g.adjacent(0, i));
        }
        // chords i<j cross iff (i,j) is a co-inversion (μ here is an involution)
        let co = mu().co_inversion_set();
        for i in 1..=6 {
            for j in (i + 1)..=6 {
                assert_eq!(g.adjacent(i, j), co.contains(i, j), "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn permutation_diagram_words() {
        let one = Permutation::identity(1);
        assert_eq!(ChordDiagram::of_permutation(&one).word(), &[0, 1, 0, 1]);
        let two = Permutation::identity(2);
        assert_eq!(
            ChordDiagram::of_permutation(&two).word(),
            &[0, 1, 2, 0, 1, 2]
        );
    }

    #[test]
    fn graph_of_permutation() {
        let g = InterlacementGraph::of_permutation(&mu());
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 18); // 6 spokes + 12 co-inversions
        for i in 1..=6 {
            assert!(g.adjacent(0, i));
        }

        let complete = InterlacementGraph::of_permutation(&Permutation::identity(4));
        assert_eq!(complete.edge_count(), 10); // K₅

        let star = InterlacementGraph::of_permutation(&Permutation::reversal(5));
        assert_eq!(star.edge_count(), 5); // K_{1,5}
        for i in 1..=5 {
            assert_eq!(star.degree(i), 1);
        }
    }

    #[test]
    fn word_graph_matches_permutation_graph_under_relabeling() {
        // adjacency_word[μ(i)][μ(j)] = adjacency_graph[i][j]
        for word in [
            vec![1usize, 4, 3, 2, 5, 6],
            vec![2, 5, 1, 3, 4],
            vec![3, 1, 2],
            vec![1],
        ] {
            let pi = Permutation::new(word).unwrap();
            let from_word = ChordDiagram::of_permutation(&pi).interlacement();
            let from_pairs = InterlacementGraph::of_permutation(&pi);
            for i in 0..=pi.n() {
                for j in 0..=pi.n() {
                    let (a, b) = (
                        if i == 0 { 0 } else { pi.apply(i) },
                        if j == 0 { 0 } else { pi.apply(j) },
                    );
                    assert_eq!(from_word.adjacent(a, b), from_pairs.adjacent(i, j));
                }
            }
        }
    }

    #[test]
    fn interlacement_invariant_under_rotation_and_reversal() {
        let base = diagram(&[0, 1, 2, 3, 4, 5, 6, 0, 1, 4, 3, 2, 5, 6]);
        let g = base.interlacement();
        let mut rotated = base.word().to_vec();
        rotated.rotate_left(5);
        assert_eq!(diagram(&rotated).interlacement(), g);
        let mut reversed = base.word().to_vec();
        reversed.reverse();
        assert_eq!(diagram(&reversed).interlacement(), g);
        assert_eq!(base, diagram(&rotated));
        assert_eq!(base.canonical_word(), diagram(&reversed).canonical_word());
    }

    #[test]
    fn labeled_vs_unlabeled_equality() {
        let a = diagram(&[1, 2, 1, 2]);
        let b = diagram(&[7, 9, 7, 9]);
        assert_ne!(a, b); // labels differ
        assert_eq!(a.canonical_word(), b.canonical_word()); // same shape
        assert_eq!(a.canonical_word(), vec![1, 2, 1, 2]);
    }

    #[test]
    fn two_crossing_chords_are_not_realizable() {
        let verdict = diagram(&[1, 2, 1, 2]).realizability();
        assert!(!verdict.is_realizable());
        assert_eq!(
            verdict,
            Realizability::NotRealizable {
                obstruction: Obstruction::OddPairing { a: 1, b: 1 }
            }
        );
    }

    #[test]
    fn trefoil_shadow_is_realizable() {
        let verdict = diagram(&[1, 2, 3, 1, 2, 3]).realizability();
        let witness = verdict.witness().expect("realizable");
        let m = diagram(&[1, 2, 3, 1, 2, 3])
            .interlacement()
            .adjacency()
            .clone();
        assert!(m.with_diagonal(witness).is_idempotent());
    }

    #[test]
    fn parity_cycle_obstruction() {
        // every chord has even interlacement degree and every non-crossing
        // pair an even inner product, yet the triangle 2-1-4 carries
        // constraints summing to 1: ⟨m₁,m₂⟩ = ⟨m₁,m₄⟩ = 1 but ⟨m₂,m₄⟩ = 0
        let cd = diagram(&[2, 3, 5, 4, 6, 7, 1, 6, 3, 2, 4, 5, 7, 1]);
        let verdict = cd.realizability();
        let Realizability::NotRealizable {
            obstruction: Obstruction::InconsistentCycle { labels },
        } = &verdict
        else {
            panic!("expected a cycle obstruction, got {verdict:?}");
        };
        assert_eq!(labels, &[2, 1, 4]);
        // the reported cycle is a closed walk of crossings with odd parity
        let g = cd.interlacement();
        let m = g.adjacency();
        let mut parity = false;
        for k in 0..labels.len() {
            let (a, b) = (labels[k], labels[(k + 1) % labels.len()]);
            assert!(g.adjacent(a, b), "cycle edge ({a},{b}) missing");
            let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
            parity ^= m.row_product_parity(i, j) ^ true;
        }
        assert!(parity, "cycle constraints must sum to 1");
    }

    #[test]
    fn meandric_diagram_realizable_with_zero_witness() {
        let verdict = ChordDiagram::of_permutation(&mu()).realizability();
        assert_eq!(
            verdict,
            Realizability::Realizable {
                witness: vec![false; 7]
            }
        );
    }

    #[test]
    fn overlapping_interlacement_convention() {
        // chords 1 and 3 of this word interlace: positions (0,5) and (2,7)
        let g = diagram(&[1, 2, 3, 4, 5, 1, 6, 3, 7, 5, 4, 7, 2, 6]).interlacement();
        assert!(g.adjacent(1, 3));
    }

    #[test]
    fn without_vertex_drops_rows() {
        let g = InterlacementGraph::of_permutation(&mu());
        let reduced = g.without_vertex(0).unwrap();
        assert_eq!(reduced.vertex_count(), 6);
        assert_eq!(reduced.edge_count(), 12);
        assert!(g.without_vertex(9).is_err());
    }

    #[test]
    fn diagram_json_is_an_integer_array() {
        let cd = diagram(&[1, 2, 1, 2]);
        assert_eq!(serde_json::to_string(&cd).unwrap(), "[1,2,1,2]");
        let back: ChordDiagram = serde_json::from_str("[3,1,3,1]").unwrap();
        assert_eq!(back.word(), &[3, 1, 3, 1]);
        assert!(serde_json::from_str::<ChordDiagram>("[1,1,2]").is_err());
    }

    #[test]
    fn from_edges_validates() {
        let g = InterlacementGraph::from_edges(vec![1, 2, 3], &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(InterlacementGraph::from_edges(vec![1, 2], &[(1, 1)]).is_err());
        assert!(InterlacementGraph::from_edges(vec![1, 2], &[(1, 5)]).is_err());
    }
}
