//! Meandric permutations: the geometric oracle, the GF(2) matrix criterion,
//! graph criteria, neighbor-parity checks, enumeration, and the backtracking
//! constructor.
//!
//! A closed meander of order `2n` crosses an oriented line at points
//! `1..=2n`; reading the crossings along the curve (starting at point 1,
//! heading downward) gives a permutation. The permutation is meandric iff
//! its lower and upper arc systems are both noncrossing matchings; that is
//! the oracle here, and everything else is checked against it.

mod construct;
mod enumerate;

pub use construct::{
    compare_construction_with_enumeration, construct_meanders, CandidateReport,
    ConstructComparison, ConstructReport, PairCheck, SearchEvent,
};
pub use enumerate::{
    compare_criterion_oracle, count_meanders, enumerate_meanders, enumerate_meanders_by_scan,
    DivergenceReport, DEFAULT_COMPARE_CAP, DEFAULT_COUNT_CAP,
};

use serde::Serialize;
use thiserror::Error;

use crate::gaussdiag::InterlacementGraph;
use crate::gf2mat::Gf2Matrix;
use crate::permcore::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeanderError {
    #[error("order {0} is odd; meanders cross the line an even number of times")]
    OddOrder(usize),
    #[error("order must be a positive even number")]
    ZeroOrder,
    #[error(
        "order {order} exceeds the exhaustive-scan cap {cap}: {order}! = {cost} permutations; \
         set MEANDER_MAX_ORDER to raise the cap"
    )]
    OrderTooLarge {
        order: usize,
        cap: usize,
        cost: u128,
    },
    #[error("expected vertex set {{0, 1, …, 2n}}: {0}")]
    WrongVertexSet(String),
    #[error("order {0} exceeds the 63-point limit of the constructor's bit masks")]
    OrderOverMaskWidth(usize),
}

/// The lower/upper semicircular arcs a closed curve traces between
/// consecutive crossings. Both sides are perfect matchings of `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcSystem {
    order: usize,
    lower: Vec<(usize, usize)>,
    upper: Vec<(usize, usize)>,
}

impl ArcSystem {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Arcs below the line, as sorted `(min, max)` pairs.
    pub fn lower(&self) -> &[(usize, usize)] {
        &self.lower
    }

    pub fn upper(&self) -> &[(usize, usize)] {
        &self.upper
    }
}

/// Splits a permutation's visiting order into arcs: the curve leaves
/// crossing `μ(1)` downward, so odd steps run below the line and even steps
/// above, with the closing arc `{μ(2n), μ(1)}` above.
pub fn arc_system_of(mu: &Permutation) -> Result<ArcSystem, MeanderError> {
    let m = mu.n();
    if m % 2 != 0 {
        return Err(MeanderError::OddOrder(m));
    }
    let arc = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut lower = Vec::with_capacity(m / 2);
    let mut upper = Vec::with_capacity(m / 2);
    for k in 0..m / 2 {
        lower.push(arc(mu.apply(2 * k + 1), mu.apply(2 * k + 2)));
        upper.push(arc(mu.apply(2 * k + 2), mu.apply((2 * k + 2) % m + 1)));
    }
    lower.sort_unstable();
    upper.sort_unstable();
    Ok(ArcSystem {
        order: m,
        lower,
        upper,
    })
}

/// Stack scan: a perfect matching drawn as semicircles on one side of the
/// line is noncrossing iff every closing point matches the most recent open
/// arc.
fn matching_is_noncrossing(order: usize, arcs: &[(usize, usize)]) -> bool {
    let mut partner = vec![0usize; order + 1];
    for &(a, b) in arcs {
        partner[a] = b;
        partner[b] = a;
    }
    let mut stack = Vec::with_capacity(order / 2);
    for p in 1..=order {
        if partner[p] > p {
            stack.push(p);
        } else if stack.pop() != Some(partner[p]) {
            return false;
        }
    }
    true
}

/// The geometric oracle: `μ` is meandric iff its size is even, the walk
/// starts at crossing 1 (`μ(1) = 1`), and both arc matchings are
/// noncrossing. Runs in O(n).
pub fn oracle_is_meandric(mu: &Permutation) -> bool {
    if mu.n() % 2 != 0 || mu.apply(1) != 1 {
        return false;
    }
    let arcs = arc_system_of(mu).expect("even size checked");
    matching_is_noncrossing(mu.n(), &arcs.lower) && matching_is_noncrossing(mu.n(), &arcs.upper)
}

/// Which form of the matrix identity to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionMode {
    /// `M² = M + Î + I`, equivalent to idempotency of the bordered matrix.
    Corrected,
    /// The uncorrected identity `M² = M + Î`, which fails on the diagonal
    /// for every meandric permutation (rows of `M` have odd weight). Kept
    /// for documentation; see the errata section of the README.
    Strict,
}

/// The matrix criterion: `M` is the symmetric hollow matrix of the
/// co-inversion set of `μ`.
pub fn criterion_is_meandric(mu: &Permutation, mode: CriterionMode) -> Result<bool, MeanderError> {
    let m = mu.n();
    if m % 2 != 0 {
        return Err(MeanderError::OddOrder(m));
    }
    let matrix = Gf2Matrix::from_pairset(&mu.co_inversion_set());
    let square = matrix.mul(&matrix).expect("square");
    let mut rhs = matrix.add(&Gf2Matrix::hollow_ones(m)).expect("same size");
    if mode == CriterionMode::Corrected {
        rhs = rhs.add(&Gf2Matrix::identity(m)).expect("same size");
    }
    Ok(square == rhs)
}

/// Graph-level criterion on a graph with vertex set `{0, 1, …, 2n}`:
/// vertex 0 must be universal, the point edges must satisfy the two
/// inversion-set closure conditions, and the adjacency matrix must be
/// idempotent over GF(2).
pub fn graph_is_meandric(g: &InterlacementGraph) -> Result<bool, MeanderError> {
    let labels = g.labels();
    let m = labels.len().saturating_sub(1);
    let contiguous = labels.iter().enumerate().all(|(i, &l)| l == i);
    if labels.is_empty() || !contiguous {
        return Err(MeanderError::WrongVertexSet(format!("got {labels:?}")));
    }
    if m == 0 || m % 2 != 0 {
        return Err(MeanderError::WrongVertexSet(format!(
            "got 2n = {m}, need positive even"
        )));
    }

    // (1) spokes from 0 to every point
    if !(1..=m).all(|i| g.adjacent(0, i)) {
        return Ok(false);
    }
    // (2) every point between the ends of an edge is covered by one side
    for i in 1..=m {
        for j in (i + 1)..=m {
            if g.adjacent(i, j) && !((i + 1)..j).all(|k| g.adjacent(i, k) || g.adjacent(k, j)) {
                return Ok(false);
            }
        }
    }
    // (3) transitivity over ordered point triples
    for i in 1..=m {
        for j in (i + 1)..=m {
            if !g.adjacent(i, j) {
                continue;
            }
            for k in (j + 1)..=m {
                if g.adjacent(j, k) && !g.adjacent(i, k) {
                    return Ok(false);
                }
            }
        }
    }
    // (4) idempotent adjacency
    Ok(g.adjacency().is_idempotent())
}

/// Neighbor-parity conditions.
///
/// With vertex 0 present every degree must be even and the shared
/// neighborhood of a pair must be even for non-adjacent, odd for adjacent
/// vertices. With `omit_zero` the universal vertex is removed first, which
/// shifts every count by one, so all three parities flip.
pub fn neighbor_parity_ok(g: &InterlacementGraph, omit_zero: bool) -> bool {
    let reduced;
    let graph = if omit_zero && g.index_of(0).is_some() {
        reduced = g.without_vertex(0).expect("vertex 0 present");
        &reduced
    } else {
        g
    };
    let adjacency = graph.adjacency();
    let k = graph.vertex_count();
    let want_odd_degree = omit_zero;
    for i in 0..k {
        if adjacency.row_weight_parity(i) != want_odd_degree {
            return false;
        }
        for j in (i + 1)..k {
            let want_odd = adjacency.get(i, j) != omit_zero;
            if adjacency.row_product_parity(i, j) != want_odd {
                return false;
            }
        }
    }
    true
}
