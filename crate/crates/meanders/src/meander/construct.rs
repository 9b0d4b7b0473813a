//! Backtracking construction of meandric permutations.
//!
//! The search places the values `1..=N` one position at a time, alternating
//! odd and even values and starting from the pre-placed `s₁ = 1`. Placing a
//! value `v` joins it to every larger value that is still unplaced, so the
//! finished graph carries an edge between values `a < b` exactly when `a`
//! was placed first, i.e. the co-inversion pattern of the sequence under
//! the relabeling the sequence itself provides. A vertex's neighborhood is
//! final at its own placement, so the parity conditions a meandric graph
//! must satisfy (vertex 0 omitted: odd degrees, odd shared neighborhoods
//! across non-edges, even across edges) are checked for each candidate
//! against every already-placed vertex, and violations prune the branch.
//!
//! The parity conditions are necessary but not known to be sufficient, so
//! every completed sequence is post-validated with the geometric oracle;
//! sequences failing it are reported, not emitted.

use serde::Serialize;

use super::{enumerate_meanders, oracle_is_meandric, MeanderError};
use crate::permcore::Permutation;

/// One parity comparison between a candidate and an already-placed vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub placed: usize,
    pub adjacent: bool,
    /// |N(candidate) ∩ N(placed)| in the partial graph.
    pub common: usize,
    /// The same count without the pre-placed start vertex 1. The start
    /// vertex is universal and so sits in every shared neighborhood;
    /// traces display both forms.
    pub common_excluding_start: usize,
    pub ok: bool,
}

/// Evaluation record for one candidate at one search position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    /// Values already placed, in order.
    pub prefix: Vec<usize>,
    pub vertex: usize,
    pub degree: usize,
    pub degree_ok: bool,
    pub pair_checks: Vec<PairCheck>,
    pub accepted: bool,
}

/// Search progress, streamed to an observer for tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum SearchEvent {
    Candidate(CandidateReport),
    Emit {
        sequence: Vec<usize>,
        oracle_ok: bool,
    },
    Backtrack {
        vertex: usize,
    },
}

/// Outcome of one construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructReport {
    pub order: usize,
    /// Complete sequences the parity search accepted, before the oracle.
    pub accepted_count: usize,
    /// Accepted sequences that pass the oracle, in emission order.
    pub emitted: Vec<Permutation>,
    /// Accepted sequences the oracle refutes.
    pub oracle_rejected: Vec<Permutation>,
}

struct Search<'a> {
    order: usize,
    /// neighbor masks; values live at bits 1..=order
    nbr: Vec<u64>,
    placed: Vec<usize>,
    unplaced: u64,
    exhaustive: bool,
    report: ConstructReport,
    observer: &'a mut dyn FnMut(&SearchEvent),
}

fn mask_of_values_above(v: usize, order: usize) -> u64 {
    let all = ((1u64 << order) - 1) << 1; // bits 1..=order
    all & !((1u64 << (v + 1)) - 1)
}

impl Search<'_> {
    fn candidate_pool(&self, position: usize) -> u64 {
        // odd positions take odd values, even positions even values
        let parity_bit = position % 2;
        let mut pool = 0u64;
        let mut v = if parity_bit == 1 { 1 } else { 2 };
        while v <= self.order {
            pool |= 1 << v;
            v += 2;
        }
        pool & self.unplaced
    }

    fn evaluate(&self, v: usize) -> CandidateReport {
        let new_edges = mask_of_values_above(v, self.order) & self.unplaced & !(1 << v);
        let candidate_nbr = self.nbr[v] | new_edges;
        let degree = candidate_nbr.count_ones() as usize;
        let degree_ok = degree % 2 == 1;
        let mut accepted = degree_ok;
        let mut pair_checks = Vec::with_capacity(self.placed.len());
        for &u in &self.placed {
            let adjacent = candidate_nbr >> u & 1 == 1;
            let shared = candidate_nbr & self.nbr[u];
            let common = shared.count_ones() as usize;
            let common_excluding_start = (shared & !(1 << 1)).count_ones() as usize;
            // non-adjacent pairs need odd shared neighborhoods, adjacent even
            let ok = (common % 2 == 1) != adjacent;
            accepted &= ok;
            pair_checks.push(PairCheck {
                placed: u,
                adjacent,
                common,
                common_excluding_start,
                ok,
            });
        }
        CandidateReport {
            prefix: self.placed.clone(),
            vertex: v,
            degree,
            degree_ok,
            pair_checks,
            accepted,
        }
    }

    fn place(&mut self, v: usize) -> u64 {
        let new_edges = mask_of_values_above(v, self.order) & self.unplaced & !(1 << v);
        self.nbr[v] |= new_edges;
        let mut rest = new_edges;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            self.nbr[u] |= 1 << v;
            rest &= rest - 1;
        }
        self.unplaced &= !(1 << v);
        self.placed.push(v);
        new_edges
    }

    fn unplace(&mut self, v: usize, new_edges: u64) {
        self.placed.pop();
        self.unplaced |= 1 << v;
        self.nbr[v] &= !new_edges;
        let mut rest = new_edges;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            self.nbr[u] &= !(1 << v);
            rest &= rest - 1;
        }
    }

    /// Depth-first over positions; returns false to stop the whole search.
    fn descend(&mut self, position: usize) -> bool {
        if position > self.order {
            self.report.accepted_count += 1;
            let mu = Permutation::new(self.placed.clone()).expect("placed all values once");
            let oracle_ok = oracle_is_meandric(&mu);
            (self.observer)(&SearchEvent::Emit {
                sequence: self.placed.clone(),
                oracle_ok,
            });
            if oracle_ok {
                self.report.emitted.push(mu);
                return self.exhaustive;
            }
            self.report.oracle_rejected.push(mu);
            return true;
        }
        let mut pool = self.candidate_pool(position);
        while pool != 0 {
            let v = pool.trailing_zeros() as usize;
            pool &= pool - 1;
            let verdict = self.evaluate(v);
            let accepted = verdict.accepted;
            (self.observer)(&SearchEvent::Candidate(verdict));
            if !accepted {
                continue;
            }
            let undo = self.place(v);
            let keep_going = self.descend(position + 1);
            self.unplace(v, undo);
            (self.observer)(&SearchEvent::Backtrack { vertex: v });
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Runs the backtracking construction for even order `N`.
///
/// With `exhaustive` the full tree is explored and every oracle-validated
/// sequence is returned; otherwise the search stops at the first one. The
/// observer receives every candidate evaluation, emission, and backtrack.
pub fn construct_meanders(
    order: usize,
    exhaustive: bool,
    mut observer: impl FnMut(&SearchEvent),
) -> Result<ConstructReport, MeanderError> {
    if order == 0 {
        return Err(MeanderError::ZeroOrder);
    }
    if order % 2 != 0 {
        return Err(MeanderError::OddOrder(order));
    }
    if order > 63 {
        return Err(MeanderError::OrderOverMaskWidth(order));
    }
    let mut search = Search {
        order,
        nbr: vec![0; order + 1],
        placed: Vec::with_capacity(order),
        unplaced: ((1u64 << order) - 1) << 1,
        exhaustive,
        report: ConstructReport {
            order,
            accepted_count: 0,
            emitted: Vec::new(),
            oracle_rejected: Vec::new(),
        },
        observer: &mut observer,
    };
    // s₁ = 1 is pre-placed and joined to every other value
    search.place(1);
    search.descend(2);
    Ok(search.report)
}

/// How the constructed set relates to the enumerated ground truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructComparison {
    pub order: usize,
    pub accepted_count: usize,
    pub emitted_count: usize,
    pub enumerated_count: usize,
    /// Accepted by the parity search but refuted by the oracle.
    pub oracle_rejected: Vec<Permutation>,
    /// Meanders the search never produced (completeness gap).
    pub missing_from_construction: Vec<Permutation>,
    /// Emitted sequences outside the enumeration (soundness gap; the oracle
    /// post-filter keeps this empty).
    pub extra_from_construction: Vec<Permutation>,
    pub emitted_equals_enumerated: bool,
}

/// Compares an exhaustive construction run against [`enumerate_meanders`].
pub fn compare_construction_with_enumeration(
    report: &ConstructReport,
) -> Result<ConstructComparison, MeanderError> {
    let enumerated = enumerate_meanders(report.order)?;
    let mut emitted = report.emitted.clone();
    emitted.sort();
    let missing: Vec<Permutation> = enumerated
        .iter()
        .filter(|mu| emitted.binary_search(mu).is_err())
        .cloned()
        .collect();
    let extra: Vec<Permutation> = emitted
        .iter()
        .filter(|mu| enumerated.binary_search(mu).is_err())
        .cloned()
        .collect();
    let equal = missing.is_empty() && extra.is_empty() && emitted.len() == enumerated.len();
    Ok(ConstructComparison {
        order: report.order,
        accepted_count: report.accepted_count,
        emitted_count: report.emitted.len(),
        enumerated_count: enumerated.len(),
        oracle_rejected: report.oracle_rejected.clone(),
        missing_from_construction: missing,
        extra_from_construction: extra,
        emitted_equals_enumerated: equal,
    })
}
