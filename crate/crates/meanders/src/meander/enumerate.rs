//! Enumeration of meandric permutations and the criterion-vs-oracle audit.
//!
//! The production path pairs noncrossing matchings below the line with
//! noncrossing matchings above it and keeps the pairs whose union is a
//! single cycle traversed from point 1 downward, O(Catalan(n)²) instead of
//! (2n)!. A direct scan of all of `𝔖_{2n}` is kept as the cross-check.

use serde::Serialize;

use super::{criterion_is_meandric, oracle_is_meandric, CriterionMode, MeanderError};
use crate::next_permutation;
use crate::permcore::Permutation;

/// Default cap for the full `𝔖_{2n}` scan of [`compare_criterion_oracle`].
pub const DEFAULT_COMPARE_CAP: usize = 10;
/// Default cap shells should apply to enumeration and counting.
pub const DEFAULT_COUNT_CAP: usize = 16;

fn check_order(order: usize) -> Result<(), MeanderError> {
    if order == 0 {
        Err(MeanderError::ZeroOrder)
    } else if order % 2 != 0 {
        Err(MeanderError::OddOrder(order))
    } else {
        Ok(())
    }
}

/// All noncrossing perfect matchings of `1..=order` as partner arrays
/// (`partner[p]` is the point sharing an arc with `p`). Catalan(order/2)
/// of them.
fn noncrossing_matchings(order: usize) -> Vec<Vec<usize>> {
    fn fill(
        partner: &mut Vec<usize>,
        segments: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some((lo, hi)) = segments.pop() else {
            out.push(partner.clone());
            return;
        };
        if lo > hi {
            fill(partner, segments, out);
            segments.push((lo, hi));
            return;
        }
        // pair lo with a point at odd offset so both sides stay even
        let mut m = lo + 1;
        while m <= hi {
            partner[lo] = m;
            partner[m] = lo;
            segments.push((m + 1, hi));
            segments.push((lo + 1, m - 1));
            fill(partner, segments, out);
            segments.pop();
            segments.pop();
            m += 2;
        }
        segments.push((lo, hi));
    }

    let mut out = Vec::new();
    let mut partner = vec![0usize; order + 1];
    let mut segments = vec![(1, order)];
    fill(&mut partner, &mut segments, &mut out);
    out
}

/// Walks the union of a lower and an upper matching starting at point 1,
/// descending first. Returns the visiting order when the union is a single
/// cycle of length `order`.
fn trace_single_cycle(order: usize, lower: &[usize], upper: &[usize]) -> Option<Vec<usize>> {
    let mut word = Vec::with_capacity(order);
    let mut seen = vec![false; order + 1];
    let mut cur = 1usize;
    for step in 0..order {
        if seen[cur] {
            return None; // closed early: more than one cycle
        }
        seen[cur] = true;
        word.push(cur);
        cur = if step % 2 == 0 {
            lower[cur]
        } else {
            upper[cur]
        };
    }
    (cur == 1).then_some(word)
}

fn for_each_meander(order: usize, mut f: impl FnMut(Permutation)) -> Result<(), MeanderError> {
    check_order(order)?;
    let matchings = noncrossing_matchings(order);
    for lower in &matchings {
        for upper in &matchings {
            if let Some(word) = trace_single_cycle(order, lower, upper) {
                f(Permutation::new(word).expect("walk visits each point once"));
            }
        }
    }
    Ok(())
}

/// Exactly the meandric permutations of the given order, in lexicographic
/// order.
pub fn enumerate_meanders(order: usize) -> Result<Vec<Permutation>, MeanderError> {
    let mut out = Vec::new();
    for_each_meander(order, |mu| out.push(mu))?;
    out.sort();
    Ok(out)
}

/// Reference enumeration: filter every word of `𝔖_{2n}` through the oracle.
/// Exponentially slower than [`enumerate_meanders`]; kept as the
/// independent cross-check at small orders.
pub fn enumerate_meanders_by_scan(order: usize) -> Result<Vec<Permutation>, MeanderError> {
    check_order(order)?;
    let mut out = Vec::new();
    let mut word: Vec<usize> = (1..=order).collect();
    loop {
        let mu = Permutation::new(word.clone()).expect("word is a rearrangement");
        if oracle_is_meandric(&mu) {
            out.push(mu);
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(out)
}

pub fn count_meanders(order: usize) -> Result<u64, MeanderError> {
    let mut count = 0u64;
    for_each_meander(order, |_| count += 1)?;
    Ok(count)
}

/// The audit of the matrix criterion against the geometric oracle over all
/// of `𝔖_{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub order: usize,
    pub oracle_count: usize,
    pub criterion_count: usize,
    /// Oracle-meandric but criterion-negative. Empty unless the necessity
    /// direction of the criterion is broken.
    pub missed: Vec<Permutation>,
    /// Criterion-positive but oracle-negative: sufficiency counterexamples.
    pub extra: Vec<Permutation>,
}

impl DivergenceReport {
    pub fn diverges(&self) -> bool {
        !self.missed.is_empty() || !self.extra.is_empty()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Scans every permutation of `𝔖_{2n}`, comparing the corrected criterion
/// with the oracle. Refuses orders above `cap` with a cost estimate.
pub fn compare_criterion_oracle(
    order: usize,
    cap: usize,
) -> Result<DivergenceReport, MeanderError> {
    check_order(order)?;
    if order > cap {
        return Err(MeanderError::OrderTooLarge {
            order,
            cap,
            cost: factorial(order),
        });
    }
    let mut report = DivergenceReport {
        order,
        oracle_count: 0,
        criterion_count: 0,
        missed: Vec::new(),
        extra: Vec::new(),
    };
    let mut word: Vec<usize> = (1..=order).collect();
    loop {
        let mu = Permutation::new(word.clone()).expect("word is a rearrangement");
        let by_oracle = oracle_is_meandric(&mu);
        let by_criterion =
            criterion_is_meandric(&mu, CriterionMode::Corrected).expect("even order");
        report.oracle_count += usize::from(by_oracle);
        report.criterion_count += usize::from(by_criterion);
        match (by_oracle, by_criterion) {
            (true, false) => report.missed.push(mu),
            (false, true) => report.extra.push(mu),
            _ => {}
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussdiag::InterlacementGraph;
    use crate::meander::{graph_is_meandric, neighbor_parity_ok};

    #[test]
    fn smallest_orders() {
        let two = enumerate_meanders(2).unwrap();
        assert_eq!(two, vec![Permutation::parse("1,2").unwrap()]);

        let four = enumerate_meanders(4).unwrap();
        assert_eq!(
            four,
            vec![
                Permutation::parse("1,2,3,4").unwrap(),
                Permutation::parse("1,4,3,2").unwrap(),
            ]
        );
    }

    #[test]
    fn order_six_has_eight() {
        let six = enumerate_meanders(6).unwrap();
        assert_eq!(six.len(), 8);
        assert!(six.contains(&Permutation::parse("1,4,3,2,5,6").unwrap()));
    }

    #[test]
    fn counts() {
        assert_eq!(count_meanders(2).unwrap(), 1);
        assert_eq!(count_meanders(4).unwrap(), 2);
        assert_eq!(count_meanders(6).unwrap(), 8);
        assert_eq!(count_meanders(8).unwrap(), 42);
        assert_eq!(count_meanders(10).unwrap(), 262);
        assert_eq!(count_meanders(12).unwrap(), 1828);
        assert_eq!(count_meanders(14).unwrap(), 13820);
        assert_eq!(count_meanders(16).unwrap(), 110954);
    }

    #[test]
    fn order_validation() {
        assert_eq!(enumerate_meanders(0), Err(MeanderError::ZeroOrder));
        assert_eq!(enumerate_meanders(5), Err(MeanderError::OddOrder(5)));
        assert_eq!(count_meanders(3), Err(MeanderError::OddOrder(3)));
    }

    #[test]
    fn catalan_pairing_agrees_with_scan() {
        for order in [2usize, 4, 6, 8] {
            let fast = enumerate_meanders(order).unwrap();
            let scan = enumerate_meanders_by_scan(order).unwrap();
            assert_eq!(fast, scan, "order {order}");
        }
    }

    #[test]
    fn enumerated_meanders_alternate_parity() {
        for mu in enumerate_meanders(8).unwrap() {
            for (pos, &value) in mu.word().iter().enumerate() {
                assert_eq!((pos + 1) % 2, value % 2, "position parity in {mu}");
            }
        }
    }

    #[test]
    fn every_enumerated_meander_passes_all_checks() {
        for order in [2usize, 4, 6, 8] {
            for mu in enumerate_meanders(order).unwrap() {
                assert!(oracle_is_meandric(&mu));
                assert!(criterion_is_meandric(&mu, CriterionMode::Corrected).unwrap());
                let g = InterlacementGraph::of_permutation(&mu);
                assert!(g.adjacency().is_idempotent());
                assert!(graph_is_meandric(&g).unwrap());
                assert!(neighbor_parity_ok(&g, false));
                assert!(neighbor_parity_ok(&g, true));
            }
        }
    }

    #[test]
    fn divergence_at_small_orders() {
        let two = compare_criterion_oracle(2, DEFAULT_COMPARE_CAP).unwrap();
        assert_eq!((two.oracle_count, two.criterion_count), (1, 1));
        assert!(!two.diverges());

        // The matrix identity cannot see the start-at-crossing-1 convention:
        // it also accepts some meanders read from a different crossing. The
        // necessity direction (missed empty) is exact.
        let four = compare_criterion_oracle(4, DEFAULT_COMPARE_CAP).unwrap();
        assert_eq!((four.oracle_count, four.criterion_count), (2, 3));
        assert!(four.missed.is_empty());
        assert_eq!(four.extra, vec![Permutation::parse("3,2,1,4").unwrap()]);
        // (3,2,1,4) is the meander (1,4,3,2) traversed from crossing 3
        assert!(oracle_is_meandric(
            &Permutation::from_cycle(&[3, 2, 1, 4]).unwrap()
        ));
    }

    #[test]
    fn every_criterion_extra_is_a_rotated_meander() {
        for order in [4usize, 6] {
            let report = compare_criterion_oracle(order, DEFAULT_COMPARE_CAP).unwrap();
            assert!(report.missed.is_empty());
            for mu in &report.extra {
                let rotated = Permutation::from_cycle(mu.word()).unwrap();
                assert!(
                    oracle_is_meandric(&rotated),
                    "{mu} is not a rotated meander"
                );
            }
        }
    }

    #[test]
    fn compare_refuses_above_cap() {
        match compare_criterion_oracle(12, DEFAULT_COMPARE_CAP) {
            Err(MeanderError::OrderTooLarge { order, cap, cost }) => {
                assert_eq!((order, cap), (12, DEFAULT_COMPARE_CAP));
                assert_eq!(cost, 479_001_600);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn report_serialization() {
        let report = compare_criterion_oracle(4, DEFAULT_COMPARE_CAP).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["order"], 4);
        assert_eq!(json["oracle_count"], 2);
        assert!(json["missed"].as_array().unwrap().is_empty());
    }

    #[test]
    fn noncrossing_matching_counts_are_catalan() {
        assert_eq!(noncrossing_matchings(2).len(), 1);
        assert_eq!(noncrossing_matchings(4).len(), 2);
        assert_eq!(noncrossing_matchings(6).len(), 5);
        assert_eq!(noncrossing_matchings(8).len(), 14);
        assert_eq!(noncrossing_matchings(10).len(), 42);
    }
}
