//! The degree-profile statistic `lambda`.
//!
//! For in-degree class counts `Y_i`, `lambda(D)` is the largest `L >= 0`
//! such that every level `0 <= ell <= L` satisfies
//!
//! ```text
//!     sum_{i < ell} (ell - i) * Y_i  <=  ell .
//! ```
//!
//! The left side counts, over all vertices of in-degree `i < ell`, how many
//! extra arc endpoints each would need to reach in-degree `ell`; the packing
//! number can never exceed `lambda` (each of `k` arc-disjoint spanning
//! arborescences consumes a distinct in-arc at every non-root vertex).

use crate::digraph::{Digraph, Direction};
use crate::stats::DegreeHistogram;

/// First failing level of the defining inequality, as a certificate that
/// `lambda` cannot be any larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaViolation {
    /// Level at which the inequality first fails.
    pub ell: usize,
    /// Value of `sum_{i < ell} (ell - i) * Y_i` there; exceeds `ell`.
    pub lhs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaResult {
    pub value: usize,
    /// Present whenever the scan terminated at a failing level; absent only
    /// in degenerate cases where no level can ever fail.
    pub violation: Option<LambdaViolation>,
    /// Set for digraphs on fewer than two vertices, where every level holds
    /// vacuously and the statistic is reported as 0 by convention.
    pub degenerate: bool,
}

/// Evaluates `lambda` from an in-degree histogram.
///
/// Incremental scan: with `prefix(ell) = Y_0 + .. + Y_{ell-1}`, the left
/// side satisfies `lhs(ell) = lhs(ell-1) + prefix(ell)`, so each level costs
/// O(1). For `n >= 2` a failing level exists by `2n - 1` (once `ell`
/// exceeds the maximum degree the left side grows by `n >= 2` per level
/// against the right side's 1), comfortably below the `2n + |arcs|` scan
/// bound.
pub fn lambda(hist: &DegreeHistogram) -> LambdaResult {
    let n = hist.n();
    if n < 2 {
        return LambdaResult { value: 0, violation: None, degenerate: true };
    }
    let cap = 2 * n + hist.arc_count();
    let mut prefix = 0usize;
    let mut lhs = 0usize;
    for ell in 1..=cap {
        prefix += hist.y(ell - 1);
        lhs += prefix;
        if lhs > ell {
            return LambdaResult {
                value: ell - 1,
                violation: Some(LambdaViolation { ell, lhs }),
                degenerate: false,
            };
        }
    }
    debug_assert!(false, "no failing level found for n >= 2");
    LambdaResult { value: cap, violation: None, degenerate: true }
}

/// Evaluates `lambda` of a digraph from its in-degree histogram.
pub fn lambda_of(d: &Digraph) -> LambdaResult {
    lambda(&DegreeHistogram::from_digraph(d, Direction::In))
}

/// One-class cap: if `Y_k > k + 1` then level `k + 1` already fails
/// (its left side is at least `Y_k`), so `lambda <= k`. Returns whether
/// class `k` of the in-degree histogram triggers that cap.
pub fn class_caps_lambda(d: &Digraph, k: usize) -> bool {
    let caps = DegreeHistogram::from_digraph(d, Direction::In).y(k) > k + 1;
    debug_assert!(!caps || lambda_of(d).value <= k);
    caps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{sample_with, trial_rng};
    use proptest::prelude::*;

    fn lambda_brute(counts: &[usize]) -> (usize, Option<LambdaViolation>) {
        let n: usize = counts.iter().sum();
        let cap = 2 * n + counts.iter().enumerate().map(|(k, &c)| k * c).sum::<usize>();
        for ell in 1..=cap {
            let lhs: usize = counts
                .iter()
                .enumerate()
                .take(ell)
                .map(|(i, &c)| (ell - i) * c)
                .sum();
            if lhs > ell {
                return (ell - 1, Some(LambdaViolation { ell, lhs }));
            }
        }
        (cap, None)
    }

    #[test]
    fn worked_examples() {
        // directed triangle: all in-degrees 1; level 2 fails with lhs 3
        let c3 = Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            lambda_of(&c3),
            LambdaResult {
                value: 1,
                violation: Some(LambdaViolation { ell: 2, lhs: 3 }),
                degenerate: false,
            }
        );

        // complete digraph on 3: all in-degrees 2; level 4 fails with lhs 6
        let k3 = Digraph::build(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        let r = lambda_of(&k3);
        assert_eq!(r.value, 3);
        assert_eq!(r.violation, Some(LambdaViolation { ell: 4, lhs: 6 }));

        // two isolated vertices: level 1 fails immediately
        let empty2 = Digraph::build(2, []).unwrap();
        let r = lambda_of(&empty2);
        assert_eq!(r.value, 0);
        assert_eq!(r.violation, Some(LambdaViolation { ell: 1, lhs: 2 }));

        // single vertex: vacuous at every level
        let one = Digraph::build(1, []).unwrap();
        assert_eq!(
            lambda_of(&one),
            LambdaResult { value: 0, violation: None, degenerate: true }
        );
    }

    #[test]
    fn min_in_degree_lower_bounds_lambda() {
        for t in 0..40u64 {
            let n = 20 + (t as usize % 30);
            let p = 0.05 + 0.02 * (t % 10) as f64;
            let d = sample_with(n, p, &mut trial_rng(0xA11CE, n, t)).unwrap();
            let delta_in = d.min_degree(Direction::In);
            let r = lambda_of(&d);
            assert!(
                delta_in <= r.value,
                "n={n} t={t}: delta_in={delta_in} > lambda={}",
                r.value
            );
        }
    }

    #[test]
    fn monotone_under_arc_addition() {
        // adding arcs only shifts in-degree mass upward, so lambda cannot drop
        for t in 0..20u64 {
            let n = 9;
            let full = sample_with(n, 0.5, &mut trial_rng(201, n, t)).unwrap();
            let arcs = full.arcs();
            let mut prev = 0;
            for cut in 0..=arcs.len() {
                let d = Digraph::build(n, arcs[..cut].iter().copied()).unwrap();
                let now = lambda_of(&d).value;
                assert!(now >= prev, "lambda dropped {prev} -> {now} at arc {cut}");
                prev = now;
            }
        }
    }

    #[test]
    fn class_cap_examples() {
        // three sources force lambda = 0 via class 0
        let d = Digraph::build(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(class_caps_lambda(&d, 0));
        assert_eq!(lambda_of(&d).value, 0);

        let c3 = Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(class_caps_lambda(&c3, 1)); // Y_1 = 3 > 2, so lambda <= 1
        assert!(!class_caps_lambda(&c3, 0));
    }

    proptest! {
        #[test]
        fn matches_per_level_brute_force(counts in proptest::collection::vec(0usize..6, 1..12)) {
            prop_assume!(counts.iter().sum::<usize>() >= 2);
            let hist = DegreeHistogram::from_counts(counts.clone());
            let fast = lambda(&hist);
            let (value, violation) = lambda_brute(&counts);
            prop_assert_eq!(fast.value, value);
            prop_assert_eq!(fast.violation, violation);
            prop_assert!(!fast.degenerate);
            // the cap claim: any overfull class bounds the result
            for (k, &c) in counts.iter().enumerate() {
                if c > k + 1 {
                    prop_assert!(fast.value <= k);
                }
            }
        }
    }
}
