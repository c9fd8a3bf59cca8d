//! Degree statistics: observed histograms, expected degree-class sizes under
//! `D(n,p)`, the typical minimum in-degree, the rate shape `F` with its
//! inverse, and light-vertex conflict reports.

use crate::digraph::{Digraph, Direction, VertexSet};
use crate::numeric::{ln_choose, Real};
use crate::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("probability {0} outside [0,1]")]
    ProbabilityOutOfRange(f64),
    #[error("degree class {k} out of range for n={n}")]
    ClassOutOfRange { k: usize, n: usize },
    #[error("argument {0} outside the domain (0,1]")]
    OutOfDomain(f64),
    #[error("target {0} outside the open interval (0,1)")]
    TargetOutOfRange(f64),
    #[error("need at least one vertex")]
    NoVertices,
}

fn lossy<R: Real>(x: R) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_probability<R: Real>(p: R) -> Result<(), StatsError> {
    if !(p >= R::zero() && p <= R::one()) {
        return Err(StatsError::ProbabilityOutOfRange(lossy(p)));
    }
    Ok(())
}

/// Counts `Y_k` of vertices per degree `k`, for one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHistogram {
    n: usize,
    counts: Vec<usize>,
}

impl DegreeHistogram {
    pub fn from_digraph(d: &Digraph, dir: Direction) -> Self {
        let mut counts = Vec::new();
        for v in 0..d.n() {
            let deg = d.degree(v, dir).expect("v < n");
            if deg >= counts.len() {
                counts.resize(deg + 1, 0);
            }
            counts[deg] += 1;
        }
        debug_assert_eq!(counts.iter().sum::<usize>(), d.n());
        DegreeHistogram { n: d.n(), counts }
    }

    /// Builds directly from per-class counts; for synthetic profiles in tests.
    pub fn from_counts(counts: Vec<usize>) -> Self {
        let n = counts.iter().sum();
        DegreeHistogram { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Y_k`: number of vertices of degree exactly `k`.
    pub fn y(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Least degree with a nonzero count.
    pub fn min_degree(&self) -> usize {
        self.counts
            .iter()
            .position(|&c| c > 0)
            .expect("histogram of a nonempty digraph")
    }

    /// Total arc count implied by the profile (sum of `k * Y_k`).
    pub fn arc_count(&self) -> usize {
        self.counts.iter().enumerate().map(|(k, &c)| k * c).sum()
    }
}

/// Expected number of vertices with in-degree exactly `k` in `D(n,p)`:
/// `n * C(n-1,k) * p^k * (1-p)^(n-1-k)`, evaluated in log space.
pub fn expected_yk<R: Real>(n: usize, p: R, k: usize) -> Result<R, StatsError> {
    if n == 0 {
        return Err(StatsError::NoVertices);
    }
    check_probability(p)?;
    if k > n - 1 {
        return Err(StatsError::ClassOutOfRange { k, n });
    }
    let nr = R::from_count(n);
    if p == R::zero() {
        return Ok(if k == 0 { nr } else { R::zero() });
    }
    if p == R::one() {
        return Ok(if k == n - 1 { nr } else { R::zero() });
    }
    let kr = R::from_count(k);
    let rest = R::from_count(n - 1 - k);
    let ln = nr.ln() + ln_choose::<R>(n - 1, k) + kr * p.ln() + rest * (-p).ln_1p();
    Ok(ln.exp())
}

/// Typical minimum in-degree statistic with its degeneracy flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaStar {
    pub value: usize,
    /// Set when `p` is 0 or 1 and the statistic collapses to an endpoint.
    pub degenerate: bool,
}

/// `delta_star(n,p)`: the least `k` with `expected_yk(n,p,k) >= 1`.
///
/// Always exists for `p` in `(0,1)` because the expectations over all `n`
/// classes sum to `n`. Computed incrementally via the exact class ratio
/// `E[Y_k] / E[Y_{k-1}] = (n-k) p / (k (1-p))`.
pub fn delta_star<R: Real>(n: usize, p: R) -> Result<DeltaStar, StatsError> {
    if n == 0 {
        return Err(StatsError::NoVertices);
    }
    check_probability(p)?;
    if p == R::zero() {
        return Ok(DeltaStar { value: 0, degenerate: true });
    }
    if p == R::one() {
        return Ok(DeltaStar { value: n - 1, degenerate: true });
    }
    // ln E[Y_0] = ln n + (n-1) ln(1-p)
    let mut ln_ey = R::from_count(n).ln() + R::from_count(n - 1) * (-p).ln_1p();
    let mut best = (ln_ey, 0);
    for k in 0..n {
        if ln_ey >= R::zero() {
            return Ok(DeltaStar { value: k, degenerate: false });
        }
        if ln_ey > best.0 {
            best = (ln_ey, k);
        }
        if k + 1 < n {
            let step = (R::from_count(n - (k + 1)) * p / (R::from_count(k + 1) * (R::one() - p))).ln();
            ln_ey = ln_ey + step;
        }
    }
    // Unreachable in exact arithmetic; fall back to the most populated class.
    Ok(DeltaStar { value: best.1, degenerate: false })
}

/// The rate shape `F(x) = 1 - x + x ln x` on `(0,1]`; strictly decreasing,
/// `F(1) = 0`, and `F(x) -> 1` as `x -> 0+`.
pub fn shape_f<R: Real>(x: R) -> Result<R, StatsError> {
    if !(x > R::zero() && x <= R::one()) {
        return Err(StatsError::OutOfDomain(lossy(x)));
    }
    Ok(R::one() - x + x * x.ln())
}

/// Absolute bisection tolerance used by [`invert_f`].
pub const INVERT_F_TOL: f64 = 1e-12;

/// Inverse of [`shape_f`]: the unique `x` in `(0,1)` with `F(x) = target`,
/// for `target` in `(0,1)`, by bisection to within [`INVERT_F_TOL`].
pub fn invert_f<R: Real>(target: R) -> Result<R, StatsError> {
    if !(target > R::zero() && target < R::one()) {
        return Err(StatsError::TargetOutOfRange(lossy(target)));
    }
    let tol = R::from_f64(INVERT_F_TOL).expect("tolerance representable");
    let two = R::from_count(2);
    // F extends continuously with F(0) = 1 > target and F(1) = 0 < target.
    let mut lo = R::zero();
    let mut hi = R::one();
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break; // no representable progress at this width
        }
        let fm = shape_f(mid).expect("mid stays interior");
        if fm > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Light-vertex census: which vertices sit within `epsilon * n * p` of the
/// minimum degree, and how often two of them are adjacent or feed from a
/// common neighbor.
#[derive(Clone, Debug, PartialEq)]
pub struct LightReport {
    pub epsilon: Scalar,
    pub p_reference: Scalar,
    pub in_threshold: Scalar,
    pub out_threshold: Scalar,
    pub in_light: VertexSet,
    pub out_light: VertexSet,
    /// Unordered in-light pairs joined by an arc in either orientation.
    pub adjacent_in_pairs: usize,
    /// Unordered in-light pairs with a common in-neighbor.
    pub shared_in_neighbor_pairs: usize,
    /// Unordered in-light pairs that are adjacent or share an in-neighbor.
    pub in_conflict_pairs: usize,
    pub adjacent_out_pairs: usize,
    /// Unordered out-light pairs with a common out-neighbor.
    pub shared_out_neighbor_pairs: usize,
    pub out_conflict_pairs: usize,
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub fn light_report(d: &Digraph, epsilon: Scalar, p_reference: Scalar) -> Result<LightReport, StatsError> {
    if !(epsilon > 0.0) {
        return Err(StatsError::OutOfDomain(epsilon));
    }
    if !(p_reference > 0.0 && p_reference <= 1.0) {
        return Err(StatsError::OutOfDomain(p_reference));
    }
    let slack = epsilon * d.n() as Scalar * p_reference;
    let in_threshold = d.min_degree(Direction::In) as Scalar + slack;
    let out_threshold = d.min_degree(Direction::Out) as Scalar + slack;
    let light_of = |threshold: Scalar, dir: Direction| {
        VertexSet::from_vertices(
            d.n(),
            (0..d.n()).filter(|&v| (d.degree(v, dir).expect("v < n") as Scalar) <= threshold),
        )
        .expect("filtered vertices are in range")
    };
    let in_light = light_of(in_threshold, Direction::In);
    let out_light = light_of(out_threshold, Direction::Out);

    let mut report = LightReport {
        epsilon,
        p_reference,
        in_threshold,
        out_threshold,
        in_light,
        out_light,
        adjacent_in_pairs: 0,
        shared_in_neighbor_pairs: 0,
        in_conflict_pairs: 0,
        adjacent_out_pairs: 0,
        shared_out_neighbor_pairs: 0,
        out_conflict_pairs: 0,
    };
    let in_members: Vec<usize> = report.in_light.iter().collect();
    for (i, &u) in in_members.iter().enumerate() {
        for &v in &in_members[i + 1..] {
            let adjacent = d.has_arc(u, v) || d.has_arc(v, u);
            let shared = sorted_intersect(d.in_neighbors(u), d.in_neighbors(v));
            report.adjacent_in_pairs += adjacent as usize;
            report.shared_in_neighbor_pairs += shared as usize;
            report.in_conflict_pairs += (adjacent || shared) as usize;
        }
    }
    let out_members: Vec<usize> = report.out_light.iter().collect();
    for (i, &u) in out_members.iter().enumerate() {
        for &v in &out_members[i + 1..] {
            let adjacent = d.has_arc(u, v) || d.has_arc(v, u);
            let shared = sorted_intersect(d.out_neighbors(u), d.out_neighbors(v));
            report.adjacent_out_pairs += adjacent as usize;
            report.shared_out_neighbor_pairs += shared as usize;
            report.out_conflict_pairs += (adjacent || shared) as usize;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    fn cycle3() -> Digraph {
        Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Digraph::build(n, arcs).unwrap()
    }

    #[test]
    fn histogram_examples() {
        let h = DegreeHistogram::from_digraph(&cycle3(), Direction::In);
        assert_eq!(h.counts(), &[0, 3]);
        assert_eq!(h.min_degree(), 1);
        assert_eq!(h.arc_count(), 3);

        let star = Digraph::build(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = DegreeHistogram::from_digraph(&star, Direction::In);
        assert_eq!((h.y(0), h.y(1)), (1, 3));
        assert_eq!(h.min_degree(), 0);
        let h_out = DegreeHistogram::from_digraph(&star, Direction::Out);
        assert_eq!((h_out.y(0), h_out.y(3)), (3, 1));

        let empty = Digraph::build(5, []).unwrap();
        let h = DegreeHistogram::from_digraph(&empty, Direction::In);
        assert_eq!(h.counts(), &[5]);
    }

    #[test]
    fn histogram_mass_equals_n() {
        for n in 1..30 {
            let d = complete(n.min(8)); // keep it quick, vary separate sizes below
            let h = DegreeHistogram::from_digraph(&d, Direction::In);
            assert_eq!(h.counts().iter().sum::<usize>(), d.n());
            let _ = n;
        }
    }

    #[test]
    fn expected_yk_endpoints_and_pin() {
        assert_eq!(expected_yk(7, 0.0, 0).unwrap(), 7.0);
        assert_eq!(expected_yk(7, 0.0, 3).unwrap(), 0.0);
        assert_eq!(expected_yk(6, 1.0, 5).unwrap(), 6.0);
        assert_eq!(expected_yk(6, 1.0, 0).unwrap(), 0.0);

        // pinned high-precision value of 100 * 0.9535^99
        let want = 0.896910360709258711_f64;
        let got = expected_yk(100, 0.0465, 0).unwrap();
        assert!(((got - want) / want).abs() < 1e-9, "got {got}");

        assert!(matches!(
            expected_yk(5, 0.3, 5),
            Err(StatsError::ClassOutOfRange { k: 5, n: 5 })
        ));
        assert!(matches!(
            expected_yk(5, 1.5, 0),
            Err(StatsError::ProbabilityOutOfRange(_))
        ));
    }

    #[test]
    fn expected_yk_ratio_identity() {
        // E[Y_{k-1}] / E[Y_k] = k (1-p) / ((n-k) p); pinned at n=1000, k=2
        let n = 1000;
        let p = (n as f64).ln() / (n as f64 - 1.0);
        let direct = expected_yk(n, p, 1).unwrap() / expected_yk(n, p, 2).unwrap();
        let formula = 2.0 * (1.0 - p) / ((n as f64 - 2.0) * p);
        assert!((direct - formula).abs() < 1e-12);
        assert!((direct - 0.287815756460486691).abs() < 1e-12);
    }

    #[test]
    fn delta_star_examples() {
        let p = 100f64.ln() / 99.0;
        let ds = delta_star(100, p).unwrap();
        assert_eq!(ds, DeltaStar { value: 1, degenerate: false });
        let ey0 = expected_yk(100, p, 0).unwrap();
        let ey1 = expected_yk(100, p, 1).unwrap();
        assert!(ey0 < 1.0 && 1.0 <= ey1, "ey0={ey0} ey1={ey1}");
        assert!((ey0 - 0.895340660521).abs() < 1e-9);

        assert_eq!(delta_star(100, 0.001).unwrap().value, 0); // E[Y_0] ~ 90
        assert_eq!(delta_star(9, 0.0).unwrap(), DeltaStar { value: 0, degenerate: true });
        assert_eq!(delta_star(9, 1.0).unwrap(), DeltaStar { value: 8, degenerate: true });
    }

    #[test]
    fn delta_star_matches_direct_scan_and_is_monotone() {
        for n in [10usize, 50, 200] {
            let mut last = 0;
            for i in 1..20 {
                let p = i as f64 / 20.0;
                let fast = delta_star(n, p).unwrap().value;
                let direct = (0..n)
                    .find(|&k| expected_yk(n, p, k).unwrap() >= 1.0)
                    .expect("expectations sum to n");
                assert_eq!(fast, direct, "n={n} p={p}");
                assert!(fast >= last, "delta_star not monotone at n={n} p={p}");
                last = fast;
            }
        }
    }

    #[test]
    fn shape_f_values() {
        assert_eq!(shape_f(1.0).unwrap(), 0.0);
        assert!((shape_f(1e-9_f64).unwrap() - 1.0).abs() < 1e-7);
        assert!(matches!(shape_f(0.0), Err(StatsError::OutOfDomain(_))));
        assert!(matches!(shape_f(1.1), Err(StatsError::OutOfDomain(_))));
        // strictly decreasing on a grid
        let mut prev = f64::INFINITY;
        for i in 1..100 {
            let v = shape_f(i as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn invert_f_pinned_and_round_trip() {
        let alpha = invert_f(0.5_f64).unwrap();
        assert!((alpha - 0.186682308850837042).abs() < 1e-11, "alpha={alpha}");
        for t in [0.1_f64, 0.25, 0.5, 0.75, 0.9] {
            let x = invert_f(t).unwrap();
            assert!((shape_f(x).unwrap() - t).abs() < 1e-10);
        }
        assert!(matches!(invert_f(0.0), Err(StatsError::TargetOutOfRange(_))));
        assert!(matches!(invert_f(1.0), Err(StatsError::TargetOutOfRange(_))));
    }

    #[test]
    fn light_report_examples() {
        // empty digraph: everyone is light, nobody adjacent, nobody shares
        let empty = Digraph::build(3, []).unwrap();
        let r = light_report(&empty, 0.5, 0.5).unwrap();
        assert_eq!(r.in_light, VertexSet::full(3));
        assert_eq!((r.adjacent_in_pairs, r.shared_in_neighbor_pairs), (0, 0));
        assert_eq!(r.in_conflict_pairs, 0);

        // complete digraph on 4: all light, all pairs adjacent
        let k4 = complete(4);
        let r = light_report(&k4, 0.1, 0.5).unwrap();
        assert_eq!(r.in_light.len(), 4);
        assert_eq!(r.adjacent_in_pairs, 6);
        assert_eq!(r.in_conflict_pairs, 6);

        // directed triangle with epsilon 0.1, p 0.1: threshold 1.03, all light,
        // each of the three pairs adjacent through a cycle arc
        let r = light_report(&cycle3(), 0.1, 0.1).unwrap();
        assert!((r.in_threshold - 1.03).abs() < 1e-12);
        assert_eq!(r.in_light.len(), 3);
        assert_eq!(r.adjacent_in_pairs, 3);
        assert_eq!(r.shared_in_neighbor_pairs, 0);
    }

    #[test]
    fn light_report_rejects_out_of_domain_arguments() {
        let d = cycle3();
        for (eps, p) in [(0.0, 0.5), (-0.1, 0.5), (0.5, 0.0), (0.5, -0.2), (0.5, 1.5)] {
            assert!(
                matches!(light_report(&d, eps, p), Err(StatsError::OutOfDomain(_))),
                "accepted eps={eps} p={p}"
            );
        }
        assert!(light_report(&d, 0.5, 1.0).is_ok());
    }

    #[test]
    fn shared_neighbor_detection() {
        // 2 -> 0 and 2 -> 1: slack 4 * 3 * 0.1 = 1.2 admits every vertex as
        // in-light, but only the pair {0,1} shares the in-neighbor 2.
        let d = Digraph::build(3, [(2, 0), (2, 1)]).unwrap();
        let r = light_report(&d, 4.0, 0.1).unwrap();
        assert_eq!(r.in_light, VertexSet::full(3));
        assert_eq!(r.adjacent_in_pairs, 2); // {0,2} and {1,2}
        assert_eq!(r.shared_in_neighbor_pairs, 1); // {0,1}
        assert_eq!(r.in_conflict_pairs, 3);

        // narrow slack: in-degrees 1, 1, 2 give threshold ~1.03, so only the
        // non-adjacent pair {0,1} is in-light, and it shares in-neighbor 2
        let d = Digraph::build(3, [(2, 0), (2, 1), (0, 2), (1, 2)]).unwrap();
        let r = light_report(&d, 0.1, 0.1).unwrap();
        assert_eq!(r.in_light, VertexSet::from_vertices(3, [0, 1]).unwrap());
        assert_eq!(r.adjacent_in_pairs, 0);
        assert_eq!(r.shared_in_neighbor_pairs, 1);
        assert_eq!(r.in_conflict_pairs, 1);
    }
}
