//! Exact packing number via Frank's min-max characterization.
//!
//! The number of pairwise arc-disjoint spanning arborescences of a digraph
//! `D` (roots unrestricted, repeats allowed) equals
//!
//! ```text
//!     tau(D) = min over families P of >= 2 disjoint nonempty vertex sets:
//!              floor( sum_{U in P} din(U) / (|P| - 1) )
//! ```
//!
//! where `din(U)` counts arcs entering `U` from outside. This module
//! enumerates every such family exactly — feasible up to
//! [`DEFAULT_VERTEX_LIMIT`] vertices — and reports the minimizing family as
//! a certificate. It is deliberately independent of the constructive packer
//! in [`crate::pack`] so the two can cross-check each other.

use crate::digraph::{Digraph, DigraphError, Direction, VertexSet};
use thiserror::Error;

/// Largest `n` accepted by the exact enumeration by default. The family
/// count grows like the Bell numbers (27.6 million at `n = 12`).
pub const DEFAULT_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum FrankError {
    #[error("exact subpartition enumeration limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },
}

/// A family of pairwise disjoint nonempty vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subpartition {
    universe: usize,
    parts: Vec<VertexSet>,
}

impl Subpartition {
    /// Validates that all parts are nonempty, live in the same universe,
    /// and are pairwise disjoint.
    pub fn new(universe: usize, parts: Vec<VertexSet>) -> Result<Self, DigraphError> {
        let mut seen = VertexSet::empty(universe);
        for part in &parts {
            if part.universe() != universe {
                return Err(DigraphError::UniverseMismatch {
                    universe: part.universe(),
                    n: universe,
                });
            }
            if part.is_empty() {
                return Err(DigraphError::EmptySet);
            }
            if let Some(v) = seen.first_common(part) {
                return Err(DigraphError::Overlap { v });
            }
            for v in part.iter() {
                seen.insert(v);
            }
        }
        Ok(Subpartition { universe, parts })
    }

    fn from_masks(universe: usize, masks: &[u64]) -> Self {
        let parts = masks.iter().map(|&m| VertexSet::from_mask(universe, m)).collect();
        Subpartition { universe, parts }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum_{U in P} din(U)` on the given digraph.
    pub fn in_degree_sum(&self, d: &Digraph) -> Result<usize, DigraphError> {
        let mut sum = 0;
        for part in &self.parts {
            sum += d.cut(part, Direction::In)?;
        }
        Ok(sum)
    }

    /// `floor(sum / (len - 1))`; `None` for families of fewer than 2 parts.
    pub fn value(&self, d: &Digraph) -> Result<Option<usize>, DigraphError> {
        if self.parts.len() < 2 {
            return Ok(None);
        }
        Ok(Some(self.in_degree_sum(d)? / (self.parts.len() - 1)))
    }
}

impl std::fmt::Display for Subpartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// Enumerates every family of >= 2 disjoint nonempty subsets of
/// `{0, .., n-1}`, each family exactly once.
///
/// Internally walks restricted growth strings over `n + 1` elements: a
/// sentinel element in block 0 makes "uncovered" a valid assignment, so the
/// partitions of the extended ground set are exactly the subpartitions of
/// the original one. Families are produced with parts ordered by their
/// minimum vertex.
pub struct SubpartitionIter {
    n: usize,
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    exhausted: bool,
}

impl SubpartitionIter {
    pub fn new(n: usize) -> Self {
        SubpartitionIter {
            n,
            rgs: vec![0; n + 1],
            maxes: vec![0; n + 1],
            exhausted: false,
        }
    }

    fn family(&self) -> Subpartition {
        let mut masks = vec![0u64; self.maxes[self.n]];
        for i in 1..=self.n {
            if self.rgs[i] > 0 {
                masks[self.rgs[i] - 1] |= 1u64 << (i - 1);
            }
        }
        Subpartition::from_masks(self.n, &masks)
    }

    fn advance(&mut self) {
        for i in (1..=self.n).rev() {
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..=self.n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return;
            }
        }
        self.exhausted = true;
    }
}

impl Iterator for SubpartitionIter {
    type Item = Subpartition;

    fn next(&mut self) -> Option<Subpartition> {
        while !self.exhausted {
            let item = (self.maxes[self.n] >= 2).then(|| self.family());
            self.advance();
            if item.is_some() {
                return item;
            }
        }
        None
    }
}

/// Outcome of the exact minimization.
#[derive(Clone, Debug, PartialEq)]
pub enum TauCertificate {
    /// A single vertex admits no two-part family; the packing number is
    /// unbounded (every trivial arborescence is arc-free).
    Unbounded,
    Bounded {
        tau: usize,
        /// A family attaining the minimum.
        tight: Subpartition,
        /// Its in-degree sum, so `tau = tight_sum / (parts - 1)` rounded down.
        tight_sum: usize,
    },
}

impl TauCertificate {
    /// The packing number, if finite.
    pub fn tau(&self) -> Option<usize> {
        match self {
            TauCertificate::Unbounded => None,
            TauCertificate::Bounded { tau, .. } => Some(*tau),
        }
    }
}

/// A family whose in-degree sum falls short of `k * (parts - 1)`, proving
/// that `k` arc-disjoint spanning arborescences cannot exist.
#[derive(Clone, Debug, PartialEq)]
pub struct FrankWitness {
    pub family: Subpartition,
    pub sum: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FrankVerdict {
    Holds,
    Violated(FrankWitness),
}

impl FrankVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FrankVerdict::Holds)
    }
}

/// Depth-first minimization over canonical family constructions. Vertices
/// are assigned in order to: a fresh part, an existing part, or no part.
/// The running `sum_{U} din(U)` updates in O(1) per assignment with bit
/// masks, and branches are cut with an exact lower bound: completing the
/// family can lower the sum by at most the total out-degree of the
/// unassigned vertices, while the divisor can reach at most
/// `parts + remaining - 1`.
struct MinFamilySearch {
    n: usize,
    din: Vec<i64>,
    in_mask: Vec<u64>,
    out_mask: Vec<u64>,
    /// `suffix_out[v]` = total out-degree of vertices `v..n`.
    suffix_out: Vec<i64>,
    parts: Vec<u64>,
    total: i64,
    best: i64,
    best_parts: Vec<u64>,
    best_sum: i64,
    /// When set, the search may stop as soon as any family value drops
    /// below this threshold (decision mode); `best` is then an upper bound
    /// on the true minimum rather than the minimum itself.
    stop_below: Option<i64>,
    stopped: bool,
}

impl MinFamilySearch {
    fn new(d: &Digraph, stop_below: Option<i64>) -> Self {
        let n = d.n();
        debug_assert!(n <= 64);
        let mut in_mask = vec![0u64; n];
        let mut out_mask = vec![0u64; n];
        for &(u, v) in d.arcs() {
            out_mask[u] |= 1 << v;
            in_mask[v] |= 1 << u;
        }
        let din: Vec<i64> = (0..n).map(|v| in_mask[v].count_ones() as i64).collect();
        let mut suffix_out = vec![0i64; n + 1];
        for v in (0..n).rev() {
            suffix_out[v] = suffix_out[v + 1] + out_mask[v].count_ones() as i64;
        }
        MinFamilySearch {
            n,
            din,
            in_mask,
            out_mask,
            suffix_out,
            parts: Vec::new(),
            total: 0,
            best: i64::MAX,
            best_parts: Vec::new(),
            best_sum: 0,
            stop_below,
            stopped: false,
        }
    }

    fn go(&mut self, v: usize) {
        if self.stopped {
            return;
        }
        if v == self.n {
            let p = self.parts.len() as i64;
            if p >= 2 {
                debug_assert!(self.total >= 0);
                let value = self.total / (p - 1);
                if value < self.best {
                    self.best = value;
                    self.best_parts.clone_from(&self.parts);
                    self.best_sum = self.total;
                    if matches!(self.stop_below, Some(t) if self.best < t) {
                        self.stopped = true;
                    }
                }
            }
            return;
        }
        let p = self.parts.len();
        let r = self.n - v;
        if p + r < 2 {
            return;
        }
        let bound = match self.stop_below {
            Some(t) => self.best.min(t),
            None => self.best,
        };
        if bound != i64::MAX {
            let t_low = self.total - self.suffix_out[v];
            if t_low >= bound * (p + r - 1) as i64 {
                return;
            }
        }

        // open a fresh part {v}
        self.parts.push(1u64 << v);
        self.total += self.din[v];
        self.go(v + 1);
        self.total -= self.din[v];
        self.parts.pop();

        // join each existing part
        for j in 0..p {
            let b = self.parts[j];
            let delta = self.din[v]
                - (self.in_mask[v] & b).count_ones() as i64
                - (self.out_mask[v] & b).count_ones() as i64;
            self.parts[j] |= 1 << v;
            self.total += delta;
            self.go(v + 1);
            self.total -= delta;
            self.parts[j] = b;
        }

        // leave v uncovered
        self.go(v + 1);
    }
}

fn check_size(d: &Digraph, limit: usize) -> Result<(), FrankError> {
    let limit = limit.min(64);
    if d.n() > limit {
        return Err(FrankError::TooLarge { n: d.n(), limit });
    }
    Ok(())
}

/// Exact packing number with a tight-family certificate, for digraphs of at
/// most `limit` vertices.
pub fn tau_exact_with_limit(d: &Digraph, limit: usize) -> Result<TauCertificate, FrankError> {
    check_size(d, limit)?;
    if d.n() == 1 {
        return Ok(TauCertificate::Unbounded);
    }
    let mut search = MinFamilySearch::new(d, None);
    search.go(0);
    debug_assert_ne!(search.best, i64::MAX, "the all-singleton family always exists");
    Ok(TauCertificate::Bounded {
        tau: search.best as usize,
        tight: Subpartition::from_masks(d.n(), &search.best_parts),
        tight_sum: search.best_sum as usize,
    })
}

/// [`tau_exact_with_limit`] at the default size limit.
pub fn tau_exact(d: &Digraph) -> Result<TauCertificate, FrankError> {
    tau_exact_with_limit(d, DEFAULT_VERTEX_LIMIT)
}

/// Decides whether every family satisfies `sum din(U) >= k * (parts - 1)`
/// — equivalently, whether `k` arc-disjoint spanning arborescences exist.
/// On failure returns a violating family as witness. Runs the same search
/// as [`tau_exact`] but stops at the first witness.
pub fn frank_holds(d: &Digraph, k: usize) -> Result<FrankVerdict, FrankError> {
    check_size(d, DEFAULT_VERTEX_LIMIT)?;
    if d.n() == 1 || k == 0 {
        return Ok(FrankVerdict::Holds);
    }
    let mut search = MinFamilySearch::new(d, Some(k as i64));
    search.go(0);
    if search.best < k as i64 {
        Ok(FrankVerdict::Violated(FrankWitness {
            family: Subpartition::from_masks(d.n(), &search.best_parts),
            sum: search.best_sum as usize,
        }))
    } else {
        Ok(FrankVerdict::Holds)
    }
}
