//! Constructive packing of arc-disjoint spanning arborescences.
//!
//! The classical route (Edmonds' branching theorem, via Lovász's proof):
//! a root multiset `m` with `sum m = k` admits `k` arc-disjoint spanning
//! arborescences, one rooted per unit of `m`, exactly when every nonempty
//! vertex set `S` satisfies `din(S) + m(S) >= k` — checked here as `n`
//! max-flow problems from a super-source. Trees are then grown one arc at
//! a time, each extension guarded by a flow-based safety test, so success
//! is certified by the packing itself and failure of one multiset by a
//! deficient cut.
//!
//! Root multisets are searched greedily with seeded restarts, falling back
//! to an exhaustive sweep when the assignment space is small; all of it is
//! deterministic for a fixed [`EffortBudget`].

use crate::digraph::{validate_packing, Arborescence, Digraph, Direction, Packing, VertexSet};
use crate::lambda::{lambda_of, LambdaViolation};
use crate::random::Seed;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `m[v]` = number of arborescences rooted at `v`.
pub type RootMultiplicity = Vec<usize>;

/// Per-vertex lower bound forced on every viable root multiset: a vertex of
/// in-degree below `k` must host `k - din(v)` roots, because each
/// arborescence not rooted at `v` consumes one of its in-arcs.
pub fn forced_roots(d: &Digraph, k: usize) -> RootMultiplicity {
    (0..d.n())
        .map(|v| k.saturating_sub(d.in_neighbors(v).len()))
        .collect()
}

/// A set with `din(S) + m(S) < k`, certifying that the multiset `m` cannot
/// support `k` arborescences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitWitness {
    pub set: VertexSet,
    pub in_degree: usize,
    pub root_mass: usize,
}

/// One root multiset together with the cut that refutes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibleExample {
    pub roots: RootMultiplicity,
    pub witness: DeficitWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfeasibleProof {
    /// Forced roots alone already need more than `k` slots; equivalently the
    /// degree-profile statistic sits below `k`, witnessed by its failing
    /// level.
    DegreeProfile { violation: LambdaViolation },
    /// Every root multiset dominating the forced roots was checked and each
    /// fails the cut condition; one refuted multiset is kept as an example.
    ExhaustedAssignments { assignments_tried: u64, example: InfeasibleExample },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnknownReason {
    /// Greedy assignment failed and the exhaustive sweep would exceed the
    /// budget.
    AssignmentSpaceTooLarge { assignments: u128, limit: u64 },
    /// A tree ran out of safe frontier arcs mid-growth. Not expected for a
    /// feasible multiset; kept as a non-panicking failure mode.
    GrowthStuck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackOutcome {
    Packed(Packing),
    Infeasible(InfeasibleProof),
    Unknown(UnknownReason),
}

impl PackOutcome {
    pub fn is_packed(&self) -> bool {
        matches!(self, PackOutcome::Packed(_))
    }
}

/// Deterministic search effort knobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EffortBudget {
    /// Reshuffled greedy assignment attempts after the canonical first one.
    pub restarts: usize,
    /// Run the exhaustive multiset sweep only when the number of candidate
    /// assignments is at most this.
    pub exhaustive_limit: u64,
    /// Seed for the restart shuffles.
    pub seed: Seed,
}

impl Default for EffortBudget {
    fn default() -> Self {
        EffortBudget { restarts: 8, exhaustive_limit: 100_000, seed: 0 }
    }
}

// ---------------------------------------------------------------------------
// Flow network: digraph arcs at unit capacity, a super-source `s` with a
// supply arc per vertex, and per-vertex override arcs used by the safety
// test. Queries restore residuals via an undo log, so the network state
// between queries is exactly (alive arcs, supplies, overrides).
// ---------------------------------------------------------------------------

struct FlowNet {
    source: usize,
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<i64>,
    /// Edge id of digraph arc `a` is `2a`; supply arc of `v` is
    /// `super_base + 2v`; override arc of `v` is `extra_base + 2v`.
    super_base: usize,
    extra_base: usize,
    undo: Vec<(u32, i64)>,
    seen: Vec<u32>,
    stamp: u32,
    prev: Vec<u32>,
    queue: Vec<usize>,
}

impl FlowNet {
    fn new(d: &Digraph) -> FlowNet {
        let n = d.n();
        let source = n;
        let mut net = FlowNet {
            source,
            adj: vec![Vec::new(); n + 1],
            to: Vec::new(),
            cap: Vec::new(),
            super_base: 0,
            extra_base: 0,
            undo: Vec::new(),
            seen: vec![0; n + 1],
            stamp: 0,
            prev: vec![0; n + 1],
            queue: Vec::with_capacity(n + 1),
        };
        for &(u, v) in d.arcs() {
            net.add_edge(u, v, 1);
        }
        net.super_base = net.to.len();
        for v in 0..n {
            net.add_edge(source, v, 0);
        }
        net.extra_base = net.to.len();
        for v in 0..n {
            net.add_edge(source, v, 0);
        }
        net
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        let id = self.to.len() as u32;
        self.adj[u].push(id);
        self.to.push(v as u32);
        self.cap.push(c);
        self.adj[v].push(id + 1);
        self.to.push(u as u32);
        self.cap.push(0);
    }

    /// Revive all digraph arcs and install the given supplies; overrides
    /// drop to zero.
    fn reset(&mut self, supplies: &[usize]) {
        debug_assert!(self.undo.is_empty());
        for e in (0..self.super_base).step_by(2) {
            self.cap[e] = 1;
            self.cap[e + 1] = 0;
        }
        for (v, &s) in supplies.iter().enumerate() {
            let e = self.super_base + 2 * v;
            self.cap[e] = s as i64;
            self.cap[e + 1] = 0;
            let x = self.extra_base + 2 * v;
            self.cap[x] = 0;
            self.cap[x + 1] = 0;
        }
    }

    fn kill_arc(&mut self, a: usize) {
        debug_assert_eq!(self.cap[2 * a + 1], 0);
        self.cap[2 * a] = 0;
    }

    fn arc_alive(&self, a: usize) -> bool {
        self.cap[2 * a] > 0
    }

    fn set_supply(&mut self, v: usize, s: usize) {
        self.cap[self.super_base + 2 * v] = s as i64;
    }

    fn bump_supply(&mut self, v: usize, delta: i64) {
        let e = self.super_base + 2 * v;
        self.cap[e] += delta;
        debug_assert!(self.cap[e] >= 0);
    }

    fn set_override(&mut self, v: usize, c: i64) {
        self.cap[self.extra_base + 2 * v] = c;
    }

    fn bfs(&mut self, t: usize) -> bool {
        self.stamp += 1;
        self.queue.clear();
        self.queue.push(self.source);
        self.seen[self.source] = self.stamp;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for i in 0..self.adj[x].len() {
                let e = self.adj[x][i] as usize;
                if self.cap[e] <= 0 {
                    continue;
                }
                let y = self.to[e] as usize;
                if self.seen[y] == self.stamp {
                    continue;
                }
                self.seen[y] = self.stamp;
                self.prev[y] = e as u32;
                if y == t {
                    return true;
                }
                self.queue.push(y);
            }
        }
        false
    }

    /// Shortest-augmenting-path flow from the super-source to `t`, stopping
    /// once `need` units are pushed. Leaves residuals dirty; pair with
    /// [`FlowNet::rollback`].
    fn run_flow(&mut self, t: usize, need: i64) -> i64 {
        let mut flow = 0;
        while flow < need && self.bfs(t) {
            let mut b = need - flow;
            let mut x = t;
            while x != self.source {
                let e = self.prev[x] as usize;
                b = b.min(self.cap[e]);
                x = self.to[e ^ 1] as usize;
            }
            let mut x = t;
            while x != self.source {
                let e = self.prev[x] as usize;
                self.cap[e] -= b;
                self.cap[e ^ 1] += b;
                self.undo.push((e as u32, b));
                x = self.to[e ^ 1] as usize;
            }
            flow += b;
        }
        flow
    }

    fn rollback(&mut self) {
        for (e, b) in self.undo.drain(..) {
            self.cap[e as usize] += b;
            self.cap[(e ^ 1) as usize] -= b;
        }
    }

    fn maxflow_capped(&mut self, t: usize, need: i64) -> i64 {
        let f = self.run_flow(t, need);
        self.rollback();
        f
    }

    /// When fewer than `need` units reach `t`, returns the sink side of a
    /// minimum cut (the vertices unreachable from the source in the final
    /// residual network); `None` when the flow target is met.
    fn deficit_cut(&mut self, t: usize, need: i64, n: usize) -> Option<Vec<usize>> {
        let flow = self.run_flow(t, need);
        let out = if flow < need {
            Some((0..n).filter(|&v| self.seen[v] != self.stamp).collect())
        } else {
            None
        };
        self.rollback();
        out
    }
}

// ---------------------------------------------------------------------------
// Feasibility of a fixed root multiset
// ---------------------------------------------------------------------------

fn witness_from_cut(d: &Digraph, m: &[usize], sink_side: Vec<usize>, k: usize) -> DeficitWitness {
    let set = VertexSet::from_vertices(d.n(), sink_side).expect("cut vertices in range");
    let in_degree = d.cut(&set, Direction::In).expect("nonempty cut side");
    let root_mass = set.iter().map(|v| m[v]).sum();
    debug_assert!(in_degree + root_mass < k);
    DeficitWitness { set, in_degree, root_mass }
}

fn feasibility(net: &mut FlowNet, d: &Digraph, k: usize, m: &[usize]) -> Result<(), DeficitWitness> {
    for t in 0..d.n() {
        if let Some(side) = net.deficit_cut(t, k as i64, d.n()) {
            return Err(witness_from_cut(d, m, side, k));
        }
    }
    Ok(())
}

/// Checks Edmonds' condition for the multiset `roots` (`m[v]` arborescences
/// rooted at `v`, `k = sum m`): every nonempty `S` needs
/// `din(S) + m(S) >= k`. On failure returns a deficient set.
pub fn edmonds_feasible(d: &Digraph, roots: &[usize]) -> Result<(), DeficitWitness> {
    assert_eq!(roots.len(), d.n(), "one multiplicity per vertex");
    let k: usize = roots.iter().sum();
    let mut net = FlowNet::new(d);
    net.reset(roots);
    feasibility(&mut net, d, k, roots)
}

// ---------------------------------------------------------------------------
// Greedy root assignment
// ---------------------------------------------------------------------------

/// Distributes the free (unforced) root slots one at a time, each to the
/// vertex that maximizes the resulting minimum `s -> t` flow, ties broken
/// by candidate order. One supply unit raises any single flow value by at
/// most one, so the maximizers are exactly the placements that lift every
/// currently-minimal flow — or, when no placement does, all candidates tie
/// and the slot goes to the first in order.
fn try_assign(
    net: &mut FlowNet,
    d: &Digraph,
    k: usize,
    forced: &[usize],
    order: &[usize],
) -> Option<RootMultiplicity> {
    let n = d.n();
    let mut m = forced.to_vec();
    let mut free = k - forced.iter().sum::<usize>();
    net.reset(&m);
    // Cached scores may understate sinks that grew as a side effect of a
    // later placement, but the minimum always keeps an exact witness: every
    // minimal sink is recomputed right after each placement.
    let mut scores: Vec<i64> = (0..n).map(|t| net.maxflow_capped(t, k as i64)).collect();
    loop {
        let cur = *scores.iter().min().expect("n >= 1");
        if cur >= k as i64 {
            if free > 0 {
                // every flow already meets the target, so all further
                // placements tie; they all go to the first candidate
                m[order[0]] += free;
            }
            return Some(m);
        }
        if free == 0 {
            return None;
        }
        let tight: Vec<usize> = (0..n).filter(|&t| scores[t] == cur).collect();
        let mut chosen = None;
        for &v in order {
            net.bump_supply(v, 1);
            if tight.iter().all(|&t| net.maxflow_capped(t, cur + 1) > cur) {
                chosen = Some(v);
                break;
            }
            net.bump_supply(v, -1);
        }
        let v = chosen.unwrap_or_else(|| {
            net.bump_supply(order[0], 1);
            order[0]
        });
        m[v] += 1;
        free -= 1;
        for &t in &tight {
            scores[t] = net.maxflow_capped(t, k as i64);
        }
    }
}

// ---------------------------------------------------------------------------
// Tree growth
// ---------------------------------------------------------------------------

/// Grows `k` arborescences from the feasible multiset `m`.
///
/// Invariant: with `k_rem` trees still incomplete (counting the one being
/// grown, vertex set `W`), every nonempty `S` disjoint from `W` keeps
/// `din_alive(S) + m'(S) >= k_rem` and every `S` meeting `W` keeps
/// `>= k_rem - 1`. A frontier arc `(u, v)` is safe exactly when the flow
/// from the super-source to `v` reaches `k_rem` after granting `u` an
/// override of capacity `k_rem`: the only sets a step could break are those
/// containing `v`, avoiding `u`, meeting `W`, and sitting at exactly
/// `k_rem - 1`, and they are precisely the cuts this flow sees below
/// `k_rem`.
fn grow(net: &mut FlowNet, d: &Digraph, k: usize, m: &[usize]) -> Result<Packing, UnknownReason> {
    let n = d.n();
    net.reset(m);
    let mut supply = m.to_vec();
    let mut packing: Packing = Vec::with_capacity(k);
    for done in 0..k {
        let k_rem = (k - done) as i64;
        let root = (0..n).find(|&v| supply[v] > 0).expect("supplies sum to k - done");
        supply[root] -= 1;
        net.set_supply(root, supply[root]);

        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        let mut grown = vec![root];
        while grown.len() < n {
            let mut chosen = None;
            'scan: for i in 0..grown.len() {
                let u = grown[i];
                for &v in d.out_neighbors(u) {
                    if in_tree[v] {
                        continue;
                    }
                    let a = d.arc_index(u, v).expect("adjacency lists arcs of d");
                    if !net.arc_alive(a) {
                        continue;
                    }
                    // Last tree: every set meeting W only needs >= 0, so any
                    // alive frontier arc is safe.
                    let safe = if k_rem == 1 {
                        true
                    } else {
                        net.set_override(u, k_rem);
                        let flow = net.maxflow_capped(v, k_rem);
                        net.set_override(u, 0);
                        flow >= k_rem
                    };
                    if safe {
                        chosen = Some((u, v, a));
                        break 'scan;
                    }
                }
            }
            let Some((u, v, a)) = chosen else {
                return Err(UnknownReason::GrowthStuck);
            };
            net.kill_arc(a);
            parent[v] = Some(u);
            in_tree[v] = true;
            grown.push(v);
        }
        let tree = Arborescence::new(root, parent);
        debug_assert!(crate::digraph::validate_arborescence(d, &tree).is_ok());
        packing.push(tree);
    }
    debug_assert!(validate_packing(d, &packing).is_ok());
    Ok(packing)
}

// ---------------------------------------------------------------------------
// Exhaustive multiset sweep
// ---------------------------------------------------------------------------

/// Number of ways to distribute `free` indistinct slots over `n` vertices,
/// saturating on overflow.
fn composition_count(free: usize, n: usize) -> u128 {
    // C(free + n - 1, n - 1)
    let mut acc: u128 = 1;
    for i in 0..free {
        acc = acc.saturating_mul((n as u128).saturating_add(i as u128));
        acc /= i as u128 + 1;
        if acc > u128::MAX / 2 {
            return u128::MAX;
        }
    }
    acc
}

/// Advances `extra` to the next weak composition (same total), row by row
/// from `[total, 0, .., 0]` to `[0, .., 0, total]`; returns false after the
/// last one.
fn next_composition(extra: &mut [usize]) -> bool {
    let n = extra.len();
    let Some(i) = (0..n - 1).rev().find(|&i| extra[i] > 0) else {
        return false;
    };
    let moved: usize = extra[i + 1..].iter().sum::<usize>() + 1;
    extra[i] -= 1;
    for e in extra[i + 1..].iter_mut() {
        *e = 0;
    }
    extra[i + 1] = moved;
    true
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

/// Attempts to construct `k` arc-disjoint spanning arborescences.
///
/// Outcomes: a validated packing; a proof that none exists (degree-profile
/// violation, or an exhausted assignment sweep); or `Unknown` when the
/// budget runs out first.
pub fn pack(d: &Digraph, k: usize, budget: &EffortBudget) -> PackOutcome {
    let n = d.n();
    if k == 0 {
        return PackOutcome::Packed(Vec::new());
    }
    let forced = forced_roots(d, k);
    let forced_total: usize = forced.iter().sum();
    if forced_total > k {
        let r = lambda_of(d);
        debug_assert!(r.value < k);
        let violation = r.violation.expect("profile below k has a failing level");
        return PackOutcome::Infeasible(InfeasibleProof::DegreeProfile { violation });
    }
    let free = k - forced_total;

    let mut net = FlowNet::new(d);
    let mut order: Vec<usize> = (0..n).collect();
    for attempt in 0..=budget.restarts {
        if attempt > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(attempt as u64));
            order.shuffle(&mut rng);
        }
        if let Some(m) = try_assign(&mut net, d, k, &forced, &order) {
            return match grow(&mut net, d, k, &m) {
                Ok(p) => PackOutcome::Packed(p),
                Err(reason) => PackOutcome::Unknown(reason),
            };
        }
    }

    let assignments = composition_count(free, n);
    if assignments > budget.exhaustive_limit as u128 {
        return PackOutcome::Unknown(UnknownReason::AssignmentSpaceTooLarge {
            assignments,
            limit: budget.exhaustive_limit,
        });
    }
    let mut extra = vec![0usize; n];
    extra[0] = free;
    let mut tried = 0u64;
    let mut example: Option<InfeasibleExample> = None;
    loop {
        let m: RootMultiplicity = forced.iter().zip(&extra).map(|(&f, &e)| f + e).collect();
        tried += 1;
        net.reset(&m);
        match feasibility(&mut net, d, k, &m) {
            Ok(()) => {
                return match grow(&mut net, d, k, &m) {
                    Ok(p) => PackOutcome::Packed(p),
                    Err(reason) => PackOutcome::Unknown(reason),
                };
            }
            Err(witness) => {
                if example.is_none() {
                    example = Some(InfeasibleExample { roots: m, witness });
                }
            }
        }
        if !next_composition(&mut extra) {
            break;
        }
    }
    PackOutcome::Infeasible(InfeasibleProof::ExhaustedAssignments {
        assignments_tried: tried,
        example: example.expect("at least one assignment was refuted"),
    })
}

/// Result of the descent from the degree-profile cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPack {
    /// Largest `k` for which a packing was constructed.
    pub k: usize,
    pub packing: Packing,
    /// Levels tried above `k`, in descending order, with their outcomes.
    pub failed_levels: Vec<(usize, PackOutcome)>,
    /// The profile cap the descent started from.
    pub lambda_cap: usize,
}

impl MaxPack {
    /// Whether `k` is provably the packing number: it either meets the
    /// profile cap, or the level right above it carries a refutation.
    /// `Unknown` one level up leaves `k` as a lower bound only.
    pub fn certified(&self) -> bool {
        self.k == self.lambda_cap
            || matches!(
                self.failed_levels.last(),
                Some(&(_, PackOutcome::Infeasible(_)))
            )
    }
}

/// Packs as many arborescences as possible, trying `k` downward from the
/// degree-profile statistic (an upper bound on the packing number). For a
/// single vertex the cap is the degenerate 0 even though any number of
/// trivial arborescences would fit.
pub fn max_pack(d: &Digraph, budget: &EffortBudget) -> MaxPack {
    let lambda_cap = lambda_of(d).value;
    let mut failed_levels = Vec::new();
    for k in (0..=lambda_cap).rev() {
        match pack(d, k, budget) {
            PackOutcome::Packed(packing) => {
                return MaxPack { k, packing, failed_levels, lambda_cap };
            }
            other => failed_levels.push((k, other)),
        }
    }
    unreachable!("k = 0 always packs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::validate_packing;
    use crate::frank::{tau_exact, TauCertificate};
    use crate::random::{sample_with, trial_rng};

    fn complete(n: usize) -> Digraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Digraph::build(n, arcs).unwrap()
    }

    fn budget() -> EffortBudget {
        EffortBudget::default()
    }

    #[test]
    fn forced_roots_examples() {
        let star = Digraph::build(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(forced_roots(&star, 2), vec![2, 1, 1, 1]);
        assert_eq!(forced_roots(&complete(3), 2), vec![0, 0, 0]);
    }

    #[test]
    fn feasibility_examples() {
        // complete digraphs, one root per vertex: every cut is rich
        assert_eq!(edmonds_feasible(&complete(3), &[1, 1, 1]), Ok(()));
        assert_eq!(edmonds_feasible(&complete(4), &[1, 1, 1, 1]), Ok(()));
        // all three roots on one vertex: only two arcs enter {1,2}
        let err = edmonds_feasible(&complete(3), &[3, 0, 0]).unwrap_err();
        assert_eq!(err.set.iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!((err.in_degree, err.root_mass), (2, 0));
        // a 2-cycle cannot carry two trees rooted on the same side
        let c2 = Digraph::build(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(edmonds_feasible(&c2, &[1, 1]), Ok(()));
        let err = edmonds_feasible(&c2, &[2, 0]).unwrap_err();
        assert_eq!(err.set.iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!((err.in_degree, err.root_mass), (1, 0));
    }

    #[test]
    fn packs_complete_digraph_fully() {
        let k3 = complete(3);
        match pack(&k3, 3, &budget()) {
            PackOutcome::Packed(p) => {
                assert_eq!(p.len(), 3);
                assert!(validate_packing(&k3, &p).is_ok());
                // all 6 arcs consumed
                let used: usize = p.iter().map(|t| t.arc_count()).sum();
                assert_eq!(used, 6);
            }
            other => panic!("expected a packing, got {other:?}"),
        }
        assert!(!pack(&k3, 4, &budget()).is_packed());
    }

    #[test]
    fn infeasibility_proofs() {
        // out-star at k=2: vertex 0 needs 2 roots and each leaf needs 1
        let star = Digraph::build(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        match pack(&star, 2, &budget()) {
            PackOutcome::Infeasible(InfeasibleProof::DegreeProfile { violation }) => {
                assert!(violation.lhs > violation.ell);
                assert!(violation.ell <= 2);
            }
            other => panic!("expected a degree-profile proof, got {other:?}"),
        }

        // two disjoint 2-cycles: profile allows k=1 but no single root
        // reaches both halves
        let d = Digraph::build(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        match pack(&d, 1, &budget()) {
            PackOutcome::Infeasible(InfeasibleProof::ExhaustedAssignments {
                assignments_tried,
                example,
            }) => {
                assert_eq!(assignments_tried, 4); // one free slot, four vertices
                let w = &example.witness;
                assert!(w.in_degree + w.root_mass < 1);
                assert!(!w.set.is_empty());
            }
            other => panic!("expected an exhausted sweep, got {other:?}"),
        }
    }

    #[test]
    fn single_vertex_and_k_zero() {
        let k1 = Digraph::build(1, []).unwrap();
        match pack(&k1, 5, &budget()) {
            PackOutcome::Packed(p) => {
                assert_eq!(p.len(), 5);
                assert!(p.iter().all(|t| t.arc_count() == 0));
            }
            other => panic!("trivial trees expected, got {other:?}"),
        }
        assert_eq!(pack(&complete(3), 0, &budget()), PackOutcome::Packed(Vec::new()));
    }

    #[test]
    fn max_pack_examples() {
        let k3 = complete(3);
        let r = max_pack(&k3, &budget());
        assert_eq!((r.k, r.lambda_cap), (3, 3));
        assert!(r.failed_levels.is_empty());
        assert!(r.certified());

        let d = Digraph::build(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        let r = max_pack(&d, &budget());
        assert_eq!(r.k, 0);
        assert_eq!(r.failed_levels.len(), r.lambda_cap);
        assert!(matches!(
            r.failed_levels.last(),
            Some(&(1, PackOutcome::Infeasible(_)))
        ));
        assert!(r.certified());

        let empty = Digraph::build(2, []).unwrap();
        let r = max_pack(&empty, &budget());
        assert_eq!((r.k, r.lambda_cap), (0, 0));
        assert!(r.certified());
    }

    #[test]
    fn packs_a_logarithmic_density_sample_to_its_cap() {
        let n = 64;
        let p = 2.0 * (n as f64).ln() / (n as f64 - 1.0);
        let d = crate::random::sample(n, p, 7).unwrap();
        let lam = lambda_of(&d).value;
        assert!(lam >= 2, "sample unexpectedly sparse: lambda = {lam}");
        let r = max_pack(&d, &budget());
        assert_eq!(r.k, lam, "packing should reach the profile cap here");
        assert!(validate_packing(&d, &r.packing).is_ok());
    }

    /// The packer and the exact enumeration must agree on random instances:
    /// `max_pack` reaches exactly the packing number whenever its descent
    /// ends in a proof (which it always should at these sizes).
    #[test]
    fn agrees_with_exact_enumeration_on_samples() {
        for t in 0..60u64 {
            let n = 2 + (t % 7) as usize; // 2..=8
            let p = [0.1, 0.3, 0.5, 0.8][t as usize % 4];
            let d = sample_with(n, p, &mut trial_rng(0xC0FFEE, n, t)).unwrap();
            let tau = match tau_exact(&d).unwrap() {
                TauCertificate::Bounded { tau, .. } => tau,
                TauCertificate::Unbounded => unreachable!("n >= 2"),
            };
            let r = max_pack(&d, &budget());
            assert_eq!(r.k, tau, "n={n} t={t} arcs={:?}", d.arcs());
            assert!(validate_packing(&d, &r.packing).is_ok());
            assert!(r.certified(), "descent should certify at these sizes: {:?}", r.failed_levels);
        }
    }

    #[test]
    fn composition_enumeration_is_complete() {
        assert_eq!(composition_count(2, 3), 6);
        assert_eq!(composition_count(0, 5), 1);
        let mut extra = vec![2, 0, 0];
        let mut seen = vec![extra.clone()];
        while next_composition(&mut extra) {
            seen.push(extra.clone());
        }
        assert_eq!(seen.len(), 6);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|c| c.iter().sum::<usize>() == 2));
    }
}
