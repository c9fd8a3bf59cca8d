//! Digraph storage and the structural queries everything else builds on.
//!
//! Vertices are dense ids `0..n`. Self-loops are rejected; parallel arcs in
//! the input collapse to one (the number of collapsed duplicates is kept).
//! Arcs live both in one lexicographically sorted slice (membership tests,
//! canonical iteration order) and in per-vertex adjacency lists (traversal).

use std::collections::HashMap;
use std::fmt;
use std::io;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DigraphError {
    #[error("vertex {v} out of range for n={n}")]
    OutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("digraph needs at least one vertex")]
    NoVertices,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex sets overlap (vertex {v} in both)")]
    Overlap { v: usize },
    #[error("vertex set universe {universe} does not match n={n}")]
    UniverseMismatch { universe: usize, n: usize },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Arc direction selector for degree and cut queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Subset of a fixed vertex universe `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    /// Collects vertices into a set, rejecting ids outside the universe.
    pub fn from_vertices(
        universe: usize,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, DigraphError> {
        let mut s = Self::empty(universe);
        for v in vertices {
            if v >= universe {
                return Err(DigraphError::OutOfRange { v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from a bitmask over a universe of at most 64 vertices.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64);
        debug_assert!(universe == 64 || mask < (1u64 << universe));
        let mut s = Self::empty(universe);
        if !s.bits.is_empty() {
            s.bits[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.universe);
        self.bits[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    /// First vertex present in both sets, if any.
    pub fn first_common(&self, other: &VertexSet) -> Option<usize> {
        for (i, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            let both = a & b;
            if both != 0 {
                return Some(i * 64 + both.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = Self::empty(self.universe);
        for v in 0..self.universe {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&v| self.contains(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple digraph on vertices `0..n`: no self-loops, no parallel arcs.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    collapsed: usize,
}

impl Digraph {
    /// Builds a digraph, validating every arc. Duplicate arcs collapse to one;
    /// their number is retained and can be read via [`Digraph::duplicates_collapsed`].
    pub fn build(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(DigraphError::OutOfRange { v: u, n });
            }
            if v >= n {
                return Err(DigraphError::OutOfRange { v, n });
            }
            if u == v {
                return Err(DigraphError::SelfLoop { v });
            }
            list.push((u, v));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        let collapsed = before - list.len();

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for l in &mut in_adj {
            l.sort_unstable();
        }
        debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(out_adj.iter().map(Vec::len).sum::<usize>(), list.len());
        Ok(Digraph {
            n,
            arcs: list,
            out_adj,
            in_adj,
            collapsed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Number of duplicate input arcs dropped at build time.
    pub fn duplicates_collapsed(&self) -> usize {
        self.collapsed
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Position of arc `(u,v)` in [`Digraph::arcs`], if present.
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    /// Heads of arcs leaving `v`, ascending.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Tails of arcs entering `v`, ascending.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn degree(&self, v: usize, dir: Direction) -> Result<usize, DigraphError> {
        if v >= self.n {
            return Err(DigraphError::OutOfRange { v, n: self.n });
        }
        Ok(match dir {
            Direction::In => self.in_adj[v].len(),
            Direction::Out => self.out_adj[v].len(),
        })
    }

    /// Minimum in- or out-degree over all vertices.
    pub fn min_degree(&self, dir: Direction) -> usize {
        (0..self.n)
            .map(|v| match dir {
                Direction::In => self.in_adj[v].len(),
                Direction::Out => self.out_adj[v].len(),
            })
            .min()
            .expect("digraph has at least one vertex")
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), DigraphError> {
        if s.universe() != self.n {
            return Err(DigraphError::UniverseMismatch {
                universe: s.universe(),
                n: self.n,
            });
        }
        Ok(())
    }

    /// Number of arcs crossing into (`Direction::In`) or out of (`Direction::Out`)
    /// the set `S`; arcs with both ends in `S` never count.
    pub fn cut(&self, s: &VertexSet, dir: Direction) -> Result<usize, DigraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(DigraphError::EmptySet);
        }
        let mut count = 0;
        for v in s.iter() {
            let list = match dir {
                Direction::In => &self.in_adj[v],
                Direction::Out => &self.out_adj[v],
            };
            count += list.iter().filter(|&&x| !s.contains(x)).count();
        }
        Ok(count)
    }

    /// Number of arcs with tail in `S` and head in `T`; the sets must be disjoint.
    pub fn arcs_between(&self, s: &VertexSet, t: &VertexSet) -> Result<usize, DigraphError> {
        self.check_set(s)?;
        self.check_set(t)?;
        if let Some(v) = s.first_common(t) {
            return Err(DigraphError::Overlap { v });
        }
        let mut count = 0;
        for u in s.iter() {
            count += self.out_adj[u].iter().filter(|&&x| t.contains(x)).count();
        }
        Ok(count)
    }

    /// Subgraph induced by `S`, relabeled to `0..|S|`. The returned map sends
    /// each new id to the old id (ascending).
    pub fn induced(&self, s: &VertexSet) -> Result<(Digraph, Vec<usize>), DigraphError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(DigraphError::EmptySet);
        }
        let map: Vec<usize> = s.iter().collect();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            old_to_new[old] = new;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (old_to_new[u], old_to_new[v]));
        let sub = Digraph::build(map.len(), arcs)?;
        Ok((sub, map))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.n, self.arcs.len())
    }
}

/// Spanning arborescence: every vertex except the root has exactly one parent,
/// and parent chains lead back to the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arborescence {
    root: usize,
    parent: Vec<Option<usize>>,
}

impl Arborescence {
    pub fn new(root: usize, parent: Vec<Option<usize>>) -> Self {
        assert!(root < parent.len(), "root {root} outside vertex range");
        Arborescence { root, parent }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Tree arcs `(parent, child)`, ascending by child id.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|u| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }
}

impl fmt::Display for Arborescence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root: {}; arcs: ", self.root)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}>{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArborescenceViolation {
    #[error("parent vector covers {got} vertices, digraph has {want}")]
    WrongVertexCount { got: usize, want: usize },
    #[error("root {root} out of range")]
    RootOutOfRange { root: usize },
    #[error("root {root} has a parent")]
    RootHasParent { root: usize },
    #[error("vertex {v} has no parent and is not the root")]
    MissingParent { v: usize },
    #[error("arc {u}>{v} is not in the digraph")]
    ArcNotInDigraph { u: usize, v: usize },
    #[error("vertex {v} cannot reach the root through parents")]
    NotRooted { v: usize },
}

/// Checks that `t` is a spanning arborescence of `d`, reporting the first
/// violated condition.
pub fn validate_arborescence(d: &Digraph, t: &Arborescence) -> Result<(), ArborescenceViolation> {
    if t.vertex_count() != d.n() {
        return Err(ArborescenceViolation::WrongVertexCount {
            got: t.vertex_count(),
            want: d.n(),
        });
    }
    if t.root() >= d.n() {
        return Err(ArborescenceViolation::RootOutOfRange { root: t.root() });
    }
    if t.parent(t.root()).is_some() {
        return Err(ArborescenceViolation::RootHasParent { root: t.root() });
    }
    for v in 0..d.n() {
        if v != t.root() && t.parent(v).is_none() {
            return Err(ArborescenceViolation::MissingParent { v });
        }
    }
    for (u, v) in t.arcs() {
        if !d.has_arc(u, v) {
            return Err(ArborescenceViolation::ArcNotInDigraph { u, v });
        }
    }
    // Walk parent chains; a chain longer than n vertices means a cycle.
    let mut rooted = vec![false; d.n()];
    rooted[t.root()] = true;
    for start in 0..d.n() {
        let mut path = Vec::new();
        let mut cur = start;
        while !rooted[cur] {
            path.push(cur);
            if path.len() > d.n() {
                return Err(ArborescenceViolation::NotRooted { v: start });
            }
            cur = t.parent(cur).expect("non-root vertices have parents here");
        }
        for w in path {
            rooted[w] = true;
        }
    }
    Ok(())
}

/// Arc-disjoint collection of spanning arborescences.
pub type Packing = Vec<Arborescence>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackingViolation {
    #[error("arborescence {index}: {violation}")]
    Invalid {
        index: usize,
        violation: ArborescenceViolation,
    },
    #[error("arborescences {first} and {second} share arc {u}>{v}")]
    SharedArc {
        first: usize,
        second: usize,
        u: usize,
        v: usize,
    },
}

/// Checks that every arborescence is valid for `d` and that no two share an arc.
pub fn validate_packing(d: &Digraph, packing: &[Arborescence]) -> Result<(), PackingViolation> {
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (index, t) in packing.iter().enumerate() {
        validate_arborescence(d, t).map_err(|violation| PackingViolation::Invalid { index, violation })?;
        for (u, v) in t.arcs() {
            if let Some(&first) = seen.get(&(u, v)) {
                return Err(PackingViolation::SharedArc {
                    first,
                    second: index,
                    u,
                    v,
                });
            }
            seen.insert((u, v), index);
        }
    }
    Ok(())
}

/// Parses the plain text digraph format: a header line `n m` followed by
/// exactly `m` lines `u v` (0-based endpoints). Errors carry 1-based line numbers.
pub fn parse_digraph(text: &str) -> Result<Digraph, DigraphError> {
    fn two_fields(line: &str, lineno: usize) -> Result<(usize, usize), DigraphError> {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, DigraphError> {
            tok.ok_or_else(|| DigraphError::Malformed {
                line: lineno,
                reason: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| DigraphError::Malformed {
                line: lineno,
                reason: "expected two integers".into(),
            })
        };
        let a = parse(it.next())?;
        let b = parse(it.next())?;
        if it.next().is_some() {
            return Err(DigraphError::Malformed {
                line: lineno,
                reason: "expected two integers".into(),
            });
        }
        Ok((a, b))
    }

    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(DigraphError::Malformed {
        line: 1,
        reason: "missing header line".into(),
    })?;
    let (n, m) = two_fields(header, 1)?;
    if n == 0 {
        return Err(DigraphError::Malformed {
            line: 1,
            reason: "vertex count must be positive".into(),
        });
    }
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (idx, line) = lines.next().ok_or(DigraphError::Malformed {
            line: arcs.len() + 2,
            reason: format!("expected {m} arc lines, found {}", arcs.len()),
        })?;
        let lineno = idx + 1;
        let (u, v) = two_fields(line, lineno)?;
        if u >= n || v >= n {
            return Err(DigraphError::Malformed {
                line: lineno,
                reason: format!("vertex {} out of range for n={n}", if u >= n { u } else { v }),
            });
        }
        if u == v {
            return Err(DigraphError::Malformed {
                line: lineno,
                reason: format!("self-loop at vertex {u}"),
            });
        }
        arcs.push((u, v));
    }
    if let Some((idx, line)) = lines.next() {
        if !line.trim().is_empty() {
            return Err(DigraphError::Malformed {
                line: idx + 1,
                reason: "trailing content after the declared arcs".into(),
            });
        }
    }
    Digraph::build(n, arcs)
}

pub fn read_digraph(path: impl AsRef<Path>) -> Result<Digraph, DigraphError> {
    parse_digraph(&std::fs::read_to_string(path)?)
}

/// Serializes in the canonical form accepted by [`parse_digraph`]:
/// sorted arcs, LF line endings, trailing newline.
pub fn format_digraph(d: &Digraph) -> String {
    let mut out = format!("{} {}\n", d.n(), d.arc_count());
    for &(u, v) in d.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_digraph(d: &Digraph, path: impl AsRef<Path>) -> Result<(), DigraphError> {
    Ok(std::fs::write(path, format_digraph(d))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle3() -> Digraph {
        Digraph::build(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn star_out(center: usize, n: usize) -> Digraph {
        Digraph::build(n, (0..n).filter(|&v| v != center).map(|v| (center, v))).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Digraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Digraph::build(n, arcs).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn build_basics() {
        let d = cycle3();
        assert_eq!(d.n(), 3);
        assert_eq!(d.arc_count(), 3);
        let empty = Digraph::build(2, []).unwrap();
        assert_eq!(empty.arc_count(), 0);
        assert!(matches!(
            Digraph::build(3, [(0, 0)]),
            Err(DigraphError::SelfLoop { v: 0 })
        ));
        assert!(matches!(
            Digraph::build(2, [(0, 5)]),
            Err(DigraphError::OutOfRange { v: 5, n: 2 })
        ));
        assert!(matches!(Digraph::build(0, []), Err(DigraphError::NoVertices)));
    }

    #[test]
    fn duplicates_collapse_with_count() {
        let d = Digraph::build(3, [(0, 1), (0, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.duplicates_collapsed(), 2);
    }

    #[test]
    fn degrees() {
        let d = cycle3();
        assert_eq!(d.degree(0, Direction::In).unwrap(), 1);
        assert_eq!(d.degree(0, Direction::Out).unwrap(), 1);
        let s = star_out(0, 4);
        assert_eq!(s.degree(0, Direction::Out).unwrap(), 3);
        assert_eq!(s.degree(0, Direction::In).unwrap(), 0);
        assert_eq!(s.min_degree(Direction::In), 0);
        let k4 = complete(4);
        for v in 0..4 {
            assert_eq!(k4.degree(v, Direction::In).unwrap(), 3);
        }
        assert!(d.degree(7, Direction::In).is_err());
    }

    #[test]
    fn cuts() {
        let d = cycle3();
        let s = set(3, &[0, 1]);
        assert_eq!(d.cut(&s, Direction::In).unwrap(), 1);
        assert_eq!(d.cut(&s, Direction::Out).unwrap(), 1);
        assert_eq!(d.cut(&VertexSet::full(3), Direction::In).unwrap(), 0);
        assert!(matches!(
            d.cut(&VertexSet::empty(3), Direction::In),
            Err(DigraphError::EmptySet)
        ));
        assert!(matches!(
            d.cut(&VertexSet::empty(5), Direction::In),
            Err(DigraphError::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn cut_complement_identity() {
        // in-cut of S equals out-cut of its complement, on assorted digraphs
        let ds = [cycle3(), complete(4), star_out(1, 5)];
        for d in &ds {
            let n = d.n();
            for mask in 1..(1u64 << n) - 1 {
                let s = VertexSet::from_mask(n, mask);
                let c = s.complement();
                assert_eq!(
                    d.cut(&s, Direction::In).unwrap(),
                    d.cut(&c, Direction::Out).unwrap()
                );
                // in-cut = sum of in-degrees minus arcs inside S
                let inside: usize = d
                    .arcs()
                    .iter()
                    .filter(|&&(u, v)| s.contains(u) && s.contains(v))
                    .count();
                let degs: usize = s.iter().map(|v| d.degree(v, Direction::In).unwrap()).sum();
                assert_eq!(d.cut(&s, Direction::In).unwrap(), degs - inside);
            }
        }
    }

    #[test]
    fn arcs_between_counts() {
        let k4 = complete(4);
        let s = set(4, &[0, 1]);
        let t = set(4, &[2, 3]);
        assert_eq!(k4.arcs_between(&s, &t).unwrap(), 4);
        assert!(matches!(
            k4.arcs_between(&s, &set(4, &[1, 2])),
            Err(DigraphError::Overlap { v: 1 })
        ));
    }

    #[test]
    fn induced_subgraphs() {
        let d = cycle3();
        let (sub, map) = d.induced(&set(3, &[0, 1])).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.arc_count(), 1);
        assert_eq!(map, vec![0, 1]);

        let (copy, map) = d.induced(&VertexSet::full(3)).unwrap();
        assert_eq!(copy.arcs(), d.arcs());
        assert_eq!(map, vec![0, 1, 2]);

        let k5 = complete(5);
        let (sub, _) = k5.induced(&set(5, &[1, 2, 4])).unwrap();
        assert_eq!(sub.arcs(), complete(3).arcs());
    }

    #[test]
    fn arborescence_validation() {
        let d = cycle3();
        let good = Arborescence::new(0, vec![None, Some(0), Some(1)]);
        assert!(validate_arborescence(&d, &good).is_ok());
        assert_eq!(good.to_string(), "root: 0; arcs: 0>1,1>2");

        // root 0 with parent map using arcs (1,2),(2,0) gives the root a parent
        let bad = Arborescence::new(0, vec![Some(2), None, Some(1)]);
        assert_eq!(
            validate_arborescence(&d, &bad),
            Err(ArborescenceViolation::RootHasParent { root: 0 })
        );

        let missing = Arborescence::new(0, vec![None, Some(0), None]);
        assert_eq!(
            validate_arborescence(&d, &missing),
            Err(ArborescenceViolation::MissingParent { v: 2 })
        );

        let absent_arc = Arborescence::new(0, vec![None, Some(0), Some(0)]);
        assert_eq!(
            validate_arborescence(&d, &absent_arc),
            Err(ArborescenceViolation::ArcNotInDigraph { u: 0, v: 2 })
        );

        let d4 = Digraph::build(4, [(0, 1), (2, 3), (3, 2)]).unwrap();
        let cyclic = Arborescence::new(0, vec![None, Some(0), Some(3), Some(2)]);
        assert_eq!(
            validate_arborescence(&d4, &cyclic),
            Err(ArborescenceViolation::NotRooted { v: 2 })
        );
    }

    #[test]
    fn packing_validation() {
        let k3 = complete(3);
        // three arc-disjoint spanning arborescences using all 6 arcs
        let packing = vec![
            Arborescence::new(0, vec![None, Some(0), Some(1)]),
            Arborescence::new(1, vec![Some(1), None, Some(0)]),
            Arborescence::new(2, vec![Some(2), Some(2), None]),
        ];
        assert!(validate_packing(&k3, &packing).is_ok());

        let overlap = vec![
            Arborescence::new(0, vec![None, Some(0), Some(1)]),
            Arborescence::new(0, vec![None, Some(0), Some(0)]),
        ];
        assert_eq!(
            validate_packing(&k3, &overlap),
            Err(PackingViolation::SharedArc {
                first: 0,
                second: 1,
                u: 0,
                v: 1
            })
        );
    }

    #[test]
    fn parse_and_format_round_trip() {
        let text = "3 3\n0 1\n1 2\n2 0\n";
        let d = parse_digraph(text).unwrap();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(format_digraph(&d), text);

        assert!(matches!(
            parse_digraph("3 2\n0 1\n0 0\n"),
            Err(DigraphError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_digraph("2 1\n0 7\n"),
            Err(DigraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("2 2\n0 1\n"),
            Err(DigraphError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_digraph("2 1\n0 1\n1 0\n"),
            Err(DigraphError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_digraph("0 0\n"),
            Err(DigraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("2 1\nx y\n"),
            Err(DigraphError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn vertex_set_display() {
        assert_eq!(set(5, &[0, 2, 4]).to_string(), "{0,2,4}");
        assert_eq!(VertexSet::empty(3).to_string(), "{}");
    }
}
