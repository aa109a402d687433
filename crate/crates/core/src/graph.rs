//! Undirected simple graphs over dense vertex ids and the elementary
//! queries every other module is built on.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

/// A subset of the vertices of some graph.
///
/// Backed by a bitset sized to the graph's vertex count; iteration is in
/// ascending id order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    /// Empty set over the universe `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    /// Panics if a member is not below `n`.
    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut set = VertexSet::new(n);
        for v in members {
            set.insert(v);
        }
        set
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        VertexSet { bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.grow(other.bits.len());
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency is kept twice: as one bitset row per vertex for constant-time
/// adjacency tests and as sorted neighbour lists for iteration. Values are
/// immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
    lists: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
            lists: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let lists: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = lists.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { rows, lists, m }
    }

    /// Graph on `n <= 32` vertices given by adjacency bitmasks.
    pub(crate) fn from_masks(masks: &[u32]) -> Self {
        let n = masks.len();
        let rows = masks
            .iter()
            .map(|&mask| {
                let mut row = FixedBitSet::with_capacity(n);
                let mut rest = mask;
                while rest != 0 {
                    row.insert(rest.trailing_zeros() as usize);
                    rest &= rest - 1;
                }
                row
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.lists[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Open neighbourhood of a single vertex as a set.
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.rows[v].clone())
    }

    /// Edges `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.lists
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Adjacency bitmasks, for graphs small enough to fit in a `u32` row.
    pub(crate) fn masks(&self) -> Option<Vec<u32>> {
        if self.n() > 32 {
            return None;
        }
        Some(
            self.lists
                .iter()
                .map(|ns| ns.iter().fold(0u32, |acc, &v| acc | 1 << v))
                .collect(),
        )
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.iter().last() {
            Some(v) if v >= self.n() => Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An induced subgraph together with the id correspondence to its host.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the host id of subgraph vertex `i`.
    pub original: Vec<usize>,
    /// `relabel[v]` is the subgraph id of host vertex `v`, if kept.
    pub relabel: Vec<Option<usize>>,
}

/// `N(U)`: every vertex adjacent to some member of `U`. May intersect `U`.
pub fn neighbourhood(g: &Graph, u: &VertexSet) -> Result<VertexSet, GraphError> {
    g.check_set(u)?;
    let mut bits = FixedBitSet::with_capacity(g.n());
    for v in u.iter() {
        bits.union_with(g.row(v));
    }
    Ok(VertexSet::from_bits(bits))
}

/// `N_X(U) = N(U) ∩ X`.
pub fn restricted_neighbourhood(
    g: &Graph,
    u: &VertexSet,
    x: &VertexSet,
) -> Result<VertexSet, GraphError> {
    g.check_set(x)?;
    Ok(neighbourhood(g, u)?.intersection(x))
}

pub(crate) fn count_neighbours_in(g: &Graph, v: usize, x: &VertexSet) -> usize {
    g.row(v).intersection_count(x.bits())
}

/// `G[X]`, relabelled densely in ascending order of host ids.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<InducedSubgraph, GraphError> {
    g.check_set(x)?;
    let original = x.to_vec();
    let mut relabel = vec![None; g.n()];
    for (i, &v) in original.iter().enumerate() {
        relabel[v] = Some(i);
    }
    let k = original.len();
    let rows = original
        .iter()
        .map(|&v| {
            let mut row = FixedBitSet::with_capacity(k);
            for &w in g.neighbors(v) {
                if let Some(j) = relabel[w] {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    Ok(InducedSubgraph {
        graph: Graph::from_rows(rows),
        original,
        relabel,
    })
}

pub fn is_independent(g: &Graph, x: &VertexSet) -> Result<bool, GraphError> {
    g.check_set(x)?;
    Ok(x.iter().all(|v| g.row(v).is_disjoint(x.bits())))
}

/// Connected components, each sorted, ordered by their minimum member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::new(n);
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// True for connected graphs; the null graph counts as connected.
pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// A proper two-colouring `(W, B)`, if the graph is bipartite.
///
/// In every component the side holding the smallest vertex id goes to `W`.
pub fn bipartition(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let s = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        queue.push_back(w);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let white = VertexSet::from_iter(n, (0..n).filter(|&v| side[v] == Some(false)));
    let black = white.complement();
    Some((white, black))
}
