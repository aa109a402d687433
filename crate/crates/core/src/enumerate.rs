//! Isomorph-free generation of small connected graphs.
//!
//! Every connected graph has a vertex whose removal leaves it connected, so
//! all connected graphs on `n + 1` vertices arise from those on `n` vertices
//! by adding one vertex with a non-empty neighbourhood. Each level is
//! deduplicated by canonical code. Forbidden patterns prune the search,
//! which is sound because pattern-freeness is inherited by induced
//! subgraphs; only copies through the new vertex need checking.

use std::collections::{BTreeMap, HashSet};

use crate::canon::{self, canonical_form};
use crate::graph::Graph;
use crate::patterns::{InducedMatcher, Pattern};

/// A canonically labelled small graph with vertex colours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub adj: Vec<u32>,
    pub colors: Vec<u8>,
    pub code: Vec<u8>,
}

impl SmallGraph {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn graph(&self) -> Graph {
        Graph::from_masks(&self.adj)
    }

    /// Canonical relabelling of arbitrary masks and colours.
    pub fn canonical(adj: &[u32], colors: &[u8]) -> Self {
        let form = canonical_form(adj, colors);
        SmallGraph {
            adj: canon::permute(adj, &form.order),
            colors: form.order.iter().map(|&v| colors[v]).collect(),
            code: form.code,
        }
    }

    pub fn from_code(code: &[u8]) -> Option<Self> {
        let (colors, adj) = canon::decode(code)?;
        Some(SmallGraph {
            adj,
            colors,
            code: code.to_vec(),
        })
    }

    /// Code of the colour-swapped graph; for a connected bipartite graph the
    /// smaller of the two codes identifies it up to uncoloured isomorphism.
    pub fn uncoloured_bipartite_key(&self) -> Vec<u8> {
        let swapped: Vec<u8> = self.colors.iter().map(|&c| 1 - c).collect();
        let other = canonical_form(&self.adj, &swapped).code;
        other.min(self.code.clone())
    }
}

/// Which graphs to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Uncoloured connected graphs.
    General,
    /// Connected bipartite graphs with a white (0) / black (1) colouring.
    ColouredBipartite,
}

pub struct Generator {
    shape: Shape,
    n_max: usize,
    filters: Vec<InducedMatcher>,
    /// Keep only graphs that can still reach `#black - #white == target` by `n_max`.
    balance_target: Option<i64>,
}

impl Generator {
    pub fn new(shape: Shape, n_max: usize) -> Self {
        assert!(n_max <= canon::MAX_VERTICES);
        Generator {
            shape,
            n_max,
            filters: Vec::new(),
            balance_target: None,
        }
    }

    pub fn forbid(mut self, patterns: &[Pattern]) -> Self {
        self.filters
            .extend(patterns.iter().map(|p| InducedMatcher::new(p.graph())));
        self
    }

    pub fn balance(mut self, target: i64) -> Self {
        self.balance_target = Some(target);
        self
    }

    fn reachable(&self, colors: &[u8]) -> bool {
        match self.balance_target {
            None => true,
            Some(t) => {
                let black = colors.iter().filter(|&&c| c == 1).count() as i64;
                let white = colors.len() as i64 - black;
                ((black - white) - t).unsigned_abs() as usize <= self.n_max - colors.len()
            }
        }
    }

    fn admits(&self, adj: &[u32], new_vertex: usize) -> bool {
        if self.filters.is_empty() {
            return true;
        }
        let graph = Graph::from_masks(adj);
        self.filters
            .iter()
            .all(|m| m.find_through(&graph, new_vertex).is_none())
    }

    fn seeds(&self) -> Vec<SmallGraph> {
        let colours: &[u8] = match self.shape {
            Shape::General => &[0],
            Shape::ColouredBipartite => &[0, 1],
        };
        colours
            .iter()
            .map(|&c| SmallGraph::canonical(&[0], &[c]))
            .filter(|g| self.admits(&g.adj, 0) && self.reachable(&g.colors))
            .collect()
    }

    /// Generates every level `1..=n_max`; `levels[i]` holds the graphs on
    /// `i + 1` vertices sorted by canonical code.
    pub fn run(&self) -> Vec<Vec<SmallGraph>> {
        let mut levels: Vec<Vec<SmallGraph>> = Vec::new();
        if self.n_max == 0 {
            return levels;
        }
        let mut current = self.seeds();
        current.sort_by(|a, b| a.code.cmp(&b.code));
        levels.push(current);
        for _ in 1..self.n_max {
            let next = self.extend(levels.last().unwrap());
            levels.push(next);
        }
        levels
    }

    fn extend(&self, parents: &[SmallGraph]) -> Vec<SmallGraph> {
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut kept: BTreeMap<Vec<u8>, SmallGraph> = BTreeMap::new();
        let mut adj = Vec::new();
        let mut colors = Vec::new();
        for parent in parents {
            let n = parent.n();
            let options: Vec<(u8, u32)> = match self.shape {
                Shape::General => vec![(0, (1u32 << n) - 1)],
                Shape::ColouredBipartite => [0u8, 1]
                    .iter()
                    .map(|&c| {
                        let opposite = (0..n)
                            .filter(|&v| parent.colors[v] != c)
                            .fold(0u32, |m, v| m | 1 << v);
                        (c, opposite)
                    })
                    .collect(),
            };
            for (colour, allowed) in options {
                colors.clear();
                colors.extend_from_slice(&parent.colors);
                colors.push(colour);
                if !self.reachable(&colors) {
                    continue;
                }
                // every non-empty submask of `allowed`
                let mut sub = allowed;
                while sub != 0 {
                    adj.clear();
                    adj.extend(
                        parent
                            .adj
                            .iter()
                            .enumerate()
                            .map(|(v, &row)| row | ((sub >> v) & 1) << n),
                    );
                    adj.push(sub);
                    let child = SmallGraph::canonical(&adj, &colors);
                    // freeness is an isomorphism invariant, so each class is tested once,
                    // through the new vertex in the uncanonised labelling
                    if seen.insert(child.code.clone()) && self.admits(&adj, n) {
                        kept.insert(child.code.clone(), child);
                    }
                    sub = (sub - 1) & allowed;
                }
            }
        }
        kept.into_values().collect()
    }
}
