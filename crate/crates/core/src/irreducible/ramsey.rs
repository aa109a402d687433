//! Exhaustive computation of the smallest matching size that forces a
//! biclique `K(t,t)` or an induced matching of `p` edges in a bipartite graph.
//!
//! Both obstructions are hereditary, so a graph avoiding them with a
//! matching of size `m` has an induced subgraph on the `2m` matched vertices
//! with a perfect matching that still avoids them. It suffices to grow such
//! perfectly matched graphs one matched pair at a time; the answer is the
//! first size at which none survive.

use std::collections::{BTreeMap, HashSet};

use super::{ColoredBipartite, BLACK, WHITE};
use crate::canon;
use crate::enumerate::SmallGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patterns::{InducedMatcher, Pattern};

/// Cap on the number of graphs kept at one matching size.
const LEVEL_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyBound {
    pub t: usize,
    pub p: usize,
    /// Smallest `N` such that every bipartite graph with a matching of size
    /// `N` contains `K(t,t)` or an induced `p`-matching.
    pub n: usize,
    /// A graph with a perfect matching of size `n - 1` avoiding both; the
    /// empty graph when `n == 1`.
    pub witness: ColoredBipartite,
    /// Obstruction-free perfectly matched graphs per matching size.
    pub counts: Vec<usize>,
}

fn induced_matching(p: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..p).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(2 * p, &edges).expect("valid by construction")
}

pub fn bipartite_ramsey_bound(t: usize, p: usize) -> Result<RamseyBound> {
    if t == 0 || p == 0 {
        return Err(Error::InvalidParameter("t and p must be positive".into()));
    }
    let matchers = [
        InducedMatcher::new(Pattern::biclique(t, t)?.graph()),
        InducedMatcher::new(&induced_matching(p)),
    ];
    let empty = SmallGraph::canonical(&[], &[]);
    let mut level = vec![empty];
    let mut counts = vec![1];
    loop {
        let m = counts.len();
        if 2 * m > canon::MAX_VERTICES {
            return Err(Error::BudgetExceeded(format!(
                "matching size {m} needs {} vertices, canonical labelling stops at {}",
                2 * m,
                canon::MAX_VERTICES
            )));
        }
        let next = grow(&level, &matchers)?;
        if next.is_empty() {
            let last = &level[0];
            let n = last.n();
            let white = crate::graph::VertexSet::from_iter(
                n,
                (0..n).filter(|&v| last.colors[v] == WHITE),
            );
            let witness = ColoredBipartite::new(last.graph(), white)?;
            return Ok(RamseyBound {
                t,
                p,
                n: m,
                witness,
                counts,
            });
        }
        counts.push(next.len());
        level = next;
    }
}

/// Adds a matched white-black pair with every possible attachment.
fn grow(level: &[SmallGraph], matchers: &[InducedMatcher]) -> Result<Vec<SmallGraph>> {
    let mut seen = HashSet::new();
    let mut kept = BTreeMap::new();
    for parent in level {
        let n = parent.n();
        let (w, b) = (n, n + 1);
        let blacks: u32 = (0..n)
            .filter(|&v| parent.colors[v] == BLACK)
            .fold(0, |m, v| m | 1 << v);
        let whites: u32 = (0..n)
            .filter(|&v| parent.colors[v] == WHITE)
            .fold(0, |m, v| m | 1 << v);
        let mut colors = parent.colors.clone();
        colors.extend([WHITE, BLACK]);
        let mut to_black = blacks;
        loop {
            let mut to_white = whites;
            loop {
                let mut adj: Vec<u32> = parent
                    .adj
                    .iter()
                    .enumerate()
                    .map(|(v, &row)| row | ((to_black >> v) & 1) << w | ((to_white >> v) & 1) << b)
                    .collect();
                adj.push(to_black | 1 << b);
                adj.push(to_white | 1 << w);
                let child = SmallGraph::canonical(&adj, &colors);
                if seen.insert(child.code.clone()) {
                    let g = Graph::from_masks(&adj);
                    let clean = matchers
                        .iter()
                        .all(|m| m.find_through(&g, w).is_none() && m.find_through(&g, b).is_none());
                    if clean {
                        kept.insert(child.code.clone(), child);
                        if kept.len() > LEVEL_BUDGET {
                            return Err(Error::BudgetExceeded(format!(
                                "more than {LEVEL_BUDGET} graphs at matching size {}",
                                n / 2 + 1
                            )));
                        }
                    }
                }
                if to_white == 0 {
                    break;
                }
                to_white = (to_white - 1) & whites;
            }
            if to_black == 0 {
                break;
            }
            to_black = (to_black - 1) & blacks;
        }
    }
    Ok(kept.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreducible::max_bipartite_matching;

    #[test]
    fn trivial_bounds() {
        assert_eq!(bipartite_ramsey_bound(1, 1).unwrap().n, 1);
        assert_eq!(bipartite_ramsey_bound(1, 2).unwrap().n, 1);
        assert_eq!(bipartite_ramsey_bound(2, 1).unwrap().n, 1);
        assert!(bipartite_ramsey_bound(0, 2).is_err());
    }

    #[test]
    fn two_two() {
        let r = bipartite_ramsey_bound(2, 2).unwrap();
        assert_eq!(r.n, 3);
        assert_eq!(max_bipartite_matching(&r.witness).len(), 2);
        assert_eq!(r.counts.len(), 3);
    }
}
