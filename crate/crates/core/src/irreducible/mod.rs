//! Irreducible (minimal augmenting) bipartite graphs: the predicate, a
//! canonical-form enumerator producing finite catalogs, and census checks.
//!
//! A coloured bipartite graph `H = (W, B)` is irreducible when
//! `|W| = |B| - 1`, every non-empty `A ⊆ W` has `|N(A) ∩ B| > |A|`, and `H`
//! is connected. A single black vertex counts.

mod catalog;
mod ramsey;

use std::collections::{BTreeMap, BTreeSet};

pub use catalog::{Catalog, CatalogEntry};
pub use ramsey::{bipartite_ramsey_bound, RamseyBound};

use crate::canon;
use crate::enumerate::{Generator, Shape, SmallGraph};
use crate::error::{Error, Result};
use crate::graph::{is_connected, is_independent, Graph, VertexSet};
use crate::patterns::{is_free, Pattern};

/// Largest vertex count accepted by [`canonical_code`] and the enumerators.
pub const MAX_ENUMERATION_VERTICES: usize = 14;

pub const WHITE: u8 = 0;
pub const BLACK: u8 = 1;

/// A graph with a proper two-colouring into white `W` and black `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredBipartite {
    graph: Graph,
    white: VertexSet,
    black: VertexSet,
}

impl ColoredBipartite {
    /// Every vertex outside `white` is black; both classes must be independent.
    pub fn new(graph: Graph, white: VertexSet) -> Result<Self> {
        graph.check_set(&white)?;
        let mut white_full = VertexSet::new(graph.n());
        for v in white.iter() {
            white_full.insert(v);
        }
        let black = white_full.complement();
        if !is_independent(&graph, &white_full)? || !is_independent(&graph, &black)? {
            return Err(Error::Precondition(
                "colour classes of a bipartite graph must be independent".into(),
            ));
        }
        Ok(ColoredBipartite {
            graph,
            white: white_full,
            black,
        })
    }

    pub fn from_edges(n: usize, white: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let graph = Graph::from_edges(n, edges)?;
        for &w in white {
            graph.check_vertex(w)?;
        }
        Self::new(graph, VertexSet::from_iter(n, white.iter().copied()))
    }

    /// Colours `0` are white, anything else black.
    pub(crate) fn from_small(g: &SmallGraph) -> Self {
        let n = g.n();
        let white = VertexSet::from_iter(n, (0..n).filter(|&v| g.colors[v] == WHITE));
        Self::new(g.graph(), white).expect("generated graphs are properly coloured")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn white(&self) -> &VertexSet {
        &self.white
    }

    pub fn black(&self) -> &VertexSet {
        &self.black
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black.contains(v)
    }

    pub fn colors(&self) -> Vec<u8> {
        (0..self.n())
            .map(|v| if self.white.contains(v) { WHITE } else { BLACK })
            .collect()
    }

    /// The same graph with the colour classes exchanged.
    pub fn swapped(&self) -> Self {
        ColoredBipartite {
            graph: self.graph.clone(),
            white: self.black.clone(),
            black: self.white.clone(),
        }
    }
}

/// Kuhn's augmenting-path matching from white to black, optionally ignoring
/// one black vertex. Returns the white partner of every black vertex.
fn kuhn(h: &ColoredBipartite, excluded: Option<usize>) -> Vec<Option<usize>> {
    fn try_white(
        h: &ColoredBipartite,
        w: usize,
        excluded: Option<usize>,
        seen: &mut [bool],
        partner: &mut [Option<usize>],
    ) -> bool {
        for &b in h.graph.neighbors(w) {
            if Some(b) == excluded || seen[b] {
                continue;
            }
            seen[b] = true;
            let free = match partner[b] {
                None => true,
                Some(other) => try_white(h, other, excluded, seen, partner),
            };
            if free {
                partner[b] = Some(w);
                return true;
            }
        }
        false
    }

    let n = h.n();
    let mut partner = vec![None; n];
    let mut seen = vec![false; n];
    for w in h.white.iter() {
        seen.iter_mut().for_each(|s| *s = false);
        try_white(h, w, excluded, &mut seen, &mut partner);
    }
    partner
}

/// A maximum matching as `(white, black)` pairs sorted by the white end.
pub fn max_bipartite_matching(h: &ColoredBipartite) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = kuhn(h, None)
        .iter()
        .enumerate()
        .filter_map(|(b, w)| w.map(|w| (w, b)))
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Strict Hall surplus: `|N(A) ∩ B| > |A|` for every non-empty `A ⊆ W`.
///
/// Checked as "for every black `b`, `W` is still saturable once `b` is
/// deleted", which takes `|B|` matchings instead of `2^|W|` subsets.
pub fn hall_surplus_check(h: &ColoredBipartite) -> bool {
    let whites = h.white.len();
    if whites == 0 {
        return true;
    }
    if h.black.is_empty() {
        return false;
    }
    h.black.iter().all(|b| {
        let matched = kuhn(h, Some(b)).iter().filter(|w| w.is_some()).count();
        matched == whites
    })
}

/// `|W| = |B| - 1`, strict Hall surplus, and connected.
pub fn is_irreducible(h: &ColoredBipartite) -> bool {
    h.white.len() + 1 == h.black.len() && is_connected(&h.graph) && hall_surplus_check(h)
}

/// Colour-preserving isomorphism invariant; equal codes iff isomorphic.
pub fn canonical_code(h: &ColoredBipartite) -> Result<Vec<u8>> {
    if h.n() > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            what: "coloured bipartite graph",
            size: h.n(),
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    let adj = h.graph.masks().expect("size checked above");
    Ok(canon::canonical_form(&adj, &h.colors()).code)
}

fn check_bound(n_max: usize) -> Result<()> {
    if n_max > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge {
            what: "enumeration bound",
            size: n_max,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    Ok(())
}

fn irreducible_levels(n_max: usize, filters: &[Pattern]) -> Vec<SmallGraph> {
    Generator::new(Shape::ColouredBipartite, n_max)
        .forbid(filters)
        .balance(1)
        .run()
        .into_iter()
        .flatten()
        .filter(|g| {
            let black = g.colors.iter().filter(|&&c| c == BLACK).count();
            black * 2 == g.n() + 1 && hall_surplus_check(&ColoredBipartite::from_small(g))
        })
        .collect()
}

/// Every irreducible graph on at most `n_max` vertices containing none of
/// `filters`, one per colour-preserving isomorphism class.
pub fn enumerate_irreducible(n_max: usize, filters: &[Pattern]) -> Result<Catalog> {
    check_bound(n_max)?;
    let entries = irreducible_levels(n_max, filters)
        .iter()
        .map(|g| CatalogEntry {
            code: g.code.clone(),
            graph: ColoredBipartite::from_small(g),
        })
        .collect();
    Ok(Catalog::from_parts(n_max, filters.to_vec(), entries))
}

/// Outcome of the minimal-classes census for one `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinClassesReport {
    pub t: usize,
    pub n_max: usize,
    /// Irreducible graphs per vertex count.
    pub irreducible: BTreeMap<usize, usize>,
    /// Irreducible graphs per vertex count free of `P_t`, `K(t-1,t)`, `T_t`.
    pub free: BTreeMap<usize, usize>,
    /// Codes on which the pruned and post-filtered enumerations disagree.
    pub misses: Vec<Vec<u8>>,
}

impl MinClassesReport {
    pub fn is_clean(&self) -> bool {
        self.misses.is_empty()
    }
}

/// The forbidden family `P_t`, `K(t-1,t)`, `T_t` of the census.
pub fn min_class_patterns(t: usize) -> Result<Vec<Pattern>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("census needs t >= 2, got {t}")));
    }
    Ok(vec![
        Pattern::path(t)?,
        Pattern::biclique(t - 1, t)?,
        Pattern::simple_tree(t)?,
    ])
}

/// Census of irreducible graphs free of `P_t`, `K(t-1,t)` and `T_t`.
///
/// Runs the enumerator twice: once pruning by the three patterns, once
/// unfiltered and classified afterwards. Every unfiltered graph outside the
/// pruned set must contain one of the patterns and every pruned graph must
/// avoid them all; disagreements are listed as misses.
pub fn verify_min_classes(n_max: usize, t: usize) -> Result<MinClassesReport> {
    check_bound(n_max)?;
    let patterns = min_class_patterns(t)?;
    let pruned: BTreeSet<Vec<u8>> = irreducible_levels(n_max, &patterns)
        .into_iter()
        .map(|g| g.code)
        .collect();
    let mut report = MinClassesReport {
        t,
        n_max,
        ..Default::default()
    };
    let mut covered = BTreeSet::new();
    for g in irreducible_levels(n_max, &[]) {
        *report.irreducible.entry(g.n()).or_default() += 1;
        let free = is_free(&g.graph(), &patterns).is_ok();
        if free {
            *report.free.entry(g.n()).or_default() += 1;
        }
        if free != pruned.contains(&g.code) {
            report.misses.push(g.code.clone());
        }
        covered.insert(g.code);
    }
    report
        .misses
        .extend(pruned.difference(&covered).cloned());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Alternately coloured path on `n` vertices; vertex 0 gets `first`.
    pub(super) fn coloured_path(n: usize, first_black: bool) -> ColoredBipartite {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let white: Vec<usize> = (0..n).filter(|v| (v % 2 == 0) != first_black).collect();
        ColoredBipartite::from_edges(n, &white, &edges).unwrap()
    }

    fn biclique(w: usize, b: usize) -> ColoredBipartite {
        let mut edges = Vec::new();
        for i in 0..w {
            for j in 0..b {
                edges.push((i, w + j));
            }
        }
        ColoredBipartite::from_edges(w + b, &(0..w).collect::<Vec<_>>(), &edges).unwrap()
    }

    fn black_centred_tree(k: usize) -> ColoredBipartite {
        let g = Pattern::simple_tree(k).unwrap().graph().clone();
        ColoredBipartite::new(g, VertexSet::from_iter(2 * k + 1, 1..=k)).unwrap()
    }

    fn hall_exhaustive(h: &ColoredBipartite) -> bool {
        let whites = h.white().to_vec();
        (1u32..1 << whites.len()).all(|mask| {
            let mut nb = VertexSet::new(h.n());
            let mut size = 0;
            for (i, &w) in whites.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    size += 1;
                    for &b in h.graph().neighbors(w) {
                        nb.insert(b);
                    }
                }
            }
            nb.len() > size
        })
    }

    #[test]
    fn rejects_improper_colourings() {
        assert!(ColoredBipartite::from_edges(2, &[0, 1], &[(0, 1)]).is_err());
        assert!(ColoredBipartite::from_edges(2, &[], &[(0, 1)]).is_err());
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_bipartite_matching(&biclique(2, 3)).len(), 2);
        assert_eq!(max_bipartite_matching(&coloured_path(5, true)).len(), 2);
        let edgeless = ColoredBipartite::from_edges(3, &[0], &[]).unwrap();
        assert!(max_bipartite_matching(&edgeless).is_empty());
    }

    #[test]
    fn hall_examples() {
        assert!(hall_surplus_check(&biclique(1, 2)));
        assert!(!hall_surplus_check(&biclique(1, 1)));
        assert!(hall_surplus_check(&biclique(3, 4)));
        let lonely_white = ColoredBipartite::from_edges(1, &[0], &[]).unwrap();
        assert!(!hall_surplus_check(&lonely_white));
    }

    #[test]
    fn hall_matches_subset_check_on_small_graphs() {
        for g in Generator::new(Shape::ColouredBipartite, 7).run().iter().flatten() {
            let h = ColoredBipartite::from_small(g);
            assert_eq!(hall_surplus_check(&h), hall_exhaustive(&h), "{h:?}");
        }
    }

    #[test]
    fn irreducible_families() {
        for k in 1..=6 {
            assert!(is_irreducible(&coloured_path(2 * k + 1, true)));
            assert!(!is_irreducible(&coloured_path(2 * k + 1, false)));
            assert!(is_irreducible(&biclique(k, k + 1)));
            assert!(is_irreducible(&black_centred_tree(k)));
            assert!(!is_irreducible(&coloured_path(2 * k, true)));
        }
        let c6 = Pattern::cycle(6).unwrap().graph().clone();
        let h = ColoredBipartite::new(c6, VertexSet::from_iter(6, [0, 2, 4])).unwrap();
        assert!(!is_irreducible(&h));
        let k1 = ColoredBipartite::from_edges(1, &[], &[]).unwrap();
        assert!(is_irreducible(&k1));
    }

    #[test]
    fn canonical_code_examples() {
        let p3 = coloured_path(3, true);
        let relabelled = ColoredBipartite::from_edges(3, &[2], &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_code(&p3).unwrap(), canonical_code(&relabelled).unwrap());
        let k1 = ColoredBipartite::from_edges(1, &[], &[]).unwrap();
        assert_ne!(canonical_code(&p3).unwrap(), canonical_code(&k1).unwrap());
        assert_ne!(
            canonical_code(&biclique(2, 3)).unwrap(),
            canonical_code(&black_centred_tree(2)).unwrap()
        );
        let big = ColoredBipartite::from_edges(15, &[], &[]).unwrap();
        assert!(matches!(canonical_code(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_irreducible(1, &[]).unwrap();
        assert_eq!(one.entries().len(), 1);
        assert_eq!(one.entries()[0].graph.black().len(), 1);

        let three = enumerate_irreducible(3, &[]).unwrap();
        assert_eq!(three.census(), BTreeMap::from([(1, 1), (3, 1)]));
        let p3 = canonical_code(&coloured_path(3, true)).unwrap();
        assert!(three.entries().iter().any(|e| e.code == p3));

        assert!(enumerate_irreducible(15, &[]).is_err());
    }

    #[test]
    fn enumeration_entries_are_irreducible_and_deterministic() {
        let filters = [
            Pattern::path(8).unwrap(),
            Pattern::simple_tree(4).unwrap(),
            Pattern::biclique(3, 3).unwrap(),
        ];
        let a = enumerate_irreducible(7, &filters).unwrap();
        let b = enumerate_irreducible(7, &filters).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        for e in a.entries() {
            assert!(is_irreducible(&e.graph));
            assert!(is_free(e.graph.graph(), &filters).is_ok());
        }
        for k in 1..=3 {
            let code = canonical_code(&coloured_path(2 * k + 1, true)).unwrap();
            assert!(a.entries().iter().any(|e| e.code == code));
        }
    }

    #[test]
    fn min_classes_small() {
        let report = verify_min_classes(7, 3).unwrap();
        assert!(report.is_clean());
        // a connected bipartite P3-free graph has at most two vertices
        assert_eq!(report.free, BTreeMap::from([(1, 1)]));
        assert!(min_class_patterns(1).is_err());
    }
}
