//! Exhaustive checks, over small connected bipartite `S(1,1,3)`-free graphs,
//! of the structure the tree-extension finder relies on.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::enumerate::{Generator, Shape, SmallGraph};
use crate::error::{Error, Result};
use crate::graph::{is_connected, neighbourhood, Graph, VertexSet};
use crate::irreducible::{enumerate_irreducible, ColoredBipartite};
use crate::patterns::{find_induced, maximal_simple_trees, Pattern, SimpleTreeCopy};

pub const PATH_OR_CYCLE_LIMIT: usize = 12;
pub const ANATOMY_LIMIT: usize = 13;
pub const EXTENSION_LIMIT: usize = 13;

/// `n: u-v u-v ...`, a compact serialization for violation reports.
pub fn describe(g: &Graph) -> String {
    let mut out = format!("{}:", g.n());
    for (u, v) in g.edges() {
        let _ = write!(out, " {u}-{v}");
    }
    out
}

fn check_limit(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

/// Connected bipartite `S(1,1,3)`-free graphs up to `n_max` vertices, one per
/// uncoloured isomorphism class.
fn spider_free_bipartite(n_max: usize) -> Vec<SmallGraph> {
    let spider = Pattern::spider(1, 1, 3).expect("valid pattern");
    Generator::new(Shape::ColouredBipartite, n_max)
        .forbid(&[spider])
        .run()
        .into_iter()
        .flatten()
        .filter(|g| g.uncoloured_bipartite_key() == g.code)
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathOrCycleReport {
    pub n_max: usize,
    /// Qualifying graphs per vertex count, named `P<n>` or `C<n>`, or by edge
    /// list when neither.
    pub found: BTreeMap<usize, Vec<String>>,
    pub violations: Vec<String>,
}

/// Every connected bipartite `S(1,1,3)`-free graph with an induced `P_8`
/// on at most `n_max` vertices must be a chordless path or cycle.
pub fn verify_path_or_cycle(n_max: usize) -> Result<PathOrCycleReport> {
    check_limit("path-or-cycle bound", n_max, PATH_OR_CYCLE_LIMIT)?;
    let p8 = Pattern::path(8)?;
    let mut report = PathOrCycleReport {
        n_max,
        ..Default::default()
    };
    for small in spider_free_bipartite(n_max) {
        if small.n() < 8 {
            continue;
        }
        let g = small.graph();
        if find_induced(&g, &p8).is_none() {
            continue;
        }
        let n = g.n();
        let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
        let name = match (max_degree <= 2, g.m()) {
            (true, m) if m + 1 == n => format!("P{n}"),
            (true, m) if m == n => format!("C{n}"),
            _ => {
                report.violations.push(describe(&g));
                describe(&g)
            }
        };
        report.found.entry(n).or_default().push(name);
    }
    for names in report.found.values_mut() {
        names.sort();
    }
    Ok(report)
}

/// The neighbourhood layers around an induced simple tree `T_k` with centre
/// `u`, middles `A0` and leaves `B0` (`a_i` adjacent to `b_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anatomy {
    pub u: usize,
    pub a0: VertexSet,
    pub b0: VertexSet,
    /// `N(B0) \ A0`.
    pub b1: VertexSet,
    /// Members of `B1` with exactly one neighbour in `B0`.
    pub b1_single: VertexSet,
    /// Members of `B1` adjacent to all of `B0`.
    pub b1_full: VertexSet,
    /// `N(A0) \ ({u} ∪ B0)`.
    pub a1: VertexSet,
    /// `N(u) \ (A0 ∪ B1)`.
    pub c: VertexSet,
    /// `N(A1) \ (C ∪ A0 ∪ B1)`.
    pub d1: VertexSet,
    /// `N(B1) \ ({u} ∪ B0 ∪ A1)`.
    pub d2: VertexSet,
}

/// Layers around the tree; errors unless `(u, a0, b0)` is an induced `T_k`.
pub fn compute_anatomy(g: &Graph, u: usize, a0: &[usize], b0: &[usize]) -> Result<Anatomy> {
    let n = g.n();
    g.check_vertex(u)?;
    for &v in a0.iter().chain(b0) {
        g.check_vertex(v)?;
    }
    let malformed = |why: &str| Error::Precondition(format!("not an induced simple tree: {why}"));
    if a0.len() != b0.len() || a0.is_empty() {
        return Err(malformed("middles and leaves must pair up"));
    }
    let mut tree: Vec<usize> = vec![u];
    tree.extend(a0);
    tree.extend(b0);
    let mut sorted = tree.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != tree.len() {
        return Err(malformed("repeated vertex"));
    }
    let k = a0.len();
    let expected = |x: usize, y: usize| -> bool {
        // positions in `tree`: 0 centre, 1..=k middles, k+1..=2k leaves
        let (x, y) = (x.min(y), x.max(y));
        (x == 0 && (1..=k).contains(&y)) || ((1..=k).contains(&x) && y == x + k)
    };
    for x in 0..tree.len() {
        for y in x + 1..tree.len() {
            if g.has_edge(tree[x], tree[y]) != expected(x, y) {
                return Err(malformed("adjacency differs from T_k"));
            }
        }
    }
    let set = |xs: &[usize]| VertexSet::from_iter(n, xs.iter().copied());
    let a0s = set(a0);
    let b0s = set(b0);
    let us = set(&[u]);
    let b1 = neighbourhood(g, &b0s)?.difference(&a0s);
    let count_b0 = |v: usize| g.neighbors(v).iter().filter(|&&w| b0s.contains(w)).count();
    let b1_single = VertexSet::from_iter(n, b1.iter().filter(|&v| count_b0(v) == 1));
    let b1_full = VertexSet::from_iter(n, b1.iter().filter(|&v| count_b0(v) == k));
    let a1 = neighbourhood(g, &a0s)?.difference(&us.union(&b0s));
    let c = g.neighbor_set(u).difference(&a0s.union(&b1));
    let d1 = neighbourhood(g, &a1)?.difference(&c.union(&a0s).union(&b1));
    let d2 = neighbourhood(g, &b1)?.difference(&us.union(&b0s).union(&a1));
    Ok(Anatomy {
        u,
        a0: a0s,
        b0: b0s,
        b1,
        b1_single,
        b1_full,
        a1,
        c,
        d1,
        d2,
    })
}

/// Names of the structural statements that fail for `anatomy`.
///
/// * `i`: every vertex of `B1` is adjacent to `u`.
/// * `ii`: `A0` and `A1` are completely joined.
/// * `iii`: `N(C) ⊆ {u} ∪ A1`.
/// * `iv`: `N(D1) ⊆ A1`.
/// * `v`: `B1 = B1' ∪ B1''`.
/// * `vi`: `B1'` or `B1''` is empty.
/// * `vii`: `N(B1') ⊆ {u} ∪ B0 ∪ A1`.
/// * `viii`: `N(D2) ⊆ B1`.
/// * `cover`: the layers cover every vertex.
pub fn failed_statements(g: &Graph, anatomy: &Anatomy) -> Vec<&'static str> {
    let n = g.n();
    let an = anatomy;
    let us = VertexSet::from_iter(n, [an.u]);
    let nb = |x: &VertexSet| neighbourhood(g, x).expect("sets come from this graph");
    let mut failed = Vec::new();
    if !an.b1.iter().all(|v| g.has_edge(v, an.u)) {
        failed.push("i");
    }
    if !an.a0.iter().all(|a| an.a1.iter().all(|x| g.has_edge(a, x))) {
        failed.push("ii");
    }
    if !nb(&an.c).is_subset(&us.union(&an.a1)) {
        failed.push("iii");
    }
    if !nb(&an.d1).is_subset(&an.a1) {
        failed.push("iv");
    }
    if an.b1 != an.b1_single.union(&an.b1_full) {
        failed.push("v");
    }
    if !an.b1_single.is_empty() && !an.b1_full.is_empty() {
        failed.push("vi");
    }
    if !nb(&an.b1_single).is_subset(&us.union(&an.b0).union(&an.a1)) {
        failed.push("vii");
    }
    if !nb(&an.d2).is_subset(&an.b1) {
        failed.push("viii");
    }
    let covered = us
        .union(&an.a0)
        .union(&an.a1)
        .union(&an.b0)
        .union(&an.b1)
        .union(&an.c)
        .union(&an.d1)
        .union(&an.d2);
    if covered.len() != n {
        failed.push("cover");
    }
    failed
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnatomyViolation {
    pub graph: String,
    pub tree: SimpleTreeCopy,
    pub statements: Vec<&'static str>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnatomyReport {
    pub n_max: usize,
    pub k_min: usize,
    /// Graphs per vertex count with at least one qualifying tree.
    pub graphs: BTreeMap<usize, usize>,
    /// Maximal trees examined per vertex count.
    pub trees: BTreeMap<usize, usize>,
    pub violations: Vec<AnatomyViolation>,
}

/// Checks every statement of [`failed_statements`] for every maximal induced
/// simple tree with at least `k_min` branches in every connected bipartite
/// `S(1,1,3)`-free graph on at most `n_max` vertices.
pub fn verify_anatomy_statements(n_max: usize, k_min: usize) -> Result<AnatomyReport> {
    check_limit("anatomy bound", n_max, ANATOMY_LIMIT)?;
    if k_min < 3 {
        return Err(Error::InvalidParameter(format!("k_min must be at least 3, got {k_min}")));
    }
    let mut report = AnatomyReport {
        n_max,
        k_min,
        ..Default::default()
    };
    for small in spider_free_bipartite(n_max) {
        let g = small.graph();
        let n = g.n();
        if n < 2 * k_min + 1 {
            continue;
        }
        let mut any = false;
        for u in 0..n {
            for tree in maximal_simple_trees(&g, u) {
                if tree.k() < k_min {
                    continue;
                }
                any = true;
                *report.trees.entry(n).or_default() += 1;
                let anatomy = compute_anatomy(&g, u, &tree.middles, &tree.leaves)?;
                let statements = failed_statements(&g, &anatomy);
                if !statements.is_empty() {
                    report.violations.push(AnatomyViolation {
                        graph: describe(&g),
                        tree,
                        statements,
                    });
                }
            }
        }
        if any {
            *report.graphs.entry(n).or_default() += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionReport {
    pub p: usize,
    pub n_max: usize,
    /// Qualifying irreducible graphs per vertex count.
    pub graphs: BTreeMap<usize, usize>,
    pub violations: Vec<String>,
}

/// Largest simple tree with `k >= k_min` centred anywhere in `h`, optionally
/// only at black centres.
fn largest_tree(h: &ColoredBipartite, black_centre: bool) -> Option<SimpleTreeCopy> {
    (0..h.n())
        .filter(|&u| !black_centre || h.is_black(u))
        .flat_map(|u| maximal_simple_trees(h.graph(), u))
        .max_by_key(|t| t.k())
}

/// Every irreducible `(S(1,1,3), K(p,p))`-free graph with an induced
/// `T_{p+2}` on at most `n_max` vertices must contain such a tree with a
/// black centre, and must turn into a simple tree `T_k`, `k >= p + 2`, once
/// at most `4p` vertices are deleted.
pub fn verify_extension_bound(p: usize, n_max: usize) -> Result<ExtensionReport> {
    if p != 2 {
        return Err(Error::InvalidParameter(format!(
            "the extension check runs at p = 2 only, got {p}"
        )));
    }
    check_limit("extension bound", n_max, EXTENSION_LIMIT)?;
    let filters = vec![Pattern::spider(1, 1, 3)?, Pattern::biclique(p, p)?];
    let catalog = enumerate_irreducible(n_max, &filters)?;
    let mut report = ExtensionReport {
        p,
        n_max,
        ..Default::default()
    };
    for entry in catalog.entries() {
        let h = &entry.graph;
        let Some(any) = largest_tree(h, false) else { continue };
        if any.k() < p + 2 {
            continue;
        }
        *report.graphs.entry(h.n()).or_default() += 1;
        let black = largest_tree(h, true);
        if black.is_none_or(|t| t.k() < p + 2) {
            report.violations.push(format!("no black-centred T{}: {}", p + 2, describe(h.graph())));
        }
        if h.n() > any.vertices().len() + 4 * p {
            report.violations.push(format!(
                "more than {} vertices outside every simple tree: {}",
                4 * p,
                describe(h.graph())
            ));
        }
        debug_assert!(is_connected(h.graph()));
    }
    Ok(report)
}
