//! Searches for augmenting graphs of a fixed independent set `S`.
//!
//! An augmenting graph is a pair `W ⊆ S`, `B ⊆ V \ S` with `B` independent,
//! `|B| > |W|` and `N(B) ∩ S ⊆ W`; replacing `W` by `B` enlarges `S`. Three
//! shapes are searched: alternating chordless paths, bounded extensions of
//! simple trees, and members of a precomputed catalog of irreducible graphs.

use crate::error::{Error, Result};
use crate::graph::{count_neighbours_in, is_independent, neighbourhood, Graph, VertexSet};
use crate::irreducible::Catalog;

/// Which finder produced a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateShape {
    Path,
    TreeExtension,
    /// Index of the matched catalog entry.
    Catalog(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugCandidate {
    /// Vertices of `S` to drop.
    pub white: VertexSet,
    /// Vertices outside `S` to add.
    pub black: VertexSet,
    pub shape: CandidateShape,
}

/// Whether `cand` is augmenting for `s`.
///
/// Errors when the inputs do not fit: `s` not independent, `W` not inside
/// `s`, or `B` meeting `s`.
pub fn is_augmenting(g: &Graph, s: &VertexSet, cand: &AugCandidate) -> Result<bool> {
    if !is_independent(g, s)? {
        return Err(Error::Precondition("S is not independent".into()));
    }
    g.check_set(&cand.white)?;
    g.check_set(&cand.black)?;
    if cand.white.iter().any(|w| !s.contains(w)) {
        return Err(Error::Precondition("W is not a subset of S".into()));
    }
    if cand.black.iter().any(|b| s.contains(b)) {
        return Err(Error::Precondition("B intersects S".into()));
    }
    if cand.black.len() <= cand.white.len() || !is_independent(g, &cand.black)? {
        return Ok(false);
    }
    let touched = neighbourhood(g, &cand.black)?;
    let escaped = touched.iter().any(|v| s.contains(v) && !cand.white.contains(v));
    Ok(!escaped)
}

fn debug_validate(g: &Graph, s: &VertexSet, cand: &AugCandidate) {
    debug_assert_eq!(is_augmenting(g, s, cand), Ok(true), "finder returned {cand:?}");
}

/// Membership of `S` over the whole vertex range.
fn membership(g: &Graph, s: &VertexSet) -> Vec<bool> {
    (0..g.n()).map(|v| s.contains(v)).collect()
}

fn full_set(g: &Graph, s: &VertexSet) -> VertexSet {
    VertexSet::from_iter(g.n(), s.iter())
}

/// Neighbours of `v` inside `S`, in ascending order.
fn s_neighbours(g: &Graph, in_s: &[bool], v: usize) -> Vec<usize> {
    g.neighbors(v).iter().copied().filter(|&w| in_s[w]).collect()
}

struct PathSearch<'a> {
    g: &'a Graph,
    in_s: Vec<bool>,
    s_nbrs: Vec<Vec<usize>>,
    max_whites: usize,
    blacks: Vec<usize>,
    whites: Vec<usize>,
    on_path: Vec<bool>,
}

impl PathSearch<'_> {
    /// Extends a path whose last vertex is the white `w`.
    fn extend(&mut self, w: usize) -> bool {
        for &b in self.g.neighbors(w) {
            if self.in_s[b] || self.on_path[b] || self.s_nbrs[b].len() > 2 {
                continue;
            }
            if self.blacks.iter().any(|&x| self.g.has_edge(x, b)) {
                continue;
            }
            let other = self.s_nbrs[b].iter().copied().find(|&x| x != w);
            match other {
                None => {
                    self.blacks.push(b);
                    return true;
                }
                Some(next) => {
                    if self.on_path[next] || self.whites.len() + 1 > self.max_whites {
                        continue;
                    }
                    self.blacks.push(b);
                    self.whites.push(next);
                    self.on_path[b] = true;
                    self.on_path[next] = true;
                    if self.extend(next) {
                        return true;
                    }
                    self.on_path[b] = false;
                    self.on_path[next] = false;
                    self.blacks.pop();
                    self.whites.pop();
                }
            }
        }
        false
    }
}

/// An alternating chordless path `b0 w1 b1 ... wk bk` with black ends whose
/// black vertices see no `S` vertex off the path. `k = 0` is a black vertex
/// with no neighbour in `S`.
///
/// Exact backtracking over black vertices with at most two neighbours in
/// `S`. `max_len` bounds the number of edges; `None` searches exhaustively.
pub fn find_augmenting_path(g: &Graph, s: &VertexSet, max_len: Option<usize>) -> Option<AugCandidate> {
    let n = g.n();
    let in_s = membership(g, s);
    let s_nbrs: Vec<Vec<usize>> = (0..n)
        .map(|v| if in_s[v] { Vec::new() } else { s_neighbours(g, &in_s, v) })
        .collect();
    if let Some(v) = (0..n).find(|&v| !in_s[v] && s_nbrs[v].is_empty()) {
        let cand = AugCandidate {
            white: VertexSet::new(n),
            black: VertexSet::from_iter(n, [v]),
            shape: CandidateShape::Path,
        };
        debug_validate(g, &full_set(g, s), &cand);
        return Some(cand);
    }
    let max_whites = max_len.map_or(usize::MAX, |l| l / 2);
    if max_whites == 0 {
        return None;
    }
    let mut search = PathSearch {
        g,
        in_s,
        s_nbrs,
        max_whites,
        blacks: Vec::new(),
        whites: Vec::new(),
        on_path: vec![false; n],
    };
    for start in 0..n {
        if search.in_s[start] || search.s_nbrs[start].len() != 1 {
            continue;
        }
        let w = search.s_nbrs[start][0];
        search.blacks = vec![start];
        search.whites = vec![w];
        search.on_path[start] = true;
        search.on_path[w] = true;
        if search.extend(w) {
            let cand = AugCandidate {
                white: VertexSet::from_iter(n, search.whites.iter().copied()),
                black: VertexSet::from_iter(n, search.blacks.iter().copied()),
                shape: CandidateShape::Path,
            };
            debug_validate(g, &full_set(g, s), &cand);
            return Some(cand);
        }
        search.on_path[start] = false;
        search.on_path[w] = false;
    }
    None
}

/// Calls `visit` on every `size`-subset of `items` in lexicographic order
/// until it returns `true`.
fn for_each_subset(items: &[usize], size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(items: &[usize], from: usize, size: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        let need = size - cur.len();
        for i in from..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            if rec(items, i + 1, size, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, 0, size, &mut Vec::with_capacity(size), visit)
}

struct TreeSearch<'a> {
    g: &'a Graph,
    p: usize,
    in_s: Vec<bool>,
    s_nbrs: Vec<Vec<usize>>,
    rest: Vec<usize>,
}

enum Outcome {
    Found(AugCandidate),
    Violation(Vec<usize>),
}

impl TreeSearch<'_> {
    /// Possible centres: vertices outside `S` with at least `p + 2` neighbours in `S \ Q1`.
    fn centres_for(&self, q1: &[bool]) -> Vec<usize> {
        self.rest
            .iter()
            .copied()
            .filter(|&u| self.s_nbrs[u].iter().filter(|&&a| !q1[a]).count() >= self.p + 2)
            .collect()
    }

    fn covered(&self, x: usize, u: usize, q1: &[bool]) -> bool {
        self.s_nbrs[x]
            .iter()
            .all(|&a| q1[a] || self.g.has_edge(u, a))
    }

    /// Depth-first choice of `Q2` in lexicographic order; `alive` holds the
    /// centres still compatible with the partial choice.
    fn choose_q2(
        &self,
        size: usize,
        from: usize,
        q1: &[usize],
        q1_mask: &[bool],
        q2: &mut Vec<usize>,
        alive: &[usize],
    ) -> Option<Outcome> {
        if q2.len() == size {
            for &u in alive {
                if let Some(out) = self.try_centre(u, q1, q1_mask, q2) {
                    return Some(out);
                }
            }
            return None;
        }
        for i in from..self.rest.len() {
            let x = self.rest[i];
            if q2.iter().any(|&y| self.g.has_edge(x, y)) {
                continue;
            }
            let still: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&u| u != x && !self.g.has_edge(u, x) && self.covered(x, u, q1_mask))
                .collect();
            if still.is_empty() {
                continue;
            }
            q2.push(x);
            if let Some(out) = self.choose_q2(size, i + 1, q1, q1_mask, q2, &still) {
                return Some(out);
            }
            q2.pop();
        }
        None
    }

    fn try_centre(&self, u: usize, q1: &[usize], q1_mask: &[bool], q2: &[usize]) -> Option<Outcome> {
        let n = self.g.n();
        let a0: Vec<usize> = self.s_nbrs[u].iter().copied().filter(|&a| !q1_mask[a]).collect();
        if a0.len() < self.p + 2 {
            return None;
        }
        let mut b0 = Vec::with_capacity(a0.len());
        for &a in &a0 {
            let pick = self.g.neighbors(a).iter().copied().find(|&v| {
                !self.in_s[v]
                    && v != u
                    && !q2.contains(&v)
                    && !self.g.has_edge(v, u)
                    && q2.iter().all(|&y| !self.g.has_edge(v, y))
                    && self.s_nbrs[v].iter().all(|&x| x == a || q1_mask[x])
            });
            b0.push(pick?);
        }
        for i in 0..b0.len() {
            for j in i + 1..b0.len() {
                if self.g.has_edge(b0[i], b0[j]) {
                    let others: Vec<usize> =
                        (0..a0.len()).filter(|&l| l != i && l != j).take(2).collect();
                    return Some(Outcome::Violation(vec![
                        u,
                        a0[others[0]],
                        a0[others[1]],
                        a0[i],
                        b0[i],
                        b0[j],
                    ]));
                }
            }
        }
        let white = VertexSet::from_iter(n, a0.iter().chain(q1).copied());
        let black = VertexSet::from_iter(n, std::iter::once(u).chain(b0).chain(q2.iter().copied()));
        Some(Outcome::Found(AugCandidate {
            white,
            black,
            shape: CandidateShape::TreeExtension,
        }))
    }
}

/// An augmenting graph `W = A0 ∪ Q1`, `B = {u} ∪ B0 ∪ Q2` that extends a
/// simple tree `T_k`, `k >= p + 2`, centred at `u` by at most `2p` vertices
/// on each side.
///
/// Triples `(Q1, Q2, u)` are scanned by `|Q1|`, then `Q1` and `Q2`
/// lexicographically, then `u`. For each, `A0 = N_S(u) \ Q1` and every
/// `a_i ∈ A0` needs a private black `b_i` whose only neighbour in `S \ Q1` is
/// `a_i` and that avoids `{u} ∪ Q2`; the least such vertex is used.
///
/// Fails with [`Error::ClassViolation`] if two chosen `b_i` are adjacent,
/// which cannot happen in an `S(1,1,3)`-free graph; the witness is an induced
/// `S(1,1,3)` listed in pattern order.
pub fn find_tree_extension(g: &Graph, s: &VertexSet, p: usize) -> Result<Option<AugCandidate>> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("tree extensions need p >= 2, got {p}")));
    }
    g.check_set(s)?;
    let n = g.n();
    let in_s = membership(g, s);
    let s_nbrs: Vec<Vec<usize>> = (0..n)
        .map(|v| if in_s[v] { Vec::new() } else { s_neighbours(g, &in_s, v) })
        .collect();
    let rest: Vec<usize> = (0..n).filter(|&v| !in_s[v]).collect();
    if rest.iter().all(|&u| s_nbrs[u].len() < p + 2) {
        return Ok(None);
    }
    let search = TreeSearch {
        g,
        p,
        in_s,
        s_nbrs,
        rest,
    };
    let members: Vec<usize> = (0..n).filter(|&v| search.in_s[v]).collect();
    let mut outcome = None;
    for size in 0..=2 * p {
        if size > members.len() || size > search.rest.len() {
            break;
        }
        for_each_subset(&members, size, &mut |q1| {
            let mut q1_mask = vec![false; n];
            for &a in q1 {
                q1_mask[a] = true;
            }
            let centres = search.centres_for(&q1_mask);
            if centres.is_empty() {
                return false;
            }
            outcome = search.choose_q2(size, 0, q1, &q1_mask, &mut Vec::new(), &centres);
            outcome.is_some()
        });
        if outcome.is_some() {
            break;
        }
    }
    match outcome {
        None => Ok(None),
        Some(Outcome::Violation(witness)) => Err(Error::ClassViolation { witness }),
        Some(Outcome::Found(cand)) => {
            debug_validate(g, &full_set(g, s), &cand);
            Ok(Some(cand))
        }
    }
}

/// Embedding plan for one catalog entry.
struct EntryPlan {
    /// Pattern vertices in placement order.
    order: Vec<usize>,
    /// For each step, an earlier step adjacent to it.
    anchor: Vec<Option<usize>>,
    black: Vec<bool>,
    degree: Vec<usize>,
    whites: usize,
    blacks: usize,
    /// `black_degrees[d]` counts black vertices of degree `d`.
    black_degrees: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl EntryPlan {
    fn new(h: &crate::irreducible::ColoredBipartite) -> Self {
        let n = h.n();
        let g = h.graph();
        let black: Vec<bool> = (0..n).map(|v| h.is_black(v)).collect();
        let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        // root: a white of maximum degree, or the lone black vertex
        let root = (0..n)
            .filter(|&v| !black[v])
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .unwrap_or(0);
        order.push(root);
        anchor.push(None);
        placed[root] = true;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&w| adj[v][w]).count();
                    (links, degree[v], std::cmp::Reverse(v))
                })
                .expect("vertices remain");
            let a = order.iter().position(|&w| adj[next][w]);
            order.push(next);
            anchor.push(a);
            placed[next] = true;
        }
        let mut black_degrees = vec![0; n + 1];
        for v in (0..n).filter(|&v| black[v]) {
            black_degrees[degree[v]] += 1;
        }
        EntryPlan {
            order,
            anchor,
            black_degrees,
            whites: black.iter().filter(|&&b| !b).count(),
            blacks: black.iter().filter(|&&b| b).count(),
            black,
            degree,
            adj,
        }
    }
}

/// Embedding plans for every entry of a catalog, built once and reused
/// across searches.
pub struct CatalogSearch {
    plans: Vec<EntryPlan>,
}

struct Host<'a> {
    g: &'a Graph,
    in_s: Vec<bool>,
    /// Neighbours in `S` for vertices outside it, neighbours outside `S` for members.
    cross_degree: Vec<usize>,
}

impl CatalogSearch {
    pub fn new(catalog: &Catalog) -> Self {
        let plans = catalog.entries().iter().map(|e| EntryPlan::new(&e.graph)).collect();
        CatalogSearch { plans }
    }

    /// First entry, in catalog order, embedded as an augmenting graph for `s`.
    pub fn find(&self, g: &Graph, s: &VertexSet) -> Option<AugCandidate> {
        let n = g.n();
        let in_s = membership(g, s);
        let s_full = full_set(g, s);
        let cross_degree: Vec<usize> = (0..n)
            .map(|v| {
                let inside = count_neighbours_in(g, v, &s_full);
                if in_s[v] { g.degree(v) - inside } else { inside }
            })
            .collect();
        // how many outside vertices have each number of neighbours in S
        let mut outside_degrees = vec![0usize; n + 1];
        for v in (0..n).filter(|&v| !in_s[v]) {
            outside_degrees[cross_degree[v]] += 1;
        }
        let host = Host { g, in_s, cross_degree };
        let members = host.in_s.iter().filter(|&&b| b).count();
        for (idx, plan) in self.plans.iter().enumerate() {
            if plan.whites > members || plan.blacks > n - members {
                continue;
            }
            let enough = plan
                .black_degrees
                .iter()
                .enumerate()
                .all(|(d, &need)| need == 0 || outside_degrees.get(d).is_some_and(|&have| have >= need));
            if !enough {
                continue;
            }
            let mut image = Vec::with_capacity(plan.order.len());
            let mut used = vec![false; n];
            if embed(plan, &host, &mut image, &mut used) {
                let mut white = VertexSet::new(n);
                let mut black = VertexSet::new(n);
                for (step, &x) in plan.order.iter().enumerate() {
                    if plan.black[x] {
                        black.insert(image[step]);
                    } else {
                        white.insert(image[step]);
                    }
                }
                let cand = AugCandidate {
                    white,
                    black,
                    shape: CandidateShape::Catalog(idx),
                };
                debug_validate(g, &s_full, &cand);
                return Some(cand);
            }
        }
        None
    }
}

fn embed(plan: &EntryPlan, host: &Host<'_>, image: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let step = image.len();
    if step == plan.order.len() {
        return true;
    }
    let x = plan.order[step];
    let fits = |v: usize, image: &[usize], used: &[bool]| -> bool {
        if used[v] {
            return false;
        }
        if plan.black[x] {
            if host.in_s[v] || host.cross_degree[v] != plan.degree[x] {
                return false;
            }
        } else if !host.in_s[v] || host.cross_degree[v] < plan.degree[x] {
            return false;
        }
        plan.order[..step]
            .iter()
            .zip(image)
            .all(|(&y, &w)| plan.adj[x][y] == host.g.has_edge(v, w))
    };
    let n = host.g.n();
    let count = match plan.anchor[step] {
        Some(a) => host.g.degree(image[a]),
        None => n,
    };
    for i in 0..count {
        let v = match plan.anchor[step] {
            Some(a) => host.g.neighbors(image[a])[i],
            None => i,
        };
        if !fits(v, image, used) {
            continue;
        }
        image.push(v);
        used[v] = true;
        if embed(plan, host, image, used) {
            return true;
        }
        image.pop();
        used[v] = false;
    }
    false
}

/// An embedding of some catalog entry as an augmenting graph: whites onto
/// `S`, blacks off `S`, adjacency preserved exactly, and every black image
/// seeing only white images inside `S`. Entries are tried smallest first.
pub fn find_from_catalog(g: &Graph, s: &VertexSet, catalog: &Catalog) -> Option<AugCandidate> {
    CatalogSearch::new(catalog).find(g, s)
}
