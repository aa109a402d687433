//! Named forbidden-subgraph templates and exact induced-subgraph search.
//!
//! Vertex numbering of the built graphs:
//!
//! * `P(n)`: the path `0 - 1 - ... - n-1`.
//! * `C(n)`: the path plus the edge `n-1 - 0`.
//! * `K(m,n)`: side one is `0..m`, side two is `m..m+n`.
//! * `T(k)`: centre `0`, middle vertices `1..=k`, leaf `k+i` hangs off middle `i`.
//! * `S(i,j,k)`: centre `0`, then the three legs laid out consecutively, each
//!   leg numbered outwards from the centre.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Spider(usize, usize, usize),
    Path(usize),
    Biclique(usize, usize),
    SimpleTree(usize),
    Cycle(usize),
    Explicit(Graph),
}

/// A validated pattern together with its built graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    kind: PatternKind,
    graph: Graph,
}

impl Pattern {
    pub fn new(kind: PatternKind) -> Result<Self> {
        let graph = build_pattern(&kind)?;
        Ok(Pattern { kind, graph })
    }

    pub fn spider(i: usize, j: usize, k: usize) -> Result<Self> {
        Self::new(PatternKind::Spider(i, j, k))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(PatternKind::Path(n))
    }

    pub fn biclique(m: usize, n: usize) -> Result<Self> {
        Self::new(PatternKind::Biclique(m, n))
    }

    pub fn simple_tree(k: usize) -> Result<Self> {
        Self::new(PatternKind::SimpleTree(k))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(PatternKind::Cycle(n))
    }

    pub fn explicit(graph: Graph) -> Self {
        Pattern {
            kind: PatternKind::Explicit(graph.clone()),
            graph,
        }
    }

    pub fn kind(&self) -> &PatternKind {
        &self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The two forbidden graphs defining the target class, `S(1,1,3)` and `K(p,p)`.
    pub fn class_filters(p: usize) -> Result<Vec<Pattern>> {
        Ok(vec![Pattern::spider(1, 1, 3)?, Pattern::biclique(p, p)?])
    }
}

fn positive(name: &str, values: &[usize]) -> Result<()> {
    if values.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "{name} parameters must be positive, got {values:?}"
        )));
    }
    Ok(())
}

/// Builds the graph of a pattern with the numbering documented at module level.
pub fn build_pattern(kind: &PatternKind) -> Result<Graph> {
    let mut edges = Vec::new();
    let n = match *kind {
        PatternKind::Path(n) => {
            positive("P", &[n])?;
            edges.extend((1..n).map(|i| (i - 1, i)));
            n
        }
        PatternKind::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!("C({n}) needs at least 3 vertices")));
            }
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((n - 1, 0));
            n
        }
        PatternKind::Biclique(a, b) => {
            positive("K", &[a, b])?;
            for i in 0..a {
                edges.extend((0..b).map(|j| (i, a + j)));
            }
            a + b
        }
        PatternKind::SimpleTree(k) => {
            positive("T", &[k])?;
            for i in 1..=k {
                edges.push((0, i));
                edges.push((i, k + i));
            }
            2 * k + 1
        }
        PatternKind::Spider(i, j, k) => {
            positive("S", &[i, j, k])?;
            let mut next = 1;
            for leg in [i, j, k] {
                let mut prev = 0;
                for _ in 0..leg {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            next
        }
        PatternKind::Explicit(ref g) => return Ok(g.clone()),
    };
    Ok(Graph::from_edges(n, &edges)?)
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PatternKind::Spider(i, j, k) => write!(f, "S({i},{j},{k})"),
            PatternKind::Path(n) => write!(f, "P({n})"),
            PatternKind::Biclique(a, b) => write!(f, "K({a},{b})"),
            PatternKind::SimpleTree(k) => write!(f, "T({k})"),
            PatternKind::Cycle(n) => write!(f, "C({n})"),
            PatternKind::Explicit(g) => {
                write!(f, "G({}", g.n())?;
                for (u, v) in g.edges() {
                    write!(f, ";{u}-{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Parses the `Display` form, e.g. `S(1,1,3)`, `K(3,3)` or `G(3;0-1;1-2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse pattern {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        if name == "G" {
            let mut parts = body.split(';');
            let n: usize = parts.next().and_then(|t| t.trim().parse().ok()).ok_or_else(bad)?;
            let mut edges = Vec::new();
            for part in parts {
                let (u, v) = part.split_once('-').ok_or_else(bad)?;
                edges.push((
                    u.trim().parse().map_err(|_| bad())?,
                    v.trim().parse().map_err(|_| bad())?,
                ));
            }
            return Ok(Pattern::explicit(Graph::from_edges(n, &edges)?));
        }
        let args: Vec<usize> = body
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let kind = match (name, args.as_slice()) {
            ("S", &[i, j, k]) => PatternKind::Spider(i, j, k),
            ("P", &[n]) => PatternKind::Path(n),
            ("K", &[a, b]) => PatternKind::Biclique(a, b),
            ("T", &[k]) => PatternKind::SimpleTree(k),
            ("C", &[n]) => PatternKind::Cycle(n),
            _ => return Err(bad()),
        };
        Pattern::new(kind)
    }
}

/// Parses a comma- or space-separated pattern list such as `P(8),T(4),K(3,3)`.
pub fn parse_pattern_list(s: &str) -> Result<Vec<Pattern>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' | ' ' if depth == 0 => {
                if !s[start..i].trim().is_empty() {
                    out.push(s[start..i].parse()?);
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].parse()?);
    }
    Ok(out)
}

struct Step {
    vertex: usize,
    degree: usize,
    /// Earlier position whose image's neighbour list supplies candidates.
    anchor: Option<usize>,
    adjacent: Vec<usize>,
    non_adjacent: Vec<usize>,
}

fn plan(pattern: &Graph, root: Option<usize>) -> Vec<Step> {
    let n = pattern.n();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = if let Some(r) = root.filter(|_| order.is_empty()) {
            r
        } else {
            (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = pattern.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (linked, pattern.degree(v), std::cmp::Reverse(v))
                })
                .unwrap()
        };
        placed[next] = true;
        order.push(next);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let (adjacent, non_adjacent): (Vec<usize>, Vec<usize>) =
                (0..i).partition(|&j| pattern.has_edge(v, order[j]));
            let anchor = adjacent.first().copied();
            debug_assert!(anchor.is_none() || pos[order[anchor.unwrap()]] < i);
            Step {
                vertex: v,
                degree: pattern.degree(v),
                anchor,
                adjacent,
                non_adjacent,
            }
        })
        .collect()
}

/// Reusable induced-subgraph matcher for one pattern.
///
/// Pattern vertices are matched in a fixed order: the highest-degree vertex
/// first, then repeatedly the vertex with the most already-matched
/// neighbours (ties by degree, then id). Host candidates are tried in
/// ascending id, so the returned embedding is the least one in that order.
pub struct InducedMatcher {
    pattern: Graph,
    plan: Vec<Step>,
    rooted: Vec<Vec<Step>>,
}

impl InducedMatcher {
    pub fn new(pattern: &Graph) -> Self {
        InducedMatcher {
            pattern: pattern.clone(),
            plan: plan(pattern, None),
            rooted: (0..pattern.n()).map(|r| plan(pattern, Some(r))).collect(),
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// Embedding indexed by pattern vertex, or `None` if `g` has no induced copy.
    pub fn find(&self, g: &Graph) -> Option<Vec<usize>> {
        if self.pattern.n() > g.n() {
            return None;
        }
        run(&self.plan, g, None)
    }

    /// An induced copy whose image contains host vertex `v`.
    pub fn find_through(&self, g: &Graph, v: usize) -> Option<Vec<usize>> {
        if self.pattern.n() > g.n() {
            return None;
        }
        self.rooted.iter().find_map(|steps| run(steps, g, Some(v)))
    }
}

fn run(steps: &[Step], g: &Graph, forced_root: Option<usize>) -> Option<Vec<usize>> {
    let k = steps.len();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];
    if k == 0 {
        return Some(Vec::new());
    }
    if extend(steps, g, 0, forced_root, &mut image, &mut used) {
        let mut embedding = vec![0; k];
        for (i, step) in steps.iter().enumerate() {
            embedding[step.vertex] = image[i];
        }
        Some(embedding)
    } else {
        None
    }
}

fn fits(step: &Step, g: &Graph, c: usize, image: &[usize], used: &[bool]) -> bool {
    !used[c]
        && g.degree(c) >= step.degree
        && step.adjacent.iter().all(|&j| g.has_edge(c, image[j]))
        && step.non_adjacent.iter().all(|&j| !g.has_edge(c, image[j]))
}

fn extend(
    steps: &[Step],
    g: &Graph,
    i: usize,
    forced_root: Option<usize>,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == steps.len() {
        return true;
    }
    let step = &steps[i];
    let attempt = |c: usize, image: &mut [usize], used: &mut [bool]| -> bool {
        if forced_root.is_some() && i > 0 && Some(c) == forced_root {
            return false;
        }
        if !fits(step, g, c, image, used) {
            return false;
        }
        image[i] = c;
        used[c] = true;
        let found = extend(steps, g, i + 1, forced_root, image, used);
        used[c] = false;
        found
    };
    if i == 0 {
        if let Some(r) = forced_root {
            return attempt(r, image, used);
        }
    }
    match step.anchor {
        Some(a) => {
            let anchor_image = image[a];
            for &c in g.neighbors(anchor_image) {
                if attempt(c, image, used) {
                    return true;
                }
            }
            false
        }
        None => (0..g.n()).any(|c| attempt(c, image, used)),
    }
}

/// Least induced embedding of `pattern` in `g` (indexed by pattern vertex).
pub fn find_induced(g: &Graph, pattern: &Pattern) -> Option<Vec<usize>> {
    InducedMatcher::new(pattern.graph()).find(g)
}

/// The first forbidden pattern found, by index into the pattern list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub pattern: usize,
    pub embedding: Vec<usize>,
}

/// `Ok(())` iff `g` contains none of `patterns` as an induced subgraph.
pub fn is_free(g: &Graph, patterns: &[Pattern]) -> Result<(), Witness> {
    for (i, p) in patterns.iter().enumerate() {
        if let Some(embedding) = find_induced(g, p) {
            return Err(Witness { pattern: i, embedding });
        }
    }
    Ok(())
}

/// An induced simple tree `T_k` in a host graph. `middles[i]` is adjacent to
/// the centre and to `leaves[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleTreeCopy {
    pub center: usize,
    pub middles: Vec<usize>,
    pub leaves: Vec<usize>,
}

impl SimpleTreeCopy {
    pub fn k(&self) -> usize {
        self.middles.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.center];
        vs.extend(&self.middles);
        vs.extend(&self.leaves);
        vs
    }
}

/// All `(a, b)` with `a ~ u`, `b ~ a`, and `b` outside the closed neighbourhood of `u`.
fn branch_pairs(g: &Graph, u: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for &a in g.neighbors(u) {
        for &b in g.neighbors(a) {
            if b != u && !g.has_edge(u, b) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn pairs_compatible(g: &Graph, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    a != c
        && b != d
        && a != d
        && b != c
        && !g.has_edge(a, c)
        && !g.has_edge(a, d)
        && !g.has_edge(b, c)
        && !g.has_edge(b, d)
}

/// Greedily grows an inclusion-maximal induced simple tree centred at `u`,
/// scanning branch pairs `(a, b)` in ascending order. `None` if no induced
/// `T_1` is centred there.
pub fn find_max_simple_tree(g: &Graph, u: usize) -> Option<SimpleTreeCopy> {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for pair in branch_pairs(g, u) {
        if chosen.iter().all(|&q| pairs_compatible(g, pair, q)) {
            chosen.push(pair);
        }
    }
    if chosen.is_empty() {
        return None;
    }
    Some(SimpleTreeCopy {
        center: u,
        middles: chosen.iter().map(|p| p.0).collect(),
        leaves: chosen.iter().map(|p| p.1).collect(),
    })
}

/// Every inclusion-maximal induced simple tree centred at `u`.
pub fn maximal_simple_trees(g: &Graph, u: usize) -> Vec<SimpleTreeCopy> {
    let pairs = branch_pairs(g, u);
    let m = pairs.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| i != j && pairs_compatible(g, pairs[i], pairs[j])).collect())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    bron_kerbosch(&compat, &mut current, (0..m).collect(), Vec::new(), &mut out);
    out.into_iter()
        .filter(|clique: &Vec<usize>| !clique.is_empty())
        .map(|clique| SimpleTreeCopy {
            center: u,
            middles: clique.iter().map(|&i| pairs[i].0).collect(),
            leaves: clique.iter().map(|&i| pairs[i].1).collect(),
        })
        .collect()
}

fn bron_kerbosch(
    compat: &[Vec<bool>],
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let mut candidates = candidates;
    while let Some(v) = candidates.first().copied() {
        candidates.remove(0);
        current.push(v);
        let next_c = candidates.iter().copied().filter(|&w| compat[v][w]).collect();
        let next_x = excluded.iter().copied().filter(|&w| compat[v][w]).collect();
        bron_kerbosch(compat, current, next_c, next_x, out);
        current.pop();
        excluded.push(v);
    }
}
