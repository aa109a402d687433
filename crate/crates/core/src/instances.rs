//! Test instances and independent oracles: line graphs, exhaustive
//! matching, seeded random class-restricted graphs and planted tree
//! augmentations.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finders::{is_augmenting, AugCandidate, CandidateShape};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{is_free, Pattern};
use crate::solver::{brute_force_mis, BRUTE_FORCE_LIMIT};

/// Largest input to [`max_matching_size`].
pub const MATCHING_LIMIT: usize = 20;
/// Largest graph produced by [`gen_free_random`].
pub const RANDOM_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the edge of the source graph behind vertex `i`.
    pub edges: Vec<(usize, usize)>,
}

/// `L(G)`: one vertex per edge, in ascending `(u, v)` order, adjacent when
/// the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::InvalidParameter("line graph of an edgeless graph".into()));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut links = Vec::new();
    for list in &incident {
        for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                links.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(edges.len(), &links)?;
    Ok(LineGraph { graph, edges })
}

/// `ν(G)` by exhaustive branch and bound; at most [`MATCHING_LIMIT`] vertices.
pub fn max_matching_size(g: &Graph) -> Result<usize> {
    fn rec(adj: &[u32], live: u32, size: usize, best: &mut usize) {
        if size + live.count_ones() as usize / 2 <= *best {
            return;
        }
        *best = (*best).max(size);
        if live == 0 {
            return;
        }
        let v = live.trailing_zeros() as usize;
        let rest = live & !(1 << v);
        let mut partners = adj[v] & rest;
        while partners != 0 {
            let w = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            rec(adj, rest & !(1 << w), size + 1, best);
        }
        rec(adj, rest, size, best);
    }

    let n = g.n();
    if n > MATCHING_LIMIT {
        return Err(Error::TooLarge {
            what: "matching oracle input",
            size: n,
            limit: MATCHING_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let live = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut best = 0;
    rec(&adj, live, 0, &mut best);
    Ok(best)
}

/// Seeded random graph avoiding `patterns` as induced subgraphs.
///
/// Each pair becomes an edge with probability `density`; then, while some
/// pattern occurs, one edge of the found copy (chosen by the seeded
/// generator) is deleted. Fails if a copy without edges is found.
pub fn gen_free_random(n: usize, density: f64, patterns: &[Pattern], seed: u64) -> Result<Graph> {
    if n > RANDOM_LIMIT {
        return Err(Error::TooLarge {
            what: "random graph",
            size: n,
            limit: RANDOM_LIMIT,
        });
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!("density {density} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    let mut g = Graph::from_edges(n, &edges)?;
    loop {
        let Err(w) = is_free(&g, patterns) else {
            return Ok(g);
        };
        let pattern = patterns[w.pattern].graph();
        let inside: Vec<(usize, usize)> = pattern
            .edges()
            .map(|(a, b)| {
                let (x, y) = (w.embedding[a], w.embedding[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        let Some(&drop) = inside.choose(&mut rng) else {
            return Err(Error::BudgetExceeded(format!(
                "pattern {} has no edge to delete",
                patterns[w.pattern]
            )));
        };
        edges.retain(|&e| e != drop);
        g = Graph::from_edges(n, &edges)?;
    }
}

/// Parameters of a planted tree augmentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantSpec {
    /// Number of branches of the simple tree, at least `p + 2`.
    pub k: usize,
    /// Class parameter: the instance is `K(p,p)`-free.
    pub p: usize,
    /// Extra white/black vertex pairs, at most `2p`.
    pub extras: usize,
    /// Extra vertices outside `S` wired at random.
    pub noise: usize,
    pub seed: u64,
}

impl PlantSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::InvalidParameter(format!("p must be at least 2, got {}", self.p)));
        }
        if self.k < self.p + 2 {
            return Err(Error::InvalidParameter(format!(
                "k = {} is below p + 2 = {}",
                self.k,
                self.p + 2
            )));
        }
        if self.extras > 2 * self.p {
            return Err(Error::InvalidParameter(format!(
                "extras = {} exceeds 2p = {}",
                self.extras,
                2 * self.p
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub graph: Graph,
    /// Independent set for which `candidate` is augmenting.
    pub s: VertexSet,
    pub candidate: AugCandidate,
}

/// An `(S(1,1,3), K(p,p))`-free graph with an independent set `S` and a
/// planted augmenting tree extension, so that `α(G) = |S| + 1`.
///
/// The core is `T_k` with black centre `0`, white middles `1..=k` and black
/// leaves `k+1..=2k`; `S` is the set of all white vertices. For `p >= 3` up
/// to `p - 1` extra whites are joined to the centre and every leaf, each
/// with a pendant black of its own, so the tree only augments together with
/// them. Remaining extras are disjoint white-black edges.
///
/// Every white sits in a clique with one private black, and together with
/// the centre these `|S| + 1` cliques cover the base graph. Each noise vertex
/// stays outside `S`, is joined to a whole clique of that cover and then gets
/// up to two further random edges; the cover survives, which caps `α(G)` at
/// `|S| + 1`. Edges that would create a forbidden subgraph are skipped.
pub fn plant_augmenting_tree(spec: &PlantSpec) -> Result<Planted> {
    spec.validate()?;
    let filters = Pattern::class_filters(spec.p)?;
    let planted = build_plant(spec, &filters, spec.seed)?;
    debug_assert!(
        planted.graph.n() > BRUTE_FORCE_LIMIT
            || brute_force_mis(&planted.graph).map(|r| r.0) == Ok(planted.s.len() + 1)
    );
    Ok(planted)
}

fn build_plant(spec: &PlantSpec, filters: &[Pattern], seed: u64) -> Result<Planted> {
    let k = spec.k;
    let linked = if spec.p >= 3 { spec.extras.min(spec.p - 1) } else { 0 };
    let loose = spec.extras - linked;
    let core = 2 * k + 1;
    let n_plain = core + 2 * spec.extras;
    let n = n_plain + spec.noise;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut white = Vec::new();
    let mut black = vec![0];
    for i in 1..=k {
        edges.push((0, i));
        edges.push((i, k + i));
        white.push(i);
        black.push(k + i);
    }
    for j in 0..linked {
        let (x, y) = (core + 2 * j, core + 2 * j + 1);
        edges.push((0, x));
        edges.extend((1..=k).map(|i| (x, k + i)));
        edges.push((x, y));
        white.push(x);
        black.push(y);
    }
    let planted_white = white.clone();
    for j in linked..linked + loose {
        let (x, y) = (core + 2 * j, core + 2 * j + 1);
        edges.push((x, y));
        white.push(x);
    }
    let base = Graph::from_edges(n, &edges)?;
    if let Err(w) = is_free(&base, filters) {
        return Err(Error::InvalidParameter(format!(
            "infeasible plant {spec:?}: contains {} at {:?}",
            filters[w.pattern], w.embedding
        )));
    }
    let s = VertexSet::from_iter(n, white.iter().copied());
    let mut cover: Vec<Vec<usize>> = (1..=k).map(|i| vec![i, k + i]).collect();
    cover.extend((0..spec.extras).map(|j| vec![core + 2 * j, core + 2 * j + 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keeps_class = |edges: &[(usize, usize)]| -> Result<bool> {
        Ok(is_free(&Graph::from_edges(n, edges)?, filters).is_ok())
    };
    for z in n_plain..n {
        let mut hosts: Vec<usize> = (0..cover.len()).collect();
        hosts.shuffle(&mut rng);
        let mut hosted = false;
        for h in hosts {
            let before = edges.len();
            edges.extend(cover[h].iter().map(|&v| (v, z)));
            if keeps_class(&edges)? {
                cover[h].push(z);
                hosted = true;
                break;
            }
            edges.truncate(before);
        }
        if !hosted {
            return Err(Error::InvalidParameter(format!(
                "infeasible plant {spec:?}: noise vertex {z} fits no clique of the cover"
            )));
        }
        let extra = rng.random_range(0..=2usize);
        let mut others: Vec<usize> = (0..z).filter(|&v| !edges.contains(&(v, z))).collect();
        others.shuffle(&mut rng);
        let mut added = 0;
        for v in others {
            if added == extra {
                break;
            }
            edges.push((v, z));
            if keeps_class(&edges)? {
                added += 1;
            } else {
                edges.pop();
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    let candidate = AugCandidate {
        white: VertexSet::from_iter(n, planted_white),
        black: VertexSet::from_iter(n, black.iter().copied()),
        shape: CandidateShape::TreeExtension,
    };
    debug_assert_eq!(is_augmenting(&graph, &s, &candidate), Ok(true));
    Ok(Planted { graph, s, candidate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finders::find_tree_extension;
    use crate::graph::is_independent;
    use crate::solver::augment;

    fn named(s: &str) -> Graph {
        s.parse::<Pattern>().unwrap().graph().clone()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn line_graph_examples() {
        assert_eq!(line_graph(&named("P(4)")).unwrap().graph, named("P(3)"));
        assert_eq!(line_graph(&complete(3)).unwrap().graph.m(), 3);
        let lk4 = line_graph(&complete(4)).unwrap();
        assert_eq!((lk4.graph.n(), lk4.graph.m()), (6, 12));
        assert!((0..6).all(|v| lk4.graph.degree(v) == 4));
        assert_eq!(lk4.edges[0], (0, 1));
        assert!(line_graph(&Graph::empty(3)).is_err());
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_matching_size(&complete(4)).unwrap(), 2);
        assert_eq!(max_matching_size(&named("P(5)")).unwrap(), 2);
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let petersen = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(max_matching_size(&petersen).unwrap(), 5);
        assert!(max_matching_size(&Graph::empty(21)).is_err());
    }

    #[test]
    fn random_graphs_are_free() {
        assert_eq!(gen_free_random(1, 0.5, &[], 3).unwrap().n(), 1);
        let claw = vec![Pattern::spider(1, 1, 1).unwrap()];
        for seed in 0..20 {
            let g = gen_free_random(12, 0.4, &claw, seed).unwrap();
            assert!(is_free(&g, &claw).is_ok());
        }
        let class = Pattern::class_filters(3).unwrap();
        for seed in 0..100 {
            let g = gen_free_random(10, 0.35, &class, seed).unwrap();
            assert!(is_free(&g, &class).is_ok());
        }
        assert_eq!(
            gen_free_random(15, 0.3, &class, 7).unwrap(),
            gen_free_random(15, 0.3, &class, 7).unwrap()
        );
        assert!(gen_free_random(201, 0.3, &class, 7).is_err());
        assert!(gen_free_random(5, 1.5, &class, 7).is_err());
    }

    #[test]
    fn plant_examples() {
        let bare = plant_augmenting_tree(&PlantSpec { k: 4, p: 2, extras: 0, noise: 0, seed: 1 }).unwrap();
        assert_eq!(bare.graph, named("T(4)"));
        assert_eq!(bare.s, VertexSet::from_iter(9, 1..=4));
        assert_eq!(brute_force_mis(&bare.graph).unwrap().0, 5);

        let spec = PlantSpec { k: 5, p: 3, extras: 2, noise: 0, seed: 1 };
        let planted = plant_augmenting_tree(&spec).unwrap();
        let cand = find_tree_extension(&planted.graph, &planted.s, 3).unwrap().unwrap();
        let bigger = augment(&planted.graph, &planted.s, &cand).unwrap();
        assert_eq!(bigger.len(), planted.s.len() + 1);
        assert_eq!(brute_force_mis(&planted.graph).unwrap().0, bigger.len());
    }

    #[test]
    fn noisy_plants_keep_their_contract() {
        for seed in 0..10 {
            let spec = PlantSpec { k: 4, p: 2, extras: 2, noise: 3, seed };
            let planted = plant_augmenting_tree(&spec).unwrap();
            let filters = Pattern::class_filters(2).unwrap();
            assert!(is_free(&planted.graph, &filters).is_ok());
            assert!(is_independent(&planted.graph, &planted.s).unwrap());
            assert_eq!(is_augmenting(&planted.graph, &planted.s, &planted.candidate), Ok(true));
            assert_eq!(brute_force_mis(&planted.graph).unwrap().0, planted.s.len() + 1);
        }
    }

    #[test]
    fn plant_spec_is_checked() {
        let spec = PlantSpec { k: 4, p: 3, extras: 0, noise: 0, seed: 0 };
        assert!(plant_augmenting_tree(&spec).is_err());
        let spec = PlantSpec { k: 5, p: 2, extras: 5, noise: 0, seed: 0 };
        assert!(plant_augmenting_tree(&spec).is_err());
    }
}
