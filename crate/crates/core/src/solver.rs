//! Maximum independent set by repeated augmentation, and an exact
//! branch-and-bound oracle.

use std::path::Path;

use crate::error::{Error, Result};
use crate::finders::{
    find_augmenting_path, find_tree_extension, is_augmenting, AugCandidate, CandidateShape,
    CatalogSearch,
};
use crate::graph::{Graph, VertexSet};
use crate::irreducible::{enumerate_irreducible, Catalog};
use crate::patterns::{is_free, Pattern};

/// Largest graph accepted by [`brute_force_mis`].
pub const BRUTE_FORCE_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// The input is expected to be `K(p,p)`-free; `p >= 2`.
    pub p: usize,
    /// Vertex bound of the irreducible catalog; at least 3.
    pub catalog_n_max: usize,
    /// Longest augmenting path searched, in edges; `None` is unbounded.
    pub path_max_len: Option<usize>,
    /// Check the input for `S(1,1,3)` and `K(p,p)` before solving.
    pub validate_class: bool,
}

impl SolveConfig {
    pub fn new(p: usize) -> Self {
        SolveConfig {
            p,
            catalog_n_max: 11,
            path_max_len: None,
            validate_class: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::InvalidParameter(format!("p must be at least 2, got {}", self.p)));
        }
        if self.catalog_n_max < 3 {
            return Err(Error::InvalidParameter(format!(
                "catalog bound must be at least 3, got {}",
                self.catalog_n_max
            )));
        }
        Ok(())
    }

    /// Patterns an irreducible catalog entry must avoid: longer paths and
    /// big simple trees are handled by the other finders, and `K(p,p)`
    /// cannot occur in the input.
    pub fn catalog_filters(&self) -> Result<Vec<Pattern>> {
        Ok(vec![
            Pattern::path(8)?,
            Pattern::simple_tree(self.p + 2)?,
            Pattern::biclique(self.p, self.p)?,
        ])
    }
}

/// Augmentations performed by each finder.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinderHits {
    pub path: usize,
    pub tree: usize,
    pub catalog: usize,
}

/// An induced copy of a forbidden pattern found in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pattern: String,
    /// Host vertices, in the pattern's vertex order.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub independent_set: VertexSet,
    pub alpha: usize,
    pub iterations: usize,
    pub hits: FinderHits,
    pub violations: Vec<Violation>,
}

/// Independent set chosen greedily in ascending id order.
pub fn greedy_initial(g: &Graph) -> VertexSet {
    let mut s = VertexSet::new(g.n());
    for v in 0..g.n() {
        if g.neighbors(v).iter().all(|&w| !s.contains(w)) {
            s.insert(v);
        }
    }
    s
}

/// `(S \ W) ∪ B`; errors unless `cand` is augmenting for `s`.
pub fn augment(g: &Graph, s: &VertexSet, cand: &AugCandidate) -> Result<VertexSet> {
    if !is_augmenting(g, s, cand)? {
        return Err(Error::Precondition("candidate is not augmenting".into()));
    }
    let mut out = VertexSet::from_iter(g.n(), s.iter());
    for w in cand.white.iter() {
        out.remove(w);
    }
    for b in cand.black.iter() {
        out.insert(b);
    }
    Ok(out)
}

pub struct Solver {
    cfg: SolveConfig,
    catalog: Catalog,
    search: CatalogSearch,
}

impl Solver {
    /// Enumerates the catalog in memory.
    pub fn new(cfg: SolveConfig) -> Result<Self> {
        cfg.validate()?;
        let catalog = enumerate_irreducible(cfg.catalog_n_max, &cfg.catalog_filters()?)?;
        Ok(Self::assemble(cfg, catalog))
    }

    /// Reads the catalog from `dir`, enumerating and storing it if absent.
    pub fn with_cache_dir(cfg: SolveConfig, dir: &Path) -> Result<Self> {
        cfg.validate()?;
        let catalog = Catalog::load_or_build(dir, cfg.catalog_n_max, &cfg.catalog_filters()?)?;
        Ok(Self::assemble(cfg, catalog))
    }

    pub fn with_catalog(cfg: SolveConfig, catalog: Catalog) -> Result<Self> {
        cfg.validate()?;
        Ok(Self::assemble(cfg, catalog))
    }

    fn assemble(cfg: SolveConfig, catalog: Catalog) -> Self {
        let search = CatalogSearch::new(&catalog);
        Solver {
            cfg,
            catalog,
            search,
        }
    }

    pub fn config(&self) -> &SolveConfig {
        &self.cfg
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// Greedy start, then path, tree-extension and catalog augmentations in
    /// that order until none applies.
    ///
    /// Inputs outside the class are still solved on a best-effort basis: the
    /// returned set is always independent, and every forbidden copy noticed
    /// on the way is reported in `violations`.
    pub fn solve(&self, g: &Graph) -> Result<SolveResult> {
        let mut violations = Vec::new();
        if self.cfg.validate_class {
            let filters = Pattern::class_filters(self.cfg.p)?;
            if let Err(w) = is_free(g, &filters) {
                violations.push(Violation {
                    pattern: filters[w.pattern].to_string(),
                    witness: w.embedding,
                });
            }
        }
        let mut s = greedy_initial(g);
        let mut hits = FinderHits::default();
        let mut iterations = 0;
        loop {
            let cand = if let Some(c) = find_augmenting_path(g, &s, self.cfg.path_max_len) {
                hits.path += 1;
                Some(c)
            } else {
                let tree = match find_tree_extension(g, &s, self.cfg.p) {
                    Ok(found) => found,
                    Err(Error::ClassViolation { witness }) => {
                        let v = Violation {
                            pattern: "S(1,1,3)".into(),
                            witness,
                        };
                        if !violations.contains(&v) {
                            violations.push(v);
                        }
                        None
                    }
                    Err(e) => return Err(e),
                };
                if let Some(c) = tree {
                    hits.tree += 1;
                    Some(c)
                } else if let Some(c) = self.search.find(g, &s) {
                    hits.catalog += 1;
                    Some(c)
                } else {
                    None
                }
            };
            let Some(cand) = cand else { break };
            debug_assert!(matches!(
                cand.shape,
                CandidateShape::Path | CandidateShape::TreeExtension | CandidateShape::Catalog(_)
            ));
            let before = s.len();
            s = augment(g, &s, &cand)?;
            assert!(s.len() > before);
            iterations += 1;
            assert!(iterations <= g.n(), "more augmentations than vertices");
        }
        Ok(SolveResult {
            alpha: s.len(),
            independent_set: s,
            iterations,
            hits,
            violations,
        })
    }
}

/// One-shot solve with an in-memory catalog.
pub fn solve_mis(g: &Graph, cfg: &SolveConfig) -> Result<SolveResult> {
    Solver::new(cfg.clone())?.solve(g)
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Independence number of the subgraph induced by `mask`.
fn alpha_of(adj: &[u64], mask: u64) -> usize {
    fn rec(adj: &[u64], mask: u64, size: usize, best: &mut usize) {
        if mask == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + (mask.count_ones() as usize) <= *best {
            return;
        }
        // a vertex of degree at most one inside `mask` is always safe to take
        let mut rest = mask;
        let mut pivot = None;
        let mut pivot_degree = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & mask).count_ones();
            if d <= 1 {
                rec(adj, mask & !(1 << v) & !adj[v], size + 1, best);
                return;
            }
            if pivot.is_none() || d > pivot_degree {
                pivot = Some(v);
                pivot_degree = d;
            }
        }
        let v = pivot.expect("mask is non-empty");
        rec(adj, mask & !(1 << v) & !adj[v], size + 1, best);
        rec(adj, mask & !(1 << v), size, best);
    }
    let mut best = 0;
    rec(adj, mask, 0, &mut best);
    best
}

/// Exact `α(G)` with the lexicographically least maximum independent set.
/// Limited to [`BRUTE_FORCE_LIMIT`] vertices.
pub fn brute_force_mis(g: &Graph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute-force independent set input",
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let adj = masks(g);
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let alpha = alpha_of(&adj, all);
    let mut chosen = VertexSet::new(n);
    let mut allowed = all;
    let mut need = alpha;
    while need > 0 {
        let mut rest = allowed;
        loop {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let after = allowed & !(1u64 << v) & !adj[v] & !((1u64 << v) - 1);
            if alpha_of(&adj, after) + 1 == need {
                chosen.insert(v);
                allowed = after;
                need -= 1;
                break;
            }
        }
    }
    Ok((alpha, chosen))
}
