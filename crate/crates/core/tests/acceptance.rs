//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use augmis::enumerate::{Generator, Shape};
use augmis::finders::{find_tree_extension, is_augmenting};
use augmis::instances::{line_graph, max_matching_size, plant_augmenting_tree, PlantSpec};
use augmis::irreducible::{
    bipartite_ramsey_bound, enumerate_irreducible, hall_surplus_check, is_irreducible,
    verify_min_classes, ColoredBipartite,
};
use augmis::solver::{augment, brute_force_mis, SolveConfig, Solver};
use augmis::verify::{verify_anatomy_statements, verify_path_or_cycle};
use augmis::{Graph, Pattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// Does `g` contain `h` as an induced subgraph? Tries every injective map.
fn contains_induced(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == h.n() {
            return true;
        }
        for v in 0..g.n() {
            if !map.contains(&v) && (0..i).all(|j| h.has_edge(i, j) == g.has_edge(v, map[j])) {
                map.push(v);
                if extend(g, h, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    extend(g, h, &mut Vec::new())
}

/// Strict Hall surplus by trying every nonempty subset of whites.
fn hall_by_subsets(whites: &[usize], nbr: &[u32]) -> bool {
    (1u32..1 << whites.len()).all(|a| {
        let reach = (0..whites.len())
            .filter(|&i| a >> i & 1 == 1)
            .fold(0u32, |m, i| m | nbr[i]);
        reach.count_ones() > a.count_ones()
    })
}

/// Largest matching between `rows` and columns given as bitmasks.
fn matching_by_search(rows: &[u32], used: u32) -> usize {
    let Some((first, rest)) = rows.split_first() else { return 0 };
    let mut best = matching_by_search(rest, used);
    let mut free = first & !used;
    while free != 0 {
        let c = free.trailing_zeros();
        best = best.max(1 + matching_by_search(rest, used | 1 << c));
        free &= free - 1;
    }
    best
}

fn colored(n: usize, white: &[usize], edges: &[(usize, usize)]) -> ColoredBipartite {
    ColoredBipartite::from_edges(n, white, edges).unwrap()
}

fn criterion_oracle_sweep() -> Check {
    let filters = Pattern::class_filters(3).unwrap();
    let levels = Generator::new(Shape::General, 9).forbid(&filters).run();
    let cfg = SolveConfig {
        catalog_n_max: 9,
        ..SolveConfig::new(3)
    };
    let solver = Solver::new(cfg).map_err(|e| e.to_string())?;
    let mut total = 0;
    let mut mismatches = Vec::new();
    for g in levels.iter().flatten().map(|s| s.graph()) {
        if augmis::patterns::is_free(&g, &filters).is_err() {
            return Err(format!("enumerated graph outside the class: {g:?}"));
        }
        total += 1;
        let got = solver.solve(&g).map_err(|e| e.to_string())?;
        let (alpha, _) = brute_force_mis(&g).map_err(|e| e.to_string())?;
        if got.alpha != alpha || !augmis::graph::is_independent(&g, &got.independent_set).unwrap() {
            mismatches.push(format!("{g:?}: solver {} oracle {alpha}", got.alpha));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{total} graphs, all exact"))
    } else {
        Err(format!("{} of {total} mismatched, first {}", mismatches.len(), mismatches[0]))
    }
}

fn criterion_line_graphs() -> Check {
    let solver = Solver::new(SolveConfig::new(3)).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_016);
    let mut bad = Vec::new();
    let mut tested = 0;
    while tested < 1000 {
        let n = rng.random_range(6..=14);
        let density = rng.random_range(0.1..0.5);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        tested += 1;
        let g = Graph::from_edges(n, &edges).unwrap();
        let lg = line_graph(&g).map_err(|e| e.to_string())?;
        let alpha = solver.solve(&lg.graph).map_err(|e| e.to_string())?.alpha;
        let nu = max_matching_size(&g).map_err(|e| e.to_string())?;
        if alpha != nu {
            bad.push(format!("{g:?}: alpha(L) {alpha} matching {nu}"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{tested} line graphs, all equal to the matching size"))
    } else {
        Err(format!("{} mismatches, first {}", bad.len(), bad[0]))
    }
}

fn criterion_families() -> Check {
    let mut wrong = Vec::new();
    for k in 1..=6usize {
        let path_odd = colored(
            2 * k + 1,
            &(0..k).map(|i| 2 * i + 1).collect::<Vec<_>>(),
            &(1..=2 * k).map(|v| (v - 1, v)).collect::<Vec<_>>(),
        );
        let biclique = colored(
            2 * k + 1,
            &(0..k).collect::<Vec<_>>(),
            &(0..k).flat_map(|w| (k..2 * k + 1).map(move |b| (w, b))).collect::<Vec<_>>(),
        );
        let tree = colored(
            2 * k + 1,
            &(1..=k).collect::<Vec<_>>(),
            &(1..=k).flat_map(|i| [(0, i), (i, k + i)]).collect::<Vec<_>>(),
        );
        for (name, h) in [("P", path_odd), ("K", biclique), ("T", tree)] {
            if !is_irreducible(&h) {
                wrong.push(format!("{name} k={k} rejected"));
            }
        }
        let evens = (0..2 * k).filter(|v| v % 2 == 0).collect::<Vec<_>>();
        let odds = (0..2 * k).filter(|v| v % 2 == 1).collect::<Vec<_>>();
        let path_even: Vec<_> = (1..2 * k).map(|v| (v - 1, v)).collect();
        for white in [&evens, &odds] {
            if is_irreducible(&colored(2 * k, white, &path_even)) {
                wrong.push(format!("P{} accepted", 2 * k));
            }
            if k >= 2 {
                let mut cycle = path_even.clone();
                cycle.push((0, 2 * k - 1));
                if is_irreducible(&colored(2 * k, white, &cycle)) {
                    wrong.push(format!("C{} accepted", 2 * k));
                }
            }
        }
    }
    if wrong.is_empty() {
        Ok("all family members classified as expected for k = 1..6".into())
    } else {
        Err(wrong.join("; "))
    }
}

fn criterion_hall() -> Check {
    let mut checked = 0usize;
    for n in 1..=8usize {
        for w in 0..=n {
            let b = n - w;
            let pairs: Vec<(usize, usize)> = (0..w).flat_map(|x| (w..n).map(move |y| (x, y))).collect();
            let whites: Vec<usize> = (0..w).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let nbr: Vec<u32> = (0..w)
                    .map(|x| edges.iter().filter(|e| e.0 == x).fold(0, |m, e| m | 1 << (e.1 - w)))
                    .collect();
                let h = colored(n, &whites, &edges);
                if hall_surplus_check(&h) != hall_by_subsets(&whites, &nbr) {
                    return Err(format!("disagreement at w={w} b={b} edges {edges:?}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} labelled coloured bipartite graphs agree"))
}

fn criterion_path_or_cycle() -> Check {
    let r = verify_path_or_cycle(11).map_err(|e| e.to_string())?;
    let found: Vec<String> = r.found.iter().map(|(n, v)| format!("{n}:{}", v.join("/"))).collect();
    if r.violations.is_empty() {
        Ok(format!("0 violations; found {}", found.join(" ")))
    } else {
        Err(format!("{} violations, first {}", r.violations.len(), r.violations[0]))
    }
}

fn criterion_anatomy() -> Check {
    let r = verify_anatomy_statements(11, 3).map_err(|e| e.to_string())?;
    let graphs: usize = r.graphs.values().sum();
    let trees: usize = r.trees.values().sum();
    if r.violations.is_empty() {
        Ok(format!("0 violations over {graphs} graphs and {trees} maximal trees"))
    } else {
        let v = &r.violations[0];
        Err(format!("{} violations, first {} fails {:?}", r.violations.len(), v.graph, v.statements))
    }
}

fn criterion_planted() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5_102);
    let mut done = 0;
    for i in 0..200u64 {
        let p = [2, 3][rng.random_range(0..2)];
        let spec = PlantSpec {
            k: rng.random_range(4.max(p + 2)..=6),
            p,
            extras: rng.random_range(0..=2 * p),
            noise: rng.random_range(0..=3),
            seed: 1_000 + i,
        };
        let planted = plant_augmenting_tree(&spec).map_err(|e| format!("{spec:?}: {e}"))?;
        let (g, s) = (&planted.graph, &planted.s);
        let cand = find_tree_extension(g, s, p)
            .map_err(|e| format!("{spec:?}: {e}"))?
            .ok_or_else(|| format!("{spec:?}: no candidate found"))?;
        if !is_augmenting(g, s, &cand).unwrap() {
            return Err(format!("{spec:?}: candidate is not augmenting"));
        }
        let after = augment(g, s, &cand).map_err(|e| e.to_string())?;
        let (alpha, _) = brute_force_mis(g).map_err(|e| e.to_string())?;
        if after.len() != s.len() + 1 || alpha != s.len() + 1 {
            return Err(format!(
                "{spec:?}: |S| {} after {} alpha {alpha}",
                s.len(),
                after.len()
            ));
        }
        done += 1;
    }
    Ok(format!("{done} planted instances augmented to the optimum"))
}

fn criterion_census() -> Check {
    let filters = [
        Pattern::path(8).unwrap(),
        Pattern::simple_tree(4).unwrap(),
        Pattern::biclique(3, 3).unwrap(),
    ];
    let first = enumerate_irreducible(9, &filters).map_err(|e| e.to_string())?;
    let second = enumerate_irreducible(9, &filters).map_err(|e| e.to_string())?;
    if first.to_text() != second.to_text() {
        return Err("re-run produced a different catalog".into());
    }
    let kept: HashSet<&Vec<u8>> = first.entries().iter().map(|e| &e.code).collect();
    for e in first.entries() {
        if filters.iter().any(|f| contains_induced(e.graph.graph(), f.graph())) {
            return Err(format!("catalog entry contains a filter: {:?}", e.graph.graph()));
        }
    }
    let all = enumerate_irreducible(9, &[]).map_err(|e| e.to_string())?;
    let mut excluded = 0;
    for e in all.entries().iter().filter(|e| !kept.contains(&e.code)) {
        excluded += 1;
        if !filters.iter().any(|f| contains_induced(e.graph.graph(), f.graph())) {
            return Err(format!("excluded without reason: {:?}", e.graph.graph()));
        }
    }
    if all.len() != first.len() + excluded {
        return Err("catalog is not a subset of all irreducible graphs".into());
    }
    let report = verify_min_classes(9, 4).map_err(|e| e.to_string())?;
    if !report.is_clean() {
        return Err(format!("{} classification misses", report.misses.len()));
    }
    let census: Vec<String> = first.census().iter().map(|(n, c)| format!("{n}:{c}")).collect();
    Ok(format!(
        "census {}; {excluded} excluded graphs each contain a filter; 0 misses",
        census.join(" ")
    ))
}

fn criterion_ramsey() -> Check {
    let a = bipartite_ramsey_bound(2, 2).map_err(|e| e.to_string())?;
    let b = bipartite_ramsey_bound(2, 2).map_err(|e| e.to_string())?;
    if a != b {
        return Err("unstable across runs".into());
    }
    let n = a.n;
    let biclique = Pattern::biclique(2, 2).unwrap();
    let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    let w = a.witness.graph();
    let rows: Vec<u32> = a
        .witness
        .white()
        .iter()
        .map(|x| w.neighbors(x).iter().fold(0, |m, &y| m | 1 << y))
        .collect();
    if matching_by_search(&rows, 0) != n - 1
        || contains_induced(w, biclique.graph())
        || contains_induced(w, &two_edges)
    {
        return Err(format!("witness {w:?} does not certify N = {n}"));
    }
    // every bipartite graph with a matching of size n contains one of the two
    for side in n..=n + 1 {
        for mask in 0u32..1 << (side * side) {
            let rows: Vec<u32> = (0..side).map(|i| mask >> (i * side) & ((1 << side) - 1)).collect();
            if matching_by_search(&rows, 0) < n {
                continue;
            }
            let rows = &rows;
            let edges: Vec<(usize, usize)> = (0..side)
                .flat_map(move |i| (0..side).filter(move |&j| rows[i] >> j & 1 == 1).map(move |j| (i, side + j)))
                .collect();
            let g = Graph::from_edges(2 * side, &edges).unwrap();
            if !contains_induced(&g, biclique.graph()) && !contains_induced(&g, &two_edges) {
                return Err(format!("{g:?} has a matching of size {n} but avoids both"));
            }
        }
    }
    Ok(format!("N(2,2) = {n}, witness {w:?}, confirmed on all {n}+{n} and {0}+{0} bipartite graphs", n + 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 oracle sweep, connected class graphs n <= 9", criterion_oracle_sweep),
        ("2 line graphs vs matching size", criterion_line_graphs),
        ("3 irreducible families k = 1..6", criterion_families),
        ("4 Hall surplus vs subset check, n <= 8", criterion_hall),
        ("5 induced P8 forces a path or cycle, n <= 11", criterion_path_or_cycle),
        ("6 anatomy of maximal simple trees, n <= 11", criterion_anatomy),
        ("7 planted tree extensions", criterion_planted),
        ("8 irreducible census n <= 9", criterion_census),
        ("9 bipartite Ramsey bound (2,2)", criterion_ramsey),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
