use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use augmis::instances::{self, PlantSpec};
use augmis::io::{parse_dimacs, read_dimacs_file, write_dimacs};
use augmis::irreducible::{
    bipartite_ramsey_bound, enumerate_irreducible, verify_min_classes, Catalog,
};
use augmis::patterns::parse_pattern_list;
use augmis::solver::{brute_force_mis, SolveConfig, SolveResult, Solver};
use augmis::{verify, Error, Graph, Pattern};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const CATALOG_ENV: &str = "AUGMIS_CATALOG_DIR";

#[derive(Parser)]
#[command(name = "augmis", version, about = "Maximum independent sets in (S(1,1,3), K(p,p))-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a maximum independent set by augmentation.
    Solve(SolveArgs),
    /// Enumerate irreducible graphs and write the catalog.
    Atlas(AtlasArgs),
    /// Check a structural statement exhaustively on small graphs.
    Verify(VerifyArgs),
    /// Write a test instance in DIMACS format.
    Gen(GenArgs),
    /// Exact brute-force values for a graph.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS file, or a named graph such as C5, K4, Petersen or T(4).
    input: String,
    #[arg(long, default_value_t = 3)]
    p: usize,
    /// Vertex bound of the irreducible catalog.
    #[arg(long, default_value_t = 11)]
    catalog_n_max: usize,
    /// Catalog file, or a directory caching catalogs (default: $AUGMIS_CATALOG_DIR).
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Longest augmenting path to search, in edges.
    #[arg(long)]
    max_path_len: Option<usize>,
    /// Check the input for forbidden subgraphs; exit 2 if any is found.
    #[arg(long)]
    validate_class: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long)]
    n_max: usize,
    /// Forbidden induced subgraphs, e.g. "P(8),T(4),K(3,3)"; none if omitted.
    #[arg(long, default_value = "")]
    filters: String,
    /// Output file; the catalog goes to stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Statement {
    PathOrCycle,
    Anatomy,
    Extension,
    MinClasses,
    Ramsey,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which statement to check.
    #[arg(long, value_enum)]
    lemma: Statement,
    /// Vertex bound of the enumeration.
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Smallest tree size inspected by the anatomy check.
    #[arg(long, default_value_t = 3)]
    k_min: usize,
    /// Biclique parameter for extension and ramsey.
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Size parameter for min-classes and ramsey.
    #[arg(long, default_value_t = 2)]
    t: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("kind").required(true)))]
struct GenArgs {
    /// Line graph of a DIMACS file or named graph.
    #[arg(long, group = "kind")]
    line_graph: Option<String>,
    /// Planted tree augmentation, e.g. "k=5,p=3,extras=2,noise=4".
    #[arg(long, group = "kind")]
    plant: Option<String>,
    /// Random class-restricted graph on this many vertices.
    #[arg(long, value_name = "N", group = "kind")]
    random: Option<usize>,
    /// Edge probability for --random.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Patterns kept out of --random graphs.
    #[arg(long, default_value = "S(1,1,3),K(3,3)")]
    forbid: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("value").required(true)))]
struct OracleArgs {
    /// Independence number and a maximum independent set.
    #[arg(long, value_name = "GRAPH", group = "value")]
    mis: Option<String>,
    /// Maximum matching size.
    #[arg(long, value_name = "GRAPH", group = "value")]
    matching: Option<String>,
}

/// One line on stderr describing what a run did.
#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    inputs: Vec<String>,
    config: Value,
    seed: Option<u64>,
    version: &'static str,
    elapsed_ms: f64,
    result: Value,
}

#[derive(Serialize)]
struct Finders {
    path: usize,
    tree: usize,
    catalog: usize,
}

#[derive(Serialize)]
struct ViolationOut {
    pattern: String,
    witness: Vec<usize>,
}

#[derive(Serialize)]
struct SolveOut {
    alpha: usize,
    set: Vec<usize>,
    iterations: usize,
    finders: Finders,
    violations: Vec<ViolationOut>,
}

impl From<&SolveResult> for SolveOut {
    fn from(r: &SolveResult) -> Self {
        SolveOut {
            alpha: r.alpha,
            set: r.independent_set.to_vec(),
            iterations: r.iterations,
            finders: Finders {
                path: r.hits.path,
                tree: r.hits.tree,
                catalog: r.hits.catalog,
            },
            violations: r
                .violations
                .iter()
                .map(|v| ViolationOut {
                    pattern: v.pattern.clone(),
                    witness: v.witness.clone(),
                })
                .collect(),
        }
    }
}

/// What a subcommand reports back to `main`.
struct Outcome {
    code: u8,
    summary: Value,
}

impl Outcome {
    fn ok(summary: Value) -> Self {
        Outcome { code: 0, summary }
    }
}

struct Run {
    command: &'static str,
    inputs: Vec<String>,
    config: Value,
    seed: Option<u64>,
}

fn named_graph(name: &str) -> Option<Graph> {
    if name.eq_ignore_ascii_case("petersen") {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.extend([(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
        }
        return Graph::from_edges(10, &edges).ok();
    }
    if let Ok(p) = name.parse::<Pattern>() {
        return Some(p.graph().clone());
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: usize = tail.parse().ok()?;
    let edges: Vec<(usize, usize)> = match head {
        "K" => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        "P" => (1..n).map(|v| (v - 1, v)).collect(),
        "C" if n >= 3 => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        "E" => Vec::new(),
        _ => return None,
    };
    Graph::from_edges(n, &edges).ok()
}

/// Reads a DIMACS file, falling back to a named graph when no such file exists.
fn load_graph(arg: &str) -> Result<Graph, Error> {
    let path = Path::new(arg);
    if path.exists() {
        return read_dimacs_file(path);
    }
    named_graph(arg).ok_or_else(|| Error::Io(format!("{arg}: no such file and not a known graph name")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn census_text(census: &std::collections::BTreeMap<usize, usize>) -> String {
    census.iter().map(|(n, c)| format!("{n}:{c}")).collect::<Vec<_>>().join(" ")
}

fn solve(args: &SolveArgs, run: &mut Run) -> Result<Outcome, Error> {
    run.inputs.push(args.input.clone());
    let g = load_graph(&args.input)?;
    let cfg = SolveConfig {
        catalog_n_max: args.catalog_n_max,
        path_max_len: args.max_path_len,
        validate_class: args.validate_class,
        ..SolveConfig::new(args.p)
    };
    let catalog = args.catalog.clone().or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    run.config = json!({
        "p": cfg.p,
        "catalog_n_max": cfg.catalog_n_max,
        "max_path_len": cfg.path_max_len,
        "validate_class": cfg.validate_class,
        "catalog": catalog.as_ref().map(|c| c.display().to_string()),
    });
    let solver = match &catalog {
        Some(path) if path.is_file() => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Solver::with_catalog(cfg, Catalog::from_text(&text)?)?
        }
        Some(dir) => Solver::with_cache_dir(cfg, dir)?,
        None => Solver::new(cfg)?,
    };
    let result = solver.solve(&g)?;
    let out = SolveOut::from(&result);
    if args.json {
        println!("{}", serde_json::to_string(&out).expect("plain data serializes"));
    } else {
        println!("alpha {}", out.alpha);
        println!(
            "set {}",
            out.set.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        );
        println!("iterations {}", out.iterations);
        println!(
            "finders path={} tree={} catalog={}",
            out.finders.path, out.finders.tree, out.finders.catalog
        );
        for v in &out.violations {
            println!("violation {} at {:?}", v.pattern, v.witness);
        }
    }
    for v in &out.violations {
        eprintln!("warning: input contains an induced {} at {:?}", v.pattern, v.witness);
    }
    let code = if args.validate_class && !out.violations.is_empty() { 2 } else { 0 };
    Ok(Outcome {
        code,
        summary: json!({
            "alpha": out.alpha,
            "iterations": out.iterations,
            "violations": out.violations.len(),
        }),
    })
}

fn atlas(args: &AtlasArgs, run: &mut Run) -> Result<Outcome, Error> {
    let filters = parse_pattern_list(&args.filters)?;
    run.config = json!({
        "n_max": args.n_max,
        "filters": filters.iter().map(Pattern::to_string).collect::<Vec<_>>(),
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    });
    let catalog = enumerate_irreducible(args.n_max, &filters)?;
    let census = census_text(&catalog.census());
    emit(args.out.as_deref(), &catalog.to_text())?;
    if args.out.is_some() {
        println!("census {census}");
    } else {
        eprintln!("census {census}");
    }
    Ok(Outcome::ok(json!({ "entries": catalog.len(), "census": census })))
}

fn verify(args: &VerifyArgs, run: &mut Run) -> Result<Outcome, Error> {
    let (name, violations, summary) = match args.lemma {
        Statement::PathOrCycle => {
            run.config = json!({ "n_max": args.n_max });
            let r = verify::verify_path_or_cycle(args.n_max)?;
            for (n, names) in &r.found {
                println!("n={n}: {}", names.join(", "));
            }
            for v in &r.violations {
                println!("violation: {v}");
            }
            ("path-or-cycle", r.violations.len(), json!({ "found": r.found }))
        }
        Statement::Anatomy => {
            run.config = json!({ "n_max": args.n_max, "k_min": args.k_min });
            let r = verify::verify_anatomy_statements(args.n_max, args.k_min)?;
            println!("graphs by order: {}", census_text(&r.graphs));
            println!("maximal trees by size: {}", census_text(&r.trees));
            for v in &r.violations {
                println!(
                    "violation: {} centre {} fails {}",
                    v.graph,
                    v.tree.center,
                    v.statements.join(",")
                );
            }
            ("anatomy", r.violations.len(), json!({ "graphs": r.graphs, "trees": r.trees }))
        }
        Statement::Extension => {
            run.config = json!({ "n_max": args.n_max, "p": args.p });
            let r = verify::verify_extension_bound(args.p, args.n_max)?;
            println!("graphs with a large tree by order: {}", census_text(&r.graphs));
            for v in &r.violations {
                println!("violation: {v}");
            }
            ("extension", r.violations.len(), json!({ "graphs": r.graphs }))
        }
        Statement::MinClasses => {
            run.config = json!({ "n_max": args.n_max, "t": args.t });
            let r = verify_min_classes(args.n_max, args.t)?;
            println!("irreducible by order: {}", census_text(&r.irreducible));
            println!("pattern-free by order: {}", census_text(&r.free));
            for code in &r.misses {
                println!("miss: {}", code.iter().map(|b| format!("{b:02x}")).collect::<String>());
            }
            ("min-classes", r.misses.len(), json!({ "irreducible": r.irreducible, "free": r.free }))
        }
        Statement::Ramsey => {
            run.config = json!({ "t": args.t, "p": args.p });
            let r = bipartite_ramsey_bound(args.t, args.p)?;
            println!("N({},{}) = {}", args.t, args.p, r.n);
            println!("graphs per matching size: {:?}", r.counts);
            println!("witness {}", verify::describe(r.witness.graph()));
            ("ramsey", 0, json!({ "n": r.n, "counts": r.counts }))
        }
    };
    println!("{name}: {violations} violations");
    let mut summary = summary;
    summary["violations"] = json!(violations);
    Ok(Outcome {
        code: u8::from(violations > 0),
        summary,
    })
}

fn parse_plant(text: &str, seed: Option<u64>) -> Result<PlantSpec, Error> {
    let mut spec = PlantSpec {
        k: 0,
        p: 0,
        extras: 0,
        noise: 0,
        seed: seed.unwrap_or(0),
    };
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::InvalidParameter(format!("bad plant parameter {part:?}"));
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "k" => spec.k = value,
            "p" => spec.p = value,
            "extras" => spec.extras = value,
            "noise" => spec.noise = value,
            _ => return Err(bad()),
        }
    }
    if spec.k == 0 || spec.p == 0 {
        return Err(Error::InvalidParameter("plant needs both k and p".into()));
    }
    if spec.noise > 0 && seed.is_none() {
        return Err(Error::InvalidParameter("a plant with noise needs --seed".into()));
    }
    Ok(spec)
}

fn one_based(ids: impl Iterator<Item = usize>) -> String {
    ids.map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn gen(args: &GenArgs, run: &mut Run) -> Result<Outcome, Error> {
    run.seed = args.seed;
    let text = if let Some(source) = &args.line_graph {
        run.inputs.push(source.clone());
        run.config = json!({ "line_graph": source });
        let lg = instances::line_graph(&load_graph(source)?)?;
        let mut text = String::from("c line graph; vertex i is edge\n");
        for (i, (u, v)) in lg.edges.iter().enumerate() {
            text.push_str(&format!("c   {} = {} {}\n", i + 1, u + 1, v + 1));
        }
        text + &write_dimacs(&lg.graph)
    } else if let Some(plant) = &args.plant {
        let spec = parse_plant(plant, args.seed)?;
        run.config = json!({ "k": spec.k, "p": spec.p, "extras": spec.extras, "noise": spec.noise });
        let planted = instances::plant_augmenting_tree(&spec)?;
        format!(
            "c planted independent set {}\nc augmenting whites {}\nc augmenting blacks {}\n{}",
            one_based(planted.s.iter()),
            one_based(planted.candidate.white.iter()),
            one_based(planted.candidate.black.iter()),
            write_dimacs(&planted.graph)
        )
    } else {
        let n = args.random.expect("clap enforces one generator");
        let seed = args
            .seed
            .ok_or_else(|| Error::InvalidParameter("--random needs --seed".into()))?;
        let forbid = parse_pattern_list(&args.forbid)?;
        run.config = json!({
            "random": n,
            "density": args.density,
            "forbid": forbid.iter().map(Pattern::to_string).collect::<Vec<_>>(),
        });
        write_dimacs(&instances::gen_free_random(n, args.density, &forbid, seed)?)
    };
    let g = parse_dimacs(&text)?;
    emit(args.out.as_deref(), &text)?;
    Ok(Outcome::ok(json!({ "n": g.n(), "m": g.m() })))
}

fn oracle(args: &OracleArgs, run: &mut Run) -> Result<Outcome, Error> {
    if let Some(source) = &args.mis {
        run.inputs.push(source.clone());
        run.config = json!({ "value": "mis" });
        let (alpha, set) = brute_force_mis(&load_graph(source)?)?;
        println!("{alpha}");
        println!("{}", set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        Ok(Outcome::ok(json!({ "alpha": alpha })))
    } else {
        let source = args.matching.as_ref().expect("clap enforces one value");
        run.inputs.push(source.clone());
        run.config = json!({ "value": "matching" });
        let size = instances::max_matching_size(&load_graph(source)?)?;
        println!("{size}");
        Ok(Outcome::ok(json!({ "matching": size })))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut run = Run {
        command: "",
        inputs: Vec::new(),
        config: Value::Null,
        seed: None,
    };
    let outcome = match &cli.command {
        Command::Solve(a) => {
            run.command = "solve";
            solve(a, &mut run)
        }
        Command::Atlas(a) => {
            run.command = "atlas";
            atlas(a, &mut run)
        }
        Command::Verify(a) => {
            run.command = "verify";
            verify(a, &mut run)
        }
        Command::Gen(a) => {
            run.command = "gen";
            gen(a, &mut run)
        }
        Command::Oracle(a) => {
            run.command = "oracle";
            oracle(a, &mut run)
        }
    };
    let (code, result) = match outcome {
        Ok(o) => (o.code, o.summary),
        Err(e) => {
            eprintln!("error: {e}");
            (1, json!({ "error": e.to_string() }))
        }
    };
    let manifest = RunManifest {
        command: run.command,
        inputs: run.inputs,
        config: run.config,
        seed: run.seed,
        version: env!("CARGO_PKG_VERSION"),
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        result,
    };
    eprintln!("{}", json!({ "manifest": manifest }));
    ExitCode::from(code)
}
