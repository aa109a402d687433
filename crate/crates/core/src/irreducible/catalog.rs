use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{enumerate_irreducible, is_irreducible, ColoredBipartite, BLACK, WHITE};
use crate::enumerate::SmallGraph;
use crate::error::{Error, Result};
use crate::patterns::{is_free, parse_pattern_list, Pattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub code: Vec<u8>,
    pub graph: ColoredBipartite,
}

/// Irreducible graphs up to a vertex bound avoiding a list of patterns,
/// ordered by vertex count and then canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    max_vertices: usize,
    filters: Vec<Pattern>,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub(crate) fn from_parts(
        max_vertices: usize,
        filters: Vec<Pattern>,
        mut entries: Vec<CatalogEntry>,
    ) -> Self {
        entries.sort_by(|a, b| (a.graph.n(), &a.code).cmp(&(b.graph.n(), &b.code)));
        entries.dedup_by(|a, b| a.code == b.code);
        Catalog {
            max_vertices,
            filters,
            entries,
        }
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    pub fn filters(&self) -> &[Pattern] {
        &self.filters
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries per vertex count.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.graph.n()).or_default() += 1;
        }
        out
    }

    fn filter_list(&self) -> String {
        self.filters
            .iter()
            .map(Pattern::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Text form: `#` header lines, then `<n> <code-hex> # w=.. b=.. e=..`
    /// per entry. Identical catalogs serialize to identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# irreducible catalog\n");
        let _ = writeln!(out, "# n_max {}", self.max_vertices);
        let _ = writeln!(out, "# filters {}", self.filter_list());
        let census: Vec<String> = self
            .census()
            .iter()
            .map(|(n, c)| format!("{n}:{c}"))
            .collect();
        let _ = writeln!(out, "# census {}", census.join(" "));
        for e in &self.entries {
            let g = &e.graph;
            let _ = writeln!(
                out,
                "{} {} # w={} b={} e={}",
                g.n(),
                hex::encode(&e.code),
                g.white().len(),
                g.black().len(),
                g.graph().m()
            );
        }
        out
    }

    /// Parses [`Catalog::to_text`] output, re-checking every entry.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut max_vertices = None;
        let mut filters = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Parse { line, message };
            if let Some(header) = raw.strip_prefix('#') {
                let header = header.trim();
                if let Some(v) = header.strip_prefix("n_max") {
                    max_vertices = Some(
                        v.trim()
                            .parse::<usize>()
                            .map_err(|e| err(format!("bad n_max: {e}")))?,
                    );
                } else if let Some(v) = header.strip_prefix("filters") {
                    filters = Some(parse_pattern_list(v).map_err(|e| err(e.to_string()))?);
                }
                continue;
            }
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut fields = body.split_whitespace();
            let (Some(n), Some(code), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err("expected `<n> <code-hex>`".into()));
            };
            let n: usize = n.parse().map_err(|_| err(format!("bad vertex count {n:?}")))?;
            let code = hex::decode(code).map_err(|e| err(format!("bad hex: {e}")))?;
            let small = SmallGraph::from_code(&code)
                .filter(|g| g.n() == n && g.colors.iter().all(|&c| c == WHITE || c == BLACK))
                .ok_or_else(|| err("code does not decode to a graph of that size".into()))?;
            let graph = ColoredBipartite::new(
                small.graph(),
                crate::graph::VertexSet::from_iter(n, (0..n).filter(|&v| small.colors[v] == WHITE)),
            )
            .map_err(|e| err(e.to_string()))?;
            if !is_irreducible(&graph) {
                return Err(err("entry is not irreducible".into()));
            }
            entries.push(CatalogEntry { code, graph });
        }
        let max_vertices = max_vertices.ok_or(Error::Parse {
            line: 0,
            message: "missing `# n_max` header".into(),
        })?;
        let filters = filters.ok_or(Error::Parse {
            line: 0,
            message: "missing `# filters` header".into(),
        })?;
        for e in &entries {
            if e.graph.n() > max_vertices || is_free(e.graph.graph(), &filters).is_err() {
                return Err(Error::Parse {
                    line: 0,
                    message: "entry exceeds the bound or contains a filter".into(),
                });
            }
        }
        Ok(Catalog::from_parts(max_vertices, filters, entries))
    }

    /// Cache file name determined by the bound and the filter list.
    pub fn file_name(n_max: usize, filters: &[Pattern]) -> String {
        let tag: String = filters
            .iter()
            .map(Pattern::to_string)
            .collect::<Vec<_>>()
            .join("_")
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == ',')
            .map(|c| if c == ',' { '.' } else { c })
            .collect();
        format!("catalog-n{n_max}-{tag}.txt")
    }

    /// Loads the cached catalog from `dir`, or enumerates and writes it.
    pub fn load_or_build(dir: &Path, n_max: usize, filters: &[Pattern]) -> Result<Self> {
        let path: PathBuf = dir.join(Self::file_name(n_max, filters));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(cat) = Self::from_text(&text) {
                if cat.max_vertices == n_max && cat.filters == filters {
                    return Ok(cat);
                }
            }
        }
        let cat = enumerate_irreducible(n_max, filters)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, cat.to_text())?;
        Ok(cat)
    }
}
