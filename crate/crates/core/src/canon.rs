//! Canonical labelling of small vertex-coloured graphs.
//!
//! Colour refinement followed by individualization of the first non-trivial
//! cell; the canonical labelling is the leaf with the least adjacency code.
//! Branches on twin vertices (equal neighbourhoods up to each other) are
//! skipped because swapping twins is an automorphism fixing everything
//! individualized so far.

/// Largest vertex count the labelling supports.
pub const MAX_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub code: Vec<u8>,
}

/// Packs `(n, colours by position, upper-triangle adjacency bits)` into bytes.
fn encode(n: usize, colors: &[u8], bits: u128) -> Vec<u8> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + n + pairs.div_ceil(8));
    out.push(n as u8);
    out.extend_from_slice(colors);
    // left-align the pair bits so byte packing is MSB first
    let aligned = if pairs == 0 { 0 } else { bits << (128 - pairs) };
    for i in 0..pairs.div_ceil(8) {
        out.push((aligned >> (120 - 8 * i)) as u8);
    }
    out
}

/// Inverse of the byte layout: vertex count, colours, adjacency masks.
pub fn decode(code: &[u8]) -> Option<(Vec<u8>, Vec<u32>)> {
    let n = *code.first()? as usize;
    if n > MAX_VERTICES {
        return None;
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if code.len() != 1 + n + pairs.div_ceil(8) {
        return None;
    }
    let colors = code[1..1 + n].to_vec();
    let mut adj = vec![0u32; n];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            let byte = code[1 + n + idx / 8];
            if byte >> (7 - idx % 8) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            idx += 1;
        }
    }
    Some((colors, adj))
}

fn signature(adj: &[u32], v: usize, cells: &[u32]) -> u128 {
    cells
        .iter()
        .fold(0u128, |acc, &c| acc * 17 + (adj[v] & c).count_ones() as u128)
}

fn refine(adj: &[u32], mut cells: Vec<u32>) -> Vec<u32> {
    loop {
        let mut next = Vec::with_capacity(adj.len());
        let mut keyed: Vec<(u128, usize)> = Vec::with_capacity(adj.len());
        for &cell in &cells {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            keyed.clear();
            let mut rest = cell;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                keyed.push((signature(adj, v, &cells), v));
            }
            keyed.sort_unstable();
            let mut mask = 0u32;
            let mut last = keyed[0].0;
            for &(sig, v) in &keyed {
                if sig != last {
                    next.push(mask);
                    mask = 0;
                    last = sig;
                }
                mask |= 1 << v;
            }
            next.push(mask);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn leaf_code(adj: &[u32], order: &[usize]) -> u128 {
    let n = order.len();
    let mut bits = 0u128;
    for i in 0..n {
        let row = adj[order[i]];
        for &w in &order[i + 1..] {
            bits = bits << 1 | (row >> w & 1) as u128;
        }
    }
    bits
}

struct Search<'a> {
    adj: &'a [u32],
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<u32>) {
        let cells = refine(self.adj, cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = leaf_code(self.adj, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[target];
        let mut tried: Vec<usize> = Vec::new();
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let twin = tried.iter().any(|&t| {
                self.adj[v] & !(1 << t) == self.adj[t] & !(1 << v)
            });
            if twin {
                continue;
            }
            tried.push(v);
            let mut split = Vec::with_capacity(cells.len() + 1);
            split.extend_from_slice(&cells[..target]);
            split.push(1 << v);
            split.push(cell & !(1 << v));
            split.extend_from_slice(&cells[target + 1..]);
            self.descend(split);
        }
    }
}

/// Canonical labelling of a graph given by adjacency masks and vertex colours.
///
/// Two inputs receive equal codes exactly when they are isomorphic by a
/// colour-preserving bijection. Panics above [`MAX_VERTICES`].
pub fn canonical_form(adj: &[u32], colors: &[u8]) -> CanonicalForm {
    let n = adj.len();
    assert!(n <= MAX_VERTICES, "canonical labelling supports at most {MAX_VERTICES} vertices");
    assert_eq!(colors.len(), n);
    if n == 0 {
        return CanonicalForm { order: Vec::new(), code: encode(0, &[], 0) };
    }
    let mut palette: Vec<u8> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<u32> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).fold(0u32, |m, v| m | 1 << v))
        .collect();
    let mut search = Search { adj, best: None };
    search.descend(cells);
    let (bits, order) = search.best.expect("search reaches at least one leaf");
    let ordered_colors: Vec<u8> = order.iter().map(|&v| colors[v]).collect();
    CanonicalForm {
        code: encode(n, &ordered_colors, bits),
        order,
    }
}

/// Relabels adjacency masks so that old vertex `order[i]` becomes `i`.
pub fn permute(adj: &[u32], order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut row = 0u32;
            let mut rest = adj[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                row |= 1 << position[w];
            }
            row
        })
        .collect()
}
