//! Edge-list parsing, synthetic graph generators, and deterministic writers.
//!
//! Edge-list files are UTF-8 text. Each line is empty, a `#` comment, or
//! exactly two whitespace-separated tokens naming the endpoints of an
//! undirected edge. Tokens are opaque labels.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, CleaningReport, Graph};

/// Generators refuse to build graphs larger than this.
pub const MAX_GENERATED_NODES: usize = 10_000_000;

pub fn parse_edge_list(path: impl AsRef<Path>) -> Result<(Graph, CleaningReport)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list_str(&text)
}

pub fn parse_edge_list_str(text: &str) -> Result<(Graph, CleaningReport)> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        pairs.push((tokens[0], tokens[1]));
    }
    build_graph(pairs)
}

/// Canonical edge list: one `u v` line per edge with `u < v` by dense id,
/// ordered by `(u, v)`.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        out.push('\n');
    }
    out
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_edge_list(g)).map_err(|e| Error::io(path, e))
}

fn check_size(nodes: Option<usize>) -> Result<usize> {
    match nodes {
        Some(n) if n <= MAX_GENERATED_NODES => Ok(n),
        Some(n) => Err(Error::TooLarge { nodes: n, limit: MAX_GENERATED_NODES }),
        None => Err(Error::TooLarge { nodes: usize::MAX, limit: MAX_GENERATED_NODES }),
    }
}

/// Node count of [`gen_tree`]`(d, depth)`: `1 + d * sum_{i<depth} (d-1)^i`.
pub fn tree_node_count(d: usize, depth: usize) -> Option<usize> {
    let mut level = d;
    let mut total = 1usize;
    for _ in 0..depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(d - 1)?;
    }
    Some(total)
}

/// Truncated `d`-regular tree. The root has `d` children, every other
/// non-leaf node has `d - 1`, and the leaves sit at hop distance `depth`.
/// Nodes are numbered in breadth-first order from the root.
pub fn gen_tree(d: usize, depth: usize) -> Result<Graph> {
    if d < 2 || depth < 1 {
        return Err(Error::InvalidParameter(format!("tree needs d >= 2 and depth >= 1, got d={d}, depth={depth}")));
    }
    let n = check_size(tree_node_count(d, depth))?;
    let mut edges = Vec::with_capacity(n - 1);
    let mut frontier = vec![0usize];
    let mut next_id = 1;
    for level in 0..depth {
        let fanout = if level == 0 { d } else { d - 1 };
        let mut next = Vec::with_capacity(frontier.len() * fanout);
        for &parent in &frontier {
            for _ in 0..fanout {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    Ok(Graph::from_index_edges(n, &edges))
}

/// `rows x cols` 4-neighbour lattice; node `(r, c)` has id `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph> {
    let n = check_size(rows.checked_mul(cols))?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid needs at least 2 nodes, got {rows}x{cols}")));
    }
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Ok(Graph::from_index_edges(n, &edges))
}

/// A clique of `core_size` nodes with `whisker_count` pendant paths of
/// `whisker_len` nodes each. Whisker `i` hangs off core node `i % core_size`.
pub fn gen_whisker(core_size: usize, whisker_count: usize, whisker_len: usize) -> Result<Graph> {
    if core_size < 3 || whisker_count < 1 || whisker_len < 1 {
        return Err(Error::InvalidParameter(format!(
            "whisker needs core >= 3 and positive whisker parameters, got {core_size}x{whisker_count}x{whisker_len}"
        )));
    }
    let n = check_size(whisker_count.checked_mul(whisker_len).and_then(|w| w.checked_add(core_size)))?;
    let mut edges = Vec::new();
    for u in 0..core_size {
        for v in u + 1..core_size {
            edges.push((u, v));
        }
    }
    let mut next_id = core_size;
    for w in 0..whisker_count {
        let mut prev = w % core_size;
        for _ in 0..whisker_len {
            edges.push((prev, next_id));
            prev = next_id;
            next_id += 1;
        }
    }
    Ok(Graph::from_index_edges(n, &edges))
}

const MAX_CONNECT_ATTEMPTS: usize = 10_000;

/// Erdos-Renyi `G(n, p)` redrawn from the same seeded stream until connected.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("random graph needs n >= 2 and 0 < p <= 1, got n={n}, p={p}")));
    }
    check_size(Some(n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CONNECT_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_index_edges(n, &edges);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected G({n}, {p}) sample in {MAX_CONNECT_ATTEMPTS} attempts"
    )))
}

/// A parsed generator spec such as `tree:3x2` or `random:50x0.1`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Tree { d: usize, depth: usize },
    Grid { rows: usize, cols: usize },
    Whisker { core_size: usize, whisker_count: usize, whisker_len: usize },
    RandomConnected { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            GeneratorSpec::RandomConnected { n, p, .. } => GeneratorSpec::RandomConnected { n, p, seed },
            other => other,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GeneratorSpec::Tree { d, depth } => gen_tree(d, depth),
            GeneratorSpec::Grid { rows, cols } => gen_grid(rows, cols),
            GeneratorSpec::Whisker { core_size, whisker_count, whisker_len } => {
                gen_whisker(core_size, whisker_count, whisker_len)
            }
            GeneratorSpec::RandomConnected { n, p, seed } => gen_random_connected(n, p, seed),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad generator spec {s:?}"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = args.split('x').collect();
        let int = |i: usize| parts[i].parse::<usize>().map_err(|_| bad());
        match (kind, parts.len()) {
            ("tree", 2) => Ok(GeneratorSpec::Tree { d: int(0)?, depth: int(1)? }),
            ("grid", 2) => Ok(GeneratorSpec::Grid { rows: int(0)?, cols: int(1)? }),
            ("whisker", 3) => {
                Ok(GeneratorSpec::Whisker { core_size: int(0)?, whisker_count: int(1)?, whisker_len: int(2)? })
            }
            ("random", 2) => {
                let p = parts[1].parse::<f64>().map_err(|_| bad())?;
                Ok(GeneratorSpec::RandomConnected { n: int(0)?, p, seed: 0 })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Tree { d, depth } => write!(f, "tree:{d}x{depth}"),
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            GeneratorSpec::Whisker { core_size, whisker_count, whisker_len } => {
                write!(f, "whisker:{core_size}x{whisker_count}x{whisker_len}")
            }
            GeneratorSpec::RandomConnected { n, p, .. } => write!(f, "random:{n}x{p}"),
        }
    }
}

/// Formats `x` with 6 significant digits using the `%g` convention: fixed
/// notation for exponents in `-4..6`, scientific otherwise, trailing zeros
/// removed.
pub fn format_float(x: f64) -> String {
    const SIG: i32 = 6;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..SIG).contains(&exp) {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

/// A CSV document with a single header row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvTable { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::render))?;
        }
        writer.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))
    }
}

pub fn write_csv(table: &CsvTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = table.to_bytes()?;
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&bytes).map_err(|e| Error::io(path, e))
}
