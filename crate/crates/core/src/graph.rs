//! Finite undirected graphs with optional self-loops.
//!
//! A [`Graph`] is the target graph of a hom-shift. Vertices are dense ids
//! assigned by first appearance in the input; a vertex belongs to its own
//! neighbourhood exactly when it carries a self-loop. Every vertex has at
//! least one neighbour.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Graph distance that may be infinite (disconnected endpoints).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Anything BFS can walk over: vertices `0..order()` and a neighbour iterator.
pub trait Adjacency: Sync {
    fn order(&self) -> usize;
    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize));
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<Vertex>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph from vertex names and an edge list over their ids.
    ///
    /// Duplicate edges collapse. Fails if a vertex ends up without neighbours
    /// or an edge references an unknown id.
    pub fn from_edges(names: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Parameter("graph has no vertices".into()));
        }
        let mut matrix = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!("edge ({u}, {v}) out of range")));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        let adj: Vec<Vec<Vertex>> = (0..n)
            .map(|u| (0..n).filter(|&v| matrix[u * n + v]).collect())
            .collect();
        if let Some(v) = adj.iter().position(Vec::is_empty) {
            return Err(Error::Domain(format!("vertex {:?} is isolated", names[v])));
        }
        Ok(Graph { names, adj, matrix })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    /// Sorted neighbourhood; contains `v` iff `v` is looped.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.matrix[u * self.names.len() + v]
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.adjacent(v, v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    /// Number of edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn loop_count(&self) -> usize {
        self.vertices().filter(|&v| self.has_loop(v)).count()
    }

    /// Number of ordered pairs `(u, v)` with `u ~ v`; a loop contributes one.
    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// The subgraph induced on `keep` (ids renumbered in the given order).
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<Graph> {
        let index: HashMap<Vertex, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names = keep.iter().map(|&v| self.names[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter_map(|(u, v)| Some((*index.get(&u)?, *index.get(&v)?)))
            .collect();
        Graph::from_edges(names, &edges)
    }

    /// Serializes as the edge-list text format accepted by [`parse_graph`].
    ///
    /// Lines are ordered so that re-parsing assigns the same ids whenever
    /// some edge order can achieve that (always true for parsed graphs);
    /// otherwise the result is still the same graph up to renaming of ids.
    pub fn to_edge_list(&self) -> String {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut emitted = vec![false; n * n];
        let mut lines = Vec::new();
        for k in 0..n {
            if seen[k] {
                continue;
            }
            let (u, v) = if self.has_loop(k) {
                (k, k)
            } else if let Some(&w) = self.adj[k].iter().find(|&&w| seen[w]) {
                (w, k)
            } else if k + 1 < n && self.adjacent(k, k + 1) {
                (k, k + 1)
            } else {
                (k, self.adj[k][0])
            };
            seen[u] = true;
            seen[v] = true;
            emitted[u * n + v] = true;
            emitted[v * n + u] = true;
            lines.push((u, v));
        }
        lines.extend(self.edges().filter(|&(u, v)| !emitted[u * n + v]));
        let mut out = String::new();
        for (u, v) in lines {
            let _ = writeln!(out, "{} {}", self.names[u], self.names[v]);
        }
        out
    }

    /// Graphviz rendering; loops appear as `v -- v`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph H {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {};", dot_id(&self.names[v]));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", dot_id(&self.names[u]), dot_id(&self.names[v]));
        }
        out.push_str("}\n");
        out
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn component_vertex_sets(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_vertex_sets()
            .iter()
            .map(|set| {
                self.induced_subgraph(set)
                    .expect("components have no isolated vertices")
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// Two-colouring, or `None` when an odd closed walk exists (a loop counts).
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut colour = vec![u8::MAX; n];
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        queue.push_back(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Single-source BFS distances in the base graph.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        crate::bfs::distances(self, source)
            .into_iter()
            .map(|d| d.map(|d| d as usize))
            .collect()
    }

    pub fn diameter(&self) -> Distance {
        crate::bfs::diameter(self)
    }

    /// A graph homomorphism check for a map given as a slice.
    pub fn is_endomorphism(&self, map: &[Vertex]) -> bool {
        map.len() == self.vertex_count() && self.edges().all(|(u, v)| self.adjacent(map[u], map[v]))
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.vertex_count()
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &w in &self.adj[v] {
            f(w);
        }
    }
}

pub(crate) fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Parses the edge-list format: one edge per line as two whitespace
/// separated vertex names, `#` starts a comment line, `u u` is a loop.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |name: &str| -> Vertex {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("expected two vertex names, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }
    if names.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "graph has no edges".into(),
        });
    }
    Graph::from_edges(names, &edges)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Named graph families used throughout the examples and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `K_k` on vertices `1..=k`.
    Complete,
    /// `C_k` on vertices `0..k`.
    Cycle,
    /// Path `1 - 2 - ... - k` with loops at both ends.
    Barbell,
    /// Vertices `0`, `1`; edge `0 1`; loop at `0`.
    HardSquare,
    /// Path on `k` vertices `0..k`.
    Path,
    /// Star on `k` vertices: centre `0`, leaves `1..k`.
    Star,
}

impl Family {
    pub fn all() -> [Family; 6] {
        [
            Family::Complete,
            Family::Cycle,
            Family::Barbell,
            Family::HardSquare,
            Family::Path,
            Family::Star,
        ]
    }

    fn min_k(self) -> usize {
        match self {
            Family::Cycle => 3,
            Family::HardSquare => 0,
            _ => 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "complete" => Family::Complete,
            "cycle" => Family::Cycle,
            "barbell" => Family::Barbell,
            "hard_square" | "hard-square" => Family::HardSquare,
            "path" => Family::Path,
            "star" => Family::Star,
            other => return Err(Error::Parameter(format!("unknown graph family {other:?}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Barbell => "barbell",
            Family::HardSquare => "hard_square",
            Family::Path => "path",
            Family::Star => "star",
        })
    }
}

/// Builds a member of a named family. `k` is ignored for the hard-square graph.
pub fn fixture(family: Family, k: usize) -> Result<Graph> {
    if k < family.min_k() {
        return Err(Error::Parameter(format!(
            "{family:?} requires k >= {}, got {k}",
            family.min_k()
        )));
    }
    let numbered = |offset: usize, k: usize| (0..k).map(|i| (i + offset).to_string()).collect::<Vec<_>>();
    let (names, edges): (Vec<String>, Vec<(Vertex, Vertex)>) = match family {
        Family::Complete => (
            numbered(1, k),
            (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect(),
        ),
        Family::Cycle => (numbered(0, k), (0..k).map(|i| (i, (i + 1) % k)).collect()),
        Family::Barbell => {
            let mut edges: Vec<_> = (0..k - 1).map(|i| (i, i + 1)).collect();
            edges.push((0, 0));
            edges.push((k - 1, k - 1));
            (numbered(1, k), edges)
        }
        Family::HardSquare => (numbered(0, 2), vec![(0, 1), (0, 0)]),
        Family::Path => (numbered(0, k), (0..k - 1).map(|i| (i, i + 1)).collect()),
        Family::Star => (numbered(0, k), (1..k).map(|i| (0, i)).collect()),
    };
    Graph::from_edges(names, &edges)
}

/// Parses `family` or `family:k` (e.g. `cycle:5`, `hard_square`).
pub fn fixture_from_spec(spec: &str) -> Result<Graph> {
    let (family, k) = match spec.split_once(':') {
        Some((f, k)) => (
            f.parse::<Family>()?,
            k.parse::<usize>()
                .map_err(|_| Error::Parameter(format!("bad fixture size {k:?}")))?,
        ),
        None => (spec.parse::<Family>()?, 0),
    };
    fixture(family, k)
}

/// Connectivity, bipartiteness and diameter of the base graph.
///
/// The hom-shift on the grid is transitive iff `connected`, and mixing iff
/// additionally `bipartition` is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicAnalysis {
    pub connected: bool,
    pub bipartition: Option<Vec<u8>>,
    pub diameter: Distance,
}

impl BasicAnalysis {
    pub fn transitive(&self) -> bool {
        self.connected
    }

    pub fn mixing(&self) -> bool {
        self.connected && self.bipartition.is_none()
    }
}

pub fn analyze_basic(g: &Graph) -> BasicAnalysis {
    BasicAnalysis {
        connected: g.is_connected(),
        bipartition: g.bipartition(),
        diameter: g.diameter(),
    }
}

/// A product graph together with the vertices dropped for being isolated.
#[derive(Clone, Debug)]
pub struct Product {
    pub graph: Graph,
    pub dropped: Vec<String>,
}

fn product_by(
    g1: &Graph,
    g2: &Graph,
    adjacent: impl Fn((Vertex, Vertex), (Vertex, Vertex)) -> bool,
) -> Result<Product> {
    let n2 = g2.vertex_count();
    let pairs: Vec<(Vertex, Vertex)> = g1
        .vertices()
        .flat_map(|a| g2.vertices().map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for (i, &p) in pairs.iter().enumerate() {
        for (j, &q) in pairs.iter().enumerate().skip(i) {
            if adjacent(p, q) {
                edges.push((i, j));
            }
        }
    }
    let mut live = vec![false; pairs.len()];
    for &(i, j) in &edges {
        live[i] = true;
        live[j] = true;
    }
    let pair_name = |(a, b): (Vertex, Vertex)| format!("({},{})", g1.name(a), g2.name(b));
    let dropped = pairs
        .iter()
        .zip(&live)
        .filter(|(_, &l)| !l)
        .map(|(&p, _)| pair_name(p))
        .collect();
    let mut renumber = vec![usize::MAX; pairs.len()];
    let mut names = Vec::new();
    for (i, &p) in pairs.iter().enumerate() {
        if live[i] {
            renumber[i] = names.len();
            names.push(pair_name(p));
        }
    }
    let edges: Vec<_> = edges.iter().map(|&(i, j)| (renumber[i], renumber[j])).collect();
    debug_assert_eq!(pairs.len(), g1.vertex_count() * n2);
    Ok(Product {
        graph: Graph::from_edges(names, &edges)?,
        dropped,
    })
}

/// `(v1, v2) ~ (w1, w2)` iff `v1 ~ w1` and `v2 ~ w2`.
pub fn tensor_product(g1: &Graph, g2: &Graph) -> Result<Product> {
    product_by(g1, g2, |(v1, v2), (w1, w2)| {
        g1.adjacent(v1, w1) && g2.adjacent(v2, w2)
    })
}

/// `(v1, v2) ~ (w1, w2)` iff one coordinate is equal and the other adjacent.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<Product> {
    product_by(g1, g2, |(v1, v2), (w1, w2)| {
        (v1 == w1 && g2.adjacent(v2, w2)) || (g1.adjacent(v1, w1) && v2 == w2)
    })
}
