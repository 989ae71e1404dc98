//! Walk graphs: homomorphisms from a window `[-n, n]` (or a cycle `C_P`)
//! into the base graph, adjacent when pointwise adjacent.
//!
//! A path of length `k` between two windows in the walk graph is the same
//! thing as a homomorphism from `[-n, n] x [0, k]` with those windows as
//! its bottom and top rows.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bfs;
use crate::cover::is_cover_finite;
use crate::error::{Error, Result};
use crate::fold::is_four_cycle_hom_free;
use crate::graph::{dot_id, Adjacency, Distance, Graph, Vertex};

pub const DEFAULT_WALK_BUDGET: u128 = 200_000;

/// Sequences of base vertices of a fixed length with pointwise adjacency,
/// stored flat in lexicographic order with CSR neighbour lists.
#[derive(Clone, Debug)]
struct Pointwise {
    len: usize,
    seqs: Vec<Vertex>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Pointwise {
    fn build(g: &Graph, len: usize, cyclic: bool) -> Self {
        let mut seqs = Vec::new();
        let mut cur = Vec::with_capacity(len);
        enumerate(g, len, cyclic, &mut cur, &mut |s| seqs.extend_from_slice(s));
        let count = seqs.len() / len;
        let mut pw = Pointwise {
            len,
            seqs,
            offsets: Vec::with_capacity(count + 1),
            targets: Vec::new(),
        };
        pw.offsets.push(0);
        let mut nbrs = Vec::new();
        for i in 0..count {
            nbrs.clear();
            let x = pw.seq(i).to_vec();
            let mut y = Vec::with_capacity(len);
            neighbours_of(g, &x, cyclic, &mut y, &mut |ys| {
                nbrs.push(pw.index_of(ys).expect("neighbour is a valid walk") as u32)
            });
            nbrs.sort_unstable();
            pw.targets.extend_from_slice(&nbrs);
            pw.offsets.push(pw.targets.len());
        }
        pw
    }

    fn count(&self) -> usize {
        self.seqs.len() / self.len
    }

    fn seq(&self, i: usize) -> &[Vertex] {
        &self.seqs[i * self.len..(i + 1) * self.len]
    }

    fn index_of(&self, s: &[Vertex]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.seq(mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    fn edge_count(&self) -> usize {
        (0..self.count())
            .map(|i| self.neighbors(i).iter().filter(|&&j| j as usize >= i).count())
            .sum()
    }

    fn to_dot(&self, g: &Graph, name: &str) -> Result<String> {
        if self.count() > 500 {
            return Err(Error::Resource {
                what: "walk graph DOT export vertices",
                required: self.count() as u128,
                budget: 500,
            });
        }
        let label = |i: usize| {
            self.seq(i)
                .iter()
                .map(|&v| g.name(v))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = format!("graph {name} {{\n");
        for i in 0..self.count() {
            let _ = writeln!(out, "  w{i} [label={}];", dot_id(&label(i)));
        }
        for i in 0..self.count() {
            for &j in self.neighbors(i) {
                if j as usize >= i {
                    let _ = writeln!(out, "  w{i} -- w{j};");
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Depth-first enumeration in lexicographic order.
fn enumerate(g: &Graph, len: usize, cyclic: bool, cur: &mut Vec<Vertex>, emit: &mut impl FnMut(&[Vertex])) {
    if cur.len() == len {
        if !cyclic || g.adjacent(cur[len - 1], cur[0]) {
            emit(cur);
        }
        return;
    }
    let candidates: &[Vertex] = match cur.last() {
        None => &g.vertices().collect::<Vec<_>>(),
        Some(&last) => g.neighbors(last),
    };
    for &v in candidates {
        cur.push(v);
        enumerate(g, len, cyclic, cur, emit);
        cur.pop();
    }
}

/// All `y` pointwise adjacent to `x` that are themselves walks.
fn neighbours_of(
    g: &Graph,
    x: &[Vertex],
    cyclic: bool,
    y: &mut Vec<Vertex>,
    emit: &mut impl FnMut(&[Vertex]),
) {
    let i = y.len();
    if i == x.len() {
        if !cyclic || g.adjacent(y[i - 1], y[0]) {
            emit(y);
        }
        return;
    }
    for &v in g.neighbors(x[i]) {
        if i > 0 && !g.adjacent(y[i - 1], v) {
            continue;
        }
        y.push(v);
        neighbours_of(g, x, cyclic, y, emit);
        y.pop();
    }
}

/// Number of walks with `steps` steps (`steps + 1` vertices).
pub fn count_walks(g: &Graph, steps: usize) -> u128 {
    let mut ways = vec![1u128; g.vertex_count()];
    for _ in 0..steps {
        ways = g
            .vertices()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .fold(0u128, |acc, &w| acc.saturating_add(ways[w]))
            })
            .collect();
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Number of closed walks of length `period`.
pub fn count_closed_walks(g: &Graph, period: usize) -> u128 {
    let mut total = 0u128;
    for s in g.vertices() {
        let mut ways = vec![0u128; g.vertex_count()];
        ways[s] = 1;
        for _ in 0..period {
            ways = g
                .vertices()
                .map(|v| {
                    g.neighbors(v)
                        .iter()
                        .fold(0u128, |acc, &w| acc.saturating_add(ways[w]))
                })
                .collect();
        }
        total = total.saturating_add(ways[s]);
    }
    total
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::Resource {
            what: "walk graph vertices",
            required,
            budget,
        })
    } else {
        Ok(())
    }
}

/// Walks of length `2n` (windows `[-n, n]`) with pointwise adjacency.
#[derive(Clone, Debug)]
pub struct WalkGraphN {
    pub base: Graph,
    pub n: usize,
    inner: Pointwise,
}

impl WalkGraphN {
    pub fn vertex_count(&self) -> usize {
        self.inner.count()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// The window as base vertices at positions `-n..=n`.
    pub fn walk(&self, i: usize) -> &[Vertex] {
        self.inner.seq(i)
    }

    pub fn index_of(&self, walk: &[Vertex]) -> Option<usize> {
        self.inner.index_of(walk)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.inner.neighbors(i).iter().map(|&j| j as usize)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.inner.neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    pub fn diameter(&self) -> Distance {
        bfs::diameter(self)
    }

    pub fn to_dot(&self) -> Result<String> {
        self.inner.to_dot(&self.base, "walks")
    }
}

impl Adjacency for WalkGraphN {
    fn order(&self) -> usize {
        self.inner.count()
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &w in self.inner.neighbors(v) {
            f(w as usize);
        }
    }
}

pub fn build_walk_graph(g: &Graph, n: usize) -> Result<WalkGraphN> {
    build_walk_graph_with_budget(g, n, DEFAULT_WALK_BUDGET)
}

pub fn build_walk_graph_with_budget(g: &Graph, n: usize, budget: u128) -> Result<WalkGraphN> {
    check_budget(count_walks(g, 2 * n), budget)?;
    Ok(WalkGraphN {
        base: g.clone(),
        n,
        inner: Pointwise::build(g, 2 * n + 1, false),
    })
}

/// Closed walks of length `period` with pointwise adjacency; rows of a
/// horizontally periodic configuration.
#[derive(Clone, Debug)]
pub struct CyclicWalkGraph {
    pub base: Graph,
    pub period: usize,
    inner: Pointwise,
}

impl CyclicWalkGraph {
    pub fn vertex_count(&self) -> usize {
        self.inner.count()
    }

    pub fn row(&self, i: usize) -> &[Vertex] {
        self.inner.seq(i)
    }

    pub fn index_of(&self, row: &[Vertex]) -> Option<usize> {
        self.inner.index_of(row)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.inner.neighbors(i).iter().map(|&j| j as usize)
    }

    pub fn diameter(&self) -> Distance {
        bfs::diameter(self)
    }

    pub fn to_dot(&self) -> Result<String> {
        self.inner.to_dot(&self.base, "cyclic_walks")
    }
}

impl Adjacency for CyclicWalkGraph {
    fn order(&self) -> usize {
        self.inner.count()
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        for &w in self.inner.neighbors(v) {
            f(w as usize);
        }
    }
}

pub fn build_cyclic_walk_graph(g: &Graph, period: usize) -> Result<CyclicWalkGraph> {
    build_cyclic_walk_graph_with_budget(g, period, DEFAULT_WALK_BUDGET)
}

pub fn build_cyclic_walk_graph_with_budget(
    g: &Graph,
    period: usize,
    budget: u128,
) -> Result<CyclicWalkGraph> {
    if period == 0 {
        return Err(Error::Parameter("period must be at least 1".into()));
    }
    check_budget(count_closed_walks(g, period), budget)?;
    Ok(CyclicWalkGraph {
        base: g.clone(),
        period,
        inner: Pointwise::build(g, period, true),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub bipartite: bool,
}

pub fn connectivity_report(g: &Graph, n: usize) -> Result<ConnectivityReport> {
    let wg = build_walk_graph(g, n)?;
    Ok(ConnectivityReport {
        connected: bfs::is_connected(&wg),
        bipartite: bfs::is_bipartite(&wg),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub diameter: Distance,
    /// `diam(H) + 2n`.
    pub upper_bound: Distance,
}

/// Walk-graph diameters for `n = 0..=n_max` with the bound checks.
///
/// The linear lower bound `diameter(n) >= n` is only checked when it is
/// known to hold (four-cycle hom-free base with an infinite cover); for
/// other graphs the rows are evidence, not a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthProbe {
    pub rows: Vec<GrowthRow>,
    pub nondecreasing: bool,
    pub upper_bound_holds: bool,
    pub linear_lower_bound_applies: bool,
    pub linear_lower_bound_holds: Option<bool>,
}

impl GrowthProbe {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "diameter", "upper_bound"])
            .map_err(|e| Error::Io(e.into()))?;
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                row.diameter.to_string(),
                row.upper_bound.to_string(),
            ])
            .map_err(|e| Error::Io(e.into()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn growth_probe(g: &Graph, n_max: usize) -> Result<GrowthProbe> {
    growth_probe_with_budget(g, n_max, DEFAULT_WALK_BUDGET)
}

pub fn growth_probe_with_budget(g: &Graph, n_max: usize, budget: u128) -> Result<GrowthProbe> {
    let base_diameter = g.diameter();
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let wg = build_walk_graph_with_budget(g, n, budget)?;
        let upper_bound = match base_diameter {
            Distance::Finite(d) => Distance::Finite(d + 2 * n),
            Distance::Infinite => Distance::Infinite,
        };
        rows.push(GrowthRow {
            n,
            diameter: wg.diameter(),
            upper_bound,
        });
    }
    let nondecreasing = rows.windows(2).all(|w| w[0].diameter <= w[1].diameter);
    let upper_bound_holds = rows.iter().all(|r| r.diameter <= r.upper_bound);
    let applies = g.is_connected() && is_four_cycle_hom_free(g) && !is_cover_finite(g)?;
    let lower = applies.then(|| rows.iter().all(|r| r.diameter >= Distance::Finite(r.n)));
    Ok(GrowthProbe {
        rows,
        nondecreasing,
        upper_bound_holds,
        linear_lower_bound_applies: applies,
        linear_lower_bound_holds: lower,
    })
}
