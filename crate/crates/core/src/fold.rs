//! Folds, stiffness, dismantlability, four-cycle hom-freeness and
//! collapsing maps.
//!
//! A vertex `v` folds into `w != v` when `N(v) ⊆ N(w)`, with loops counted
//! in neighbourhoods. Removing folded vertices until none remain yields a
//! stiff graph that is unique up to isomorphism.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Order in which simultaneous fold candidates are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldPolicy {
    Lexicographic,
    Random(u64),
}

/// Classification of a stiff graph reached from a connected input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StiffShape {
    LoopedVertex,
    Edge,
    Other,
}

#[derive(Clone, Debug)]
pub struct FoldSequence {
    /// `(folded, target)` in ids of the input graph.
    pub steps: Vec<(Vertex, Vertex)>,
    /// Input ids of the surviving vertices, ascending.
    pub survivors: Vec<Vertex>,
    pub terminal: Graph,
}

impl FoldSequence {
    pub fn shape(&self) -> StiffShape {
        stiff_shape(&self.terminal)
    }

    /// JSON form: folds as name pairs and the terminal graph as an edge list.
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let steps: Vec<[&str; 2]> = self.steps.iter().map(|&(v, w)| [g.name(v), g.name(w)]).collect();
        let edges: Vec<[&str; 2]> = self
            .terminal
            .edges()
            .map(|(u, v)| [self.terminal.name(u), self.terminal.name(v)])
            .collect();
        serde_json::json!({
            "steps": steps,
            "terminal": { "vertices": self.terminal.names(), "edges": edges },
            "shape": self.shape(),
        })
    }
}

pub fn stiff_shape(g: &Graph) -> StiffShape {
    match (g.vertex_count(), g.loop_count(), g.edge_count()) {
        (1, 1, 1) => StiffShape::LoopedVertex,
        (2, 0, 1) => StiffShape::Edge,
        _ => StiffShape::Other,
    }
}

fn folds_into(g: &Graph, alive: &[bool], v: Vertex, w: Vertex) -> bool {
    v != w && g.neighbors(v).iter().all(|&x| !alive[x] || g.adjacent(w, x))
}

fn fold_candidates(g: &Graph, alive: &[bool]) -> Vec<(Vertex, Vertex)> {
    let live: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let mut out = Vec::new();
    for &v in &live {
        for &w in &live {
            if folds_into(g, alive, v, w) {
                out.push((v, w));
            }
        }
    }
    out
}

/// Lexicographically smallest `(v, w)` with `v` folding into `w`.
pub fn find_fold(g: &Graph) -> Option<(Vertex, Vertex)> {
    let alive = vec![true; g.vertex_count()];
    for v in g.vertices() {
        for w in g.vertices() {
            if folds_into(g, &alive, v, w) {
                return Some((v, w));
            }
        }
    }
    None
}

pub fn is_stiff(g: &Graph) -> bool {
    find_fold(g).is_none()
}

/// Folds until stiff.
pub fn stiff_reduce(g: &Graph, policy: FoldPolicy) -> FoldSequence {
    let mut alive = vec![true; g.vertex_count()];
    let mut steps = Vec::new();
    let mut rng = match policy {
        FoldPolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        FoldPolicy::Lexicographic => None,
    };
    loop {
        let next = match rng.as_mut() {
            None => g.vertices().filter(|&v| alive[v]).find_map(|v| {
                g.vertices()
                    .find(|&w| alive[w] && folds_into(g, &alive, v, w))
                    .map(|w| (v, w))
            }),
            Some(rng) => fold_candidates(g, &alive).choose(rng).copied(),
        };
        let Some((v, w)) = next else { break };
        alive[v] = false;
        steps.push((v, w));
    }
    let survivors: Vec<Vertex> = g.vertices().filter(|&v| alive[v]).collect();
    let terminal = g
        .induced_subgraph(&survivors)
        .expect("folding never isolates a vertex");
    FoldSequence {
        steps,
        survivors,
        terminal,
    }
}

fn require_connected(g: &Graph, what: &str) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires a connected graph")))
    }
}

/// Folds down to a single looped vertex.
pub fn is_dismantlable(g: &Graph) -> Result<bool> {
    require_connected(g, "dismantlability")?;
    Ok(stiff_reduce(g, FoldPolicy::Lexicographic).shape() == StiffShape::LoopedVertex)
}

/// Folds down to a single edge or a single looped vertex.
pub fn is_bipartite_dismantlable(g: &Graph) -> Result<bool> {
    require_connected(g, "bipartite dismantlability")?;
    Ok(stiff_reduce(g, FoldPolicy::Lexicographic).shape() != StiffShape::Other)
}

/// Every homomorphism `f: C_4 -> g` has `f(0) = f(2)` or `f(1) = f(3)`.
///
/// Enumerates all homomorphisms from the four-cycle directly.
pub fn is_four_cycle_hom_free(g: &Graph) -> bool {
    four_cycle_witness(g).is_none()
}

/// A homomorphism from `C_4` with both diagonals non-degenerate, if any.
pub fn four_cycle_witness(g: &Graph) -> Option<[Vertex; 4]> {
    for a in g.vertices() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != b && g.adjacent(d, a) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// The structural characterisation: no four-cycle subgraph, and no looped
/// vertex has two (possibly equal) non-self neighbours that are adjacent.
pub fn four_cycle_hom_free_structural(g: &Graph) -> bool {
    let has_c4 = g.vertices().any(|a| {
        g.neighbors(a).iter().any(|&b| {
            b != a
                && g.neighbors(b).iter().any(|&c| {
                    c != a
                        && c != b
                        && g.neighbors(c)
                            .iter()
                            .any(|&d| d != a && d != b && d != c && g.adjacent(d, a))
                })
        })
    });
    if has_c4 {
        return false;
    }
    g.vertices().filter(|&v| g.has_loop(v)).all(|v| {
        let others: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| w != v).collect();
        others
            .iter()
            .all(|&w1| others.iter().all(|&w2| !g.adjacent(w1, w2)))
    })
}

/// A graph endomorphism, stored as the image of each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Endomorphism {
    pub map: Vec<Vertex>,
}

impl Endomorphism {
    pub fn is_homomorphism(&self, g: &Graph) -> bool {
        g.is_endomorphism(&self.map)
    }

    /// `f(v) ~ v` for every vertex.
    pub fn moves_to_neighbors(&self, g: &Graph) -> bool {
        self.map.iter().enumerate().all(|(v, &fv)| g.adjacent(v, fv))
    }

    /// Smallest `k >= 1` such that the image of `g` under `f^k` is a single
    /// edge or a single looped vertex.
    pub fn collapse_depth(&self, g: &Graph) -> Option<usize> {
        let mut image: BTreeSet<(Vertex, Vertex)> = g.edges().collect();
        for k in 1..=g.vertex_count() + 1 {
            let next: BTreeSet<(Vertex, Vertex)> = image
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (self.map[u], self.map[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            let verts: BTreeSet<Vertex> = next.iter().flat_map(|&(u, v)| [u, v]).collect();
            let collapsed = match verts.len() {
                1 => true,
                2 => next.len() == 1,
                _ => false,
            };
            if collapsed {
                return Some(k);
            }
            if next == image {
                return None;
            }
            image = next;
        }
        None
    }

    pub fn to_names(&self, g: &Graph) -> Vec<[String; 2]> {
        self.map
            .iter()
            .enumerate()
            .map(|(v, &fv)| [g.name(v).to_string(), g.name(fv).to_string()])
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseSearch {
    Found(Endomorphism),
    Absent,
    /// The node budget ran out before the search finished.
    Unknown,
}

#[derive(Clone, Copy, Debug)]
pub struct CollapseLimits {
    pub node_budget: u64,
}

impl Default for CollapseLimits {
    fn default() -> Self {
        CollapseLimits {
            node_budget: 1_000_000,
        }
    }
}

struct CollapseSearcher<'g> {
    g: &'g Graph,
    order: Vec<Vertex>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found(Vec<Vertex>),
    Exhausted,
    OutOfBudget,
}

impl CollapseSearcher<'_> {
    /// Arc consistency on the homomorphism constraint. Returns false on a wipe-out.
    fn propagate(&self, domains: &mut [Vec<Vertex>]) -> bool {
        let g = self.g;
        let mut changed = true;
        while changed {
            changed = false;
            for (u, w) in g.edges() {
                for (x, y) in [(u, w), (w, u)] {
                    let before = domains[x].len();
                    let other = domains[y].clone();
                    domains[x].retain(|&a| other.iter().any(|&b| g.adjacent(a, b)));
                    if domains[x].is_empty() {
                        return false;
                    }
                    changed |= domains[x].len() != before;
                }
            }
        }
        true
    }

    fn search(&mut self, depth: usize, domains: Vec<Vec<Vertex>>) -> Step {
        if depth == self.order.len() {
            let map: Vec<Vertex> = domains.iter().map(|d| d[0]).collect();
            let f = Endomorphism { map };
            return if f.collapse_depth(self.g).is_some() {
                Step::Found(f.map)
            } else {
                Step::Exhausted
            };
        }
        let v = self.order[depth];
        for &x in &domains[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let mut next = domains.clone();
            next[v] = vec![x];
            if !self.propagate(&mut next) {
                continue;
            }
            match self.search(depth + 1, next) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Searches for a homomorphism `f` with `f(v) ~ v` that collapses `g` onto
/// an edge or a looped vertex.
///
/// Vertices are branched in order of descending degree, candidate images in
/// ascending id, with arc consistency after every assignment.
pub fn find_collapsing_map(g: &Graph, limits: CollapseLimits) -> Result<CollapseSearch> {
    require_connected(g, "collapsibility")?;
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let domains: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
    let mut searcher = CollapseSearcher {
        g,
        order,
        nodes: 0,
        budget: limits.node_budget,
    };
    let mut domains = domains;
    if !searcher.propagate(&mut domains) {
        return Ok(CollapseSearch::Absent);
    }
    Ok(match searcher.search(0, domains) {
        Step::Found(map) => CollapseSearch::Found(Endomorphism { map }),
        Step::Exhausted => CollapseSearch::Absent,
        Step::OutOfBudget => CollapseSearch::Unknown,
    })
}
