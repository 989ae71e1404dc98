//! Universal covering trees built from non-backtracking walks.
//!
//! A walk `p_0, p_1, ...` is non-backtracking when `p_{i+2} != p_i`; on a
//! graph without multi-edges this also forbids traversing a loop twice in a
//! row. The cover is the tree of such walks from a fixed root, adjacent when
//! one extends the other by a step, mapped to the base by the terminal
//! vertex.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fold::is_four_cycle_hom_free;
use crate::graph::{dot_id, Graph, Vertex};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverNode {
    pub parent: Option<usize>,
    pub terminal: Vertex,
    pub depth: usize,
    pub children: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoverTree {
    pub root: Vertex,
    pub nodes: Vec<CoverNode>,
    pub depth_cap: usize,
    /// No node at `depth_cap` admits a further step.
    pub complete: bool,
}

impl CoverTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The covering map: terminal vertex of the node's walk.
    pub fn terminal(&self, node: usize) -> Vertex {
        self.nodes[node].terminal
    }

    /// The non-backtracking walk a node stands for, from the root.
    pub fn walk(&self, node: usize) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.nodes[node].depth + 1);
        let mut cur = Some(node);
        while let Some(c) = cur {
            out.push(self.nodes[c].terminal);
            cur = self.nodes[c].parent;
        }
        out.reverse();
        out
    }

    /// Parent (if any) followed by children.
    pub fn tree_neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes[node]
            .parent
            .into_iter()
            .chain(self.nodes[node].children.iter().copied())
    }

    /// Whether the node's neighbourhood in the tree is fully built.
    pub fn is_interior(&self, node: usize) -> bool {
        self.complete || self.nodes[node].depth < self.depth_cap
    }

    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph cover {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let style = if i == 0 {
                ", style=filled, fillcolor=lightgrey"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{i} [label={}{style}];", dot_id(g.name(node.terminal)));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                let _ = writeln!(out, "  n{p} -- n{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain("universal cover requires a connected graph".into()))
    }
}

pub fn build_cover(g: &Graph, root: Vertex, depth_cap: usize) -> Result<CoverTree> {
    build_cover_with_budget(g, root, depth_cap, DEFAULT_NODE_BUDGET)
}

/// Breadth-first enumeration of non-backtracking walks from `root`, up to
/// `depth_cap` steps and at most `node_budget` nodes.
pub fn build_cover_with_budget(
    g: &Graph,
    root: Vertex,
    depth_cap: usize,
    node_budget: usize,
) -> Result<CoverTree> {
    require_connected(g)?;
    if root >= g.vertex_count() {
        return Err(Error::Parameter(format!("root {root} out of range")));
    }
    let mut nodes = vec![CoverNode {
        parent: None,
        terminal: root,
        depth: 0,
        children: Vec::new(),
    }];
    let mut complete = true;
    let mut head = 0;
    while head < nodes.len() {
        let (terminal, depth, prev) = {
            let n = &nodes[head];
            (n.terminal, n.depth, n.parent.map(|p| nodes[p].terminal))
        };
        let extensions = g.neighbors(terminal).iter().copied().filter(|&w| Some(w) != prev);
        if depth == depth_cap {
            if extensions.count() > 0 {
                complete = false;
            }
            head += 1;
            continue;
        }
        for w in extensions {
            if nodes.len() >= node_budget {
                return Err(Error::Resource {
                    what: "cover nodes",
                    required: nodes.len() as u128 + 1,
                    budget: node_budget as u128,
                });
            }
            let id = nodes.len();
            nodes.push(CoverNode {
                parent: Some(head),
                terminal: w,
                depth: depth + 1,
                children: Vec::new(),
            });
            nodes[head].children.push(id);
        }
        head += 1;
    }
    Ok(CoverTree {
        root,
        nodes,
        depth_cap,
        complete,
    })
}

/// Outcome of the finiteness decision with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "cover", rename_all = "snake_case")]
pub enum CoverCertificate {
    /// The reachable arc graph is acyclic; `longest_walk` bounds every
    /// non-backtracking walk from the root.
    Finite {
        reachable_arcs: usize,
        longest_walk: usize,
    },
    /// A cycle of arcs `(u, v)` closed under the non-backtracking step.
    Infinite { cycle: Vec<(Vertex, Vertex)> },
}

impl CoverCertificate {
    pub fn is_finite(&self) -> bool {
        matches!(self, CoverCertificate::Finite { .. })
    }

    pub fn cycle_names(&self, g: &Graph) -> Vec<[String; 2]> {
        match self {
            CoverCertificate::Infinite { cycle } => cycle
                .iter()
                .map(|&(u, v)| [g.name(u).to_string(), g.name(v).to_string()])
                .collect(),
            CoverCertificate::Finite { .. } => Vec::new(),
        }
    }
}

struct ArcGraph {
    arcs: Vec<(Vertex, Vertex)>,
    succ: Vec<Vec<usize>>,
}

impl ArcGraph {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut index = vec![usize::MAX; n * n];
        let mut arcs = Vec::new();
        for u in g.vertices() {
            for &v in g.neighbors(u) {
                index[u * n + v] = arcs.len();
                arcs.push((u, v));
            }
        }
        let succ = arcs
            .iter()
            .map(|&(u, v)| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| w != u)
                    .map(|&w| index[v * n + w])
                    .collect()
            })
            .collect();
        ArcGraph { arcs, succ }
    }
}

/// Decides finiteness of the universal cover by cycle detection on the
/// non-backtracking arc graph reachable from the root's outgoing arcs.
pub fn cover_certificate(g: &Graph) -> Result<CoverCertificate> {
    require_connected(g)?;
    let ag = ArcGraph::new(g);
    let m = ag.arcs.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; m];
    let mut longest = vec![0usize; m];
    let mut reachable = 0;
    let roots: Vec<usize> = (0..m).filter(|&a| ag.arcs[a].0 == 0).collect();
    for &r in &roots {
        if state[r] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(r, 0)];
        state[r] = 1;
        reachable += 1;
        while let Some(top) = stack.last_mut() {
            let a = top.0;
            if top.1 < ag.succ[a].len() {
                let b = ag.succ[a][top.1];
                top.1 += 1;
                match state[b] {
                    0 => {
                        state[b] = 1;
                        reachable += 1;
                        stack.push((b, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(x, _)| x == b).unwrap();
                        let cycle = stack[start..].iter().map(|&(x, _)| ag.arcs[x]).collect();
                        return Ok(CoverCertificate::Infinite { cycle });
                    }
                    _ => {}
                }
            } else {
                state[a] = 2;
                longest[a] = 1 + ag.succ[a].iter().map(|&b| longest[b]).max().unwrap_or(0);
                stack.pop();
            }
        }
    }
    Ok(CoverCertificate::Finite {
        reachable_arcs: reachable,
        longest_walk: roots.iter().map(|&r| longest[r]).max().unwrap_or(0),
    })
}

pub fn is_cover_finite(g: &Graph) -> Result<bool> {
    Ok(cover_certificate(g)?.is_finite())
}

/// Lifts a walk in the base graph to the cover, starting at `base_node`.
///
/// Returns the node sequence; its image under the covering map is `walk`.
pub fn lift_walk(g: &Graph, cover: &CoverTree, walk: &[Vertex], base_node: usize) -> Result<Vec<usize>> {
    if !is_four_cycle_hom_free(g) {
        return Err(Error::Precondition(
            "walk lifting requires a four-cycle hom-free graph".into(),
        ));
    }
    if base_node >= cover.len() {
        return Err(Error::Parameter(format!("cover node {base_node} out of range")));
    }
    let Some(&first) = walk.first() else {
        return Err(Error::Parameter("empty walk".into()));
    };
    if cover.terminal(base_node) != first {
        return Err(Error::Precondition(format!(
            "base node ends at {:?}, walk starts at {:?}",
            g.name(cover.terminal(base_node)),
            g.name(first)
        )));
    }
    let mut lift = vec![base_node];
    let mut cur = base_node;
    for pair in walk.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        if !g.adjacent(from, to) {
            return Err(Error::Precondition(format!(
                "{:?} and {:?} are not adjacent",
                g.name(from),
                g.name(to)
            )));
        }
        match cover.tree_neighbors(cur).find(|&q| cover.terminal(q) == to) {
            Some(q) => cur = q,
            None => {
                return Err(Error::Resource {
                    what: "lift depth",
                    required: cover.nodes[cur].depth as u128 + 1,
                    budget: cover.depth_cap as u128,
                })
            }
        }
        lift.push(cur);
    }
    Ok(lift)
}
