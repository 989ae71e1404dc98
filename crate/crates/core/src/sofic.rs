//! Deciding phased block-gluing at a fixed even distance by comparing two
//! one-dimensional sofic shifts over the alphabet of vertex pairs.
//!
//! The image presentation reads the (top, bottom) ends of a vertical window
//! of height `2n` as it slides along a row; the TB presentation allows any
//! pair of bi-infinite walks whose origins are joined by an even walk.
//! Gluing at distance `2n` holds exactly when every TB point is an image,
//! which is the factor-language containment `TB ⊆ Image`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::walk::{build_walk_graph_with_budget, DEFAULT_WALK_BUDGET};

pub const DEFAULT_SUBSET_BUDGET: usize = 1_000_000;

/// `(top, bottom)` pair of base vertices.
pub type Label = (Vertex, Vertex);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub label: Label,
    pub to: usize,
}

/// Edge-labelled directed graph. Each state remembers the tuple of base
/// vertices it stands for (a window or a pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledAutomaton {
    pub names: Vec<String>,
    pub states: Vec<Vec<Vertex>>,
    pub transitions: Vec<Transition>,
    pub essential: bool,
}

impl LabeledAutomaton {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The labels that actually occur, sorted.
    pub fn alphabet(&self) -> Vec<Label> {
        let mut labels: Vec<Label> = self.transitions.iter().map(|t| t.label).collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Outgoing transitions per state, sorted by `(label, to)`.
    pub fn outgoing(&self) -> Vec<Vec<(Label, usize)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            out[t.from].push((t.label, t.to));
        }
        for list in &mut out {
            list.sort_unstable();
        }
        out
    }

    pub fn label_names(&self, label: Label) -> (String, String) {
        (self.names[label.0].clone(), self.names[label.1].clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let state = |s: &Vec<Vertex>| s.iter().map(|&v| self.names[v].clone()).collect::<Vec<_>>();
        serde_json::json!({
            "essential": self.essential,
            "states": self.states.iter().map(state).collect::<Vec<_>>(),
            "transitions": self.transitions.iter().map(|t| serde_json::json!({
                "from": t.from,
                "to": t.to,
                "label": [self.names[t.label.0], self.names[t.label.1]],
            })).collect::<Vec<_>>(),
        })
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain("graph is not connected".into()))
    }
}

pub fn build_image_presentation(g: &Graph, n: usize) -> Result<LabeledAutomaton> {
    build_image_presentation_with_budget(g, n, DEFAULT_WALK_BUDGET)
}

/// States are the windows of height `2n`; `z -> z'` whenever `z ~ z'`
/// pointwise, labelled by `(z'(n), z'(-n))`.
pub fn build_image_presentation_with_budget(g: &Graph, n: usize, budget: u128) -> Result<LabeledAutomaton> {
    require_connected(g)?;
    let wg = build_walk_graph_with_budget(g, n, budget)?;
    let states: Vec<Vec<Vertex>> = (0..wg.vertex_count()).map(|i| wg.walk(i).to_vec()).collect();
    let mut transitions = Vec::new();
    for (i, _) in states.iter().enumerate() {
        for j in wg.neighbors(i) {
            let z = &states[j];
            transitions.push(Transition {
                from: i,
                label: (z[2 * n], z[0]),
                to: j,
            });
        }
    }
    Ok(LabeledAutomaton {
        names: g.names().to_vec(),
        states,
        transitions,
        essential: false,
    })
}

/// States are pairs `(a, b)` joined by an even walk; `(a, b) -> (a', b')`
/// whenever `a ~ a'` and `b ~ b'`, labelled by `(a', b')`.
pub fn build_tb_presentation(g: &Graph) -> Result<LabeledAutomaton> {
    require_connected(g)?;
    let classes = g.bipartition();
    let nv = g.vertex_count();
    let mut index = vec![usize::MAX; nv * nv];
    let mut states = Vec::new();
    for a in g.vertices() {
        for b in g.vertices() {
            let even = classes.as_ref().is_none_or(|c| c[a] == c[b]);
            if even {
                index[a * nv + b] = states.len();
                states.push(vec![a, b]);
            }
        }
    }
    let mut transitions = Vec::new();
    for (i, s) in states.iter().enumerate() {
        for &a2 in g.neighbors(s[0]) {
            for &b2 in g.neighbors(s[1]) {
                let j = index[a2 * nv + b2];
                debug_assert_ne!(j, usize::MAX);
                transitions.push(Transition {
                    from: i,
                    label: (a2, b2),
                    to: j,
                });
            }
        }
    }
    Ok(LabeledAutomaton {
        names: g.names().to_vec(),
        states,
        transitions,
        essential: false,
    })
}

/// Repeatedly drops states without an incoming or an outgoing transition.
pub fn essentialize(a: &LabeledAutomaton) -> LabeledAutomaton {
    let n = a.states.len();
    let mut alive = vec![true; n];
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut ins = vec![Vec::new(); n];
    let mut outs = vec![Vec::new(); n];
    for t in &a.transitions {
        outdeg[t.from] += 1;
        indeg[t.to] += 1;
        outs[t.from].push(t.to);
        ins[t.to].push(t.from);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&s| indeg[s] == 0 || outdeg[s] == 0).collect();
    for &s in &queue {
        alive[s] = false;
    }
    while let Some(s) = queue.pop_front() {
        for &t in &outs[s] {
            indeg[t] -= 1;
            if alive[t] && indeg[t] == 0 {
                alive[t] = false;
                queue.push_back(t);
            }
        }
        for &t in &ins[s] {
            outdeg[t] -= 1;
            if alive[t] && outdeg[t] == 0 {
                alive[t] = false;
                queue.push_back(t);
            }
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut states = Vec::new();
    for s in 0..n {
        if alive[s] {
            remap[s] = states.len();
            states.push(a.states[s].clone());
        }
    }
    let transitions = a
        .transitions
        .iter()
        .filter(|t| alive[t.from] && alive[t.to])
        .map(|t| Transition {
            from: remap[t.from],
            label: t.label,
            to: remap[t.to],
        })
        .collect();
    LabeledAutomaton {
        names: a.names.clone(),
        states,
        transitions,
        essential: true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    /// Shortest word of the first language missing from the second.
    pub witness: Option<Vec<Label>>,
    pub explored: usize,
}

pub fn contains(a: &LabeledAutomaton, b: &LabeledAutomaton) -> Result<Containment> {
    contains_with_budget(a, b, DEFAULT_SUBSET_BUDGET)
}

/// Decides `L(a) ⊆ L(b)` for the factor languages of two essential
/// automata by a breadth-first walk over `(a-state, set of b-states)`.
pub fn contains_with_budget(
    a: &LabeledAutomaton,
    b: &LabeledAutomaton,
    budget: usize,
) -> Result<Containment> {
    if !a.essential || !b.essential {
        return Err(Error::Precondition("containment needs essential automata".into()));
    }
    if a.is_empty() {
        return Ok(Containment {
            holds: true,
            witness: None,
            explored: 0,
        });
    }
    if b.is_empty() {
        return Ok(Containment {
            holds: false,
            witness: Some(Vec::new()),
            explored: 0,
        });
    }
    let a_out = a.outgoing();
    let b_out = b.outgoing();
    let words = b.states.len().div_ceil(64);
    let mut full = vec![0u64; words];
    for s in 0..b.states.len() {
        full[s / 64] |= 1 << (s % 64);
    }
    let mut nodes: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut parent: Vec<Option<(usize, Label)>> = Vec::new();
    let mut seen: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in 0..a.states.len() {
        seen.insert((s, full.clone()), nodes.len());
        queue.push_back(nodes.len());
        nodes.push((s, full.clone()));
        parent.push(None);
    }
    let witness = |nodes_parent: &[Option<(usize, Label)>], mut at: usize, last: Label| {
        let mut word = vec![last];
        while let Some((p, l)) = nodes_parent[at] {
            word.push(l);
            at = p;
        }
        word.reverse();
        word
    };
    while let Some(id) = queue.pop_front() {
        let (s, set) = nodes[id].clone();
        let mut k = 0;
        while k < a_out[s].len() {
            let label = a_out[s][k].0;
            let mut next = vec![0u64; words];
            let mut any = false;
            for (w, &bits) in set.iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let t = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let list = &b_out[t];
                    let start = list.partition_point(|&(l, _)| l < label);
                    for &(l, u) in &list[start..] {
                        if l != label {
                            break;
                        }
                        next[u / 64] |= 1 << (u % 64);
                        any = true;
                    }
                }
            }
            if !any {
                return Ok(Containment {
                    holds: false,
                    witness: Some(witness(&parent, id, label)),
                    explored: nodes.len(),
                });
            }
            while k < a_out[s].len() && a_out[s][k].0 == label {
                let s2 = a_out[s][k].1;
                k += 1;
                let key = (s2, next.clone());
                if seen.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= budget {
                    return Err(Error::Resource {
                        what: "subset-construction pairs",
                        required: nodes.len() as u128 + 1,
                        budget: budget as u128,
                    });
                }
                seen.insert(key, nodes.len());
                queue.push_back(nodes.len());
                nodes.push((s2, next.clone()));
                parent.push(Some((id, label)));
            }
        }
    }
    Ok(Containment {
        holds: true,
        witness: None,
        explored: nodes.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCheck {
    pub n: usize,
    pub glues: bool,
    /// A TB word with no preimage, when gluing fails.
    pub witness: Option<Vec<Label>>,
    pub explored: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SoficLimits {
    pub walk_budget: u128,
    pub subset_budget: usize,
}

impl Default for SoficLimits {
    fn default() -> Self {
        SoficLimits {
            walk_budget: DEFAULT_WALK_BUDGET,
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

pub fn block_gluing_at(g: &Graph, n: usize) -> Result<GluingCheck> {
    block_gluing_at_with(g, n, SoficLimits::default())
}

pub fn block_gluing_at_with(g: &Graph, n: usize, limits: SoficLimits) -> Result<GluingCheck> {
    let image = essentialize(&build_image_presentation_with_budget(g, n, limits.walk_budget)?);
    let tb = essentialize(&build_tb_presentation(g)?);
    let back = contains_with_budget(&image, &tb, limits.subset_budget)?;
    if !back.holds {
        return Err(Error::Inconsistent(format!(
            "image language escapes the TB shift at n = {n}"
        )));
    }
    let forward = contains_with_budget(&tb, &image, limits.subset_budget)?;
    Ok(GluingCheck {
        n,
        glues: forward.holds,
        witness: forward.witness,
        explored: forward.explored,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingDistance {
    /// `2n` for the smallest `n` that glues, if any was found.
    pub distance: Option<usize>,
    pub n_cap: usize,
    pub checks: Vec<GluingCheck>,
}

/// Tries `n = 0..=n_cap` in order. Only even distances are examined, so an
/// odd minimal distance shows up as the next even one. Absence within the
/// cap says nothing about larger distances.
pub fn minimal_gluing_distance(g: &Graph, n_cap: usize) -> Result<GluingDistance> {
    minimal_gluing_distance_with(g, n_cap, SoficLimits::default())
}

pub fn minimal_gluing_distance_with(g: &Graph, n_cap: usize, limits: SoficLimits) -> Result<GluingDistance> {
    let mut checks = Vec::new();
    for n in 0..=n_cap {
        let check = block_gluing_at_with(g, n, limits)?;
        let glues = check.glues;
        checks.push(check);
        if glues {
            return Ok(GluingDistance {
                distance: Some(2 * n),
                n_cap,
                checks,
            });
        }
    }
    Ok(GluingDistance {
        distance: None,
        n_cap,
        checks,
    })
}

#[derive(Serialize)]
struct LabelPair<'a>(&'a str, &'a str);

/// A witness word as a JSON list of `[top, bottom]` name pairs.
pub fn witness_json(g: &Graph, word: &[Label]) -> serde_json::Value {
    serde_json::to_value(
        word.iter()
            .map(|&(t, b)| LabelPair(g.name(t), g.name(b)))
            .collect::<Vec<_>>(),
    )
    .expect("pairs serialize")
}
