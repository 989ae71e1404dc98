//! Independent brute-force oracles and seeded generators shared by the
//! integration tests. Nothing here calls the algorithm it is checking.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use homshift::graph::{fixture_from_spec, Graph, Vertex};
use homshift::sofic::{Label, LabeledAutomaton};
use rand::Rng;

pub mod suites;

pub const FIXTURES: &[&str] = &[
    "hard_square",
    "complete:2",
    "complete:3",
    "complete:4",
    "cycle:3",
    "cycle:4",
    "cycle:5",
    "cycle:6",
    "barbell:2",
    "barbell:3",
    "barbell:4",
    "path:3",
    "path:5",
    "star:4",
];

pub fn fixture(spec: &str) -> Graph {
    fixture_from_spec(spec).unwrap()
}

pub fn fixtures() -> Vec<(&'static str, Graph)> {
    FIXTURES.iter().map(|&s| (s, fixture(s))).collect()
}

/// A connected graph on `1..=max_vertices` vertices: a random spanning
/// tree plus extra edges and loops with the given probabilities.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_vertices: usize, edge_p: f64, loop_p: f64) -> Graph {
    let n = rng.random_range(1..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_p) {
                edges.push((u, v));
            }
        }
        if rng.random_bool(loop_p) || n == 1 {
            edges.push((u, u));
        }
    }
    let names = (0..n).map(|i| format!("v{i}")).collect();
    Graph::from_edges(names, &edges).unwrap()
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Brute-force isomorphism by backtracking over bijections.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() || a.loop_count() != b.loop_count() {
        return false;
    }
    let (ma, mb) = (adjacency_matrix(a), adjacency_matrix(b));
    let da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        ma: &[Vec<bool>],
        mb: &[Vec<bool>],
        da: &[usize],
        db: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = ma.len();
        if i == n {
            return true;
        }
        for j in 0..n {
            if used[j] || da[i] != db[j] || ma[i][i] != mb[j][j] || (0..i).any(|k| ma[i][k] != mb[j][map[k]])
            {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if extend(i + 1, ma, mb, da, db, map, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, &ma, &mb, &da, &db, &mut map, &mut used)
}

/// Every homomorphism from the four-cycle has equal opposite vertices.
pub fn brute_four_cycle_hom_free(g: &Graph) -> bool {
    let m = adjacency_matrix(g);
    let n = g.vertex_count();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if m[a][b] && m[b][c] && m[c][d] && m[d][a] && a != c && b != d {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All walks with `len` vertices, lexicographically.
pub fn all_walks(g: &Graph, len: usize) -> Vec<Vec<Vertex>> {
    let m = adjacency_matrix(g);
    let mut out: Vec<Vec<Vertex>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                let m = &m;
                (0..m.len()).filter(move |&v| m[last][v]).map(move |v| {
                    let mut w2 = w.clone();
                    w2.push(v);
                    w2
                })
            })
            .collect();
    }
    out
}

pub fn pointwise_adjacent(m: &[Vec<bool>], x: &[Vertex], y: &[Vertex]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| m[a][b])
}

/// Diameter of the walk graph on windows of radius `n` by quadratic
/// neighbour scans; `None` for a disconnected walk graph.
pub fn brute_walk_diameter(g: &Graph, n: usize) -> Option<usize> {
    let m = adjacency_matrix(g);
    let walks = all_walks(g, 2 * n + 1);
    let k = walks.len();
    let nbrs: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| pointwise_adjacent(&m, &walks[i], &walks[j]))
                .collect()
        })
        .collect();
    let mut best = 0;
    for s in 0..k {
        let mut dist = vec![usize::MAX; k];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &nbrs[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        best = best.max(*dist.iter().max().unwrap());
    }
    (best != usize::MAX).then_some(best)
}

/// Number of paths of length `len`.
pub fn path_count(a: &LabeledAutomaton, len: usize) -> u128 {
    let mut ways = vec![1u128; a.state_count()];
    for _ in 0..len {
        let mut next = vec![0u128; a.state_count()];
        for t in &a.transitions {
            next[t.from] += ways[t.to];
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Every label word of length `len` read along some path, enumerated
/// together with the set of states each word can end in.
pub fn automaton_words(a: &LabeledAutomaton, len: usize) -> BTreeSet<Vec<Label>> {
    let mut out: Vec<Vec<(Label, usize)>> = vec![Vec::new(); a.state_count()];
    for t in &a.transitions {
        out[t.from].push((t.label, t.to));
    }
    let mut frontier: BTreeMap<Vec<Label>, BTreeSet<usize>> = BTreeMap::new();
    frontier.insert(Vec::new(), (0..a.state_count()).collect());
    for _ in 0..len {
        let mut next: BTreeMap<Vec<Label>, BTreeSet<usize>> = BTreeMap::new();
        for (word, states) in &frontier {
            for &s in states {
                for &(l, to) in &out[s] {
                    let mut w = word.clone();
                    w.push(l);
                    next.entry(w).or_default().insert(to);
                }
            }
        }
        frontier = next;
    }
    frontier.into_keys().collect()
}

/// Depth-first search for a path of the automaton reading `word`.
pub fn automaton_accepts(a: &LabeledAutomaton, word: &[Label]) -> bool {
    fn go(a: &LabeledAutomaton, s: usize, word: &[Label]) -> bool {
        match word.split_first() {
            None => true,
            Some((&l, rest)) => a
                .transitions
                .iter()
                .any(|t| t.from == s && t.label == l && go(a, t.to, rest)),
        }
    }
    if word.is_empty() {
        return a.state_count() > 0;
    }
    (0..a.state_count()).any(|s| go(a, s, word))
}

fn even_joined(g: &Graph, a: Vertex, b: Vertex) -> bool {
    let m = adjacency_matrix(g);
    let n = g.vertex_count();
    let mut reach = vec![[false; 2]; n];
    reach[a][0] = true;
    let mut q = VecDeque::from([(a, 0usize)]);
    while let Some((u, p)) = q.pop_front() {
        for v in 0..n {
            if m[u][v] && !reach[v][1 - p] {
                reach[v][1 - p] = true;
                q.push_back((v, 1 - p));
            }
        }
    }
    reach[b][0]
}

/// Words of the TB shift directly from the graph: pairs of walks whose
/// first vertices are joined by an even walk.
pub fn tb_words(g: &Graph, len: usize) -> BTreeSet<Vec<Label>> {
    let walks = all_walks(g, len);
    let n = g.vertex_count();
    let even: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| even_joined(g, a, b)).collect())
        .collect();
    let mut out = BTreeSet::new();
    for x in &walks {
        for y in &walks {
            if even[x[0]][y[0]] {
                out.insert(x.iter().copied().zip(y.iter().copied()).collect());
            }
        }
    }
    out
}

pub fn is_tb_word(g: &Graph, word: &[Label]) -> bool {
    let m = adjacency_matrix(g);
    !word.is_empty()
        && word.windows(2).all(|w| m[w[0].0][w[1].0] && m[w[0].1][w[1].1])
        && even_joined(g, word[0].0, word[0].1)
}

/// Whether a sequence of `(top, bottom)` pairs is read by some sequence of
/// pointwise adjacent windows of height `2n`, searched column by column
/// over explicit walks.
pub struct ImageOracle {
    m: Vec<Vec<bool>>,
    n: usize,
    walks: Vec<Vec<Vertex>>,
}

impl ImageOracle {
    pub fn new(g: &Graph, n: usize) -> Self {
        ImageOracle {
            m: adjacency_matrix(g),
            n,
            walks: all_walks(g, 2 * n + 1),
        }
    }

    fn column(&self, (t, b): Label) -> Vec<usize> {
        (0..self.walks.len())
            .filter(|&i| self.walks[i][0] == b && self.walks[i][2 * self.n] == t)
            .collect()
    }

    pub fn accepts(&self, word: &[Label]) -> bool {
        let Some(&first) = word.first() else { return true };
        let mut alive = self.column(first);
        for &l in &word[1..] {
            alive = self
                .column(l)
                .into_iter()
                .filter(|&z| {
                    alive
                        .iter()
                        .any(|&y| pointwise_adjacent(&self.m, &self.walks[y], &self.walks[z]))
                })
                .collect();
        }
        !alive.is_empty()
    }
}

pub fn image_accepts(g: &Graph, n: usize, word: &[Label]) -> bool {
    ImageOracle::new(g, n).accepts(word)
}

/// Checks a claimed arc cycle: consecutive arcs chain and never reverse.
pub fn valid_arc_cycle(g: &Graph, cycle: &[(Vertex, Vertex)]) -> bool {
    !cycle.is_empty()
        && cycle.iter().all(|&(u, v)| g.adjacent(u, v))
        && (0..cycle.len()).all(|i| {
            let (a, b) = cycle[i];
            let (c, d) = cycle[(i + 1) % cycle.len()];
            b == c && d != a
        })
}

/// All labelled trees on `n` vertices from Prüfer sequences, reduced up to
/// isomorphism.
pub fn trees_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    if n == 2 {
        return vec![Graph::from_edges(names, &[(0, 1)]).unwrap()];
    }
    let mut reps: Vec<Graph> = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        let t = Graph::from_edges(names.clone(), &edges).unwrap();
        if !reps.iter().any(|r| isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    reps
}
