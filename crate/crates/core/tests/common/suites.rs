//! Seeded property suites. Each returns a one-line summary on success and
//! a description of the first counterexample on failure.

use homshift::bfs;
use homshift::cover::build_cover;
use homshift::fold::{four_cycle_hom_free_structural, is_four_cycle_hom_free, stiff_reduce, FoldPolicy};
use homshift::gluing::{extend_periodic, glue_rect, Phase, RectPattern};
use homshift::graph::{Distance, Graph};
use homshift::sofic::{
    block_gluing_at, build_image_presentation, build_tb_presentation, contains, essentialize,
};
use homshift::walk::{build_cyclic_walk_graph, build_walk_graph, count_walks};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stiff terminals of `orders` random fold orders are isomorphic to the
/// lexicographic one, over the fixtures and `graphs` random graphs.
pub fn fold_confluence(graphs: usize, orders: u64) -> Outcome {
    let mut r = rng(11);
    let mut corpus: Vec<(String, Graph)> = fixtures().into_iter().map(|(s, g)| (s.to_string(), g)).collect();
    for i in 0..graphs {
        corpus.push((
            format!("random #{i}"),
            random_connected_graph(&mut r, 8, 0.3, 0.15),
        ));
    }
    for (label, g) in &corpus {
        let reference = stiff_reduce(g, FoldPolicy::Lexicographic);
        for s in 0..orders {
            let other = stiff_reduce(g, FoldPolicy::Random(1000 + s));
            if other.shape() != reference.shape() || !isomorphic(&other.terminal, &reference.terminal) {
                return Err(format!("{label}: fold order {s} reaches a different stiff graph"));
            }
        }
    }
    Ok(format!("{} graphs x {orders} orders", corpus.len()))
}

/// The structural four-cycle test and its definition agree.
pub fn four_cycle_agreement(samples: usize) -> Outcome {
    let mut r = rng(12);
    for i in 0..samples {
        let g = random_connected_graph(&mut r, 6, 0.35, 0.25);
        let brute = brute_four_cycle_hom_free(&g);
        if is_four_cycle_hom_free(&g) != brute || four_cycle_hom_free_structural(&g) != brute {
            return Err(format!("sample {i}: disagreement on\n{}", g.to_edge_list()));
        }
    }
    Ok(format!("{samples} random graphs"))
}

/// Walk graphs of connected bases are connected, bipartite exactly when
/// the base is, and have the brute-force diameter.
pub fn walk_graph_connectivity(graphs: usize) -> Outcome {
    let mut r = rng(13);
    let mut corpus: Vec<Graph> = fixtures().into_iter().map(|(_, g)| g).collect();
    for _ in 0..graphs {
        corpus.push(random_connected_graph(&mut r, 5, 0.3, 0.1));
    }
    let mut checked = 0;
    for (i, g) in corpus.iter().enumerate() {
        for n in 0..=2 {
            if count_walks(g, 2 * n) > 2000 {
                continue;
            }
            let wg = build_walk_graph(g, n).map_err(|e| e.to_string())?;
            if !bfs::is_connected(&wg) || bfs::is_bipartite(&wg) != g.is_bipartite() {
                return Err(format!("graph {i}, n = {n}:\n{}", g.to_edge_list()));
            }
            if i < 200 && n <= 1 {
                let brute = brute_walk_diameter(g, n).map_or(Distance::Infinite, Distance::Finite);
                if wg.diameter() != brute {
                    return Err(format!(
                        "graph {i}, n = {n}: diameter {} vs {brute}",
                        wg.diameter()
                    ));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, n) pairs over {} graphs", corpus.len()))
}

/// Lifting is a right inverse of the covering map, and the covering map
/// is a bijection on neighbourhoods of interior nodes.
pub fn lift_properties(walks_per_graph: usize) -> Outcome {
    let mut r = rng(14);
    let mut cases = 0;
    for (label, g) in fixtures() {
        if !is_four_cycle_hom_free(&g) {
            continue;
        }
        let cap = 7;
        let tree = build_cover(&g, 0, cap).map_err(|e| e.to_string())?;
        for node in 0..tree.len() {
            if !tree.is_interior(node) {
                continue;
            }
            let mut images: Vec<usize> = tree.tree_neighbors(node).map(|m| tree.terminal(m)).collect();
            images.sort_unstable();
            if images != g.neighbors(tree.terminal(node)) {
                return Err(format!("{label}: covering map not bijective around node {node}"));
            }
        }
        for _ in 0..walks_per_graph {
            let len = r.random_range(0..cap);
            let mut walk = vec![0];
            for _ in 0..len {
                let nbrs = g.neighbors(*walk.last().unwrap());
                walk.push(nbrs[r.random_range(0..nbrs.len())]);
            }
            let lifted =
                homshift::cover::lift_walk(&g, &tree, &walk, tree.root).map_err(|e| e.to_string())?;
            let projected: Vec<usize> = lifted.iter().map(|&m| tree.terminal(m)).collect();
            let steps_ok = lifted
                .windows(2)
                .all(|p| tree.tree_neighbors(p[0]).any(|m| m == p[1]));
            if projected != walk || !steps_ok {
                return Err(format!("{label}: lift of {walk:?} projects to {projected:?}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} lifted walks"))
}

/// Periodic extensions are torus-valid and restrict to the input.
pub fn periodic_extension(per_fixture: usize) -> Outcome {
    let mut r = rng(15);
    let mut cases = 0;
    for (label, g) in fixtures() {
        for _ in 0..per_fixture {
            let (w, h) = (r.random_range(1..=4), r.random_range(1..=4));
            let p = RectPattern::random(&g, w, h, &mut r).map_err(|e| e.to_string())?;
            let c = extend_periodic(&g, &p).map_err(|e| e.to_string())?;
            if !c.is_torus_valid(&g) || c.fundamental.window(0, 0, w, h).as_ref() != Some(&p) {
                return Err(format!("{label}: bad extension of {:?}", p.cells));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} patterns"))
}

/// Every gluing found is a valid strip containing both patterns; for
/// non-bipartite fixtures phase 0 succeeds once the separation exceeds
/// the cyclic walk-graph diameter by two.
pub fn glue_validity(per_fixture: usize) -> Outcome {
    let mut r = rng(16);
    let (mut cases, mut found, mut mixing_checks) = (0, 0, 0);
    for (label, g) in fixtures() {
        for _ in 0..per_fixture {
            let a = RectPattern::random(&g, r.random_range(1..=3), r.random_range(1..=2), &mut r).unwrap();
            let b = RectPattern::random(&g, r.random_range(1..=3), r.random_range(1..=2), &mut r).unwrap();
            let separation = r.random_range(1..=5);
            cases += 1;
            if let Some(glued) = glue_rect(&g, &a, &b, separation).map_err(|e| e.to_string())? {
                found += 1;
                let expected = if glued.phase == Phase::Zero {
                    separation
                } else {
                    separation - 1
                };
                if !glued.verify(&g, &a, &b) || glued.steps != expected {
                    return Err(format!("{label}: invalid strip for separation {separation}"));
                }
            }
            if !g.is_bipartite() {
                let (pa, pb) = (extend_periodic(&g, &a).unwrap(), extend_periodic(&g, &b).unwrap());
                let (x, y) = (pa.periods().0, pb.periods().0);
                let period = (1..=x * y).find(|p| p % x == 0 && p % y == 0).unwrap();
                let Ok(cw) = build_cyclic_walk_graph(&g, period) else {
                    continue;
                };
                if let Distance::Finite(d) = cw.diameter() {
                    let glued = glue_rect(&g, &a, &b, d + 2).unwrap();
                    if glued.map(|x| x.phase) != Some(Phase::Zero) {
                        return Err(format!("{label}: no phase-0 gluing at separation {}", d + 2));
                    }
                    mixing_checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{cases} pattern pairs, {found} glued, {mixing_checks} mixing checks"
    ))
}

const ENUMERATION_WORK: u128 = 5_000_000;

/// Longest length up to `max_len` at which walk pairs, a bound on the TB
/// word count, times `states` stays within `work`.
fn longest_enumerable(g: &Graph, states: usize, max_len: usize, work: u128) -> usize {
    (1..=max_len)
        .take_while(|&l| count_walks(g, l - 1).pow(2) * states as u128 <= work)
        .last()
        .unwrap_or(0)
}

/// `contains` against word enumeration, on the essential image and TB
/// presentations of every fixture for `n <= n_max`.
pub fn containment_oracle(n_max: usize, max_len: usize) -> Outcome {
    let (mut checked, mut shortest) = (0, max_len);
    for (label, g) in fixtures() {
        let tb = essentialize(&build_tb_presentation(&g).unwrap());
        let len = longest_enumerable(&g, tb.state_count(), max_len, ENUMERATION_WORK);
        if automaton_words(&tb, len) != tb_words(&g, len) {
            return Err(format!(
                "{label}: TB presentation words differ from TB words at length {len}"
            ));
        }
        for n in 0..=n_max {
            if count_walks(&g, 2 * n) > 400 {
                continue;
            }
            let im = essentialize(&build_image_presentation(&g, n).unwrap());
            if essentialize(&im) != im {
                return Err(format!("{label}: essentialize not idempotent"));
            }
            for a in [&tb, &im] {
                if !contains(a, a).unwrap().holds {
                    return Err(format!("{label}: containment not reflexive"));
                }
            }
            let len = longest_enumerable(&g, im.state_count(), len, ENUMERATION_WORK);
            shortest = shortest.min(len);
            let im_words = automaton_words(&im, len);
            let oracle = ImageOracle::new(&g, n);
            if let Some(w) = im_words.iter().find(|w| !oracle.accepts(w)) {
                return Err(format!(
                    "{label}, n = {n}: presentation reads a non-image word {w:?}"
                ));
            }
            let tb_set = automaton_words(&tb, len);
            for (a, b, a_words, b_words, name) in [
                (&tb, &im, &tb_set, &im_words, "TB in image"),
                (&im, &tb, &im_words, &tb_set, "image in TB"),
            ] {
                let c = contains(a, b).unwrap();
                if c.holds {
                    if !a_words.is_subset(b_words) {
                        return Err(format!(
                            "{label}, n = {n}: {name} claimed but fails at length {len}"
                        ));
                    }
                } else {
                    let w = c.witness.unwrap();
                    if !automaton_accepts(a, &w) || automaton_accepts(b, &w) {
                        return Err(format!("{label}, n = {n}: bad witness for {name}: {w:?}"));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} containments checked against all words of length {shortest} to {max_len}"
    ))
}

/// Gluing at distance `2n` persists at `2n + 2`, and four-cycle hom-free
/// fixtures glue only when bipartite-dismantlable.
pub fn gluing_monotone_and_consistent() -> Outcome {
    let mut checked = 0;
    for (label, g) in fixtures() {
        let mut previous = false;
        for n in 0..=2 {
            if count_walks(&g, 2 * n) > 5000 {
                break;
            }
            let now = block_gluing_at(&g, n).map_err(|e| e.to_string())?.glues;
            if previous && !now {
                return Err(format!("{label}: glues at n = {} but not at n = {n}", n - 1));
            }
            if now && is_four_cycle_hom_free(&g) && !homshift::fold::is_bipartite_dismantlable(&g).unwrap() {
                return Err(format!("{label}: glues without being bipartite-dismantlable"));
            }
            previous = now;
            checked += 1;
        }
    }
    Ok(format!("{checked} (fixture, n) pairs"))
}
