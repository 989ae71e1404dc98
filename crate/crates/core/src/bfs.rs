//! Breadth-first search over anything implementing [`Adjacency`].

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{Adjacency, Distance};

pub fn distances<A: Adjacency + ?Sized>(g: &A, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        g.for_each_neighbor(u, |w| {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        });
    }
    dist
}

pub fn eccentricity<A: Adjacency + ?Sized>(g: &A, source: usize) -> Distance {
    let dist = distances(g, source);
    let mut ecc = 0;
    for d in dist {
        match d {
            Some(d) => ecc = ecc.max(d as usize),
            None => return Distance::Infinite,
        }
    }
    Distance::Finite(ecc)
}

/// All-pairs diameter by one BFS per source, fanned out over the rayon pool.
/// The maximum is order independent, so the result does not depend on the
/// schedule. An empty graph has diameter 0.
pub fn diameter<A: Adjacency + ?Sized>(g: &A) -> Distance {
    (0..g.order())
        .into_par_iter()
        .map(|s| eccentricity(g, s))
        .max()
        .unwrap_or(Distance::Finite(0))
}

pub fn is_connected<A: Adjacency + ?Sized>(g: &A) -> bool {
    g.order() == 0 || distances(g, 0).iter().all(Option::is_some)
}

pub fn is_bipartite<A: Adjacency + ?Sized>(g: &A) -> bool {
    let n = g.order();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        let mut ok = true;
        while let Some(u) = queue.pop_front() {
            let cu = colour[u];
            g.for_each_neighbor(u, |w| {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - cu;
                    queue.push_back(w);
                } else if colour[w] == cu {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
    }
    true
}
