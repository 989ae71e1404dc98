//! Classifies a graph read from a file, or every built-in fixture when no
//! file is given, and prints the verdict lines of each report.
//!
//! `cargo run --example classify_report -- [edge-list-file]`

use homshift::classify::{classify, Limits};
use homshift::graph::{fixture_from_spec, parse_graph};

fn main() -> homshift::Result<()> {
    let graphs = match std::env::args().nth(1) {
        Some(path) => vec![(path.clone(), parse_graph(&std::fs::read_to_string(path)?)?)],
        None => [
            "hard_square",
            "complete:2",
            "complete:4",
            "cycle:3",
            "cycle:4",
            "cycle:5",
            "barbell:3",
            "path:5",
            "star:4",
        ]
        .iter()
        .map(|s| Ok((s.to_string(), fixture_from_spec(s)?)))
        .collect::<homshift::Result<_>>()?,
    };
    for (label, g) in graphs {
        let r = classify(&g, &Limits::default())?;
        println!(
            "{label:<12} mixing={:<5} fc-free={:<5} bd={:<5} cover-finite={:<5} phased-SI={:?} phased-BG={:?} distance={:?}",
            r.mixing,
            r.four_cycle_hom_free.unwrap_or(false),
            r.bipartite_dismantlable.unwrap_or(false),
            r.cover_finite.unwrap_or(false),
            r.phased_si.verdict,
            r.phased_block_gluing.verdict,
            r.gluing_distance.distance,
        );
    }
    Ok(())
}
