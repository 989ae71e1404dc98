//! Searches for the smallest even block-gluing distance of a few fixtures.
//!
//! `cargo run --release --example sofic_gluing -- [n_cap]`

use homshift::graph::{fixture, Family};
use homshift::sofic::{minimal_gluing_distance, witness_json};

fn main() -> homshift::Result<()> {
    let n_cap: usize = std::env::args().nth(1).map_or(2, |s| s.parse().expect("n_cap"));
    let cases = [
        (Family::Complete, 2),
        (Family::HardSquare, 0),
        (Family::Cycle, 3),
        (Family::Cycle, 4),
        (Family::Cycle, 5),
        (Family::Barbell, 3),
        (Family::Path, 4),
        (Family::Complete, 4),
    ];
    for (family, k) in cases {
        let g = fixture(family, k)?;
        let started = std::time::Instant::now();
        let result = minimal_gluing_distance(&g, n_cap)?;
        let found = result.distance.map_or("none".to_string(), |d| d.to_string());
        println!("{family}:{k}  distance {found}  ({:.2?})", started.elapsed());
        for check in &result.checks {
            let witness = check.witness.as_ref().map(|w| witness_json(&g, w).to_string());
            println!(
                "  n={} glues={} explored={} witness={}",
                check.n,
                check.glues,
                check.explored,
                witness.unwrap_or_default()
            );
        }
    }
    Ok(())
}
