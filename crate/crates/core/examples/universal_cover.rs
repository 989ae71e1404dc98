//! Builds truncated universal covers, prints finiteness certificates, and
//! lifts a closed walk of the triangle to an open path in its cover.

use homshift::cover::{build_cover, cover_certificate, lift_walk, CoverCertificate};
use homshift::graph::fixture_from_spec;

fn main() -> homshift::Result<()> {
    for spec in ["hard_square", "path:4", "cycle:3", "cycle:5", "barbell:4"] {
        let g = fixture_from_spec(spec)?;
        match cover_certificate(&g)? {
            CoverCertificate::Finite { longest_walk, .. } => {
                let tree = build_cover(&g, 0, longest_walk + 1)?;
                println!("{spec:<12} finite cover with {} nodes", tree.len());
            }
            c @ CoverCertificate::Infinite { .. } => {
                let arcs: Vec<String> = c
                    .cycle_names(&g)
                    .iter()
                    .map(|[u, v]| format!("{u}->{v}"))
                    .collect();
                println!("{spec:<12} infinite cover, arc cycle {}", arcs.join(" "));
            }
        }
    }

    let c3 = fixture_from_spec("cycle:3")?;
    let tree = build_cover(&c3, 0, 6)?;
    let lift = lift_walk(&c3, &tree, &[0, 1, 2, 0], tree.root)?;
    let ends = lift.last().copied().unwrap();
    println!(
        "closed walk 0 1 2 0 lifts to a walk ending at depth {} of the cover",
        tree.nodes[ends].depth
    );
    print!(
        "{}",
        build_cover(&fixture_from_spec("hard_square")?, 1, 4)?.to_dot(&fixture_from_spec("hard_square")?)
    );
    Ok(())
}
