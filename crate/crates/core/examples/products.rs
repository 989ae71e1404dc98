//! Tensor and Cartesian products of small graphs, classified.

use homshift::classify::{classify, Limits};
use homshift::graph::{cartesian_product, fixture_from_spec, tensor_product};

fn main() -> homshift::Result<()> {
    let pairs = [
        ("hard_square", "hard_square"),
        ("complete:2", "path:3"),
        ("cycle:3", "complete:2"),
        ("hard_square", "cycle:3"),
    ];
    for (x, y) in pairs {
        let (g1, g2) = (fixture_from_spec(x)?, fixture_from_spec(y)?);
        for (kind, product) in [
            ("tensor", tensor_product(&g1, &g2)?),
            ("cartesian", cartesian_product(&g1, &g2)?),
        ] {
            let g = &product.graph;
            let r = classify(
                g,
                &Limits {
                    max_n: 1,
                    ..Limits::default()
                },
            )?;
            println!(
                "{x} {kind} {y}: {} vertices, connected {}, mixing {}, phased block-gluing {:?}",
                g.vertex_count(),
                r.connected,
                r.mixing,
                r.phased_block_gluing.verdict
            );
        }
    }
    Ok(())
}
