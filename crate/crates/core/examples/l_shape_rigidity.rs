//! Counts extensions of an L-shaped boundary to the full square. On the
//! triangle the boundary forces the interior; safe symbols leave freedom.

use homshift::gluing::{count_extensions, LBoundary};
use homshift::graph::fixture_from_spec;

fn main() -> homshift::Result<()> {
    let c3 = fixture_from_spec("cycle:3")?;
    let hs = fixture_from_spec("hard_square")?;
    let c4 = fixture_from_spec("cycle:4")?;
    for n in 0..=4 {
        let diagonal = LBoundary::from_fn(n, |x, y| (x + y) % 3);
        let zeros = LBoundary::from_fn(n, |_, _| 0);
        let zigzag = LBoundary::from_fn(n, |x, y| if (x + y) % 2 == 0 { 0 } else { 1 });
        println!(
            "n={n}: triangle {} hard square {} four-cycle {}",
            count_extensions(&c3, &diagonal, n)?,
            count_extensions(&hs, &zeros, n)?,
            count_extensions(&c4, &zigzag, n)?,
        );
    }
    Ok(())
}
