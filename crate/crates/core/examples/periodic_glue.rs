//! Extends random patterns to periodic configurations and glues pairs of
//! them at increasing separations.

use homshift::gluing::{extend_periodic, glue_rect, RectPattern};
use homshift::graph::fixture_from_spec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> homshift::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for spec in ["hard_square", "cycle:4", "cycle:5", "complete:3"] {
        let g = fixture_from_spec(spec)?;
        let a = RectPattern::random(&g, 3, 2, &mut rng)?;
        let b = RectPattern::random(&g, 2, 2, &mut rng)?;
        let pa = extend_periodic(&g, &a)?;
        println!("{spec}: a extends with periods {:?}", pa.periods());
        for separation in 1..=4 {
            match glue_rect(&g, &a, &b, separation)? {
                Some(glued) => {
                    println!(
                        "  separation {separation}: phase {} ({} steps)",
                        glued.phase.as_str(),
                        glued.steps
                    );
                    if separation == 4 {
                        print!("{}", glued.strip.to_text(&g));
                    }
                }
                None => println!("  separation {separation}: not found"),
            }
        }
    }
    Ok(())
}
