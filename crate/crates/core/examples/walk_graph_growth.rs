//! Walk-graph diameters as the window grows, with the linear bounds.

use homshift::graph::fixture_from_spec;
use homshift::walk::growth_probe;

fn main() -> homshift::Result<()> {
    for (spec, n_max) in [
        ("cycle:3", 4),
        ("cycle:5", 3),
        ("hard_square", 4),
        ("complete:4", 2),
        ("cycle:4", 3),
    ] {
        let g = fixture_from_spec(spec)?;
        let probe = growth_probe(&g, n_max)?;
        println!(
            "# {spec}: nondecreasing {} upper bound holds {} linear lower bound {:?}",
            probe.nondecreasing, probe.upper_bound_holds, probe.linear_lower_bound_holds
        );
        print!("{}", probe.to_csv()?);
    }
    Ok(())
}
