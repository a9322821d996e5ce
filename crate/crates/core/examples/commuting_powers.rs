//! The power search for commuting loxodromic isometries.

use cubecx::fixtures;
use cubecx::isometry::{common_min_power, default_max_m, intersect, minset};

fn main() -> cubecx::Result<()> {
    for f in [fixtures::paper_example(), fixtures::four_cube(), fixtures::subdivided_square()] {
        let g = f.generator("g").unwrap();
        let h = f.generator("h").unwrap();
        let mg = minset(&f.complex, g);
        println!("{}:", f.name);
        println!("  Min g ∩ Min h empty: {}", intersect(&mg, &minset(&f.complex, h)).is_none());
        let r = common_min_power(&f.complex, g, h, default_max_m(h))?;
        println!(
            "  m = {} (empty for {:?}), witness ({}, {:?})",
            r.m,
            r.empty_below,
            f.complex.finite.name(r.witness.finite),
            r.witness.grid
        );
    }
    Ok(())
}
