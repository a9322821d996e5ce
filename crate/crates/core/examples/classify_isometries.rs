//! Classify every fixture generator and show its translation length,
//! minset and, for loxodromic ones, an axis.

use cubecx::fixtures::all_fixtures;
use cubecx::isometry::{classify, minset, Classification};

fn main() -> cubecx::Result<()> {
    for f in all_fixtures()? {
        for (name, g) in &f.generators {
            let c = classify(&f.complex, g)?;
            let m = minset(&f.complex, g);
            let min_vertices: Vec<&str> = m.finite_part.iter().map(|&v| f.complex.finite.name(v)).collect();
            println!(
                "{:<18} {name}: {:<10} norm {}, finite part of Min {name} = {:?}",
                f.name,
                c.kind(),
                m.norm,
                min_vertices
            );
            if let Classification::Loxodromic(axis) = &c {
                let steps: Vec<String> = axis
                    .steps
                    .iter()
                    .map(|p| format!("({}, {:?})", f.complex.finite.name(p.finite), p.grid))
                    .collect();
                println!("{:>22} axis domain: {}", "", steps.join(" "));
            }
        }
    }
    Ok(())
}
