//! Cube counts, the first cubical subdivision, and transported automorphisms.

use cubecx::cubes::{enumerate_cubes, transport_automorphism};
use cubecx::median::{verify_median, Graph};

fn main() -> cubecx::Result<()> {
    let cube = verify_median(&Graph::hypercube(3))?;
    println!("3-cube cubes by dimension: {:?}", enumerate_cubes(&cube)?.counts_by_dim());

    let square = verify_median(&Graph::cycle(4))?;
    let rotation = [1, 2, 3, 0];
    let (sub, moved) = transport_automorphism(&square, &rotation)?;
    println!(
        "subdivided square: {} vertices, {} hyperplanes",
        sub.graph.len(),
        sub.graph.num_classes()
    );
    let fixed: Vec<&str> = (0..moved.len()).filter(|&c| moved[c] == c).map(|c| sub.graph.name(c)).collect();
    println!("rotation fixes {fixed:?} in the subdivision");
    for u in 0..4 {
        for v in u + 1..4 {
            let (a, b) = (sub.embedding[u], sub.embedding[v]);
            println!(
                "d({}, {}) = {} -> {}",
                square.name(u),
                square.name(v),
                square.distance(u, v),
                sub.graph.distance(a, b)
            );
        }
    }
    Ok(())
}
