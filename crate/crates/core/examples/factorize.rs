//! Finest product decompositions.

use cubecx::median::{factorize, verify_median, Graph};

fn main() -> cubecx::Result<()> {
    let cases = [
        ("square", Graph::cycle(4)),
        ("3-leaf star", Graph::star(3)),
        ("3-cube", Graph::hypercube(3)),
        ("3x4 grid", Graph::grid(3, 4)),
    ];
    for (name, graph) in cases {
        let g = verify_median(&graph)?;
        let factors = factorize(&g);
        let sizes: Vec<usize> = factors.iter().map(|f| f.graph.len()).collect();
        println!("{name}: {} factors with {:?} vertices", factors.len(), sizes);
    }
    Ok(())
}
