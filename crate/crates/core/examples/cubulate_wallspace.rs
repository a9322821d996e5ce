//! Cubulate the wallspace of three singletons: the dual complex is a star.

use cubecx::doc;
use cubecx::wallspace::{cubulate, validate_wallspace};

fn main() -> cubecx::Result<()> {
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let w = validate_wallspace(
        s(&["a", "b", "c"]),
        &[
            (s(&["a"]), s(&["b", "c"])),
            (s(&["b"]), s(&["a", "c"])),
            (s(&["c"]), s(&["a", "b"])),
        ],
    )?;
    let c = cubulate(&w)?;
    println!("{} consistent orientations:", c.graph.len());
    for v in 0..c.graph.len() {
        println!("  {} (degree {})", c.graph.name(v), c.graph.neighbors(v).len());
    }
    for (e, &v) in w.elements().iter().zip(&c.principal) {
        println!("principal({e}) = {}", c.graph.name(v));
    }
    print!("{}", doc::to_canonical(&doc::cubulation_json(&w, &c)));
    Ok(())
}
