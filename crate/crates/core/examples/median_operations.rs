//! Medians, intervals and convexity on a 3x3 grid, and a non-median cycle.

use cubecx::median::{subalgebra_closure, verify_median, Graph};

fn main() -> cubecx::Result<()> {
    let g = verify_median(&Graph::grid(3, 3))?;
    let v = |name: &str| g.index_of(name).unwrap();
    let m = g.median(v("0,0"), v("2,2"), v("2,0"));
    println!("median((0,0), (2,2), (2,0)) = ({})", g.name(m));

    let names = |vs: &[usize]| vs.iter().map(|&x| g.name(x).to_string()).collect::<Vec<_>>().join(" ");
    println!("I((0,0), (1,2)) = {}", names(&g.interval(v("0,0"), v("1,2"))));
    println!("hyperplanes: {}, diameter: {}", g.num_classes(), g.diameter());

    let diagonal = [v("0,0"), v("2,2")];
    println!("{{(0,0), (2,2)}} convex: {}", g.is_convex(&diagonal));
    let closure = subalgebra_closure(&g, &[v("0,0"), v("2,2"), v("0,2")])?;
    println!("closure of three corners: {}", names(closure.members()));

    match verify_median(&Graph::cycle(6)) {
        Err(e) => println!("6-cycle: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
