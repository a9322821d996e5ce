//! Translation length as a discrete norm on Z^2 acting on its grid, and on
//! the nonnegative words of the square example.

use cubecx::fixtures;
use cubecx::harness::{build_action, certify_discrete_norm, default_sample, nonnegative_sample};

fn main() -> cubecx::Result<()> {
    let f = fixtures::grid_z2();
    let action = build_action(f.complex, f.generators)?;
    let report = certify_discrete_norm(&action, &default_sample(2, 2), 4)?;
    print!("{}", report.summary());

    let f = fixtures::paper_example();
    let action = build_action(f.complex, f.generators)?;
    let report = certify_discrete_norm(&action, &nonnegative_sample(2, 3), 8)?;
    println!();
    print!("{}", report.summary());
    println!("passes: {}", report.passes());
    Ok(())
}
