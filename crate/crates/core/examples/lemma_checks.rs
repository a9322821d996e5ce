//! Induced walls against intrinsic convex walls, and product subalgebras.

use cubecx::median::{
    check_lemma_agree, check_lemma_product, coordinate_product, subalgebra_closure, verify_median, Graph,
    ProductVerdict,
};

fn main() -> cubecx::Result<()> {
    let cube = verify_median(&Graph::hypercube(3))?;
    let y = subalgebra_closure(&cube, &[0, 3, 5])?;
    let verdict = check_lemma_agree(&y)?;
    println!(
        "closure of {{000, 110, 101}} has {} members; {} induced walls, {} intrinsic; agree: {}",
        y.len(),
        verdict.induced.len(),
        verdict.intrinsic.len(),
        verdict.holds
    );

    // A path of length 3 times a path of length 2, as a subalgebra of P4 □ P3.
    let a = verify_median(&Graph::path(4))?;
    let b = verify_median(&Graph::path(3))?;
    let ab = a.cartesian_product(&b);
    let mut pd = coordinate_product(&ab, b.len(), &[0, 1, 2, 3], &[0, 1, 2], (1, 1))?;
    println!("product check: {:?}", check_lemma_product(&pd));

    // Corrupt the isomorphism at one point.
    let key = (pd.factor_t()[0], pd.factor_f()[2]);
    let other = (pd.factor_t()[3], pd.factor_f()[0]);
    let (x, y) = (pd.iso()[&key], pd.iso()[&other]);
    pd.iso_mut().insert(key, y);
    pd.iso_mut().insert(other, x);
    match check_lemma_product(&pd) {
        ProductVerdict::NotAProduct(defect) => println!("corruption detected: {defect:?}"),
        v => println!("unexpected: {v:?}"),
    }
    Ok(())
}
