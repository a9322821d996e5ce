//! Median graphs as discrete median algebras.

mod factor;
mod graph;
mod product;
mod subalgebra;

pub use factor::{factorize, reassembles, Factor};
pub use graph::{verify_median, Coverage, Graph, MedianGraph, EXHAUSTIVE_LIMIT, SAMPLED_TRIPLES};
pub use product::{
    check_lemma_product, coordinate_product, ProductDecomposition, ProductDefect, ProductVerdict,
};
pub use subalgebra::{
    check_lemma_agree, induced_walls, intrinsic_walls, intrinsic_walls_capped, subalgebra_closure,
    AgreeVerdict, SplitWall, Subalgebra, WallOrigin, INTRINSIC_WALLS_CAP,
};

/// Median of `x, y, z` in `g`.
pub fn median(g: &MedianGraph, x: usize, y: usize, z: usize) -> usize {
    g.median(x, y, z)
}

pub fn interval(g: &MedianGraph, x: usize, y: usize) -> Vec<usize> {
    g.interval(x, y)
}

pub fn is_convex(g: &MedianGraph, set: &[usize]) -> bool {
    g.is_convex(set)
}
