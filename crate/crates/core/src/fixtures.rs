//! Built-in complexes and isometries.

use num_bigint::BigInt;

use crate::error::Result;
use crate::grid::{ProductComplex, ProductIsometry, SignedAffineMap};
use crate::median::{verify_median, Graph, MedianGraph};

/// A complex with named isometries.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub complex: ProductComplex,
    pub generators: Vec<(String, ProductIsometry)>,
}

impl Fixture {
    pub fn generator(&self, name: &str) -> Option<&ProductIsometry> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn isometries(&self) -> Vec<ProductIsometry> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }
}

pub const FIXTURE_NAMES: &[&str] = &[
    "paper-example",
    "subdivided-square",
    "grid-z2",
    "line-translation",
    "line-reflection",
    "glide-reflection",
    "star-rotation",
    "four-cube",
];

pub fn fixture(name: &str) -> Option<Fixture> {
    Some(match name {
        "paper-example" => paper_example(),
        "subdivided-square" => subdivided_square(),
        "grid-z2" => grid_z2(),
        "line-translation" => line_translation(),
        "line-reflection" => line_reflection(),
        "glide-reflection" => glide_reflection(),
        "star-rotation" => star_rotation(),
        "four-cube" => four_cube(),
        _ => return None,
    })
}

fn shift(k: i64) -> SignedAffineMap {
    SignedAffineMap::translation(vec![BigInt::from(k)])
}

fn point() -> MedianGraph {
    verify_median(&Graph::path(1)).unwrap()
}

/// The square `C` with corners `00, 01, 10, 11` (indices 0 to 3).
pub fn square() -> MedianGraph {
    let names = ["00", "01", "10", "11"].map(String::from).to_vec();
    verify_median(&Graph::new(names, vec![(0, 1), (0, 2), (1, 3), (2, 3)])).unwrap()
}

/// `C × ℤ`; `g` reflects `C` across the diagonal through `00` and `11`,
/// `h` across the other diagonal, and both translate `ℤ` by one.
pub fn paper_example() -> Fixture {
    Fixture {
        name: "paper-example",
        description: "square × Z with the two diagonal reflections, each composed with a unit translation",
        complex: ProductComplex::new(square(), 1),
        generators: vec![
            ("g".into(), ProductIsometry::new(vec![0, 2, 1, 3], shift(1))),
            ("h".into(), ProductIsometry::new(vec![3, 1, 2, 0], shift(1))),
        ],
    }
}

/// [`paper_example`] after one cubical subdivision.
pub fn subdivided_square() -> Fixture {
    let base = paper_example();
    let sub = base.complex.subdivide(&base.isometries()).unwrap();
    Fixture {
        name: "subdivided-square",
        description: "first cubical subdivision of paper-example: 3x3 grid × Z",
        complex: sub.complex,
        generators: base
            .generators
            .iter()
            .map(|(n, _)| n.clone())
            .zip(sub.isometries)
            .collect(),
    }
}

pub fn grid_z2() -> Fixture {
    let t = |x: i64, y: i64| ProductIsometry::grid_only(1, SignedAffineMap::translation(vec![x.into(), y.into()]));
    Fixture {
        name: "grid-z2",
        description: "Z^2 acting on the Z^2 grid by unit translations",
        complex: ProductComplex::new(point(), 2),
        generators: vec![("a".into(), t(1, 0)), ("b".into(), t(0, 1))],
    }
}

pub fn line_translation() -> Fixture {
    Fixture {
        name: "line-translation",
        description: "x -> x + 1 on Z",
        complex: ProductComplex::new(point(), 1),
        generators: vec![("t".into(), ProductIsometry::grid_only(1, shift(1)))],
    }
}

pub fn line_reflection() -> Fixture {
    let r = SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap();
    Fixture {
        name: "line-reflection",
        description: "x -> 1 - x on Z, stabilizing the edge {0, 1}",
        complex: ProductComplex::new(point(), 1),
        generators: vec![("r".into(), ProductIsometry::grid_only(1, r))],
    }
}

pub fn glide_reflection() -> Fixture {
    let g = SignedAffineMap::from_i64(vec![0, 1], vec![-1, 1], &[1, 1]).unwrap();
    Fixture {
        name: "glide-reflection",
        description: "(x, y) -> (1 - x, y + 1) on Z^2",
        complex: ProductComplex::new(point(), 2),
        generators: vec![("g".into(), ProductIsometry::grid_only(1, g))],
    }
}

/// Star with three leaves × ℤ; `s` rotates the leaves and translates.
pub fn star_rotation() -> Fixture {
    Fixture {
        name: "star-rotation",
        description: "3-leaf star × Z, rotating the leaves and translating by one",
        complex: ProductComplex::new(verify_median(&Graph::star(3)).unwrap(), 1),
        generators: vec![("s".into(), ProductIsometry::new(vec![0, 2, 3, 1], shift(1)))],
    }
}

/// 4-cube × ℤ. `h` rotates the four coordinates; `g` applies the
/// half-turn of the coordinates followed by the antipodal map. `g` fixes
/// four vertices on which `h` acts as a 4-cycle, so the first power of `h`
/// whose minset meets `Min g` is the fourth.
pub fn four_cube() -> Fixture {
    let cube = verify_median(&Graph::hypercube(4)).unwrap();
    let rotate = |v: usize, by: usize| ((v << by) | (v >> (4 - by))) & 0xf;
    let h = (0..16).map(|v| rotate(v, 1)).collect();
    let g = (0..16).map(|v| rotate(v, 2) ^ 0xf).collect();
    Fixture {
        name: "four-cube",
        description: "4-cube × Z with commuting coordinate rotations; common power 4",
        complex: ProductComplex::new(cube, 1),
        generators: vec![
            ("g".into(), ProductIsometry::new(g, shift(1))),
            ("h".into(), ProductIsometry::new(h, shift(1))),
        ],
    }
}

/// All fixtures, checked to act by automorphisms.
pub fn all_fixtures() -> Result<Vec<Fixture>> {
    FIXTURE_NAMES
        .iter()
        .map(|n| {
            let f = fixture(n).unwrap();
            for (_, g) in &f.generators {
                f.complex.check_isometry(g)?;
            }
            Ok(f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{classify, common_min_power, default_max_m, minset};

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(all_fixtures().unwrap().len(), FIXTURE_NAMES.len());
    }

    #[test]
    fn example_powers() {
        let f = paper_example();
        let (g, h) = (f.generator("g").unwrap(), f.generator("h").unwrap());
        assert!(g.commutes_with(h).unwrap());
        assert_eq!(minset(&f.complex, g).finite_part, vec![0, 3]);
        let r = common_min_power(&f.complex, g, h, default_max_m(h)).unwrap();
        assert_eq!((r.m, r.empty_below), (2, vec![1]));
    }

    #[test]
    fn four_cube_power() {
        let f = four_cube();
        let (g, h) = (f.generator("g").unwrap(), f.generator("h").unwrap());
        assert!(g.commutes_with(h).unwrap());
        assert!(classify(&f.complex, g).unwrap().is_loxodromic());
        assert!(classify(&f.complex, h).unwrap().is_loxodromic());
        assert_eq!(minset(&f.complex, g).finite_part.len(), 4);
        let r = common_min_power(&f.complex, g, h, default_max_m(h)).unwrap();
        assert_eq!(r.m, 4);
    }

    #[test]
    fn subdivision_shares_center() {
        let f = subdivided_square();
        let (g, h) = (f.generator("g").unwrap(), f.generator("h").unwrap());
        assert_eq!(common_min_power(&f.complex, g, h, 8).unwrap().m, 1);
    }
}
