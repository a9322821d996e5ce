mod common;

use cubecx::median::{Subalgebra, intrinsic_walls};
use cubecx::wallspace::{cubulate, cubulate_capped, validate_wallspace, Wallspace};
use cubecx::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ids(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn ws(elements: &[&str], walls: &[(&[&str], &[&str])]) -> cubecx::Result<Wallspace> {
    let walls: Vec<_> = walls.iter().map(|(a, b)| (ids(a), ids(b))).collect();
    validate_wallspace(ids(elements), &walls)
}

#[test]
fn two_crossing_walls_give_a_square() {
    let w = ws(&["a", "b", "c", "d"], &[(&["a", "b"], &["c", "d"]), (&["a", "c"], &["b", "d"])]).unwrap();
    let c = cubulate(&w).unwrap();
    assert_eq!(c.graph.len(), 4);
    assert_eq!(c.graph.edges().len(), 4);
    assert_eq!(c.graph.num_classes(), 2);
}

#[test]
fn nested_walls_give_a_path() {
    let w = ws(&["a", "b", "c"], &[(&["a"], &["b", "c"]), (&["a", "b"], &["c"])]).unwrap();
    let c = cubulate(&w).unwrap();
    assert_eq!(c.graph.len(), 3);
    assert_eq!(c.graph.edges().len(), 2);
    let p = &c.principal;
    assert_eq!(c.graph.distance(p[0], p[2]), 2);
}

#[test]
fn three_pairwise_crossing_walls_give_a_cube() {
    // Elements are the 8 corners; walls are the coordinate splits.
    let names: Vec<String> = (0..8).map(|i| format!("{i:03b}")).collect();
    let walls = (0..3)
        .map(|b| {
            let (x, y): (Vec<usize>, Vec<usize>) = (0..8).partition(|i| i >> b & 1 == 0);
            (x, y)
        })
        .collect();
    let w = Wallspace::from_indices(names, walls).unwrap();
    let c = cubulate(&w).unwrap();
    assert_eq!(c.graph.len(), 8);
    assert_eq!(c.graph.edges().len(), 12);
}

#[test]
fn no_walls_is_a_point() {
    let w = ws(&["a", "b"], &[]).unwrap();
    let c = cubulate(&w).unwrap();
    assert_eq!(c.graph.len(), 1);
    assert_eq!(c.principal, vec![0, 0]);
}

#[test]
fn invalid_wallspaces() {
    assert!(matches!(
        ws(&["a", "b"], &[(&[], &["a", "b"])]),
        Err(Error::EmptyHalfspace { wall: 0 })
    ));
    assert!(matches!(
        ws(&["a", "b", "c"], &[(&["a"], &["b"])]),
        Err(Error::NotAPartition { wall: 0, .. })
    ));
    assert!(matches!(
        ws(&["a", "b"], &[(&["a", "b"], &["b"])]),
        Err(Error::NotAPartition { .. })
    ));
    assert!(matches!(
        ws(&["a", "b"], &[(&["a"], &["z"])]),
        Err(Error::UnknownElement(e)) if e == "z"
    ));
    assert!(matches!(
        ws(&["a", "b"], &[(&["a"], &["b"]), (&["b"], &["a"])]),
        Err(Error::DuplicateWall { first: 0, second: 1 })
    ));
    assert!(matches!(ws(&["a", "a"], &[]), Err(Error::DuplicateElement(_))));
}

#[test]
fn cap_is_enforced() {
    let names: Vec<String> = (0..16).map(|i| format!("{i}")).collect();
    let walls = (0..4)
        .map(|b| (0..16).partition::<Vec<usize>, _>(|i| i >> b & 1 == 0))
        .collect();
    let w = Wallspace::from_indices(names, walls).unwrap();
    assert!(matches!(cubulate_capped(&w, 15), Err(Error::TooLarge { .. })));
    assert_eq!(cubulate_capped(&w, 16).unwrap().graph.len(), 16);
}

/// Consistent orientations counted by brute force over all 2^w choices.
fn brute_orientations(w: &Wallspace) -> usize {
    let nw = w.walls().len();
    (0..1u32 << nw)
        .filter(|&mask| {
            (0..nw).all(|i| {
                (0..nw).all(|j| {
                    let si = mask >> i & 1 == 1;
                    let sj = mask >> j & 1 == 1;
                    (0..w.elements().len()).any(|e| w.side(e, i) == si && w.side(e, j) == sj)
                })
            })
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubulation_is_median_and_principal_map_is_isometric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_wallspace(&mut rng, 10, 8);
        let c = cubulate(&w).unwrap();
        // Independent check of the median property via BFS metrics.
        let d = common::distances_of(&c.graph);
        let n = c.graph.len();
        for x in 0..n {
            for y in 0..n {
                prop_assert!(d[x][y] != usize::MAX);
                for z in 0..n {
                    let ms = common::metric_medians(&d, x, y, z);
                    prop_assert_eq!(ms, vec![c.graph.median(x, y, z)]);
                }
            }
        }
        prop_assert_eq!(n, brute_orientations(&w));
        let m = w.elements().len();
        for s in 0..m {
            for t in 0..m {
                prop_assert_eq!(c.graph.distance(c.principal[s], c.principal[t]), w.separation(s, t));
            }
        }
        prop_assert_eq!(c.graph.num_classes(), w.walls().len());
    }

    #[test]
    fn recubulating_a_median_algebra_gives_it_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_wallspace(&mut rng, 8, 6);
        let g = cubulate(&w).unwrap().graph;
        prop_assume!(g.len() <= 20);
        let full = Subalgebra::full(&g);
        prop_assert_eq!(intrinsic_walls(&full).unwrap().len(), g.num_classes());
        let w2 = Wallspace::from_median_algebra(&full).unwrap();
        let c2 = cubulate(&w2).unwrap();
        prop_assert_eq!(c2.graph.len(), g.len());
        // Principal map is a bijective isometry.
        let mut image = c2.principal.clone();
        image.sort_unstable();
        image.dedup();
        prop_assert_eq!(image.len(), g.len());
        for x in 0..g.len() {
            for y in 0..g.len() {
                prop_assert_eq!(c2.graph.distance(c2.principal[x], c2.principal[y]), g.distance(x, y));
            }
        }
    }

    #[test]
    fn hyperplane_wallspace_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_wallspace(&mut rng, 10, 8);
        let g = cubulate(&w).unwrap().graph;
        let c = cubulate(&Wallspace::from_hyperplanes(&g)).unwrap();
        prop_assert_eq!(c.graph.len(), g.len());
        for x in 0..g.len() {
            prop_assert_eq!(c.graph.distance(c.principal[0], c.principal[x]), g.distance(0, x));
        }
    }
}
