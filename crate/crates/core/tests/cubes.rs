mod common;

use std::collections::BTreeSet;

use cubecx::cubes::{enumerate_cubes, enumerate_cubes_capped, subdivide, transport_automorphism};
use cubecx::median::{verify_median, Graph, MedianGraph};
use cubecx::wallspace::cubulate;
use cubecx::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mg(g: Graph) -> MedianGraph {
    verify_median(&g).unwrap()
}

/// Cubes counted from BFS alone: an interval `[x, y]` at distance `d` whose
/// `2^d` vertices each have `d` neighbours inside it.
fn brute_cubes(g: &MedianGraph) -> Vec<usize> {
    let d = common::distances_of(g);
    let adj = common::adjacency(g.len(), g.edges());
    let mut seen = BTreeSet::new();
    for x in 0..g.len() {
        for y in 0..g.len() {
            let k = d[x][y];
            let iv: Vec<usize> = (0..g.len()).filter(|&z| d[x][z] + d[z][y] == k).collect();
            if iv.len() != 1 << k {
                continue;
            }
            let regular = iv
                .iter()
                .all(|&v| adj[v].iter().filter(|w| iv.contains(w)).count() == k);
            if regular {
                seen.insert(iv);
            }
        }
    }
    let top = seen.iter().map(|c| c.len().trailing_zeros() as usize).max().unwrap_or(0);
    let mut counts = vec![0; top + 1];
    for c in &seen {
        counts[c.len().trailing_zeros() as usize] += 1;
    }
    counts
}

#[test]
fn three_cube_counts() {
    let cs = enumerate_cubes(&mg(Graph::hypercube(3))).unwrap();
    assert_eq!(cs.counts_by_dim(), vec![8, 12, 6, 1]);
    let top = cs.len() - 1;
    assert_eq!(cs.faces(top).len(), 6);
}

#[test]
fn tree_has_no_squares() {
    assert_eq!(enumerate_cubes(&mg(Graph::star(4))).unwrap().counts_by_dim(), vec![5, 4]);
}

#[test]
fn edge_subdivides_to_path() {
    let s = subdivide(&mg(Graph::path(2))).unwrap();
    assert_eq!(s.graph.len(), 3);
    assert_eq!(s.graph.distance(s.embedding[0], s.embedding[1]), 2);
}

#[test]
fn square_subdivides_to_grid() {
    let s = subdivide(&mg(Graph::cycle(4))).unwrap();
    assert_eq!(s.graph.len(), 9);
    assert_eq!(s.graph.edges().len(), 12);
    let center = s.cubes.len() - 1;
    assert_eq!(s.graph.neighbors(center).len(), 4);
}

#[test]
fn cube_cap_is_enforced() {
    let g = mg(Graph::hypercube(4));
    assert!(matches!(enumerate_cubes_capped(&g, 10), Err(Error::TooLarge { .. })));
}

#[test]
fn square_half_turn_fixes_the_center_after_subdivision() {
    let g = mg(Graph::cycle(4));
    let rot = vec![2, 3, 0, 1];
    assert_eq!(g.swapped_classes(&rot).len(), 2);
    let (s, moved) = transport_automorphism(&g, &rot).unwrap();
    let center = s.cubes.len() - 1;
    assert_eq!(moved[center], center);
    assert!(s.graph.swapped_classes(&moved).is_empty());
}

#[test]
fn transport_rejects_non_automorphisms() {
    let g = mg(Graph::path(3));
    let s = subdivide(&g).unwrap();
    assert!(s.transport(&g, &[1, 0, 2]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cube_counts_match_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = cubulate(&common::random_wallspace(&mut rng, 9, 6)).unwrap().graph;
        prop_assert_eq!(enumerate_cubes(&g).unwrap().counts_by_dim(), brute_cubes(&g));
    }

    #[test]
    fn subdivision_doubles_distances_and_classes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = cubulate(&common::random_wallspace(&mut rng, 8, 6)).unwrap().graph;
        let s = subdivide(&g).unwrap();
        prop_assert_eq!(s.graph.len(), s.cubes.len());
        prop_assert_eq!(s.graph.num_classes(), 2 * g.num_classes());
        for x in 0..g.len() {
            for y in 0..g.len() {
                prop_assert_eq!(s.graph.distance(s.embedding[x], s.embedding[y]), 2 * g.distance(x, y));
            }
        }
    }
}

#[test]
fn transport_is_functorial_and_never_swaps() {
    for (name, g) in common::finite_factors() {
        let autos = common::automorphisms(&g);
        let s = subdivide(&g).unwrap();
        let moved: Vec<Vec<usize>> = autos.iter().map(|a| s.transport(&g, a).unwrap()).collect();
        for (a, ma) in autos.iter().zip(&moved) {
            assert!(s.graph.is_automorphism(ma), "{name}");
            assert!(s.graph.swapped_classes(ma).is_empty(), "{name}");
            for (b, mb) in autos.iter().zip(&moved).take(6) {
                let ab: Vec<usize> = (0..g.len()).map(|v| a[b[v]]).collect();
                let mab = s.transport(&g, &ab).unwrap();
                let composed: Vec<usize> = (0..s.graph.len()).map(|v| ma[mb[v]]).collect();
                assert_eq!(mab, composed, "{name}");
            }
            for v in 0..g.len() {
                assert_eq!(ma[s.embedding[v]], s.embedding[a[v]]);
            }
        }
    }
}
