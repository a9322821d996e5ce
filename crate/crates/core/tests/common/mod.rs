//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use cubecx::grid::{Point, ProductComplex, ProductIsometry, SignedAffineMap};
use cubecx::median::{verify_median, Graph, MedianGraph};
use cubecx::wallspace::Wallspace;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// All-pairs BFS distances; `usize::MAX` when unreachable.
pub fn all_distances(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..adj.len())
        .map(|s| {
            let mut d = vec![usize::MAX; adj.len()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if d[w] == usize::MAX {
                        d[w] = d[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Metric median oracle: the vertices on geodesics between every pair of
/// `x, y, z`.
pub fn metric_medians(d: &[Vec<usize>], x: usize, y: usize, z: usize) -> Vec<usize> {
    (0..d.len())
        .filter(|&m| d[x][m] + d[m][y] == d[x][y] && d[y][m] + d[m][z] == d[y][z] && d[x][m] + d[m][z] == d[x][z])
        .collect()
}

pub fn distances_of(g: &MedianGraph) -> Vec<Vec<usize>> {
    all_distances(&adjacency(g.len(), g.edges()))
}

/// Random wallspace with up to `max_elements` elements and `max_walls`
/// distinct walls.
pub fn random_wallspace<R: Rng>(rng: &mut R, max_elements: usize, max_walls: usize) -> Wallspace {
    let n = rng.gen_range(2..=max_elements);
    let target = rng.gen_range(0..=max_walls);
    let mut walls: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut keys = std::collections::HashSet::new();
    for _ in 0..target * 8 {
        if walls.len() == target {
            break;
        }
        let mask: u32 = rng.gen_range(1..(1u32 << n) - 1);
        let key = if mask & 1 == 1 { mask } else { !mask & ((1 << n) - 1) };
        if !keys.insert(key) {
            continue;
        }
        let a: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        walls.push((a, b));
    }
    let elements = (0..n).map(|i| format!("s{i}")).collect();
    Wallspace::from_indices(elements, walls).unwrap()
}

/// Every automorphism of a small graph, by backtracking on adjacency.
pub fn automorphisms(g: &MedianGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.are_adjacent(u, v)).collect()).collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(v: usize, adj: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = adj.len();
        if v == n {
            out.push(map.clone());
            return;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            if (0..v).all(|u| adj[u][v] == adj[map[u]][w]) {
                map[v] = w;
                used[w] = true;
                go(v + 1, adj, map, used, out);
                used[w] = false;
            }
        }
        map[v] = usize::MAX;
    }
    go(0, &adj, &mut map, &mut used, &mut out);
    out
}

/// Small median graphs used as finite factors.
pub fn finite_factors() -> Vec<(&'static str, MedianGraph)> {
    let mg = |g: Graph| verify_median(&g).unwrap();
    vec![
        ("point", mg(Graph::path(1))),
        ("edge", mg(Graph::path(2))),
        ("path3", mg(Graph::path(3))),
        ("square", mg(Graph::cycle(4))),
        ("star3", mg(Graph::star(3))),
        ("grid2x3", mg(Graph::grid(2, 3))),
        ("grid3x3", mg(Graph::grid(3, 3))),
        ("cube3", mg(Graph::hypercube(3))),
        ("cube4", mg(Graph::hypercube(4))),
        ("star5", mg(Graph::star(5))),
        ("grid5x10", mg(Graph::grid(5, 10))),
    ]
}

pub fn random_grid_map<R: Rng>(rng: &mut R, k: usize, max_trans: i64) -> SignedAffineMap {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let signs = (0..k).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let trans: Vec<i64> = (0..k).map(|_| rng.gen_range(-max_trans..=max_trans)).collect();
    SignedAffineMap::from_i64(perm, signs, &trans).unwrap()
}

/// A corpus of product isometries on finite factors up to 50 vertices and
/// grids of rank at most 3 with translations in `[-5, 5]`.
pub fn corpus<R: Rng>(rng: &mut R, size: usize) -> Vec<(ProductComplex, ProductIsometry)> {
    let factors: Vec<(MedianGraph, Vec<Vec<usize>>)> = finite_factors()
        .into_iter()
        .map(|(_, g)| {
            let autos = automorphisms(&g);
            (g, autos)
        })
        .collect();
    (0..size)
        .map(|_| {
            let (g, autos) = factors.choose(rng).unwrap();
            let k = rng.gen_range(0..=3);
            let pc = ProductComplex::new(g.clone(), k);
            let phi = autos.choose(rng).unwrap().clone();
            let iso = ProductIsometry::new(phi, random_grid_map(rng, k, 5));
            (pc, iso)
        })
        .collect()
}

/// Brute-force minimum of `d(x, g x)` over `finite × [-r, r]^k`, with the
/// minimizing points, evaluating distances from BFS and coordinates.
pub fn brute_min(pc: &ProductComplex, g: &ProductIsometry, r: i64) -> (i64, Vec<(usize, Vec<i64>)>) {
    let d = distances_of(&pc.finite);
    let k = pc.grid_rank;
    let mut best = i64::MAX;
    let mut at = Vec::new();
    let side = (2 * r + 1) as usize;
    for idx in 0..side.pow(k as u32) {
        let mut x = Vec::with_capacity(k);
        let mut rest = idx;
        for _ in 0..k {
            x.push((rest % side) as i64 - r);
            rest /= side;
        }
        x.reverse();
        let image = apply_i64(&g.grid, &x);
        let grid_d: i64 = x.iter().zip(&image).map(|(a, b)| (a - b).abs()).sum();
        for v in 0..pc.finite.len() {
            let total = d[v][g.finite[v]] as i64 + grid_d;
            if total < best {
                best = total;
                at.clear();
            }
            if total == best {
                at.push((v, x.clone()));
            }
        }
    }
    at.sort();
    (best, at)
}

/// `(A v + b)` evaluated directly from the map's data.
pub fn apply_i64(map: &SignedAffineMap, v: &[i64]) -> Vec<i64> {
    let k = v.len();
    let mut w = vec![0i64; k];
    for i in 0..k {
        let t: i64 = map.trans()[map.perm()[i]].clone().try_into().unwrap();
        w[map.perm()[i]] = map.signs()[i] as i64 * v[i] + t;
    }
    w
}

/// Position of `p` after `n` applications of `g`, one step at a time.
pub fn iterate(g: &ProductIsometry, p: &Point, n: usize) -> Point {
    (0..n).fold(p.clone(), |q, _| g.apply(&q))
}

/// Some power up to `max_p` swaps a finite class or a grid hyperplane
/// `x_c = j + 1/2` with `|j| ≤ 20`; checked from the sides directly.
pub fn brute_swaps(pc: &ProductComplex, g: &ProductIsometry, max_p: usize) -> bool {
    let n = pc.finite.len();
    let mut phi: Vec<usize> = (0..n).collect();
    for p in 1..=max_p {
        phi = phi.iter().map(|&v| g.finite[v]).collect();
        for c in 0..pc.finite.num_classes() {
            if (0..n).all(|v| pc.finite.side(v, c) != pc.finite.side(phi[v], c)) {
                return true;
            }
        }
        for c in 0..pc.grid_rank {
            for j in -20i64..=20 {
                // Probe both halfspaces near the hyperplane, varying the
                // other coordinates too.
                let swapped = (-2i64..=2).all(|o| {
                    (j - 2..=j + 3).all(|x| {
                        let mut q = vec![o; pc.grid_rank];
                        q[c] = x;
                        let image = iterate(g, &Point::from_i64(0, &q), p).grid;
                        (image[c] <= BigInt::from(j)) == (x > j)
                    })
                });
                if swapped {
                    return true;
                }
            }
        }
    }
    false
}

/// Classification from orbits and hyperplane images alone. 840 is a
/// multiple of every finite and linear order in the corpus.
pub fn brute_kind(pc: &ProductComplex, g: &ProductIsometry) -> &'static str {
    let origin = Point::from_i64(0, &vec![0; pc.grid_rank]);
    if iterate(g, &origin, 840) == origin {
        "elliptic"
    } else if brute_swaps(pc, g, 24) {
        "inverting"
    } else {
        "loxodromic"
    }
}
