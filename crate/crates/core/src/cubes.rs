//! Cubes of a median graph, cubical subdivision and transport of
//! automorphisms to the subdivision.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::median::{verify_median, Graph, MedianGraph};

/// Default cap on the total number of cubes.
pub const DEFAULT_CUBE_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    pub dim: usize,
    /// Sorted corner vertices; the canonical key of the cube.
    pub corners: Vec<usize>,
    /// Hyperplanes spanned by the cube, sorted.
    pub classes: Vec<usize>,
}

/// All cubes of a median graph in canonical order (by dimension, then by
/// corner list), with codimension-1 face incidences.
#[derive(Clone, Debug)]
pub struct CubeSet {
    cubes: Vec<Cube>,
    index: HashMap<Vec<usize>, usize>,
    faces: Vec<Vec<usize>>,
}

impl CubeSet {
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn get(&self, i: usize) -> &Cube {
        &self.cubes[i]
    }

    /// Index of the cube with the given (sorted) corner list.
    pub fn find(&self, corners: &[usize]) -> Option<usize> {
        self.index.get(corners).copied()
    }

    /// Codimension-1 faces of cube `i`.
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// Number of cubes of each dimension, starting at 0.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let top = self.cubes.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for c in &self.cubes {
            counts[c.dim] += 1;
        }
        counts
    }
}

pub fn enumerate_cubes(g: &MedianGraph) -> Result<CubeSet> {
    enumerate_cubes_capped(g, DEFAULT_CUBE_CAP)
}

/// Each cube is listed once from its corner lying on side `false` of all
/// its hyperplanes, extending the hyperplane set in increasing order.
pub fn enumerate_cubes_capped(g: &MedianGraph, cap: usize) -> Result<CubeSet> {
    let mut cubes = Vec::new();
    let step = |v: usize, c: usize| -> Option<usize> {
        let mut s = g.signature(v).clone();
        s.flip(c);
        g.vertex_with_signature(&s)
    };
    for x in 0..g.len() {
        let up: Vec<usize> = g
            .neighbors(x)
            .iter()
            .map(|&y| g.edge_class(g.edge_index(x, y).unwrap()))
            .filter(|&c| !g.side(x, c))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        // (classes, corners) stack for depth-first extension.
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), vec![x])];
        while let Some((classes, corners)) = stack.pop() {
            if cubes.len() >= cap {
                return Err(Error::too_large(
                    "cube count (infinite-dimensional cubes are not representable)",
                    cap,
                ));
            }
            let last = classes.last().copied();
            for &c in up.iter().filter(|&&c| last.is_none_or(|l| c > l)) {
                let lifted: Option<Vec<usize>> = corners.iter().map(|&v| step(v, c)).collect();
                if let Some(lifted) = lifted {
                    let mut next_classes = classes.clone();
                    next_classes.push(c);
                    let mut next_corners = corners.clone();
                    next_corners.extend(lifted);
                    stack.push((next_classes, next_corners));
                }
            }
            let mut sorted = corners;
            sorted.sort_unstable();
            cubes.push(Cube {
                dim: classes.len(),
                corners: sorted,
                classes,
            });
        }
    }
    cubes.sort_by(|a, b| (a.dim, &a.corners).cmp(&(b.dim, &b.corners)));
    let index: HashMap<Vec<usize>, usize> = cubes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.corners.clone(), i))
        .collect();
    let faces = cubes
        .iter()
        .map(|cube| {
            let mut fs: Vec<usize> = cube
                .classes
                .iter()
                .flat_map(|&c| {
                    [false, true].map(|side| {
                        let corners: Vec<usize> = cube
                            .corners
                            .iter()
                            .copied()
                            .filter(|&v| g.side(v, c) == side)
                            .collect();
                        index[&corners]
                    })
                })
                .collect();
            fs.sort_unstable();
            fs
        })
        .collect();
    Ok(CubeSet {
        cubes,
        index,
        faces,
    })
}

/// First cubical subdivision: one vertex per cube, one edge per
/// codimension-1 face incidence.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: MedianGraph,
    pub cubes: CubeSet,
    /// Subdivision vertex of each original vertex.
    pub embedding: Vec<usize>,
}

pub fn subdivide(g: &MedianGraph) -> Result<Subdivision> {
    subdivide_capped(g, DEFAULT_CUBE_CAP)
}

pub fn subdivide_capped(g: &MedianGraph, cap: usize) -> Result<Subdivision> {
    let cubes = enumerate_cubes_capped(g, cap)?;
    let names = cubes
        .cubes()
        .iter()
        .map(|c| {
            if c.dim == 0 {
                g.name(c.corners[0]).to_string()
            } else {
                let inner: Vec<&str> = c.corners.iter().map(|&v| g.name(v)).collect();
                format!("{{{}}}", inner.join(","))
            }
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..cubes.len() {
        for &f in cubes.faces(i) {
            edges.push((f, i));
        }
    }
    let graph = verify_median(&Graph::new(names, edges))?;
    let embedding = (0..g.len()).map(|v| cubes.find(&[v]).unwrap()).collect();
    Ok(Subdivision {
        graph,
        cubes,
        embedding,
    })
}

impl Subdivision {
    /// The permutation of cubes induced by an automorphism of the original
    /// graph, as an automorphism of the subdivision.
    pub fn transport(&self, original: &MedianGraph, map: &[usize]) -> Result<Vec<usize>> {
        original.check_automorphism(map)?;
        self.cubes
            .cubes()
            .iter()
            .map(|c| {
                let mut image: Vec<usize> = c.corners.iter().map(|&v| map[v]).collect();
                image.sort_unstable();
                self.cubes
                    .find(&image)
                    .ok_or_else(|| Error::NotAutomorphism("a cube is not mapped to a cube".into()))
            })
            .collect()
    }
}

/// [`Subdivision::transport`] for callers holding only the original graph.
pub fn transport_automorphism(g: &MedianGraph, map: &[usize]) -> Result<(Subdivision, Vec<usize>)> {
    let sub = subdivide(g)?;
    let moved = sub.transport(g, map)?;
    Ok((sub, moved))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mg(g: Graph) -> MedianGraph {
        verify_median(&g).unwrap()
    }

    #[test]
    fn edge_cubes() {
        let cs = enumerate_cubes(&mg(Graph::path(2))).unwrap();
        assert_eq!(cs.counts_by_dim(), vec![2, 1]);
        assert_eq!(cs.faces(2), &[0, 1]);
    }

    #[test]
    fn square_cubes() {
        let cs = enumerate_cubes(&mg(Graph::cycle(4))).unwrap();
        assert_eq!(cs.counts_by_dim(), vec![4, 4, 1]);
    }

    #[test]
    fn point_subdivides_to_point() {
        let sub = subdivide(&mg(Graph::path(1))).unwrap();
        assert_eq!(sub.graph.len(), 1);
    }

    #[test]
    fn edge_subdivides_to_path() {
        let sub = subdivide(&mg(Graph::path(2))).unwrap();
        assert_eq!(sub.graph.len(), 3);
        assert_eq!(sub.graph.edges().len(), 2);
        let (a, b) = (sub.embedding[0], sub.embedding[1]);
        assert_eq!(sub.graph.distance(a, b), 2);
    }

    #[test]
    fn edge_swap_fixes_the_midpoint() {
        let g = mg(Graph::path(2));
        let (sub, moved) = transport_automorphism(&g, &[1, 0]).unwrap();
        let mid = sub.cubes.find(&[0, 1]).unwrap();
        assert_eq!(moved[mid], mid);
        assert_eq!(moved[sub.embedding[0]], sub.embedding[1]);
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = mg(Graph::path(3));
        let err = transport_automorphism(&g, &[1, 0, 2]).unwrap_err();
        assert!(matches!(err, Error::NotAutomorphism(_)));
    }

    #[test]
    fn cube_cap() {
        let g = mg(Graph::hypercube(3));
        assert!(enumerate_cubes_capped(&g, 5).unwrap_err().is_resource());
    }
}
