use crate::bits::Bits;

use super::{Graph, MedianGraph};

/// One factor of the finest product decomposition: a group of hyperplanes
/// and the fiber through the basepoint that they span.
#[derive(Clone, Debug)]
pub struct Factor {
    pub classes: Vec<usize>,
    /// Parent vertices of the fiber through the basepoint, sorted.
    pub vertices: Vec<usize>,
    pub graph: MedianGraph,
}

/// Finest product decomposition.
///
/// Hyperplanes are grouped into connected components of the non-crossing
/// graph; each group spans a factor through the basepoint (vertex 0). The
/// decomposition is checked to reassemble into `g`.
pub fn factorize(g: &MedianGraph) -> Vec<Factor> {
    let k = g.num_classes();
    let mut group = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if group[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        group[start] = id;
        let mut i = 0;
        while i < members.len() {
            let c = members[i];
            for d in 0..k {
                if group[d] == usize::MAX && !g.classes_cross(c, d) {
                    group[d] = id;
                    members.push(d);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        groups.push(members);
    }

    let base = 0;
    let factors: Vec<Factor> = groups
        .into_iter()
        .map(|classes| {
            let vertices: Vec<usize> = (0..g.len())
                .filter(|&v| {
                    (0..k).all(|c| classes.binary_search(&c).is_ok() || g.side(v, c) == g.side(base, c))
                })
                .collect();
            let local = |v: usize| vertices.binary_search(&v).unwrap();
            let edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .filter(|&&(u, v)| vertices.binary_search(&u).is_ok() && vertices.binary_search(&v).is_ok())
                .map(|&(u, v)| (local(u), local(v)))
                .collect();
            let names = vertices.iter().map(|&v| g.name(v).to_string()).collect();
            let graph = super::verify_median(&Graph::new(names, edges))
                .expect("fibers of a median graph are median");
            Factor {
                classes,
                vertices,
                graph,
            }
        })
        .collect();
    debug_assert!(reassembles(g, &factors));
    factors
}

/// True iff the factors' fibers multiply back to the vertex set of `g`:
/// every combination of fiber signatures is a vertex, and the counts match.
pub fn reassembles(g: &MedianGraph, factors: &[Factor]) -> bool {
    let expected: usize = factors.iter().map(|f| f.vertices.len()).product();
    if expected != g.len() {
        return false;
    }
    let base = g.signature(0).clone();
    let mut combos = vec![base.clone()];
    for f in factors {
        let mut next = Vec::with_capacity(combos.len() * f.vertices.len());
        for s in &combos {
            for &v in &f.vertices {
                let delta = g.signature(v).xor(&base);
                next.push(s.xor(&delta));
            }
        }
        combos = next;
    }
    combos.iter().all(|s: &Bits| g.vertex_with_signature(s).is_some())
}
