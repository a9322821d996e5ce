//! Finite wallspaces and their cubulations.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::median::{intrinsic_walls, MedianGraph, Subalgebra};

/// Default cap on the number of consistent orientations.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 20;

/// A wall stored as an ordered pair of sides; side `a` is side tag `false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Wall {
    fn unordered_key(&self) -> (Vec<usize>, Vec<usize>) {
        if self.a[0] < self.b[0] {
            (self.a.clone(), self.b.clone())
        } else {
            (self.b.clone(), self.a.clone())
        }
    }
}

/// A finite set with a list of distinct walls. Separation by finitely many
/// walls holds trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wallspace {
    elements: Vec<String>,
    walls: Vec<Wall>,
    // Per element: bit i set iff the element lies in side `b` of wall i.
    sides: Vec<Bits>,
}

/// Validate a wallspace given by element ids and walls as pairs of id lists.
pub fn validate_wallspace(
    elements: Vec<String>,
    walls: &[(Vec<String>, Vec<String>)],
) -> Result<Wallspace> {
    let mut index = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    let resolve = |ids: &[String]| -> Result<Vec<usize>> {
        ids.iter()
            .map(|id| {
                index
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(id.clone()))
            })
            .collect()
    };
    let walls = walls
        .iter()
        .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Wallspace::from_indices(elements, walls)
}

impl Wallspace {
    /// Build from walls given as element indices.
    pub fn from_indices(elements: Vec<String>, walls: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let n = elements.len();
        let mut checked: Vec<Wall> = Vec::with_capacity(walls.len());
        let mut keys: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
        for (w, (mut a, mut b)) in walls.into_iter().enumerate() {
            if a.is_empty() || b.is_empty() {
                return Err(Error::EmptyHalfspace { wall: w });
            }
            a.sort_unstable();
            b.sort_unstable();
            if let Some(&v) = a.iter().chain(&b).find(|&&v| v >= n) {
                return Err(Error::NotAPartition {
                    wall: w,
                    detail: format!("element index {v} out of range"),
                });
            }
            let mut seen = vec![false; n];
            for &v in a.iter().chain(&b) {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAPartition {
                        wall: w,
                        detail: format!("`{}` appears twice", elements[v]),
                    });
                }
            }
            if let Some(v) = seen.iter().position(|&s| !s) {
                return Err(Error::NotAPartition {
                    wall: w,
                    detail: format!("`{}` is on neither side", elements[v]),
                });
            }
            let wall = Wall { a, b };
            if let Some(&first) = keys.get(&wall.unordered_key()) {
                return Err(Error::DuplicateWall { first, second: w });
            }
            keys.insert(wall.unordered_key(), w);
            checked.push(wall);
        }
        let mut sides = vec![Bits::zeros(); n];
        for (i, wall) in checked.iter().enumerate() {
            for &v in &wall.b {
                sides[v].set(i, true);
            }
        }
        Ok(Wallspace {
            elements,
            walls: checked,
            sides,
        })
    }

    /// The wallspace of a discrete median algebra: all partitions of the
    /// members into two convex sets.
    pub fn from_median_algebra(y: &Subalgebra<'_>) -> Result<Self> {
        let g = y.graph();
        let local: HashMap<usize, usize> =
            y.members().iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let elements = y.members().iter().map(|&v| g.name(v).to_string()).collect();
        let walls = intrinsic_walls(y)?
            .into_iter()
            .map(|w| {
                (
                    w.side_a.iter().map(|v| local[v]).collect(),
                    w.side_b.iter().map(|v| local[v]).collect(),
                )
            })
            .collect();
        Wallspace::from_indices(elements, walls)
    }

    /// The wallspace on the vertices of `g` given by its hyperplanes.
    pub fn from_hyperplanes(g: &MedianGraph) -> Self {
        let elements = g.names().to_vec();
        let walls = (0..g.num_classes())
            .map(|c| (g.halfspace(c, false), g.halfspace(c, true)))
            .collect();
        Wallspace::from_indices(elements, walls).expect("hyperplanes are distinct walls")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Side tag of element `e` on wall `w` (`true` = side `b`).
    pub fn side(&self, e: usize, w: usize) -> bool {
        self.sides[e].get(w)
    }

    /// Number of walls separating elements `s` and `t`.
    pub fn separation(&self, s: usize, t: usize) -> usize {
        self.sides[s].distance(&self.sides[t])
    }

    /// The orientation choosing, for each wall, the side containing `e`.
    pub fn principal(&self, e: usize) -> Orientation {
        Orientation(self.sides[e].clone())
    }

    /// Whether the chosen halfspaces pairwise intersect.
    pub fn is_consistent(&self, o: &Orientation) -> bool {
        let table = self.intersection_table();
        let w = self.walls.len();
        (0..w).all(|i| (i + 1..w).all(|j| table.meets(i, o.side(i), j, o.side(j))))
    }

    fn intersection_table(&self) -> MeetTable {
        let w = self.walls.len();
        let mut meets = vec![0u8; w * w];
        for s in &self.sides {
            for i in 0..w {
                for j in 0..w {
                    let bit = (s.get(i) as u8) << 1 | s.get(j) as u8;
                    meets[i * w + j] |= 1 << bit;
                }
            }
        }
        MeetTable { w, meets }
    }
}

struct MeetTable {
    w: usize,
    meets: Vec<u8>,
}

impl MeetTable {
    #[inline]
    fn meets(&self, i: usize, si: bool, j: usize, sj: bool) -> bool {
        let bit = (si as u8) << 1 | sj as u8;
        self.meets[i * self.w + j] >> bit & 1 == 1
    }
}

/// A choice of side for every wall; bit `i` set means side `b` of wall `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation(pub Bits);

impl Orientation {
    pub fn side(&self, wall: usize) -> bool {
        self.0.get(wall)
    }

    fn pattern(&self, walls: usize) -> Vec<bool> {
        (0..walls).map(|i| self.side(i)).collect()
    }

    fn label(&self, walls: usize) -> String {
        let bits: String = (0..walls).map(|i| if self.side(i) { '1' } else { '0' }).collect();
        format!("[{bits}]")
    }
}

/// Dual complex of a wallspace with the principal map of its elements.
#[derive(Clone, Debug)]
pub struct Cubulation {
    pub graph: MedianGraph,
    /// Orientation of each vertex; vertices are sorted by bit pattern.
    pub orientations: Vec<Orientation>,
    /// Vertex of the principal orientation of each element.
    pub principal: Vec<usize>,
}

pub fn cubulate(w: &Wallspace) -> Result<Cubulation> {
    cubulate_capped(w, DEFAULT_VERTEX_CAP)
}

/// Enumerate consistent orientations by flipping one wall at a time from a
/// principal orientation, then check the median structure of the result.
pub fn cubulate_capped(w: &Wallspace, cap: usize) -> Result<Cubulation> {
    let nw = w.walls.len();
    let table = w.intersection_table();
    let start = if w.elements.is_empty() {
        Orientation(Bits::zeros())
    } else {
        w.principal(0)
    };
    let mut seen: HashSet<Orientation> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(o) = queue.pop_front() {
        for i in 0..nw {
            let flipped = !o.side(i);
            let ok = (0..nw).all(|j| j == i || table.meets(i, flipped, j, o.side(j)));
            if !ok {
                continue;
            }
            let mut next = o.0.clone();
            next.flip(i);
            let next = Orientation(next);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::too_large("consistent orientation count", cap));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut orientations: Vec<Orientation> = seen.into_iter().collect();
    orientations.sort_by_cached_key(|o| o.pattern(nw));
    let index: HashMap<&Orientation, usize> =
        orientations.iter().enumerate().map(|(i, o)| (o, i)).collect();

    let mut principal = Vec::with_capacity(w.elements.len());
    for e in 0..w.elements.len() {
        match index.get(&w.principal(e)) {
            Some(&v) => principal.push(v),
            None => return Err(Error::Disconnected),
        }
    }

    let mut edges = Vec::new();
    for (u, o) in orientations.iter().enumerate() {
        for i in 0..nw {
            let mut flipped = o.0.clone();
            flipped.flip(i);
            if let Some(&v) = index.get(&Orientation(flipped)) {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
    }
    let names = orientations.iter().map(|o| o.label(nw)).collect();
    let sigs = orientations.iter().map(|o| o.0.clone()).collect();
    let graph = MedianGraph::from_signatures(names, edges, sigs, nw)?;
    Ok(Cubulation {
        graph,
        orientations,
        principal,
    })
}
