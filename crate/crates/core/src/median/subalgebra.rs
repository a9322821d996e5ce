use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

use super::MedianGraph;

/// Default cap on member count for [`intrinsic_walls`].
pub const INTRINSIC_WALLS_CAP: usize = 24;

/// A μ-closed vertex subset of a median graph.
#[derive(Clone, Debug)]
pub struct Subalgebra<'g> {
    graph: &'g MedianGraph,
    members: Vec<usize>,
}

impl<'g> Subalgebra<'g> {
    /// Wrap `members` after checking closure under μ.
    pub fn new(graph: &'g MedianGraph, members: &[usize]) -> Result<Self> {
        let members = sorted_members(graph, members)?;
        let set: HashSet<usize> = members.iter().copied().collect();
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate().skip(i) {
                for &z in &members[j..] {
                    let m = graph.median(x, y, z);
                    if !set.contains(&m) {
                        return Err(Error::NotMedian {
                            triple: (x, y, z),
                            reason: format!("has median {m} outside the member set"),
                        });
                    }
                }
            }
        }
        Ok(Subalgebra { graph, members })
    }

    /// The whole vertex set.
    pub fn full(graph: &'g MedianGraph) -> Self {
        Subalgebra {
            graph,
            members: (0..graph.len()).collect(),
        }
    }

    pub fn graph(&self) -> &'g MedianGraph {
        self.graph
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

fn sorted_members(graph: &MedianGraph, members: &[usize]) -> Result<Vec<usize>> {
    if members.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(&v) = members.iter().find(|&&v| v >= graph.len()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let set: BTreeSet<usize> = members.iter().copied().collect();
    Ok(set.into_iter().collect())
}

/// Smallest μ-closed superset of `seed`.
pub fn subalgebra_closure<'g>(graph: &'g MedianGraph, seed: &[usize]) -> Result<Subalgebra<'g>> {
    let seed = sorted_members(graph, seed)?;
    let mut members: Vec<usize> = Vec::new();
    let mut in_set = vec![false; graph.len()];
    let mut pending: Vec<usize> = seed;
    for &v in &pending {
        in_set[v] = true;
    }
    // Each new element is combined with every pair of elements already
    // processed (including itself), so every triple is visited once.
    while let Some(a) = pending.pop() {
        members.push(a);
        let mut fresh = Vec::new();
        for i in 0..members.len() {
            for j in i..members.len() {
                let m = graph.median(a, members[i], members[j]);
                if !in_set[m] {
                    in_set[m] = true;
                    fresh.push(m);
                }
            }
        }
        pending.extend(fresh);
    }
    members.sort_unstable();
    Ok(Subalgebra { graph, members })
}

/// An unordered two-sided partition of a member set. `side_a` always holds
/// the smallest member, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitWall {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl SplitWall {
    /// Canonical form of the partition `{a, b}`; `None` if a side is empty.
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Option<Self> {
        if a.is_empty() || b.is_empty() {
            return None;
        }
        a.sort_unstable();
        b.sort_unstable();
        if b[0] < a[0] {
            std::mem::swap(&mut a, &mut b);
        }
        Some(SplitWall {
            side_a: a,
            side_b: b,
        })
    }
}

/// Walls `{B, Y − B}` of the subalgebra with both sides convex for the
/// median restricted to the members.
pub fn intrinsic_walls(y: &Subalgebra<'_>) -> Result<Vec<SplitWall>> {
    intrinsic_walls_capped(y, INTRINSIC_WALLS_CAP)
}

pub fn intrinsic_walls_capped(y: &Subalgebra<'_>, cap: usize) -> Result<Vec<SplitWall>> {
    let k = y.len();
    if k > cap || k > 63 {
        return Err(Error::too_large("subalgebra member count", cap.min(63)));
    }
    let g = y.graph();
    let members = y.members();
    // intervals[i][j]: members z with μ(x_i, x_j, z) = z, as a bitmask.
    let mut intervals = vec![vec![0u64; k]; k];
    for i in 0..k {
        for j in i..k {
            let mut mask = 0u64;
            for (l, &z) in members.iter().enumerate() {
                if g.median(members[i], members[j], z) == z {
                    mask |= 1 << l;
                }
            }
            intervals[i][j] = mask;
            intervals[j][i] = mask;
        }
    }
    let convex = |set: u64| -> bool {
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut others = rest;
            while others != 0 {
                let j = others.trailing_zeros() as usize;
                others &= others - 1;
                if intervals[i][j] & !set != 0 {
                    return false;
                }
            }
        }
        true
    };
    let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut walls = Vec::new();
    if k < 2 {
        return Ok(walls);
    }
    // Member 0 is always in side A.
    for rest in 0..(1u64 << (k - 1)) {
        let a = 1 | (rest << 1);
        if a == full {
            continue;
        }
        let b = full & !a;
        if convex(a) && convex(b) {
            let pick = |mask: u64| -> Vec<usize> {
                (0..k).filter(|l| mask >> l & 1 == 1).map(|l| members[l]).collect()
            };
            walls.extend(SplitWall::new(pick(a), pick(b)));
        }
    }
    walls.sort();
    Ok(walls)
}

/// Restrictions of the parent's hyperplanes to the members, with empty
/// restrictions dropped and equal ones merged.
pub fn induced_walls(y: &Subalgebra<'_>) -> Vec<SplitWall> {
    let g = y.graph();
    let walls: BTreeSet<SplitWall> = (0..g.num_classes())
        .filter_map(|c| {
            let (b, a): (Vec<usize>, Vec<usize>) =
                y.members().iter().partition(|&&v| g.side(v, c));
            SplitWall::new(a, b)
        })
        .collect();
    walls.into_iter().collect()
}

/// Which route produced a wall that the other route lacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallOrigin {
    Induced,
    Intrinsic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreeVerdict {
    pub holds: bool,
    pub induced: Vec<SplitWall>,
    pub intrinsic: Vec<SplitWall>,
    pub witness: Option<(WallOrigin, SplitWall)>,
}

/// Compare induced walls with intrinsic convex walls as sets of partitions.
pub fn check_lemma_agree(y: &Subalgebra<'_>) -> Result<AgreeVerdict> {
    let intrinsic = intrinsic_walls(y)?;
    let induced = induced_walls(y);
    let witness = induced
        .iter()
        .find(|w| intrinsic.binary_search(w).is_err())
        .map(|w| (WallOrigin::Induced, w.clone()))
        .or_else(|| {
            intrinsic
                .iter()
                .find(|w| induced.binary_search(w).is_err())
                .map(|w| (WallOrigin::Intrinsic, w.clone()))
        });
    Ok(AgreeVerdict {
        holds: witness.is_none(),
        induced,
        intrinsic,
        witness,
    })
}
