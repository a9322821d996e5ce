use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::affine::{GridCycle, SignedAffineMap};
use super::utvpi::{Functional, System};

/// Shape of the argmin set of one cycle's ℓ₁ displacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// Negative cycle with even offset: a single fixed point.
    Fixed,
    /// Negative cycle with odd offset: `2L` points at displacement one.
    Parity,
    /// Positive cycle: a line (zero net translation) or the points whose
    /// per-coordinate steps all move the same way.
    Linear,
}

impl ConstraintKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstraintKind::Fixed => "fixed",
            ConstraintKind::Parity => "parity",
            ConstraintKind::Linear => "linear",
        }
    }
}

/// Argmin set of `Σ_k |δ_k(v)|` over one coordinate cycle, where
/// `δ_k(v) = v[c_{k+1}] − s_{c_k}·v[c_k] − b_{c_{k+1}}` is the step of
/// `g` into coordinate `c_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleConstraint {
    pub id: usize,
    pub coords: Vec<usize>,
    pub kind: ConstraintKind,
    pub min: BigInt,
    /// The step functionals `δ_k`.
    pub steps: Vec<Functional>,
    /// `w_k ∈ {±1}` with `Σ w_k δ_k = −offset` on a positive cycle.
    pub weights: Vec<i64>,
    /// `−sign(offset)` on a translating positive cycle, else 0.
    pub direction: i64,
    /// Explicit points (cycle coordinates only) for `Fixed` and `Parity`.
    pub points: Vec<Vec<BigInt>>,
}

impl CycleConstraint {
    fn new(id: usize, cycle: &GridCycle, map: &SignedAffineMap) -> Self {
        let coords = cycle.coords.clone();
        let len = coords.len();
        let steps: Vec<Functional> = (0..len)
            .map(|k| {
                let (c, next) = (coords[k], coords[(k + 1) % len]);
                Functional::new(
                    vec![(next, 1), (c, -(map.signs()[c] as i64))],
                    -&map.trans()[next],
                )
            })
            .collect();
        let mut eps = 1i64;
        let weights: Vec<i64> = coords
            .iter()
            .map(|&c| {
                eps *= map.signs()[c] as i64;
                eps
            })
            .collect();
        let min = cycle.min_displacement();
        let (kind, direction, points) = if cycle.sign > 0 {
            let dir = if cycle.offset.is_zero() {
                0
            } else if cycle.offset.is_positive() {
                -1
            } else {
                1
            };
            (ConstraintKind::Linear, dir, Vec::new())
        } else if cycle.offset.is_even() {
            let p = solve_chain(&coords, map, None).expect("negative cycles have a unique solution");
            (ConstraintKind::Fixed, 0, vec![p])
        } else {
            let mut pts = Vec::with_capacity(2 * len);
            for k in 0..len {
                for e in [-1i64, 1] {
                    pts.extend(solve_chain(&coords, map, Some((k, e))));
                }
            }
            (ConstraintKind::Parity, 0, pts)
        };
        CycleConstraint {
            id,
            coords,
            kind,
            min,
            steps,
            weights,
            direction,
            points,
        }
    }

    /// Displacement restricted to this cycle.
    pub fn displacement(&self, v: &[BigInt]) -> BigInt {
        self.steps.iter().map(|f| f.eval(v).abs()).sum()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.displacement(v) == self.min
    }

    /// The argmin set as a union of constraint systems over all `rank`
    /// coordinates.
    fn alternatives(&self, rank: usize) -> Vec<System> {
        match self.kind {
            ConstraintKind::Linear => {
                let mut s = System::new(rank);
                for (f, &w) in self.steps.iter().zip(&self.weights) {
                    if f.coefs.is_empty() {
                        continue;
                    }
                    if self.direction == 0 {
                        s.zero(f.clone());
                    } else {
                        s.nonnegative(f.scaled(w * self.direction));
                    }
                }
                vec![s]
            }
            ConstraintKind::Fixed | ConstraintKind::Parity => self
                .points
                .iter()
                .map(|p| {
                    let mut s = System::new(rank);
                    for (&c, value) in self.coords.iter().zip(p) {
                        s.fix(c, value.clone());
                    }
                    s
                })
                .collect(),
        }
    }
}

/// Solve `δ_j = 0` for all `j`, except `δ_k = e` when `bump = (k, e)`, on a
/// negative cycle. Returns the cycle coordinates, or `None` when the
/// solution is not integral.
fn solve_chain(coords: &[usize], map: &SignedAffineMap, bump: Option<(usize, i64)>) -> Option<Vec<BigInt>> {
    let len = coords.len();
    // v[c_j] = coef·x + constant, with x = v[c_0].
    let mut coef = 1i64;
    let mut constant = BigInt::zero();
    let mut exprs = vec![(1i64, BigInt::zero())];
    for k in 0..len {
        let (c, next) = (coords[k], coords[(k + 1) % len]);
        let s = map.signs()[c] as i64;
        coef *= s;
        constant = constant * s + &map.trans()[next];
        if let Some((bk, e)) = bump {
            if bk == k {
                constant += e;
            }
        }
        if k + 1 < len {
            exprs.push((coef, constant.clone()));
        }
    }
    // Closing the cycle: x = coef·x + constant with coef = −1.
    debug_assert_eq!(coef, -1);
    if constant.is_odd() {
        return None;
    }
    let x = constant / 2;
    Some(exprs.into_iter().map(|(a, b)| &x * a + b).collect())
}

/// Exact description of the grid part of a minset: a product over the
/// coordinate cycles of per-cycle argmin sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridConstraintSet {
    pub rank: usize,
    pub cycles: Vec<CycleConstraint>,
}

impl GridConstraintSet {
    /// Minimizers of `|g v − v|₁`.
    pub fn minset_of(map: &SignedAffineMap) -> Self {
        let cycles = map
            .cycles()
            .iter()
            .enumerate()
            .map(|(id, c)| CycleConstraint::new(id, c, map))
            .collect();
        GridConstraintSet {
            rank: map.rank(),
            cycles,
        }
    }

    /// Least displacement (the sum of the per-cycle minima).
    pub fn min(&self) -> BigInt {
        self.cycles.iter().map(|c| c.min.clone()).sum()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.rank && self.cycles.iter().all(|c| c.contains(v))
    }

    /// Disjunctive normal form: the set is the union of these systems.
    pub fn systems(&self) -> Vec<System> {
        let mut acc = vec![System::new(self.rank)];
        for c in &self.cycles {
            let alts = c.alternatives(self.rank);
            let mut next = Vec::with_capacity(acc.len() * alts.len());
            for s in &acc {
                for a in &alts {
                    let mut t = s.clone();
                    t.extend(a);
                    next.push(t);
                }
            }
            acc = next;
        }
        acc
    }

    /// Whether the two sets meet, with the lexicographically smallest common
    /// point in the first box of radius `radius`, then doubling, that holds
    /// one.
    pub fn intersection_witness(&self, other: &GridConstraintSet, radius: &BigInt) -> Option<Vec<BigInt>> {
        assert_eq!(self.rank, other.rank);
        let mut feasible = Vec::new();
        for a in self.systems() {
            for b in other.systems() {
                let mut s = a.clone();
                s.extend(&b);
                if s.is_feasible() {
                    feasible.push(s);
                }
            }
        }
        if feasible.is_empty() {
            return None;
        }
        let mut r = radius.max(&BigInt::zero()).clone();
        loop {
            let best = feasible.iter().filter_map(|s| s.lex_min_in_box(&r)).min();
            if best.is_some() {
                return best;
            }
            r = if r.is_zero() { BigInt::one() } else { r * 2 };
        }
    }

    /// Lexicographically smallest member in the first box of radius
    /// `radius`, then doubling, that holds one. Minsets are never empty.
    pub fn witness(&self, radius: &BigInt) -> Vec<BigInt> {
        let everything = GridConstraintSet {
            rank: self.rank,
            cycles: Vec::new(),
        };
        self.intersection_witness(&everything, radius)
            .expect("minsets are nonempty")
    }

    /// Members inside `[−radius, radius]^rank`, in lexicographic order.
    pub fn enumerate_box(&self, radius: i64) -> Vec<Vec<BigInt>> {
        box_points(self.rank, radius)
            .into_iter()
            .filter(|v| self.contains(v))
            .collect()
    }
}

/// All points of `[−radius, radius]^rank` in lexicographic order.
pub fn box_points(rank: usize, radius: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
        for p in &out {
            for x in -radius..=radius {
                let mut q: Vec<BigInt> = p.clone();
                q.push(BigInt::from(x));
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reflection_fixed_point() {
        // x ↦ 2 − x fixes 1.
        let g = SignedAffineMap::from_i64(vec![0], vec![-1], &[2]).unwrap();
        let set = GridConstraintSet::minset_of(&g);
        assert_eq!(set.cycles[0].kind, ConstraintKind::Fixed);
        assert_eq!(set.cycles[0].points, vec![big(&[1])]);
        assert_eq!(set.enumerate_box(3), vec![big(&[1])]);
    }

    #[test]
    fn odd_reflection_edge() {
        // x ↦ 1 − x: displacement 1 at 0 and 1.
        let g = SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap();
        let set = GridConstraintSet::minset_of(&g);
        assert_eq!(set.cycles[0].kind, ConstraintKind::Parity);
        assert_eq!(set.min(), BigInt::one());
        assert_eq!(set.enumerate_box(3), vec![big(&[0]), big(&[1])]);
    }

    #[test]
    fn translation_minset_is_everything() {
        let g = SignedAffineMap::translation(big(&[3]));
        let set = GridConstraintSet::minset_of(&g);
        assert_eq!(set.min(), BigInt::from(3));
        assert_eq!(set.enumerate_box(2).len(), 5);
        assert_eq!(set.witness(&BigInt::from(2)), big(&[-2]));
        assert_eq!(set.witness(&BigInt::zero()), big(&[0]));
    }

    #[test]
    fn swap_translate_staircase() {
        // (x, y) ↦ (y + 1, x): minimizers satisfy y ≤ x ≤ y + 1.
        let g = SignedAffineMap::from_i64(vec![1, 0], vec![1, 1], &[1, 0]).unwrap();
        let set = GridConstraintSet::minset_of(&g);
        for p in box_points(2, 4) {
            let (x, y) = (&p[0], &p[1]);
            let expected = y <= x && x <= &(y + 1);
            assert_eq!(set.contains(&p), expected, "{p:?}");
            let in_systems = set.systems().iter().any(|s| s.satisfied_by(&p));
            assert_eq!(in_systems, expected, "{p:?}");
        }
    }
}
