//! Classification of product isometries, translation length, minsets,
//! axes, and the power search for commuting pairs.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cubes::enumerate_cubes;
use crate::error::{Error, Result};
use crate::grid::{box_points, GridConstraintSet, Point, ProductComplex, ProductIsometry, SignedAffineMap};

/// Cap on the default power search bound.
pub const MAX_M_CAP: u32 = 1024;

/// `‖g‖ = min_x d(x, g x)`, computed in closed form.
pub fn translation_length(pc: &ProductComplex, g: &ProductIsometry) -> BigInt {
    let (finite, _) = g.finite_min(&pc.finite);
    BigInt::from(finite) + g.grid.min_displacement()
}

/// Exact description of `Min g`: the product of the finite argmin set
/// and a grid constraint set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinsetReport {
    pub norm: BigInt,
    pub finite_min: usize,
    pub finite_part: Vec<usize>,
    pub grid_part: GridConstraintSet,
}

impl MinsetReport {
    pub fn contains(&self, p: &Point) -> bool {
        self.finite_part.binary_search(&p.finite).is_ok() && self.grid_part.contains(&p.grid)
    }

    /// Lexicographically smallest `(vertex, grid point)` with the grid point
    /// in the smallest box around the origin that meets the grid part.
    pub fn witness(&self) -> Point {
        Point::new(self.finite_part[0], self.grid_part.witness(&BigInt::zero()))
    }

    /// Members whose grid part lies in `[−radius, radius]^k`.
    pub fn enumerate_window(&self, radius: i64) -> Vec<Point> {
        let grid = self.grid_part.enumerate_box(radius);
        self.finite_part
            .iter()
            .flat_map(|&v| grid.iter().map(move |x| Point::new(v, x.clone())))
            .collect()
    }
}

pub fn minset(pc: &ProductComplex, g: &ProductIsometry) -> MinsetReport {
    let (finite_min, finite_part) = g.finite_min(&pc.finite);
    let grid_part = GridConstraintSet::minset_of(&g.grid);
    MinsetReport {
        norm: BigInt::from(finite_min) + grid_part.min(),
        finite_min,
        finite_part,
        grid_part,
    }
}

/// A cube `Q_f × Q_grid` with `g Q = Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedCube {
    /// Sorted corners of a cube of the finite factor.
    pub finite: Vec<usize>,
    /// Per-coordinate interval `[lo, hi]` with `hi − lo ∈ {0, 1}`.
    pub grid_lo: Vec<BigInt>,
    pub grid_hi: Vec<BigInt>,
}

impl StabilizedCube {
    pub fn dim(&self) -> usize {
        let f = self.finite.len().trailing_zeros() as usize;
        f + self.grid_lo.iter().zip(&self.grid_hi).filter(|(a, b)| a != b).count()
    }

    /// Whether `g` maps the cube onto itself.
    pub fn is_stabilized_by(&self, g: &ProductIsometry) -> bool {
        let mut image: Vec<usize> = self.finite.iter().map(|&v| g.finite[v]).collect();
        image.sort_unstable();
        if image != self.finite {
            return false;
        }
        let (a, b) = (g.grid.apply(&self.grid_lo), g.grid.apply(&self.grid_hi));
        a.iter()
            .zip(&b)
            .enumerate()
            .all(|(i, (x, y))| x.min(y) == &self.grid_lo[i] && x.max(y) == &self.grid_hi[i])
    }
}

/// A hyperplane of a product complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hyperplane {
    /// `class × ℤᵏ` for a theta class of the finite factor.
    Finite(usize),
    /// `{x : x[coord] = position / 2}`; `position` is odd.
    Grid { coord: usize, position: BigInt },
}

/// `g^power` exchanges the two halfspaces of `hyperplane`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwappedHyperplane {
    pub power: u64,
    pub hyperplane: Hyperplane,
}

impl SwappedHyperplane {
    /// Checks the swap on `pc` directly.
    pub fn verify(&self, pc: &ProductComplex, g: &ProductIsometry) -> bool {
        let gp = g.power(self.power as i64);
        match &self.hyperplane {
            Hyperplane::Finite(c) => (0..pc.finite.len()).all(|v| pc.finite.side(v, *c) != pc.finite.side(gp.finite[v], *c)),
            Hyperplane::Grid { coord, position } => {
                let c = *coord;
                if gp.grid.perm()[c] != c {
                    return false;
                }
                // On a fixed coordinate the map is x ↦ s x + t.
                let act = |x: &BigInt| x * gp.grid.signs()[c] as i64 + &gp.grid.trans()[c];
                let below: BigInt = (position - 1) / 2;
                let above = &below + 1;
                act(&below) == above && act(&above) == below
            }
        }
    }
}

/// A geodesic fundamental domain `x = steps[0], …, steps[‖g‖] = g x` of an
/// axis of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisPath {
    pub base: Point,
    pub steps: Vec<Point>,
}

impl AxisPath {
    /// The orbit path over `periods` translates of the domain.
    pub fn orbit(&self, g: &ProductIsometry, periods: usize) -> Vec<Point> {
        let mut out = self.steps.clone();
        let mut segment = self.steps.clone();
        for _ in 1..periods {
            segment = segment.iter().map(|p| g.apply(p)).collect();
            out.extend(segment.iter().skip(1).cloned());
        }
        out
    }

    /// Checks adjacency, the endpoint `g x`, and that the orbit path over
    /// `periods` periods crosses every hyperplane at most once.
    pub fn verify(&self, pc: &ProductComplex, g: &ProductIsometry, periods: usize) -> std::result::Result<(), String> {
        if self.steps.first() != Some(&self.base) {
            return Err("path does not start at the base point".into());
        }
        if self.steps.last() != Some(&g.apply(&self.base)) {
            return Err("path does not end at g x".into());
        }
        let path = self.orbit(g, periods);
        let mut seen = HashSet::new();
        for w in path.windows(2) {
            let h = crossing(pc, &w[0], &w[1]).ok_or_else(|| format!("{:?} and {:?} are not adjacent", w[0], w[1]))?;
            if !seen.insert(h.clone()) {
                return Err(format!("hyperplane {h:?} crossed twice"));
            }
        }
        Ok(())
    }
}

/// The hyperplane crossed by the edge `p q`, if they are adjacent.
pub fn crossing(pc: &ProductComplex, p: &Point, q: &Point) -> Option<Hyperplane> {
    if p.grid == q.grid {
        let e = pc.finite.edge_index(p.finite, q.finite)?;
        return Some(Hyperplane::Finite(pc.finite.edge_class(e)));
    }
    if p.finite != q.finite {
        return None;
    }
    let diff: Vec<usize> = (0..p.grid.len()).filter(|&i| p.grid[i] != q.grid[i]).collect();
    match diff[..] {
        [i] if (&p.grid[i] - &q.grid[i]).abs().is_one() => Some(Hyperplane::Grid {
            coord: i,
            position: &p.grid[i] + &q.grid[i],
        }),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Elliptic(StabilizedCube),
    Inverting(SwappedHyperplane),
    Loxodromic(AxisPath),
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::Elliptic(_) => "elliptic",
            Classification::Inverting(_) => "inverting",
            Classification::Loxodromic(_) => "loxodromic",
        }
    }

    pub fn is_loxodromic(&self) -> bool {
        matches!(self, Classification::Loxodromic(_))
    }

    /// Checks the witness against `g`.
    pub fn verify(&self, pc: &ProductComplex, g: &ProductIsometry) -> std::result::Result<(), String> {
        match self {
            Classification::Elliptic(c) => {
                if c.is_stabilized_by(g) {
                    Ok(())
                } else {
                    Err("cube is not stabilized".into())
                }
            }
            Classification::Inverting(s) => {
                if g.grid.is_bounded() {
                    return Err("orbits are bounded".into());
                }
                if s.verify(pc, g) {
                    Ok(())
                } else {
                    Err("hyperplane is not swapped".into())
                }
            }
            Classification::Loxodromic(a) => a.verify(pc, g, 3),
        }
    }
}

/// Elliptic when orbits are bounded, witnessed by a stabilized cube.
/// Otherwise inverting when some power of `g` swaps the halfspaces of a
/// hyperplane, and loxodromic with an axis through the minset witness
/// when none does.
pub fn classify(pc: &ProductComplex, g: &ProductIsometry) -> Result<Classification> {
    pc.check_isometry(g)?;
    if g.grid.is_bounded() {
        return Ok(Classification::Elliptic(stabilized_cube(pc, g)?));
    }
    if let Some(s) = swapped_by_power(pc, g) {
        return Ok(Classification::Inverting(s));
    }
    let base = minset(pc, g).witness();
    Ok(Classification::Loxodromic(axis_path(pc, g, &base)))
}

fn stabilized_cube(pc: &ProductComplex, g: &ProductIsometry) -> Result<StabilizedCube> {
    let cubes = enumerate_cubes(&pc.finite)?;
    let finite = cubes
        .cubes()
        .iter()
        .find(|c| {
            let mut image: Vec<usize> = c.corners.iter().map(|&v| g.finite[v]).collect();
            image.sort_unstable();
            image == c.corners
        })
        .map(|c| c.corners.clone())
        .expect("finite automorphisms stabilize a cube");
    let doubled = doubled_fixed_point(&g.grid);
    let two = BigInt::from(2);
    let grid_lo = doubled.iter().map(|x| x.div_floor(&two)).collect();
    let grid_hi = doubled.iter().map(|x| -((-x).div_floor(&two))).collect();
    Ok(StabilizedCube { finite, grid_lo, grid_hi })
}

/// `2p` for a fixed point `p ∈ (½ℤ)ᵏ` of a bounded grid map.
fn doubled_fixed_point(map: &SignedAffineMap) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); map.rank()];
    for cycle in map.cycles() {
        debug_assert!(!cycle.is_translating());
        let mut x = if cycle.sign < 0 { cycle.offset.clone() } else { BigInt::zero() };
        out[cycle.coords[0]] = x.clone();
        for w in cycle.coords.windows(2) {
            let (c, next) = (w[0], w[1]);
            x = if map.signs()[c] > 0 { x } else { -x };
            x += &map.trans()[next] * 2;
            out[next] = x.clone();
        }
    }
    out
}

fn swapped_by_power(pc: &ProductComplex, g: &ProductIsometry) -> Option<SwappedHyperplane> {
    let n = pc.finite.len();
    if (0..n).all(|v| g.finite[v] != v) {
        let order = g.finite_order();
        for p in 1..=order {
            let gp = g.power(p as i64);
            if let Some(&c) = pc.finite.swapped_classes(&gp.finite).first() {
                return Some(SwappedHyperplane {
                    power: p,
                    hyperplane: Hyperplane::Finite(c),
                });
            }
        }
        unreachable!("a finite automorphism without fixed vertex has a power swapping a class");
    }
    g.grid
        .cycles()
        .iter()
        .find(|c| c.sign < 0 && c.offset.is_odd())
        .map(|c| SwappedHyperplane {
            power: c.len() as u64,
            hyperplane: Hyperplane::Grid {
                coord: c.coords[0],
                position: c.offset.clone(),
            },
        })
}

/// Splice a finite geodesic from `x_f` to `φ x_f` with grid unit steps in
/// coordinate order.
fn axis_path(pc: &ProductComplex, g: &ProductIsometry, base: &Point) -> AxisPath {
    let target = g.apply(base);
    let mut steps: Vec<Point> = pc
        .finite
        .geodesic(base.finite, target.finite)
        .into_iter()
        .map(|v| Point::new(v, base.grid.clone()))
        .collect();
    let mut cur = base.grid.clone();
    for i in 0..cur.len() {
        while cur[i] != target.grid[i] {
            if cur[i] < target.grid[i] {
                cur[i] += 1;
            } else {
                cur[i] -= 1;
            }
            steps.push(Point::new(target.finite, cur.clone()));
        }
    }
    AxisPath {
        base: base.clone(),
        steps,
    }
}

/// Axis through the lexicographically smallest minset point.
pub fn axis_of(pc: &ProductComplex, g: &ProductIsometry) -> Result<AxisPath> {
    match classify(pc, g)? {
        Classification::Loxodromic(a) => Ok(a),
        _ => Err(Error::NotLoxodromic),
    }
}

/// Axis seeded at `base`, which must lie in `Min g`. The path is checked
/// over three periods.
pub fn axis_from(pc: &ProductComplex, g: &ProductIsometry, base: &Point) -> Result<AxisPath> {
    if !classify(pc, g)?.is_loxodromic() {
        return Err(Error::NotLoxodromic);
    }
    if !pc.contains(base) || !minset(pc, g).contains(base) {
        return Err(Error::Document("axis base point is not in Min g".into()));
    }
    let path = axis_path(pc, g, base);
    debug_assert_eq!(path.verify(pc, g, 3), Ok(()));
    Ok(path)
}

/// Default power search bound: `2·lcm(order of φ_h, order of A_h)`,
/// capped at [`MAX_M_CAP`].
pub fn default_max_m(h: &ProductIsometry) -> u32 {
    let l = h.finite_order().lcm(&h.grid.linear_order());
    (2 * l).min(MAX_M_CAP as u64) as u32
}

/// Outcome of [`common_min_power`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonPower {
    pub m: u32,
    pub witness: Point,
    /// Powers tried before `m` whose intersection was empty.
    pub empty_below: Vec<u32>,
}

/// Smallest `m ≥ 1` with `Min g ∩ Min h^m ≠ ∅`, decided symbolically.
pub fn common_min_power(pc: &ProductComplex, g: &ProductIsometry, h: &ProductIsometry, max_m: u32) -> Result<CommonPower> {
    pc.check_isometry(g)?;
    pc.check_isometry(h)?;
    if !g.commutes_with(h)? {
        return Err(Error::NotCommuting("g".into(), "h".into()));
    }
    if !classify(pc, g)?.is_loxodromic() || !classify(pc, h)?.is_loxodromic() {
        return Err(Error::NotLoxodromic);
    }
    let mg = minset(pc, g);
    let mut empty_below = Vec::new();
    for m in 1..=max_m {
        let mh = minset(pc, &h.power(m as i64));
        if let Some(witness) = intersect(&mg, &mh) {
            return Ok(CommonPower { m, witness, empty_below });
        }
        empty_below.push(m);
    }
    Err(Error::NotFound(max_m))
}

/// A point of both minsets, lexicographically smallest as in
/// [`MinsetReport::witness`].
pub fn intersect(a: &MinsetReport, b: &MinsetReport) -> Option<Point> {
    let v = a.finite_part.iter().find(|v| b.finite_part.binary_search(v).is_ok())?;
    let x = a.grid_part.intersection_witness(&b.grid_part, &BigInt::zero())?;
    Some(Point::new(*v, x))
}

/// Default brute-force window radius `2·(‖g‖ + k + diam)`.
pub fn default_window(pc: &ProductComplex, g: &ProductIsometry) -> i64 {
    let norm = translation_length(pc, g).to_i64().unwrap_or(i64::MAX / 4);
    2 * (norm + pc.grid_rank as i64 + pc.finite.diameter() as i64)
}

/// Minimum displacement over `finite × [−radius, radius]^k` and the
/// points attaining it, by exhaustive evaluation.
pub fn window_min(pc: &ProductComplex, g: &ProductIsometry, radius: i64) -> (BigInt, Vec<Point>) {
    let grid = box_points(pc.grid_rank, radius);
    let mut best: Option<BigInt> = None;
    let mut at = Vec::new();
    for v in 0..pc.finite.len() {
        for x in &grid {
            let p = Point::new(v, x.clone());
            let d = pc.displacement(&p, g);
            match &best {
                Some(b) if &d > b => {}
                Some(b) if &d == b => at.push(p),
                _ => {
                    best = Some(d);
                    at = vec![p];
                }
            }
        }
    }
    (best.unwrap_or_default(), at)
}
