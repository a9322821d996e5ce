use num_bigint::BigInt;
use num_traits::Zero;

use super::affine::{l1_distance, SignedAffineMap};
use crate::cubes::{subdivide, Subdivision};
use crate::error::{Error, Result};
use crate::median::MedianGraph;

/// `finite × ℤᵏ` with distance `d_finite + ℓ₁`.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub finite: MedianGraph,
    pub grid_rank: usize,
}

/// A vertex `(v, x)` of a product complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub finite: usize,
    pub grid: Vec<BigInt>,
}

impl Point {
    pub fn new(finite: usize, grid: Vec<BigInt>) -> Self {
        Point { finite, grid }
    }

    pub fn from_i64(finite: usize, grid: &[i64]) -> Self {
        Point::new(finite, grid.iter().map(|&x| BigInt::from(x)).collect())
    }
}

impl ProductComplex {
    pub fn new(finite: MedianGraph, grid_rank: usize) -> Self {
        ProductComplex { finite, grid_rank }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.finite < self.finite.len() && p.grid.len() == self.grid_rank
    }

    pub fn distance(&self, p: &Point, q: &Point) -> BigInt {
        BigInt::from(self.finite.distance(p.finite, q.finite)) + l1_distance(&p.grid, &q.grid)
    }

    /// Checks that `g` acts on this complex.
    pub fn check_isometry(&self, g: &ProductIsometry) -> Result<()> {
        if g.finite.len() != self.finite.len() {
            return Err(Error::MismatchedComplex(format!(
                "finite map on {} vertices, factor has {}",
                g.finite.len(),
                self.finite.len()
            )));
        }
        if g.grid.rank() != self.grid_rank {
            return Err(Error::MismatchedComplex(format!(
                "grid map of rank {}, complex has rank {}",
                g.grid.rank(),
                self.grid_rank
            )));
        }
        self.finite.check_automorphism(&g.finite)
    }

    /// `d(x, g x)`.
    pub fn displacement(&self, x: &Point, g: &ProductIsometry) -> BigInt {
        self.distance(x, &g.apply(x))
    }

    pub fn identity(&self) -> ProductIsometry {
        ProductIsometry::identity(self.finite.len(), self.grid_rank)
    }

    /// First cubical subdivision together with the transported isometries.
    pub fn subdivide(&self, isometries: &[ProductIsometry]) -> Result<SubdividedProduct> {
        for g in isometries {
            self.check_isometry(g)?;
        }
        let sub = subdivide(&self.finite)?;
        let moved = isometries
            .iter()
            .map(|g| {
                Ok(ProductIsometry {
                    finite: sub.transport(&self.finite, &g.finite)?,
                    grid: g.grid.doubled(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubdividedProduct {
            complex: ProductComplex::new(sub.graph.clone(), self.grid_rank),
            isometries: moved,
            finite: sub,
        })
    }
}

/// Output of [`ProductComplex::subdivide`].
#[derive(Clone, Debug)]
pub struct SubdividedProduct {
    pub complex: ProductComplex,
    pub isometries: Vec<ProductIsometry>,
    pub finite: Subdivision,
}

impl SubdividedProduct {
    /// Image of an original vertex: `(v, x) ↦ (ι v, 2x)`.
    pub fn embed(&self, p: &Point) -> Point {
        Point {
            finite: self.finite.embedding[p.finite],
            grid: p.grid.iter().map(|x| x * 2).collect(),
        }
    }
}

/// `subdivide_product` for a single isometry.
pub fn subdivide_product(pc: &ProductComplex, g: &ProductIsometry) -> Result<(ProductComplex, ProductIsometry)> {
    let mut sub = pc.subdivide(std::slice::from_ref(g))?;
    Ok((sub.complex, sub.isometries.pop().unwrap()))
}

/// An automorphism `φ × (v ↦ A v + b)` of a product complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIsometry {
    /// `finite[v]` is the image of finite-factor vertex `v`.
    pub finite: Vec<usize>,
    pub grid: SignedAffineMap,
}

impl ProductIsometry {
    pub fn new(finite: Vec<usize>, grid: SignedAffineMap) -> Self {
        ProductIsometry { finite, grid }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        ProductIsometry::new((0..n).collect(), SignedAffineMap::identity(k))
    }

    /// Identity on the finite factor.
    pub fn grid_only(n: usize, grid: SignedAffineMap) -> Self {
        ProductIsometry::new((0..n).collect(), grid)
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point {
            finite: self.finite[p.finite],
            grid: self.grid.apply(&p.grid),
        }
    }

    fn check_same(&self, other: &ProductIsometry) -> Result<()> {
        if self.finite.len() != other.finite.len() {
            return Err(Error::MismatchedComplex(format!(
                "finite factors with {} and {} vertices",
                self.finite.len(),
                other.finite.len()
            )));
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ProductIsometry) -> Result<ProductIsometry> {
        self.check_same(other)?;
        let grid = self.grid.compose(&other.grid)?;
        let finite = other.finite.iter().map(|&v| self.finite[v]).collect();
        Ok(ProductIsometry { finite, grid })
    }

    pub fn inverse(&self) -> ProductIsometry {
        let mut finite = vec![0; self.finite.len()];
        for (v, &w) in self.finite.iter().enumerate() {
            finite[w] = v;
        }
        ProductIsometry {
            finite,
            grid: self.grid.inverse(),
        }
    }

    pub fn power(&self, n: i64) -> ProductIsometry {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut finite: Vec<usize> = (0..self.finite.len()).collect();
        let mut sq = base.finite.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                finite = finite.iter().map(|&v| sq[v]).collect();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.iter().map(|&v| sq[v]).collect();
            }
        }
        ProductIsometry {
            finite,
            grid: self.grid.power(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.finite.iter().enumerate().all(|(v, &w)| v == w) && self.grid.is_identity()
    }

    pub fn commutes_with(&self, other: &ProductIsometry) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// Order of the finite part as a permutation.
    pub fn finite_order(&self) -> u64 {
        use num_integer::Integer;
        let n = self.finite.len();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                v = self.finite[v];
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }

    /// Finite-factor vertices minimizing `d(v, φ v)`, with that minimum.
    pub fn finite_min(&self, g: &MedianGraph) -> (usize, Vec<usize>) {
        let d: Vec<usize> = (0..g.len()).map(|v| g.distance(v, self.finite[v])).collect();
        let min = d.iter().copied().min().unwrap_or(0);
        let set = (0..g.len()).filter(|&v| d[v] == min).collect();
        (min, set)
    }
}

/// `d(x, g x)` on `pc`.
pub fn displacement(pc: &ProductComplex, x: &Point, g: &ProductIsometry) -> BigInt {
    pc.displacement(x, g)
}

/// Sum of displacements is zero only for points fixed by `g`.
pub fn is_fixed(pc: &ProductComplex, x: &Point, g: &ProductIsometry) -> bool {
    displacement(pc, x, g).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::{verify_median, Graph};

    fn square() -> MedianGraph {
        verify_median(&Graph::cycle(4)).unwrap()
    }

    #[test]
    fn group_operations() {
        let a = ProductIsometry::new(
            vec![1, 2, 3, 0],
            SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap(),
        );
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(a.power(0).is_identity());
        assert_eq!(a.power(4).finite, vec![0, 1, 2, 3]);
        assert!(a.power(4).is_identity());
        assert_eq!(a.power(-1), a.inverse());
        assert_eq!(a.power(3), a.compose(&a).unwrap().compose(&a).unwrap());
    }

    #[test]
    fn mismatched_factor() {
        let a = ProductIsometry::identity(3, 1);
        let b = ProductIsometry::identity(4, 1);
        assert!(matches!(a.compose(&b), Err(Error::MismatchedComplex(_))));
        let c = ProductIsometry::identity(3, 2);
        assert!(matches!(a.compose(&c), Err(Error::MismatchedComplex(_))));
    }

    #[test]
    fn displacement_across_square() {
        // Cycle(4) is 0-1-2-3-0; reflection fixing 0 and 2 swaps 1 and 3.
        let pc = ProductComplex::new(square(), 1);
        let g = ProductIsometry::new(
            vec![0, 3, 2, 1],
            SignedAffineMap::translation(vec![BigInt::from(1)]),
        );
        pc.check_isometry(&g).unwrap();
        assert_eq!(pc.displacement(&Point::from_i64(1, &[0]), &g), BigInt::from(3));
        assert_eq!(pc.displacement(&Point::from_i64(0, &[7]), &g), BigInt::from(1));
    }

    #[test]
    fn subdivision_doubles() {
        let pc = ProductComplex::new(square(), 1);
        let g = ProductIsometry::new(
            vec![0, 3, 2, 1],
            SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap(),
        );
        let sub = pc.subdivide(std::slice::from_ref(&g)).unwrap();
        assert_eq!(sub.complex.finite.len(), 9);
        let h = &sub.isometries[0];
        sub.complex.check_isometry(h).unwrap();
        for v in 0..4 {
            for x in -3..=3 {
                let p = Point::from_i64(v, &[x]);
                assert_eq!(
                    sub.complex.displacement(&sub.embed(&p), h),
                    pc.displacement(&p, &g) * 2
                );
            }
        }
    }
}
