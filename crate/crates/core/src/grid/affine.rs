use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A cubical automorphism `v ↦ A v + b` of the standard grid `ℤᵏ`, where
/// `A` is a signed permutation matrix.
///
/// Coordinate `i` is sent to coordinate `perm[i]` with sign `signs[i]`:
/// `(g v)[perm[i]] = signs[i] * v[i] + trans[perm[i]]`.
#[derive(Clone, Debug)]
pub struct SignedAffineMap {
    perm: Vec<usize>,
    signs: Vec<i8>,
    trans: Vec<BigInt>,
    cycles: Vec<GridCycle>,
}

impl PartialEq for SignedAffineMap {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.signs == other.signs && self.trans == other.trans
    }
}

impl Eq for SignedAffineMap {}

/// A cycle of the coordinate permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCycle {
    /// `coords[0]` is the smallest coordinate; `coords[k+1] = perm[coords[k]]`.
    pub coords: Vec<usize>,
    /// Product of the signs along the cycle.
    pub sign: i8,
    /// `(g^L 0)[coords[0]]` for cycle length `L`: the net translation of a
    /// positive cycle, or twice the reflection center of a negative one.
    pub offset: BigInt,
}

impl GridCycle {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Positive cycle with nonzero net translation.
    pub fn is_translating(&self) -> bool {
        self.sign > 0 && !self.offset.is_zero()
    }

    /// Least ℓ₁ displacement over the cycle's coordinates.
    pub fn min_displacement(&self) -> BigInt {
        if self.sign > 0 {
            self.offset.abs()
        } else if self.offset.is_odd() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }
}

impl SignedAffineMap {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, trans: Vec<BigInt>) -> Result<Self> {
        let k = perm.len();
        if signs.len() != k || trans.len() != k {
            return Err(Error::InvalidGridMap(format!(
                "perm, signs and trans must have equal length (got {}, {}, {})",
                k,
                signs.len(),
                trans.len()
            )));
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidGridMap("perm is not a permutation".into()));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidGridMap("signs must be +1 or -1".into()));
        }
        let mut map = SignedAffineMap {
            perm,
            signs,
            trans,
            cycles: Vec::new(),
        };
        map.cycles = map.compute_cycles();
        Ok(map)
    }

    pub fn identity(k: usize) -> Self {
        Self::translation(vec![BigInt::zero(); k])
    }

    pub fn translation(trans: Vec<BigInt>) -> Self {
        let k = trans.len();
        Self::new((0..k).collect(), vec![1; k], trans).unwrap()
    }

    /// Convenience constructor with machine-integer translations.
    pub fn from_i64(perm: Vec<usize>, signs: Vec<i8>, trans: &[i64]) -> Result<Self> {
        Self::new(perm, signs, trans.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn trans(&self) -> &[BigInt] {
        &self.trans
    }

    pub fn cycles(&self) -> &[GridCycle] {
        &self.cycles
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = self.trans.clone();
        for i in 0..self.rank() {
            let term = if self.signs[i] > 0 { v[i].clone() } else { -&v[i] };
            w[self.perm[i]] += term;
        }
        w
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedAffineMap) -> Result<SignedAffineMap> {
        if self.rank() != other.rank() {
            return Err(Error::MismatchedComplex(format!(
                "grid ranks {} and {}",
                self.rank(),
                other.rank()
            )));
        }
        let k = self.rank();
        let perm = (0..k).map(|i| self.perm[other.perm[i]]).collect();
        let signs = (0..k)
            .map(|i| other.signs[i] * self.signs[other.perm[i]])
            .collect();
        let trans = self.apply(&other.trans);
        SignedAffineMap::new(perm, signs, trans)
    }

    pub fn inverse(&self) -> SignedAffineMap {
        let k = self.rank();
        let mut perm = vec![0; k];
        let mut signs = vec![1; k];
        let mut trans = vec![BigInt::zero(); k];
        for i in 0..k {
            let j = self.perm[i];
            perm[j] = i;
            signs[j] = self.signs[i];
            trans[i] = if self.signs[i] > 0 {
                -&self.trans[j]
            } else {
                self.trans[j].clone()
            };
        }
        SignedAffineMap::new(perm, signs, trans).unwrap()
    }

    pub fn power(&self, n: i64) -> SignedAffineMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity(self.rank());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).unwrap();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).unwrap();
            }
        }
        acc
    }

    /// Conjugate by `v ↦ 2v`: the map on the subdivided grid.
    pub fn doubled(&self) -> SignedAffineMap {
        let trans = self.trans.iter().map(|t| t * 2).collect();
        SignedAffineMap::new(self.perm.clone(), self.signs.clone(), trans).unwrap()
    }

    /// Order of the linear part `A`.
    pub fn linear_order(&self) -> u64 {
        self.cycles.iter().fold(1u64, |acc, c| {
            let o = if c.sign > 0 { c.len() } else { 2 * c.len() } as u64;
            acc.lcm(&o)
        })
    }

    /// Orbits are bounded iff no positive cycle translates.
    pub fn is_bounded(&self) -> bool {
        !self.cycles.iter().any(GridCycle::is_translating)
    }

    pub(crate) fn compute_cycles(&self) -> Vec<GridCycle> {
        let k = self.rank();
        let mut done = vec![false; k];
        let mut cycles = Vec::new();
        for start in 0..k {
            if done[start] {
                continue;
            }
            let mut coords = vec![start];
            done[start] = true;
            let mut sign = self.signs[start];
            let mut cur = self.perm[start];
            while cur != start {
                done[cur] = true;
                coords.push(cur);
                sign *= self.signs[cur];
                cur = self.perm[cur];
            }
            // Follow the zero vector's orbit through the cycle only.
            let mut value = BigInt::zero();
            for (idx, &c) in coords.iter().enumerate() {
                let next = coords[(idx + 1) % coords.len()];
                value = if self.signs[c] > 0 { value } else { -value };
                value += &self.trans[next];
            }
            cycles.push(GridCycle {
                coords,
                sign,
                offset: value,
            });
        }
        cycles
    }

    /// Least ℓ₁ displacement `min_v |g v − v|₁`.
    pub fn min_displacement(&self) -> BigInt {
        self.cycles.iter().map(GridCycle::min_displacement).sum()
    }
}

pub fn l1_distance(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let g = SignedAffineMap::from_i64(vec![1, 2, 0], vec![1, -1, -1], &[3, -2, 5]).unwrap();
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn translation_power() {
        let g = SignedAffineMap::translation(big(&[1]));
        assert_eq!(g.power(3), SignedAffineMap::translation(big(&[3])));
        assert_eq!(g.power(-2), SignedAffineMap::translation(big(&[-2])));
        assert!(g.power(0).is_identity());
    }

    #[test]
    fn reflection_squares_to_identity() {
        let g = SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap();
        assert!(g.power(2).is_identity());
        assert_eq!(g.apply(&big(&[0])), big(&[1]));
    }

    #[test]
    fn doubling_conjugates() {
        let g = SignedAffineMap::from_i64(vec![0], vec![-1], &[1]).unwrap();
        let d = g.doubled();
        assert_eq!(d.apply(&big(&[1])), big(&[1]));
        assert_eq!(d.apply(&big(&[0])), big(&[2]));
    }

    #[test]
    fn cycle_offsets() {
        // (x, y) ↦ (y + 1, x): one positive 2-cycle translating by 1.
        let g = SignedAffineMap::from_i64(vec![1, 0], vec![1, 1], &[1, 0]).unwrap();
        assert_eq!(g.apply(&big(&[0, 0])), big(&[1, 0]));
        assert_eq!(g.cycles().len(), 1);
        assert_eq!(g.cycles()[0].offset, BigInt::from(1));
        assert_eq!(g.min_displacement(), BigInt::from(1));
        assert_eq!(g.cycles(), g.compute_cycles().as_slice());
    }

    #[test]
    fn invalid_maps() {
        assert!(SignedAffineMap::from_i64(vec![0, 0], vec![1, 1], &[0, 0]).is_err());
        assert!(SignedAffineMap::from_i64(vec![0], vec![2], &[0]).is_err());
        assert!(SignedAffineMap::from_i64(vec![0], vec![1], &[0, 1]).is_err());
    }

    #[test]
    fn rank_zero() {
        let g = SignedAffineMap::identity(0);
        assert!(g.is_bounded());
        assert_eq!(g.min_displacement(), BigInt::zero());
        assert_eq!(g.linear_order(), 1);
    }
}
