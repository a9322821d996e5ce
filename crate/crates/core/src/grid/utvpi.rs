//! Integer feasibility for systems of unit two-variable-per-inequality
//! constraints `a·x_i + b·x_j ≤ c` with `a, b ∈ {−1, 0, 1}`.
//!
//! Each variable `x_i` gets two literal nodes `+x_i` and `−x_i`; a
//! constraint `u − v ≤ c` between literals becomes edges `v → u` and
//! `−u → −v` of weight `c`. The system is integer feasible iff the
//! shortest-path closure has no negative cycle and, for every variable,
//! `⌊D(−x,+x)/2⌋ + ⌊D(+x,−x)/2⌋ ≥ 0` (the two halves bound `x` above
//! and `−x` above).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// `Σ coef·x + constant`, with at most two variables and unit coefficients
/// (a single variable may carry coefficient ±2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub coefs: Vec<(usize, i64)>,
    pub constant: BigInt,
}

impl Functional {
    pub fn new(coefs: Vec<(usize, i64)>, constant: BigInt) -> Self {
        let mut merged: Vec<(usize, i64)> = Vec::new();
        for (v, c) in coefs {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some(entry) => entry.1 += c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        merged.sort_unstable();
        Functional {
            coefs: merged,
            constant,
        }
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.coefs
            .iter()
            .fold(self.constant.clone(), |acc, &(v, c)| acc + &x[v] * c)
    }

    pub fn scaled(&self, k: i64) -> Functional {
        Functional {
            coefs: self.coefs.iter().map(|&(v, c)| (v, c * k)).collect(),
            constant: &self.constant * k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Relation {
    NonNegative,
    Zero,
}

/// A conjunction of `f ≥ 0` and `f = 0` constraints over `vars` integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    vars: usize,
    constraints: Vec<(Functional, Relation)>,
}

type Dist = Option<BigInt>;

fn add(a: &Dist, b: &Dist) -> Dist {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

fn less(a: &Dist, b: &Dist) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

impl System {
    pub fn new(vars: usize) -> Self {
        System {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn nonnegative(&mut self, f: Functional) -> &mut Self {
        self.constraints.push((f, Relation::NonNegative));
        self
    }

    pub fn zero(&mut self, f: Functional) -> &mut Self {
        self.constraints.push((f, Relation::Zero));
        self
    }

    pub fn fix(&mut self, var: usize, value: BigInt) -> &mut Self {
        self.zero(Functional::new(vec![(var, 1)], -value))
    }

    pub fn bound_box(&mut self, radius: &BigInt) -> &mut Self {
        for v in 0..self.vars {
            self.nonnegative(Functional::new(vec![(v, 1)], radius.clone()));
            self.nonnegative(Functional::new(vec![(v, -1)], radius.clone()));
        }
        self
    }

    pub fn extend(&mut self, other: &System) -> &mut Self {
        assert_eq!(self.vars, other.vars);
        self.constraints.extend(other.constraints.iter().cloned());
        self
    }

    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        self.constraints.iter().all(|(f, rel)| {
            let v = f.eval(x);
            match rel {
                Relation::NonNegative => v >= BigInt::zero(),
                Relation::Zero => v.is_zero(),
            }
        })
    }

    /// Constant constraints that fail regardless of the variables.
    fn constant_violation(&self) -> bool {
        self.constraints.iter().any(|(f, rel)| {
            f.coefs.is_empty()
                && match rel {
                    Relation::NonNegative => f.constant < BigInt::zero(),
                    Relation::Zero => !f.constant.is_zero(),
                }
        })
    }

    fn closure(&self) -> Option<Vec<Vec<Dist>>> {
        let n = 2 * self.vars;
        let mut d: Vec<Vec<Dist>> = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(BigInt::zero());
        }
        let lit = |var: usize, positive: bool| 2 * var + usize::from(!positive);
        let neg = |l: usize| l ^ 1;
        let edge = |d: &mut Vec<Vec<Dist>>, from: usize, to: usize, w: BigInt| {
            let w = Some(w);
            if less(&w, &d[from][to]) {
                d[from][to] = w;
            }
        };
        for (f, rel) in &self.constraints {
            // f ≥ 0  ⇔  −(Σ coef·x) ≤ constant.
            let mut bounds = vec![(f.scaled(-1).coefs, f.constant.clone())];
            if *rel == Relation::Zero {
                bounds.push((f.coefs.clone(), -&f.constant));
            }
            for (coefs, c) in bounds {
                // Σ coefs·x ≤ c
                match coefs.as_slice() {
                    [] => {}
                    &[(v, a)] if a.abs() == 1 => {
                        let u = lit(v, a > 0);
                        edge(&mut d, neg(u), u, c * 2);
                    }
                    &[(v, a)] if a.abs() == 2 => {
                        let u = lit(v, a > 0);
                        edge(&mut d, neg(u), u, c);
                    }
                    &[(v1, a1), (v2, a2)] if a1.abs() == 1 && a2.abs() == 1 => {
                        // u − w ≤ c with u = a1·x1 and w = −a2·x2.
                        let u = lit(v1, a1 > 0);
                        let w = lit(v2, a2 < 0);
                        edge(&mut d, w, u, c.clone());
                        edge(&mut d, neg(u), neg(w), c);
                    }
                    other => panic!("not a unit two-variable constraint: {other:?}"),
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if d[i][k].is_none() {
                    continue;
                }
                for j in 0..n {
                    let via = add(&d[i][k], &d[k][j]);
                    if less(&via, &d[i][j]) {
                        d[i][j] = via;
                    }
                }
            }
        }
        if (0..n).any(|i| less(&d[i][i], &Some(BigInt::zero()))) {
            return None;
        }
        Some(d)
    }

    /// Integer bounds `(lower, upper)` of each variable implied by the
    /// closure; `None` means unbounded. `None` overall if infeasible.
    pub fn bounds(&self) -> Option<Vec<(Option<BigInt>, Option<BigInt>)>> {
        if self.constant_violation() {
            return None;
        }
        let d = self.closure()?;
        let mut out = Vec::with_capacity(self.vars);
        for v in 0..self.vars {
            let (p, m) = (2 * v, 2 * v + 1);
            // 2x ≤ D(−x, +x) and −2x ≤ D(+x, −x).
            let upper = d[m][p].as_ref().map(|c| c.div_floor(&BigInt::from(2)));
            let lower = d[p][m].as_ref().map(|c| -c.div_floor(&BigInt::from(2)));
            if let (Some(lo), Some(hi)) = (&lower, &upper) {
                if lo > hi {
                    return None;
                }
            }
            out.push((lower, upper));
        }
        Some(out)
    }

    pub fn is_feasible(&self) -> bool {
        self.bounds().is_some()
    }

    /// Lexicographically smallest integer solution inside the box
    /// `[−radius, radius]^vars`.
    pub fn lex_min_in_box(&self, radius: &BigInt) -> Option<Vec<BigInt>> {
        let mut sys = self.clone();
        sys.bound_box(radius);
        let mut point = Vec::with_capacity(self.vars);
        for v in 0..self.vars {
            let bounds = sys.bounds()?;
            let (lo, hi) = bounds[v].clone();
            let (lo, hi) = (lo?, hi?);
            let mut value = lo;
            loop {
                if value > hi {
                    return None;
                }
                let mut trial = sys.clone();
                trial.fix(v, value.clone());
                if trial.is_feasible() {
                    sys = trial;
                    break;
                }
                value += 1;
            }
            point.push(value);
        }
        debug_assert!(self.satisfied_by(&point));
        Some(point)
    }

    /// Some integer solution, the lexicographically smallest one in the
    /// first of the boxes of radius `radius`, then doubling (from 1 when
    /// `radius` is 0), that contains a solution.
    pub fn witness(&self, radius: &BigInt) -> Option<Vec<BigInt>> {
        if !self.is_feasible() {
            return None;
        }
        let mut r = radius.max(&BigInt::zero()).clone();
        loop {
            if let Some(p) = self.lex_min_in_box(&r) {
                return Some(p);
            }
            r = if r.is_zero() { BigInt::from(1) } else { r * 2 };
        }
    }
}
