use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

use super::{MedianGraph, Subalgebra};

/// A claimed isomorphism `T × F → Y` onto a subalgebra `Y`, based at a
/// member that lies in both factors and is the image of `(t₁, f₁)`.
#[derive(Clone, Debug)]
pub struct ProductDecomposition<'g> {
    subalgebra: Subalgebra<'g>,
    basepoint: usize,
    factor_t: Vec<usize>,
    factor_f: Vec<usize>,
    iso: HashMap<(usize, usize), usize>,
}

impl<'g> ProductDecomposition<'g> {
    pub fn new(
        subalgebra: Subalgebra<'g>,
        basepoint: usize,
        factor_t: Vec<usize>,
        factor_f: Vec<usize>,
        iso: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        if !factor_t.contains(&basepoint) || !factor_f.contains(&basepoint) {
            return Err(Error::Document(
                "basepoint must belong to both factors".into(),
            ));
        }
        if factor_t.iter().chain(&factor_f).any(|&v| !subalgebra.contains(v)) {
            return Err(Error::Document("factor element outside the subalgebra".into()));
        }
        Ok(ProductDecomposition {
            subalgebra,
            basepoint,
            factor_t: dedup_sorted(factor_t),
            factor_f: dedup_sorted(factor_f),
            iso,
        })
    }

    pub fn subalgebra(&self) -> &Subalgebra<'g> {
        &self.subalgebra
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn factor_t(&self) -> &[usize] {
        &self.factor_t
    }

    pub fn factor_f(&self) -> &[usize] {
        &self.factor_f
    }

    pub fn iso(&self) -> &HashMap<(usize, usize), usize> {
        &self.iso
    }

    pub fn iso_mut(&mut self) -> &mut HashMap<(usize, usize), usize> {
        &mut self.iso
    }

    fn graph(&self) -> &'g MedianGraph {
        self.subalgebra.graph()
    }
}

fn dedup_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Why a claimed decomposition is not a product isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductDefect {
    MissingPair { t: usize, f: usize },
    ImageOutsideSubalgebra { t: usize, f: usize, image: usize },
    NotInjective { first: (usize, usize), second: (usize, usize), image: usize },
    NotSurjective { member: usize },
    AxisMismatch { t: usize, f: usize, image: usize },
    FactorNotClosed { triple: (usize, usize, usize) },
    /// `μ(iso a, iso b, iso c)` differs from `iso(μ(a, b, c))`.
    MedianMismatch {
        triple: [(usize, usize); 3],
        expected: usize,
        got: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductVerdict {
    Holds { triples_checked: usize },
    NotAProduct(ProductDefect),
    /// Hyperplane `class` meets both factors: `(t₁, f₂)` and `(t₂, f₁)` are
    /// separated from the basepoint, yet their median with it stays on
    /// their side.
    HyperplaneMeetsBoth {
        class: usize,
        t2: usize,
        f2: usize,
        median: usize,
    },
}

impl ProductVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ProductVerdict::Holds { .. })
    }
}

/// Verify the decomposition is a product isomorphism, then check that no
/// hyperplane of the parent meets both factors.
///
/// Cheap structural checks run first (bijectivity, the axes, and the
/// triples `μ((t,f₁), (t₁,f), (t,f)) = (t,f)`), so a corrupted map is
/// usually rejected in time linear in `|T × F|`.
pub fn check_lemma_product(pd: &ProductDecomposition<'_>) -> ProductVerdict {
    match check_iso(pd) {
        Err(defect) => ProductVerdict::NotAProduct(defect),
        Ok(triples_checked) => match meeting_hyperplane(pd) {
            Some(v) => v,
            None => ProductVerdict::Holds { triples_checked },
        },
    }
}

fn check_iso(pd: &ProductDecomposition<'_>) -> std::result::Result<usize, ProductDefect> {
    let g = pd.graph();
    let b = pd.basepoint;
    let mut pairs = Vec::with_capacity(pd.factor_t.len() * pd.factor_f.len());
    let mut seen: HashMap<usize, (usize, usize)> = HashMap::new();
    for &t in &pd.factor_t {
        for &f in &pd.factor_f {
            let image = *pd.iso.get(&(t, f)).ok_or(ProductDefect::MissingPair { t, f })?;
            if !pd.subalgebra.contains(image) {
                return Err(ProductDefect::ImageOutsideSubalgebra { t, f, image });
            }
            if let Some(&first) = seen.get(&image) {
                return Err(ProductDefect::NotInjective {
                    first,
                    second: (t, f),
                    image,
                });
            }
            seen.insert(image, (t, f));
            pairs.push((t, f));
        }
    }
    if let Some(&member) = pd.subalgebra.members().iter().find(|m| !seen.contains_key(m)) {
        return Err(ProductDefect::NotSurjective { member });
    }
    let iso = |p: (usize, usize)| pd.iso[&p];
    for &t in &pd.factor_t {
        if iso((t, b)) != t {
            return Err(ProductDefect::AxisMismatch { t, f: b, image: iso((t, b)) });
        }
    }
    for &f in &pd.factor_f {
        if iso((b, f)) != f {
            return Err(ProductDefect::AxisMismatch { t: b, f, image: iso((b, f)) });
        }
    }
    for &(t, f) in &pairs {
        let got = g.median(t, f, iso((t, f)));
        if got != iso((t, f)) {
            return Err(ProductDefect::MedianMismatch {
                triple: [(t, b), (b, f), (t, f)],
                expected: iso((t, f)),
                got,
            });
        }
    }
    let t_set: HashSet<usize> = pd.factor_t.iter().copied().collect();
    let f_set: HashSet<usize> = pd.factor_f.iter().copied().collect();
    let mut count = 0;
    for (i, &p) in pairs.iter().enumerate() {
        for (j, &q) in pairs.iter().enumerate().skip(i) {
            for &r in &pairs[j..] {
                let mt = g.median(p.0, q.0, r.0);
                let mf = g.median(p.1, q.1, r.1);
                if !t_set.contains(&mt) {
                    return Err(ProductDefect::FactorNotClosed { triple: (p.0, q.0, r.0) });
                }
                if !f_set.contains(&mf) {
                    return Err(ProductDefect::FactorNotClosed { triple: (p.1, q.1, r.1) });
                }
                let expected = iso((mt, mf));
                let got = g.median(iso(p), iso(q), iso(r));
                if got != expected {
                    return Err(ProductDefect::MedianMismatch {
                        triple: [p, q, r],
                        expected,
                        got,
                    });
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn meeting_hyperplane(pd: &ProductDecomposition<'_>) -> Option<ProductVerdict> {
    let g = pd.graph();
    let b = pd.basepoint;
    (0..g.num_classes()).find_map(|c| {
        let home = g.side(b, c);
        let t2 = pd.factor_t.iter().copied().find(|&t| g.side(t, c) != home)?;
        let f2 = pd.factor_f.iter().copied().find(|&f| g.side(f, c) != home)?;
        Some(ProductVerdict::HyperplaneMeetsBoth {
            class: c,
            t2,
            f2,
            median: g.median(b, f2, t2),
        })
    })
}

/// Decomposition of the subalgebra `T × F` of a Cartesian product graph
/// `A □ B`, where `T ⊂ A × {f₁}` and `F ⊂ {t₁} × B` are given by their
/// coordinates and the basepoint is `(t₁, f₁)`.
pub fn coordinate_product<'g>(
    graph: &'g MedianGraph,
    right_len: usize,
    t_coords: &[usize],
    f_coords: &[usize],
    base: (usize, usize),
) -> Result<ProductDecomposition<'g>> {
    let vertex = |a: usize, b: usize| a * right_len + b;
    let factor_t: Vec<usize> = t_coords.iter().map(|&a| vertex(a, base.1)).collect();
    let factor_f: Vec<usize> = f_coords.iter().map(|&b| vertex(base.0, b)).collect();
    let mut iso = HashMap::new();
    let mut members = Vec::new();
    for &a in t_coords {
        for &b in f_coords {
            let v = vertex(a, b);
            iso.insert((vertex(a, base.1), vertex(base.0, b)), v);
            members.push(v);
        }
    }
    let y = Subalgebra::new(graph, &members)?;
    ProductDecomposition::new(y, vertex(base.0, base.1), factor_t, factor_f, iso)
}
