//! Abelian actions on product complexes and the discrete-norm
//! certificate `ν(w) = ‖w‖` on the cubical subdivision.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::doc::int;
use crate::error::{Error, Result};
use crate::grid::{Point, ProductComplex, ProductIsometry, SubdividedProduct};
use crate::isometry::{classify, common_min_power, default_max_m, translation_length, Classification};

/// Default bound on `|m|` in the homogeneity check.
pub const DEFAULT_POWER_CAP: i64 = 8;

/// A finitely generated abelian group acting on a product complex.
#[derive(Clone, Debug)]
pub struct AbelianAction {
    pub complex: ProductComplex,
    pub names: Vec<String>,
    pub generators: Vec<ProductIsometry>,
}

/// Checks that every generator acts on `complex` and that all pairs
/// commute.
pub fn build_action(complex: ProductComplex, generators: Vec<(String, ProductIsometry)>) -> Result<AbelianAction> {
    for (_, g) in &generators {
        complex.check_isometry(g)?;
    }
    for (i, (a, ga)) in generators.iter().enumerate() {
        for (b, gb) in &generators[i + 1..] {
            if !ga.commutes_with(gb)? {
                return Err(Error::NotCommuting(a.clone(), b.clone()));
            }
        }
    }
    let (names, generators) = generators.into_iter().unzip();
    Ok(AbelianAction {
        complex,
        names,
        generators,
    })
}

impl AbelianAction {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The isometry `∏ gᵢ^{wᵢ}`.
    pub fn evaluate(&self, word: &[i64]) -> ProductIsometry {
        assert_eq!(word.len(), self.rank(), "word length must match the number of generators");
        word.iter()
            .zip(&self.generators)
            .fold(self.complex.identity(), |acc, (&e, g)| acc.compose(&g.power(e)).unwrap())
    }

    /// The same action on the first cubical subdivision.
    pub fn subdivided(&self) -> Result<AbelianAction> {
        Ok(self.subdivide()?.0)
    }

    fn subdivide(&self) -> Result<(AbelianAction, SubdividedProduct)> {
        let sp = self.complex.subdivide(&self.generators)?;
        let action = AbelianAction {
            complex: sp.complex.clone(),
            names: self.names.clone(),
            generators: sp.isometries.clone(),
        };
        Ok((action, sp))
    }

    pub fn format_word(&self, word: &[i64]) -> String {
        let parts: Vec<String> = word
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e != 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Nonzero exponent vectors with `‖w‖∞ ≤ bound`, in lexicographic order.
pub fn default_sample(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (-bound..=bound).map(move |e| {
                    let mut v = w.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out.retain(|w| w.iter().any(|&e| e != 0));
    out
}

/// Nonzero exponent vectors in `[0, bound]^rank`, in lexicographic order.
pub fn nonnegative_sample(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut s = default_sample(rank, bound);
    s.retain(|w| w.iter().all(|&e| e >= 0));
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Freeness {
    /// Words that are not loxodromic after subdivision, with their kind.
    pub counterexamples: Vec<(Vec<i64>, &'static str)>,
    pub checked: usize,
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Classifies every sampled nonzero word on the subdivided complex.
pub fn check_freeness(action: &AbelianAction, sample: &[Vec<i64>]) -> Result<Freeness> {
    let sub = action.subdivided()?;
    freeness_on(&sub, sample)
}

fn freeness_on(sub: &AbelianAction, sample: &[Vec<i64>]) -> Result<Freeness> {
    let kinds = sample
        .par_iter()
        .filter(|w| w.iter().any(|&e| e != 0))
        .map(|w| Ok((w.clone(), classify(&sub.complex, &sub.evaluate(w))?.kind())))
        .collect::<Result<Vec<_>>>()?;
    let checked = kinds.len();
    let counterexamples = kinds.into_iter().filter(|(_, k)| *k != "loxodromic").collect();
    Ok(Freeness {
        counterexamples,
        checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSample {
    pub word: Vec<i64>,
    /// `‖w‖` on the subdivision.
    pub nu: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityViolation {
    pub word: Vec<i64>,
    pub m: i64,
    pub nu_power: BigInt,
    pub expected: BigInt,
}

/// The chain `|m|·ν(g+h) = ν(h^m g^m) ≤ d(x, h^m g^m x) ≤ d(x, g^m x) +
/// d(g^m x, h^m g^m x) = |m|·(ν(g) + ν(h))` evaluated at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    pub m: u32,
    /// Whether `m` was found on the original complex (when both words are
    /// loxodromic there) or on the subdivision.
    pub searched_original: bool,
    /// Witness on the searched complex.
    pub witness: Point,
    /// The witness on the subdivision, where the chain is evaluated.
    pub witness_subdivided: Point,
    pub nu_sum: BigInt,
    pub nu_g: BigInt,
    pub nu_h: BigInt,
    /// `d(x, h^m g^m x)`.
    pub chain_left: BigInt,
    /// `d(x, g^m x)` and `d(g^m x, h^m g^m x)`.
    pub leg_g: BigInt,
    pub leg_h: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteNormReport {
    pub generators: Vec<String>,
    pub subdivided: bool,
    pub samples: Vec<NormSample>,
    pub epsilon: i64,
    pub axiom1_violations: Vec<Vec<i64>>,
    pub power_cap: i64,
    pub homogeneity_checked: usize,
    pub homogeneity_violations: Vec<HomogeneityViolation>,
    pub pairs: Vec<PairCheck>,
    /// Pairs whose power search hit the bound, with that bound.
    pub exhausted: Vec<(Vec<i64>, Vec<i64>, u32)>,
    pub freeness: Freeness,
}

impl DiscreteNormReport {
    pub fn subadditivity_violations(&self) -> Vec<&PairCheck> {
        self.pairs.iter().filter(|p| !p.holds).collect()
    }

    /// All three axioms hold on the sample.
    pub fn passes(&self) -> bool {
        self.freeness.is_free()
            && self.axiom1_violations.is_empty()
            && self.homogeneity_violations.is_empty()
            && self.subadditivity_violations().is_empty()
    }

    pub fn to_json(&self) -> Value {
        let word = |w: &[i64]| json!(w);
        json!({
            "generators": self.generators,
            "subdivided": self.subdivided,
            "units": "subdivided",
            "samples": self.samples.iter().map(|s| json!({
                "word": word(&s.word),
                "nu": int(&s.nu),
                "nu_original": original_scale(&s.nu),
            })).collect::<Vec<_>>(),
            "axiom1": {
                "epsilon": self.epsilon,
                "bound": "nu >= 1 on nonzero words, so nu > epsilon for every epsilon < 1",
                "violations": self.axiom1_violations,
            },
            "homogeneity": {
                "power_cap": self.power_cap,
                "checked": self.homogeneity_checked,
                "violations": self.homogeneity_violations.iter().map(|v| json!({
                    "word": word(&v.word),
                    "m": v.m,
                    "nu_power": int(&v.nu_power),
                    "expected": int(&v.expected),
                })).collect::<Vec<_>>(),
            },
            "subadditivity": {
                "checked": self.pairs.len(),
                "violations": self.subadditivity_violations().len(),
                "exhausted": self.exhausted.iter().map(|(g, h, m)| json!({"g": g, "h": h, "max_m": m})).collect::<Vec<_>>(),
                "pairs": self.pairs.iter().map(|p| json!({
                    "g": word(&p.g),
                    "h": word(&p.h),
                    "m": p.m,
                    "searched": if p.searched_original { "original" } else { "subdivided" },
                    "witness": crate::doc::point_json(&p.witness),
                    "witness_subdivided": crate::doc::point_json(&p.witness_subdivided),
                    "nu_sum": int(&p.nu_sum),
                    "nu_g": int(&p.nu_g),
                    "nu_h": int(&p.nu_h),
                    "chain_left": int(&p.chain_left),
                    "leg_g": int(&p.leg_g),
                    "leg_h": int(&p.leg_h),
                    "holds": p.holds,
                })).collect::<Vec<_>>(),
            },
            "freeness": {
                "checked": self.freeness.checked,
                "counterexamples": self.freeness.counterexamples.iter().map(|(w, k)| json!({"word": w, "kind": k})).collect::<Vec<_>>(),
            },
            "passes": self.passes(),
            "interpretation": "axioms verified on the sample only; a discrete norm on an abelian group forces it to be free abelian (Stepr\u{101}ns)",
        })
    }

    /// Human-readable table of the sampled values and verdicts.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let width = self.generators.iter().map(|g| g.len().max(3)).collect::<Vec<_>>();
        for (g, w) in self.generators.iter().zip(&width) {
            let _ = write!(out, "{g:>w$} ");
        }
        let _ = writeln!(out, "{:>6} {:>8}", "nu", "original");
        for s in &self.samples {
            for (e, w) in s.word.iter().zip(&width) {
                let _ = write!(out, "{e:>w$} ");
            }
            let _ = writeln!(out, "{:>6} {:>8}", s.nu, original_scale(&s.nu));
        }
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "freeness:       {} ({} words)",
            verdict(self.freeness.is_free()),
            self.freeness.checked
        );
        let _ = writeln!(
            out,
            "nu >= {}:        {} ({} violations)",
            self.epsilon,
            verdict(self.axiom1_violations.is_empty()),
            self.axiom1_violations.len()
        );
        let _ = writeln!(
            out,
            "homogeneity:    {} ({} checks, |m| <= {})",
            verdict(self.homogeneity_violations.is_empty()),
            self.homogeneity_checked,
            self.power_cap
        );
        let _ = writeln!(
            out,
            "subadditivity:  {} ({} pairs, {} exhausted)",
            verdict(self.subadditivity_violations().is_empty()),
            self.pairs.len(),
            self.exhausted.len()
        );
        out
    }
}

/// `ν/2` as a decimal string.
fn original_scale(nu: &BigInt) -> String {
    let half: BigInt = nu / 2;
    if (nu % 2u32).is_zero() {
        half.to_string()
    } else {
        format!("{half}.5")
    }
}

/// Subdivides, checks freeness on the sample, and verifies the three
/// discrete-norm axioms for `ν = ‖·‖`.
pub fn certify_discrete_norm(action: &AbelianAction, sample: &[Vec<i64>], power_cap: i64) -> Result<DiscreteNormReport> {
    let (sub, sp) = action.subdivide()?;
    let freeness = freeness_on(&sub, sample)?;
    if let Some((w, kind)) = freeness.counterexamples.first() {
        return Err(Error::NotFreeOnSample(w.clone(), kind.to_string()));
    }
    let nu = |w: &[i64]| translation_length(&sub.complex, &sub.evaluate(w));
    let mut words: Vec<Vec<i64>> = sample.to_vec();
    words.sort();
    words.dedup();

    let samples: Vec<NormSample> = words
        .par_iter()
        .map(|w| NormSample {
            word: w.clone(),
            nu: nu(w),
        })
        .collect();
    let axiom1_violations = samples
        .iter()
        .filter(|s| s.word.iter().any(|&e| e != 0) && s.nu < BigInt::from(1))
        .map(|s| s.word.clone())
        .collect();

    let powers: Vec<i64> = (-power_cap..=power_cap).collect();
    let homogeneity: Vec<Option<HomogeneityViolation>> = samples
        .par_iter()
        .flat_map_iter(|s| {
            powers.iter().map(|&m| {
                let scaled: Vec<i64> = s.word.iter().map(|e| e * m).collect();
                let nu_power = nu(&scaled);
                let expected = &s.nu * m.abs();
                (nu_power != expected).then(|| HomogeneityViolation {
                    word: s.word.clone(),
                    m,
                    nu_power,
                    expected,
                })
            })
        })
        .collect();
    let homogeneity_checked = homogeneity.len();
    let homogeneity_violations = homogeneity.into_iter().flatten().collect();

    let nonzero: Vec<&NormSample> = samples.iter().filter(|s| s.word.iter().any(|&e| e != 0)).collect();
    let pair_indices: Vec<(usize, usize)> = (0..nonzero.len())
        .flat_map(|i| (i + 1..nonzero.len()).map(move |j| (i, j)))
        .collect();
    let outcomes = pair_indices
        .par_iter()
        .map(|&(i, j)| check_pair(action, &sub, &sp, nonzero[i], nonzero[j]))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    let mut exhausted = Vec::new();
    for o in outcomes {
        match o {
            PairOutcome::Checked(p) => pairs.push(p),
            PairOutcome::Exhausted(g, h, m) => exhausted.push((g, h, m)),
        }
    }

    Ok(DiscreteNormReport {
        generators: action.names.clone(),
        subdivided: true,
        samples,
        epsilon: 1,
        axiom1_violations,
        power_cap,
        homogeneity_checked,
        homogeneity_violations,
        pairs,
        exhausted,
        freeness,
    })
}

enum PairOutcome {
    Checked(PairCheck),
    Exhausted(Vec<i64>, Vec<i64>, u32),
}

fn check_pair(
    action: &AbelianAction,
    sub: &AbelianAction,
    sp: &SubdividedProduct,
    a: &NormSample,
    b: &NormSample,
) -> Result<PairOutcome> {
    let pc = &sub.complex;
    let (g, h) = (sub.evaluate(&a.word), sub.evaluate(&b.word));
    // Search where the pair lives originally when both act loxodromically
    // there, as in the power trick; fall back to the subdivision.
    let (og, oh) = (action.evaluate(&a.word), action.evaluate(&b.word));
    let original = classify(&action.complex, &og)?.is_loxodromic() && classify(&action.complex, &oh)?.is_loxodromic();
    let search = if original {
        common_min_power(&action.complex, &og, &oh, default_max_m(&oh))
    } else {
        common_min_power(pc, &g, &h, default_max_m(&h))
    };
    let found = match search {
        Ok(found) => found,
        Err(Error::NotFound(m)) => return Ok(PairOutcome::Exhausted(a.word.clone(), b.word.clone(), m)),
        Err(e) => return Err(e),
    };
    let witness = found.witness.clone();
    let x = if original { sp.embed(&witness) } else { witness.clone() };
    let m = found.m as i64;
    let (gm, hm) = (g.power(m), h.power(m));
    let gx = gm.apply(&x);
    let hgx = hm.apply(&gx);
    let sum: Vec<i64> = a.word.iter().zip(&b.word).map(|(p, q)| p + q).collect();
    let nu_sum = translation_length(pc, &sub.evaluate(&sum));
    let chain_left = pc.distance(&x, &hgx);
    let leg_g = pc.distance(&x, &gx);
    let leg_h = pc.distance(&gx, &hgx);
    let scaled = |v: &BigInt| v * m;
    let holds = scaled(&nu_sum) == translation_length(pc, &hm.compose(&gm)?)
        && scaled(&nu_sum) <= chain_left
        && chain_left <= &leg_g + &leg_h
        && leg_g == scaled(&a.nu)
        && leg_h == scaled(&b.nu)
        && nu_sum <= &a.nu + &b.nu;
    Ok(PairOutcome::Checked(PairCheck {
        g: a.word.clone(),
        h: b.word.clone(),
        m: found.m,
        searched_original: original,
        witness,
        witness_subdivided: x,
        nu_sum,
        nu_g: a.nu.clone(),
        nu_h: b.nu.clone(),
        chain_left,
        leg_g,
        leg_h,
        holds,
    }))
}

/// Kind of every sampled word on the subdivision, for reporting.
pub fn classify_words(action: &AbelianAction, sample: &[Vec<i64>]) -> Result<Vec<(Vec<i64>, Classification)>> {
    let sub = action.subdivided()?;
    sample
        .iter()
        .map(|w| Ok((w.clone(), classify(&sub.complex, &sub.evaluate(w))?)))
        .collect()
}
