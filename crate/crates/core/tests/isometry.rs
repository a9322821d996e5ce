mod common;

use common::{big, brute_min, corpus};
use cubecx::fixtures;
use cubecx::grid::{subdivide_product, Point, ProductComplex, ProductIsometry, SignedAffineMap};
use cubecx::isometry::{
    axis_from, axis_of, classify, common_min_power, minset, translation_length, window_min, Classification,
};
use cubecx::median::{verify_median, Graph};
use cubecx::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(k: usize) -> ProductComplex {
    ProductComplex::new(verify_median(&Graph::path(1)).unwrap(), k)
}

fn grid_map(perm: Vec<usize>, signs: Vec<i8>, trans: &[i64]) -> ProductIsometry {
    ProductIsometry::grid_only(1, SignedAffineMap::from_i64(perm, signs, trans).unwrap())
}

fn pt(v: usize, x: &[i64]) -> Point {
    Point::from_i64(v, x)
}

#[test]
fn translation_length_examples() {
    let pc = line(2);
    assert_eq!(translation_length(&pc, &pc.identity()), BigInt::zero());
    let swap = grid_map(vec![1, 0], vec![1, 1], &[1, 0]);
    assert_eq!(translation_length(&pc, &swap), BigInt::from(1));
    let (best, _) = window_min(&pc, &swap, 6);
    assert_eq!(best, BigInt::from(1));
    let f = fixtures::paper_example();
    assert_eq!(translation_length(&f.complex, f.generator("g").unwrap()), BigInt::from(1));
}

#[test]
fn classification_examples() {
    let pc = line(1);
    match classify(&pc, &grid_map(vec![0], vec![-1], &[1])).unwrap() {
        Classification::Elliptic(c) => {
            assert_eq!(c.grid_lo, big(&[0]));
            assert_eq!(c.grid_hi, big(&[1]));
            assert_eq!(c.dim(), 1);
        }
        other => panic!("{other:?}"),
    }
    let pc2 = line(2);
    let glide = grid_map(vec![0, 1], vec![-1, 1], &[1, 1]);
    let c = classify(&pc2, &glide).unwrap();
    assert_eq!(c.kind(), "inverting");
    c.verify(&pc2, &glide).unwrap();
    let f = fixtures::paper_example();
    for g in f.isometries() {
        assert!(classify(&f.complex, &g).unwrap().is_loxodromic());
    }
}

#[test]
fn minset_examples() {
    let pc = line(1);
    let id = minset(&pc, &pc.identity());
    assert_eq!(id.norm, BigInt::zero());
    assert!(id.contains(&pt(0, &[123])));
    let shift = minset(&pc, &grid_map(vec![0], vec![1], &[3]));
    assert!((-5..=5).all(|x| shift.contains(&pt(0, &[x]))));

    let f = fixtures::paper_example();
    let g = f.generator("g").unwrap();
    let m = minset(&f.complex, g);
    let names: Vec<&str> = m.finite_part.iter().map(|&v| f.complex.finite.name(v)).collect();
    assert_eq!(names, vec!["00", "11"]);
    let (best, at) = brute_min(&f.complex, g, 4);
    assert_eq!(best, 1);
    let expect: Vec<Point> = at.iter().map(|(v, x)| pt(*v, x)).collect();
    assert_eq!(m.enumerate_window(4), expect);
}

#[test]
fn axis_examples() {
    let pc = line(1);
    let a = axis_from(&pc, &grid_map(vec![0], vec![1], &[2]), &pt(0, &[0])).unwrap();
    assert_eq!(a.steps, vec![pt(0, &[0]), pt(0, &[1]), pt(0, &[2])]);

    let f = fixtures::paper_example();
    let g = f.generator("g").unwrap();
    let base = pt(f.complex.finite.index_of("00").unwrap(), &[0]);
    let a = axis_from(&f.complex, g, &base).unwrap();
    assert_eq!(a.steps.len(), 2);
    assert_eq!(a.steps[1], pt(base.finite, &[1]));

    let pc2 = line(2);
    let swap = grid_map(vec![1, 0], vec![1, 1], &[1, 0]);
    let a = axis_of(&pc2, &swap).unwrap();
    assert_eq!(a.steps, vec![pt(0, &[0, 0]), pt(0, &[1, 0])]);
    assert!(axis_from(&pc2, &swap, &pt(0, &[3, 0])).is_err());
    assert_eq!(axis_of(&pc, &pc.identity()), Err(Error::NotLoxodromic));
}

#[test]
fn common_power_examples() {
    let pc = line(1);
    let t = grid_map(vec![0], vec![1], &[1]);
    assert_eq!(common_min_power(&pc, &t, &t, 8).unwrap().m, 1);

    let f = fixtures::paper_example();
    let (g, h) = (f.generator("g").unwrap(), f.generator("h").unwrap());
    let r = common_min_power(&f.complex, g, h, 8).unwrap();
    assert_eq!((r.m, r.empty_below.clone()), (2, vec![1]));
    assert!(minset(&f.complex, g).contains(&r.witness));
    assert!(minset(&f.complex, &h.power(2)).contains(&r.witness));
    assert_eq!(common_min_power(&f.complex, g, h, 1), Err(Error::NotFound(1)));
}

#[test]
fn order_three_twist_needs_no_power() {
    // Star with three leaves × ℤ; h rotates the leaves and translates.
    let star = verify_median(&Graph::star(3)).unwrap();
    let pc = ProductComplex::new(star, 1);
    let shift = SignedAffineMap::from_i64(vec![0], vec![1], &[1]).unwrap();
    let g = ProductIsometry::new(vec![0, 1, 2, 3], shift.clone());
    let h = ProductIsometry::new(vec![0, 2, 3, 1], shift);
    assert_eq!(h.finite_order(), 3);
    assert_eq!(common_min_power(&pc, &g, &h, 16).unwrap().m, 1);
}

#[test]
fn four_cube_needs_the_fourth_power() {
    let f = fixtures::four_cube();
    let (g, h) = (f.generator("g").unwrap(), f.generator("h").unwrap());
    let r = common_min_power(&f.complex, g, h, 16).unwrap();
    assert_eq!(r.m, 4);
    assert_eq!(r.empty_below, vec![1, 2, 3]);
    let (_, min_g) = brute_min(&f.complex, g, 3);
    for m in 1..=4 {
        let (_, min_h) = brute_min(&f.complex, &h.power(m), 3);
        let meet = min_g.iter().any(|p| min_h.contains(p));
        assert_eq!(meet, m == 4, "m = {m}");
    }
}

#[test]
fn non_commuting_pair_is_rejected() {
    let f = fixtures::four_cube();
    let g = f.generator("g").unwrap();
    let flip = ProductIsometry::new(
        (0..16).map(|v| v ^ 1).collect(),
        SignedAffineMap::from_i64(vec![0], vec![1], &[1]).unwrap(),
    );
    assert!(matches!(
        common_min_power(&f.complex, g, &flip, 8),
        Err(Error::NotCommuting(..))
    ));
}

#[test]
fn corpus_trichotomy_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (pc, g) in corpus(&mut rng, 120) {
        let c = classify(&pc, &g).unwrap();
        c.verify(&pc, &g).unwrap();
        assert_eq!(c.kind(), common::brute_kind(&pc, &g), "{g:?}");

        let (best, _) = brute_min(&pc, &g, if pc.grid_rank == 3 { 7 } else { 12 });
        assert_eq!(translation_length(&pc, &g), BigInt::from(best), "{g:?}");
    }
}

#[test]
fn minsets_match_window_and_axes_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (pc, g) in corpus(&mut rng, 80) {
        let r = if pc.grid_rank == 3 { 3 } else { 5 };
        let m = minset(&pc, &g);
        let (best, at) = brute_min(&pc, &g, r);
        let expect: Vec<Point> = at.iter().map(|(v, x)| pt(*v, x)).collect();
        let inside = m.enumerate_window(r);
        if inside.is_empty() {
            assert!(BigInt::from(best) > m.norm);
            continue;
        }
        assert_eq!(m.norm, BigInt::from(best));
        assert_eq!(inside, expect);
        assert!(m.contains(&m.witness()));
        if classify(&pc, &g).unwrap().is_loxodromic() {
            for p in &expect {
                let a = axis_from(&pc, &g, p).unwrap();
                a.verify(&pc, &g, 3).unwrap();
                assert_eq!(a.steps.len() as i64 - 1, best);
                assert_eq!(a.steps.last().unwrap(), &g.apply(p));
                for w in a.steps.windows(2) {
                    assert_eq!(pc.distance(&w[0], &w[1]), BigInt::from(1));
                }
            }
        }
    }
}

#[test]
fn subdivision_removes_inversions_and_norm_decides() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (pc, g) in corpus(&mut rng, 80) {
        let before = translation_length(&pc, &g);
        let (spc, sg) = subdivide_product(&pc, &g).unwrap();
        let c = classify(&spc, &sg).unwrap();
        c.verify(&spc, &sg).unwrap();
        let norm = translation_length(&spc, &sg);
        assert_ne!(c.kind(), "inverting", "{g:?}");
        assert_eq!(c.kind() == "elliptic", norm.is_zero());
        if classify(&pc, &g).unwrap().is_loxodromic() {
            assert_eq!(norm, before * 2);
        }
        if c.is_loxodromic() {
            for m in -8i64..=8 {
                assert_eq!(translation_length(&spc, &sg.power(m)), &norm * m.abs(), "{g:?} ^ {m}");
            }
        }
    }
}

#[test]
fn minsets_are_invariant_under_commuting_isometries() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let pool = corpus(&mut rng, 400);
    let mut pairs = 0;
    for (i, (pc, g)) in pool.iter().enumerate() {
        let mut partners: Vec<ProductIsometry> = vec![g.power(rng.gen_range(-3..=3)), g.inverse()];
        for (qc, h) in &pool[i + 1..] {
            if qc.finite == pc.finite && qc.grid_rank == pc.grid_rank && g.commutes_with(h).unwrap() {
                partners.push(h.clone());
            }
        }
        let m = minset(pc, g);
        let r = if pc.grid_rank == 3 { 2 } else { 4 };
        for h in &partners {
            pairs += 1;
            for p in m.enumerate_window(r) {
                assert!(m.contains(&h.apply(&p)), "{g:?} {h:?}");
            }
            for p in m.enumerate_window(r) {
                assert!(m.contains(&h.inverse().apply(&p)));
            }
        }
    }
    assert!(pairs > 800);
}
