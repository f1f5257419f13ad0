use super::fixtures::*;
use super::*;
use crate::arith::QmodZ;
use crate::residue_symbols::{hilbert_sqrt5, places_above, PlaceQ, QuadElem};
use crate::weyl_d5::{h1_full, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample(fx: &Fixture, h: i64) -> Vec<RatPoint> {
    let mut pts = find_points(&fx.surface, h);
    pts.extend(fx.listed_points.iter().copied());
    pts.sort();
    pts.dedup();
    pts
}

#[test]
fn listed_points_lie_on_the_surfaces() {
    for fx in all() {
        for p in &fx.listed_points {
            assert!(fx.surface.contains(&p.0), "{} {p}", fx.id);
            assert!(p.is_integral());
        }
    }
}

#[test]
fn search_finds_small_listed_points() {
    for fx in [typei_zeta5(), typeii_sqrt5(), block64()] {
        let found = find_points(&fx.surface, 10);
        for p in fx.listed_points.iter().filter(|p| p.height() <= 10) {
            assert!(found.contains(p), "{} {p}", fx.id);
        }
        for p in &found {
            assert!(fx.surface.contains(&p.0));
            assert_eq!(RatPoint::new(p.0), Some(*p));
        }
    }
    let s = typeii_sqrt5().surface;
    assert!(s.quadratic_in_x4());
    assert!(find_points(&s, 4).contains(&RatPoint([1, 1, -2, -3, -2])));
}

#[test]
fn point_normalisation() {
    assert_eq!(RatPoint::new([-2, 4, 0, 2, -6]), Some(RatPoint([1, -2, 0, -1, 3])));
    assert_eq!(RatPoint::new([0, -3, 0, 0, 0]), Some(RatPoint([0, 1, 0, 0, 0])));
    assert_eq!(RatPoint::new([0; 5]), None);
    assert!(RatPoint([5, 1, 0, 0, 0]).is_p_integral(3));
    assert!(!RatPoint([5, 1, 0, 0, 0]).is_p_integral(5));
    assert_eq!(RatPoint([1, 0, 2, -1, -2]).to_string(), "(1:0:2:-1:-2)");
}

#[test]
fn degenerate_members() {
    let q = pencil_quintic(&block64().surface);
    assert!(q.nonsingular());
    let m = q.rational.iter().find(|m| m.root == (1.into(), 0.into())).unwrap();
    assert_eq!((m.rank, m.cusp), (4, Some([1, -1, 0, 0, 0])));
    let q = pencil_quintic(&typeii_sqrt5().surface);
    assert!(q.nonsingular());
    let m = q.rational.iter().find(|m| m.root == (0.into(), 1.into())).unwrap();
    assert_eq!(m.rank, 4);
    for fx in all() {
        assert!(pencil_quintic(&fx.surface).nonsingular(), "{}", fx.id);
    }
}

#[test]
fn random_pencils_have_five_simple_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut simple = 0;
    for _ in 0..40 {
        let mut r = || {
            let mut q = [0i64; 15];
            q.iter_mut().for_each(|c| *c = rng.gen_range(-5..=5));
            q
        };
        let s = PencilSurface::new(r(), r());
        let q = pencil_quintic(&s);
        simple += q.nonsingular() as usize;
        for m in &q.rational {
            assert!(m.rank < 5);
        }
    }
    assert!(simple >= 38);
    // a pencil through two forms sharing a double member is singular
    let x = form(&[(0, 0, 1), (1, 1, 1)]);
    let y = form(&[(2, 2, 1), (3, 3, 1), (4, 4, 1), (0, 0, 1)]);
    assert!(!pencil_quintic(&PencilSurface::new(x, y)).nonsingular());
}

#[test]
fn galois_modules_give_the_expected_brauer_groups() {
    for fx in all() {
        let g = Subgroup::generated_by(&fx.group).unwrap();
        let h1 = h1_full(&g);
        assert_eq!(h1.group.torsion_u64(), fx.brauer, "{}", fx.id);
    }
    assert_eq!(Subgroup::generated_by(&coupled_d4()).unwrap().order(), 8);
    assert_eq!(Subgroup::generated_by(&block64().group).unwrap().order(), 64);
}

#[test]
fn split_discriminant_gives_zero() {
    let r = Recipe::Hilbert { t: [0, 0, 1, 1, 0], d: 9 };
    for p in sample(&block64(), 8) {
        if p.0[0] == 0 || p.0[2] + p.0[3] == 0 {
            continue;
        }
        for (_, q) in evaluate_all_places(&r, &p).unwrap() {
            assert_eq!(q, QmodZ::zero());
        }
    }
}

#[test]
fn reciprocity_on_small_samples() {
    for fx in all() {
        let pts = sample(&fx, 12);
        for (_, r) in &fx.recipes {
            let rep = audit(r, &pts, &fx.places).unwrap();
            assert!(rep.reciprocity_failures.is_empty(), "{}", fx.id);
            assert!(!rep.points.is_empty());
        }
    }
}

#[test]
fn sqrt5_recipe_at_infinity_tests_the_conjugate_sign() {
    let fx = typeii_sqrt5();
    let r = fx.recipe("alpha").unwrap();
    for p in sample(&fx, 12).into_iter().filter(|p| p.0[0] != 0) {
        let Ok(v) = evaluate_at(r, &p, PlaceQ::Real) else { continue };
        // ((3 − √5)X₁ + 4X₂)/X₀
        let conj = QuadElem::new(crate::arith::rat(3 * p.0[1] + 4 * p.0[2], p.0[0]), crate::arith::rat(-p.0[1], p.0[0]));
        assert_eq!(v == QmodZ::half(), conj.sign() < 0, "{p}");
    }
}

#[test]
fn split_places_contribute_two_summands() {
    let r = Recipe::HilbertSqrt5 { t: [[0, 0], [3, 1], [4, 0], [0, 0], [0, 0]], d: [4, 2] };
    let p = RatPoint([1, 1, -2, -3, -2]);
    let val = QuadElem::new(crate::arith::int(-5), crate::arith::int(1));
    let d = QuadElem::new(crate::arith::int(4), crate::arith::int(2));
    for v in [11u64, 19, 3, 7, 5] {
        let ws = places_above(PlaceQ::Prime(v));
        assert_eq!(ws.len(), if v % 5 == 1 || v % 5 == 4 { 2 } else { 1 });
        let direct: QmodZ = ws.iter().map(|&w| crate::residue_symbols::sign_to_invariant(hilbert_sqrt5(&val, &d, w).unwrap())).sum();
        assert_eq!(evaluate_at(&r, &p, PlaceQ::Prime(v)).unwrap(), direct);
    }
}

#[test]
fn octic_evaluations_agree_and_real_place_is_trivial() {
    let fx = typeii_zeta17();
    let (a, b) = (fx.recipe("alpha").unwrap(), fx.recipe("alpha-second-octic").unwrap());
    for p in sample(&fx, 10).into_iter().filter(|p| p.0[0] != 0) {
        for v in [PlaceQ::Prime(2), PlaceQ::Prime(17), PlaceQ::Prime(3), PlaceQ::Real] {
            match (evaluate_at(a, &p, v), evaluate_at(b, &p, v)) {
                (Ok(x), Ok(y)) => assert_eq!(x, y, "{p} at {v}"),
                (Err(SurfaceError::ZeroValue), _) | (_, Err(SurfaceError::ZeroValue)) => {}
                e => panic!("{e:?}"),
            }
        }
        if let Ok(x) = evaluate_at(a, &p, PlaceQ::Real) {
            assert_eq!(x, QmodZ::zero());
        }
    }
}

#[test]
fn boundary_points_and_documents() {
    let fx = typei_zeta5();
    let r = fx.recipe("alpha").unwrap();
    assert!(matches!(evaluate_at(r, &RatPoint([0, 1, 0, 0, 0]), PlaceQ::Real), Err(SurfaceError::Malformed(_))));
    let text = serde_json::to_string(&fx.surface).unwrap();
    assert_eq!(PencilSurface::from_json(&text).unwrap(), fx.surface);
    let rt: Recipe = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
    assert_eq!(&rt, r);
    assert!(PencilSurface::from_json(r#"{"q1": [1, 2], "q2": []}"#).is_err());
}
