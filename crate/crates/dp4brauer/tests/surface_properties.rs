use dp4brauer::arith::{is_prime, QmodZ};
use dp4brauer::residue_symbols::{hilbert_qp, PlaceQ};
use dp4brauer::surface_lab::fixtures;
use dp4brauer::surface_lab::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::BTreeSet;

const HEIGHT: i64 = 25;

#[test]
fn found_points_lie_on_the_surface() {
    for fx in fixtures::all() {
        let pts = find_points(&fx.surface, HEIGHT);
        assert!(!pts.is_empty(), "{}", fx.id);
        for p in &pts {
            assert!(fx.surface.contains(&p.0), "{} {p}", fx.id);
            assert!(p.height() <= HEIGHT);
        }
        for p in &fx.listed_points {
            assert!(fx.surface.contains(&p.0), "{} listed {p}", fx.id);
        }
    }
}

#[test]
fn local_values_sum_to_zero() {
    for fx in fixtures::all() {
        let pts = find_points(&fx.surface, HEIGHT);
        for (name, recipe) in &fx.recipes {
            let mut summed = 0;
            for p in pts.iter().take(40) {
                let Ok(vals) = evaluate_all_places(recipe, p) else { continue };
                let s: QmodZ = vals.iter().map(|(_, x)| *x).sum();
                assert!(s.is_zero(), "{} {name} at {p}: {vals:?}", fx.id);
                summed += 1;
            }
            assert!(summed > 0, "{} {name}", fx.id);
        }
    }
}

#[test]
fn integral_points_are_constant_at_good_primes() {
    for fx in fixtures::all() {
        let recipe = &fx.recipes[0].1;
        let pts: Vec<_> = find_points(&fx.surface, HEIGHT).into_iter().filter(|p| p.is_integral()).collect();
        for q in (3..=50u64).filter(|&q| is_prime(q)) {
            let v = PlaceQ::Prime(q);
            if fx.places.contains(&v) {
                continue;
            }
            let seen: BTreeSet<QmodZ> = pts.iter().filter_map(|p| evaluate_at(recipe, p, v).ok()).collect();
            assert!(seen.len() <= 1, "{} at {q}: {seen:?}", fx.id);
        }
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn symbols_are_locally_constant(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 13, 17]),
        a in (1i64..2000).prop_map(|x| if x % 2 == 0 { -x + 1 } else { x }),
        b in -2000i64..2000,
        k in -30i64..30,
        d in 1i64..50,
    ) {
        prop_assume!(b != 0 && d % p as i64 != 0);
        let pb = BigInt::from(p);
        let (a, b) = (rational(a, d), rational(b, 1));
        let v = dp4brauer::arith::val(&a, &pb);
        let step = BigRational::from_integer(pb.pow((v + 3) as u32)) * rational(k, 1);
        let a2 = &a + step;
        prop_assume!(a2 != BigRational::from_integer(BigInt::from(0)));
        prop_assert_eq!(hilbert_qp(&a, &b, PlaceQ::Prime(p)), hilbert_qp(&a2, &b, PlaceQ::Prime(p)));
    }
}
