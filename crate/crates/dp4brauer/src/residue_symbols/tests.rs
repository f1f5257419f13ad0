use super::*;
use crate::arith::{int, rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Primitive solvability of `z² = a x² + b y²` modulo `p³` (`p` odd) or
/// `2⁵`, after reducing `a`, `b` to valuation 0 or 1.
fn brute_hilbert(a: &BigRational, b: &BigRational, p: u64) -> i8 {
    let k = if p == 2 { 5 } else { 3 };
    let m = p.pow(k);
    let pb = BigInt::from(p);
    let mb = BigInt::from(m);
    let red = |x: &BigRational| {
        let (v, u) = split_p(x, &pb);
        let u = rat_mod(&u, &mb).to_u64().unwrap();
        if v.rem_euclid(2) == 1 {
            u * p % m
        } else {
            u
        }
    };
    let (a, b) = (red(a), red(b));
    let sq: Vec<u64> = (0..m).map(|x| x * x % m).collect();
    let mut all = vec![false; m as usize];
    let mut units = vec![false; m as usize];
    for z in 0..m {
        all[sq[z as usize] as usize] = true;
        if z % p != 0 {
            units[sq[z as usize] as usize] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let r = ((a * sq[x as usize]) % m + (b * sq[y as usize]) % m) % m;
            let prim = x % p != 0 || y % p != 0;
            if (prim && all[r as usize]) || (!prim && units[r as usize]) {
                return 1;
            }
        }
    }
    -1
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n != 0 {
            return rat(n, d);
        }
    }
}

fn quad(a: i64, b: i64) -> QuadElem {
    QuadElem::new(int(a), int(b))
}

#[test]
fn symbol_examples() {
    for v in [PlaceQ::Prime(2), PlaceQ::Prime(3), PlaceQ::Prime(5), PlaceQ::Real] {
        assert_eq!(hilbert_qp(&int(1), &int(-7), v), 1);
    }
    assert_eq!(hilbert_qp(&int(-1), &int(-1), PlaceQ::Prime(2)), -1);
    assert_eq!(brute_hilbert(&int(-1), &int(-1), 2), -1);
    assert_eq!(hilbert_qp(&int(2), &int(5), PlaceQ::Prime(5)), -1);
    assert_eq!(brute_hilbert(&int(2), &int(5), 5), -1);
    assert_eq!(hilbert_real(&int(-1), &int(-1)), -1);
    assert_eq!(hilbert_real(&int(1), &int(-1)), 1);
    assert_eq!(hilbert_real(&int(-2), &int(-3)), -1);
    assert_eq!("inf".parse::<PlaceQ>().unwrap(), PlaceQ::Real);
    assert_eq!("17".parse::<PlaceQ>().unwrap(), PlaceQ::Prime(17));
    assert!("15".parse::<PlaceQ>().is_err());
}

#[test]
fn brute_force_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let primes = [2u64, 3, 5, 7, 11, 13];
    for _ in 0..200 {
        let a = random_rational(&mut rng, 60);
        let b = random_rational(&mut rng, 60);
        let p = primes[rng.gen_range(0..primes.len())];
        assert_eq!(hilbert_qp(&a, &b, PlaceQ::Prime(p)), brute_hilbert(&a, &b, p), "({a}, {b})_{p}");
    }
}

#[test]
fn product_formula_over_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let a = random_rational(&mut rng, 400);
        let b = random_rational(&mut rng, 400);
        let prod: i32 = bad_places(&[&a, &b]).into_iter().map(|v| hilbert_qp(&a, &b, v) as i32).product();
        assert_eq!(prod, 1, "({a}, {b})");
    }
}

proptest! {
    #[test]
    fn symmetric_and_bimultiplicative(a in -300i64..300, b in -300i64..300, c in -300i64..300, pi in 0usize..6) {
        prop_assume!(a != 0 && b != 0 && c != 0);
        let v = [PlaceQ::Prime(2), PlaceQ::Prime(3), PlaceQ::Prime(5), PlaceQ::Prime(7), PlaceQ::Prime(13), PlaceQ::Real][pi];
        let (a, b, c) = (int(a), int(b), int(c));
        prop_assert_eq!(hilbert_qp(&a, &b, v), hilbert_qp(&b, &a, v));
        prop_assert_eq!(hilbert_qp(&a, &(&b * &c), v), hilbert_qp(&a, &b, v) * hilbert_qp(&a, &c, v));
        prop_assert_eq!(hilbert_qp(&a, &(-a.clone()), v), 1);
    }

    #[test]
    fn sqrt5_symbols_symmetric(a in -40i64..40, b in -40i64..40, c in -40i64..40, d in -40i64..40, pi in 0usize..5) {
        let x = quad(a, b);
        let y = quad(c, d);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let w = [QuadFieldPlace::Inert { p: 2 }, QuadFieldPlace::Ramified, QuadFieldPlace::Inert { p: 3 },
                 QuadFieldPlace::Split { p: 11, r: 4 }, QuadFieldPlace::Real { positive: false }][pi];
        prop_assert_eq!(hilbert_sqrt5(&x, &y, w).unwrap(), hilbert_sqrt5(&y, &x, w).unwrap());
        let neg = QuadElem::new(-x.a.clone(), -x.b.clone());
        prop_assert_eq!(hilbert_sqrt5(&x, &neg, w).unwrap(), 1);
    }
}

fn sqrt5_places(x: &QuadElem, y: &QuadElem) -> Vec<QuadFieldPlace> {
    let (nx, ny) = (x.norm(), y.norm());
    let mut out = vec![];
    for v in bad_places(&[&nx, &ny, &int(5)]) {
        out.extend(places_above(v));
    }
    out
}

#[test]
fn product_formula_over_sqrt5() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let mut r = || QuadElem::new(random_rational(&mut rng, 30), rat(rng.gen_range(-30..=30), rng.gen_range(1..=6)));
        let (x, y) = (r(), r());
        if x.norm().is_zero() || y.norm().is_zero() {
            continue;
        }
        let prod: i32 = sqrt5_places(&x, &y).into_iter().map(|w| hilbert_sqrt5(&x, &y, w).unwrap() as i32).product();
        assert_eq!(prod, 1, "({x:?}, {y:?})");
    }
}

#[test]
fn sqrt5_restricts_from_q() {
    // rational a, b: (a, b)_w = (a, b)_v when ℚ(√5)_w = ℚ_v, and
    // (a, N b)_v = (a, b²)_v = 1 over a quadratic completion
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let a = random_rational(&mut rng, 50);
        let b = random_rational(&mut rng, 50);
        let (x, y) = (QuadElem::from_rational(a.clone()), QuadElem::from_rational(b.clone()));
        for p in [2u64, 3, 5, 11, 19] {
            for w in places_above(PlaceQ::Prime(p)) {
                let s = hilbert_sqrt5(&x, &y, w).unwrap();
                match w {
                    QuadFieldPlace::Split { .. } => assert_eq!(s, hilbert_qp(&a, &b, PlaceQ::Prime(p))),
                    _ => assert_eq!(s, 1, "({a}, {b}) at {w:?}"),
                }
            }
        }
    }
}

#[test]
fn sqrt5_examples() {
    let w2 = QuadFieldPlace::Inert { p: 2 };
    assert_eq!(hilbert_sqrt5(&quad(1, 0), &quad(3, 7), w2).unwrap(), 1);
    assert_eq!(hilbert_sqrt5(&quad(-2, 1), &quad(-1, 0), QuadFieldPlace::Real { positive: true }).unwrap(), 1);
    assert_eq!(hilbert_sqrt5(&quad(-2, 1), &quad(-1, 0), QuadFieldPlace::Real { positive: false }).unwrap(), -1);
    assert_eq!(places_above(PlaceQ::Prime(11)).len(), 2);
    assert_eq!(places_above(PlaceQ::Prime(7)).len(), 1);
    assert_eq!(places_above(PlaceQ::Prime(5)), vec![QuadFieldPlace::Ramified]);
    assert_eq!(hilbert_sqrt5(&quad(0, 0), &quad(1, 0), w2), Err(SymbolError::Zero));
    // (−1, −1) splits over ℚ₄ since −1 is a sum of two squares there
    assert_eq!(hilbert_sqrt5(&quad(-1, 0), &quad(-1, 0), w2).unwrap(), 1);
    assert_eq!(hilbert_sqrt5(&quad(2, 0), &quad(1, 1), w2).unwrap(), hilbert_sqrt5(&quad(1, 1), &quad(2, 0), w2).unwrap());
}

#[test]
fn artin_reciprocity() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for quot in [CyclotomicQuotient::full(5), CyclotomicQuotient::real_subfield(17)] {
        for _ in 0..100 {
            let a = random_rational(&mut rng, 500);
            let mut places = bad_places(&[&a, &int(quot.m as i64)]);
            places.sort();
            let prod = places.into_iter().fold(quot.identity(), |acc, v| quot.mul(acc, artin_cyclotomic(&a, v, &quot)));
            assert_eq!(prod, quot.identity(), "{a} mod {}", quot.m);
        }
        assert_eq!(artin_cyclotomic(&int(1), PlaceQ::Prime(quot.m), &quot), quot.identity());
    }
    let q5 = CyclotomicQuotient::full(5);
    assert_eq!(artin_cyclotomic(&int(3), PlaceQ::Prime(3), &q5), 3);
    assert_eq!(artin_cyclotomic(&int(-2), PlaceQ::Real, &q5), 4);
    assert_eq!(artin_cyclotomic(&int(2), PlaceQ::Prime(5), &q5), 3);
}

#[test]
fn artin_on_quadratic_subfield() {
    // ℚ(√5) ⊂ ℚ(ζ₅) is fixed by the squares {1, 4}
    let q = CyclotomicQuotient::new(5, &[4]);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let primes = [2u64, 3, 5, 7, 11, 19, 29];
    for _ in 0..100 {
        let a = random_rational(&mut rng, 300);
        let v = if rng.gen_bool(0.1) { PlaceQ::Real } else { PlaceQ::Prime(primes[rng.gen_range(0..primes.len())]) };
        let trivial = artin_cyclotomic(&a, v, &q) == q.identity();
        assert_eq!(trivial, hilbert_qp(&int(5), &a, v) == 1, "{a} at {v}");
    }
}

#[test]
fn cyclic_symbols() {
    let c5 = CyclicQuotient::new(CyclotomicQuotient::full(5), 2).unwrap();
    assert_eq!(c5.order, 4);
    assert_eq!(cyclic_symbol_invariant(&c5, 1).unwrap(), QmodZ::zero());
    assert_eq!(cyclic_symbol_invariant(&c5, 2).unwrap(), QmodZ::new(1, 4));
    assert_eq!(cyclic_symbol_invariant(&c5, 4).unwrap(), QmodZ::half());
    let c17 = CyclicQuotient::new(CyclotomicQuotient::real_subfield(17), 3).unwrap();
    assert_eq!(c17.order, 8);
    assert_eq!(cyclic_symbol_invariant(&c17, 16).unwrap(), QmodZ::zero());
    assert_eq!(cyclic_symbol_invariant(&c17, 9).unwrap(), QmodZ::new(1, 4));
    assert_eq!(CyclicQuotient::new(CyclotomicQuotient::full(5), 4).unwrap_err(), SymbolError::NotCyclic);
    assert!(CyclicQuotient::new(CyclotomicQuotient::full(8), 3).is_err());
}
