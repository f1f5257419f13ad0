use dp4brauer::arith::{rat, QmodZ};
use dp4brauer::local_invariant::fixtures::{quadratic_two_adic, synthetic_tame};
use dp4brauer::local_invariant::*;
use dp4brauer::selfcheck::synthetic_parameters;
use proptest::prelude::*;

fn power(d: &LocalExtensionData, c: &LocalCocycle, k: u32) -> LocalCocycle {
    let mut out = LocalCocycle::trivial(d.group.order());
    for _ in 0..k {
        out = out.mul_tame(c, d.q - 1);
    }
    out
}

fn cochain(n: usize, seed: &[(i64, u64)], m: u64) -> Vec<(i64, u64)> {
    (0..n).map(|k| if k == 0 { (0, 0) } else { let s = seed[k % seed.len()]; (s.0, s.1 % m) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn invariant_is_additive(i in 0usize..20, k1 in 0u32..8, k2 in 0u32..8) {
        let (qk, e, f, tw) = synthetic_parameters()[i];
        let d = synthetic_tame(qk, e, f, tw).unwrap();
        let st = d.standard_cocycle();
        let (k1, k2) = (k1 % f, k2 % f);
        let c = power(&d, &st, k1).mul_tame(&power(&d, &st, k2), d.q - 1);
        prop_assert_eq!(invariant_tame(&d, &c).unwrap(), QmodZ::new((k1 + k2) as i64, f as i64));
    }

    #[test]
    fn coboundaries_have_invariant_zero(i in 0usize..20, seed in proptest::collection::vec((-3i64..=3, 0u64..1_000_000), 1..6)) {
        let (qk, e, f, tw) = synthetic_parameters()[i];
        let d = synthetic_tame(qk, e, f, tw).unwrap();
        let n = d.group.order();
        let b = cochain(n, &seed, d.q - 1);
        let c = twist_by_coboundary(&d, &LocalCocycle::trivial(n), &b).unwrap();
        prop_assert!(invariant_tame(&d, &c).unwrap().is_zero());
        let st = twist_by_coboundary(&d, &d.standard_cocycle(), &b).unwrap();
        prop_assert_eq!(invariant_tame(&d, &st).unwrap(), QmodZ::new(1, f as i64));
    }
}

#[test]
fn modification_matches_direct_degree_four() {
    let mut checked = 0;
    for qk in [3u64, 5, 7, 9, 11, 13] {
        for e in [1u64, 2, 4, 8] {
            let (Ok(d2), Ok(d4)) = (synthetic_tame(qk, e, 2, qk % 5), synthetic_tame(qk, e, 4, qk % 5)) else {
                continue;
            };
            let s2 = d2.standard_cocycle();
            let s4 = d4.standard_cocycle();
            for k in 0..2 {
                let (dx, cx) = extend_unramified_4(&d2, &power(&d2, &s2, k)).unwrap();
                let direct = invariant_tame(&d4, &power(&d4, &s4, 2 * k)).unwrap();
                assert_eq!(invariant_tame(&dx, &cx).unwrap(), direct, "qk {qk}, e {e}, k {k}");
                assert_eq!(direct, QmodZ::new(k as i64, 2));
            }
            checked += 1;
        }
    }
    assert!(checked >= 15, "{checked}");
}

#[test]
fn extension_rejects_degree_three() {
    let d = synthetic_tame(3, 2, 3, 0).unwrap();
    assert!(extend_unramified_4(&d, &d.standard_cocycle()).is_err());
    assert!(matches!(invariant_tame(&d, &d.standard_cocycle()), Err(LocalError::NeedsExtension(3))));
}

#[test]
fn wild_invariant_is_stable_in_precision() {
    let samples = [(-1, 1, -1, 1), (3, 1, 5, 1), (2, 1, -3, 1), (6, 1, 7, 1), (5, 1, 2, 1), (10, 7, -5, 3), (7, 1, -14, 1)];
    for (an, ad, bn, bd) in samples {
        let (a, b) = (rat(an, ad), rat(bn, bd));
        let (d, c) = quadratic_two_adic(&a, &b).unwrap().expect("non-square");
        let (inv, n) = invariant_wild_auto(&d, &c, 1, 8, RING_LOG2_LIMIT).unwrap();
        let next = invariant_wild(&d, &c, n + 1, RING_LOG2_LIMIT + 8).unwrap();
        assert_eq!(next, inv, "({a},{b}) at n = {}", n + 1);
    }
}
