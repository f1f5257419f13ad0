use dp4brauer::cohomology::*;
use dp4brauer::exactlinalg::{big_vec, FinAbGroup, IntMatrix};
use dp4brauer::weyl_d5::{pic_module, subgroup_conjugacy_classes, Subgroup, WeylD5};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(g: &FinAbGroup, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    g.reduce(&(0..g.ngens()).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect::<Vec<_>>())
}

#[test]
fn class_cocycle_roundtrip_on_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut seen = 0;
    for c in subgroup_conjugacy_classes().iter().filter(|c| c.order() <= 16) {
        let m = pic_module(&c.group);
        let h1 = h1_cochain(&m).unwrap();
        for _ in 0..4 {
            let x = random_element(&h1.group, &mut rng);
            let z = h1.cocycle_of(&x);
            check_cocycle1(&m, &z).unwrap();
            assert_eq!(h1.group.reduce(&h1.class_of(&z)), x, "class {}", c.id);
        }
        if c.order() <= 8 {
            let h2 = h2_cochain(&m).unwrap();
            for _ in 0..3 {
                let x = random_element(&h2.group, &mut rng);
                let z = h2.cocycle_of(&x);
                check_cocycle2(&m, &z).unwrap();
                assert_eq!(h2.group.reduce(&h2.class_of(&z)), x, "class {}", c.id);
            }
        }
        seen += 1;
    }
    assert!(seen > 40);
}

#[test]
fn coboundaries_are_cocycles_with_zero_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for c in subgroup_conjugacy_classes().iter().filter(|c| (2..=12).contains(&c.order())).take(25) {
        let m = pic_module(&c.group);
        let n = m.group.order();
        let phi = Cochain1 {
            values: (0..n).map(|a| if a == 0 { m.base.zero() } else { random_element(&m.base, &mut rng) }).collect(),
        };
        let d = coboundary(&m, &phi);
        check_cocycle2(&m, &d).unwrap();
        let h2 = h2_cochain(&m).unwrap();
        assert!(h2.group.is_zero_elem(&h2.class_of(&d)));
        let x = random_element(&m.base, &mut rng);
        let d0 = coboundary0(&m, &x);
        check_cocycle1(&m, &d0).unwrap();
        let h1 = h1_cochain(&m).unwrap();
        assert!(h1.group.is_zero_elem(&h1.class_of(&d0)));
    }
}

/// Random `H ◁ G` of index 2 inside W(D₅): `G = ⟨H, g⟩` with `g` normalising
/// `H` and `g² ∈ H`.
fn index_two_pair(rng: &mut ChaCha8Rng) -> (Subgroup, Subgroup) {
    let w = WeylD5::get();
    let classes = subgroup_conjugacy_classes();
    loop {
        let h = &classes[rng.gen_range(0..classes.len())].group;
        if h.order() > 96 {
            continue;
        }
        let mut cands: Vec<usize> = (0..w.order()).collect();
        cands.shuffle(rng);
        for g in cands.into_iter().take(400) {
            if h.contains(g) || !h.contains(w.mul(g, g)) {
                continue;
            }
            let s = w.elem(g);
            if h.conjugate(&s).elements() != h.elements() {
                continue;
            }
            let mut gens = h.generator_perms();
            gens.push(s);
            let big = Subgroup::generated_by(&gens).unwrap();
            assert_eq!(big.order(), 2 * h.order());
            return (big, h.clone());
        }
    }
}

#[test]
fn corestriction_after_restriction_is_multiplication_by_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let two = BigInt::from(2);
    for _ in 0..20 {
        let (g, h) = index_two_pair(&mut rng);
        let m = pic_module(&g);
        let sub: Vec<usize> = h.elements().iter().map(|x| g.elements().binary_search(x).unwrap()).collect();
        let red = |v: &[BigInt]| -> Vec<BigInt> { v.iter().map(|a| a.mod_floor(&two)).collect() };
        let mut checked = 0;
        for bits in 0..32u32 {
            let x: Vec<BigInt> = (0..5).map(|i| BigInt::from((bits >> i) & 1)).collect();
            let h_inv = sub.iter().all(|&a| red(&m.act(a, &x)) == x);
            if !h_inv {
                assert!(corestrict_2tors(&m, &sub, &x).is_err());
                continue;
            }
            let y = corestrict_2tors(&m, &sub, &x).unwrap();
            assert!((0..g.order()).all(|a| red(&m.act(a, &y)) == red(&y)), "norm lands in (M/2M)^G");
            if (0..g.order()).all(|a| red(&m.act(a, &x)) == x) {
                assert_eq!(red(&y), vec![BigInt::from(0); 5]);
                checked += 1;
            }
        }
        assert!(checked >= 1);
    }
}

#[test]
fn compare_detects_multiples_on_random_twists() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for n in [2usize, 4, 8] {
        let m = GModule::trivial(FiniteGroup::cyclic(n), FinAbGroup::free(1));
        let h2 = h2_cochain(&m).unwrap();
        let base = h2.cocycle_of(&big_vec(&[1]));
        for _ in 0..5 {
            let k = rng.gen_range(0..n as i64);
            let phi = Cochain1 {
                values: (0..n).map(|a| big_vec(&[if a == 0 { 0 } else { rng.gen_range(-9..=9) }])).collect(),
            };
            let d = coboundary(&m, &phi);
            let ck = h2.cocycle_of(&big_vec(&[k]));
            let c = Cochain2 { n, values: ck.values.iter().zip(&d.values).map(|(x, y)| m.base.add(x, y)).collect() };
            assert_eq!(h2_class_compare(&m, &c, &base, n as u64).unwrap(), Some(k as u64));
        }
    }
    // a module where the action matrix is not invertible is rejected
    let bad = GModule::new(FiniteGroup::cyclic(2), FinAbGroup::free(1), vec![IntMatrix::from_rows(&[vec![2i64]])]);
    assert!(bad.is_err());
}
