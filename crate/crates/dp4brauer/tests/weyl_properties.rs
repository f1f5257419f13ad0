use dp4brauer::cohomology::{check_cocycle1, h1_cochain};
use dp4brauer::weyl_d5::*;
use num_bigint::BigInt;
use num_traits::Zero;

#[test]
fn nonvanishing_needs_two_nonsplit_orbits() {
    for c in subgroup_conjugacy_classes() {
        let orbits = s_orbits(&c.group);
        let nonsplit = orbits.iter().filter(|o| !o.split).count();
        let h = h1_full(&c.group);
        assert_eq!(!h.group.is_trivial(), orbits.len() >= 2 && nonsplit >= 2, "class {}", c.id);
    }
}

#[test]
fn lattice_classes_roundtrip() {
    for c in subgroup_conjugacy_classes() {
        let h = h1_full(&c.group);
        for (k, m) in h.generator_lifts().iter().enumerate() {
            let x = h.class_of(m).unwrap();
            let mut e = vec![BigInt::zero(); h.group.ngens()];
            e[k] = BigInt::from(1);
            assert_eq!(h.group.reduce(&x), e, "class {}", c.id);
            assert_eq!(h.lift(&x), *m);
        }
    }
}

#[test]
fn lattice_cocycles_have_matching_orders() {
    for c in subgroup_conjugacy_classes().iter().filter(|c| c.order() <= 16) {
        let h = h1_full(&c.group);
        let m = pic_module(&c.group);
        let hc = h1_cochain(&m).unwrap();
        for (k, lift) in h.generator_lifts().iter().enumerate() {
            let z = cocycle_of_class(&c.group, lift).unwrap();
            check_cocycle1(&m, &z).unwrap();
            let order = hc.group.elem_order(&hc.class_of(&z)).unwrap();
            assert_eq!(order, h.group.modulus(k), "class {}", c.id);
        }
    }
}

#[test]
fn class_of_checks_invariance_mod_4() {
    // Σ e_i is fixed modulo 4 only by groups without sign changes
    let sum = doubled_to_pic(&[2, 2, 2, 2, 2]).unwrap();
    for c in subgroup_conjugacy_classes() {
        let h = h1_full(&c.group);
        let unsigned = c.group.perms().iter().all(|s| (0..5).all(|i| s.sign(i) > 0));
        match h.class_of(&sum) {
            Ok(x) => {
                assert!(unsigned, "class {}", c.id);
                assert!(h.group.is_zero_elem(&x), "Σ e_i is an invariant vector");
            }
            Err(e) => {
                assert!(!unsigned, "class {}", c.id);
                assert_eq!(e, WeylError::NotInvariant);
            }
        }
    }
    let t = h1_full(&Subgroup::trivial());
    assert!(t.group.is_trivial());
    assert!(t.group.is_zero_elem(&t.class_of(&[1, 0, 2, 0, 1]).unwrap()));
}

#[test]
fn restriction_to_itself_is_identity() {
    for c in subgroup_conjugacy_classes().iter().step_by(7) {
        let r = restriction_table(&c.group, &c.group).unwrap();
        let h = h1_full(&c.group);
        for k in 0..h.group.ngens() {
            let mut e = vec![BigInt::zero(); h.group.ngens()];
            e[k] = BigInt::from(1);
            assert_eq!(h.group.reduce(&r.apply(&e)), e);
        }
    }
    assert!(restriction_table(&Subgroup::trivial(), &Subgroup::full()).is_err());
}
