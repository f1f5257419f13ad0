use super::*;
use crate::exactlinalg::big_vec;

fn neg_one_module(n: usize) -> GModule {
    // Z/n acting on Z through the sign of the generator
    let g = FiniteGroup::cyclic(n);
    GModule::new(g, FinAbGroup::free(1), vec![IntMatrix::from_rows(&[vec![-1i64]])]).unwrap()
}

#[test]
fn trivial_integral_h1_vanishes() {
    let m = GModule::trivial(FiniteGroup::cyclic(4), FinAbGroup::free(1));
    assert!(h1_cochain(&m).unwrap().group.is_trivial());
    assert!(h1_presented(&m).unwrap().group.is_trivial());
}

#[test]
fn sign_module_h1_is_z2() {
    let m = neg_one_module(2);
    assert_eq!(h1_cochain(&m).unwrap().group, FinAbGroup::cyclic(2));
    assert_eq!(h1_presented(&m).unwrap().group, FinAbGroup::cyclic(2));
    let (inv, _) = invariants(&m);
    assert!(inv.is_trivial());
}

#[test]
fn trivial_integral_h2_is_cyclic() {
    let m = GModule::trivial(FiniteGroup::cyclic(3), FinAbGroup::free(1));
    assert_eq!(h2_cochain(&m).unwrap().group, FinAbGroup::cyclic(3));
}

#[test]
fn h1_with_torsion_coefficients() {
    // H¹(Z/2, Z/4 with x ↦ −x) = Z/2
    let m = GModule::new(FiniteGroup::cyclic(2), FinAbGroup::cyclic(4), vec![IntMatrix::from_rows(&[vec![-1i64]])])
        .unwrap();
    assert_eq!(h1_cochain(&m).unwrap().group, FinAbGroup::cyclic(2));
}

#[test]
fn class_roundtrip_h1() {
    let m = neg_one_module(2);
    let h = h1_cochain(&m).unwrap();
    for c in h.generators() {
        check_cocycle1(&m, &c).unwrap();
        assert_eq!(h.class_of(&c), big_vec(&[1]));
    }
    let hp = h1_presented(&m).unwrap();
    for c in hp.generators() {
        check_cocycle1(&m, &c).unwrap();
        assert_eq!(h.class_of(&c), big_vec(&[1]));
    }
}

#[test]
fn inconsistent_action_is_rejected() {
    let g = FiniteGroup::cyclic(3);
    let r = GModule::new(g, FinAbGroup::free(1), vec![IntMatrix::from_rows(&[vec![-1i64]])]);
    assert!(matches!(r, Err(CohomError::BadAction(_))));
}

#[test]
fn compare_finds_multiple() {
    let m = GModule::trivial(FiniteGroup::cyclic(4), FinAbGroup::free(1));
    let h2 = h2_cochain(&m).unwrap();
    let c2 = h2.cocycle_of(&big_vec(&[1]));
    let c3 = h2.cocycle_of(&big_vec(&[3]));
    // add a coboundary
    let phi = Cochain1 { values: (0..4).map(|a| big_vec(&[(a * a) as i64 + 7])).collect() };
    let d = coboundary(&m, &phi);
    let c1 = Cochain2 { n: 4, values: c3.values.iter().zip(&d.values).map(|(x, y)| m.base.add(x, y)).collect() };
    assert_eq!(h2_class_compare(&m, &c1, &c2, 10).unwrap(), Some(3));
    let zero = Cochain2::from_fn(4, |_, _| big_vec(&[0]));
    assert_eq!(h2_class_compare(&m, &c2, &zero, 10).unwrap(), None);
}

#[test]
fn compare_with_torsion_coefficients() {
    // Z/2 acting trivially on Z/4: H² = Z/4 / 2 = Z/2
    let m = GModule::trivial(FiniteGroup::cyclic(2), FinAbGroup::cyclic(4));
    let h2 = h2_cochain(&m).unwrap();
    assert_eq!(h2.group, FinAbGroup::cyclic(2));
    let c = h2.cocycle_of(&big_vec(&[1]));
    assert_eq!(h2_class_compare(&m, &c, &c, 5).unwrap(), Some(1));
    let zero = Cochain2::from_fn(2, |_, _| big_vec(&[0]));
    assert_eq!(h2_class_compare(&m, &c, &zero, 5).unwrap(), None);
}

#[test]
fn restriction_and_corestriction() {
    // Z/4 acting on Z by −1 via the generator; restrict to the order-2 subgroup (acts trivially)
    let m = neg_one_module(4);
    let h = h1_cochain(&m).unwrap();
    assert_eq!(h.group, FinAbGroup::cyclic(2));
    let sub: Vec<usize> = m.group.closure(&[2]);
    let (hs, cls) = restrict(&m, &h, &sub, &[2], &big_vec(&[1])).unwrap();
    assert!(hs.group.is_trivial());
    assert!(cls.is_empty());
    let y = corestrict_2tors(&m, &sub, &big_vec(&[1])).unwrap();
    assert_eq!(y, big_vec(&[0]));
    assert!(matches!(corestrict_2tors(&m, &[0], &big_vec(&[1])), Err(CohomError::WrongIndex(_))));
}
