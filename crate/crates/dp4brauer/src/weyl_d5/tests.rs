use super::*;
use crate::cohomology::{check_cocycle1, h1_cochain, invariants};
use crate::exactlinalg::big_vec;
use std::collections::BTreeMap;

fn sub(gens: &[SignedPerm]) -> Subgroup {
    Subgroup::generated_by(gens).unwrap()
}

#[test]
fn group_order_and_identity() {
    let w = WeylD5::get();
    assert_eq!(w.order(), 1920);
    assert_eq!(w.elem(0), SignedPerm::IDENTITY);
    assert_eq!(*w.pic_matrix(0), IntMatrix::identity(5));
}

#[test]
fn signed_symbol_action_is_even() {
    for s in WeylD5::get().elements() {
        let p = s.on_symbols();
        let mut inv = 0;
        for i in 0..10 {
            for j in i + 1..10 {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        assert_eq!(inv % 2, 0, "{s}");
    }
}

#[test]
fn odd_sign_count_rejected() {
    assert!(matches!(SignedPerm::new([-1, 2, 3, 4, 5]), Err(WeylError::OddSigns(_))));
    assert!(SignedPerm::new([1, 1, 3, 4, 5]).is_err());
}

#[test]
fn lattice_coordinates_roundtrip() {
    let c = [3, -1, 0, 2, 5];
    assert_eq!(doubled_to_pic(&pic_to_doubled(&c)), Some(c));
    assert_eq!(doubled_to_pic(&[1, 0, 1, 1, 1]), None);
}

#[test]
fn invariants_vanish_for_full_group_and_translations() {
    let (g, _) = invariants(&full_group());
    assert!(g.is_trivial());
    let t = sub(&fixtures::translations());
    assert_eq!(t.order(), 16);
    let (g, _) = invariants(&p_module(&t));
    assert!(g.is_trivial());
}

#[test]
fn orbits_of_mixed_cyclic_group() {
    let g = sub(&fixtures::cyclic4_mixed());
    assert_eq!(g.order(), 4);
    let o = s_orbits(&g);
    let got: Vec<(Vec<usize>, bool)> = o.into_iter().map(|x| (x.indices, x.split)).collect();
    assert_eq!(got, vec![(vec![1, 2], false), (vec![3], false), (vec![4], true), (vec![5], true)]);
    let t = h1_two_torsion(&g);
    assert_eq!(t.group, FinAbGroup::cyclic(2));
    assert_eq!(t.class_of_index(3).unwrap(), t.class_of_orbits(&[1, 0, 0, 0]));
}

#[test]
fn trivial_and_full_orbits() {
    let o = s_orbits(&Subgroup::trivial());
    assert_eq!(o.len(), 5);
    assert!(o.iter().all(|x| x.split));
    let o = s_orbits(&Subgroup::full());
    assert_eq!(o, vec![SOrbit { indices: vec![1, 2, 3, 4, 5], split: false }]);
    assert!(h1_two_torsion(&Subgroup::full()).group.is_trivial());
    assert!(h1_full(&Subgroup::full()).group.is_trivial());
}

#[test]
fn translation_group_two_torsion() {
    let t = sub(&fixtures::translations());
    assert_eq!(h1_two_torsion(&t).group, FinAbGroup::from_factors(&big_vec(&[2, 2, 2, 2])));
    assert_eq!(h1_full(&t).group, FinAbGroup::from_factors(&big_vec(&[2, 2, 2, 2])));
}

#[test]
fn cyclic_z4_examples() {
    for gens in [fixtures::cyclic8(), fixtures::dic3(), fixtures::block_maximal(), fixtures::cyclic4_overlap()] {
        let g = sub(&gens);
        assert_eq!(h1_full(&g).group, FinAbGroup::cyclic(4), "{gens:?}");
    }
    assert_eq!(sub(&fixtures::cyclic8()).order(), 8);
    assert_eq!(sub(&fixtures::dic3()).order(), 12);
    assert_eq!(sub(&fixtures::block_maximal()).order(), 64);
    assert_eq!(sub(&fixtures::s3_times_z4()).order(), 24);
}

#[test]
fn proper_four_torsion_cocycles() {
    let g = sub(&fixtures::s3_times_z4());
    let h = h1_full(&g);
    let m = [1, 1, 1, 2, 0];
    let x = h.class_of(&[0, 0, 0, 0, 0]).unwrap();
    assert!(h.group.is_zero_elem(&x));
    // e1+e2+e3+2e4 in integral coordinates: doubled (2,2,2,4,0)
    let v = doubled_to_pic(&[2, 2, 2, 4, 0]).unwrap();
    assert_eq!(v, [1, 1, 1, 2, 0]);
    let c = h.class_of(&m).unwrap();
    assert_eq!(h.group.elem_order(&c), Some(BigInt::from(4)));
    let module = pic_module(&g);
    let phi = cocycle_of_class(&g, &m).unwrap();
    check_cocycle1(&module, &phi).unwrap();

    let g = sub(&fixtures::block_maximal());
    let h = h1_full(&g);
    let m = doubled_to_pic(&[2, 4, 0, 4, 0]).unwrap();
    let c = h.class_of(&m).unwrap();
    assert_eq!(h.group.elem_order(&c), Some(BigInt::from(4)));
}

#[test]
fn fixtures_classify() {
    assert_eq!(classify_4torsion(&sub(&fixtures::cyclic4_overlap())), FourTorsionType::Overlap);
    assert_eq!(classify_4torsion(&sub(&fixtures::s3_times_z4())), FourTorsionType::TypeI);
    assert_eq!(classify_4torsion(&Subgroup::full()), FourTorsionType::None);
    assert_eq!(classify_4torsion(&sub(&fixtures::block_maximal())), FourTorsionType::TypeII);
}

#[test]
fn singleton_orbit_criterion() {
    let g = sub(&fixtures::cyclic4_mixed());
    assert!(typei_nontrivial(&g, 3).unwrap());
    assert!(!typei_nontrivial(&g, 4).unwrap());
    assert!(typei_nontrivial(&g, 1).is_err());
    assert!(!typei_nontrivial(&Subgroup::trivial(), 2).unwrap());
}

#[test]
fn restriction_identity_and_type_ii_branch() {
    let g = sub(&fixtures::block_maximal());
    let r = restriction_table(&g, &g).unwrap();
    assert_eq!(r.matrix, IntMatrix::identity(1));
    // {1} split, non-split orbits {2} and {3}: nontrivial 2-torsion image
    let f = sub(&[SignedPerm::flip(&[2, 3])]);
    let r = restriction_table(&g, &f).unwrap();
    let img = r.apply(&big_vec(&[1]));
    assert_eq!(r.target.elem_order(&img), Some(BigInt::from(2)));
    // {2,4} entirely split: zero image
    for k in [sub(&fixtures::klein_block()), sub(&fixtures::swap_negate())] {
        assert!(k.is_subgroup_of(&g));
        let r = restriction_table(&g, &k).unwrap();
        assert!(r.target.is_zero_elem(&r.apply(&big_vec(&[1]))));
    }
    // {1} non-split: proper 4-torsion survives
    let c = sub(&fixtures::cyclic4_overlap());
    assert!(c.is_subgroup_of(&g));
    let r = restriction_table(&g, &c).unwrap();
    assert_eq!(r.target.elem_order(&r.apply(&big_vec(&[1]))), Some(BigInt::from(4)));
    assert!(restriction_table(&f, &g).is_err());
}

#[test]
fn cochain_route_matches_formula_on_fixtures() {
    for gens in [fixtures::cyclic4_overlap(), fixtures::cyclic8(), fixtures::dic3(), fixtures::sign_pairs()] {
        let g = sub(&gens);
        let a = h1_full(&g).group;
        let b = h1_cochain(&pic_module(&g)).unwrap().group;
        assert_eq!(a, b, "{gens:?}");
    }
}

#[test]
fn group_file_roundtrip() {
    let g = sub(&fixtures::dic3());
    let text = format_group_file(&g);
    let h = parse_group_file(&text).unwrap();
    assert_eq!(h.elements(), g.elements());
    assert_eq!(parse_group_file("2 -1 -3 4 5\n").unwrap().order(), 4);
    assert!(matches!(parse_group_file("[1,2,3]\n"), Err(WeylError::Parse { line: 1, .. })));
    assert_eq!(parse_group_file("# nothing\n").unwrap().order(), 1);
}

#[test]
fn census() {
    let classes = subgroup_conjugacy_classes();
    assert_eq!(classes.len(), 197);
    let mut idx: Vec<usize> = classes.iter().filter(|c| c.maximal).map(|c| 1920 / c.order()).collect();
    idx.sort();
    assert_eq!(idx, vec![2, 5, 6, 10, 16]);
    let mut hist = BTreeMap::new();
    for c in classes {
        let h = h1_full(&c.group);
        let t = h1_two_torsion(&c.group);
        assert_eq!(h.group.two_rank(), t.group.two_rank());
        *hist.entry(t.group.two_rank()).or_insert(0) += 1;
    }
    assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(0, 59), (1, 71), (2, 47), (3, 17), (4, 3)]);
}
