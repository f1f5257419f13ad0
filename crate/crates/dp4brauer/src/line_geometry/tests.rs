use super::*;
use crate::cohomology::{h1_presented, Cochain1};
use crate::weyl_d5::{fixtures, h1_full};
use num_bigint::BigInt;

#[test]
fn incidence_values() {
    assert_eq!(incidence(LineLabel::E(1), LineLabel::L(1, 2)).unwrap(), 1);
    assert_eq!(incidence(LineLabel::E(1), LineLabel::E(2)).unwrap(), 0);
    assert_eq!(incidence(LineLabel::C, LineLabel::L(1, 2)).unwrap(), 0);
    assert_eq!(incidence(LineLabel::C, LineLabel::C), Err(LineError::SameLine));
}

#[test]
fn every_line_meets_five() {
    let t = incidence_table();
    for row in t.iter() {
        assert_eq!(row.iter().filter(|&&x| x == 1).count(), 5);
    }
    let total: usize = t.iter().map(|r| r.iter().map(|&x| x as usize).sum::<usize>()).sum();
    assert_eq!(total / 2, 40);
}

#[test]
fn sign_vectors_agree_with_pairing() {
    let labels = LineLabel::all();
    for a in &labels {
        for b in &labels {
            if a == b {
                continue;
            }
            let diff = a.signs().iter().zip(b.signs()).filter(|(x, y)| **x != *y).count();
            assert_eq!(incidence(*a, *b).unwrap() == 1, diff == 4, "{a} {b}");
        }
    }
}

#[test]
fn forty_quadrilaterals() {
    let q = quadrilaterals();
    assert_eq!(q.len(), 40);
    let n1 = (0..40).filter(|&k| q.shape(k) == QuadShape::ElEc).count();
    assert_eq!((n1, 40 - n1), (10, 30));
    let want = [LineLabel::E(1), LineLabel::L(1, 2), LineLabel::E(2), LineLabel::C].map(|l| l.index());
    assert!(q.find(&want).is_some());
    for k in 0..40 {
        assert_eq!((0..16).filter(|&i| q.matrix.get(i, k) == &BigInt::from(1)).count(), 4);
    }
}

#[test]
fn cokernel_is_free_rank_five() {
    let act = line_action_from_signed(&Subgroup::trivial());
    let pic = pic_from_lines(&act).unwrap();
    assert_eq!(pic.module.base, FinAbGroup::free(5));
    assert_eq!(*pic.module.action(0), IntMatrix::identity(5));
    // every quadrilateral maps to zero
    assert!(pic.proj.mul(&quadrilaterals().matrix).is_zero());
}

#[test]
fn rotation_moves_every_line() {
    let p = line_permutation(&fixtures::rotation_tau());
    assert!((0..16).all(|i| p[i] as usize != i));
    let mut x = p;
    for _ in 0..3 {
        x = x.map(|i| p[i as usize]);
    }
    assert!((0..16).all(|i| x[i] as usize == i));
    assert_eq!(line_permutation(&SignedPerm::IDENTITY), core::array::from_fn(|i| i as u8));
}

#[test]
fn line_h1_matches_lattice_h1() {
    for gens in [fixtures::cyclic4_overlap(), fixtures::dic3(), fixtures::translations(), fixtures::block_maximal()] {
        let g = Subgroup::generated_by(&gens).unwrap();
        let act = line_action_from_signed(&g);
        assert!(act.preserves_incidence());
        let pic = pic_from_lines(&act).unwrap();
        let h = h1_presented(&pic.module).unwrap();
        assert_eq!(h.group, h1_full(&g).group);
    }
}

#[test]
fn lift_satisfies_quadrilateral_equation() {
    let g = Subgroup::generated_by(&fixtures::cyclic4_overlap()).unwrap();
    let act = line_action_from_signed(&g);
    let pic = pic_from_lines(&act).unwrap();
    let h = h1_presented(&pic.module).unwrap();
    let qp = act.quad_perms().unwrap();
    for phi in h.generators() {
        let psi = lift_cocycle_to_divisors(&act, &pic, &phi).unwrap();
        let d = divisor_coboundary(&act, &pic, &phi);
        for (p, x) in psi.values.iter().enumerate() {
            assert_eq!(apply_q(x), d[p]);
        }
        let n = act.group.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert!(q_of_coboundary(&act, &qp, &psi, a, b, c).iter().all(|&v| v == 0));
                }
            }
        }
    }
    let zero = Cochain1 { values: vec![vec![BigInt::from(0); 5]; 4] };
    let psi = lift_cocycle_to_divisors(&act, &pic, &zero).unwrap();
    assert!(psi.values.iter().all(|v| v.iter().all(|&x| x == 0)));
    let bad = Cochain1 { values: vec![vec![BigInt::from(1); 5]; 4] };
    assert_eq!(lift_cocycle_to_divisors(&act, &pic, &bad).unwrap_err(), LineError::NotACocycle);
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn normalization_removes_constant_defect() {
    // Z/2 acting trivially; c(σ,σ) = f·k with f(x,y) = x + 2y and k = 3,
    // other values constant. The defect is constant, so dividing by the
    // value at a base point leaves an exact cocycle.
    let g = FiniteGroup::cyclic(2);
    let pts: Vec<(i64, i64)> = vec![(1, 1), (2, 5), (-3, 7), (4, -1)];
    let f = |x: i64, y: i64| q(x + 2 * y, 1);
    let consts = [q(5, 1), q(7, 2), q(-1, 3), q(3, 1)];
    let values: Vec<Vec<BigRational>> = (0..4)
        .map(|p| {
            pts.iter()
                .map(|&(x, y)| if p == 3 { f(x, y) * &consts[3] } else { consts[p].clone() })
                .collect()
        })
        .collect();
    assert!(!is_multiplicative_cocycle(&g, &values));
    let base: Vec<BigRational> = values.iter().map(|v| v[0].clone()).collect();
    let c = normalize_at_point(2, &values, &base).unwrap();
    assert!(is_multiplicative_cocycle(&g, &c));
    assert!(c.iter().all(|v| v[0] == q(1, 1)));
    let mut zb = base.clone();
    zb[3] = q(0, 1);
    assert_eq!(normalize_at_point(2, &values, &zb).unwrap_err(), LineError::ZeroAtBase(1, 1));
}
