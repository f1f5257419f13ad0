use dp4brauer::exactlinalg::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_reconstructs(m in matrix(6, 6, 30)) {
        let s = smith_normal_form(&m);
        prop_assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.s.clone());
        let d = s.diagonal();
        for i in 0..s.s.rows() {
            for j in 0..s.s.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.s.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0] > BigInt::zero() && w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn kernel_and_image_ranks_add_up(m in matrix(5, 7, 4)) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.cols() + rank(&m), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        let h = AbHom::new(FinAbGroup::free(m.cols()), FinAbGroup::free(m.rows()), m.clone());
        let (img_free_rank, coker) = (rank(&m), cokernel(&h).0);
        prop_assert_eq!(coker.free_rank + img_free_rank, m.rows());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn solve_returns_a_preimage(m in matrix(4, 5, 9), x in proptest::collection::vec(-20i64..=20, 5)) {
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let y = m.mul_vec(&x);
        let h = AbHom::new(FinAbGroup::free(m.cols()), FinAbGroup::free(m.rows()), m.clone());
        let z = solve(&h, &y).expect("y is in the image");
        prop_assert_eq!(m.mul_vec(&z), y.clone());
        let w = solve_integer(&m, &y).expect("y is in the image");
        prop_assert_eq!(m.mul_vec(&w), y);
    }

    #[test]
    fn solve_into_a_cyclic_group(n in 2i64..40, c0 in -30i64..30, c1 in -30i64..30, x0 in -9i64..9, x1 in -9i64..9) {
        let tgt = FinAbGroup::cyclic(n as u64);
        let h = AbHom::new(FinAbGroup::free(2), tgt.clone(), IntMatrix::from_rows(&[vec![c0, c1]]));
        let y = tgt.reduce(&h.apply(&big_vec(&[x0, x1])));
        let x = solve(&h, &y).expect("y is in the image");
        prop_assert_eq!(tgt.reduce(&h.apply(&x)), y);
    }
}
