use magicsq::exactla::*;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = MatrixQ> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-3i64..=3, 1i64..=4), r * c).prop_map(move |v| {
            let rows: Vec<Vec<Rational>> = v.chunks(c).map(|ch| ch.iter().map(|&(n, d)| rat(n, d)).collect()).collect();
            MatrixQ::from_rows(&rows)
        })
    })
}

fn square(max: usize) -> impl Strategy<Value = MatrixQ> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec((-3i64..=3, 1i64..=4), n * n).prop_map(move |v| {
            let rows: Vec<Vec<Rational>> = v.chunks(n).map(|ch| ch.iter().map(|&(a, d)| rat(a, d)).collect()).collect();
            MatrixQ::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn nullspace_is_a_kernel_basis(m in matrix(7)) {
        let ns = nullspace(&m);
        prop_assert_eq!(ns.len() + rank(&m), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn bareiss_rank_agrees(m in matrix(7)) {
        prop_assert_eq!(bareiss_rank(&m), rank(&m));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn gram_matrix_inertia(m in matrix(6)) {
        // mᵀ·D·m with D positive diagonal is positive semidefinite of rank rank(m).
        let d: Vec<Rational> = (0..m.rows()).map(|i| rint(i as i64 + 1)).collect();
        let s = m.transpose().mul(&MatrixQ::diag(&d)).mul(&m);
        let i = inertia(&s).unwrap();
        prop_assert_eq!((i.plus, i.minus, i.zero), (rank(&m), 0, m.cols() - rank(&m)));
        prop_assert_eq!(i, float_inertia(&s));
    }

    #[test]
    fn sylvester_law(m in square(6)) {
        // Congruence by an invertible matrix preserves the inertia of D.
        prop_assume!(rank(&m) == m.rows());
        let n = m.rows();
        let d: Vec<Rational> = (0..n).map(|i| rint(if i % 2 == 0 { 1 } else { -2 })).collect();
        let i = inertia(&m.transpose().mul(&MatrixQ::diag(&d)).mul(&m)).unwrap();
        prop_assert_eq!((i.plus, i.minus, i.zero), (n.div_ceil(2), n / 2, 0));
    }

    #[test]
    fn rationals_round_trip_as_text(n in -1000i64..1000, d in 1i64..1000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)), Some(q));
    }
}
