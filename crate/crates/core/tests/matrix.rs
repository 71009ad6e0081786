use proptest::prelude::*;
use siltloc::{Field, Matrix};

fn field(q: bool) -> Field {
    if q {
        Field::Rationals
    } else {
        Field::Prime(5)
    }
}

fn matrix() -> impl Strategy<Value = (bool, Vec<Vec<i64>>)> {
    (any::<bool>(), 1usize..6, 1usize..6)
        .prop_flat_map(|(q, r, c)| (Just(q), prop::collection::vec(prop::collection::vec(-3i64..4, c), r)))
}

fn build(q: bool, rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64(field(q), &refs)
}

proptest! {
    #[test]
    fn rref_keeps_rank((q, rows) in matrix()) {
        let m = build(q, &rows);
        let red = m.rref();
        prop_assert_eq!(red.matrix.rank(), m.rank());
        prop_assert_eq!(red.matrix.rref().matrix, red.matrix.clone());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_recovers_a_solution((q, rows) in matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
        let m = build(q, &rows);
        let f = field(q);
        let x: Vec<_> = (0..m.cols()).map(|i| f.from_i64(seed[i])).collect();
        let b = Matrix::column_vector(f, &m.mul_vec(&x));
        let s = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul(&s.particular), b);
        prop_assert!(m.mul(&s.nullspace).is_zero());
        prop_assert_eq!(s.nullspace.cols() + m.rank(), m.cols());
    }

    #[test]
    fn cokernel_annihilates((q, rows) in matrix()) {
        let m = build(q, &rows);
        let (c, d) = m.cokernel_projection();
        prop_assert_eq!(d + m.rank(), m.rows());
        if d > 0 {
            prop_assert!(c.mul(&m).is_zero());
            prop_assert_eq!(c.rank(), d);
        }
    }
}
