//! Exact linear algebra over `Q` and `GF(p)`.

mod field;
mod matrix;
mod subspace;

pub use field::{
    format_rational, parse_rational, Field, FieldSpec, PrimeField, Rationals, ScalarError,
    DEFAULT_CHARACTERISTIC,
};
pub use matrix::{LinalgError, Matrix, Rref};
pub use subspace::RowSpace;

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0usize..6, 0usize..6)
            .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
    }

    fn build<F: Field>(f: &F, (r, c, d): &(usize, usize, Vec<i64>)) -> Matrix<F> {
        Matrix::from_vec(f, *r, *c, d.iter().map(|&x| f.from_i64(x)).collect())
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let a = build(&Rationals, &m);
            let once = a.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
            let b = build(&PrimeField::new(7).unwrap(), &m);
            let once = b.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            check_rank_nullity(&build(&Rationals, &m));
            check_rank_nullity(&build(&PrimeField::new(3).unwrap(), &m));
        }

        #[test]
        fn pivots_strictly_increase(m in small_matrix()) {
            let r = build(&Rationals, &m).rref();
            prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(r.pivots.len(), r.rank);
        }
    }

    fn check_rank_nullity<F: Field>(a: &Matrix<F>) {
        let k = a.kernel_basis();
        assert_eq!(a.rank() + k.len(), a.cols());
        for v in &k {
            assert!(a.apply(v).iter().all(|x| a.field().is_zero(x)));
        }
    }
}
