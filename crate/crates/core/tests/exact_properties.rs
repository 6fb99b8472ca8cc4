use num_bigint::BigInt;
use proptest::prelude::*;

use quasitrop::exact::fm::{feasible_point, Constraint, Relation};
use quasitrop::exact::lattice::{hnf, integer_kernel};
use quasitrop::exact::matrix::{det_columns, from_ints};
use quasitrop::{ExteriorForm, Matrix, Scalar, Vector};

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn quadratic() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| a + b * Scalar::sqrt(2))
}

fn int_vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| from_ints(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in quadratic(), b in quadratic(), c in quadratic()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn order_agrees_with_floats(a in quadratic(), b in quadratic()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a.try_cmp(&b).unwrap(), x.partial_cmp(&y).unwrap());
        }
        prop_assert_eq!((a.clone() * b.clone()).signum(), a.signum() * b.signum());
    }

    #[test]
    fn hnf_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..5)) {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let h = hnf(&rows, 3);
        prop_assert_eq!(hnf(&h, 3), h.clone());
        // same row space: the integer kernel of the input annihilates h
        let kernel = integer_kernel(&rows, 3);
        for k in &kernel {
            for r in &h {
                let dot: BigInt = r.iter().zip(k).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, BigInt::from(0));
            }
        }
    }

    #[test]
    fn wedge_is_antisymmetric(u in int_vector(4), v in int_vector(4)) {
        let (a, b) = (ExteriorForm::covector(&u), ExteriorForm::covector(&v));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab.clone(), ba.scale(&-Scalar::one()));
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn top_wedge_is_determinant(cols in prop::collection::vec(int_vector(3), 3)) {
        let form = ExteriorForm::wedge_all(3, &cols);
        let e: Vec<Vector> = (0..3).map(|i| quasitrop::exact::matrix::unit_vector(3, i)).collect();
        let rows = Matrix::from_rows(3, cols.clone());
        prop_assert_eq!(form.evaluate(&e).unwrap(), rows.determinant());
        prop_assert_eq!(det_columns(&cols), rows.determinant());
    }

    #[test]
    fn feasible_points_satisfy_constraints(
        rows in prop::collection::vec((int_vector(2), -4i64..=4, 0u8..3), 1..6)
    ) {
        let cs: Vec<Constraint> = rows
            .iter()
            .map(|(a, b, r)| {
                let rel = [Relation::AtLeast, Relation::Exceeds, Relation::Equals][*r as usize];
                Constraint::new(a.clone(), rel, Scalar::from_int(*b))
            })
            .collect();
        if let Some(x) = feasible_point(2, &cs) {
            prop_assert!(cs.iter().all(|c| c.holds_at(&x)));
        }
    }
}
