mod common;

use proptest::prelude::*;

use quasitrop::polytope::{mixed_volume, Polytope};
use quasitrop::Scalar;

fn points(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..=3, n), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hull_is_idempotent(pts in points(3)) {
        let p = common::polytope_of(3, &pts);
        let again = Polytope::convex_hull(3, p.vertices()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(again.facets().len(), p.facets().len());
    }

    #[test]
    fn volume_matches_oracle(a in points(2), b in points(2)) {
        let (p, q) = (common::polytope_of(2, &a), common::polytope_of(2, &b));
        let mv = mixed_volume(&[p.clone(), q.clone()]).unwrap();
        let oracle = common::oracle_normalized_mixed_volume(2, &[a.clone(), b.clone()]);
        prop_assert_eq!(mv.clone() * Scalar::from_int(2), Scalar::rational(oracle));
        prop_assert_eq!(mv, mixed_volume(&[q, p.clone()]).unwrap());
        prop_assert_eq!(mixed_volume(&[p.clone(), p.clone()]).unwrap(), p.volume());
    }

    #[test]
    fn mixed_volume_is_symmetric_and_multilinear(a in points(2), b in points(2), c in points(2), k in 1i64..4) {
        let (p, q, r) = (common::polytope_of(2, &a), common::polytope_of(2, &b), common::polytope_of(2, &c));
        let pq = p.minkowski_sum(&q).unwrap();
        let lhs = mixed_volume(&[pq, r.clone()]).unwrap();
        let rhs = mixed_volume(&[p.clone(), r.clone()]).unwrap() + mixed_volume(&[q, r.clone()]).unwrap();
        prop_assert_eq!(lhs, rhs);
        let scaled = mixed_volume(&[p.scaled(&Scalar::from_int(k)), r.clone()]).unwrap();
        prop_assert_eq!(scaled, Scalar::from_int(k) * mixed_volume(&[p, r]).unwrap());
    }

    #[test]
    fn three_dimensional_mixed_volume_matches_oracle(a in points(3), b in points(3), c in points(3)) {
        let ps: Vec<Polytope> = [&a, &b, &c].iter().map(|s| common::polytope_of(3, s)).collect();
        let mv = mixed_volume(&ps).unwrap();
        let oracle = common::oracle_normalized_mixed_volume(3, &[a.clone(), b.clone(), c.clone()]);
        prop_assert_eq!(mv.clone() * Scalar::from_int(6), Scalar::rational(oracle));
        let rev: Vec<Polytope> = ps.iter().rev().cloned().collect();
        prop_assert_eq!(mixed_volume(&rev).unwrap(), mv);
    }

    #[test]
    fn faces_of_faces_are_faces(pts in points(3)) {
        let p = common::polytope_of(3, &pts);
        let lattice = p.face_lattice();
        for (i, f) in lattice.faces().iter().enumerate() {
            for &g in lattice.facets_of(i) {
                let sub = &lattice.faces()[g];
                prop_assert_eq!(sub.dim + 1, f.dim);
                prop_assert!(sub.vertices.iter().all(|v| f.vertices.contains(v)));
            }
        }
    }
}
